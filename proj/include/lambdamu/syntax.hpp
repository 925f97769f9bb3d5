#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lambdamu {

// λ-variables and μ-variables live in disjoint namespaces; the two wrapper
// types never compare with each other.
struct LamVar {
  std::string name;
  auto operator<=>(const LamVar&) const = default;
};

struct MuVar {
  std::string name;
  auto operator<=>(const MuVar&) const = default;
};

enum class Kind : std::uint8_t { Var, Lam, App, Bracket, Mu };

// Immutable λμ-term. Copies share structure.
class Term {
 public:
  Term() = delete;

  static Term var(LamVar x);
  static Term lam(LamVar x, Term body);
  static Term app(Term fun, Term arg);
  static Term bracket(MuVar a, Term body);
  static Term mu(MuVar a, Term body);

  Kind kind() const noexcept;
  bool is(Kind k) const noexcept { return kind() == k; }

  // Var and Lam only.
  LamVar lamVar() const;
  // Bracket and Mu only.
  MuVar muVar() const;
  // The variable name of any node except App.
  const std::string& name() const;
  // Lam, Mu, Bracket only.
  const Term& body() const;
  // App only.
  const Term& fun() const;
  const Term& arg() const;

  std::size_t cxty() const noexcept;

  // Exact (name-sensitive) structural equality. Use alphaEq for terms
  // modulo bound-variable renaming.
  bool operator==(const Term& other) const;

  bool samePointer(const Term& other) const noexcept { return node_ == other.node_; }

  // False proves the name occurs nowhere in the term (free or bound).
  bool mayMentionLam(const std::string& name) const noexcept;
  bool mayMentionMu(const std::string& name) const noexcept;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

using TermSeq = std::vector<Term>;

struct FreeVars {
  std::set<LamVar> lam;
  std::set<MuVar> mu;
  bool operator==(const FreeVars&) const = default;
};

std::size_t cxty(const Term& m);
FreeVars fv(const Term& m);
bool occursFreeLam(const Term& m, const LamVar& x);
bool occursFreeMu(const Term& m, const MuVar& a);

// Every name appearing anywhere in the term, free or bound.
struct NameSet {
  std::set<std::string> lam;
  std::set<std::string> mu;
};
void collectNames(const Term& m, NameSet& out);

// Canonical nameless rendering: bound variables become binder distances,
// free variables keep their names. Two terms are alpha-equivalent iff their
// canonical keys are equal.
std::string canonicalKey(const Term& m);
bool alphaEq(const Term& m, const Term& n);

// Fresh names. The counter is process-global and atomic; setFreshSeed makes
// traces reproducible.
void setFreshSeed(std::uint64_t seed);
LamVar freshLam(std::string_view base, const std::set<std::string>& avoid);
MuVar freshMu(std::string_view base, const std::set<std::string>& avoid);

// Child indices: unary constructors use 0, App uses 0 (function) and 1
// (argument).
using TermPath = std::vector<std::uint8_t>;

class PathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Term subtermAt(const Term& m, const TermPath& p);
Term replaceAt(const Term& m, const TermPath& p, const Term& n);
std::string pathString(const TermPath& p);

std::string print(const Term& m);

inline bool startsWithLam(const Term& m) { return m.is(Kind::Lam); }
inline bool startsWithMu(const Term& m) { return m.is(Kind::Mu); }
inline bool startsWithBracket(const Term& m) { return m.is(Kind::Bracket); }

}  // namespace lambdamu
