#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lambdamu/syntax.hpp"

namespace lambdamu {

enum class Rule : std::uint8_t { Beta, Mu, MuPrime, Rho, Theta, Epsilon };

// beta | mu | mu' | rho | theta | epsilon
const char* ruleName(Rule r);
std::optional<Rule> ruleFromName(std::string_view s);

class RuleSet {
 public:
  constexpr RuleSet() = default;
  static constexpr RuleSet of(std::initializer_list<Rule> rules) {
    RuleSet s;
    for (Rule r : rules) s.bits_ |= bit(r);
    return s;
  }
  static constexpr RuleSet R() { return of({Rule::Beta, Rule::Mu, Rule::Rho, Rule::Theta, Rule::Epsilon}); }
  static constexpr RuleSet RPrime() { return of({Rule::Beta, Rule::Mu, Rule::MuPrime, Rule::Rho, Rule::Epsilon}); }
  static constexpr RuleSet Full() { return R().with(Rule::MuPrime); }

  // Letters from "bmMrte"; M is μ′. Throws std::invalid_argument.
  static RuleSet parse(std::string_view letters);
  std::string letters() const;

  constexpr bool contains(Rule r) const { return (bits_ & bit(r)) != 0; }
  constexpr RuleSet with(Rule r) const {
    RuleSet s = *this;
    s.bits_ |= bit(r);
    return s;
  }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool operator==(const RuleSet&) const = default;

 private:
  static constexpr std::uint8_t bit(Rule r) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(r)); }
  std::uint8_t bits_ = 0;
};

struct Redex {
  TermPath path;
  Rule rule;
  bool operator==(const Redex&) const = default;
};

class NotARedex : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StrategyFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pre-order over positions; at one App node β or μ comes before μ′.
std::vector<Redex> findRedexes(const Term& m, RuleSet rs);
bool isRedex(const Term& m, Rule r);
// Contracts m itself (the redex sits at the root).
Term contract(const Term& m, Rule r);
Term stepAt(const Term& m, const TermPath& p, Rule r);
bool isNormalForm(const Term& m, RuleSet rs);

struct Step {
  Rule rule;
  TermPath path;
  Term before;
  Term after;
};

// Stopped: an interactive script or the cyclic schedule ran out of moves
// before a normal form.
enum class Status : std::uint8_t { Normal, CycleFound, FuelExceeded, Stopped };
const char* statusName(Status s);

struct Trace {
  Term initial;
  std::vector<Step> steps;
  Status status = Status::Normal;

  const Term& last() const { return steps.empty() ? initial : steps.back().after; }
};

enum class Strategy : std::uint8_t { LeftmostOutermost, LeftmostInnermost, FullSearch, Interactive, CycleDemo };
std::optional<Strategy> strategyFromName(std::string_view s);
const char* strategyName(Strategy s);

constexpr std::size_t kDefaultStepFuel = 100000;
constexpr std::size_t kDefaultNodeFuel = 1000000;

struct ReduceOptions {
  Strategy strategy = Strategy::LeftmostOutermost;
  std::size_t fuel = kDefaultStepFuel;
  // At an App hosting both μ and μ′ (or β and μ′), pick the μ/β one.
  bool preferMu = true;
  // Interactive.
  std::vector<Redex> script;
  // CycleDemo: rules tried in turn, each at its leftmost-innermost redex.
  std::vector<Rule> schedule{Rule::MuPrime, Rule::Mu, Rule::Rho, Rule::Theta};
};

// Deterministic strategies stop with CycleFound when a canonical form comes
// back. FullSearch returns a shortest path to some normal form.
Trace reduce(const Term& m, RuleSet rs, const ReduceOptions& opt = {});

// Every one-step reduct, in findRedexes order.
std::vector<Step> successors(const Term& m, RuleSet rs);

enum class SNVerdict : std::uint8_t { SN, NotSN, FuelExceeded };

struct EtaResult {
  SNVerdict verdict = SNVerdict::SN;
  std::size_t value = 0;       // when SN
  std::optional<Trace> cycle;  // when NotSN; starts and ends on the same class
  std::size_t explored = 0;
};

EtaResult eta(const Term& m, RuleSet rs, std::size_t fuel = kDefaultNodeFuel);
inline EtaResult isSN(const Term& m, RuleSet rs, std::size_t fuel = kDefaultNodeFuel) { return eta(m, rs, fuel); }

// Breadth-first over the rs-graph, shortest trace first. `found` is empty
// when fuel ran out or the reachable graph has no hit (then exhausted).
struct SearchResult {
  bool exhausted = false;  // the whole reachable graph was seen
  std::optional<Trace> found;
  std::size_t explored = 0;
};
SearchResult searchNormalForm(const Term& m, RuleSet rs, std::size_t fuel = kDefaultNodeFuel);
SearchResult searchReachable(const Term& from, const Term& to, RuleSet rs, std::size_t fuel = kDefaultNodeFuel);
// Distinct (modulo alpha) normal forms reachable within fuel.
std::vector<Term> reachableNormalForms(const Term& m, RuleSet rs, std::size_t fuel, bool* exhausted = nullptr);

Term thetaNormalize(const Term& m);
Trace thetaNormalizeTrace(const Term& m);

// Phase 1: leftmost-outermost R′ reduction, falling back to breadth-first
// search when it loops or runs dry. Phase 2: θ-normalization.
Trace normalizeWN(const Term& m, std::size_t fuel = kDefaultStepFuel);

bool isAlphaClean(const Term& m, const MuVar& a);

// Normalizes (x)N1...Nn for R′-normal Ni by the left-to-right μ/μ′ spine
// walk. Throws StrategyFailed naming the violated condition.
Term headSpineNormalize(const LamVar& x, const TermSeq& ns);
Trace headSpineTrace(const LamVar& x, const TermSeq& ns);

// Leftmost-innermost μ/ρ reduction of a subterm; the μ/ρ closing phase of
// the spine walk.
Trace muRhoNormalize(const Term& m, std::size_t fuel = kDefaultStepFuel);

// Postcondition checks used by the spine walk and the property suites.
// Each returns "" when the claim holds, else a description. Callers
// establish the preconditions; all terms below are R′-normal.
//
// m a-clean: m[a:=r n] is βμρε-normal and a-clean, and its μ′-redexes are
// all [a](U)n; R′-normal outright when n is not a μ.
std::string checkRightSubstResidue(const Term& m, const MuVar& a, const Term& n);
// n not a λ: m[a:=l n] is βμ′ρε-normal, its μ-redexes are all [a](n)U.
std::string checkLeftSubstResidue(const Term& m, const MuVar& a, const Term& n);
// m not a λ, and a-clean when m = μa.M′: n[g:=l m] reaches an R′-normal,
// g-clean form by μ/ρ steps, not starting with μ unless n does.
std::string checkLeftSubstCleanup(const Term& m, const MuVar& g, const Term& n);
// p = μa.P′ a-clean and q not a μ, or q a μ and p neither a λ nor an
// unclean μ: (p)q reaches a clean R′-normal μ-abstraction.
std::string checkSpineStep(const Term& p, const Term& q);
// Every θ-step (and the θ-normal form) stays R′-normal; a λ head comes
// from a λ or μ head, a μ head from a μ head.
std::string checkThetaStep(const Term& m);

// Text: "<i> <rule> <path> <term>" per step, one line each.
std::string traceToText(const Trace& t);
std::string traceToJson(const Trace& t, int indent = 2);

}  // namespace lambdamu
