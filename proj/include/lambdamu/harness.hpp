#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lambdamu/reduction.hpp"
#include "lambdamu/syntax.hpp"

namespace lambdamu {

struct EnumBounds {
  std::size_t maxCxty = 5;
  std::size_t lamVarPool = 1;
  std::size_t muVarPool = 1;
  bool typableOnly = false;

  // Orthogonals, D3 and ⇝: sequences of at most seqMaxLen elements, each
  // (and each tested subject) of cxty at most seqElemCxty; 0 means maxCxty/2.
  std::size_t seqMaxLen = 3;
  std::size_t seqElemCxty = 0;

  // Node fuel for SN/WN membership tests.
  std::size_t fuel = 20000;

  std::size_t elemCxty() const { return seqElemCxty ? seqElemCxty : std::max<std::size_t>(1, maxCxty / 2); }
};

// Free-variable pools: x, y, z, w, u, v, x6, ... and a, b, c, d, e, a5, ...
// Bound variables are x1, x2, ... and a1, a2, ... by binder depth.
std::vector<std::string> lamPoolNames(std::size_t n);
std::vector<std::string> muPoolNames(std::size_t n);

// Every alpha class up to maxCxty exactly once, as its canonical
// representative, ordered by cxty then constructor. The callback returns
// false to stop early.
void forEachTerm(const EnumBounds& b, const std::function<bool(const Term&)>& f);
std::vector<Term> enumerateTerms(const EnumBounds& b);
std::size_t countTerms(const EnumBounds& b);

enum class Membership : unsigned char { No, Yes, Unknown };

// A memoized membership test. Copies share the memo table.
class SetPredicate {
 public:
  using Fn = std::function<Membership(const Term&)>;
  SetPredicate(std::string name, Fn fn, bool memoize = true);

  Membership operator()(const Term& m) const;
  const std::string& name() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

SetPredicate typablePredicate();
// isTypable and SN under rs; fuel overrun is Unknown.
SetPredicate snPredicate(RuleSet rs, std::size_t fuel);
// isTypable and some normal form reachable under rs.
SetPredicate wnPredicate(RuleSet rs, std::size_t fuel);
SetPredicate intersect(const SetPredicate& a, const SetPredicate& b);
// s with the alpha class of t removed.
SetPredicate without(const SetPredicate& s, const Term& t);
// K ⇝ L inside BB, with N ranging over the enumerated terms of cxty at
// most b.elemCxty().
SetPredicate arrowSet(const SetPredicate& k, const SetPredicate& l, const SetPredicate& bb, const EnumBounds& b);

struct Counterexample {
  Term term;
  std::string detail;
};

struct ConditionResult {
  ConditionResult(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  std::size_t instances = 0;
  std::size_t unknown = 0;
  std::size_t failures = 0;
  std::vector<Counterexample> examples;  // first few, enumeration order

  bool passed() const { return failures == 0; }
  const char* verdict() const { return passed() ? "pass-at-bound" : "fail"; }
  void fail(const Term& t, std::string detail);
};

struct ConditionReport {
  std::string subject;
  EnumBounds bounds;
  std::vector<ConditionResult> conditions;

  bool passed() const;
  std::size_t totalInstances() const;
  const ConditionResult* find(std::string_view name) const;
  std::string toText() const;
  std::string toJson(int indent = 2) const;
};

// C1..C6 over the enumerated fragment, plus an "S<=Tt" precondition row.
ConditionReport checkSaturated(const SetPredicate& s, const EnumBounds& b);
// D1..D3, plus "S<=BB<=Tt".
ConditionReport checkBBSaturated(const SetPredicate& s, const SetPredicate& bb, const EnumBounds& b);

// Sequences of BB-elements (bounded as in EnumBounds) every prefix of which
// keeps each S-subject inside BB whenever the application is typable. The
// empty sequence is always first.
std::vector<TermSeq> computeOrthogonal(const SetPredicate& s, const SetPredicate& bb, const EnumBounds& b);
// M ∈ X ⇝ BB over the given sequences.
Membership inArrowOfSeqs(const std::vector<TermSeq>& x, const SetPredicate& bb, const Term& m);

class UnknownSuite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& suiteNames();
ConditionReport runLemmaSuite(std::string_view name, const EnumBounds& b);

// (μb.U)U with U = μa.[a][a]x.
Term cycleTerm();

}  // namespace lambdamu
