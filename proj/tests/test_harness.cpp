#include <doctest.h>

#include <json.hpp>
#include <set>

#include "lambdamu/harness.hpp"
#include "lambdamu/substitution.hpp"
#include "lambdamu/typing.hpp"
#include "support.hpp"

using namespace lambdamu;
using lmtest::T;

namespace {

// Every raw term of the given size over fixed name sets, binders included.
// Closed-enough ones (free names within the pools) are kept by the caller.
void raw(std::size_t n, std::vector<std::vector<Term>>& memo) {
  static const std::vector<std::string> ls{"x", "p", "q", "r", "s"}, ms{"a", "f", "g", "h", "k"};
  if (memo.size() > n) return;
  for (std::size_t k = memo.size(); k <= n; ++k) {
    std::vector<Term> out;
    if (k == 1) {
      for (auto& v : ls) out.push_back(Term::var(LamVar{v}));
    } else if (k >= 2) {
      for (const Term& b : memo[k - 1]) {
        for (auto& v : ls) out.push_back(Term::lam(LamVar{v}, b));
        for (auto& v : ms) {
          out.push_back(Term::mu(MuVar{v}, b));
          out.push_back(Term::bracket(MuVar{v}, b));
        }
      }
      for (std::size_t i = 1; i + 2 <= k; ++i) {
        for (const Term& f : memo[i]) {
          for (const Term& a : memo[k - 1 - i]) out.push_back(Term::app(f, a));
        }
      }
    }
    memo.push_back(std::move(out));
  }
}

std::set<std::string> naiveClasses(std::size_t maxCxty) {
  std::vector<std::vector<Term>> memo;
  raw(maxCxty, memo);
  std::set<std::string> out;
  for (std::size_t k = 1; k <= maxCxty; ++k) {
    for (const Term& t : memo[k]) {
      FreeVars f = fv(t);
      bool ok = true;
      for (auto& v : f.lam) ok = ok && v.name == "x";
      for (auto& v : f.mu) ok = ok && v.name == "a";
      if (ok) out.insert(lmtest::db(t));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("enumeration golden list") {
  EnumBounds b;
  b.maxCxty = 2;
  std::vector<std::string> got;
  for (const Term& t : enumerateTerms(b)) got.push_back(print(t));
  CHECK(got == std::vector<std::string>{"x", "\\x1. x1", "\\x1. x", "#a1. x", "[a]x"});
  b.maxCxty = 5;
  CHECK(countTerms(b) == 528);
}

TEST_CASE("enumeration matches a brute-force generator deduplicated by de Bruijn form") {
  EnumBounds b;
  b.maxCxty = 5;
  std::set<std::string> mine;
  std::size_t n = 0;
  forEachTerm(b, [&](const Term& t) {
    mine.insert(lmtest::db(t));
    ++n;
    return true;
  });
  CHECK(n == mine.size());
  CHECK(mine == naiveClasses(5));
  CHECK(mine.size() == 528);
}

TEST_CASE("enumeration is deterministic and typable filtering is exact") {
  EnumBounds b;
  b.maxCxty = 7;
  b.muVarPool = 2;
  auto all = enumerateTerms(b), again = enumerateTerms(b);
  REQUIRE(all.size() == again.size());
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i] == again[i]);
  b.typableOnly = true;
  auto typ = enumerateTerms(b);
  std::size_t want = 0;
  for (const Term& t : all) want += isTypable(t);
  CHECK(typ.size() == want);
  for (const Term& t : typ) CHECK(isTypable(t));
  std::size_t seen = 0;
  forEachTerm(b, [&](const Term&) { return ++seen < 10; });
  CHECK(seen == 10);
}

TEST_CASE("pool names") {
  CHECK(lamPoolNames(3) == std::vector<std::string>{"x", "y", "z"});
  CHECK(muPoolNames(2) == std::vector<std::string>{"a", "b"});
}

TEST_CASE("typable terms are saturated on the fragment") {
  EnumBounds b;
  b.maxCxty = 6;
  ConditionReport r = checkSaturated(typablePredicate(), b);
  CHECK(r.passed());
  for (const char* c : {"S<=Tt", "C1", "C2", "C3", "C4", "C5", "C6"}) {
    REQUIRE(r.find(c));
    CHECK(r.find(c)->instances > 0);
  }
  auto j = nlohmann::json::parse(r.toJson());
  CHECK(j["verdict"] == "pass-at-bound");
  CHECK(j["conditions"].size() == 7);
  CHECK(r.toText().find("verdict: pass-at-bound") != std::string::npos);
}

TEST_CASE("an incomplete set fails saturation with a replayable witness") {
  EnumBounds b;
  b.maxCxty = 6;
  Term hole = T("(x)y");
  b.lamVarPool = 2;
  SetPredicate s = without(typablePredicate(), hole);
  ConditionReport r = checkSaturated(s, b);
  CHECK_FALSE(r.passed());
  const ConditionResult* c4 = r.find("C4");
  REQUIRE(c4);
  REQUIRE_FALSE(c4->passed());
  bool seen = false;
  for (const auto& ex : c4->examples) seen = seen || alphaEq(ex.term, hole);
  CHECK(seen);
  CHECK(s(hole) == Membership::No);
  CHECK(isTypable(hole));
}

TEST_CASE("BB-saturation and orthogonals") {
  EnumBounds b;
  b.maxCxty = 5;
  b.lamVarPool = 2;
  SetPredicate tt = typablePredicate();
  ConditionReport r = checkBBSaturated(tt, tt, b);
  CHECK(r.passed());
  CHECK(r.find("D3")->instances > 0);

  auto orth = computeOrthogonal(tt, tt, b);
  REQUIRE_FALSE(orth.empty());
  CHECK(orth.front().empty());
  auto hasY = [](const std::vector<TermSeq>& xs) {
    for (const auto& s : xs)
      if (s.size() == 1 && s[0] == T("y")) return true;
    return false;
  };
  CHECK(hasY(orth));

  Term hole = T("(x)y");
  SetPredicate cut = without(tt, hole);
  ConditionReport rc = checkBBSaturated(cut, cut, b);
  const ConditionResult* d2 = rc.find("D2");
  REQUIRE(d2);
  CHECK_FALSE(d2->passed());
  REQUIRE_FALSE(d2->examples.empty());
  CHECK(alphaEq(d2->examples.front().term, hole));
  CHECK_FALSE(hasY(computeOrthogonal(cut, cut, b)));
}

TEST_CASE("arrow sets") {
  EnumBounds b;
  b.maxCxty = 6;
  SetPredicate tt = typablePredicate();
  SetPredicate ar = arrowSet(tt, tt, tt, b);
  CHECK(ar(T("\\x.x")) == Membership::Yes);
  CHECK(ar(T("x")) == Membership::Yes);
  CHECK(ar(T("\\x.(x)x")) == Membership::No);
  b.lamVarPool = 2;
  SetPredicate strict = arrowSet(tt, without(tt, T("(x)y")), tt, b);
  CHECK(strict(T("x")) == Membership::No);
  CHECK(strict(T("\\x1.x1")) == Membership::Yes);
  CHECK(inArrowOfSeqs({{}}, tt, T("x")) == Membership::Yes);
  CHECK(inArrowOfSeqs({{}, {T("y")}}, without(tt, T("(x)y")), T("x")) == Membership::No);
}

TEST_CASE("memoized predicates") {
  int calls = 0;
  SetPredicate p("count", [&](const Term&) {
    ++calls;
    return Membership::Yes;
  });
  p(T("x"));
  p(T("x"));
  SetPredicate q = p;
  q(T("x"));
  CHECK(calls == 1);
  CHECK(intersect(p, SetPredicate("no", [](const Term&) { return Membership::No; }))(T("x")) == Membership::No);
  SetPredicate sn = snPredicate(RuleSet::Full(), 10000);
  CHECK(sn(cycleTerm()) == Membership::No);
  CHECK(sn(T("\\x.x")) == Membership::Yes);
  CHECK(wnPredicate(RuleSet::Full(), 10000)(cycleTerm()) == Membership::Yes);
}

TEST_CASE("the translation lemma fails on a pinned witness") {
  const MuVar a{"a"};
  Term m = T("#a1. [a][a1]x");
  CHECK(isTypable(m));
  CHECK(eta(m, RuleSet::R()).value == 0);
  Term ma = alphaTranslate(m, a);
  CHECK(ma == T("#a1. [a1]x"));
  CHECK(eta(ma, RuleSet::R()).value == 1);

  // The reduct of the translation has no preimage step.
  Term l = T("[a][b]#a1. x");
  CHECK(isTypable(l));
  Term lb = alphaTranslate(l, MuVar{"b"});
  CHECK(lb == T("[a]#a1. x"));
  auto up = successors(lb, RuleSet::R());
  REQUIRE(up.size() == 1);
  CHECK(up[0].after == T("x"));
  for (const Step& s : successors(l, RuleSet::R())) CHECK_FALSE(alphaEq(alphaTranslate(s.after, MuVar{"b"}), T("x")));

  EnumBounds b;
  b.maxCxty = 5;
  b.muVarPool = 2;
  ConditionReport r = runLemmaSuite("eta-malpha", b);
  const ConditionResult* mono = r.find("eta-monotone");
  REQUIRE(mono);
  CHECK_FALSE(mono->passed());
  bool pinned = false;
  for (const auto& ex : mono->examples) pinned = pinned || alphaEq(ex.term, m);
  CHECK(pinned);
  CHECK(r.find("eta-monotone/no-bot")->passed());
  CHECK(r.find("reduct-lift/no-bot")->passed());
}

TEST_CASE("left-substitution cleanup needs typable inputs") {
  Term n = T("([a]x)x");
  Term m = T("#a1. \\x1. x1");
  CHECK_FALSE(isTypable(n));
  CHECK_FALSE(checkLeftSubstCleanup(m, MuVar{"a"}, n).empty());
  Term sub = muSubst(n, MuVar{"a"}, Side::L, m);
  CHECK(searchReachable(sub, T("(\\x1.x1)x"), RuleSet::of({Rule::Mu, Rule::Rho})).found.has_value());
}

TEST_CASE("lemma suites pass at a small bound") {
  EnumBounds b;
  b.maxCxty = 5;
  b.muVarPool = 2;
  for (const std::string& name : suiteNames()) {
    if (name == "eta-malpha") continue;
    CAPTURE(name);
    ConditionReport r = runLemmaSuite(name, b);
    CHECK(r.passed());
    CHECK(r.totalInstances() > 0);
  }
  CHECK_THROWS_AS(runLemmaSuite("no-such-suite", b), UnknownSuite);
}
