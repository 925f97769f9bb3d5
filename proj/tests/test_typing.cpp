#include <doctest.h>

#include <map>
#include <optional>

#include "lambdamu/harness.hpp"
#include "lambdamu/parse.hpp"
#include "lambdamu/typing.hpp"
#include "support.hpp"

using namespace lambdamu;
using lmtest::T;

namespace {

Type Ty(const char* s) { return parseType(s); }

Context ctxOf(const char* judgment) {
  ParsedJudgment j = parseJudgment(judgment);
  Context c;
  for (auto& [x, t] : j.gamma) c.gamma.insert_or_assign(x, t);
  for (auto& [a, t] : j.theta) c.theta.insert_or_assign(a, t);
  return c;
}

bool checks(const Context& c, const Term& m, const Type& a) {
  return std::holds_alternative<Derivation>(checkJudgment(c, m, a));
}

// Ground types over {⊥, A, B} of arrow depth at most d.
std::vector<Type> groundTypes(int d) {
  std::vector<Type> out{Type::bottom(), Type::atom("A"), Type::atom("B")};
  for (int i = 0; i < d; ++i) {
    std::vector<Type> next{Type::bottom(), Type::atom("A"), Type::atom("B")};
    for (const Type& f : out) {
      for (const Type& t : out) next.push_back(Type::arrow(f, t));
    }
    out = std::move(next);
  }
  return out;
}

// One-way matching of a schema (atoms T0, T1, ...) against a ground type.
bool match(const Type& schema, const Type& g, std::map<std::string, Type>& s) {
  switch (schema.kind()) {
    case TypeKind::Atom: {
      auto it = s.find(schema.atomName());
      if (it == s.end()) {
        s.emplace(schema.atomName(), g);
        return true;
      }
      return it->second == g;
    }
    case TypeKind::Bottom:
      return g.isBottom();
    case TypeKind::Arrow:
      return g.isArrow() && match(schema.from(), g.from(), s) && match(schema.to(), g.to(), s);
  }
  return false;
}

Type instantiate(const Type& schema, const std::map<std::string, Type>& s) {
  switch (schema.kind()) {
    case TypeKind::Atom: {
      auto it = s.find(schema.atomName());
      return it == s.end() ? Type::bottom() : it->second;
    }
    case TypeKind::Bottom:
      return schema;
    case TypeKind::Arrow:
      return Type::arrow(instantiate(schema.from(), s), instantiate(schema.to(), s));
  }
  return schema;
}

}  // namespace

TEST_CASE("checkJudgment: the cycle term under x:_|_") {
  Context c = ctxOf("x:_|_ |- x");
  auto r = checkJudgment(c, cycleTerm(), Type::bottom());
  REQUIRE(std::holds_alternative<Derivation>(r));
  const Derivation& d = std::get<Derivation>(r);
  CHECK(d.rule == TypingRule::ArrowE);
  CHECK(replayDerivation(d));
}

TEST_CASE("checkJudgment: axiom") {
  Context c = ctxOf("x:A |- x");
  auto r = checkJudgment(c, T("x"), Ty("A"));
  REQUIRE(std::holds_alternative<Derivation>(r));
  CHECK(std::get<Derivation>(r).rule == TypingRule::Ax);
  CHECK(std::string(ruleName(TypingRule::Ax)) == "ax");
  CHECK_FALSE(checks(c, T("x"), Ty("B")));
}

TEST_CASE("checkJudgment: double negation elimination") {
  Term m = T("\\x.#a.(x)\\y.[a]y");
  Type t = Ty("((A->_|_)->_|_)->A");
  auto r = checkJudgment({}, m, t);
  REQUIRE(std::holds_alternative<Derivation>(r));
  const Derivation& d = std::get<Derivation>(r);
  CHECK(replayDerivation(d));
  CHECK(d.rule == TypingRule::ArrowI);
  REQUIRE(d.premises.size() == 1);
  CHECK(d.premises[0].rule == TypingRule::BotE);

  // The same derivation assembled by hand.
  Type na = Ty("A->_|_"), nna = Ty("(A->_|_)->_|_"), a = Ty("A"), bot = Type::bottom();
  Context c0, c1, c2, c3;
  c1.gamma.emplace(LamVar{"x"}, nna);
  c2 = c1;
  c2.theta.emplace(MuVar{"a"}, a);
  c3 = c2;
  c3.gamma.emplace(LamVar{"y"}, a);
  Derivation ay{TypingRule::Ax, {c3, T("y"), a}, {}};
  Derivation bi{TypingRule::BotI, {c3, T("[a]y"), bot}, {ay}};
  Derivation lam{TypingRule::ArrowI, {c2, T("\\y.[a]y"), na}, {bi}};
  Derivation ax{TypingRule::Ax, {c2, T("x"), nna}, {}};
  Derivation app{TypingRule::ArrowE, {c2, T("(x)\\y.[a]y"), bot}, {ax, lam}};
  Derivation be{TypingRule::BotE, {c1, T("#a.(x)\\y.[a]y"), a}, {app}};
  Derivation top{TypingRule::ArrowI, {c0, m, t}, {be}};
  CHECK(replayDerivation(top));

  // Tampering anywhere is caught.
  Derivation bad = top;
  bad.conclusion.type = Ty("((A->_|_)->_|_)->B");
  CHECK_FALSE(replayDerivation(bad));
  bad = top;
  bad.premises[0].premises[0].premises[1].premises[0].rule = TypingRule::Ax;
  CHECK_FALSE(replayDerivation(bad));
  bad = top;
  bad.premises[0].premises[0].premises[0].conclusion.type = Ty("(A->_|_)->A");
  CHECK_FALSE(replayDerivation(bad));
  bad = top;
  bad.premises[0].premises[0].premises[1].premises[0].premises[0].conclusion.ctx.gamma.clear();
  CHECK_FALSE(replayDerivation(bad));
  bad = top;
  bad.premises[0].premises.clear();
  CHECK_FALSE(replayDerivation(bad));
}

TEST_CASE("inferPrincipal") {
  auto r = inferPrincipal(T("\\x.x"));
  REQUIRE(std::holds_alternative<Principal>(r));
  CHECK(print(std::get<Principal>(r).type) == "T0 -> T0");
  CHECK(std::holds_alternative<Untypable>(inferPrincipal(T("\\x.(x)x"))));
  auto u = inferPrincipal(T("([a]x)y"));
  REQUIRE(std::holds_alternative<Untypable>(u));
  CHECK(std::get<Untypable>(u).path == TermPath{});
  auto p = inferPrincipal(T("(x)y"));
  REQUIRE(std::holds_alternative<Principal>(p));
  const Principal& pp = std::get<Principal>(p);
  CHECK(pp.ctx.gamma.size() == 2);
  CHECK(print(pp.ctx.gamma.at(LamVar{"x"})) == "T1 -> T0");
  CHECK(pp.atoms.size() == 2);
}

TEST_CASE("isTypable") {
  CHECK(isTypable(T("#a.[a][a]x")));
  CHECK_FALSE(isTypable(T("#a.\\x.x")));
  CHECK(isTypable(cycleTerm()));
  CHECK_FALSE(isTypable(T("(\\x.(x)x)\\x.(x)x")));
}

TEST_CASE("type errors carry a path") {
  auto r = checkJudgment({}, T("\\y.([a]x)y"), Ty("A->A"));
  REQUIRE(std::holds_alternative<TypeError>(r));
  auto e = std::get<TypeError>(r);
  CHECK_FALSE(e.reason.empty());
}

TEST_CASE("principal typing checks and replays on the enumerated fragment") {
  EnumBounds b;
  b.maxCxty = 6;
  b.lamVarPool = 2;
  b.muVarPool = 2;
  std::size_t typed = 0;
  forEachTerm(b, [&](const Term& m) {
    auto r = inferPrincipal(m);
    CHECK(std::holds_alternative<Principal>(r) == isTypable(m));
    if (auto* p = std::get_if<Principal>(&r)) {
      ++typed;
      FreeVars f = fv(m);
      CHECK(p->ctx.gamma.size() == f.lam.size());
      CHECK(p->ctx.theta.size() == f.mu.size());
      auto d = checkJudgment(p->ctx, m, p->type);
      REQUIRE(std::holds_alternative<Derivation>(d));
      const Derivation& dd = std::get<Derivation>(d);
      CHECK(replayDerivation(dd));
      CHECK(dd.conclusion.term == m);
      CHECK(dd.conclusion.type == p->type);
    }
    return true;
  });
  CHECK(typed > 1000);
}

// Every ground typing of a small term, found by trying all assignments, is
// an instance of the principal one; every instance checks.
TEST_CASE("principality by brute force over {_|_, A, B}") {
  EnumBounds b;
  b.maxCxty = 5;
  std::vector<std::vector<Type>> byDepth{groundTypes(0), groundTypes(1), groundTypes(2), groundTypes(3)};
  std::size_t judged = 0;
  forEachTerm(b, [&](const Term& m) {
    FreeVars f = fv(m);
    std::vector<LamVar> xs(f.lam.begin(), f.lam.end());
    std::vector<MuVar> as(f.mu.begin(), f.mu.end());
    std::size_t slots = xs.size() + as.size() + 1;
    const auto& pool = byDepth[slots == 1 ? 3 : slots == 2 ? 2 : 1];
    auto pr = inferPrincipal(m);
    const Principal* p = std::get_if<Principal>(&pr);
    std::vector<std::size_t> idx(slots, 0);
    while (true) {
      Context c;
      for (std::size_t i = 0; i < xs.size(); ++i) c.gamma.emplace(xs[i], pool[idx[i]]);
      for (std::size_t i = 0; i < as.size(); ++i) c.theta.emplace(as[i], pool[idx[xs.size() + i]]);
      const Type& t = pool[idx.back()];
      bool ok = checks(c, m, t);
      bool inst = false;
      if (p) {
        std::map<std::string, Type> s;
        inst = match(p->type, t, s);
        for (auto& [x, ty] : p->ctx.gamma) inst = inst && match(ty, c.gamma.at(x), s);
        for (auto& [a, ty] : p->ctx.theta) inst = inst && match(ty, c.theta.at(a), s);
      }
      if (ok != inst) {
        FAIL_CHECK(print(m) << " under " << printContext(c) << " : " << print(t) << " checks=" << ok
                            << " instance=" << inst);
        return false;
      }
      ++judged;
      std::size_t k = 0;
      while (k < slots && ++idx[k] == pool.size()) idx[k++] = 0;
      if (k == slots) break;
    }
    return true;
  });
  CHECK(judged > 1000000);
}

TEST_CASE("weakening") {
  EnumBounds b;
  b.maxCxty = 6;
  b.lamVarPool = 2;
  b.muVarPool = 2;
  std::map<std::string, Type> s{{"T0", Ty("A->B")}, {"T1", Type::bottom()}, {"T2", Ty("A")}};
  forEachTerm(b, [&](const Term& m) {
    auto pr = inferPrincipal(m);
    const Principal* p = std::get_if<Principal>(&pr);
    if (!p) return true;
    Context c;
    for (auto& [x, t] : p->ctx.gamma) c.gamma.emplace(x, instantiate(t, s));
    for (auto& [a, t] : p->ctx.theta) c.theta.emplace(a, instantiate(t, s));
    Type t = instantiate(p->type, s);
    REQUIRE(checks(c, m, t));
    Context w = c;
    w.gamma.emplace(LamVar{"fresh"}, Ty("B->B"));
    w.theta.emplace(MuVar{"fresh"}, Ty("A"));
    CHECK(checks(w, m, t));
    return true;
  });
}
