// The named property suites. Each one walks the enumerated fragment and
// tallies instances per row; the first failing terms are kept verbatim.

#include <map>

#include "lambdamu/harness.hpp"
#include "lambdamu/substitution.hpp"
#include "lambdamu/typing.hpp"

namespace lambdamu {

Term cycleTerm() {
  const MuVar a{"a"};
  Term u = Term::mu(a, Term::bracket(a, Term::bracket(a, Term::var(LamVar{"x"}))));
  return Term::app(Term::mu(MuVar{"b"}, u), u);
}

const std::vector<std::string>& suiteNames() {
  static const std::vector<std::string> names{
      "triva",   "rename-nf", "l-alpha", "bl-head",           "propaga-sn", "eta-malpha",    "theta-postpone",
      "wn2lem1", "wn2lem2",   "wn2lem3", "subject-reduction", "sn-R",       "wn-full",       "saturation-Tt",
      "cycle-witness"};
  return names;
}

namespace {

void record(ConditionResult& c, const Term& t, bool ok, const std::string& detail) {
  ++c.instances;
  if (!ok) c.fail(t, detail);
}

void recordCheck(ConditionResult& c, const Term& t, const std::string& violation, const std::string& ctx = {}) {
  record(c, t, violation.empty(), ctx.empty() ? violation : ctx + "; " + violation);
}

struct Names {
  LamVar x;
  MuVar a, b, g;
};

Names names(const EnumBounds& b) {
  auto lp = lamPoolNames(b.lamVarPool);
  auto mp = muPoolNames(std::max<std::size_t>(b.muVarPool, 3));
  return {LamVar{lp[0]}, MuVar{mp[0]}, MuVar{mp[1]}, MuVar{mp[2]}};
}

std::vector<Term> smallTerms(const EnumBounds& b, bool typable) {
  EnumBounds s = b;
  s.maxCxty = b.elemCxty();
  s.typableOnly = typable;
  return enumerateTerms(s);
}

std::vector<Term> rPrimeNormal(std::vector<Term> ts) {
  std::erase_if(ts, [](const Term& t) { return !isNormalForm(t, RuleSet::RPrime()); });
  return ts;
}

// 0 λ, 1 μ, 2 bracket, 3 anything else.
int head(const Term& t) {
  switch (t.kind()) {
    case Kind::Lam:
      return 0;
    case Kind::Mu:
      return 1;
    case Kind::Bracket:
      return 2;
    default:
      return 3;
  }
}

std::string with(const std::string& label, const Term& t) { return label + " = " + print(t); }

ConditionReport triva(const EnumBounds& b) {
  ConditionReport rep{"triva", b, {}};
  ConditionResult ren{"rename"}, beta{"beta"}, mu{"mu"}, comm{"commute"};
  const Names nm = names(b);
  const auto ns = smallTerms(b, false);
  forEachTerm(b, [&](const Term& m) {
    Term ma = alphaTranslate(m, nm.a);
    record(ren, m,
           alphaEq(alphaTranslate(renameMu(m, nm.b, nm.g), nm.a), renameMu(ma, nm.b, nm.g)),
           "(M[b:=g])_a differs from M_a[b:=g]");
    record(comm, m, alphaEq(alphaTranslate(ma, nm.b), alphaTranslate(alphaTranslate(m, nm.b), nm.a)),
           "(M_a)_b differs from (M_b)_a");
    for (const Term& n : ns) {
      Term na = alphaTranslate(n, nm.a);
      record(beta, m, alphaEq(alphaTranslate(betaSubst(m, nm.x, n), nm.a), betaSubst(ma, nm.x, na)), with("N", n));
      record(mu, m, alphaEq(alphaTranslate(muSubst(m, nm.b, Side::R, n), nm.a), muSubst(ma, nm.b, Side::R, na)),
             with("N", n));
    }
    return true;
  });
  rep.conditions = {ren, beta, mu, comm};
  return rep;
}

ConditionReport renameNf(const EnumBounds& b) {
  ConditionReport rep{"rename-nf", b, {}};
  ConditionResult r{"R"}, rp{"R'"};
  const Names nm = names(b);
  forEachTerm(b, [&](const Term& m) {
    for (const MuVar& to : {nm.b, nm.g}) {
      Term mm = renameMu(m, nm.a, to);
      record(r, m, isNormalForm(m, RuleSet::R()) == isNormalForm(mm, RuleSet::R()), with("renamed", mm));
      record(rp, m, isNormalForm(m, RuleSet::RPrime()) == isNormalForm(mm, RuleSet::RPrime()), with("renamed", mm));
    }
    return true;
  });
  rep.conditions = {r, rp};
  return rep;
}

ConditionReport lAlpha(const EnumBounds& b) {
  ConditionReport rep{"l-alpha", b, {}};
  ConditionResult nf{"nf"}, hd{"head"}, wit{"untypable-witness"};
  const auto mus = muPoolNames(b.muVarPool);
  EnumBounds tb = b;
  tb.typableOnly = true;
  forEachTerm(tb, [&](const Term& m) {
    if (!isNormalForm(m, RuleSet::RPrime())) return true;
    for (const auto& an : mus) {
      Term ma = alphaTranslate(m, MuVar{an});
      record(nf, m, isNormalForm(ma, RuleSet::RPrime()), with("M_" + an, ma));
      bool ok = true;
      if (head(ma) == 1 && head(m) != 1) ok = false;
      if (head(ma) == 0 && head(m) != 0 && head(m) != 2) ok = false;
      record(hd, m, ok, with("M_" + an, ma));
    }
    return true;
  });
  // ([a]λx.y)z: normal, untypable, and its translation is a β-redex.
  const MuVar a{"a"};
  Term w = Term::app(Term::bracket(a, Term::lam(LamVar{"x"}, Term::var(LamVar{"y"}))), Term::var(LamVar{"z"}));
  record(wit, w,
         !isTypable(w) && isNormalForm(w, RuleSet::RPrime()) &&
             !isNormalForm(alphaTranslate(w, a), RuleSet::RPrime()),
         "expected an untypable normal term whose translation is not normal");
  rep.conditions = {nf, hd, wit};
  return rep;
}

ConditionReport blHead(const EnumBounds& b) {
  ConditionReport rep{"bl-head", b, {}};
  ConditionResult cr{"subst-r"}, cl{"subst-l"}, rn{"rename"};
  const Names nm = names(b);
  const auto ns = smallTerms(b, false);
  auto keeps = [](const Term& from, const Term& to) { return head(to) == 3 || head(to) == head(from); };
  forEachTerm(b, [&](const Term& m) {
    for (const Term& n : ns) {
      record(cr, m, keeps(m, muSubst(m, nm.a, Side::R, n)), with("N", n));
      record(cl, m, keeps(m, muSubst(m, nm.a, Side::L, n)), with("N", n));
    }
    record(rn, m, keeps(m, renameMu(m, nm.a, nm.b)), "renamed a to b");
    return true;
  });
  rep.conditions = {cr, cl, rn};
  return rep;
}

ConditionReport propagaSn(const EnumBounds& b) {
  ConditionReport rep{"propaga-sn", b, {}};
  ConditionResult p1{"lambda"}, p2{"mu"};
  const Names nm = names(b);
  const auto ns = smallTerms(b, false);
  std::map<std::string, SNVerdict> memo;
  auto sn = [&](const Term& t) {
    std::string k = canonicalKey(t);
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    SNVerdict v = eta(t, RuleSet::R(), b.fuel).verdict;
    memo.emplace(std::move(k), v);
    return v;
  };
  auto one = [&](ConditionResult& c, const Term& m, const Term& sub, const Term& n) {
    SNVerdict pre = sn(sub);
    if (pre == SNVerdict::FuelExceeded) {
      ++c.unknown;
      return;
    }
    if (pre != SNVerdict::SN) return;
    SNVerdict post = sn(m);
    if (post == SNVerdict::FuelExceeded) {
      ++c.unknown;
      return;
    }
    record(c, m, post == SNVerdict::SN, with("N", n));
  };
  forEachTerm(b, [&](const Term& m) {
    for (const Term& n : ns) {
      one(p1, m, betaSubst(m, nm.x, n), n);
      one(p2, m, muSubst(m, nm.a, Side::R, n), n);
    }
    return true;
  });
  rep.conditions = {p1, p2};
  return rep;
}

bool bracketsBottom(const Derivation& d) {
  if (d.rule == TypingRule::BotI && d.premises.at(0).conclusion.type.isBottom()) return true;
  return std::any_of(d.premises.begin(), d.premises.end(), bracketsBottom);
}

// Some μ-variable of m has type ⊥ in the derivation checked against the
// principal typing (types left open there count as ⊥ too).
bool hasBottomMuVar(const Term& m) {
  auto inf = inferPrincipal(m);
  const auto& p = std::get<Principal>(inf);
  auto d = checkJudgment(p.ctx, m, p.type);
  return !std::holds_alternative<Derivation>(d) || bracketsBottom(std::get<Derivation>(d));
}

// Translating a ⊥-typed variable can expose redexes M does not have:
// μg.[a][g]x has M_a = μg.[g]x, a θ-redex. The "/no-bot" rows leave out
// terms with a μ-variable of type ⊥.
ConditionReport etaMalpha(const EnumBounds& b) {
  ConditionReport rep{"eta-malpha", b, {}};
  ConditionResult mono{"eta-monotone"}, lift{"reduct-lift"};
  ConditionResult monoNb{"eta-monotone/no-bot"}, liftNb{"reduct-lift/no-bot"};
  const auto mus = muPoolNames(b.muVarPool);
  EnumBounds tb = b;
  tb.typableOnly = true;
  forEachTerm(tb, [&](const Term& m) {
    EtaResult em = eta(m, RuleSet::R(), b.fuel);
    const bool bot = hasBottomMuVar(m);
    auto mine = successors(m, RuleSet::R());
    for (const auto& an : mus) {
      const MuVar a{an};
      Term ma = alphaTranslate(m, a);
      EtaResult ea = eta(ma, RuleSet::R(), b.fuel);
      if (em.verdict == SNVerdict::FuelExceeded || ea.verdict == SNVerdict::FuelExceeded) {
        ++mono.unknown;
        if (!bot) ++monoNb.unknown;
      } else {
        bool ok = em.verdict == SNVerdict::SN && ea.verdict == SNVerdict::SN && ea.value <= em.value;
        std::string d = "eta(M) = " + std::to_string(em.value) + ", eta(M_" + an + ") = " + std::to_string(ea.value);
        record(mono, m, ok, d);
        if (!bot) record(monoNb, m, ok, d);
      }
      for (const Step& u : successors(ma, RuleSet::R())) {
        bool found = std::any_of(mine.begin(), mine.end(),
                                 [&](const Step& v) { return alphaEq(alphaTranslate(v.after, a), u.after); });
        record(lift, m, found, with("unmatched reduct of M_" + an, u.after));
        if (!bot) record(liftNb, m, found, with("unmatched reduct of M_" + an, u.after));
      }
    }
    return true;
  });
  rep.conditions = {mono, lift, monoNb, liftNb};
  return rep;
}

ConditionReport thetaPostpone(const EnumBounds& b) {
  ConditionReport rep{"theta-postpone", b, {}};
  ConditionResult c{"theta-steps"};
  forEachTerm(b, [&](const Term& m) {
    if (!isNormalForm(m, RuleSet::RPrime()) || isNormalForm(m, RuleSet::of({Rule::Theta}))) return true;
    recordCheck(c, m, checkThetaStep(m));
    return true;
  });
  rep.conditions = {c};
  return rep;
}

ConditionReport wn2lem1(const EnumBounds& b) {
  ConditionReport rep{"wn2lem1", b, {}};
  ConditionResult right{"right"}, left{"left"};
  const Names nm = names(b);
  const auto ns = rPrimeNormal(smallTerms(b, false));
  forEachTerm(b, [&](const Term& m) {
    if (!isNormalForm(m, RuleSet::RPrime())) return true;
    const bool clean = isAlphaClean(m, nm.a);
    for (const Term& n : ns) {
      // N has to be clean too, or its own [a]λ survives into the result.
      if (clean && isAlphaClean(n, nm.a)) recordCheck(right, m, checkRightSubstResidue(m, nm.a, n), with("N", n));
      if (!n.is(Kind::Lam)) recordCheck(left, m, checkLeftSubstResidue(m, nm.a, n), with("N", n));
    }
    return true;
  });
  rep.conditions = {right, left};
  return rep;
}

// m is not a λ, and a μ-abstraction m is clean on its own binder.
bool cleanHead(const Term& m) {
  if (m.is(Kind::Lam)) return false;
  return !m.is(Kind::Mu) || isAlphaClean(m.body(), m.muVar());
}

ConditionReport wn2lem2(const EnumBounds& b) {
  ConditionReport rep{"wn2lem2", b, {}};
  ConditionResult c{"cleanup"};
  const Names nm = names(b);
  // Typable inputs only: N = ([a]x)x with M = μg.λy.y comes out as the
  // β-redex (λy.y)x. M is also g-clean: its own [g]λ would otherwise be
  // copied in verbatim.
  auto ms = rPrimeNormal(smallTerms(b, true));
  std::erase_if(ms, [&](const Term& m) { return !cleanHead(m) || !isAlphaClean(m, nm.a); });
  EnumBounds tb = b;
  tb.typableOnly = true;
  forEachTerm(tb, [&](const Term& n) {
    if (!isNormalForm(n, RuleSet::RPrime())) return true;
    for (const Term& m : ms) recordCheck(c, n, checkLeftSubstCleanup(m, nm.a, n), with("M", m));
    return true;
  });
  rep.conditions = {c};
  return rep;
}

ConditionReport wn2lem3(const EnumBounds& b) {
  ConditionReport rep{"wn2lem3", b, {}};
  ConditionResult p1{"point1"}, p2{"point2"};
  const auto qs = rPrimeNormal(smallTerms(b, false));
  forEachTerm(b, [&](const Term& p) {
    if (!isNormalForm(p, RuleSet::RPrime())) return true;
    const bool muClean = p.is(Kind::Mu) && isAlphaClean(p.body(), p.muVar());
    for (const Term& q : qs) {
      if (muClean && !q.is(Kind::Mu)) recordCheck(p1, p, checkSpineStep(p, q), with("Q", q));
      if (q.is(Kind::Mu) && cleanHead(p)) recordCheck(p2, p, checkSpineStep(p, q), with("Q", q));
    }
    return true;
  });
  rep.conditions = {p1, p2};
  return rep;
}

ConditionReport subjectReduction(const EnumBounds& b) {
  ConditionReport rep{"subject-reduction", b, {}};
  ConditionResult c{"reducts"};
  EnumBounds tb = b;
  tb.typableOnly = true;
  forEachTerm(tb, [&](const Term& m) {
    auto inf = inferPrincipal(m);
    const auto* p = std::get_if<Principal>(&inf);
    if (!p) {
      record(c, m, false, "enumerated as typable but inference failed");
      return true;
    }
    for (const Step& s : successors(m, RuleSet::Full())) {
      bool ok = std::holds_alternative<Derivation>(checkJudgment(p->ctx, s.after, p->type));
      record(c, m, ok, std::string(ruleName(s.rule)) + " at " + pathString(s.path) + " gives " + print(s.after));
    }
    return true;
  });
  rep.conditions = {c};
  return rep;
}

ConditionReport snR(const EnumBounds& b) {
  ConditionReport rep{"sn-R", b, {}};
  ConditionResult c{"sn"};
  EnumBounds tb = b;
  tb.typableOnly = true;
  forEachTerm(tb, [&](const Term& m) {
    EtaResult e = eta(m, RuleSet::R(), b.fuel);
    record(c, m, e.verdict == SNVerdict::SN,
           e.verdict == SNVerdict::NotSN ? "reduction cycle under R" : "node fuel exhausted");
    return true;
  });
  rep.conditions = {c};
  return rep;
}

std::string wnViolation(const Term& m, std::size_t fuel) {
  try {
    Trace t = normalizeWN(m, fuel);
    if (t.status != Status::Normal) return std::string("normalization ended with ") + statusName(t.status);
    if (!findRedexes(t.last(), RuleSet::Full()).empty()) return with("redex left in", t.last());
    return {};
  } catch (const StrategyFailed& e) {
    return e.what();
  }
}

ConditionReport wnFull(const EnumBounds& b) {
  ConditionReport rep{"wn-full", b, {}};
  ConditionResult c{"normalizes"}, cyc{"cycle-term"};
  EnumBounds tb = b;
  tb.typableOnly = true;
  forEachTerm(tb, [&](const Term& m) {
    recordCheck(c, m, wnViolation(m, b.fuel));
    return true;
  });
  recordCheck(cyc, cycleTerm(), wnViolation(cycleTerm(), b.fuel));
  rep.conditions = {c, cyc};
  return rep;
}

ConditionReport cycleWitness(const EnumBounds& b) {
  ConditionReport rep{"cycle-witness", b, {}};
  ConditionResult c{"schedule"};
  ReduceOptions opt;
  opt.strategy = Strategy::CycleDemo;
  opt.fuel = 16;
  const Term m = cycleTerm();
  Trace t = reduce(m, RuleSet::Full(), opt);
  const std::vector<Rule> want{Rule::MuPrime, Rule::Mu, Rule::Rho, Rule::Theta};
  bool ok = t.status == Status::CycleFound && t.steps.size() == want.size() && alphaEq(t.last(), m);
  for (std::size_t i = 0; ok && i < want.size(); ++i) ok = t.steps[i].rule == want[i];
  record(c, m, ok, "got " + std::to_string(t.steps.size()) + " steps, status " + statusName(t.status));
  rep.conditions = {c};
  return rep;
}

}  // namespace

ConditionReport runLemmaSuite(std::string_view name, const EnumBounds& b) {
  if (name == "triva") return triva(b);
  if (name == "rename-nf") return renameNf(b);
  if (name == "l-alpha") return lAlpha(b);
  if (name == "bl-head") return blHead(b);
  if (name == "propaga-sn") return propagaSn(b);
  if (name == "eta-malpha") return etaMalpha(b);
  if (name == "theta-postpone") return thetaPostpone(b);
  if (name == "wn2lem1") return wn2lem1(b);
  if (name == "wn2lem2") return wn2lem2(b);
  if (name == "wn2lem3") return wn2lem3(b);
  if (name == "subject-reduction") return subjectReduction(b);
  if (name == "sn-R") return snR(b);
  if (name == "wn-full") return wnFull(b);
  if (name == "saturation-Tt") {
    ConditionReport r = checkSaturated(typablePredicate(), b);
    r.subject = "saturation-Tt";
    return r;
  }
  if (name == "cycle-witness") return cycleWitness(b);
  throw UnknownSuite("unknown suite: " + std::string(name));
}

}  // namespace lambdamu
