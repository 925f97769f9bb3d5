#include "lambdamu/reduction.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "lambdamu/substitution.hpp"

namespace lambdamu {

const char* ruleName(Rule r) {
  switch (r) {
    case Rule::Beta:
      return "beta";
    case Rule::Mu:
      return "mu";
    case Rule::MuPrime:
      return "mu'";
    case Rule::Rho:
      return "rho";
    case Rule::Theta:
      return "theta";
    case Rule::Epsilon:
      return "epsilon";
  }
  return "?";
}

std::optional<Rule> ruleFromName(std::string_view s) {
  for (Rule r : {Rule::Beta, Rule::Mu, Rule::MuPrime, Rule::Rho, Rule::Theta, Rule::Epsilon}) {
    if (s == ruleName(r)) return r;
  }
  return std::nullopt;
}

RuleSet RuleSet::parse(std::string_view letters) {
  RuleSet s;
  for (char c : letters) {
    switch (c) {
      case 'b':
        s = s.with(Rule::Beta);
        break;
      case 'm':
        s = s.with(Rule::Mu);
        break;
      case 'M':
        s = s.with(Rule::MuPrime);
        break;
      case 'r':
        s = s.with(Rule::Rho);
        break;
      case 't':
        s = s.with(Rule::Theta);
        break;
      case 'e':
        s = s.with(Rule::Epsilon);
        break;
      default:
        throw std::invalid_argument(std::string("unknown rule letter '") + c + "' (expected letters from bmMrte)");
    }
  }
  if (s.empty()) throw std::invalid_argument("empty rule set");
  return s;
}

std::string RuleSet::letters() const {
  std::string out;
  const char* all = "bmMrte";
  for (int i = 0; i < 6; ++i) {
    if (contains(static_cast<Rule>(i))) out += all[i];
  }
  return out;
}

const char* statusName(Status s) {
  switch (s) {
    case Status::Normal:
      return "normal";
    case Status::CycleFound:
      return "cycle";
    case Status::FuelExceeded:
      return "fuel-exceeded";
    case Status::Stopped:
      return "stopped";
  }
  return "?";
}

std::optional<Strategy> strategyFromName(std::string_view s) {
  if (s == "lo" || s == "leftmost-outermost") return Strategy::LeftmostOutermost;
  if (s == "li" || s == "leftmost-innermost") return Strategy::LeftmostInnermost;
  if (s == "search" || s == "full-search") return Strategy::FullSearch;
  if (s == "interactive") return Strategy::Interactive;
  if (s == "cycle-demo") return Strategy::CycleDemo;
  return std::nullopt;
}

const char* strategyName(Strategy s) {
  switch (s) {
    case Strategy::LeftmostOutermost:
      return "leftmost-outermost";
    case Strategy::LeftmostInnermost:
      return "leftmost-innermost";
    case Strategy::FullSearch:
      return "full-search";
    case Strategy::Interactive:
      return "interactive";
    case Strategy::CycleDemo:
      return "cycle-demo";
  }
  return "?";
}

bool isRedex(const Term& m, Rule r) {
  switch (r) {
    case Rule::Beta:
      return m.is(Kind::App) && m.fun().is(Kind::Lam);
    case Rule::Mu:
      return m.is(Kind::App) && m.fun().is(Kind::Mu);
    case Rule::MuPrime:
      return m.is(Kind::App) && m.arg().is(Kind::Mu);
    case Rule::Rho:
      return m.is(Kind::Bracket) && m.body().is(Kind::Mu);
    case Rule::Theta:
      return m.is(Kind::Mu) && m.body().is(Kind::Bracket) && m.body().name() == m.name() &&
             !occursFreeMu(m.body().body(), m.muVar());
    case Rule::Epsilon:
      return m.is(Kind::Mu) && m.body().is(Kind::Mu);
  }
  return false;
}

namespace {

constexpr Rule kAllRules[] = {Rule::Beta, Rule::Mu, Rule::MuPrime, Rule::Rho, Rule::Theta, Rule::Epsilon};

void redexesHere(const Term& m, RuleSet rs, const TermPath& path, std::vector<Redex>& out) {
  for (Rule r : kAllRules) {
    if (rs.contains(r) && isRedex(m, r)) out.push_back({path, r});
  }
}

void collect(const Term& m, RuleSet rs, TermPath& path, std::vector<Redex>& out, bool post) {
  if (!post) redexesHere(m, rs, path, out);
  switch (m.kind()) {
    case Kind::Var:
      break;
    case Kind::App:
      path.push_back(0);
      collect(m.fun(), rs, path, out, post);
      path.back() = 1;
      collect(m.arg(), rs, path, out, post);
      path.pop_back();
      break;
    default:
      path.push_back(0);
      collect(m.body(), rs, path, out, post);
      path.pop_back();
      break;
  }
  if (post) redexesHere(m, rs, path, out);
}

bool anyRedex(const Term& m, RuleSet rs) {
  for (Rule r : kAllRules) {
    if (rs.contains(r) && isRedex(m, r)) return true;
  }
  switch (m.kind()) {
    case Kind::Var:
      return false;
    case Kind::App:
      return anyRedex(m.fun(), rs) || anyRedex(m.arg(), rs);
    default:
      return anyRedex(m.body(), rs);
  }
}

std::vector<Redex> postOrderRedexes(const Term& m, RuleSet rs) {
  std::vector<Redex> out;
  TermPath path;
  collect(m, rs, path, out, true);
  return out;
}

// First redex of the list, honoring the μ/μ′ tie-break at its node.
const Redex& pick(const std::vector<Redex>& rs, bool preferMu) {
  if (preferMu) return rs.front();
  for (const Redex& r : rs) {
    if (r.path != rs.front().path) break;
    if (r.rule == Rule::MuPrime) return r;
  }
  return rs.front();
}

std::set<std::string> namesOf(const Term& a, const Term& b) {
  NameSet ns;
  collectNames(a, ns);
  collectNames(b, ns);
  std::set<std::string> out = ns.lam;
  out.insert(ns.mu.begin(), ns.mu.end());
  return out;
}

// μa.M′ applied to (or by) n: a is renamed first when it would capture a
// free μ-variable of n.
Term muLike(const Term& mu, Side s, const Term& n) {
  MuVar a = mu.muVar();
  Term body = mu.body();
  if (occursFreeMu(n, a)) {
    MuVar a2 = freshMu(a.name, namesOf(mu, n));
    body = renameMu(body, a, a2);
    a = a2;
  }
  return Term::mu(a, muSubst(body, a, s, n));
}

}  // namespace

std::vector<Redex> findRedexes(const Term& m, RuleSet rs) {
  std::vector<Redex> out;
  TermPath path;
  collect(m, rs, path, out, false);
  return out;
}

Term contract(const Term& m, Rule r) {
  if (!isRedex(m, r)) throw NotARedex(std::string("not a ") + ruleName(r) + "-redex: " + print(m));
  switch (r) {
    case Rule::Beta:
      return betaSubst(m.fun().body(), m.fun().lamVar(), m.arg());
    case Rule::Mu:
      return muLike(m.fun(), Side::R, m.arg());
    case Rule::MuPrime:
      return muLike(m.arg(), Side::L, m.fun());
    case Rule::Rho:
      return renameMu(m.body().body(), m.body().muVar(), m.muVar());
    case Rule::Theta:
      return m.body().body();
    case Rule::Epsilon:
      return Term::mu(m.muVar(), alphaTranslate(m.body().body(), m.body().muVar()));
  }
  return m;
}

Term stepAt(const Term& m, const TermPath& p, Rule r) {
  Term sub = subtermAt(m, p);
  if (!isRedex(sub, r)) {
    throw NotARedex(std::string("no ") + ruleName(r) + "-redex at path " + pathString(p));
  }
  return replaceAt(m, p, contract(sub, r));
}

bool isNormalForm(const Term& m, RuleSet rs) { return !anyRedex(m, rs); }

std::vector<Step> successors(const Term& m, RuleSet rs) {
  std::vector<Step> out;
  for (const Redex& r : findRedexes(m, rs)) out.push_back({r.rule, r.path, m, stepAt(m, r.path, r.rule)});
  return out;
}

namespace {

// Generic breadth-first search; `hit` decides the goal.
template <class Pred>
SearchResult bfs(const Term& start, RuleSet rs, std::size_t fuel, Pred hit) {
  struct Node {
    Term term;
    std::size_t parent;
    Rule rule;
    TermPath path;
  };
  SearchResult res;
  std::vector<Node> nodes{{start, 0, Rule::Beta, {}}};
  std::unordered_set<std::string> seen{canonicalKey(start)};
  auto build = [&](std::size_t i) {
    std::vector<std::size_t> chain;
    for (std::size_t k = i; k != 0; k = nodes[k].parent) chain.push_back(k);
    Trace t{start, {}, Status::Normal};
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const Node& n = nodes[*it];
      t.steps.push_back({n.rule, n.path, nodes[n.parent].term, n.term});
    }
    return t;
  };
  if (hit(start)) {
    res.found = build(0);
    res.explored = 1;
    return res;
  }
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    for (const Redex& r : findRedexes(nodes[head].term, rs)) {
      Term next = stepAt(nodes[head].term, r.path, r.rule);
      if (!seen.insert(canonicalKey(next)).second) continue;
      nodes.push_back({next, head, r.rule, r.path});
      if (hit(next)) {
        res.found = build(nodes.size() - 1);
        res.explored = nodes.size();
        return res;
      }
      if (nodes.size() >= fuel) {
        res.explored = nodes.size();
        return res;
      }
    }
  }
  res.exhausted = true;
  res.explored = nodes.size();
  return res;
}

Trace deterministic(const Term& m, RuleSet rs, const ReduceOptions& opt) {
  Trace t{m, {}, Status::Normal};
  std::unordered_set<std::string> seen{canonicalKey(m)};
  Term cur = m;
  for (std::size_t k = 0;; ++k) {
    if (isNormalForm(cur, rs)) {
      t.status = Status::Normal;
      return t;
    }
    if (k >= opt.fuel) {
      t.status = Status::FuelExceeded;
      return t;
    }
    std::optional<Redex> choice;
    if (opt.strategy == Strategy::CycleDemo) {
      Rule want = opt.schedule[k % opt.schedule.size()];
      for (const Redex& r : postOrderRedexes(cur, RuleSet::of({want}))) {
        choice = r;
        break;
      }
      if (!choice) {
        t.status = Status::Stopped;
        return t;
      }
    } else if (opt.strategy == Strategy::LeftmostInnermost) {
      choice = pick(postOrderRedexes(cur, rs), opt.preferMu);
    } else {
      choice = pick(findRedexes(cur, rs), opt.preferMu);
    }
    Term next = stepAt(cur, choice->path, choice->rule);
    t.steps.push_back({choice->rule, choice->path, cur, next});
    cur = next;
    if (!seen.insert(canonicalKey(cur)).second) {
      t.status = Status::CycleFound;
      return t;
    }
  }
}

}  // namespace

Trace reduce(const Term& m, RuleSet rs, const ReduceOptions& opt) {
  if (rs.empty()) throw std::invalid_argument("empty rule set");
  switch (opt.strategy) {
    case Strategy::LeftmostOutermost:
    case Strategy::LeftmostInnermost:
      return deterministic(m, rs, opt);
    case Strategy::CycleDemo:
      if (opt.schedule.empty()) throw std::invalid_argument("empty cycle schedule");
      for (Rule r : opt.schedule) {
        if (!rs.contains(r)) throw std::invalid_argument(std::string("scheduled rule not active: ") + ruleName(r));
      }
      return deterministic(m, rs, opt);
    case Strategy::Interactive: {
      Trace t{m, {}, Status::Normal};
      Term cur = m;
      for (const Redex& r : opt.script) {
        if (!rs.contains(r.rule)) throw NotARedex(std::string("rule not active: ") + ruleName(r.rule));
        Term next = stepAt(cur, r.path, r.rule);
        t.steps.push_back({r.rule, r.path, cur, next});
        cur = next;
      }
      t.status = isNormalForm(cur, rs) ? Status::Normal : Status::Stopped;
      return t;
    }
    case Strategy::FullSearch: {
      SearchResult s = searchNormalForm(m, rs, opt.fuel);
      if (s.found) return *s.found;
      return Trace{m, {}, s.exhausted ? Status::CycleFound : Status::FuelExceeded};
    }
  }
  return Trace{m, {}, Status::Stopped};
}

EtaResult eta(const Term& m, RuleSet rs, std::size_t fuel) {
  struct Info {
    bool done;
    std::size_t value;
  };
  struct Frame {
    std::size_t node;
    std::vector<Step> succ;
    std::size_t next;
    std::size_t best;
  };
  EtaResult res;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<Info> info;
  std::vector<Frame> stack;

  index.emplace(canonicalKey(m), 0);
  info.push_back({false, 0});
  stack.push_back({0, successors(m, rs), 0, 0});

  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next == top.succ.size()) {
      std::size_t v = top.best;
      info[top.node] = {true, v};
      stack.pop_back();
      if (stack.empty()) {
        res.value = v;
        break;
      }
      stack.back().best = std::max(stack.back().best, v + 1);
      continue;
    }
    const Term child = top.succ[top.next].after;
    ++top.next;
    std::string key = canonicalKey(child);
    auto it = index.find(key);
    if (it == index.end()) {
      if (info.size() >= fuel) {
        res.verdict = SNVerdict::FuelExceeded;
        res.explored = info.size();
        return res;
      }
      std::size_t id = info.size();
      index.emplace(std::move(key), id);
      info.push_back({false, 0});
      stack.push_back({id, successors(child, rs), 0, 0});
      continue;
    }
    const Info& ci = info[it->second];
    if (ci.done) {
      top.best = std::max(top.best, ci.value + 1);
      continue;
    }
    // On the current path: a cycle.
    std::size_t j = 0;
    while (stack[j].node != it->second) ++j;
    Trace cyc{stack[j].succ[stack[j].next - 1].before, {}, Status::CycleFound};
    for (std::size_t k = j; k < stack.size(); ++k) cyc.steps.push_back(stack[k].succ[stack[k].next - 1]);
    res.verdict = SNVerdict::NotSN;
    res.cycle = std::move(cyc);
    res.explored = info.size();
    return res;
  }
  res.explored = info.size();
  return res;
}

SearchResult searchNormalForm(const Term& m, RuleSet rs, std::size_t fuel) {
  return bfs(m, rs, fuel, [rs](const Term& t) { return isNormalForm(t, rs); });
}

SearchResult searchReachable(const Term& from, const Term& to, RuleSet rs, std::size_t fuel) {
  std::string target = canonicalKey(to);
  return bfs(from, rs, fuel, [&target](const Term& t) { return canonicalKey(t) == target; });
}

std::vector<Term> reachableNormalForms(const Term& m, RuleSet rs, std::size_t fuel, bool* exhausted) {
  std::vector<Term> nfs;
  std::unordered_set<std::string> keys;
  SearchResult s = bfs(m, rs, fuel, [&](const Term& t) {
    if (isNormalForm(t, rs) && keys.insert(canonicalKey(t)).second) nfs.push_back(t);
    return false;
  });
  if (exhausted) *exhausted = s.exhausted;
  return nfs;
}

Trace thetaNormalizeTrace(const Term& m) {
  Trace t{m, {}, Status::Normal};
  Term cur = m;
  for (;;) {
    auto rs = postOrderRedexes(cur, RuleSet::of({Rule::Theta}));
    if (rs.empty()) return t;
    Term next = stepAt(cur, rs.front().path, Rule::Theta);
    t.steps.push_back({Rule::Theta, rs.front().path, cur, next});
    cur = next;
  }
}

Term thetaNormalize(const Term& m) { return thetaNormalizeTrace(m).last(); }

Trace normalizeWN(const Term& m, std::size_t fuel) {
  ReduceOptions opt;
  opt.fuel = fuel;
  Trace t = reduce(m, RuleSet::RPrime(), opt);
  if (t.status != Status::Normal) {
    SearchResult s = searchNormalForm(m, RuleSet::RPrime(), std::max<std::size_t>(fuel, kDefaultNodeFuel));
    if (!s.found) {
      Trace fail{m, {}, s.exhausted ? Status::CycleFound : Status::FuelExceeded};
      return fail;
    }
    t = std::move(*s.found);
  }
  Trace th = thetaNormalizeTrace(t.last());
  for (auto& s : th.steps) t.steps.push_back(std::move(s));
  if (!isNormalForm(t.last(), RuleSet::Full())) {
    throw StrategyFailed("theta phase left a redex in " + print(t.last()));
  }
  t.status = Status::Normal;
  return t;
}

bool isAlphaClean(const Term& m, const MuVar& a) {
  if (!m.mayMentionMu(a.name)) return true;
  switch (m.kind()) {
    case Kind::Var:
      return true;
    case Kind::App:
      return isAlphaClean(m.fun(), a) && isAlphaClean(m.arg(), a);
    case Kind::Lam:
      return isAlphaClean(m.body(), a);
    case Kind::Mu:
      return m.name() == a.name || isAlphaClean(m.body(), a);
    case Kind::Bracket:
      if (m.name() == a.name && m.body().is(Kind::Lam)) return false;
      return isAlphaClean(m.body(), a);
  }
  return true;
}

Trace muRhoNormalize(const Term& m, std::size_t fuel) {
  Trace t{m, {}, Status::Normal};
  Term cur = m;
  const RuleSet mr = RuleSet::of({Rule::Mu, Rule::Rho});
  for (std::size_t k = 0;; ++k) {
    auto rs = postOrderRedexes(cur, mr);
    if (rs.empty()) return t;
    if (k >= fuel) {
      t.status = Status::FuelExceeded;
      return t;
    }
    Term next = stepAt(cur, rs.front().path, rs.front().rule);
    t.steps.push_back({rs.front().rule, rs.front().path, cur, next});
    cur = next;
  }
}

namespace {

const RuleSet kBetaMuRhoEps = RuleSet::of({Rule::Beta, Rule::Mu, Rule::Rho, Rule::Epsilon});
const RuleSet kBetaMuPRhoEps = RuleSet::of({Rule::Beta, Rule::MuPrime, Rule::Rho, Rule::Epsilon});

std::string where(const char* what, const Term& t) { return std::string(what) + ": " + print(t); }

// Residual redexes of rule r in t must sit directly under a bracket on a,
// with `n` on the given side of the application.
std::string residualShape(const Term& t, Rule r, const MuVar& a, const Term& n, bool nIsArg) {
  for (const Redex& red : findRedexes(t, RuleSet::of({r}))) {
    if (red.path.empty()) return where("residual redex at the root", t);
    TermPath parent(red.path.begin(), red.path.end() - 1);
    Term up = subtermAt(t, parent);
    Term app = subtermAt(t, red.path);
    const Term& side = nIsArg ? app.arg() : app.fun();
    if (!up.is(Kind::Bracket) || up.name() != a.name || !alphaEq(side, n)) {
      return std::string("residual ") + ruleName(r) + "-redex of the wrong shape at " + pathString(red.path) + " in " +
             print(t);
    }
  }
  return {};
}

}  // namespace

std::string checkRightSubstResidue(const Term& m, const MuVar& a, const Term& n) {
  Term r = muSubst(m, a, Side::R, n);
  if (!isNormalForm(r, kBetaMuRhoEps)) return where("not beta/mu/rho/epsilon-normal", r);
  if (!isAlphaClean(r, a)) return where("not clean", r);
  if (std::string s = residualShape(r, Rule::MuPrime, a, n, true); !s.empty()) return s;
  if (!n.is(Kind::Mu) && !isNormalForm(r, RuleSet::RPrime())) return where("not R'-normal", r);
  return {};
}

std::string checkLeftSubstResidue(const Term& m, const MuVar& a, const Term& n) {
  Term r = muSubst(m, a, Side::L, n);
  if (!isNormalForm(r, kBetaMuPRhoEps)) return where("not beta/mu'/rho/epsilon-normal", r);
  if (std::string s = residualShape(r, Rule::Mu, a, n, false); !s.empty()) return s;
  if (!n.is(Kind::Mu) && !isNormalForm(r, RuleSet::RPrime())) return where("not R'-normal", r);
  return {};
}

std::string checkLeftSubstCleanup(const Term& m, const MuVar& g, const Term& n) {
  Trace t = muRhoNormalize(muSubst(n, g, Side::L, m));
  if (t.status != Status::Normal) return where("mu/rho phase did not terminate", t.initial);
  const Term& p = t.last();
  if (!isNormalForm(p, RuleSet::RPrime())) return where("mu/rho result not R'-normal", p);
  if (!isAlphaClean(p, g)) return where("mu/rho result not clean", p);
  if (!n.is(Kind::Mu) && p.is(Kind::Mu)) return where("mu/rho result starts with mu", p);
  return {};
}

std::string checkSpineStep(const Term& p, const Term& q) {
  Term pq = Term::app(p, q);
  if (!q.is(Kind::Mu)) {
    Term r = contract(pq, Rule::Mu);
    if (!isNormalForm(r, RuleSet::RPrime())) return where("mu step result not R'-normal", r);
    if (!isAlphaClean(r.body(), r.muVar())) return where("mu step result not clean", r);
    return {};
  }
  Trace t = muRhoNormalize(contract(pq, Rule::MuPrime));
  const Term& r = t.last();
  if (t.status != Status::Normal) return where("mu/rho phase did not terminate", pq);
  if (!r.is(Kind::Mu)) return where("result does not start with mu", r);
  if (!isNormalForm(r, RuleSet::RPrime())) return where("result not R'-normal", r);
  if (!isAlphaClean(r.body(), r.muVar())) return where("result not clean", r);
  return {};
}

std::string checkThetaStep(const Term& m) {
  auto heads = [](const Term& n, const Term& src) -> std::string {
    if (n.is(Kind::Lam) && !(src.is(Kind::Lam) || src.is(Kind::Mu))) return where("lambda head from nowhere", n);
    if (n.is(Kind::Mu) && !src.is(Kind::Mu)) return where("mu head from nowhere", n);
    return {};
  };
  for (const Redex& r : findRedexes(m, RuleSet::of({Rule::Theta}))) {
    Term n = stepAt(m, r.path, Rule::Theta);
    if (!isNormalForm(n, RuleSet::RPrime())) return where("theta step left an R'-redex", n);
    if (std::string s = heads(n, m); !s.empty()) return s;
  }
  Term all = thetaNormalize(m);
  if (!isNormalForm(all, RuleSet::RPrime())) return where("theta normal form has an R'-redex", all);
  return heads(all, m);
}

namespace {

TermPath spinePath(std::size_t depth) { return TermPath(depth, 0); }

void append(Trace& t, Trace&& more, const TermPath& prefix) {
  for (Step& s : more.steps) {
    TermPath full = prefix;
    full.insert(full.end(), s.path.begin(), s.path.end());
    Term before = t.last();
    t.steps.push_back({s.rule, full, before, replaceAt(before, prefix, s.after)});
  }
}

void require(const std::string& violation, const char* stage) {
  if (!violation.empty()) throw StrategyFailed(std::string(stage) + ": " + violation);
}

}  // namespace

Trace headSpineTrace(const LamVar& x, const TermSeq& ns) {
  for (const Term& n : ns) {
    if (!isNormalForm(n, RuleSet::RPrime())) throw StrategyFailed("argument not R'-normal: " + print(n));
  }
  Term whole = applySeq(Term::var(x), ns);
  Trace t{whole, {}, Status::Normal};
  const std::size_t n = ns.size();
  std::size_t i = 0;
  while (i < n && !ns[i].is(Kind::Mu)) ++i;
  if (i == n) {
    if (!isNormalForm(whole, RuleSet::RPrime())) throw StrategyFailed("mu-free spine is not normal");
    return t;
  }
  // Argument i (0-based) hangs off the App at depth n-1-i.
  auto stepHere = [&](std::size_t arg, Rule r) {
    TermPath p = spinePath(n - 1 - arg);
    Term before = t.last();
    Term after = stepAt(before, p, r);
    t.steps.push_back({r, p, before, after});
    return subtermAt(after, p);
  };

  Term head = subtermAt(whole, spinePath(n - 1 - i)).fun();
  require(checkLeftSubstResidue(ns[i].body(), ns[i].muVar(), head), "first mu' step");
  Term cur = stepHere(i, Rule::MuPrime);
  if (!isNormalForm(cur, RuleSet::RPrime())) throw StrategyFailed("first mu' step not normal: " + print(cur));

  for (std::size_t j = i + 1; j < n; ++j) {
    if (!isAlphaClean(cur.body(), cur.muVar())) throw StrategyFailed("lost cleanness: " + print(cur));
    if (!ns[j].is(Kind::Mu)) {
      require(checkSpineStep(cur, ns[j]), "mu step");
      cur = stepHere(j, Rule::Mu);
      continue;
    }
    require(checkSpineStep(cur, ns[j]), "mu' step");
    TermPath p = spinePath(n - 1 - j);
    Term after = stepHere(j, Rule::MuPrime);
    Trace clean = muRhoNormalize(after);
    if (clean.status != Status::Normal) throw StrategyFailed("mu/rho cleanup ran out of fuel");
    append(t, std::move(clean), p);
    cur = subtermAt(t.last(), p);
  }
  if (!isNormalForm(t.last(), RuleSet::RPrime())) throw StrategyFailed("result not R'-normal: " + print(t.last()));
  return t;
}

Term headSpineNormalize(const LamVar& x, const TermSeq& ns) { return headSpineTrace(x, ns).last(); }

std::string traceToText(const Trace& t) {
  std::string out = "0 - - " + print(t.initial) + "\n";
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const Step& s = t.steps[i];
    out += std::to_string(i + 1) + " " + ruleName(s.rule) + " " + pathString(s.path) + " " + print(s.after) + "\n";
  }
  out += std::string("status ") + statusName(t.status) + "\n";
  return out;
}

std::string traceToJson(const Trace& t, int indent) {
  nlohmann::json j;
  j["initial"] = print(t.initial);
  j["status"] = statusName(t.status);
  j["steps"] = nlohmann::json::array();
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const Step& s = t.steps[i];
    std::vector<int> path(s.path.begin(), s.path.end());
    j["steps"].push_back({{"index", i + 1},
                          {"rule", ruleName(s.rule)},
                          {"path", path},
                          {"before", print(s.before)},
                          {"after", print(s.after)}});
  }
  return j.dump(indent);
}

}  // namespace lambdamu
