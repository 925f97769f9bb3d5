#include "lambdamu/substitution.hpp"

#include <set>

namespace lambdamu {

namespace {

std::set<std::string> avoidFor(std::initializer_list<const Term*> terms, std::initializer_list<std::string> extra) {
  NameSet names;
  for (const Term* t : terms) collectNames(*t, names);
  std::set<std::string> out = names.lam;
  out.insert(names.mu.begin(), names.mu.end());
  out.insert(extra.begin(), extra.end());
  return out;
}

struct FreeNames {
  std::set<std::string> lam;
  std::set<std::string> mu;
};

FreeNames freeNames(const Term& n) {
  FreeNames out;
  FreeVars f = fv(n);
  for (const auto& v : f.lam) out.lam.insert(v.name);
  for (const auto& v : f.mu) out.mu.insert(v.name);
  return out;
}

// λy.body with y renamed away from `avoid`.
std::pair<LamVar, Term> renameLamBinder(const Term& lam, const std::set<std::string>& avoid) {
  LamVar y2 = freshLam(lam.name(), avoid);
  return {y2, betaSubst(lam.body(), lam.lamVar(), Term::var(y2))};
}

std::pair<MuVar, Term> renameMuBinder(const Term& mu, const std::set<std::string>& avoid) {
  MuVar b2 = freshMu(mu.name(), avoid);
  return {b2, renameMu(mu.body(), mu.muVar(), b2)};
}

Term rebuildUnary(const Term& m, const Term& body) {
  if (body.samePointer(m.body())) return m;
  switch (m.kind()) {
    case Kind::Lam:
      return Term::lam(m.lamVar(), body);
    case Kind::Mu:
      return Term::mu(m.muVar(), body);
    default:
      return Term::bracket(m.muVar(), body);
  }
}

Term rebuildApp(const Term& m, const Term& f, const Term& a) {
  if (f.samePointer(m.fun()) && a.samePointer(m.arg())) return m;
  return Term::app(f, a);
}

class BetaSubst {
 public:
  BetaSubst(const LamVar& x, const Term& n) : x_(x), n_(n), fn_(freeNames(n)) {}

  Term go(const Term& m) const {
    if (!m.mayMentionLam(x_.name)) return m;
    switch (m.kind()) {
      case Kind::Var:
        return m.name() == x_.name ? n_ : m;
      case Kind::App:
        return rebuildApp(m, go(m.fun()), go(m.arg()));
      case Kind::Bracket:
        return rebuildUnary(m, go(m.body()));
      case Kind::Lam: {
        if (m.name() == x_.name) return m;
        if (fn_.lam.contains(m.name()) && occursFreeLam(m.body(), x_)) {
          auto [y2, body] = renameLamBinder(m, avoidFor({&m, &n_}, {x_.name}));
          return Term::lam(y2, go(body));
        }
        return rebuildUnary(m, go(m.body()));
      }
      case Kind::Mu: {
        if (fn_.mu.contains(m.name()) && occursFreeLam(m.body(), x_)) {
          auto [b2, body] = renameMuBinder(m, avoidFor({&m, &n_}, {}));
          return Term::mu(b2, go(body));
        }
        return rebuildUnary(m, go(m.body()));
      }
    }
    return m;
  }

 private:
  const LamVar& x_;
  const Term& n_;
  FreeNames fn_;
};

class MuSubst {
 public:
  MuSubst(const MuVar& a, Side s, const Term& n) : a_(a), side_(s), n_(n), fn_(freeNames(n)) {}

  Term go(const Term& m) const {
    if (!m.mayMentionMu(a_.name)) return m;
    switch (m.kind()) {
      case Kind::Var:
        return m;
      case Kind::App:
        return rebuildApp(m, go(m.fun()), go(m.arg()));
      case Kind::Bracket: {
        Term body = go(m.body());
        if (m.name() != a_.name) return rebuildUnary(m, body);
        return Term::bracket(a_, side_ == Side::R ? Term::app(body, n_) : Term::app(n_, body));
      }
      case Kind::Lam: {
        if (fn_.lam.contains(m.name()) && occursFreeMu(m.body(), a_)) {
          auto [y2, body] = renameLamBinder(m, avoidFor({&m, &n_}, {}));
          return Term::lam(y2, go(body));
        }
        return rebuildUnary(m, go(m.body()));
      }
      case Kind::Mu: {
        if (m.name() == a_.name) return m;
        if (fn_.mu.contains(m.name()) && occursFreeMu(m.body(), a_)) {
          auto [b2, body] = renameMuBinder(m, avoidFor({&m, &n_}, {a_.name}));
          return Term::mu(b2, go(body));
        }
        return rebuildUnary(m, go(m.body()));
      }
    }
    return m;
  }

 private:
  const MuVar& a_;
  Side side_;
  const Term& n_;
  FreeNames fn_;
};

}  // namespace

Term betaSubst(const Term& m, const LamVar& x, const Term& n) { return BetaSubst(x, n).go(m); }

Term muSubst(const Term& m, const MuVar& a, Side s, const Term& n) { return MuSubst(a, s, n).go(m); }

Term muSubstSeq(const Term& m, const MuVar& a, const TermSeq& ns) {
  Term out = m;
  for (const Term& n : ns) out = muSubst(out, a, Side::R, n);
  return out;
}

Term renameMu(const Term& m, const MuVar& a, const MuVar& b) {
  if (a == b || !m.mayMentionMu(a.name)) return m;
  switch (m.kind()) {
    case Kind::Var:
      return m;
    case Kind::App:
      return rebuildApp(m, renameMu(m.fun(), a, b), renameMu(m.arg(), a, b));
    case Kind::Lam:
      return rebuildUnary(m, renameMu(m.body(), a, b));
    case Kind::Bracket: {
      Term body = renameMu(m.body(), a, b);
      if (m.name() == a.name) return Term::bracket(b, body);
      return rebuildUnary(m, body);
    }
    case Kind::Mu: {
      if (m.name() == a.name) return m;
      if (m.name() == b.name && occursFreeMu(m.body(), a)) {
        auto [c2, body] = renameMuBinder(m, avoidFor({&m}, {a.name, b.name}));
        return Term::mu(c2, renameMu(body, a, b));
      }
      return rebuildUnary(m, renameMu(m.body(), a, b));
    }
  }
  return m;
}

Term alphaTranslate(const Term& m, const MuVar& a) {
  if (!m.mayMentionMu(a.name)) return m;
  switch (m.kind()) {
    case Kind::Var:
      return m;
    case Kind::App:
      return rebuildApp(m, alphaTranslate(m.fun(), a), alphaTranslate(m.arg(), a));
    case Kind::Lam:
      return rebuildUnary(m, alphaTranslate(m.body(), a));
    case Kind::Bracket: {
      Term body = alphaTranslate(m.body(), a);
      if (m.name() == a.name) return body;
      return rebuildUnary(m, body);
    }
    case Kind::Mu:
      if (m.name() == a.name) return m;
      return rebuildUnary(m, alphaTranslate(m.body(), a));
  }
  return m;
}

Term applySeq(const Term& m, const TermSeq& ps) {
  Term out = m;
  for (const Term& p : ps) out = Term::app(out, p);
  return out;
}

bool isInitialSubseq(const TermSeq& ps, const TermSeq& ns) {
  if (ps.size() > ns.size()) return false;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (!alphaEq(ps[i], ns[i])) return false;
  }
  return true;
}

namespace {

class Simultaneous {
 public:
  explicit Simultaneous(const SimulSubst& s) : s_(s) {
    for (const auto& [x, t] : s.lam) addRange(t);
    for (const auto& [a, ts] : s.mu) {
      for (const Term& t : ts) addRange(t);
    }
    for (const auto& [x, t] : s.lam) keys_.insert(x.name);
    for (const auto& [a, ts] : s.mu) keys_.insert(a.name);
  }

  Term go(const Term& m, const std::set<std::string>& lamOff, const std::set<std::string>& muOff) const {
    switch (m.kind()) {
      case Kind::Var: {
        if (lamOff.contains(m.name())) return m;
        auto it = s_.lam.find(m.lamVar());
        return it == s_.lam.end() ? m : it->second;
      }
      case Kind::App:
        return rebuildApp(m, go(m.fun(), lamOff, muOff), go(m.arg(), lamOff, muOff));
      case Kind::Bracket: {
        Term body = go(m.body(), lamOff, muOff);
        if (!muOff.contains(m.name())) {
          auto it = s_.mu.find(m.muVar());
          if (it != s_.mu.end()) return Term::bracket(m.muVar(), applySeq(body, it->second));
        }
        return rebuildUnary(m, body);
      }
      case Kind::Lam: {
        Term lam = m;
        if (rangeLam_.contains(m.name())) {
          auto [y2, body] = renameLamBinder(m, avoid(m));
          lam = Term::lam(y2, body);
        }
        std::set<std::string> off = lamOff;
        off.insert(lam.name());
        return Term::lam(lam.lamVar(), go(lam.body(), off, muOff));
      }
      case Kind::Mu: {
        Term mu = m;
        if (rangeMu_.contains(m.name())) {
          auto [b2, body] = renameMuBinder(m, avoid(m));
          mu = Term::mu(b2, body);
        }
        std::set<std::string> off = muOff;
        off.insert(mu.name());
        return Term::mu(mu.muVar(), go(mu.body(), lamOff, off));
      }
    }
    return m;
  }

 private:
  void addRange(const Term& t) {
    FreeNames f = freeNames(t);
    rangeLam_.insert(f.lam.begin(), f.lam.end());
    rangeMu_.insert(f.mu.begin(), f.mu.end());
    NameSet all;
    collectNames(t, all);
    rangeAll_.insert(all.lam.begin(), all.lam.end());
    rangeAll_.insert(all.mu.begin(), all.mu.end());
  }

  std::set<std::string> avoid(const Term& m) const {
    std::set<std::string> out = avoidFor({&m}, {});
    out.insert(rangeAll_.begin(), rangeAll_.end());
    out.insert(keys_.begin(), keys_.end());
    return out;
  }

  const SimulSubst& s_;
  std::set<std::string> rangeLam_;
  std::set<std::string> rangeMu_;
  std::set<std::string> rangeAll_;
  std::set<std::string> keys_;
};

}  // namespace

Term simulSubst(const Term& m, const SimulSubst& s) { return Simultaneous(s).go(m, {}, {}); }

}  // namespace lambdamu
