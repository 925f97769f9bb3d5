#include "lambdamu/harness.hpp"

#include <map>
#include <tuple>
#include <unordered_map>

#include <json.hpp>

#include "lambdamu/substitution.hpp"
#include "lambdamu/typing.hpp"

namespace lambdamu {

std::vector<std::string> lamPoolNames(std::size_t n) {
  static const char* base[] = {"x", "y", "z", "w", "u", "v"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(i < 6 ? base[i] : "x" + std::to_string(i));
  return out;
}

std::vector<std::string> muPoolNames(std::size_t n) {
  static const char* base[] = {"a", "b", "c", "d", "e"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(i < 5 ? base[i] : "a" + std::to_string(i));
  return out;
}

namespace {

// Lists up to this size are materialized and shared; larger sizes stream.
constexpr std::size_t kCacheMax = 6;

class Enumerator {
 public:
  using Cb = std::function<bool(const Term&)>;

  explicit Enumerator(const EnumBounds& b)
      : b_(b), lamPool_(lamPoolNames(b.lamVarPool)), muPool_(muPoolNames(b.muVarPool)) {
    for (std::size_t i = 1; i <= b.maxCxty + 1; ++i) {
      lamBound_.push_back(LamVar{"x" + std::to_string(i)});
      muBound_.push_back(MuVar{"a" + std::to_string(i)});
    }
  }

  bool each(std::size_t n, std::size_t d, std::size_t e, const Cb& f) {
    if (n > kCacheMax) return generate(n, d, e, f);
    for (const Term& t : cached(n, d, e)) {
      if (!f(t)) return false;
    }
    return true;
  }

 private:
  const std::vector<Term>& cached(std::size_t n, std::size_t d, std::size_t e) {
    auto key = std::make_tuple(n, d, e);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<Term> v;
    generate(n, d, e, [&v](const Term& t) {
      v.push_back(t);
      return true;
    });
    return cache_.emplace(key, std::move(v)).first->second;
  }

  bool generate(std::size_t n, std::size_t d, std::size_t e, const Cb& f) {
    auto emit = [&](const Term& t) { return (b_.typableOnly && !isTypable(t)) || f(t); };
    if (n == 1) {
      for (std::size_t i = 0; i < d; ++i) {
        if (!emit(Term::var(lamBound_[i]))) return false;
      }
      for (const auto& x : lamPool_) {
        if (!emit(Term::var(LamVar{x}))) return false;
      }
      return true;
    }
    const LamVar& x = lamBound_[d];
    if (!each(n - 1, d + 1, e, [&](const Term& body) { return emit(Term::lam(x, body)); })) return false;
    const MuVar& a = muBound_[e];
    if (!each(n - 1, d, e + 1, [&](const Term& body) { return emit(Term::mu(a, body)); })) return false;
    std::vector<MuVar> names(muBound_.begin(), muBound_.begin() + static_cast<std::ptrdiff_t>(e));
    for (const auto& p : muPool_) names.push_back(MuVar{p});
    for (const MuVar& c : names) {
      if (!each(n - 1, d, e, [&](const Term& body) { return emit(Term::bracket(c, body)); })) return false;
    }
    for (std::size_t k = 1; k + 2 <= n; ++k) {
      bool go = each(k, d, e, [&](const Term& l) {
        return each(n - 1 - k, d, e, [&](const Term& r) { return emit(Term::app(l, r)); });
      });
      if (!go) return false;
    }
    return true;
  }

  const EnumBounds& b_;
  std::vector<std::string> lamPool_;
  std::vector<std::string> muPool_;
  std::vector<LamVar> lamBound_;
  std::vector<MuVar> muBound_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<Term>> cache_;
};

}  // namespace

void forEachTerm(const EnumBounds& b, const std::function<bool(const Term&)>& f) {
  Enumerator en(b);
  for (std::size_t n = 1; n <= b.maxCxty; ++n) {
    if (!en.each(n, 0, 0, f)) return;
  }
}

std::vector<Term> enumerateTerms(const EnumBounds& b) {
  std::vector<Term> out;
  forEachTerm(b, [&out](const Term& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

std::size_t countTerms(const EnumBounds& b) {
  std::size_t n = 0;
  forEachTerm(b, [&n](const Term&) {
    ++n;
    return true;
  });
  return n;
}

struct SetPredicate::Impl {
  std::string name;
  Fn fn;
  bool memoize;
  std::unordered_map<std::string, Membership> memo;
};

SetPredicate::SetPredicate(std::string name, Fn fn, bool memoize)
    : impl_(std::make_shared<Impl>(Impl{std::move(name), std::move(fn), memoize, {}})) {}

Membership SetPredicate::operator()(const Term& m) const {
  if (!impl_->memoize) return impl_->fn(m);
  std::string key = canonicalKey(m);
  auto it = impl_->memo.find(key);
  if (it != impl_->memo.end()) return it->second;
  Membership r = impl_->fn(m);
  impl_->memo.emplace(std::move(key), r);
  return r;
}

const std::string& SetPredicate::name() const { return impl_->name; }

SetPredicate typablePredicate() {
  return SetPredicate("Tt", [](const Term& m) { return isTypable(m) ? Membership::Yes : Membership::No; }, false);
}

SetPredicate snPredicate(RuleSet rs, std::size_t fuel) {
  return SetPredicate("SN(" + rs.letters() + ")&Tt", [rs, fuel](const Term& m) {
    if (!isTypable(m)) return Membership::No;
    switch (eta(m, rs, fuel).verdict) {
      case SNVerdict::SN:
        return Membership::Yes;
      case SNVerdict::NotSN:
        return Membership::No;
      case SNVerdict::FuelExceeded:
        return Membership::Unknown;
    }
    return Membership::Unknown;
  });
}

SetPredicate wnPredicate(RuleSet rs, std::size_t fuel) {
  return SetPredicate("WN(" + rs.letters() + ")&Tt", [rs, fuel](const Term& m) {
    if (!isTypable(m)) return Membership::No;
    ReduceOptions opt;
    opt.fuel = fuel;
    if (reduce(m, rs, opt).status == Status::Normal) return Membership::Yes;
    SearchResult s = searchNormalForm(m, rs, fuel);
    if (s.found) return Membership::Yes;
    return s.exhausted ? Membership::No : Membership::Unknown;
  });
}

SetPredicate intersect(const SetPredicate& a, const SetPredicate& b) {
  return SetPredicate(
      a.name() + "&" + b.name(),
      [a, b](const Term& m) {
        Membership x = a(m);
        if (x == Membership::No) return x;
        Membership y = b(m);
        if (y == Membership::No) return y;
        return (x == Membership::Yes && y == Membership::Yes) ? Membership::Yes : Membership::Unknown;
      },
      false);
}

SetPredicate without(const SetPredicate& s, const Term& t) {
  std::string key = canonicalKey(t);
  return SetPredicate(
      s.name() + "-{" + print(t) + "}",
      [s, key](const Term& m) { return canonicalKey(m) == key ? Membership::No : s(m); }, false);
}

SetPredicate arrowSet(const SetPredicate& k, const SetPredicate& l, const SetPredicate& bb, const EnumBounds& b) {
  EnumBounds eb = b;
  eb.maxCxty = b.elemCxty();
  eb.typableOnly = true;
  auto args = std::make_shared<std::vector<Term>>(enumerateTerms(eb));
  return SetPredicate("(" + k.name() + "~>" + l.name() + ")", [k, l, bb, args](const Term& m) {
    Membership inBB = bb(m);
    if (inBB != Membership::Yes) return inBB;
    bool unsure = false;
    for (const Term& n : *args) {
      Membership kn = k(n);
      if (kn == Membership::No) continue;
      Term app = Term::app(m, n);
      if (!isTypable(app)) continue;
      Membership ln = l(app);
      if (ln == Membership::No && kn == Membership::Yes) return Membership::No;
      if (ln != Membership::Yes) unsure = true;
    }
    return unsure ? Membership::Unknown : Membership::Yes;
  });
}

void ConditionResult::fail(const Term& t, std::string detail) {
  ++failures;
  if (examples.size() < 5) examples.push_back({t, std::move(detail)});
}

bool ConditionReport::passed() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) { return c.passed(); });
}

std::size_t ConditionReport::totalInstances() const {
  std::size_t n = 0;
  for (const auto& c : conditions) n += c.instances;
  return n;
}

const ConditionResult* ConditionReport::find(std::string_view name) const {
  for (const auto& c : conditions) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string ConditionReport::toText() const {
  std::string out = subject + " (cxty<=" + std::to_string(bounds.maxCxty) + ", pools " +
                    std::to_string(bounds.lamVarPool) + "/" + std::to_string(bounds.muVarPool) + ")\n";
  for (const auto& c : conditions) {
    out += "  " + c.name + ": " + c.verdict() + ", " + std::to_string(c.instances) + " instances";
    if (c.unknown) out += ", " + std::to_string(c.unknown) + " unknown";
    if (c.failures) out += ", " + std::to_string(c.failures) + " failures";
    out += "\n";
    for (const auto& ex : c.examples) out += "    " + print(ex.term) + "  -- " + ex.detail + "\n";
  }
  out += passed() ? "verdict: pass-at-bound\n" : "verdict: fail\n";
  return out;
}

std::string ConditionReport::toJson(int indent) const {
  nlohmann::json j;
  j["subject"] = subject;
  j["bounds"] = {{"maxCxty", bounds.maxCxty},
                 {"lamVarPool", bounds.lamVarPool},
                 {"muVarPool", bounds.muVarPool},
                 {"fuel", bounds.fuel}};
  j["verdict"] = passed() ? "pass-at-bound" : "fail";
  j["conditions"] = nlohmann::json::array();
  for (const auto& c : conditions) {
    nlohmann::json cj{{"name", c.name},
                      {"instances", c.instances},
                      {"unknown", c.unknown},
                      {"failures", c.failures},
                      {"verdict", c.verdict()}};
    cj["counterexamples"] = nlohmann::json::array();
    for (const auto& ex : c.examples) cj["counterexamples"].push_back({{"term", print(ex.term)}, {"detail", ex.detail}});
    j["conditions"].push_back(cj);
  }
  return j.dump(indent);
}

namespace {

struct Spine {
  Term head;
  TermSeq args;
};

Spine spineOf(const Term& t) {
  Term h = t;
  TermSeq args;
  while (h.is(Kind::App)) {
    args.push_back(h.arg());
    Term f = h.fun();
    h = f;
  }
  std::reverse(args.begin(), args.end());
  return {h, std::move(args)};
}

// Folds a conjunction of hypotheses: nullopt while undecided.
struct Hyp {
  bool holds = true;
  bool unsure = false;
  void need(Membership m) {
    if (m == Membership::No) holds = false;
    if (m == Membership::Unknown) unsure = true;
  }
};

// Records one implication instance: hypotheses h, conclusion m ∈ S.
void conclude(ConditionResult& c, const Hyp& h, const SetPredicate& s, const Term& t, const char* what) {
  if (!h.holds) return;
  if (h.unsure) {
    ++c.unknown;
    return;
  }
  ++c.instances;
  Membership m = s(t);
  if (m == Membership::Unknown) {
    ++c.unknown;
  } else if (m == Membership::No) {
    c.fail(t, what);
  }
}

Term headMuReduct(const Term& head, const TermSeq& args) {
  Term cur = head;
  for (const Term& n : args) cur = contract(Term::app(cur, n), Rule::Mu);
  return cur;
}

std::vector<LamVar> lamBinders(const EnumBounds& b) {
  std::vector<LamVar> out;
  for (const auto& n : lamPoolNames(b.lamVarPool)) out.push_back(LamVar{n});
  out.push_back(LamVar{"x0"});
  return out;
}

std::vector<MuVar> muBinders(const EnumBounds& b) {
  std::vector<MuVar> out;
  for (const auto& n : muPoolNames(b.muVarPool)) out.push_back(MuVar{n});
  out.push_back(MuVar{"a0"});
  return out;
}

}  // namespace

ConditionReport checkSaturated(const SetPredicate& s, const EnumBounds& bIn) {
  EnumBounds b = bIn;
  b.typableOnly = false;
  ConditionReport rep{s.name(), b, {}};
  ConditionResult pre{"S<=Tt"}, c1{"C1"}, c2{"C2"}, c3{"C3"}, c4{"C4"}, c5{"C5"}, c6{"C6"};
  const auto xs = lamBinders(b);
  const auto as = muBinders(b);

  forEachTerm(b, [&](const Term& t) {
    const bool typ = isTypable(t);
    if (t.cxty() < b.maxCxty) {
      Membership m = s(t);
      ++pre.instances;
      if (m == Membership::Unknown) ++pre.unknown;
      if (m == Membership::Yes && !typ) pre.fail(t, "member but not typable");
      if (m == Membership::Yes) {
        for (const LamVar& x : xs) conclude(c1, Hyp{}, s, Term::lam(x, t), "lambda closure");
        for (const MuVar& a : as) {
          Term mu = Term::mu(a, t);
          if (isTypable(mu)) conclude(c2, Hyp{}, s, mu, "mu closure");
          Term br = Term::bracket(a, t);
          if (isTypable(br)) conclude(c3, Hyp{}, s, br, "bracket closure");
        }
      }
    }
    if (!typ) return true;
    Spine sp = spineOf(t);
    Hyp h;
    switch (sp.head.kind()) {
      case Kind::Var:
        for (const Term& n : sp.args) h.need(s(n));
        conclude(c4, h, s, t, "head-variable spine");
        break;
      case Kind::Lam:
        if (sp.args.empty()) break;
        h.need(s(sp.args[0]));
        if (h.holds) {
          Term red = applySeq(betaSubst(sp.head.body(), sp.head.lamVar(), sp.args[0]),
                              TermSeq(sp.args.begin() + 1, sp.args.end()));
          h.need(s(red));
        }
        conclude(c5, h, s, t, "head beta expansion");
        break;
      case Kind::Mu:
        if (sp.args.empty()) break;
        for (const Term& n : sp.args) h.need(s(n));
        if (h.holds) h.need(s(headMuReduct(sp.head, sp.args)));
        conclude(c6, h, s, t, "head mu expansion");
        break;
      default:
        break;
    }
    return true;
  });
  rep.conditions = {pre, c1, c2, c3, c4, c5, c6};
  return rep;
}

std::vector<TermSeq> computeOrthogonal(const SetPredicate& s, const SetPredicate& bb, const EnumBounds& b) {
  EnumBounds eb = b;
  eb.maxCxty = b.elemCxty();
  eb.typableOnly = false;
  std::vector<Term> elems;
  std::vector<Term> subjects;
  forEachTerm(eb, [&](const Term& t) {
    if (bb(t) == Membership::Yes) elems.push_back(t);
    if (s(t) == Membership::Yes) subjects.push_back(t);
    return true;
  });
  std::vector<TermSeq> out{TermSeq{}};
  std::vector<TermSeq> frontier{TermSeq{}};
  for (std::size_t len = 1; len <= b.seqMaxLen; ++len) {
    std::vector<TermSeq> next;
    for (const TermSeq& seq : frontier) {
      for (const Term& e : elems) {
        TermSeq cand = seq;
        cand.push_back(e);
        bool ok = true;
        for (const Term& m : subjects) {
          Term app = applySeq(m, cand);
          if (isTypable(app) && bb(app) != Membership::Yes) {
            ok = false;
            break;
          }
        }
        if (ok) next.push_back(std::move(cand));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

Membership inArrowOfSeqs(const std::vector<TermSeq>& x, const SetPredicate& bb, const Term& m) {
  Membership self = bb(m);
  if (self != Membership::Yes) return self;
  bool unsure = false;
  for (const TermSeq& seq : x) {
    Term cur = m;
    for (const Term& p : seq) {
      cur = Term::app(cur, p);
      if (!isTypable(cur)) continue;
      Membership r = bb(cur);
      if (r == Membership::No) return r;
      if (r == Membership::Unknown) unsure = true;
    }
  }
  return unsure ? Membership::Unknown : Membership::Yes;
}

ConditionReport checkBBSaturated(const SetPredicate& s, const SetPredicate& bb, const EnumBounds& bIn) {
  EnumBounds b = bIn;
  b.typableOnly = false;
  ConditionReport rep{s.name() + " in " + bb.name(), b, {}};
  ConditionResult pre{"S<=BB<=Tt"}, d1{"D1"}, d2{"D2"}, d3{"D3"};

  forEachTerm(b, [&](const Term& t) {
    const bool typ = isTypable(t);
    Membership ms = s(t);
    Membership mb = bb(t);
    ++pre.instances;
    if (ms == Membership::Unknown || mb == Membership::Unknown) ++pre.unknown;
    if (ms == Membership::Yes && mb == Membership::No) pre.fail(t, "in S but not in BB");
    if (mb == Membership::Yes && !typ) pre.fail(t, "in BB but not typable");
    if (!typ) return true;
    Spine sp = spineOf(t);
    Hyp h;
    if (sp.head.is(Kind::Var)) {
      for (const Term& n : sp.args) h.need(bb(n));
      conclude(d2, h, s, t, "head-variable spine");
    } else if (sp.head.is(Kind::Lam) && !sp.args.empty()) {
      h.need(bb(sp.args[0]));
      if (h.holds) {
        Term red = applySeq(betaSubst(sp.head.body(), sp.head.lamVar(), sp.args[0]),
                            TermSeq(sp.args.begin() + 1, sp.args.end()));
        h.need(s(red));
      }
      conclude(d1, h, s, t, "head beta expansion");
    }
    return true;
  });

  std::vector<TermSeq> x = computeOrthogonal(s, bb, b);
  EnumBounds eb = b;
  eb.maxCxty = b.elemCxty();
  forEachTerm(eb, [&](const Term& t) {
    Membership ms = s(t);
    Membership mx = inArrowOfSeqs(x, bb, t);
    if (ms == Membership::Unknown || mx == Membership::Unknown) {
      ++d3.unknown;
      return true;
    }
    ++d3.instances;
    if (ms != mx) d3.fail(t, ms == Membership::Yes ? "in S but not in X~>BB" : "in X~>BB but not in S");
    return true;
  });
  rep.conditions = {pre, d1, d2, d3};
  return rep;
}

}  // namespace lambdamu
