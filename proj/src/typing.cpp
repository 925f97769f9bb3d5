#include "lambdamu/typing.hpp"

#include <optional>
#include <set>
#include <utility>

namespace lambdamu {

const char* ruleName(TypingRule r) {
  switch (r) {
    case TypingRule::Ax:
      return "ax";
    case TypingRule::ArrowI:
      return "->i";
    case TypingRule::ArrowE:
      return "->e";
    case TypingRule::BotI:
      return "_|_i";
    case TypingRule::BotE:
      return "_|_e";
  }
  return "?";
}

namespace {

// Type terms with metavariables, stored by index. Bindings live in `bound`.
class Store {
 public:
  enum K : unsigned char { Meta, Atom, Bot, Arr };

  int meta() { return push(Meta, -1, -1); }
  int bottom() { return push(Bot, -1, -1); }
  int arrow(int a, int b) { return push(Arr, a, b); }
  int atom(const std::string& name) {
    auto [it, fresh] = atomIds_.try_emplace(name, static_cast<int>(atomNames_.size()));
    if (fresh) atomNames_.push_back(name);
    return push(Atom, it->second, -1);
  }

  int ground(const Type& t) {
    switch (t.kind()) {
      case TypeKind::Atom:
        return atom(t.atomName());
      case TypeKind::Bottom:
        return bottom();
      case TypeKind::Arrow: {
        int a = ground(t.from());
        return arrow(a, ground(t.to()));
      }
    }
    return bottom();
  }

  int find(int t) {
    while (nodes_[t].k == Meta && bound_[t] >= 0) {
      int next = bound_[t];
      if (nodes_[next].k == Meta && bound_[next] >= 0) bound_[t] = bound_[next];
      t = next;
    }
    return t;
  }

  bool unify(int s, int t) {
    s = find(s);
    t = find(t);
    if (s == t) return true;
    const Node& a = nodes_[s];
    const Node& b = nodes_[t];
    if (a.k == Meta) return bindMeta(s, t);
    if (b.k == Meta) return bindMeta(t, s);
    if (a.k != b.k) return false;
    switch (a.k) {
      case Atom:
        return a.x == b.x;
      case Bot:
        return true;
      case Arr: {
        int af = a.x, at = a.y, bf = b.x, bt = b.y;
        return unify(af, bf) && unify(at, bt);
      }
      default:
        return false;
    }
  }

  // Metas are named through `names` (filled on demand) or defaulted to ⊥.
  Type resolve(int t, std::map<int, std::string>* names) {
    t = find(t);
    const Node n = nodes_[t];
    switch (n.k) {
      case Meta: {
        if (!names) return Type::bottom();
        auto it = names->find(t);
        if (it == names->end()) {
          it = names->emplace(t, "T" + std::to_string(names->size())).first;
        }
        return Type::atom(it->second);
      }
      case Atom:
        return Type::atom(atomNames_[n.x]);
      case Bot:
        return Type::bottom();
      case Arr: {
        Type a = resolve(n.x, names);
        return Type::arrow(a, resolve(n.y, names));
      }
    }
    return Type::bottom();
  }

 private:
  struct Node {
    K k;
    int x;
    int y;
  };

  int push(K k, int x, int y) {
    nodes_.push_back({k, x, y});
    bound_.push_back(-1);
    return static_cast<int>(nodes_.size()) - 1;
  }

  bool occurs(int m, int t) {
    t = find(t);
    if (t == m) return true;
    if (nodes_[t].k != Arr) return false;
    int a = nodes_[t].x, b = nodes_[t].y;
    return occurs(m, a) || occurs(m, b);
  }

  bool bindMeta(int m, int t) {
    if (occurs(m, t)) return false;
    bound_[m] = t;
    return true;
  }

  std::vector<Node> nodes_;
  std::vector<int> bound_;
  std::map<std::string, int> atomIds_;
  std::vector<std::string> atomNames_;
};

// Per-node record kept for rebuilding derivations.
struct Shape {
  int type;
  int binder = -1;  // Lam: type of x; Mu/Bracket: type of a
  std::vector<Shape> kids;
};

struct Failure {
  TermPath path;
  std::string reason;
};

class Engine {
 public:
  // Checking mode: free variables must be bound by the ground context.
  explicit Engine(const Context* ctx) : ctx_(ctx) {}

  Store store;
  std::vector<std::pair<std::string, int>> freeLam;
  std::vector<std::pair<std::string, int>> freeMu;

  std::optional<Shape> infer(const Term& m) {
    switch (m.kind()) {
      case Kind::Var: {
        int t = lookup(lamScope_, freeLam, m.name(), true);
        if (t < 0) return fail("unbound variable " + m.name());
        return Shape{t, -1, {}};
      }
      case Kind::Lam: {
        int x = store.meta();
        lamScope_.emplace_back(m.name(), x);
        path_.push_back(0);
        auto body = infer(m.body());
        path_.pop_back();
        lamScope_.pop_back();
        if (!body) return std::nullopt;
        int t = store.arrow(x, body->type);
        return Shape{t, x, {std::move(*body)}};
      }
      case Kind::App: {
        path_.push_back(0);
        auto f = infer(m.fun());
        path_.pop_back();
        if (!f) return std::nullopt;
        path_.push_back(1);
        auto a = infer(m.arg());
        path_.pop_back();
        if (!a) return std::nullopt;
        int r = store.meta();
        if (!store.unify(f->type, store.arrow(a->type, r))) {
          return fail("type mismatch: function type does not accept the argument");
        }
        std::vector<Shape> kids;
        kids.push_back(std::move(*f));
        kids.push_back(std::move(*a));
        return Shape{r, -1, std::move(kids)};
      }
      case Kind::Bracket: {
        int a = lookup(muScope_, freeMu, m.name(), false);
        if (a < 0) return fail("unbound variable " + m.name());
        path_.push_back(0);
        auto body = infer(m.body());
        path_.pop_back();
        if (!body) return std::nullopt;
        if (!store.unify(body->type, a)) return fail("bracket-on-nonmatching-type: [" + m.name() + "]");
        return Shape{store.bottom(), a, {std::move(*body)}};
      }
      case Kind::Mu: {
        int a = store.meta();
        muScope_.emplace_back(m.name(), a);
        path_.push_back(0);
        auto body = infer(m.body());
        path_.pop_back();
        muScope_.pop_back();
        if (!body) return std::nullopt;
        if (!store.unify(body->type, store.bottom())) return fail("mu-body-not-bottom");
        return Shape{a, a, {std::move(*body)}};
      }
    }
    return std::nullopt;
  }

  Failure failure;

 private:
  std::nullopt_t fail(std::string reason) {
    failure = Failure{path_, std::move(reason)};
    return std::nullopt;
  }

  int lookup(const std::vector<std::pair<std::string, int>>& scope, std::vector<std::pair<std::string, int>>& free,
             const std::string& name, bool lam) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    for (const auto& [n, t] : free) {
      if (n == name) return t;
    }
    int t;
    if (ctx_) {
      if (lam) {
        auto it = ctx_->gamma.find(LamVar{name});
        if (it == ctx_->gamma.end()) return -1;
        t = store.ground(it->second);
      } else {
        auto it = ctx_->theta.find(MuVar{name});
        if (it == ctx_->theta.end()) return -1;
        t = store.ground(it->second);
      }
    } else {
      t = store.meta();
    }
    free.emplace_back(name, t);
    return t;
  }

  const Context* ctx_;
  std::vector<std::pair<std::string, int>> lamScope_;
  std::vector<std::pair<std::string, int>> muScope_;
  TermPath path_;
};

Derivation build(Store& st, const Shape& s, const Term& m, const Context& ctx) {
  Type t = st.resolve(s.type, nullptr);
  Derivation d{TypingRule::Ax, Judgment{ctx, m, t}, {}};
  switch (m.kind()) {
    case Kind::Var:
      break;
    case Kind::Lam: {
      d.rule = TypingRule::ArrowI;
      Context inner = ctx;
      inner.gamma.insert_or_assign(m.lamVar(), st.resolve(s.binder, nullptr));
      d.premises.push_back(build(st, s.kids[0], m.body(), inner));
      break;
    }
    case Kind::App:
      d.rule = TypingRule::ArrowE;
      d.premises.push_back(build(st, s.kids[0], m.fun(), ctx));
      d.premises.push_back(build(st, s.kids[1], m.arg(), ctx));
      break;
    case Kind::Bracket:
      d.rule = TypingRule::BotI;
      d.premises.push_back(build(st, s.kids[0], m.body(), ctx));
      break;
    case Kind::Mu: {
      d.rule = TypingRule::BotE;
      Context inner = ctx;
      inner.theta.insert_or_assign(m.muVar(), st.resolve(s.binder, nullptr));
      d.premises.push_back(build(st, s.kids[0], m.body(), inner));
      break;
    }
  }
  return d;
}

}  // namespace

std::variant<Derivation, TypeError> checkJudgment(const Context& ctx, const Term& m, const Type& a) {
  Engine e(&ctx);
  auto shape = e.infer(m);
  if (!shape) return TypeError{e.failure.path, e.failure.reason};
  if (!e.store.unify(shape->type, e.store.ground(a))) {
    return TypeError{{}, "type mismatch: term does not have type " + print(a)};
  }
  return build(e.store, *shape, m, ctx);
}

std::variant<Principal, Untypable> inferPrincipal(const Term& m) {
  Engine e(nullptr);
  auto shape = e.infer(m);
  if (!shape) return Untypable{e.failure.path, e.failure.reason};
  std::map<int, std::string> names;
  Type t = e.store.resolve(shape->type, &names);
  Context ctx;
  for (const auto& [x, v] : e.freeLam) ctx.gamma.emplace(LamVar{x}, e.store.resolve(v, &names));
  for (const auto& [a, v] : e.freeMu) ctx.theta.emplace(MuVar{a}, e.store.resolve(v, &names));
  std::vector<std::string> atoms;
  for (std::size_t i = 0; i < names.size(); ++i) atoms.push_back("T" + std::to_string(i));
  return Principal{std::move(ctx), t, std::move(atoms)};
}

bool isTypable(const Term& m) {
  Engine e(nullptr);
  return e.infer(m).has_value();
}

bool replayDerivation(const Derivation& d) {
  const Judgment& j = d.conclusion;
  const Term& m = j.term;
  auto premiseOk = [&](std::size_t n) {
    if (d.premises.size() != n) return false;
    for (const auto& p : d.premises) {
      if (!replayDerivation(p)) return false;
    }
    return true;
  };
  switch (d.rule) {
    case TypingRule::Ax: {
      if (!m.is(Kind::Var) || !premiseOk(0)) return false;
      auto it = j.ctx.gamma.find(m.lamVar());
      return it != j.ctx.gamma.end() && it->second == j.type;
    }
    case TypingRule::ArrowI: {
      if (!m.is(Kind::Lam) || !j.type.isArrow() || !premiseOk(1)) return false;
      const Judgment& p = d.premises[0].conclusion;
      Context want = j.ctx;
      want.gamma.insert_or_assign(m.lamVar(), j.type.from());
      return p.ctx == want && p.term == m.body() && p.type == j.type.to();
    }
    case TypingRule::ArrowE: {
      if (!m.is(Kind::App) || !premiseOk(2)) return false;
      const Judgment& f = d.premises[0].conclusion;
      const Judgment& a = d.premises[1].conclusion;
      return f.ctx == j.ctx && a.ctx == j.ctx && f.term == m.fun() && a.term == m.arg() && f.type.isArrow() &&
             f.type.from() == a.type && f.type.to() == j.type;
    }
    case TypingRule::BotI: {
      if (!m.is(Kind::Bracket) || !j.type.isBottom() || !premiseOk(1)) return false;
      auto it = j.ctx.theta.find(m.muVar());
      if (it == j.ctx.theta.end()) return false;
      const Judgment& p = d.premises[0].conclusion;
      return p.ctx == j.ctx && p.term == m.body() && p.type == it->second;
    }
    case TypingRule::BotE: {
      if (!m.is(Kind::Mu) || !premiseOk(1)) return false;
      const Judgment& p = d.premises[0].conclusion;
      Context want = j.ctx;
      want.theta.insert_or_assign(m.muVar(), j.type);
      return p.ctx == want && p.term == m.body() && p.type.isBottom();
    }
  }
  return false;
}

std::string printContext(const Context& ctx) {
  std::string s;
  for (const auto& [x, t] : ctx.gamma) {
    if (!s.empty()) s += ", ";
    s += x.name + ":" + print(t);
  }
  return s;
}

namespace {

std::string printTheta(const Context& ctx) {
  std::string s;
  for (const auto& [a, t] : ctx.theta) {
    if (!s.empty()) s += ", ";
    s += a.name + ":" + print(t);
  }
  return s;
}

void printDerivationInto(const Derivation& d, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += printJudgment(d.conclusion);
  out += "   (";
  out += ruleName(d.rule);
  out += ")\n";
  for (const auto& p : d.premises) printDerivationInto(p, depth + 1, out);
}

}  // namespace

std::string printJudgment(const Judgment& j) {
  std::string s = printContext(j.ctx);
  s += s.empty() ? "|- " : " |- ";
  s += print(j.term) + " : " + print(j.type);
  std::string th = printTheta(j.ctx);
  if (!th.empty()) s += " ; " + th;
  return s;
}

std::string printDerivation(const Derivation& d) {
  std::string out;
  printDerivationInto(d, 0, out);
  return out;
}

}  // namespace lambdamu
