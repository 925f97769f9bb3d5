#include "lambdamu/syntax.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <functional>
#include <optional>

namespace lambdamu {

namespace {

// One bit per name hash; a cleared bit proves the name does not occur.
std::uint64_t nameBit(const std::string& s) {
  return std::uint64_t{1} << (std::hash<std::string>{}(s) & 63U);
}

}  // namespace

struct Term::Node {
  Kind kind;
  std::string name;
  std::optional<Term> a;
  std::optional<Term> b;
  std::size_t cxty;
  std::uint64_t lamMask;
  std::uint64_t muMask;
};

Term Term::var(LamVar x) {
  auto bit = nameBit(x.name);
  return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(x.name), std::nullopt, std::nullopt, 1, bit, 0}));
}

Term Term::lam(LamVar x, Term body) {
  const auto& n = *body.node_;
  auto bit = nameBit(x.name);
  return Term(std::make_shared<const Node>(
      Node{Kind::Lam, std::move(x.name), body, std::nullopt, n.cxty + 1, n.lamMask | bit, n.muMask}));
}

Term Term::app(Term fun, Term arg) {
  const auto& f = *fun.node_;
  const auto& x = *arg.node_;
  return Term(std::make_shared<const Node>(Node{Kind::App, std::string{}, fun, arg,
                                                f.cxty + x.cxty + 1, f.lamMask | x.lamMask,
                                                f.muMask | x.muMask}));
}

Term Term::bracket(MuVar a, Term body) {
  const auto& n = *body.node_;
  auto bit = nameBit(a.name);
  return Term(std::make_shared<const Node>(
      Node{Kind::Bracket, std::move(a.name), body, std::nullopt, n.cxty + 1, n.lamMask, n.muMask | bit}));
}

Term Term::mu(MuVar a, Term body) {
  const auto& n = *body.node_;
  auto bit = nameBit(a.name);
  return Term(std::make_shared<const Node>(
      Node{Kind::Mu, std::move(a.name), body, std::nullopt, n.cxty + 1, n.lamMask, n.muMask | bit}));
}

Kind Term::kind() const noexcept { return node_->kind; }

LamVar Term::lamVar() const {
  if (kind() != Kind::Var && kind() != Kind::Lam) throw std::logic_error("lamVar on non-λ node");
  return LamVar{node_->name};
}

MuVar Term::muVar() const {
  if (kind() != Kind::Bracket && kind() != Kind::Mu) throw std::logic_error("muVar on non-μ node");
  return MuVar{node_->name};
}

const std::string& Term::name() const {
  if (kind() == Kind::App) throw std::logic_error("name on application");
  return node_->name;
}

const Term& Term::body() const {
  if (kind() == Kind::Var || kind() == Kind::App) throw std::logic_error("body on leaf/application");
  return *node_->a;
}

const Term& Term::fun() const {
  if (kind() != Kind::App) throw std::logic_error("fun on non-application");
  return *node_->a;
}

const Term& Term::arg() const {
  if (kind() != Kind::App) throw std::logic_error("arg on non-application");
  return *node_->b;
}

std::size_t Term::cxty() const noexcept { return node_->cxty; }

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  const Node& l = *node_;
  const Node& r = *other.node_;
  if (l.kind != r.kind || l.cxty != r.cxty || l.name != r.name) return false;
  switch (l.kind) {
    case Kind::Var:
      return true;
    case Kind::App:
      return fun() == other.fun() && arg() == other.arg();
    default:
      return body() == other.body();
  }
}

std::size_t cxty(const Term& m) { return m.cxty(); }

namespace {

void fvInto(const Term& m, std::vector<std::string>& lamBound, std::vector<std::string>& muBound, FreeVars& out) {
  switch (m.kind()) {
    case Kind::Var:
      if (std::find(lamBound.begin(), lamBound.end(), m.name()) == lamBound.end()) out.lam.insert(LamVar{m.name()});
      return;
    case Kind::Lam:
      lamBound.push_back(m.name());
      fvInto(m.body(), lamBound, muBound, out);
      lamBound.pop_back();
      return;
    case Kind::App:
      fvInto(m.fun(), lamBound, muBound, out);
      fvInto(m.arg(), lamBound, muBound, out);
      return;
    case Kind::Bracket:
      if (std::find(muBound.begin(), muBound.end(), m.name()) == muBound.end()) out.mu.insert(MuVar{m.name()});
      fvInto(m.body(), lamBound, muBound, out);
      return;
    case Kind::Mu:
      muBound.push_back(m.name());
      fvInto(m.body(), lamBound, muBound, out);
      muBound.pop_back();
      return;
  }
}

}  // namespace

FreeVars fv(const Term& m) {
  FreeVars out;
  std::vector<std::string> lb;
  std::vector<std::string> mb;
  fvInto(m, lb, mb, out);
  return out;
}

bool Term::mayMentionLam(const std::string& name) const noexcept { return (node_->lamMask & nameBit(name)) != 0; }

bool Term::mayMentionMu(const std::string& name) const noexcept { return (node_->muMask & nameBit(name)) != 0; }

bool occursFreeLam(const Term& m, const LamVar& x) {
  if (!m.mayMentionLam(x.name)) return false;
  switch (m.kind()) {
    case Kind::Var:
      return m.name() == x.name;
    case Kind::Lam:
      return m.name() != x.name && occursFreeLam(m.body(), x);
    case Kind::App:
      return occursFreeLam(m.fun(), x) || occursFreeLam(m.arg(), x);
    case Kind::Bracket:
    case Kind::Mu:
      return occursFreeLam(m.body(), x);
  }
  return false;
}

bool occursFreeMu(const Term& m, const MuVar& a) {
  if (!m.mayMentionMu(a.name)) return false;
  switch (m.kind()) {
    case Kind::Var:
      return false;
    case Kind::Lam:
      return occursFreeMu(m.body(), a);
    case Kind::App:
      return occursFreeMu(m.fun(), a) || occursFreeMu(m.arg(), a);
    case Kind::Bracket:
      return m.name() == a.name || occursFreeMu(m.body(), a);
    case Kind::Mu:
      return m.name() != a.name && occursFreeMu(m.body(), a);
  }
  return false;
}

void collectNames(const Term& m, NameSet& out) {
  switch (m.kind()) {
    case Kind::Var:
      out.lam.insert(m.name());
      return;
    case Kind::Lam:
      out.lam.insert(m.name());
      collectNames(m.body(), out);
      return;
    case Kind::App:
      collectNames(m.fun(), out);
      collectNames(m.arg(), out);
      return;
    case Kind::Bracket:
    case Kind::Mu:
      out.mu.insert(m.name());
      collectNames(m.body(), out);
      return;
  }
}

namespace {

std::ptrdiff_t boundIndex(const std::vector<const std::string*>& stack, const std::string& name) {
  for (std::size_t i = stack.size(); i-- > 0;) {
    if (*stack[i] == name) return static_cast<std::ptrdiff_t>(stack.size() - 1 - i);
  }
  return -1;
}

void canonicalInto(const Term& m, std::vector<const std::string*>& lamStack,
                   std::vector<const std::string*>& muStack, std::string& out) {
  switch (m.kind()) {
    case Kind::Var: {
      auto i = boundIndex(lamStack, m.name());
      if (i >= 0) {
        out += 'v';
        out += std::to_string(i);
      } else {
        out += 'x';
        out += m.name();
      }
      out += ';';
      return;
    }
    case Kind::Lam:
      out += 'L';
      lamStack.push_back(&m.name());
      canonicalInto(m.body(), lamStack, muStack, out);
      lamStack.pop_back();
      return;
    case Kind::App:
      out += 'A';
      canonicalInto(m.fun(), lamStack, muStack, out);
      canonicalInto(m.arg(), lamStack, muStack, out);
      return;
    case Kind::Bracket: {
      auto i = boundIndex(muStack, m.name());
      if (i >= 0) {
        out += 'b';
        out += std::to_string(i);
      } else {
        out += 'B';
        out += m.name();
      }
      out += ';';
      canonicalInto(m.body(), lamStack, muStack, out);
      return;
    }
    case Kind::Mu:
      out += 'M';
      muStack.push_back(&m.name());
      canonicalInto(m.body(), lamStack, muStack, out);
      muStack.pop_back();
      return;
  }
}

}  // namespace

std::string canonicalKey(const Term& m) {
  std::string out;
  out.reserve(m.cxty() * 3);
  std::vector<const std::string*> ls;
  std::vector<const std::string*> ms;
  canonicalInto(m, ls, ms, out);
  return out;
}

bool alphaEq(const Term& m, const Term& n) {
  if (m.samePointer(n)) return true;
  if (m.cxty() != n.cxty()) return false;
  return canonicalKey(m) == canonicalKey(n);
}

namespace {

std::atomic<std::uint64_t> freshCounter{0};

std::string freshName(std::string_view base, const std::set<std::string>& avoid) {
  // Strip a previous "_<digits>" suffix so repeated renaming stays short.
  auto us = base.rfind('_');
  if (us != std::string_view::npos && us + 1 < base.size() &&
      std::all_of(base.begin() + static_cast<std::ptrdiff_t>(us) + 1, base.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; })) {
    base = base.substr(0, us);
  }
  if (base.empty()) base = "v";
  for (;;) {
    std::string candidate = std::string(base) + "_" + std::to_string(freshCounter.fetch_add(1) + 1);
    if (!avoid.contains(candidate)) return candidate;
  }
}

}  // namespace

void setFreshSeed(std::uint64_t seed) { freshCounter.store(seed); }

LamVar freshLam(std::string_view base, const std::set<std::string>& avoid) { return LamVar{freshName(base, avoid)}; }

MuVar freshMu(std::string_view base, const std::set<std::string>& avoid) { return MuVar{freshName(base, avoid)}; }

Term subtermAt(const Term& m, const TermPath& p) {
  const Term* cur = &m;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto c = p[i];
    if (cur->is(Kind::Var)) throw PathError("path " + pathString(p) + " descends into a variable");
    if (cur->is(Kind::App)) {
      if (c > 1) throw PathError("path " + pathString(p) + ": application child must be 0 or 1");
      cur = c == 0 ? &cur->fun() : &cur->arg();
    } else {
      if (c != 0) throw PathError("path " + pathString(p) + ": unary node child must be 0");
      cur = &cur->body();
    }
  }
  return *cur;
}

namespace {

Term replaceFrom(const Term& m, const TermPath& p, std::size_t i, const Term& n) {
  if (i == p.size()) return n;
  auto c = p[i];
  switch (m.kind()) {
    case Kind::Var:
      throw PathError("path " + pathString(p) + " descends into a variable");
    case Kind::App:
      if (c == 0) return Term::app(replaceFrom(m.fun(), p, i + 1, n), m.arg());
      if (c == 1) return Term::app(m.fun(), replaceFrom(m.arg(), p, i + 1, n));
      throw PathError("path " + pathString(p) + ": application child must be 0 or 1");
    case Kind::Lam:
    case Kind::Bracket:
    case Kind::Mu:
      if (c != 0) throw PathError("path " + pathString(p) + ": unary node child must be 0");
      break;
  }
  Term body = replaceFrom(m.body(), p, i + 1, n);
  if (m.is(Kind::Lam)) return Term::lam(m.lamVar(), body);
  if (m.is(Kind::Mu)) return Term::mu(m.muVar(), body);
  return Term::bracket(m.muVar(), body);
}

}  // namespace

Term replaceAt(const Term& m, const TermPath& p, const Term& n) { return replaceFrom(m, p, 0, n); }

std::string pathString(const TermPath& p) {
  if (p.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(static_cast<unsigned>(p[i]));
  }
  return s;
}

namespace {

void printInto(const Term& m, std::string& out) {
  switch (m.kind()) {
    case Kind::Var:
      out += m.name();
      return;
    case Kind::Lam:
      out += '\\';
      out += m.name();
      out += ". ";
      printInto(m.body(), out);
      return;
    case Kind::Mu:
      out += '#';
      out += m.name();
      out += ". ";
      printInto(m.body(), out);
      return;
    case Kind::Bracket:
      out += '[';
      out += m.name();
      out += ']';
      printInto(m.body(), out);
      return;
    case Kind::App:
      out += '(';
      printInto(m.fun(), out);
      out += ')';
      printInto(m.arg(), out);
      return;
  }
}

}  // namespace

std::string print(const Term& m) {
  std::string out;
  printInto(m, out);
  return out;
}

}  // namespace lambdamu
