#pragma once

// Shared helpers for the unit tests. Everything here is written against the
// concrete syntax and the public accessors only, so it can serve as a
// second implementation to compare the library with.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "lambdamu/parse.hpp"
#include "lambdamu/syntax.hpp"

namespace lmtest {

using lambdamu::Kind;
using lambdamu::Term;

inline Term T(const char* s) { return lambdamu::parseTerm(s); }

// De Bruijn rendering with separate λ and μ scopes; free names kept.
inline void dbInto(const Term& t, std::vector<std::string>& ls, std::vector<std::string>& ms, std::string& out) {
  auto index = [](const std::vector<std::string>& env, const std::string& n) -> int {
    for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i) {
      if (env[static_cast<std::size_t>(i)] == n) return static_cast<int>(env.size()) - 1 - i;
    }
    return -1;
  };
  switch (t.kind()) {
    case Kind::Var: {
      int i = index(ls, t.name());
      out += i < 0 ? "v:" + t.name() : "v" + std::to_string(i);
      out += ' ';
      return;
    }
    case Kind::Lam:
      out += "L ";
      ls.push_back(t.name());
      dbInto(t.body(), ls, ms, out);
      ls.pop_back();
      return;
    case Kind::Mu:
      out += "M ";
      ms.push_back(t.name());
      dbInto(t.body(), ls, ms, out);
      ms.pop_back();
      return;
    case Kind::Bracket: {
      int i = index(ms, t.name());
      out += i < 0 ? "B:" + t.name() : "B" + std::to_string(i);
      out += ' ';
      dbInto(t.body(), ls, ms, out);
      return;
    }
    case Kind::App:
      out += "A ";
      dbInto(t.fun(), ls, ms, out);
      dbInto(t.arg(), ls, ms, out);
      return;
  }
}

inline std::string db(const Term& t) {
  std::vector<std::string> ls, ms;
  std::string out;
  dbInto(t, ls, ms, out);
  return out;
}

// Random term of exactly the given size over small name sets, shadowing
// allowed. Not restricted to canonical names.
class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  Term term(std::size_t size) {
    if (size <= 1) return Term::var(lambdamu::LamVar{pick(lams_)});
    std::uniform_int_distribution<int> d(0, size >= 3 ? 3 : 2);
    switch (d(rng_)) {
      case 0:
        return Term::lam(lambdamu::LamVar{pick(lams_)}, term(size - 1));
      case 1:
        return Term::mu(lambdamu::MuVar{pick(mus_)}, term(size - 1));
      case 2:
        return Term::bracket(lambdamu::MuVar{pick(mus_)}, term(size - 1));
      default: {
        std::uniform_int_distribution<std::size_t> k(1, size - 2);
        std::size_t l = k(rng_);
        Term f = term(l);
        return Term::app(f, term(size - 1 - l));
      }
    }
  }

  std::size_t size(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }

 private:
  const std::string& pick(const std::vector<std::string>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng_)];
  }

  std::mt19937 rng_;
  std::vector<std::string> lams_{"x", "y", "z"};
  std::vector<std::string> mus_{"a", "b", "c"};
};

}  // namespace lmtest
