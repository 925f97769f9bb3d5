#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "lambdamu/syntax.hpp"
#include "lambdamu/types.hpp"

namespace lambdamu {

struct Context {
  std::map<LamVar, Type> gamma;
  std::map<MuVar, Type> theta;
  bool operator==(const Context&) const = default;
};

struct Judgment {
  Context ctx;
  Term term;
  Type type;
};

enum class TypingRule : unsigned char { Ax, ArrowI, ArrowE, BotI, BotE };
const char* ruleName(TypingRule r);

struct Derivation {
  TypingRule rule;
  Judgment conclusion;
  std::vector<Derivation> premises;
};

struct TypeError {
  TermPath path;
  std::string reason;
};

// Syntax-directed; types left open by the term (e.g. the argument type of a
// discarded application) are instantiated to ⊥.
std::variant<Derivation, TypeError> checkJudgment(const Context& ctx, const Term& m, const Type& a);

// Most general typing. Atoms are named T0, T1, ... in order of first
// appearance in the type, then in gamma, then in theta.
struct Principal {
  Context ctx;
  Type type;
  std::vector<std::string> atoms;
};

struct Untypable {
  TermPath path;
  std::string reason;
};

std::variant<Principal, Untypable> inferPrincipal(const Term& m);
bool isTypable(const Term& m);

// Independent rule-by-rule validator.
bool replayDerivation(const Derivation& d);

std::string printContext(const Context& ctx);
std::string printJudgment(const Judgment& j);
// One judgment per line, premises indented under their conclusion.
std::string printDerivation(const Derivation& d);

}  // namespace lambdamu
