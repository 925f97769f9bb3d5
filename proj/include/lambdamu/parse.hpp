#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lambdamu/syntax.hpp"
#include "lambdamu/types.hpp"

namespace lambdamu {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::vector<std::string> expected, const std::string& found);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

// Concrete syntax (ASCII; λ, μ and ⊥ are accepted as aliases):
//   term    := "\" IDENT "." term | "#" IDENT "." term | "[" IDENT "]" term
//            | "(" term ")" term | "(" term ")" | IDENT
//   type    := ATOM | "_|_" | "(" type ")" | type "->" type
Term parseTerm(std::string_view text);
Type parseType(std::string_view text);

// "t1 ; t2 ; ..." (an empty or blank string is the empty sequence).
TermSeq parseTermSeq(std::string_view text);

// "x:A, y:B |- M : T ; a:C, b:_|_". The type and the μ-context are optional.
struct ParsedJudgment {
  std::vector<std::pair<LamVar, Type>> gamma;
  Term term;
  std::optional<Type> type;
  std::vector<std::pair<MuVar, Type>> theta;
};
ParsedJudgment parseJudgment(std::string_view text);

}  // namespace lambdamu
