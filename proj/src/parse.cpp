#include "lambdamu/parse.hpp"

#include <cctype>

namespace lambdamu {

namespace {

std::string joinExpected(const std::vector<std::string>& ex) {
  std::string s;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    if (i) s += ", ";
    s += ex[i];
  }
  return s;
}

enum class Tok { Ident, Lambda, Mu, Dot, LBrack, RBrack, LParen, RParen, Arrow, Bottom, Colon, Comma, Semi, Turnstile, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }

  Token next() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  bool startsWith(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  void bump(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
        ++col_;
      }
      ++pos_;
    }
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) bump(1);
    int line = line_;
    int col = col_;
    auto emit = [&](Tok k, std::size_t len) {
      cur_ = Token{k, std::string(src_.substr(pos_, len)), line, col};
      bump(len);
    };
    if (pos_ >= src_.size()) {
      cur_ = Token{Tok::End, "end of input", line, col};
      return;
    }
    if (startsWith("_|_")) return emit(Tok::Bottom, 3);
    if (startsWith("⊥")) return emit(Tok::Bottom, 3);
    if (startsWith("λ")) return emit(Tok::Lambda, 2);
    if (startsWith("μ")) return emit(Tok::Mu, 2);
    if (startsWith("->")) return emit(Tok::Arrow, 2);
    if (startsWith("|-")) return emit(Tok::Turnstile, 2);
    char c = src_[pos_];
    switch (c) {
      case '\\':
        return emit(Tok::Lambda, 1);
      case '#':
        return emit(Tok::Mu, 1);
      case '.':
        return emit(Tok::Dot, 1);
      case '[':
        return emit(Tok::LBrack, 1);
      case ']':
        return emit(Tok::RBrack, 1);
      case '(':
        return emit(Tok::LParen, 1);
      case ')':
        return emit(Tok::RParen, 1);
      case ':':
        return emit(Tok::Colon, 1);
      case ',':
        return emit(Tok::Comma, 1);
      case ';':
        return emit(Tok::Semi, 1);
      default:
        break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t len = 1;
      while (pos_ + len < src_.size()) {
        char d = src_[pos_ + len];
        if (!(std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'')) break;
        ++len;
      }
      return emit(Tok::Ident, len);
    }
    throw ParseError(line, col, {"term or type"}, std::string(1, c));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token cur_{Tok::End, {}, 1, 1};
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  Term term() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Lambda: {
        lex_.next();
        std::string x = expectIdent("λ-variable");
        expect(Tok::Dot, "'.'");
        return Term::lam(LamVar{x}, term());
      }
      case Tok::Mu: {
        lex_.next();
        std::string a = expectIdent("μ-variable");
        expect(Tok::Dot, "'.'");
        return Term::mu(MuVar{a}, term());
      }
      case Tok::LBrack: {
        lex_.next();
        std::string a = expectIdent("μ-variable");
        expect(Tok::RBrack, "']'");
        return Term::bracket(MuVar{a}, term());
      }
      case Tok::LParen: {
        lex_.next();
        Term inner = term();
        expect(Tok::RParen, "')'");
        if (startsTerm(lex_.peek().kind)) return Term::app(inner, term());
        return inner;
      }
      case Tok::Ident:
        return Term::var(LamVar{lex_.next().text});
      default:
        fail({"'\\'", "'#'", "'['", "'('", "identifier"});
    }
  }

  Type type() {
    Type lhs = primaryType();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.next();
      return Type::arrow(lhs, type());
    }
    return lhs;
  }

  void expectEnd() {
    if (lex_.peek().kind != Tok::End) fail({"end of input"});
  }

  ParsedJudgment judgment() {
    std::vector<std::pair<LamVar, Type>> gamma;
    if (lex_.peek().kind != Tok::Turnstile) {
      for (;;) {
        std::string x = expectIdent("λ-variable");
        expect(Tok::Colon, "':'");
        gamma.emplace_back(LamVar{x}, type());
        if (lex_.peek().kind != Tok::Comma) break;
        lex_.next();
      }
    }
    expect(Tok::Turnstile, "'|-'");
    Term m = term();
    std::optional<Type> ty;
    if (lex_.peek().kind == Tok::Colon) {
      lex_.next();
      ty = type();
    }
    std::vector<std::pair<MuVar, Type>> theta;
    if (lex_.peek().kind == Tok::Semi) {
      lex_.next();
      while (lex_.peek().kind == Tok::Ident) {
        std::string a = lex_.next().text;
        expect(Tok::Colon, "':'");
        theta.emplace_back(MuVar{a}, type());
        if (lex_.peek().kind != Tok::Comma) break;
        lex_.next();
      }
    }
    expectEnd();
    return ParsedJudgment{std::move(gamma), m, ty, std::move(theta)};
  }

  TermSeq seq() {
    TermSeq out;
    if (lex_.peek().kind == Tok::End) return out;
    for (;;) {
      out.push_back(term());
      if (lex_.peek().kind != Tok::Semi) break;
      lex_.next();
    }
    expectEnd();
    return out;
  }

 private:
  static bool startsTerm(Tok k) {
    return k == Tok::Lambda || k == Tok::Mu || k == Tok::LBrack || k == Tok::LParen || k == Tok::Ident;
  }

  Type primaryType() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Bottom) {
      lex_.next();
      return Type::bottom();
    }
    if (t.kind == Tok::LParen) {
      lex_.next();
      Type inner = type();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::Ident && std::isupper(static_cast<unsigned char>(t.text[0]))) {
      return Type::atom(lex_.next().text);
    }
    fail({"type atom (uppercase identifier)", "'_|_'", "'('"});
  }

  std::string expectIdent(const char* what) {
    if (lex_.peek().kind != Tok::Ident) fail({what});
    return lex_.next().text;
  }

  void expect(Tok k, const char* what) {
    if (lex_.peek().kind != k) fail({what});
    lex_.next();
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    const Token& t = lex_.peek();
    throw ParseError(t.line, t.column, std::move(expected), t.text);
  }

  Lexer lex_;
};

}  // namespace

ParseError::ParseError(int line, int column, std::vector<std::string> expected, const std::string& found)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": expected " +
                         joinExpected(expected) + ", found '" + found + "'"),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

Term parseTerm(std::string_view text) {
  Parser p(text);
  Term m = p.term();
  p.expectEnd();
  return m;
}

Type parseType(std::string_view text) {
  Parser p(text);
  Type t = p.type();
  p.expectEnd();
  return t;
}

TermSeq parseTermSeq(std::string_view text) {
  Parser p(text);
  return p.seq();
}

ParsedJudgment parseJudgment(std::string_view text) {
  Parser p(text);
  return p.judgment();
}

}  // namespace lambdamu
