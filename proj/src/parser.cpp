#include "acsv/parser.hpp"

#include <cctype>

#include "acsv/error.hpp"

namespace acsv {

namespace {

enum class Tok { integer, name, plus, minus, star, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::size_t start = i_;
    if (i_ >= s_.size()) {
      cur_ = {Tok::end, "", start};
      return;
    }
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      cur_ = {Tok::integer, s_.substr(start, i_ - start), start};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        ++i_;
      cur_ = {Tok::name, s_.substr(start, i_ - start), start};
      return;
    }
    ++i_;
    switch (c) {
      case '+': cur_ = {Tok::plus, "+", start}; return;
      case '-': cur_ = {Tok::minus, "-", start}; return;
      case '*': cur_ = {Tok::star, "*", start}; return;
      case '^': cur_ = {Tok::caret, "^", start}; return;
      case '(': cur_ = {Tok::lparen, "(", start}; return;
      case ')': cur_ = {Tok::rparen, ")", start}; return;
      default: throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }

  const std::string& s_;
  std::size_t i_ = 0;
  Token cur_;
};

class PolyParser {
 public:
  PolyParser(const std::string& text, const std::vector<std::string>& vars)
      : lex_(text), vars_(vars) {}

  MultiPoly parse() {
    MultiPoly p = expression();
    const Token& t = lex_.peek();
    if (t.kind != Tok::end) throw ParseError("unexpected token '" + t.text + "'", t.pos);
    return p;
  }

 private:
  MultiPoly expression() {
    MultiPoly acc = term();
    while (lex_.peek().kind == Tok::plus || lex_.peek().kind == Tok::minus) {
      Token op = lex_.take();
      MultiPoly t = term();
      acc = op.kind == Tok::plus ? acc + t : acc - t;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (lex_.peek().kind == Tok::star) {
      lex_.take();
      acc = acc * factor();
    }
    return acc;
  }

  MultiPoly factor() {
    MultiPoly b = base();
    if (lex_.peek().kind == Tok::caret) {
      lex_.take();
      Token e = lex_.take();
      if (e.kind != Tok::integer) throw ParseError("expected exponent", e.pos);
      unsigned long v;
      try {
        v = std::stoul(e.text);
        if (v > 0xffffffffUL) throw std::out_of_range("");
      } catch (const std::exception&) {
        throw ParseError("exponent out of range", e.pos);
      }
      b = b.pow(v);
    }
    return b;
  }

  MultiPoly base() {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::integer:
        return MultiPoly::constant(vars_, Int(t.text));
      case Tok::minus: {
        // A sign is part of an integer literal, not a unary operator.
        Token d = lex_.take();
        if (d.kind != Tok::integer)
          throw ParseError("expected digits after sign", d.pos);
        return MultiPoly::constant(vars_, Int("-" + d.text));
      }
      case Tok::name: {
        for (std::size_t i = 0; i < vars_.size(); ++i) {
          if (vars_[i] == t.text) return MultiPoly::variable(vars_, i);
        }
        throw ParseError("unknown variable '" + t.text + "'", t.pos);
      }
      case Tok::lparen: {
        MultiPoly p = expression();
        Token close = lex_.take();
        if (close.kind != Tok::rparen) throw ParseError("expected ')'", close.pos);
        return p;
      }
      default:
        throw ParseError("expected integer, variable, or '('", t.pos);
    }
  }

  Lexer lex_;
  const std::vector<std::string>& vars_;
};

}  // namespace

MultiPoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars) {
  return PolyParser(text, vars).parse();
}

RationalFunctionInput parse_rational_function(const std::string& text,
                                              const std::vector<std::string>& vars) {
  long depth = 0;
  std::vector<std::size_t> slashes;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    else if (c == '/') {
      if (depth > 0) throw ParseError("nested division is not supported", i);
      slashes.push_back(i);
    }
    if (depth < 0) throw ParseError("unbalanced ')'", i);
  }
  if (slashes.size() > 1) throw ParseError("more than one division", slashes[1]);

  RationalFunctionInput in;
  if (slashes.empty()) {
    in.numerator = parse_polynomial(text, vars);
    in.denominator = MultiPoly::constant(vars, 1);
  } else {
    std::size_t cut = slashes[0];
    in.numerator = parse_polynomial(text.substr(0, cut), vars);
    in.denominator = parse_polynomial(text.substr(cut + 1), vars);
    if (in.denominator.is_zero())
      throw ParseError("denominator is the zero polynomial", cut + 1);
  }
  return in;
}

}  // namespace acsv
