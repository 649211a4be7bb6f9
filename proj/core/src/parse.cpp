// Recursive-descent parser for the ASCII polynomial grammar:
//   expr  := term (('+' | '-') term)*
//   term  := unary ('*' unary)*
//   unary := ('-' | '+') unary | power
//   power := atom ('^' INT)?
//   atom  := INT ('/' INT)? | IDENT | '(' expr ')'

#include <cctype>
#include <limits>

#include "wres/algebra.hpp"

namespace wres {
namespace {

class Parser {
 public:
  Parser(RingPtr ring, std::string_view text) : ring_(std::move(ring)), text_(text) {}

  Poly run() {
    Poly p = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    while (accept('*')) acc *= unary();
    return acc;
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (accept('^')) {
      skip_space();
      const auto start = pos_;
      auto digits = integer_literal();
      if (digits.empty()) throw ParseError("expected exponent", start);
      BigInt e(digits);
      if (e > std::numeric_limits<unsigned>::max()) throw ParseError("exponent too large", start);
      return base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  std::string integer_literal() {
    const auto start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Poly atom() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      BigInt num(integer_literal());
      BigInt den = 1;
      const auto save = pos_;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_space();
        const auto at = pos_;
        auto d = integer_literal();
        if (d.empty()) throw ParseError("expected denominator", at);
        den = BigInt(d);
        if (den == 0) throw ParseError("zero denominator", at);
      } else {
        pos_ = save;
      }
      return Poly::constant(ring_, make_rat(num, den));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const auto start = pos_;
      while (pos_ < text_.size()) {
        const char d = text_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'') {
          ++pos_;
        } else {
          break;
        }
      }
      const auto name = text_.substr(start, pos_ - start);
      const auto index = ring_->index_of(name);
      if (!index) throw ParseError("unknown variable '" + std::string(name) + "'", start);
      return Poly::variable(ring_, *index);
    }
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      skip_space();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  RingPtr ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(RingPtr ring, std::string_view text) { return Parser(std::move(ring), text).run(); }

}  // namespace wres
