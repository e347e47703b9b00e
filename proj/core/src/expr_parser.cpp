#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "backlund/errors.hpp"
#include "backlund/expr.hpp"

namespace backlund {
namespace {

class Parser {
 public:
  Parser(std::string_view text, const NamedFunctions& functions) : text_(text), functions_(functions) {}

  Expr parse() {
    Expr e = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream msg;
    msg << "expression \"" << text_ << "\" at offset " << pos_ << ": " << what;
    raise(ErrorKind::InvalidInput, msg.str());
  }

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

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expression() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + term();
      } else if (accept('-')) {
        lhs = lhs - term();
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * unary();
      } else if (accept('/')) {
        lhs = lhs / unary();
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) return pow(base, unary());
    return base;
  }

  Expr number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return Expr(value);
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (accept('(')) {
      Expr inner = expression();
      expect(')');
      return inner;
    }
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_') fail("unexpected '" + std::string(1, c) + "'");

    const std::string name = identifier();
    if (name == "z") return Expr::variable();
    if (name == "pi") return Expr(std::numbers::pi);
    if (name == "e") return Expr(std::numbers::e);

    expect('(');
    Expr arg = expression();
    if (name == "root") {
      expect(',');
      Expr index = expression();
      expect(')');
      if (index.depends_on_variable()) fail("root index must be constant");
      const double q = index(0.0);
      if (q != std::floor(q) || q <= 0 || static_cast<long long>(q) % 2 == 0) fail("root index must be a positive odd integer");
      return odd_root(arg, static_cast<int>(q));
    }
    expect(')');
    if (name == "exp") return exp(arg);
    if (name == "ln" || name == "log") return log(arg);
    if (name == "sin") return sin(arg);
    if (name == "cos") return cos(arg);
    if (name == "sqrt") return sqrt(arg);
    if (auto it = functions_.find(name); it != functions_.end()) return Expr::named(name, it->second, arg);
    fail("unknown function '" + name + "'");
  }

  std::string_view text_;
  const NamedFunctions& functions_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, const NamedFunctions& functions) {
  return Parser(text, functions).parse();
}

}  // namespace backlund
