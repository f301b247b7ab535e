#include "parageo/expr.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>
#include <utility>

#include "parageo/chart.hpp"
#include "parageo/errors.hpp"

namespace parageo {

struct Expression::Node {
  Kind kind = Kind::kConstant;
  double value = 0.0;
  std::size_t index = 0;
  int exponent = 0;
  std::size_t bound = 0;
  Expression a{std::shared_ptr<const Node>{}};
  Expression b{std::shared_ptr<const Node>{}};
};

Expression::Expression() : Expression(constant(0.0)) {}

Expression::Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expression Expression::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kConstant;
  n->value = value;
  return Expression(std::move(n));
}

Expression Expression::coordinate(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kCoordinate;
  n->index = index;
  n->bound = index + 1;
  return Expression(std::move(n));
}

Expression Expression::binary(Kind kind, const Expression& a, const Expression& b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->a = a;
  n->b = b;
  n->bound = std::max(a.coordinate_bound(), b.coordinate_bound());
  return Expression(std::move(n));
}

Expression operator-(const Expression& a) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = Expression::Kind::kNegate;
  n->a = a;
  n->bound = a.coordinate_bound();
  return Expression(std::move(n));
}

Expression operator+(const Expression& a, const Expression& b) {
  return Expression::binary(Expression::Kind::kAdd, a, b);
}
Expression operator-(const Expression& a, const Expression& b) {
  return Expression::binary(Expression::Kind::kSubtract, a, b);
}
Expression operator*(const Expression& a, const Expression& b) {
  return Expression::binary(Expression::Kind::kMultiply, a, b);
}
Expression operator/(const Expression& a, const Expression& b) {
  return Expression::binary(Expression::Kind::kDivide, a, b);
}

Expression pow(const Expression& base, int exponent) {
  if (exponent < Expression::kMinExponent || exponent > Expression::kMaxExponent) {
    throw std::invalid_argument("exponent " + std::to_string(exponent) + " outside [-8, 8]");
  }
  auto n = std::make_shared<Expression::Node>();
  n->kind = Expression::Kind::kPower;
  n->a = base;
  n->exponent = exponent;
  n->bound = base.coordinate_bound();
  return Expression(std::move(n));
}

Expression::Kind Expression::kind() const noexcept { return node_->kind; }

double Expression::constant_value() const {
  if (node_->kind != Kind::kConstant) throw std::logic_error("not a constant node");
  return node_->value;
}

std::size_t Expression::coordinate_index() const {
  if (node_->kind != Kind::kCoordinate) throw std::logic_error("not a coordinate node");
  return node_->index;
}

int Expression::exponent() const {
  if (node_->kind != Kind::kPower) throw std::logic_error("not a power node");
  return node_->exponent;
}

const Expression& Expression::operand() const {
  if (node_->kind != Kind::kNegate && node_->kind != Kind::kPower) {
    throw std::logic_error("node has no single operand");
  }
  return node_->a;
}

const Expression& Expression::lhs() const {
  if (!node_->b.node_) throw std::logic_error("not a binary node");
  return node_->a;
}

const Expression& Expression::rhs() const {
  if (!node_->b.node_) throw std::logic_error("not a binary node");
  return node_->b;
}

std::size_t Expression::coordinate_bound() const noexcept { return node_->bound; }

bool operator==(const Expression& x, const Expression& y) {
  if (x.node_ == y.node_) return true;
  const auto& a = *x.node_;
  const auto& b = *y.node_;
  if (a.kind != b.kind) return false;
  using K = Expression::Kind;
  switch (a.kind) {
    case K::kConstant:
      return a.value == b.value;
    case K::kCoordinate:
      return a.index == b.index;
    case K::kNegate:
      return a.a == b.a;
    case K::kPower:
      return a.exponent == b.exponent && a.a == b.a;
    default:
      return a.a == b.a && a.b == b.b;
  }
}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> names) : text_(text), names_(names) {}

  Expression parse() {
    skip_ws();
    if (at_end()) throw ParseError("empty expression", pos_);
    Expression e = parse_sum();
    skip_ws();
    if (!at_end()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  // A parsed power-level item, remembering whether it was a bare numeric
  // literal (so that unary minus can fold into a negative constant).
  struct Item {
    Expression expr;
    bool bare_literal = false;
  };

  Expression parse_sum() {
    Expression lhs = parse_product();
    for (;;) {
      skip_ws();
      if (peek('+')) {
        ++pos_;
        lhs = lhs + parse_product();
      } else if (peek('-')) {
        ++pos_;
        lhs = lhs - parse_product();
      } else {
        return lhs;
      }
    }
  }

  Expression parse_product() {
    Expression lhs = parse_unary();
    for (;;) {
      skip_ws();
      if (peek('*')) {
        ++pos_;
        lhs = lhs * parse_unary();
      } else if (peek('/')) {
        ++pos_;
        lhs = lhs / parse_unary();
      } else {
        return lhs;
      }
    }
  }

  Expression parse_unary() {
    skip_ws();
    if (peek('-')) {
      ++pos_;
      skip_ws();
      if (peek('-')) return -parse_unary();
      Item item = parse_power();
      if (item.bare_literal) return Expression::constant(-item.expr.constant_value());
      return -item.expr;
    }
    return parse_power().expr;
  }

  Item parse_power() {
    Item base = parse_primary();
    skip_ws();
    if (!peek('^')) return base;
    ++pos_;
    const int k = parse_exponent();
    skip_ws();
    if (peek('^')) throw ParseError("chained exponent; use parentheses", pos_);
    return {pow(base.expr, k), false};
  }

  int parse_exponent() {
    skip_ws();
    bool paren = false;
    if (peek('(')) {
      paren = true;
      ++pos_;
      skip_ws();
    }
    const std::size_t start = pos_;
    bool negative = false;
    if (peek('-')) {
      negative = true;
      ++pos_;
      skip_ws();
    }
    if (at_end() || !is_digit(text_[pos_])) throw ParseError("expected integer exponent", pos_);
    long value = 0;
    while (!at_end() && is_digit(text_[pos_])) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1000) value = 1000;
      ++pos_;
    }
    if (!at_end() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
      throw ParseError("exponent must be an integer", pos_);
    }
    if (negative) value = -value;
    if (value < Expression::kMinExponent || value > Expression::kMaxExponent) {
      throw ParseError("exponent " + std::to_string(value) + " out of range [-8, 8]", start);
    }
    if (paren) {
      skip_ws();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
    }
    return static_cast<int>(value);
  }

  Item parse_primary() {
    skip_ws();
    if (at_end()) throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expression inner = parse_sum();
      skip_ws();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return {inner, false};
    }
    if (is_digit(c) || c == '.') return {parse_number(), true};
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (!at_end() && is_ident_char(text_[pos_])) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return {Expression::coordinate(i), false};
      }
      throw ParseError("unknown coordinate '" + std::string(name) + "'", start);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Expression parse_number() {
    const std::size_t start = pos_;
    while (!at_end() && is_digit(text_[pos_])) ++pos_;
    if (!at_end() && text_[pos_] == '.') {
      ++pos_;
      while (!at_end() && is_digit(text_[pos_])) ++pos_;
    }
    if (pos_ == start + 1 && text_[start] == '.') throw ParseError("malformed number", start);
    // Exponent part only when digits follow, so "2e" is not half a number.
    if (!at_end() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
      if (q < text_.size() && is_digit(text_[q])) {
        pos_ = q;
        while (!at_end() && is_digit(text_[pos_])) ++pos_;
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      throw ParseError("malformed number", start);
    }
    return Expression::constant(value);
  }

  void skip_ws() {
    while (!at_end() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                         text_[pos_] == '\r')) {
      ++pos_;
    }
  }
  bool at_end() const { return pos_ >= text_.size(); }
  bool peek(char c) const { return !at_end() && text_[pos_] == c; }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

constexpr int kPrecSum = 1;
constexpr int kPrecProduct = 2;
constexpr int kPrecUnary = 3;
constexpr int kPrecAtom = 5;

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string coordinate_name(std::size_t i, std::span<const std::string> names) {
  if (i < names.size()) return names[i];
  return "x" + std::to_string(i);
}

int precedence(const Expression& e) {
  using K = Expression::Kind;
  switch (e.kind()) {
    case K::kConstant:
      return std::signbit(e.constant_value()) ? kPrecUnary : kPrecAtom;
    case K::kCoordinate:
      return kPrecAtom;
    case K::kNegate:
      return kPrecUnary;
    case K::kPower:
      return kPrecAtom - 1;
    case K::kAdd:
    case K::kSubtract:
      return kPrecSum;
    case K::kMultiply:
    case K::kDivide:
      return kPrecProduct;
  }
  return kPrecAtom;
}

void print(const Expression& e, std::span<const std::string> names, int min_prec, std::string& out);

void print_wrapped(const Expression& e, std::span<const std::string> names, int min_prec,
                   std::string& out) {
  if (precedence(e) < min_prec) {
    out += '(';
    print(e, names, 0, out);
    out += ')';
  } else {
    print(e, names, min_prec, out);
  }
}

void print(const Expression& e, std::span<const std::string> names, int min_prec, std::string& out) {
  (void)min_prec;
  using K = Expression::Kind;
  switch (e.kind()) {
    case K::kConstant:
      out += format_number(e.constant_value());
      return;
    case K::kCoordinate:
      out += coordinate_name(e.coordinate_index(), names);
      return;
    case K::kNegate: {
      const Expression& a = e.operand();
      out += '-';
      // A bare non-negative literal after '-' would fold into a constant.
      if (a.kind() == K::kConstant && !std::signbit(a.constant_value())) {
        out += '(';
        print(a, names, 0, out);
        out += ')';
      } else {
        print_wrapped(a, names, kPrecUnary, out);
      }
      return;
    }
    case K::kPower:
      print_wrapped(e.operand(), names, kPrecAtom, out);
      out += '^';
      out += std::to_string(e.exponent());
      return;
    default: {
      const int p = precedence(e);
      print_wrapped(e.lhs(), names, p, out);
      switch (e.kind()) {
        case K::kAdd:
          out += " + ";
          break;
        case K::kSubtract:
          out += " - ";
          break;
        case K::kMultiply:
          out += '*';
          break;
        default:
          out += '/';
          break;
      }
      print_wrapped(e.rhs(), names, p + 1, out);
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Jet evaluation

constexpr double kDegeneracyFloor = 1e-12;

class JetEvaluator {
 public:
  JetEvaluator(std::span<const double> coords, std::span<const std::string> names)
      : coords_(coords), names_(names) {}

  Jet2 eval(const Expression& e) const {
    using K = Expression::Kind;
    const std::size_t n = coords_.size();
    switch (e.kind()) {
      case K::kConstant:
        return Jet2::constant(n, e.constant_value());
      case K::kCoordinate:
        return Jet2::variable(n, e.coordinate_index(), coords_[e.coordinate_index()]);
      case K::kNegate:
        return -eval(e.operand());
      case K::kAdd:
        return eval(e.lhs()) + eval(e.rhs());
      case K::kSubtract:
        return eval(e.lhs()) - eval(e.rhs());
      case K::kMultiply:
        return eval(e.lhs()) * eval(e.rhs());
      case K::kDivide: {
        Jet2 num = eval(e.lhs());
        Jet2 den = eval(e.rhs());
        if (std::abs(den.value()) < kDegeneracyFloor * (1.0 + std::abs(num.value()))) {
          throw EvalError("division by zero in '" + to_string(e.rhs(), names_) + "'");
        }
        return divide(num, den);
      }
      case K::kPower: {
        Jet2 base = eval(e.operand());
        if (e.exponent() < 0 && std::abs(base.value()) < kDegeneracyFloor * 2.0) {
          throw EvalError("division by zero in '" + to_string(e, names_) + "'");
        }
        return ipow(base, e.exponent());
      }
    }
    throw std::logic_error("unreachable expression kind");
  }

 private:
  std::span<const double> coords_;
  std::span<const std::string> names_;
};

}  // namespace

Expression parse_expression(std::string_view text, std::span<const std::string> coordinate_names) {
  return Parser(text, coordinate_names).parse();
}

Expression parse_expression(std::string_view text, const Chart& chart) {
  return parse_expression(text, chart.coordinate_names());
}

std::string to_string(const Expression& e, std::span<const std::string> coordinate_names) {
  std::string out;
  print(e, coordinate_names, 0, out);
  return out;
}

Jet2 eval_jet2(const Expression& e, std::span<const double> coords,
               std::span<const std::string> coordinate_names) {
  if (coords.size() > kMaxDim) throw DomainError("chart dimension exceeds jet capacity");
  if (e.coordinate_bound() > coords.size()) {
    throw DomainError("expression references coordinate beyond point dimension");
  }
  return JetEvaluator(coords, coordinate_names).eval(e);
}

Jet2 eval_jet2(const Expression& e, const Point& p) {
  return eval_jet2(e, p.coordinates(), p.chart().coordinate_names());
}

}  // namespace parageo
