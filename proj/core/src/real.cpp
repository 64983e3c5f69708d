#include "toda/numeric/real.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <utility>
#include <vector>

#include "toda/errors.hpp"

namespace toda::numeric {

namespace {

ExprPtr make_leaf(const Rational& value) {
  auto node = std::make_shared<ExprNode>();
  node->op = ExprOp::Leaf;
  node->value = value;
  return node;
}

ExprPtr make_node(ExprOp op, ExprPtr lhs, ExprPtr rhs = nullptr) {
  auto node = std::make_shared<ExprNode>();
  node->op = op;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

bool is_exactly(const RealScalar& x, long v) { return x.is_rational() && *x.exact() == Rational(v); }

/// Folds a rational into a leading constant: (c +- x) + r -> (c + r) +- x.
ExprPtr fold_constant(const ExprPtr& node, const Rational& r) {
  if ((node->op == ExprOp::Add || node->op == ExprOp::Sub) && node->lhs->op == ExprOp::Leaf) {
    const Rational c = node->lhs->value + r;
    if (c.is_zero()) return node->op == ExprOp::Add ? node->rhs : make_node(ExprOp::Neg, node->rhs);
    return make_node(node->op, make_leaf(c), node->rhs);
  }
  return make_node(ExprOp::Add, node, make_leaf(r));
}

/// A copy of x whose enclosure excludes zero, or nullopt when x cannot be
/// separated from zero at max_precision.
std::optional<RealScalar> separate_from_zero(const RealScalar& x, mpfr_prec_t max_precision) {
  if (x.is_rational()) {
    if (x.exact()->is_zero()) return std::nullopt;
    return x;
  }
  RealScalar current = x;
  mpfr_prec_t p = std::max<mpfr_prec_t>(64, current.precision());
  while (true) {
    if (!current.enclosure().contains_zero()) return current;
    if (p >= max_precision) return std::nullopt;
    p = std::min<mpfr_prec_t>(2 * p, max_precision);
    current = current.refine(p);
  }
}

int precedence(const ExprNode& node) {
  switch (node.op) {
    case ExprOp::Leaf:
      if (node.value.sign() < 0) return 3;
      return node.value.is_integer() ? 4 : 2;
    case ExprOp::Add:
    case ExprOp::Sub:
      return 1;
    case ExprOp::Mul:
    case ExprOp::Div:
      return 2;
    case ExprOp::Neg:
      return 3;
    case ExprOp::Sqrt:
      return 4;
  }
  return 4;
}

std::string render_infix(const ExprNode& node);

std::string wrap(const ExprNode& child, int min_precedence) {
  std::string s = render_infix(child);
  return precedence(child) < min_precedence ? "(" + s + ")" : s;
}

std::string render_infix(const ExprNode& node) {
  switch (node.op) {
    case ExprOp::Leaf:
      return node.value.to_string();
    case ExprOp::Add:
      return wrap(*node.lhs, 1) + " + " + wrap(*node.rhs, 2);
    case ExprOp::Sub:
      return wrap(*node.lhs, 1) + " - " + wrap(*node.rhs, 2);
    case ExprOp::Mul:
      if (node.rhs->op == ExprOp::Leaf && node.rhs->value.sign() > 0 &&
          node.rhs->value.numerator() == 1) {
        return wrap(*node.lhs, 2) + "/" + node.rhs->value.denominator().get_str();
      }
      return wrap(*node.lhs, 2) + "*" + wrap(*node.rhs, 3);
    case ExprOp::Div:
      return wrap(*node.lhs, 2) + "/" + wrap(*node.rhs, 3);
    case ExprOp::Neg:
      return "-" + wrap(*node.lhs, 4);
    case ExprOp::Sqrt:
      return "sqrt(" + render_infix(*node.lhs) + ")";
  }
  return {};
}

std::string render_prefix(const ExprNode& node) {
  switch (node.op) {
    case ExprOp::Leaf:
      return node.value.to_string();
    case ExprOp::Add:
      return "(+ " + render_prefix(*node.lhs) + " " + render_prefix(*node.rhs) + ")";
    case ExprOp::Sub:
      return "(- " + render_prefix(*node.lhs) + " " + render_prefix(*node.rhs) + ")";
    case ExprOp::Mul:
      return "(* " + render_prefix(*node.lhs) + " " + render_prefix(*node.rhs) + ")";
    case ExprOp::Div:
      return "(/ " + render_prefix(*node.lhs) + " " + render_prefix(*node.rhs) + ")";
    case ExprOp::Neg:
      return "(neg " + render_prefix(*node.lhs) + ")";
    case ExprOp::Sqrt:
      return "(sqrt " + render_prefix(*node.lhs) + ")";
  }
  return {};
}

class Evaluator {
 public:
  explicit Evaluator(mpfr_prec_t bits) : bits_(bits) {}

  const DyadicInterval& eval(const ExprNode& node) {
    if (auto it = memo_.find(&node); it != memo_.end()) return it->second;
    DyadicInterval value = compute(node);
    return memo_.emplace(&node, std::move(value)).first->second;
  }

 private:
  DyadicInterval compute(const ExprNode& node) {
    switch (node.op) {
      case ExprOp::Leaf:
        return DyadicInterval::point(node.value, bits_);
      case ExprOp::Add:
        return eval(*node.lhs) + eval(*node.rhs);
      case ExprOp::Sub:
        return eval(*node.lhs) - eval(*node.rhs);
      case ExprOp::Mul:
        return eval(*node.lhs) * eval(*node.rhs);
      case ExprOp::Div:
        return eval(*node.lhs) / eval(*node.rhs);
      case ExprOp::Neg:
        return -eval(*node.lhs);
      case ExprOp::Sqrt:
        return eval(*node.lhs).sqrt_nonneg();
    }
    return DyadicInterval::entire(bits_);
  }

  mpfr_prec_t bits_;
  std::unordered_map<const ExprNode*, DyadicInterval> memo_;
};

class PrefixParser {
 public:
  explicit PrefixParser(std::string_view text) : text_(text) {}

  RealScalar parse_all() {
    RealScalar value = parse();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("bad expression '" + std::string(text_) + "': " + why);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view atom() {
    skip_space();
    const size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail("expected atom");
    return text_.substr(start, pos_ - start);
  }

  RealScalar parse() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end");
    if (text_[pos_] != '(') return RealScalar(Rational::parse(atom()));
    ++pos_;
    const std::string_view op = atom();
    RealScalar result;
    if (op == "neg") {
      result = -parse();
    } else if (op == "sqrt") {
      result = sqrt(parse());
    } else if (op == "+" || op == "-" || op == "*" || op == "/") {
      RealScalar lhs = parse();
      RealScalar rhs = parse();
      switch (op.front()) {
        case '+': result = lhs + rhs; break;
        case '-': result = lhs - rhs; break;
        case '*': result = lhs * rhs; break;
        default: result = lhs / rhs; break;
      }
    } else {
      fail("unknown operator '" + std::string(op) + "'");
    }
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
    ++pos_;
    return result;
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

Ordering reverse(Ordering o) {
  switch (o) {
    case Ordering::LT: return Ordering::GT;
    case Ordering::GT: return Ordering::LT;
    case Ordering::EQ: return Ordering::EQ;
  }
  return o;
}

const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::LT: return "LT";
    case Ordering::GT: return "GT";
    case Ordering::EQ: return "EQ";
  }
  return "?";
}

RealScalar::RealScalar(const Rational& value)
    : expr_(make_leaf(value)),
      enclosure_(DyadicInterval::point(value, kDefaultPrecision)),
      exact_(value) {}

RealScalar::RealScalar(ExprPtr expr, DyadicInterval enclosure, std::optional<Rational> exact)
    : expr_(std::move(expr)), enclosure_(std::move(enclosure)), exact_(std::move(exact)) {}

RealScalar RealScalar::from_node(ExprPtr node, DyadicInterval enclosure) {
  return RealScalar(std::move(node), std::move(enclosure), std::nullopt);
}

DyadicInterval evaluate(const ExprPtr& expr, mpfr_prec_t bits) {
  Evaluator evaluator(bits);
  return evaluator.eval(*expr);
}

RealScalar RealScalar::refine(mpfr_prec_t bits) const {
  if (!is_rational() && bits <= precision() && enclosure_.is_bounded()) return *this;
  if (is_rational()) {
    const mpfr_prec_t p = std::max(bits, precision());
    return RealScalar(expr_, DyadicInterval::point(*exact_, p).intersect(enclosure_), exact_);
  }
  mpfr_prec_t working = bits + 32;
  DyadicInterval best = evaluate(expr_, working);
  for (int attempt = 0; attempt < 6; ++attempt) {
    const long scale = std::max<long>(0, best.magnitude_log2());
    if (best.is_bounded() && best.width_log2() <= 2 - static_cast<long>(bits) + scale) break;
    working *= 2;
    best = evaluate(expr_, working);
  }
  if (!enclosure_.is_bounded()) return RealScalar(expr_, std::move(best), std::nullopt);
  return RealScalar(expr_, best.intersect(enclosure_), std::nullopt);
}

std::string RealScalar::decimal(int digits) const {
  const auto bits = static_cast<mpfr_prec_t>(digits * 3.33) + 24;
  return refine(std::max(bits, precision())).enclosure().mid_decimal(digits);
}

std::string RealScalar::to_string() const { return render_infix(*expr_); }

std::string RealScalar::to_prefix() const { return render_prefix(*expr_); }

RealScalar RealScalar::parse_prefix(std::string_view text) { return PrefixParser(text).parse_all(); }

RealScalar operator+(const RealScalar& a, const RealScalar& b) {
  if (a.is_rational() && b.is_rational()) return RealScalar(*a.exact() + *b.exact());
  if (is_exactly(a, 0)) return b;
  if (is_exactly(b, 0)) return a;
  if (b.is_rational()) return RealScalar::from_node(fold_constant(a.expr(), *b.exact()),
                                                    a.enclosure() + b.enclosure());
  return RealScalar::from_node(make_node(ExprOp::Add, a.expr(), b.expr()),
                               a.enclosure() + b.enclosure());
}

RealScalar operator-(const RealScalar& a, const RealScalar& b) {
  if (a.is_rational() && b.is_rational()) return RealScalar(*a.exact() - *b.exact());
  if (is_exactly(b, 0)) return a;
  if (is_exactly(a, 0)) return -b;
  if (b.is_rational()) return RealScalar::from_node(fold_constant(a.expr(), -*b.exact()),
                                                    a.enclosure() - b.enclosure());
  return RealScalar::from_node(make_node(ExprOp::Sub, a.expr(), b.expr()),
                               a.enclosure() - b.enclosure());
}

RealScalar operator*(const RealScalar& a, const RealScalar& b) {
  if (a.is_rational() && b.is_rational()) return RealScalar(*a.exact() * *b.exact());
  if (is_exactly(a, 0) || is_exactly(b, 0)) return RealScalar(0);
  if (is_exactly(a, 1)) return b;
  if (is_exactly(b, 1)) return a;
  return RealScalar::from_node(make_node(ExprOp::Mul, a.expr(), b.expr()),
                               a.enclosure() * b.enclosure());
}

RealScalar operator/(const RealScalar& a, const RealScalar& b) {
  if (is_exactly(b, 0)) throw DivisionByZero("division by exact zero");
  if (a.is_rational() && b.is_rational()) return RealScalar(*a.exact() / *b.exact());
  if (is_exactly(b, 1)) return a;
  if (is_exactly(a, 0)) return RealScalar(0);
  const auto divisor = separate_from_zero(b, CompareOptions{}.max_precision);
  if (!divisor) throw AmbiguousSign("cannot certify divisor nonzero: " + b.to_string());
  return RealScalar::from_node(make_node(ExprOp::Div, a.expr(), b.expr()),
                               a.enclosure() / divisor->enclosure());
}

RealScalar RealScalar::operator-() const {
  if (is_rational()) return RealScalar(-*exact_);
  if (expr_->op == ExprOp::Neg) {
    return RealScalar(expr_->lhs, -enclosure_, std::nullopt);
  }
  return from_node(make_node(ExprOp::Neg, expr_), -enclosure_);
}

RealScalar sqrt(const RealScalar& a) {
  if (a.is_rational()) {
    const Rational& v = *a.exact();
    if (v.sign() < 0) throw NegativeRadicand("sqrt of negative rational " + v.to_string());
    if (auto root = v.exact_sqrt()) return RealScalar(*root);
    // sqrt(p/q) = sqrt(p*q)/q = (k/q) sqrt(m) with p*q = k^2 m.
    const SquareSplit split = split_square(v.numerator() * v.denominator());
    const Rational radicand = Rational::from_integers(split.rest, 1);
    const Rational coefficient = Rational::from_integers(split.root, v.denominator());
    RealScalar root = RealScalar::from_node(
        make_node(ExprOp::Sqrt, make_leaf(radicand)),
        DyadicInterval::point(radicand, kDefaultPrecision).sqrt_nonneg());
    return RealScalar(coefficient) * root;
  }
  const auto radicand = separate_from_zero(a, CompareOptions{}.max_precision);
  if (!radicand) throw AmbiguousSign("cannot certify radicand sign: " + a.to_string());
  if (radicand->enclosure().certified_negative()) {
    throw NegativeRadicand("sqrt of negative value " + a.to_string());
  }
  return RealScalar::from_node(make_node(ExprOp::Sqrt, a.expr()),
                               radicand->enclosure().sqrt_nonneg());
}

Comparison compare_detailed(const RealScalar& a, const RealScalar& b,
                            const CompareOptions& options) {
  auto exact_verdict = [](int s) {
    return Comparison{s < 0 ? Ordering::LT : (s > 0 ? Ordering::GT : Ordering::EQ), true, s == 0};
  };
  if (a.is_rational() && b.is_rational()) return exact_verdict((*a.exact() - *b.exact()).sign());
  if (a.expr() == b.expr()) return {Ordering::EQ, true, true};
  RealScalar diff = a - b;
  if (diff.is_rational()) return exact_verdict(diff.exact()->sign());
  mpfr_prec_t p = std::max<mpfr_prec_t>(64, diff.precision());
  while (true) {
    if (diff.enclosure().certified_positive()) return {Ordering::GT, true, false};
    if (diff.enclosure().certified_negative()) return {Ordering::LT, true, false};
    if (p >= options.max_precision) break;
    p = std::min<mpfr_prec_t>(2 * p, options.max_precision);
    diff = diff.refine(p);
  }
  const bool small = diff.enclosure().is_bounded() &&
                     diff.enclosure().magnitude_log2() <= options.eq_threshold_log2;
  return {Ordering::EQ, false, small};
}

Ordering compare(const RealScalar& a, const RealScalar& b, const CompareOptions& options) {
  return compare_detailed(a, b, options).verdict;
}

Ordering sign(const RealScalar& a, const CompareOptions& options) {
  return compare(a, RealScalar(0), options);
}

}  // namespace toda::numeric
