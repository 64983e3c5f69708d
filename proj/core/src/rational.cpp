#include "toda/numeric/rational.hpp"

#include <cctype>

#include "toda/errors.hpp"

namespace toda::numeric {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void reject(std::string_view text) {
  throw ParseError("not a rational (expected p/q or terminating decimal): '" +
                   std::string(text) + "'");
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rational Rational::from_integers(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  return Rational(mpq_class(num, den));
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) reject(text);

  mpq_class value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) reject(text);
    mpz_class d{std::string(den), 10};
    if (d == 0) throw DivisionByZero("rational with zero denominator: '" + std::string(text) + "'");
    value = mpq_class(mpz_class(std::string(num), 10), d);
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) reject(text);
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string_view int_part = s;
    std::string_view frac_part;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      int_part = s.substr(0, dot);
      frac_part = s.substr(dot + 1);
      if (!frac_part.empty() && !all_digits(frac_part)) reject(text);
    }
    if (int_part.empty() && frac_part.empty()) reject(text);
    if (!int_part.empty() && !all_digits(int_part)) reject(text);
    std::string digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
    mpz_class mantissa{digits, 10};
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    value = exponent < 0 ? mpq_class(mantissa, scale) : mpq_class(mantissa * scale);
  }
  value.canonicalize();
  if (negative) value = -value;
  return Rational(value);
}

std::optional<Rational> Rational::exact_sqrt() const {
  if (sign() < 0) return std::nullopt;
  const mpz_class& num = q_.get_num();
  const mpz_class& den = q_.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return from_integers(rn, rd);
}

std::string Rational::to_fraction() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::to_string() const {
  return is_integer() ? q_.get_num().get_str() : to_fraction();
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero("rational division by zero");
  q_ /= o.q_;
  return *this;
}

SquareSplit split_square(const mpz_class& n) {
  SquareSplit out{1, n};
  if (n <= 0) return out;
  // Pull out the square part of small primes; anything left is checked whole.
  for (unsigned long p = 2; p < 10000; p += (p == 2 ? 1 : 2)) {
    const mpz_class pp = static_cast<unsigned long>(p * p);
    if (pp > out.rest) break;
    while (mpz_divisible_p(out.rest.get_mpz_t(), pp.get_mpz_t())) {
      out.rest /= pp;
      out.root *= p;
    }
  }
  if (mpz_perfect_square_p(out.rest.get_mpz_t())) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), out.rest.get_mpz_t());
    out.root *= r;
    out.rest = 1;
  }
  return out;
}

}  // namespace toda::numeric
