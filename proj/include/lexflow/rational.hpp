#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "lexflow/error.hpp"

namespace lexflow {

using BigInt = mpz_class;

/// Exact rational number, always held in lowest terms with a positive
/// denominator. Thin value wrapper over GMP's mpq_class.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : q_(static_cast<long>(value)) {}  // NOLINT(implicit)
  explicit Rational(const BigInt& integer) : q_(integer) {}

  Rational(const BigInt& numerator, const BigInt& denominator) {
    if (denominator == 0) detail::fail(ErrorKind::Parse, "zero denominator");
    q_ = mpq_class(numerator, denominator);
    q_.canonicalize();
  }

  static Rational from_mpq(mpq_class q) {
    Rational r;
    r.q_ = std::move(q);
    r.q_.canonicalize();
    return r;
  }

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  BigInt floor() const {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return out;
  }

  Rational operator-() const { return from_mpq(-q_); }
  Rational abs() const { return from_mpq(::abs(q_)); }
  Rational inverse() const {
    if (is_zero()) detail::fail(ErrorKind::Internal, "inverse of zero");
    return from_mpq(1 / q_);
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) detail::fail(ErrorKind::Internal, "division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "p/q" in lowest terms, or "p" when the denominator is 1.
  std::string to_string() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  /// Decimal rendering with `places` fractional digits, rounded half to even.
  std::string to_decimal(unsigned places) const {
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    const BigInt scaled_num = q_.get_num() * scale;
    const BigInt& den = q_.get_den();
    BigInt quot, rem;
    mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), scaled_num.get_mpz_t(), den.get_mpz_t());
    // rem in [0, den): round half to even on the floor quotient.
    const int half_cmp = cmp(BigInt(rem * 2), den);
    if (half_cmp > 0 || (half_cmp == 0 && mpz_odd_p(quot.get_mpz_t()))) quot += 1;

    const bool negative = quot < 0;
    BigInt magnitude = negative ? BigInt(-quot) : quot;
    std::string digits = magnitude.get_str();
    if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
    std::string out = negative ? "-" : "";
    out += digits.substr(0, digits.size() - places);
    if (places > 0) out += "." + digits.substr(digits.size() - places);
    return out;
  }

  /// Parses integers ("-3"), fractions ("4/3") and finite decimals ("1.25").
  static std::optional<Rational> try_parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t pos = 0;
    bool negative = false;
    if (text[0] == '+' || text[0] == '-') {
      negative = text[0] == '-';
      pos = 1;
    }
    auto digits_at = [&](std::size_t from) {
      std::size_t end = from;
      while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
      return end;
    };
    const std::size_t int_end = digits_at(pos);
    if (int_end == pos) return std::nullopt;
    BigInt numerator(std::string(text.substr(pos, int_end - pos)), 10);
    BigInt denominator = 1;
    if (int_end == text.size()) {
      // integer
    } else if (text[int_end] == '/') {
      const std::size_t den_end = digits_at(int_end + 1);
      if (den_end == int_end + 1 || den_end != text.size()) return std::nullopt;
      denominator = BigInt(std::string(text.substr(int_end + 1, den_end - int_end - 1)), 10);
      if (denominator == 0) return std::nullopt;
    } else if (text[int_end] == '.') {
      const std::size_t frac_end = digits_at(int_end + 1);
      if (frac_end == int_end + 1 || frac_end != text.size()) return std::nullopt;
      const std::string frac(text.substr(int_end + 1, frac_end - int_end - 1));
      mpz_ui_pow_ui(denominator.get_mpz_t(), 10, frac.size());
      numerator = numerator * denominator + BigInt(frac, 10);
    } else {
      return std::nullopt;
    }
    if (negative) numerator = -numerator;
    return Rational(numerator, denominator);
  }

  static Rational parse(std::string_view text) {
    auto parsed = try_parse(text);
    if (!parsed) detail::fail(ErrorKind::Parse, "not a rational number: '" + std::string(text) + "'");
    return *parsed;
  }

 private:
  mpq_class q_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

/// Integer value of an exact rational known to be integral after scaling.
inline BigInt to_integer(const Rational& r) {
  if (!r.is_integer()) detail::fail(ErrorKind::Internal, "expected an integer, got " + r.to_string());
  return r.numerator();
}

}  // namespace lexflow
