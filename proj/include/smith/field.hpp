#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "smith/error.hpp"

namespace smith {

/// Exact rational number in lowest terms with a positive denominator.
/// Zero is stored as 0/1, so structural equality is value equality.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long n, long d);
  explicit Rational(mpq_class v);
  Rational(const mpz_class& n, const mpz_class& d);

  static Rational zero() { return Rational(); }
  static Rational one() { return Rational(1); }

  /// Accepts `[-]digits[/digits]`; throws ParseError otherwise.
  static Rational parse(std::string_view text);
  std::string str() const;

  const mpq_class& value() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  /// Bit length of max(|num|, den); used for pivot tie-breaking.
  std::size_t height() const;

  Rational inv() const;
  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

/// Element of Q + iQ, componentwise canonical.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long n) : re_(n) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return {1}; }
  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  /// Accepts `a`, `bi`, `a+bi`, `a-bi` with rational parts.
  static GaussianRational parse(std::string_view text);
  std::string str() const;

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return re_.is_one() && im_.is_zero(); }
  std::size_t height() const;

  GaussianRational conj() const { return {re_, -im_}; }
  GaussianRational inv() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inv(); }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
  // Lexicographic (re, im); only used to put factor lists in a canonical order.
  friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
    if (auto c = a.re_ <=> b.re_; c != 0) return c;
    return a.im_ <=> b.im_;
  }

 private:
  Rational re_;
  Rational im_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);
std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

template <class F>
concept Field = std::regular<F> && std::totally_ordered<F> && std::constructible_from<F, long> &&
                requires(const F a, const F b, F m, std::string_view text) {
                  { a + b } -> std::same_as<F>;
                  { a - b } -> std::same_as<F>;
                  { a * b } -> std::same_as<F>;
                  { a / b } -> std::same_as<F>;
                  { -a } -> std::same_as<F>;
                  { m += a } -> std::same_as<F&>;
                  { m -= a } -> std::same_as<F&>;
                  { m *= a } -> std::same_as<F&>;
                  { a.inv() } -> std::same_as<F>;
                  { a.is_zero() } -> std::same_as<bool>;
                  { a.is_one() } -> std::same_as<bool>;
                  { a.height() } -> std::same_as<std::size_t>;
                  { a.str() } -> std::same_as<std::string>;
                  { F::parse(text) } -> std::same_as<F>;
                  { F::zero() } -> std::same_as<F>;
                  { F::one() } -> std::same_as<F>;
                };

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr std::string_view name = "Q";
};

template <>
struct FieldTraits<GaussianRational> {
  static constexpr std::string_view name = "QI";
};

static_assert(Field<Rational>);
static_assert(Field<GaussianRational>);

}  // namespace smith
