#include "smith/field.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace smith {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::DegreeZero: return "DegreeZero";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::PrimeMismatch: return "PrimeMismatch";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::PrimeDoesNotDivideDet: return "PrimeDoesNotDivideDet";
    case ErrorCode::MultiplicityMismatch: return "MultiplicityMismatch";
    case ErrorCode::FactorSetMismatch: return "FactorSetMismatch";
    case ErrorCode::DivisibilityFailure: return "DivisibilityFailure";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BadFamilyParam: return "BadFamilyParam";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BadArgument: return "BadArgument";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rational::Rational(long n, long d) : v_(n, d) {
  if (d == 0) fail(ErrorCode::DivisionByZero, "zero denominator");
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational::Rational(const mpz_class& n, const mpz_class& d) : v_(n, d) {
  if (d == 0) fail(ErrorCode::DivisionByZero, "zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view num = s;
  std::string_view den = "1";
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den)) {
    fail(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  return Rational(n, d);
}

std::string Rational::str() const { return v_.get_str(10); }

std::size_t Rational::height() const {
  return std::max(mpz_sizeinbase(v_.get_num_mpz_t(), 2), mpz_sizeinbase(v_.get_den_mpz_t(), 2));
}

Rational Rational::inv() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
  return Rational(std::move(r));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
  v_ /= o.v_;
  return *this;
}

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) fail(ErrorCode::ParseError, "empty gaussian rational");
  if (s.back() != 'i') return {Rational::parse(s)};
  s.pop_back();
  // Split at the last sign that is not the leading character.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "0" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  return {Rational::parse(re_part), Rational::parse(im_part)};
}

std::string GaussianRational::str() const {
  if (im_.is_zero()) return re_.str();
  std::string out = re_.str();
  if (im_.sign() >= 0) out += '+';
  out += im_.str();
  out += 'i';
  return out;
}

std::size_t GaussianRational::height() const { return std::max(re_.height(), im_.height()); }

GaussianRational GaussianRational::inv() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  Rational norm = re_ * re_ + im_ * im_;
  return {re_ / norm, -im_ / norm};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }
std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

}  // namespace smith
