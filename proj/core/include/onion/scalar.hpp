#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

namespace onion {

/// Relative zero-test threshold used by every floating-point decision.
/// Exact fields ignore it.
struct Tolerance {
  double eps = 1e-9;
};

/// Complex number with arbitrary-precision rational parts. Arithmetic is
/// closed and exact; gmpxx keeps both parts canonical.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  /// Parts are canonicalized: GMP arithmetic and equality require it.
  GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  const mpq_class& real() const noexcept { return re_; }
  const mpq_class& imag() const noexcept { return im_; }

  bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational conj() const { return {re_, -im_}; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Builds the exact rational value of a double pair (every finite double
  /// is a dyadic rational).
  static GaussianRational from_complex(std::complex<double> z);

 private:
  mpq_class re_;
  mpq_class im_;
};

/// "p/q" with q >= 1 always written, e.g. "1/1", "-3/4".
std::string rational_to_string(const mpq_class& q);
/// Accepts "p/q" or a bare integer "p". Throws Error{ParseError}.
mpq_class rational_from_string(std::string_view text);

std::string to_string(const GaussianRational& z);
std::string to_string(std::complex<double> z);

template <class S>
struct FieldTraits;

template <>
struct FieldTraits<GaussianRational> {
  static constexpr bool exact = true;
  using Real = mpq_class;

  static GaussianRational from_int(long v) { return GaussianRational(v); }
  static GaussianRational from_real(const Real& r) { return GaussianRational(r); }
  static double magnitude(const GaussianRational& z) { return std::abs(z.to_complex()); }
  static bool is_zero(const GaussianRational& z, double /*scale*/, Tolerance /*tol*/) {
    return z.is_zero();
  }
  static GaussianRational conj(const GaussianRational& z) { return z.conj(); }
  static Real norm(const GaussianRational& z) { return z.norm(); }
  static std::complex<double> to_complex(const GaussianRational& z) { return z.to_complex(); }
};

template <>
struct FieldTraits<std::complex<double>> {
  static constexpr bool exact = false;
  using Real = double;

  static std::complex<double> from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static std::complex<double> from_real(Real r) { return {r, 0.0}; }
  static double magnitude(std::complex<double> z) { return std::abs(z); }
  /// |z| <= eps * scale; a zero scale only accepts an exact zero.
  static bool is_zero(std::complex<double> z, double scale, Tolerance tol) {
    return std::abs(z) <= tol.eps * scale;
  }
  static std::complex<double> conj(std::complex<double> z) { return std::conj(z); }
  static Real norm(std::complex<double> z) { return std::norm(z); }
  static std::complex<double> to_complex(std::complex<double> z) { return z; }
};

template <class S>
concept Field = requires(const S a, const S b, double scale, Tolerance tol) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  { a == b } -> std::convertible_to<bool>;
  { FieldTraits<S>::from_int(1L) } -> std::convertible_to<S>;
  { FieldTraits<S>::is_zero(a, scale, tol) } -> std::convertible_to<bool>;
  { FieldTraits<S>::magnitude(a) } -> std::convertible_to<double>;
  { FieldTraits<S>::to_complex(a) } -> std::convertible_to<std::complex<double>>;
};

using Exact = GaussianRational;
using Float = std::complex<double>;

template <Field S>
S power(S base, unsigned exponent) {
  S result = FieldTraits<S>::from_int(1);
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

/// Lossy conversion between fields (exact -> float, float -> exact dyadic).
template <Field To, Field From>
To field_cast(const From& v) {
  if constexpr (std::same_as<To, From>) {
    return v;
  } else if constexpr (std::same_as<To, Float>) {
    return FieldTraits<From>::to_complex(v);
  } else if constexpr (std::same_as<To, Exact> && std::same_as<From, Float>) {
    return GaussianRational::from_complex(v);
  } else {
    return To(v);
  }
}

}  // namespace onion
