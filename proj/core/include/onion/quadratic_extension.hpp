#pragma once

#include <complex>
#include <optional>
#include <string>

#include "onion/scalar.hpp"

namespace onion {

/// Element a + b*sqrt(d) of the quadratic extension Q(i)(sqrt d) of the
/// Gaussian rationals. The radicand d is carried by every element whose
/// surd part is nonzero; mixing two different radicands is a logic error.
///
/// The caller guarantees d is not a square in Q(i) whenever a surd part is
/// formed, which makes the extension a field and division well defined.
class QuadraticExtension {
 public:
  QuadraticExtension() = default;
  QuadraticExtension(long v) : rational_(v) {}  // NOLINT(google-explicit-constructor)
  QuadraticExtension(GaussianRational a) : rational_(std::move(a)) {}  // NOLINT
  QuadraticExtension(GaussianRational a, GaussianRational b, GaussianRational radicand)
      : rational_(std::move(a)), surd_(std::move(b)), radicand_(std::move(radicand)) {
    normalize();
  }

  /// sqrt(d) itself.
  static QuadraticExtension sqrt_of(const GaussianRational& radicand) {
    return {GaussianRational(0), GaussianRational(1), radicand};
  }

  const GaussianRational& rational_part() const noexcept { return rational_; }
  const GaussianRational& surd_part() const noexcept { return surd_; }
  const std::optional<GaussianRational>& radicand() const noexcept { return radicand_; }

  bool is_zero() const noexcept { return rational_.is_zero() && surd_.is_zero(); }
  std::complex<double> to_complex() const;

  QuadraticExtension operator-() const;
  QuadraticExtension& operator+=(const QuadraticExtension& o);
  QuadraticExtension& operator-=(const QuadraticExtension& o);
  QuadraticExtension& operator*=(const QuadraticExtension& o);
  QuadraticExtension& operator/=(const QuadraticExtension& o);

  friend QuadraticExtension operator+(QuadraticExtension a, const QuadraticExtension& b) { return a += b; }
  friend QuadraticExtension operator-(QuadraticExtension a, const QuadraticExtension& b) { return a -= b; }
  friend QuadraticExtension operator*(QuadraticExtension a, const QuadraticExtension& b) { return a *= b; }
  friend QuadraticExtension operator/(QuadraticExtension a, const QuadraticExtension& b) { return a /= b; }
  friend bool operator==(const QuadraticExtension& a, const QuadraticExtension& b) {
    return a.rational_ == b.rational_ && a.surd_ == b.surd_;
  }

 private:
  void normalize() {
    if (surd_.is_zero()) radicand_.reset();
  }
  const GaussianRational& shared_radicand(const QuadraticExtension& o) const;

  GaussianRational rational_;
  GaussianRational surd_;
  std::optional<GaussianRational> radicand_;
};

std::string to_string(const QuadraticExtension& z);

/// Square root inside Q(i) when one exists.
std::optional<GaussianRational> exact_sqrt(const GaussianRational& z);

template <>
struct FieldTraits<QuadraticExtension> {
  static constexpr bool exact = true;
  using Real = mpq_class;

  static QuadraticExtension from_int(long v) { return QuadraticExtension(v); }
  static double magnitude(const QuadraticExtension& z) { return std::abs(z.to_complex()); }
  static bool is_zero(const QuadraticExtension& z, double, Tolerance) { return z.is_zero(); }
  static std::complex<double> to_complex(const QuadraticExtension& z) { return z.to_complex(); }
};

}  // namespace onion
