#include "onion/quadratic_extension.hpp"

#include <cassert>
#include <stdexcept>

namespace onion {
namespace {

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpq_class root(sqrt(num), sqrt(den));
  root.canonicalize();
  return root;
}

}  // namespace

std::optional<GaussianRational> exact_sqrt(const GaussianRational& z) {
  const auto modulus = rational_sqrt(z.norm());
  if (!modulus) return std::nullopt;
  const auto u = rational_sqrt((z.real() + *modulus) / 2);
  if (!u) return std::nullopt;
  if (sgn(*u) == 0) {
    // z is a nonpositive real: sqrt(z) = i * sqrt(-z).
    const auto v = rational_sqrt(-z.real());
    if (!v) return std::nullopt;
    return GaussianRational(0, *v);
  }
  mpq_class v = z.imag() / (2 * *u);
  return GaussianRational(*u, v);
}

std::complex<double> QuadraticExtension::to_complex() const {
  std::complex<double> value = rational_.to_complex();
  if (radicand_) value += surd_.to_complex() * std::sqrt(radicand_->to_complex());
  return value;
}

const GaussianRational& QuadraticExtension::shared_radicand(const QuadraticExtension& o) const {
  if (radicand_ && o.radicand_ && !(*radicand_ == *o.radicand_)) {
    throw std::logic_error("QuadraticExtension: mismatched radicands");
  }
  return radicand_ ? *radicand_ : *o.radicand_;
}

QuadraticExtension QuadraticExtension::operator-() const {
  QuadraticExtension r = *this;
  r.rational_ = -r.rational_;
  r.surd_ = -r.surd_;
  return r;
}

QuadraticExtension& QuadraticExtension::operator+=(const QuadraticExtension& o) {
  if (o.radicand_) radicand_ = shared_radicand(o);
  rational_ += o.rational_;
  surd_ += o.surd_;
  normalize();
  return *this;
}

QuadraticExtension& QuadraticExtension::operator-=(const QuadraticExtension& o) {
  return *this += -o;
}

QuadraticExtension& QuadraticExtension::operator*=(const QuadraticExtension& o) {
  if (!radicand_ && !o.radicand_) {
    rational_ *= o.rational_;
    return *this;
  }
  const GaussianRational d = shared_radicand(o);
  GaussianRational a = rational_ * o.rational_ + surd_ * o.surd_ * d;
  GaussianRational b = rational_ * o.surd_ + surd_ * o.rational_;
  rational_ = std::move(a);
  surd_ = std::move(b);
  radicand_ = d;
  normalize();
  return *this;
}

QuadraticExtension& QuadraticExtension::operator/=(const QuadraticExtension& o) {
  if (o.is_zero()) throw std::domain_error("QuadraticExtension division by zero");
  if (!o.radicand_) {
    rational_ /= o.rational_;
    surd_ /= o.rational_;
    return *this;
  }
  // Multiply through by the conjugate c - e*sqrt(d).
  const GaussianRational& d = *o.radicand_;
  const GaussianRational denom = o.rational_ * o.rational_ - o.surd_ * o.surd_ * d;
  assert(!denom.is_zero() && "radicand must not be a square in Q(i)");
  QuadraticExtension conj(o.rational_, -o.surd_, d);
  *this *= conj;
  rational_ /= denom;
  surd_ /= denom;
  normalize();
  return *this;
}

std::string to_string(const QuadraticExtension& z) {
  if (!z.radicand()) return to_string(z.rational_part());
  return "(" + to_string(z.rational_part()) + ")+(" + to_string(z.surd_part()) + ")*sqrt(" +
         to_string(*z.radicand()) + ")";
}

}  // namespace onion
