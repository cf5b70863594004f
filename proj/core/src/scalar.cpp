#include "onion/scalar.hpp"

#include <sstream>

#include "onion/error.hpp"

namespace onion {

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw std::domain_error("GaussianRational division by zero");
  const mpq_class denom = o.norm();
  mpq_class r = (re_ * o.re_ + im_ * o.im_) / denom;
  mpq_class i = (im_ * o.re_ - re_ * o.im_) / denom;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational GaussianRational::from_complex(std::complex<double> z) {
  return {mpq_class(z.real()), mpq_class(z.imag())};
}

std::string rational_to_string(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

mpq_class rational_from_string(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational literal");
  const auto slash = s.find('/');
  auto valid_integer = [](std::string_view part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') return false;
    }
    return true;
  };
  const std::string_view num = std::string_view(s).substr(0, slash);
  const std::string_view den =
      slash == std::string::npos ? std::string_view("1") : std::string_view(s).substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorCode::ParseError, "malformed rational literal '" + s + "'");
  }
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num));
  mpz_class d{std::string(den)};
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const GaussianRational& z) {
  if (sgn(z.imag()) == 0) return rational_to_string(z.real());
  if (sgn(z.real()) == 0) return rational_to_string(z.imag()) + "i";
  std::string im = rational_to_string(z.imag());
  if (im[0] != '-') im = "+" + im;
  return rational_to_string(z.real()) + im + "i";
}

std::string to_string(std::complex<double> z) {
  std::ostringstream os;
  os.precision(17);
  if (z.imag() == 0.0) {
    os << z.real();
  } else {
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  }
  return os.str();
}

}  // namespace onion
