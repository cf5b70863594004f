#include "doctest.h"
#include "onion/matrix.hpp"
#include "onion/quadratic_extension.hpp"
#include "onion/scalar.hpp"

using namespace onion;

TEST_CASE("gaussian rational arithmetic") {
  const GaussianRational i(0, 1);
  CHECK(i * i == GaussianRational(-1));
  const GaussianRational z(mpq_class(1, 2), mpq_class(-3, 4));
  CHECK(z / z == GaussianRational(1));
  CHECK(z * z.conj() == GaussianRational(z.norm()));
  CHECK_THROWS_AS(z / GaussianRational(0), std::domain_error);
}

TEST_CASE("constructor canonicalizes its parts") {
  CHECK(GaussianRational(mpq_class(4, 2), mpq_class(-3, -6)) == GaussianRational(mpq_class(2), mpq_class(1, 2)));
  CHECK(GaussianRational(mpq_class(4, 2)) * GaussianRational(1) == GaussianRational(2));
}

TEST_CASE("rational strings round trip") {
  CHECK(rational_to_string(mpq_class(3)) == "3/1");
  CHECK(rational_to_string(mpq_class(-6, 8)) == "-3/4");
  CHECK(rational_from_string("-3/4") == mpq_class(-3, 4));
  CHECK(rational_from_string("7") == mpq_class(7));
  CHECK_THROWS_AS(rational_from_string("x/2"), Error);
  CHECK_THROWS_AS(rational_from_string("1/0"), Error);
}

TEST_CASE("doubles convert to exact dyadic rationals") {
  const auto z = GaussianRational::from_complex({0.375, -1.5});
  CHECK(z.real() == mpq_class(3, 8));
  CHECK(z.imag() == mpq_class(-3, 2));
}

TEST_CASE("exact square roots") {
  CHECK(exact_sqrt(GaussianRational(mpq_class(9, 4))) == GaussianRational(mpq_class(3, 2)));
  const auto r = exact_sqrt(GaussianRational(0, 2));  // (1+i)^2 = 2i
  REQUIRE(r.has_value());
  CHECK(*r * *r == GaussianRational(0, 2));
  CHECK_FALSE(exact_sqrt(GaussianRational(2)).has_value());
}

TEST_CASE("quadratic extension arithmetic") {
  const auto s = QuadraticExtension::sqrt_of(GaussianRational(2));
  CHECK(s * s == QuadraticExtension(GaussianRational(2)));
  const auto x = QuadraticExtension(GaussianRational(1)) + s;
  CHECK((x / x) == QuadraticExtension(GaussianRational(1)));
  CHECK(std::abs(x.to_complex() - std::complex<double>(1.0 + std::sqrt(2.0), 0.0)) < 1e-12);
}

TEST_CASE("matrix determinant, inverse and rank") {
  const Matrix<Exact> m{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  CHECK(determinant(m) == Exact(18));
  CHECK(m * inverse(m) == Matrix<Exact>::identity(3));
  const Matrix<Exact> singular{{1, 2}, {2, 4}};
  CHECK(rank(singular) == 1);
  CHECK_THROWS_AS(inverse(singular), Error);
  const Matrix<Float> f{{1.0, 2.0}, {2.0, 4.0 + 1e-14}};
  CHECK(rank(f, Tolerance{1e-9}) == 1);
  CHECK(rank(f, Tolerance{1e-16}) == 2);
}
