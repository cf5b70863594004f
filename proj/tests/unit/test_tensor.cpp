#include <random>

#include "doctest.h"
#include "onion/tensor.hpp"

using namespace onion;

namespace {

const Format k222{2, 2, 2};

Matrix<Exact> ints(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Exact>> out;
  std::size_t cols = 0;
  std::vector<Exact> data;
  for (const auto& r : rows) {
    cols = r.size();
    for (long v : r) data.emplace_back(v);
  }
  return Matrix<Exact>(rows.size(), cols, std::move(data));
}

}  // namespace

TEST_CASE("state construction validates input") {
  const auto ghz = kets<Exact>(k222, {"000", "111"});
  CHECK(ghz[0] == Exact(1));
  CHECK(ghz[7] == Exact(1));
  CHECK_THROWS_WITH_AS(ExactTensor({2, 2}, std::vector<Exact>(4, Exact(0))), doctest::Contains("zero"), Error);
  try {
    ExactTensor(k222, std::vector<Exact>(7, Exact(1)));
    FAIL("expected FormatMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FormatMismatch);
  }
  try {
    ExactTensor({2, 1}, std::vector<Exact>(2, Exact(1)));
    FAIL("expected BadDimension");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadDimension);
  }
}

TEST_CASE("flattenings") {
  const auto ghz = kets<Exact>(k222, {"000", "111"});
  CHECK(flatten(ghz, {0}) == ints({{1, 0, 0, 0}, {0, 0, 0, 1}}));
  const auto w = kets<Exact>(k222, {"001", "010", "100"});
  CHECK(flatten(w, {0}) == ints({{0, 1, 1, 0}, {1, 0, 0, 0}}));
  const auto gen = kets<Exact>({3, 2, 2}, {"000", "101", "110", "211"});
  CHECK(flatten(gen, {0}) == ints({{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 0, 1}}));
  CHECK_THROWS_AS(flatten(ghz, {}), Error);
  CHECK_THROWS_AS(flatten(ghz, {0, 1, 2}), Error);
}

TEST_CASE("flatten and unflatten are inverse") {
  std::mt19937_64 rng(11);
  const Format f{3, 2, 2};
  const auto t = random_rational_state(f, rng);
  for (PartySet cut : {PartySet{0}, PartySet{1}, PartySet{0, 2}, PartySet{1, 2}}) {
    CHECK(unflatten(flatten(t, cut), f, cut) == t);
  }
}

TEST_CASE("cut ranks") {
  const auto ghz = kets<Exact>(k222, {"000", "111"});
  CHECK(cut_rank(ghz, {0}) == 2);
  const auto prod = kets<Exact>(k222, {"000"});
  for (PartySet cut : {PartySet{0}, PartySet{1}, PartySet{2}, PartySet{0, 1}}) CHECK(cut_rank(prod, cut) == 1);
  CHECK(cut_rank(kets<Exact>({3, 2, 2}, {"000", "101", "211"}), {0}) == 3);
}

TEST_CASE("cut rank of a cut equals that of its complement") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = apply_local(random_rational_state({2, 2, 2, 2}, rng),
                               random_singular_operators({2, 2, 2, 2}, rng));
    CHECK(cut_rank(t, {0, 1}) == cut_rank(t, {2, 3}));
    CHECK(cut_rank(t, {1}) == cut_rank(t, {0, 2, 3}));
  }
}

TEST_CASE("local action: invertible keeps ranks, singular never raises them") {
  std::mt19937_64 rng(17);
  const Format f{3, 2, 2};
  for (int trial = 0; trial < 30; ++trial) {
    const auto t = random_rational_state(f, rng);
    const auto before = local_ranks(t);
    CHECK(local_ranks(apply_local(t, random_invertible_operators(f, rng))) == before);
    try {
      const auto after = local_ranks(apply_local(t, random_singular_operators(f, rng)));
      for (std::size_t p = 0; p < after.size(); ++p) CHECK(after[p] <= before[p]);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ZeroState);
    }
  }
}

TEST_CASE("exact and float ranks agree on integer tensors") {
  std::mt19937_64 rng(23);
  const Format f{2, 2, 2, 2};
  for (int trial = 0; trial < 30; ++trial) {
    ExactTensor t = random_rational_state(f, rng);
    try {
      t = apply_local(t, random_singular_operators(f, rng));
    } catch (const Error&) {
      continue;
    }
    const auto ft = tensor_cast<Float>(t);
    CHECK(local_ranks(t) == local_ranks(ft));
    CHECK(cut_rank(t, {0, 1}) == cut_rank(ft, {0, 1}));
  }
}

TEST_CASE("apply_local examples") {
  const auto ghz = kets<Exact>(k222, {"000", "111"});
  CHECK(apply_local(ghz, LocalOperators<Exact>::identity(k222)) == ghz);
  const LocalOperators<Exact> h({ints({{1, 1}, {1, -1}}), Matrix<Exact>::identity(2), Matrix<Exact>::identity(2)});
  auto expected = kets<Exact>(k222, {"000", "011", "100"});
  std::vector<Exact> amps(expected.amplitudes().begin(), expected.amplitudes().end());
  amps[7] = Exact(-1);
  CHECK(apply_local(ghz, h) == ExactTensor(k222, amps));
  const LocalOperators<Exact> proj({ints({{1, 0}, {0, 0}}), Matrix<Exact>::identity(2), Matrix<Exact>::identity(2)});
  CHECK(apply_local(ghz, proj) == kets<Exact>(k222, {"000"}));
  const LocalOperators<Exact> kill({ints({{0, 0}, {0, 1}}), ints({{1, 0}, {0, 0}}), Matrix<Exact>::identity(2)});
  CHECK_THROWS_AS(apply_local(ghz, kill), Error);
  CHECK(!proj.invertible(0));
  CHECK(proj.invertible(1));
}

TEST_CASE("separability patterns") {
  CHECK(separability_pattern(kets<Exact>(k222, {"000"})) == Partition{{0}, {1}, {2}});
  CHECK(separability_pattern(kets<Exact>(k222, {"001", "010"})) == Partition{{0}, {1, 2}});
  CHECK(separability_pattern(kets<Exact>(k222, {"000", "111"})) == Partition{{0, 1, 2}});
  CHECK(separability_pattern(kets<Exact>({2, 2, 2, 2}, {"0000", "0011"})) == Partition{{0}, {1}, {2, 3}});
  CHECK(separability_pattern(kets<Exact>({2, 2, 2, 2}, {"0000", "1100", "0011", "1111"})) ==
        Partition{{0, 1}, {2, 3}});
}

TEST_CASE("separability pattern is invariant under invertible action") {
  std::mt19937_64 rng(29);
  const Format f{2, 2, 2, 2};
  const auto t = kets<Exact>(f, {"0000", "0101", "1010", "1111"});
  const auto pattern = separability_pattern(t);
  CHECK(pattern == Partition{{0, 2}, {1, 3}});
  for (int trial = 0; trial < 10; ++trial)
    CHECK(separability_pattern(apply_local(t, random_invertible_operators(f, rng))) == pattern);
}

TEST_CASE("schmidt coefficients") {
  const double s = 1.0 / std::sqrt(2.0);
  const auto bell = FloatTensor({2, 2}, {s, 0.0, 0.0, s});
  const auto c = schmidt_coefficients(bell);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == doctest::Approx(s));
  CHECK(c[1] == doctest::Approx(s));
  const auto p = schmidt_coefficients(kets<Float>({2, 2}, {"00"}));
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[1] == doctest::Approx(0.0));
  CHECK_THROWS_AS(schmidt_coefficients(kets<Float>(k222, {"000"})), Error);

  const auto spectrum = squared_schmidt_spectrum(ExactTensor({2, 2}, {1, 2, 3, 4}));
  CHECK(spectrum.gram == ints({{5, 11}, {11, 25}}));
  CHECK(spectrum.characteristic_polynomial == std::vector<mpq_class>{1, -30, 4});
  CHECK_FALSE(spectrum.exact.has_value());
  CHECK(spectrum.approximate[0] == doctest::Approx(15 + std::sqrt(221.0)));
  CHECK(spectrum.approximate[1] == doctest::Approx(15 - std::sqrt(221.0)));

  const auto bell_exact = squared_schmidt_spectrum(kets<Exact>({2, 2}, {"00", "11"}));
  REQUIRE(bell_exact.exact.has_value());
  CHECK(*bell_exact.exact == std::vector<mpq_class>{1, 1});
}

TEST_CASE("random states are deterministic per seed") {
  const auto a = random_state(k222, 7);
  const auto b = random_state(k222, 7);
  const auto c = random_state(k222, 8);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(a.norm() == doctest::Approx(1.0));
}

TEST_CASE("product vectors compare projectively") {
  const ProductVector<Exact> x({{1, 2}, {0, 1}});
  const ProductVector<Exact> y({{3, 6}, {0, -5}});
  const ProductVector<Exact> z({{1, 2}, {1, 1}});
  CHECK(x.projectively_equal(y));
  CHECK_FALSE(x.projectively_equal(z));
  CHECK_THROWS_AS(ProductVector<Exact>({{0, 0}, {1, 0}}), Error);
}
