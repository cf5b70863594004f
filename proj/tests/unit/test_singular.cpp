#include <random>

#include "doctest.h"
#include "onion/singular.hpp"

using namespace onion;

namespace {
const Format k222{2, 2, 2};
}

TEST_CASE("node and cusp tests for three qubits") {
  const auto b1 = kets<Exact>(k222, {"001", "010"});
  CHECK(node_test_2x2x2(b1, 0));
  CHECK_FALSE(node_test_2x2x2(b1, 1));
  const auto ghz = kets<Exact>(k222, {"000", "111"});
  for (int j = 0; j < 3; ++j) CHECK_FALSE(node_test_2x2x2(ghz, j));
  CHECK_FALSE(cusp_test_2x2x2(kets<Exact>(k222, {"001", "010", "100"})));
  CHECK(cusp_test_2x2x2(b1));
  CHECK(cusp_test_2x2x2(kets<Exact>(k222, {"000"})));
  CHECK_THROWS_AS(node_test_2x2x2(kets<Exact>({3, 2, 2}, {"000"}), 0), Error);
}

TEST_CASE("node test for 3x2x2") {
  CHECK(node1_test_3x2x2(kets<Exact>({3, 2, 2}, {"000", "111"})));
  CHECK_FALSE(node1_test_3x2x2(kets<Exact>({3, 2, 2}, {"000", "101", "211"})));
  CHECK(node1_test_3x2x2(kets<Exact>({3, 2, 2}, {"001", "010", "100"})));
}

TEST_CASE("x° section helpers") {
  const auto sec = kets<Exact>(k222, {"011", "101", "110", "111"});
  CHECK(xo_section_flags(sec).in_xv_section);
  CHECK_FALSE(xo_section_flags(sec).in_node1_section);
  CHECK_FALSE(xo_section_flags(kets<Exact>(k222, {"000", "111"})).in_xv_section);
  CHECK(xo_section_flags(kets<Exact>(k222, {"101", "110"})).in_node1_section);

  CHECK(hessian_at_xo(kets<Exact>(k222, {"011", "101", "110"})).det == Exact(2));
  CHECK(hessian_at_xo(kets<Exact>(k222, {"101", "110"})).det == Exact(0));
  CHECK(hessian_at_xo(sec).det == Exact(2));
  try {
    hessian_at_xo(kets<Exact>(k222, {"000", "111"}));
    FAIL("expected NotInSection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInSection);
  }
}

TEST_CASE("node membership implies the dual variety") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const auto t = apply_local(random_rational_state(k222, rng), random_singular_operators(k222, rng));
    const auto report = singularity_report(t);
    if (report.cusp_flag) CHECK(report.in_dual);
    CHECK(report.cusp_flag == (report.node_flags.at(1) || report.node_flags.at(2) || report.node_flags.at(3)));
    const auto u = apply_local(random_rational_state({3, 2, 2}, rng), random_singular_operators({3, 2, 2}, rng));
    if (node1_test_3x2x2(u)) CHECK(det_3x2x2(u) == Exact(0));
  }
}

TEST_CASE("Hessian cusp test agrees with the node union on the section") {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> digit(-2, 2);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<Exact> a(8, Exact(0));
    for (std::size_t idx : {0b011u, 0b101u, 0b110u, 0b111u}) a[idx] = Exact(digit(rng));
    if (std::all_of(a.begin(), a.end(), [](const Exact& v) { return v.is_zero(); })) continue;
    const ExactTensor t(k222, a);
    CHECK((hessian_at_xo(t).det == Exact(0)) == cusp_test_2x2x2(t));
    ++checked;
  }
  CHECK(checked > 900);
}

TEST_CASE("flags are invariant under invertible action") {
  std::mt19937_64 rng(43);
  const std::vector<ExactTensor> states{kets<Exact>(k222, {"001", "010"}), kets<Exact>(k222, {"001", "010", "100"}),
                                        kets<Exact>(k222, {"000", "111"}), kets<Exact>(k222, {"000"})};
  for (const auto& t : states) {
    const auto before = singularity_report(t);
    for (int i = 0; i < 10; ++i) {
      const auto after = singularity_report(apply_local(t, random_invertible_operators(k222, rng)));
      CHECK(after.in_dual == before.in_dual);
      CHECK(after.node_flags == before.node_flags);
      CHECK(after.cusp_flag == before.cusp_flag);
    }
  }
  const auto w = kets<Exact>({3, 2, 2}, {"001", "010", "100"});
  for (int i = 0; i < 10; ++i)
    CHECK(node1_test_3x2x2(apply_local(w, random_invertible_operators({3, 2, 2}, rng))));
}

TEST_CASE("singularity report rejects other formats") {
  CHECK_THROWS_AS(singularity_report(kets<Exact>({2, 2, 2, 2}, {"0000"})), Error);
}
