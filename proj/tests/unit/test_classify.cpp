#include <random>

#include "doctest.h"
#include "onion/classify.hpp"

using namespace onion;

namespace {

const Format k222{2, 2, 2};
const Format k322{3, 2, 2};

ClassName name_of(const ExactTensor& t) { return classify(t).name; }

ExactTensor pad_to_322(const ExactTensor& t) {
  std::vector<Exact> amps(t.amplitudes().begin(), t.amplitudes().end());
  amps.resize(12, Exact(0));
  return ExactTensor(k322, amps);
}

template <class E>
bool canonical_ok(const ExactTensor& t) {
  const auto cf = canonicalize_3qubit(t);
  const auto moved = apply_local(tensor_cast<E>(t), cf.operators);
  const auto rep = tensor_cast<E>(representative(cf.label));
  return cf.operators.all_invertible() && proportional(moved, rep);
}

}  // namespace

TEST_CASE("three-qubit catalog") {
  CHECK(name_of(kets<Exact>(k222, {"000", "111"})) == ClassName::GHZ);
  CHECK(name_of(kets<Exact>(k222, {"001", "010", "100"})) == ClassName::W);
  CHECK(name_of(kets<Exact>(k222, {"001", "010"})) == ClassName::B1);
  CHECK(name_of(kets<Exact>(k222, {"001", "100"})) == ClassName::B2);
  CHECK(name_of(kets<Exact>(k222, {"010", "100"})) == ClassName::B3);
  CHECK(name_of(kets<Exact>(k222, {"000"})) == ClassName::S);
  CHECK(name_of(kets<Exact>(k222, {"000", "111", "011"})) == ClassName::GHZ);
  const auto ghz = classify(kets<Exact>(k222, {"000", "111"}));
  CHECK(ghz.onion_level == 0);
  CHECK(ghz.local_ranks == std::vector<int>{2, 2, 2});
  CHECK(ghz.diagnostics.at("det3") == "1/1");
}

TEST_CASE("every catalog entry classifies to its class") {
  for (const auto& entry : class_catalog()) {
    CAPTURE(entry.description);
    const auto label = classify(entry.state);
    CHECK(label.name == entry.name);
    CHECK(label.family == entry.family);
    CHECK(label.local_ranks == entry.local_ranks);
  }
}

TEST_CASE("3x2x2 classes and levels") {
  const auto gen = classify(kets<Exact>(k322, {"000", "101", "110", "211"}));
  CHECK(gen.name == ClassName::GEN322);
  CHECK(gen.onion_level == 0);
  const auto deg = classify(kets<Exact>(k322, {"000", "101", "211"}));
  CHECK(deg.name == ClassName::DEG322);
  CHECK(deg.onion_level == 1);
  CHECK(make_label(Family::Format322, ClassName::B1).onion_level == 5);
  CHECK(make_label(Family::Format322, ClassName::B2).onion_level == 4);
  CHECK(make_label(Family::Format322, ClassName::S).onion_level == 6);
}

TEST_CASE("embedding a 2x2x2 state keeps its class") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    ExactTensor t = random_rational_state(k222, rng);
    if (i % 2) {
      try {
        t = apply_local(t, random_singular_operators(k222, rng));
      } catch (const Error&) {
        continue;
      }
    }
    CHECK(classify(pad_to_322(t)).name == classify(t).name);
  }
}

TEST_CASE("bipartite classes") {
  const auto l = classify(kets<Exact>({3, 3}, {"00", "11"}));
  CHECK(l.family == Family::Bipartite);
  CHECK(l.name_string() == "S_2");
  CHECK(l.onion_level == 1);
  CHECK(classify(kets<Exact>({2, 3}, {"00", "11"})).schmidt_rank == 2);
  CHECK(representative(l) == kets<Exact>({3, 3}, {"00", "11"}));
}

TEST_CASE("four-qubit classes") {
  const Format f{2, 2, 2, 2};
  const auto ghz4 = classify(kets<Exact>(f, {"0000", "1111"}));
  CHECK(ghz4.name == ClassName::DEGENERATE4);
  CHECK(ghz4.diagnostics.count("cut_ranks") == 1);
  CHECK(ghz4.diagnostics.at("separability_pattern") == "{1,2,3,4}");
  CHECK(classify(kets<Exact>(f, {"0001", "0010", "0100", "1000"})).name == ClassName::DEGENERATE4);
  CHECK(classify(build_generic4(Exact(2), Exact(1), Exact(1), Exact(1))).name == ClassName::GENERIC4);
  try {
    representative(make_label(Family::Qubit4, ClassName::GENERIC4));
    FAIL("expected NoCanonicalRepresentative");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoCanonicalRepresentative);
  }
  CHECK_THROWS_AS(classify(kets<Exact>({2, 2, 2, 2, 2}, {"00000"})), Error);
}

TEST_CASE("classification is invariant under invertible action") {
  std::mt19937_64 rng(8);
  for (const Format& f : {k222, k322}) {
    for (int i = 0; i < 100; ++i) {
      ExactTensor t = random_rational_state(f, rng);
      if (i % 3 != 0) {
        try {
          t = apply_local(t, random_singular_operators(f, rng));
        } catch (const Error&) {
          continue;
        }
      }
      const auto before = classify(t);
      CHECK(classify(apply_local(t, random_invertible_operators(f, rng))).name == before.name);
    }
  }
  for (const auto& entry : class_catalog()) {
    if (entry.family == Family::Qubit4) continue;
    for (int i = 0; i < 5; ++i) {
      const auto g = random_invertible_operators(entry.state.format(), rng);
      CHECK(classify(apply_local(entry.state, g)).name == entry.name);
    }
  }
}

TEST_CASE("reachability") {
  const auto L = [](const char* n) { return label_from_name(n); };
  CHECK(reachable(L("GHZ"), L("B2")));
  CHECK_FALSE(reachable(L("GHZ"), L("W")));
  CHECK_FALSE(reachable(L("W"), L("GHZ")));
  CHECK_FALSE(reachable(L("B1"), L("B2")));
  CHECK(reachable(L("B1"), L("S")));
  CHECK(reachable(L("GHZ"), L("S")));
  CHECK(reachable(L("W"), L("W")));
  CHECK_FALSE(reachable(L("S"), L("B1")));
  CHECK(reachable(L("GEN322"), L("W")));
  CHECK(reachable(L("GEN322"), L("B1")));
  CHECK_FALSE(reachable(L("GEN322"), L("DEG322")));
  CHECK_FALSE(reachable(L("DEG322"), L("GEN322")));
  CHECK(reachable(L("S_3"), L("S_2")));
  CHECK_FALSE(reachable(L("S_2"), L("S_3")));
  CHECK(reachable(L("GENERIC4"), L("DEGENERATE4")));
  CHECK_THROWS_AS(reachable(L("GHZ"), L("GENERIC4")), Error);
  CHECK_THROWS_AS(label_from_name("XYZ"), Error);
}

TEST_CASE("singular operators degrade along the diagram") {
  std::mt19937_64 rng(4);
  for (const Format& f : {k222, k322}) {
    for (int i = 0; i < 100; ++i) {
      const auto t = random_rational_state(f, rng);
      const auto g = random_singular_operators(f, rng);
      ExactTensor image = t;
      try {
        image = apply_local(t, g);
      } catch (const Error&) {
        continue;
      }
      const auto from = classify(t);
      const auto to = classify(image);
      CHECK(to.onion_level >= from.onion_level);
      CHECK(reachable(from, to));
    }
  }
}

TEST_CASE("float classification agrees with exact") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    ExactTensor t = random_rational_state(k322, rng);
    try {
      if (i % 2) t = apply_local(t, random_singular_operators(k322, rng));
    } catch (const Error&) {
      continue;
    }
    const auto fl = classify(tensor_cast<Float>(t));
    CHECK(fl.name == classify(t).name);
  }
  int ghz = 0;
  for (std::uint64_t s = 0; s < 200; ++s) ghz += classify(random_state(k222, s)).name == ClassName::GHZ;
  CHECK(ghz >= 199);
}

TEST_CASE("boundary warning near a decision threshold") {
  std::vector<Float> amps(8);
  amps[0b001] = amps[0b010] = amps[0b100] = 1.0;
  amps[0b111] = 3e-9;
  const auto label = classify(FloatTensor(k222, amps));
  CHECK(label.boundary_warning);
  CHECK_FALSE(classify(kets<Float>(k222, {"000", "111"})).boundary_warning);
}

TEST_CASE("canonicalization examples") {
  CHECK(canonical_ok<QuadraticExtension>(kets<Exact>(k222, {"000", "111"})));
  CHECK(canonical_ok<QuadraticExtension>(kets<Exact>(k222, {"000", "111", "011"})));
  const auto w = kets<Exact>(k222, {"011", "101", "110", "111"});
  CHECK(canonicalize_3qubit(w).label.name == ClassName::W);
  CHECK(canonical_ok<QuadraticExtension>(w));
  for (const auto& entry : class_catalog())
    if (entry.family == Family::Qubit3) CHECK(canonical_ok<QuadraticExtension>(entry.state));
}

TEST_CASE("canonicalization of random states in every class") {
  std::mt19937_64 rng(10);
  int by_class[8] = {};
  for (int i = 0; i < 150; ++i) {
    ExactTensor t = random_rational_state(k222, rng);
    if (i % 3 == 1) {
      try {
        t = apply_local(t, random_singular_operators(k222, rng));
      } catch (const Error&) {
        continue;
      }
    } else if (i % 3 == 2) {
      const auto& reps = class_catalog();
      t = apply_local(reps[static_cast<std::size_t>(i / 3) % 6].state, random_invertible_operators(k222, rng));
    }
    ++by_class[static_cast<int>(classify(t).name)];
    CHECK(canonical_ok<QuadraticExtension>(t));
  }
  for (ClassName n : {ClassName::GHZ, ClassName::W, ClassName::B1, ClassName::B2, ClassName::B3, ClassName::S})
    CHECK(by_class[static_cast<int>(n)] > 0);
  const auto fl = random_state(k222, 3);
  const auto cf = canonicalize_3qubit(fl);
  CHECK(proportional(apply_local(fl, cf.operators), tensor_cast<Float>(representative(cf.label)), Tolerance{1e-8}));
}
