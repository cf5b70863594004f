#include "onion/selftest.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "onion/onion.hpp"

namespace onion::selftest {

namespace {

// Tolerances and sample sizes of record.
constexpr double kOracleTol = 1e-8;
constexpr double kDetMargin = 1e-6;
constexpr int kOracleRestarts = 64;
constexpr int kIdentityTrials = 1000;
constexpr int kGenericFamilyTrials = 100;
constexpr int kInvarianceTrials = 100;
constexpr int kSliceSwapTrials = 100;
constexpr int kOracleRandom222 = 200;
constexpr int kOracleRandom322 = 50;
constexpr int kDegradationTrials = 500;
constexpr int kCanonicalTrials = 200;
constexpr int kCanonicalOrbitImages = 10;
constexpr int kGenericityTrials = 1000;
constexpr int kGenericityMinimum = 999;

const Format k22{2, 2};
const Format k222{2, 2, 2};
const Format k322{3, 2, 2};
const Format k2222{2, 2, 2, 2};

struct Context {
  Options options;
  int count(int full) const { return options.level == Level::Full ? full : std::max(10, full / 10); }
  std::uint64_t seed(std::uint64_t salt) const { return options.seed ^ (salt * 0x9e3779b97f4a7c15ULL); }
};

struct Outcome {
  bool passed;
  std::string detail;
};

std::string str(const std::ostringstream& os) { return os.str(); }

Exact random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  return Exact(mpq_class(num(rng), den(rng)));
}

/// Random state of the family, mixing generic draws with orbit images of
/// the catalog representatives so that every class is visited.
ExactTensor sample_state(const Format& f, std::mt19937_64& rng, int i) {
  static const std::vector<CatalogEntry> catalog = class_catalog();
  if (i % 2 == 0) return random_rational_state(f, rng);
  std::vector<const CatalogEntry*> same;
  for (const auto& e : catalog)
    if (e.state.format() == f) same.push_back(&e);
  if (same.empty()) return random_rational_state(f, rng);
  const auto& e = *same[static_cast<std::size_t>(i / 2) % same.size()];
  return apply_local(e.state, random_invertible_operators(f, rng));
}

Outcome criterion_identity(const Context& ctx) {
  const ExactFunction explicit_formula = [](const ExactTensor& t) { return det3_explicit(t); };
  const ExactFunction lifted = [](const ExactTensor& t) { return det3_lifted(t).value; };
  const int trials = ctx.count(kIdentityTrials);
  const bool ok = identity_check(explicit_formula, lifted, k222, trials, ctx.seed(1));
  std::ostringstream os;
  os << trials << " random rational 2x2x2 tensors, exact equality: " << (ok ? "identical" : "mismatch found");
  return {ok, str(os)};
}

Outcome criterion_generic_family(const Context& ctx) {
  std::mt19937_64 rng(ctx.seed(2));
  const int trials = ctx.count(kGenericFamilyTrials);
  int mismatches = 0;
  // K4 relates the uncalibrated lift to the product formula; det4 carries it.
  const Exact k4 = schlafli_calibration<Exact>(4);
  for (int i = 0; i < trials; ++i) {
    std::array<Exact, 4> p{random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng)};
    if (std::all_of(p.begin(), p.end(), [](const Exact& v) { return v.is_zero(); })) p[0] = Exact(1);
    const auto t = build_generic4(p[0], p[1], p[2], p[3]);
    const Exact target = eval_eq16(p[0], p[1], p[2], p[3]);
    if (!(det4(t) == target) || !(k4 * det4_uncalibrated(t).value == target)) ++mismatches;
  }
  const Exact pinned = det4(build_generic4(Exact(2), Exact(1), Exact(1), Exact(1)));
  const Exact pinned_formula = eval_eq16(Exact(2), Exact(1), Exact(1), Exact(1));
  const bool pinned_ok = pinned == Exact(72900) && pinned_formula == Exact(72900);

  // The twelve linear factors, as coefficient vectors over (alpha, beta, gamma, delta).
  const std::array<std::array<int, 4>, 12> factors{{{1, 0, 0, 0},
                                                     {0, 1, 0, 0},
                                                     {0, 0, 1, 0},
                                                     {0, 0, 0, 1},
                                                     {1, 1, 1, 1},
                                                     {1, 1, 1, -1},
                                                     {1, 1, -1, 1},
                                                     {1, -1, 1, 1},
                                                     {-1, 1, 1, 1},
                                                     {1, 1, -1, -1},
                                                     {1, -1, 1, -1},
                                                     {1, -1, -1, 1}}};
  int hyperplanes_ok = 0;
  for (const auto& c : factors) {
    bool all_zero = true;
    for (int attempt = 0; attempt < 3; ++attempt) {
      std::array<Exact, 4> p{random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng)};
      const std::size_t solve_for = c[3] != 0 ? 3 : (c[2] != 0 ? 2 : (c[1] != 0 ? 1 : 0));
      Exact rest(0);
      for (std::size_t k = 0; k < 4; ++k)
        if (k != solve_for) rest = rest + Exact(c[k]) * p[k];
      p[solve_for] = -rest / Exact(c[solve_for]);
      if (std::all_of(p.begin(), p.end(), [](const Exact& v) { return v.is_zero(); })) continue;
      if (!det4(build_generic4(p[0], p[1], p[2], p[3])).is_zero()) all_zero = false;
    }
    if (all_zero) ++hyperplanes_ok;
  }
  std::ostringstream os;
  os << trials - mismatches << "/" << trials << " random quadruples exact (K4 = " << rational_to_string(k4.real())
     << "), det4(2,1,1,1) = " << to_string(pinned) << ", zero hyperplanes " << hyperplanes_ok << "/12";
  return {mismatches == 0 && pinned_ok && hyperplanes_ok == 12, str(os)};
}

Outcome criterion_catalog(const Context&) {
  int ok = 0;
  int total = 0;
  std::string failures;
  for (const auto& e : class_catalog()) {
    ++total;
    const auto label = classify(e.state);
    const bool good = label.family == e.family && label.name == e.name && label.local_ranks == e.local_ranks;
    if (good) {
      ++ok;
    } else {
      failures += " [" + e.description + " -> " + label.name_string() + "]";
    }
  }
  std::ostringstream os;
  os << ok << "/" << total << " catalog states carry their class and local ranks" << failures;
  return {ok == total, str(os)};
}

Outcome criterion_invariance(const Context& ctx) {
  std::mt19937_64 rng(ctx.seed(4));
  const int trials = ctx.count(kInvarianceTrials);
  std::ostringstream os;
  bool all_ok = true;
  for (const Format& f : {k22, Format{3, 3}, k222, k322, k2222}) {
    const auto exps = relative_invariance_exponents(f);
    int invariance_ok = 0;
    int homogeneity_ok = 0;
    int degree = 0;
    for (int i = 0; i < trials; ++i) {
      const auto t = random_rational_state(f, rng);
      const auto g = random_invertible_operators(f, rng);
      const auto base = hyperdet(t);
      degree = base.degree;
      Exact factor(1);
      for (std::size_t j = 0; j < f.size(); ++j) factor = factor * power(g.determinant_of(j), exps[j]);
      if (hyperdet(apply_local(t, g)).value == factor * base.value) ++invariance_ok;
      const Exact lambda = random_rational(rng) + Exact(0, 1);
      std::vector<Exact> scaled(t.amplitudes().begin(), t.amplitudes().end());
      for (auto& a : scaled) a = a * lambda;
      if (hyperdet(ExactTensor(f, scaled)).value == power(lambda, static_cast<unsigned>(degree)) * base.value)
        ++homogeneity_ok;
    }
    all_ok = all_ok && invariance_ok == trials && homogeneity_ok == trials;
    os << format_to_string(f) << " deg " << degree << ": " << invariance_ok << "+" << homogeneity_ok << "/" << 2 * trials
       << "; ";
  }
  return {all_ok, str(os)};
}

ExactTensor swap_slices(const ExactTensor& t, int party) {
  std::vector<Matrix<Exact>> ops;
  for (int p = 0; p < t.parties(); ++p) ops.push_back(Matrix<Exact>::identity(static_cast<std::size_t>(t.dim(p))));
  ops[static_cast<std::size_t>(party)] = Matrix<Exact>{{0, 1}, {1, 0}};
  return apply_local(t, LocalOperators<Exact>(std::move(ops)));
}

Outcome criterion_slice_swap(const Context& ctx) {
  std::mt19937_64 rng(ctx.seed(5));
  const int trials = ctx.count(kSliceSwapTrials);
  int qubit_ok = 0;
  int boundary_ok = 0;
  for (int i = 0; i < trials; ++i) {
    const auto t = random_rational_state(k222, rng);
    const Exact d = det3_explicit(t);
    bool ok = true;
    for (int p = 0; p < 3; ++p) ok = ok && det3_explicit(swap_slices(t, p)) == d;
    qubit_ok += ok;
    const auto u = random_rational_state(k322, rng);
    const Exact e = det_3x2x2(u);
    boundary_ok += det_3x2x2(swap_slices(u, 1)) == -e && det_3x2x2(swap_slices(u, 2)) == -e && !e.is_zero();
  }
  std::ostringstream os;
  os << "2x2x2 swaps fix det3: " << qubit_ok << "/" << trials << "; 3x2x2 party-2/3 swaps negate: " << boundary_ok
     << "/" << trials;
  return {qubit_ok == trials && boundary_ok == trials, str(os)};
}

Outcome criterion_oracle(const Context& ctx) {
  OracleOptions opt;
  opt.restarts = kOracleRestarts;
  opt.tol = kOracleTol;
  opt.threads = ctx.options.threads;
  opt.seed = ctx.seed(6);

  int checked = 0;
  int mismatches = 0;
  int skipped = 0;
  double worst_found = 0.0;
  double best_not_found = 1e300;
  std::string failures;
  auto check = [&](const FloatTensor& t, bool expect_zero, const std::string& what) {
    const auto r = degenerate_oracle(t, opt);
    ++checked;
    if (r.found) worst_found = std::max(worst_found, r.residual);
    if (!r.found) best_not_found = std::min(best_not_found, r.residual);
    if (r.found != expect_zero) {
      ++mismatches;
      failures += " [" + what + " residual " + std::to_string(r.residual) + "]";
    }
  };

  const int n222 = ctx.count(kOracleRandom222);
  std::uint64_t draw = ctx.seed(60);
  for (int accepted = 0; accepted < n222; ++draw) {
    const auto t = random_state(k222, draw);
    if (std::abs(det3_explicit(t)) <= kDetMargin * std::pow(t.norm(), 4.0)) {
      ++skipped;
      continue;
    }
    check(t, false, "random 2x2x2 #" + std::to_string(accepted));
    ++accepted;
  }
  for (const auto& e : class_catalog()) {
    if (e.family != Family::Qubit3) continue;
    check(tensor_cast<Float>(e.state), det3_explicit(e.state).is_zero(), e.description);
  }
  const int n322 = ctx.count(kOracleRandom322);
  for (int accepted = 0; accepted < n322; ++draw) {
    const auto t = random_state(k322, draw);
    const bool zero = std::abs(det_3x2x2(t)) <= kDetMargin * std::pow(t.norm(), 6.0);
    if (zero) {
      ++skipped;
      continue;
    }
    check(t, false, "random 3x2x2 #" + std::to_string(accepted));
    ++accepted;
  }
  for (const auto& e : class_catalog()) {
    if (e.family != Family::Format322) continue;
    check(tensor_cast<Float>(e.state), det_3x2x2(e.state).is_zero(), e.description);
  }
  std::ostringstream os;
  os << mismatches << " mismatches over " << checked << " states (" << skipped << " draws inside the " << kDetMargin
     << " margin redrawn); max found residual " << worst_found << ", min not-found residual " << best_not_found
     << failures;
  return {mismatches == 0, str(os)};
}

bool forbidden(const ClassLabel& a, const ClassLabel& b) {
  auto is_b = [](ClassName n) { return n == ClassName::B1 || n == ClassName::B2 || n == ClassName::B3; };
  if ((a.name == ClassName::GHZ && b.name == ClassName::W) || (a.name == ClassName::W && b.name == ClassName::GHZ))
    return true;
  if (is_b(a.name) && is_b(b.name) && a.name != b.name) return true;
  if ((a.name == ClassName::GEN322 && b.name == ClassName::DEG322) ||
      (a.name == ClassName::DEG322 && b.name == ClassName::GEN322))
    return true;
  return false;
}

Outcome criterion_degradation(const Context& ctx) {
  std::mt19937_64 rng(ctx.seed(7));
  const int trials = ctx.count(kDegradationTrials);
  std::ostringstream os;
  bool all_ok = true;
  for (const Format& f : {k222, k322, Format{3, 3}, k2222}) {
    int annihilated = 0;
    int violations = 0;
    std::set<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < trials; ++i) {
      const auto t = sample_state(f, rng, i);
      const auto g = random_singular_operators(f, rng);
      ExactTensor image = t;
      try {
        image = apply_local(t, g);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ZeroState) throw;
        ++annihilated;
        continue;
      }
      const auto from = classify(t);
      const auto to = classify(image);
      if (to.onion_level < from.onion_level || !reachable(from, to) || forbidden(from, to)) ++violations;
      if (from.name_string() != to.name_string()) edges.insert({from.name_string(), to.name_string()});
    }
    all_ok = all_ok && violations == 0;
    os << format_to_string(f) << ": " << violations << " violations, " << edges.size() << " distinct edges, "
       << annihilated << " annihilated; ";
  }
  return {all_ok, str(os)};
}

Outcome criterion_canonical(const Context& ctx) {
  std::mt19937_64 rng(ctx.seed(8));
  const int trials = ctx.count(kCanonicalTrials);
  int ok = 0;
  int total = 0;
  auto check = [&](const ExactTensor& t) {
    ++total;
    const auto cf = canonicalize_3qubit(t);
    const auto moved = apply_local(tensor_cast<QuadraticExtension>(t), cf.operators);
    if (cf.operators.all_invertible() && proportional(moved, tensor_cast<QuadraticExtension>(representative(cf.label))))
      ++ok;
  };
  for (int i = 0; i < trials; ++i) check(random_rational_state(k222, rng));
  const int random_ok = ok;
  for (const auto& e : class_catalog()) {
    if (e.family != Family::Qubit3) continue;
    for (int k = 0; k < kCanonicalOrbitImages; ++k) check(apply_local(e.state, random_invertible_operators(k222, rng)));
  }
  std::ostringstream os;
  os << random_ok << "/" << trials << " random states and " << ok - random_ok << "/" << total - trials
     << " orbit images of every class map exactly onto their representative";
  return {ok == total, str(os)};
}

Outcome criterion_mixed(const Context&) {
  using Members = std::vector<Ensemble<Exact>::Member>;
  const mpq_class half(1, 2);
  const auto ghz = kets<Exact>(k222, {"000", "111"});
  const bool a = ensemble_upper_class(Ensemble<Exact>(Members{{half, ghz}, {half, kets<Exact>(k222, {"001", "010", "100"})}}))
                     .ladder == LadderClass::GHZ;
  const Ensemble<Exact> sep(Members{{half, kets<Exact>(k222, {"000"})}, {half, kets<Exact>(k222, {"111"})}});
  const bool b = ensemble_upper_class(sep).ladder == LadderClass::Separable;
  const bool c = ensemble_upper_class(Ensemble<Exact>(Members{{mpq_class(3, 10), kets<Exact>(k222, {"001", "010"})},
                                                              {mpq_class(7, 10), kets<Exact>(k222, {"010", "100"})}}))
                     .ladder == LadderClass::Biseparable;
  std::vector<Exact> minus(8, Exact(0));
  minus[0] = Exact(1);
  minus[7] = Exact(-1);
  const Ensemble<Exact> ghz_mix(Members{{half, ghz}, {half, ExactTensor(k222, minus)}});
  const bool same_rho = density_matrix(sep) == density_matrix(ghz_mix);
  const bool diverge = same_rho && ensemble_upper_class(ghz_mix).ladder == LadderClass::GHZ &&
                       ensemble_upper_class(sep).ladder == LadderClass::Separable;
  std::ostringstream os;
  os << "GHZ+W " << (a ? "GHZ-class" : "wrong") << ", |000>+|111> mix " << (b ? "separable-class" : "wrong")
     << ", B1+B3 mix " << (c ? "biseparable-class" : "wrong") << ", equal rho " << (same_rho ? "yes" : "no")
     << " with labels " << (diverge ? "separable vs GHZ" : "not diverging");
  return {a && b && c && diverge, str(os)};
}

Outcome criterion_genericity(const Context& ctx) {
  const int trials = ctx.count(kGenericityTrials);
  const int needed = ctx.options.level == Level::Full ? kGenericityMinimum : trials - 1;
  int ghz = 0;
  int warnings = 0;
  for (int i = 0; i < trials; ++i) {
    const auto label = classify(random_state(k222, ctx.seed(10) + static_cast<std::uint64_t>(i)));
    ghz += label.name == ClassName::GHZ;
    warnings += label.boundary_warning;
  }
  std::ostringstream os;
  os << ghz << "/" << trials << " random float states classify as GHZ (need " << needed << "), " << warnings
     << " boundary warnings";
  return {ghz >= needed, str(os)};
}

struct Criterion {
  int id;
  const char* title;
  Outcome (*run)(const Context&);
};

constexpr Criterion kCriteria[] = {
    {1, "Cayley formula equals the calibrated Schlafli lift", criterion_identity},
    {2, "four-qubit lift reproduces the generic-family product", criterion_generic_family},
    {3, "class catalog golden tests", criterion_catalog},
    {4, "relative invariance and homogeneity degrees", criterion_invariance},
    {5, "slice interchange signs", criterion_slice_swap},
    {6, "critical-point oracle agrees with the formulas", criterion_oracle},
    {7, "singular operators degrade along the reachability diagram", criterion_degradation},
    {8, "three-qubit canonicalizer is exact", criterion_canonical},
    {9, "mixed-state ladder fixtures", criterion_mixed},
    {10, "random three-qubit states are GHZ class", criterion_genericity},
};

}  // namespace

std::vector<CriterionResult> run(const Options& options, const std::function<void(const CriterionResult&)>& on_result) {
  const Context ctx{options};
  std::vector<CriterionResult> out;
  for (const auto& c : kCriteria) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r{c.id, c.title, false, "", 0.0};
    try {
      const Outcome o = c.run(ctx);
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s  %2d  ", r.passed ? "PASS" : "FAIL", r.id);
  char tail[32];
  std::snprintf(tail, sizeof tail, "  [%.2f s]", r.seconds);
  return std::string(head) + r.title + "  (" + r.detail + ")" + tail;
}

}  // namespace onion::selftest
