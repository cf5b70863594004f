#include "onion/oracle.hpp"

#include <algorithm>
#include <random>
#include <thread>

namespace onion {

namespace {

using Factors = std::vector<std::vector<Float>>;

double factor_norm(const std::vector<Float>& v) {
  double acc = 0.0;
  for (const auto& c : v) acc += std::norm(c);
  return std::sqrt(acc);
}

void normalize(Factors& x) {
  for (auto& f : x) {
    const double n = factor_norm(f);
    for (auto& c : f) c /= n;
  }
}

struct Walker {
  const FloatTensor& t;
  std::vector<std::vector<int>> indices;

  explicit Walker(const FloatTensor& tensor) : t(tensor) {
    indices.reserve(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) indices.push_back(t.index_of(i));
  }

  /// g_j = dF/dx^(j) for every party.
  Factors partials(const Factors& x) const {
    const int n = t.parties();
    Factors g(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) g[j].assign(static_cast<std::size_t>(t.dim(j)), Float{});
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
      const Float a = t[flat];
      if (a == Float{}) continue;
      const auto& idx = indices[flat];
      for (int j = 0; j < n; ++j) {
        Float w = a;
        for (int m = 0; m < n; ++m)
          if (m != j) w *= x[m][idx[m]];
        g[j][idx[j]] += w;
      }
    }
    return g;
  }

  static double residual_of(const Factors& g) {
    double r = 0.0;
    for (const auto& gj : g)
      for (const auto& c : gj) r += std::norm(c);
    return r;
  }

  /// Conjugate-gradient direction dr/d(conj x^(k)) = sum_{j != k} H_jk^H g_j,
  /// with H_jk the mixed second partials of F.
  Factors gradient(const Factors& x, const Factors& g) const {
    const int n = t.parties();
    Factors grad(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) grad[k].assign(static_cast<std::size_t>(t.dim(k)), Float{});
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
      const Float a = t[flat];
      if (a == Float{}) continue;
      const auto& idx = indices[flat];
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          if (j == k) continue;
          Float w = a;
          for (int m = 0; m < n; ++m)
            if (m != j && m != k) w *= x[m][idx[m]];
          grad[k][idx[k]] += std::conj(w) * g[j][idx[j]];
        }
    }
    return grad;
  }
};

struct RestartResult {
  double residual;
  Factors point;
};

RestartResult descend(const Walker& walker, Factors x, const OracleOptions& opt) {
  normalize(x);
  Factors g = walker.partials(x);
  double r = Walker::residual_of(g);
  for (int it = 0; it < opt.max_iterations; ++it) {
    Factors grad = walker.gradient(x, g);
    // Project onto the tangent space of each unit sphere.
    double gnorm2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      Float inner{};
      for (std::size_t i = 0; i < x[k].size(); ++i) inner += std::conj(x[k][i]) * grad[k][i];
      for (std::size_t i = 0; i < x[k].size(); ++i) {
        grad[k][i] -= inner.real() * x[k][i];
        gnorm2 += std::norm(grad[k][i]);
      }
    }
    if (std::sqrt(gnorm2) < opt.gradient_tol) break;
    bool moved = false;
    for (double step = 1.0; step > 1e-20; step *= 0.5) {
      Factors trial = x;
      for (std::size_t k = 0; k < x.size(); ++k)
        for (std::size_t i = 0; i < x[k].size(); ++i) trial[k][i] -= step * grad[k][i];
      normalize(trial);
      Factors gt = walker.partials(trial);
      const double rt = Walker::residual_of(gt);
      if (rt <= r - 1e-4 * step * gnorm2) {
        x = std::move(trial);
        g = std::move(gt);
        r = rt;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return {r, std::move(x)};
}

Factors random_start(const Format& format, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Factors x;
  for (int d : format) {
    std::vector<Float> f(static_cast<std::size_t>(d));
    for (auto& c : f) c = {normal(rng), normal(rng)};
    x.push_back(std::move(f));
  }
  return x;
}

}  // namespace

double critical_residual(const FloatTensor& t, const ProductVector<Float>& x) {
  if (x.parties() != static_cast<std::size_t>(t.parties()))
    throw Error(ErrorCode::SizeMismatch, "product vector has the wrong number of factors");
  for (int j = 0; j < t.parties(); ++j)
    if (x[j].size() != static_cast<std::size_t>(t.dim(j)))
      throw Error(ErrorCode::SizeMismatch, "product vector factor length");
  Factors f = x.factors();
  normalize(f);
  return Walker::residual_of(Walker(t).partials(f));
}

CriticalSearchResult degenerate_oracle(const FloatTensor& t, const OracleOptions& options) {
  // Scale out the norm so residual tolerances refer to the unit ray.
  const double n = t.norm();
  std::vector<Float> amps(t.amplitudes().begin(), t.amplitudes().end());
  for (auto& a : amps) a /= n;
  const FloatTensor unit(t.format(), std::move(amps));
  const Walker walker(unit);

  const int restarts = std::max(options.restarts, 1);
  std::vector<std::optional<RestartResult>> results(static_cast<std::size_t>(restarts));
  auto run = [&](int i) {
    results[static_cast<std::size_t>(i)] =
        descend(walker, random_start(unit.format(), options.seed + static_cast<std::uint64_t>(i)), options);
  };
  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(restarts));
  if (threads <= 1) {
    for (int i = 0; i < restarts; ++i) run(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (int i = static_cast<int>(w); i < restarts; i += static_cast<int>(threads)) run(i);
      });
  }

  // Lowest residual wins; ties go to the lowest restart index.
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i]->residual < results[best]->residual) best = i;
  CriticalSearchResult out;
  out.residual = results[best]->residual;
  out.found = out.residual <= options.tol;
  out.witness = ProductVector<Float>(results[best]->point);
  out.restarts_used = restarts;
  return out;
}

bool identity_check(const ExactFunction& f, const ExactFunction& g, const Format& format, int trials,
                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    const ExactTensor t = random_rational_state(format, rng);
    if (!(f(t) == g(t))) return false;
  }
  return true;
}

}  // namespace onion
