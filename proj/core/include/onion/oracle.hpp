#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "onion/tensor.hpp"

namespace onion {

struct OracleOptions {
  int restarts = 64;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  int max_iterations = 500;
  double gradient_tol = 1e-12;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 1;
};

struct CriticalSearchResult {
  bool found = false;
  /// Unit-norm factors of the best point seen.
  std::optional<ProductVector<Float>> witness;
  double residual = 0.0;
  int restarts_used = 0;
};

/// Sum over parties and indices of |dF/dx^(j)_i|^2 at the normalized point.
double critical_residual(const FloatTensor& t, const ProductVector<Float>& x);

/// Multi-start search for a critical point of F(A, x) on the product of unit
/// spheres. found certifies Det = 0 up to tol; not found is only evidence.
CriticalSearchResult degenerate_oracle(const FloatTensor& t, const OracleOptions& options = {});

using ExactFunction = std::function<Exact(const ExactTensor&)>;

/// f == g exactly on `trials` random rational tensors of the format.
bool identity_check(const ExactFunction& f, const ExactFunction& g, const Format& format, int trials,
                    std::uint64_t seed);

}  // namespace onion
