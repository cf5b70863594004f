#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "onion/error.hpp"
#include "onion/matrix.hpp"
#include "onion/scalar.hpp"

namespace onion {

/// Party dimensions (k_1 + 1, ..., k_n + 1).
using Format = std::vector<int>;
/// Zero-based party indices.
using PartySet = std::vector<int>;
/// Blocks of zero-based party indices, each block and the list sorted.
using Partition = std::vector<std::vector<int>>;

std::string format_to_string(const Format& format);

inline std::size_t format_volume(const Format& format) {
  return std::accumulate(format.begin(), format.end(), std::size_t{1},
                         [](std::size_t acc, int d) { return acc * static_cast<std::size_t>(d); });
}

inline void validate_format(const Format& format) {
  if (format.empty()) throw Error(ErrorCode::BadDimension, "a state needs at least one party");
  for (int d : format) {
    if (d < 2) throw Error(ErrorCode::BadDimension, "party dimension " + std::to_string(d) + " < 2");
  }
}

/// Dense amplitude tensor a_{i1...in}, last party index fastest. States are
/// rays: amplitudes are stored as given, never normalized.
template <Field S>
class BasicTensor {
 public:
  using value_type = S;

  BasicTensor(Format format, std::vector<S> amplitudes)
      : format_(std::move(format)), amplitudes_(std::move(amplitudes)) {
    validate_format(format_);
    if (amplitudes_.size() != format_volume(format_)) {
      throw Error(ErrorCode::FormatMismatch,
                  std::to_string(amplitudes_.size()) + " amplitudes for format " +
                      format_to_string(format_));
    }
    if (std::all_of(amplitudes_.begin(), amplitudes_.end(),
                    [](const S& a) { return FieldTraits<S>::is_zero(a, 0.0, Tolerance{0.0}); })) {
      throw Error(ErrorCode::ZeroState, "all amplitudes are zero");
    }
  }

  const Format& format() const noexcept { return format_; }
  int parties() const noexcept { return static_cast<int>(format_.size()); }
  int dim(int party) const { return format_.at(static_cast<std::size_t>(party)); }
  std::size_t size() const noexcept { return amplitudes_.size(); }
  std::span<const S> amplitudes() const noexcept { return amplitudes_; }

  const S& operator[](std::size_t flat) const { return amplitudes_[flat]; }
  const S& at(std::span<const int> index) const { return amplitudes_[offset(index)]; }

  std::size_t offset(std::span<const int> index) const {
    std::size_t off = 0;
    for (std::size_t p = 0; p < format_.size(); ++p) off = off * format_[p] + index[p];
    return off;
  }

  /// Multi-index of a flat position.
  std::vector<int> index_of(std::size_t flat) const {
    std::vector<int> idx(format_.size());
    for (std::size_t p = format_.size(); p-- > 0;) {
      idx[p] = static_cast<int>(flat % format_[p]);
      flat /= format_[p];
    }
    return idx;
  }

  double norm() const {
    double acc = 0.0;
    for (const auto& a : amplitudes_) {
      const double m = FieldTraits<S>::magnitude(a);
      acc += m * m;
    }
    return std::sqrt(acc);
  }

  friend bool operator==(const BasicTensor& a, const BasicTensor& b) {
    return a.format_ == b.format_ && a.amplitudes_ == b.amplitudes_;
  }

 private:
  Format format_;
  std::vector<S> amplitudes_;
};

using ExactTensor = BasicTensor<Exact>;
using FloatTensor = BasicTensor<Float>;

template <Field To, Field From>
BasicTensor<To> tensor_cast(const BasicTensor<From>& t) {
  std::vector<To> amps;
  amps.reserve(t.size());
  for (const auto& a : t.amplitudes()) amps.push_back(field_cast<To>(a));
  return BasicTensor<To>(t.format(), std::move(amps));
}

/// Sum of computational basis kets written as digit strings, e.g.
/// kets<Exact>({2,2,2}, {"000", "111"}).
template <Field S>
BasicTensor<S> kets(const Format& format, std::initializer_list<std::string_view> labels) {
  validate_format(format);
  std::vector<S> amps(format_volume(format), FieldTraits<S>::from_int(0));
  for (auto label : labels) {
    if (label.size() != format.size()) throw Error(ErrorCode::FormatMismatch, "ket label length");
    std::size_t off = 0;
    for (std::size_t p = 0; p < format.size(); ++p) {
      const int digit = label[p] - '0';
      if (digit < 0 || digit >= format[p]) throw Error(ErrorCode::FormatMismatch, "ket digit range");
      off = off * format[p] + digit;
    }
    amps[off] = amps[off] + FieldTraits<S>::from_int(1);
  }
  return BasicTensor<S>(format, std::move(amps));
}

/// Tuple of per-party coefficient vectors, a point of the Segre variety.
template <Field S>
class ProductVector {
 public:
  explicit ProductVector(std::vector<std::vector<S>> factors) : factors_(std::move(factors)) {
    for (const auto& f : factors_) {
      if (std::all_of(f.begin(), f.end(),
                      [](const S& v) { return FieldTraits<S>::is_zero(v, 0.0, Tolerance{0.0}); })) {
        throw Error(ErrorCode::ZeroState, "product vector factor is zero");
      }
    }
  }

  std::size_t parties() const noexcept { return factors_.size(); }
  const std::vector<S>& operator[](std::size_t j) const { return factors_[j]; }
  const std::vector<std::vector<S>>& factors() const noexcept { return factors_; }

  /// Equality up to a nonzero scalar per factor.
  bool projectively_equal(const ProductVector& other, Tolerance tol = {}) const {
    if (factors_.size() != other.factors_.size()) return false;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      const auto& a = factors_[j];
      const auto& b = other.factors_[j];
      if (a.size() != b.size()) return false;
      double scale = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i)
        scale = std::max(scale, FieldTraits<S>::magnitude(a[i]) * FieldTraits<S>::magnitude(b[i]));
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = i + 1; k < a.size(); ++k) {
          if (!FieldTraits<S>::is_zero(a[i] * b[k] - a[k] * b[i], scale, tol)) return false;
        }
    }
    return true;
  }

 private:
  std::vector<std::vector<S>> factors_;
};

/// One square operator per party together with its determinant.
template <Field S>
class LocalOperators {
 public:
  explicit LocalOperators(std::vector<Matrix<S>> ops, Tolerance tol = {}) : ops_(std::move(ops)) {
    for (const auto& g : ops_) {
      if (!g.square()) throw Error(ErrorCode::SizeMismatch, "local operator must be square");
      dets_.push_back(determinant(g));
      const double scale = std::pow(std::max(g.max_magnitude(), 1e-300), static_cast<double>(g.rows()));
      invertible_.push_back(!FieldTraits<S>::is_zero(dets_.back(), scale, tol));
    }
  }

  static LocalOperators identity(const Format& format) {
    std::vector<Matrix<S>> ops;
    for (int d : format) ops.push_back(Matrix<S>::identity(static_cast<std::size_t>(d)));
    return LocalOperators(std::move(ops));
  }

  std::size_t size() const noexcept { return ops_.size(); }
  const Matrix<S>& operator[](std::size_t j) const { return ops_[j]; }
  const std::vector<Matrix<S>>& operators() const noexcept { return ops_; }
  const S& determinant_of(std::size_t j) const { return dets_[j]; }
  bool invertible(std::size_t j) const { return invertible_[j]; }
  bool all_invertible() const {
    return std::all_of(invertible_.begin(), invertible_.end(), [](bool b) { return b; });
  }

  /// (this ∘ first): apply `first`, then this.
  LocalOperators after(const LocalOperators& first) const {
    if (first.size() != size()) throw Error(ErrorCode::SizeMismatch, "operator tuple lengths");
    std::vector<Matrix<S>> ops;
    for (std::size_t j = 0; j < size(); ++j) ops.push_back(ops_[j] * first.ops_[j]);
    return LocalOperators(std::move(ops));
  }

 private:
  std::vector<Matrix<S>> ops_;
  std::vector<S> dets_;
  std::vector<bool> invertible_;
};

namespace detail {

inline PartySet validated_cut(PartySet parties, int n) {
  std::sort(parties.begin(), parties.end());
  parties.erase(std::unique(parties.begin(), parties.end()), parties.end());
  if (parties.empty() || static_cast<int>(parties.size()) >= n)
    throw Error(ErrorCode::BadCut, "cut must be a nonempty proper subset of the parties");
  if (parties.front() < 0 || parties.back() >= n) throw Error(ErrorCode::BadCut, "party out of range");
  return parties;
}

inline PartySet complement(const PartySet& parties, int n) {
  PartySet out;
  for (int p = 0; p < n; ++p)
    if (!std::binary_search(parties.begin(), parties.end(), p)) out.push_back(p);
  return out;
}

inline std::size_t sub_offset(const std::vector<int>& index, const PartySet& parties, const Format& format) {
  std::size_t off = 0;
  for (int p : parties) off = off * format[p] + index[p];
  return off;
}

inline std::size_t sub_volume(const PartySet& parties, const Format& format) {
  std::size_t v = 1;
  for (int p : parties) v *= format[p];
  return v;
}

}  // namespace detail

/// Bipartite-cut matrix: rows run over the parties in `parties`, columns
/// over the complement, both row-major in ascending party order.
template <Field S>
Matrix<S> flatten(const BasicTensor<S>& t, PartySet parties) {
  parties = detail::validated_cut(std::move(parties), t.parties());
  const PartySet rest = detail::complement(parties, t.parties());
  Matrix<S> m(detail::sub_volume(parties, t.format()), detail::sub_volume(rest, t.format()));
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    const auto idx = t.index_of(flat);
    m(detail::sub_offset(idx, parties, t.format()), detail::sub_offset(idx, rest, t.format())) = t[flat];
  }
  return m;
}

/// Inverse of flatten for the same format and cut.
template <Field S>
BasicTensor<S> unflatten(const Matrix<S>& m, const Format& format, PartySet parties) {
  validate_format(format);
  const int n = static_cast<int>(format.size());
  parties = detail::validated_cut(std::move(parties), n);
  const PartySet rest = detail::complement(parties, n);
  if (m.rows() != detail::sub_volume(parties, format) || m.cols() != detail::sub_volume(rest, format))
    throw Error(ErrorCode::SizeMismatch, "matrix shape does not match the cut");
  std::vector<S> amps(format_volume(format));
  std::vector<int> idx(format.size());
  for (std::size_t flat = 0; flat < amps.size(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t p = format.size(); p-- > 0;) {
      idx[p] = static_cast<int>(rem % format[p]);
      rem /= format[p];
    }
    amps[flat] = m(detail::sub_offset(idx, parties, format), detail::sub_offset(idx, rest, format));
  }
  return BasicTensor<S>(format, std::move(amps));
}

template <Field S>
std::size_t cut_rank(const BasicTensor<S>& t, PartySet parties, Tolerance tol = {}) {
  return rank(flatten(t, std::move(parties)), tol);
}

template <Field S>
std::vector<int> local_ranks(const BasicTensor<S>& t, Tolerance tol = {}) {
  std::vector<int> ranks;
  for (int p = 0; p < t.parties(); ++p) ranks.push_back(static_cast<int>(cut_rank(t, {p}, tol)));
  return ranks;
}

/// Singular values of the 1|2 flattening, descending.
std::vector<double> schmidt_coefficients(const FloatTensor& t);

/// Exact-field counterpart of the Schmidt coefficients: their squares are
/// the eigenvalues of the Gram matrix M M^H, which need not be rational.
struct SquaredSchmidtSpectrum {
  Matrix<Exact> gram;
  /// Monic characteristic polynomial det(lambda I - G), highest power first.
  std::vector<mpq_class> characteristic_polynomial;
  /// Floating approximations of the squared coefficients, descending.
  std::vector<double> approximate;
  /// Exact squared coefficients, descending, when all of them are rational
  /// and detectable (diagonal Gram matrix or a 2x2 with square discriminant).
  std::optional<std::vector<mpq_class>> exact;
};

SquaredSchmidtSpectrum squared_schmidt_spectrum(const ExactTensor& t);

namespace detail {

/// Contracts the operator `g` into party `party` of a dense amplitude array.
template <Field S>
std::vector<S> mode_product(const std::vector<S>& amps, const Format& format, int party, const Matrix<S>& g) {
  const std::size_t d = static_cast<std::size_t>(format[party]);
  std::size_t inner = 1;
  for (std::size_t p = static_cast<std::size_t>(party) + 1; p < format.size(); ++p) inner *= format[p];
  const std::size_t outer = amps.size() / (d * inner);
  std::vector<S> out(amps.size(), FieldTraits<S>::from_int(0));
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t in = 0; in < inner; ++in) {
        const S& a = amps[(o * d + j) * inner + in];
        if (FieldTraits<S>::is_zero(a, 0.0, Tolerance{0.0})) continue;
        for (std::size_t i = 0; i < d; ++i) {
          auto& target = out[(o * d + i) * inner + in];
          target = target + g(i, j) * a;
        }
      }
  return out;
}

}  // namespace detail

/// a'_{i1..in} = sum (g1)_{i1 j1} ... (gn)_{in jn} a_{j1..jn}. Throws
/// ZeroState when a singular operator annihilates the state.
template <Field S>
BasicTensor<S> apply_local(const BasicTensor<S>& t, const LocalOperators<S>& g) {
  if (g.size() != static_cast<std::size_t>(t.parties()))
    throw Error(ErrorCode::SizeMismatch, "operator count differs from party count");
  std::vector<S> amps(t.amplitudes().begin(), t.amplitudes().end());
  for (int p = 0; p < t.parties(); ++p) {
    if (g[p].rows() != static_cast<std::size_t>(t.dim(p)))
      throw Error(ErrorCode::SizeMismatch, "operator size differs from party dimension");
    amps = detail::mode_product(amps, t.format(), p, g[p]);
  }
  if constexpr (!FieldTraits<S>::exact) {
    // Float residue of an annihilated state is flushed to the exact zero so
    // that the ZeroState contract is uniform across fields.
    double scale = t.norm();
    for (const auto& m : g.operators()) scale *= std::max(m.max_magnitude(), 1e-300) * m.rows();
    double mx = 0.0;
    for (const auto& a : amps) mx = std::max(mx, std::abs(a));
    if (mx <= Tolerance{}.eps * scale * 1e-3) throw Error(ErrorCode::ZeroState, "operators annihilate the state");
  }
  return BasicTensor<S>(t.format(), std::move(amps));
}

/// Finest partition of the parties such that every cut separating blocks
/// has rank one. One block: no product structure; all singletons: fully
/// separable.
template <Field S>
Partition separability_pattern(const BasicTensor<S>& t, Tolerance tol = {}) {
  const int n = t.parties();
  if (n == 1) return {{0}};
  // The rank-one cuts are closed under intersection, so each party's block
  // is the intersection of every rank-one side containing it.
  std::vector<std::uint32_t> block(static_cast<std::size_t>(n), (1u << n) - 1u);
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    PartySet cut;
    for (int p = 0; p < n; ++p)
      if (mask & (1u << p)) cut.push_back(p);
    if (cut_rank(t, cut, tol) != 1) continue;
    for (int p = 0; p < n; ++p) {
      block[p] &= (mask & (1u << p)) ? mask : ~mask;
    }
  }
  Partition out;
  std::uint32_t seen = 0;
  for (int p = 0; p < n; ++p) {
    if (seen & (1u << p)) continue;
    std::vector<int> b;
    for (int q = 0; q < n; ++q)
      if (block[p] & (1u << q)) b.push_back(q);
    seen |= block[p];
    out.push_back(std::move(b));
  }
  return out;
}

/// i.i.d. standard complex gaussian amplitudes scaled to unit norm;
/// deterministic for a fixed seed.
FloatTensor random_state(const Format& format, std::uint64_t seed);

/// Gaussian-rational amplitudes with small numerators and denominators,
/// used wherever exact random sampling is needed.
ExactTensor random_rational_state(const Format& format, std::mt19937_64& rng);

/// Random integer matrix with entries drawn uniformly from [lo, hi].
Matrix<Exact> random_integer_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, int lo = -3, int hi = 3);

/// Invertible integer operators for every party.
LocalOperators<Exact> random_invertible_operators(const Format& format, std::mt19937_64& rng);

/// Operators with at least one party rank-deficient (but nonzero).
LocalOperators<Exact> random_singular_operators(const Format& format, std::mt19937_64& rng);

template <Field To, Field From>
LocalOperators<To> operators_cast(const LocalOperators<From>& g) {
  std::vector<Matrix<To>> ops;
  for (const auto& m : g.operators()) ops.push_back(matrix_cast<To>(m));
  return LocalOperators<To>(std::move(ops));
}

}  // namespace onion
