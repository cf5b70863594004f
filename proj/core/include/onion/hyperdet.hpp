#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "onion/error.hpp"
#include "onion/matrix.hpp"
#include "onion/scalar.hpp"
#include "onion/tensor.hpp"

namespace onion {

/// F(A, x) = sum a_{i1..in} x1_{i1} ... xn_{in}.
template <Field S>
S pairing(const BasicTensor<S>& t, const ProductVector<S>& x) {
  if (x.parties() != static_cast<std::size_t>(t.parties()))
    throw Error(ErrorCode::SizeMismatch, "product vector party count");
  for (int p = 0; p < t.parties(); ++p)
    if (x[p].size() != static_cast<std::size_t>(t.dim(p)))
      throw Error(ErrorCode::SizeMismatch, "product vector factor length");
  S total = FieldTraits<S>::from_int(0);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    if (FieldTraits<S>::is_zero(t[flat], 0.0, Tolerance{0.0})) continue;
    const auto idx = t.index_of(flat);
    S term = t[flat];
    for (int p = 0; p < t.parties(); ++p) term = term * x[p][idx[p]];
    total = total + term;
  }
  return total;
}

namespace raw {

// Formula cores over bare amplitude arrays; the pencil members fed to them by
// the Schläfli lift may be the zero tensor, which BasicTensor rejects.

template <Field S>
S det2(std::span<const S> a) {
  return a[0] * a[3] - a[1] * a[2];
}

/// Cayley's 2x2x2 hyperdeterminant, term by term.
template <Field S>
S det3(std::span<const S> a) {
  const S &a000 = a[0], &a001 = a[1], &a010 = a[2], &a011 = a[3];
  const S &a100 = a[4], &a101 = a[5], &a110 = a[6], &a111 = a[7];
  const S two = FieldTraits<S>::from_int(2);
  const S four = FieldTraits<S>::from_int(4);
  S squares = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 + a010 * a010 * a101 * a101 +
              a100 * a100 * a011 * a011;
  S pairs = a000 * a001 * a110 * a111 + a000 * a010 * a101 * a111 + a000 * a100 * a011 * a111 +
            a001 * a010 * a101 * a110 + a001 * a100 * a011 * a110 + a010 * a100 * a011 * a101;
  S quads = a000 * a011 * a101 * a110 + a001 * a010 * a100 * a111;
  return squares - two * pairs + four * quads;
}

}  // namespace raw

inline void require_format(const Format& actual, const Format& expected, const char* what) {
  if (actual != expected)
    throw Error(ErrorCode::WrongFormat, std::string(what) + " expects format " + format_to_string(expected) +
                                            ", got " + format_to_string(actual));
}

template <Field S>
S det2(const BasicTensor<S>& t) {
  require_format(t.format(), {2, 2}, "det2");
  return raw::det2<S>(t.amplitudes());
}

template <Field S>
S det3_explicit(const BasicTensor<S>& t) {
  require_format(t.format(), {2, 2, 2}, "det3_explicit");
  return raw::det3<S>(t.amplitudes());
}

/// 3x3 minors m1..m4 of the 3x4 party-1 flattening, the j-th omitting
/// column j.
template <Field S>
std::array<S, 4> minors_3x2x2(const BasicTensor<S>& t) {
  require_format(t.format(), {3, 2, 2}, "minors_3x2x2");
  const Matrix<S> m = flatten(t, {0});
  std::array<S, 4> out;
  for (std::size_t skip = 0; skip < 4; ++skip) {
    Matrix<S> sub(3, 3);
    for (std::size_t r = 0; r < 3; ++r) {
      std::size_t c_out = 0;
      for (std::size_t c = 0; c < 4; ++c) {
        if (c == skip) continue;
        sub(r, c_out++) = m(r, c);
      }
    }
    out[skip] = determinant(std::move(sub));
  }
  return out;
}

/// Boundary-format hyperdeterminant m1 m4 - m2 m3, degree 6.
template <Field S>
S det_3x2x2(const BasicTensor<S>& t) {
  const auto m = minors_3x2x2(t);
  return m[0] * m[3] - m[1] * m[2];
}

/// C = 2 |Det A2|.
double concurrence(const FloatTensor& t);
/// tau = 4 |Det A3|.
double tangle3(const FloatTensor& t);
/// 4 |Det A2|^2, exact.
mpq_class concurrence_squared(const ExactTensor& t);
/// 16 |Det A3|^2, exact.
mpq_class tangle3_squared(const ExactTensor& t);

/// Binary form sum c_j x0^{l-j} x1^j.
template <Field S>
struct BinaryForm {
  int degree = 0;
  std::vector<S> coeffs;

  S evaluate(const S& x0, const S& x1) const {
    S total = FieldTraits<S>::from_int(0);
    for (int j = 0; j <= degree; ++j)
      total = total + coeffs[j] * power(x0, static_cast<unsigned>(degree - j)) * power(x1, static_cast<unsigned>(j));
    return total;
  }

  double max_magnitude() const {
    double m = 0.0;
    for (const auto& c : coeffs) m = std::max(m, FieldTraits<S>::magnitude(c));
    return m;
  }
};

template <Field S>
using BaseDeterminant = std::function<S(std::span<const S>)>;

/// Coefficients of Det(x0 A_0 + x1 A_1), A_i the slices of `t` along its
/// first party. The x1^l coefficient is read off the second slice; the
/// others come from interpolating the dehomogenized pencil at t = 0..l-1,
/// and the node t = l cross-checks the reconstruction.
template <Field S>
BinaryForm<S> binary_form_coeffs(const BasicTensor<S>& t, const BaseDeterminant<S>& base_det, int degree,
                                 Tolerance tol = {}) {
  if (t.dim(0) != 2 || t.parties() < 2)
    throw Error(ErrorCode::WrongFormat, "the pencil party must have dimension 2");
  if (degree < 1) throw Error(ErrorCode::WrongFormat, "binary form degree must be positive");
  const std::size_t half = t.size() / 2;
  const auto amps = t.amplitudes();
  const auto slice0 = amps.subspan(0, half);
  const auto slice1 = amps.subspan(half, half);

  auto pencil_at = [&](long node) {
    const S tv = FieldTraits<S>::from_int(node);
    std::vector<S> member(half);
    for (std::size_t i = 0; i < half; ++i) member[i] = slice0[i] + tv * slice1[i];
    return base_det(std::span<const S>(member));
  };

  const std::size_t l = static_cast<std::size_t>(degree);
  BinaryForm<S> form{degree, std::vector<S>(l + 1)};
  form.coeffs[l] = base_det(slice1);

  Matrix<S> vandermonde(l, l);
  std::vector<S> rhs(l);
  for (std::size_t node = 0; node < l; ++node) {
    const S tv = FieldTraits<S>::from_int(static_cast<long>(node));
    for (std::size_t j = 0; j < l; ++j) vandermonde(node, j) = power(tv, static_cast<unsigned>(j));
    rhs[node] = pencil_at(static_cast<long>(node)) - form.coeffs[l] * power(tv, static_cast<unsigned>(l));
  }
  const auto low = solve(std::move(vandermonde), std::move(rhs));
  std::copy(low.begin(), low.end(), form.coeffs.begin());

  const S check_node = FieldTraits<S>::from_int(static_cast<long>(l));
  const S sampled = pencil_at(static_cast<long>(l));
  const S rebuilt = form.evaluate(FieldTraits<S>::from_int(1), check_node);
  double scale = FieldTraits<S>::magnitude(sampled);
  for (std::size_t j = 0; j <= l; ++j)
    scale += FieldTraits<S>::magnitude(form.coeffs[j]) * std::pow(static_cast<double>(l), static_cast<double>(j));
  if (!FieldTraits<S>::is_zero(sampled - rebuilt, scale, tol))
    throw Error(ErrorCode::InterpolationInconsistent, "pencil interpolation residual above tolerance");
  return form;
}

/// Sylvester matrix of order 2l-1: l-1 shifted rows of (c0..cl) above l
/// shifted rows of (1 c1, 2 c2, ..., l cl).
template <Field S>
Matrix<S> sylvester_matrix(const BinaryForm<S>& form) {
  const std::size_t l = static_cast<std::size_t>(form.degree);
  const std::size_t order = 2 * l - 1;
  Matrix<S> m(order, order);
  for (std::size_t r = 0; r + 1 < l; ++r)
    for (std::size_t j = 0; j <= l; ++j) m(r, r + j) = form.coeffs[j];
  for (std::size_t r = 0; r < l; ++r)
    for (std::size_t j = 1; j <= l; ++j)
      m(l - 1 + r, r + j - 1) = FieldTraits<S>::from_int(static_cast<long>(j)) * form.coeffs[j];
  return m;
}

/// f(a x0 + b x1, c x0 + d x1).
template <Field S>
BinaryForm<S> substitute(const BinaryForm<S>& form, const std::array<long, 4>& g) {
  using V = std::vector<S>;
  auto mul = [](const V& p, const V& q) {
    V out(p.size() + q.size() - 1, FieldTraits<S>::from_int(0));
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) out[i + j] = out[i + j] + p[i] * q[j];
    return out;
  };
  // Coefficient vectors indexed by the power of x1.
  const V first{FieldTraits<S>::from_int(g[0]), FieldTraits<S>::from_int(g[1])};
  const V second{FieldTraits<S>::from_int(g[2]), FieldTraits<S>::from_int(g[3])};
  BinaryForm<S> out{form.degree, V(static_cast<std::size_t>(form.degree) + 1, FieldTraits<S>::from_int(0))};
  for (int j = 0; j <= form.degree; ++j) {
    V term{form.coeffs[j]};
    for (int k = 0; k < form.degree - j; ++k) term = mul(term, first);
    for (int k = 0; k < j; ++k) term = mul(term, second);
    for (std::size_t i = 0; i < term.size(); ++i) out.coeffs[i] = out.coeffs[i] + term[i];
  }
  return out;
}

template <Field S>
struct LiftResult {
  S value;
  /// The pencil's form vanished identically; value is 0 by continuity.
  bool degenerate_pencil = false;
  /// Determinant-one substitutions used to clear a zero leading coefficient.
  int retries = 0;
};

inline constexpr int kLiftRetryLimit = 8;
inline constexpr std::uint64_t kLiftRetrySeed = 0x5c41f1a1f7ULL;

/// K * det(Sylvester(form)) / c_l. A vanishing c_l is cleared by a random
/// determinant-one substitution of the form's variables (the party-1 action
/// on the underlying tensor), under which the discriminant is invariant.
template <Field S>
LiftResult<S> schlafli_lift(const BinaryForm<S>& form, const S& calibration, Tolerance tol = {}) {
  if (form.degree < 2) throw Error(ErrorCode::WrongFormat, "Schläfli lift needs degree >= 2");
  const double scale = form.max_magnitude();
  const bool all_zero = std::all_of(form.coeffs.begin(), form.coeffs.end(),
                                    [&](const S& c) { return FieldTraits<S>::is_zero(c, scale, tol); });
  if (all_zero) return {FieldTraits<S>::from_int(0), true, 0};

  std::mt19937_64 rng(kLiftRetrySeed);
  std::uniform_int_distribution<long> entry(-3, 3);
  BinaryForm<S> current = form;
  int retries = 0;
  const std::size_t l = static_cast<std::size_t>(form.degree);
  while (FieldTraits<S>::is_zero(current.coeffs[l], current.max_magnitude(), tol)) {
    if (retries == kLiftRetryLimit)
      throw Error(ErrorCode::AllLeadingZero, "leading coefficient stayed zero after retries");
    std::array<long, 4> g{};
    do {
      for (auto& e : g) e = entry(rng);
    } while (g[0] * g[3] - g[1] * g[2] != 1);
    current = substitute(form, g);
    ++retries;
  }
  const S value = calibration * determinant(sylvester_matrix(current)) / current.coeffs[l];
  return {value, false, retries};
}

/// Calibration of the lift for the target qubit count: -1 for three qubits
/// (matches Cayley's formula), 1/256 for four (matches the generic-family
/// product formula).
template <Field S>
S schlafli_calibration(int qubits) {
  switch (qubits) {
    case 3:
      return FieldTraits<S>::from_int(-1);
    case 4:
      if constexpr (FieldTraits<S>::exact) {
        return S(GaussianRational(mpq_class(1, 256)));
      } else {
        return S(1.0 / 256.0);
      }
    default:
      throw Error(ErrorCode::UnsupportedFormat, "no lift calibration for " + std::to_string(qubits) + " qubits");
  }
}

/// Det A3 through the lift of the 2x2 determinant.
template <Field S>
LiftResult<S> det3_lifted(const BasicTensor<S>& t, Tolerance tol = {}) {
  require_format(t.format(), {2, 2, 2}, "det3_lifted");
  const auto form = binary_form_coeffs<S>(t, BaseDeterminant<S>(raw::det2<S>), 2, tol);
  return schlafli_lift(form, schlafli_calibration<S>(3), tol);
}

/// Uncalibrated four-qubit lift (K = 1).
template <Field S>
LiftResult<S> det4_uncalibrated(const BasicTensor<S>& t, Tolerance tol = {}) {
  require_format(t.format(), {2, 2, 2, 2}, "det4");
  const auto form = binary_form_coeffs<S>(t, BaseDeterminant<S>(raw::det3<S>), 4, tol);
  return schlafli_lift(form, FieldTraits<S>::from_int(1), tol);
}

template <Field S>
LiftResult<S> det4_detail(const BasicTensor<S>& t, Tolerance tol = {}) {
  auto r = det4_uncalibrated(t, tol);
  r.value = r.value * schlafli_calibration<S>(4);
  return r;
}

/// Four-qubit hyperdeterminant, degree 24.
template <Field S>
S det4(const BasicTensor<S>& t, Tolerance tol = {}) {
  return det4_detail(t, tol).value;
}

/// alpha(|0000>+|1111>) + beta(|0011>+|1100>) + gamma(|0101>+|1010>)
/// + delta(|0110>+|1001>).
template <Field S>
BasicTensor<S> build_generic4(const S& alpha, const S& beta, const S& gamma, const S& delta) {
  std::vector<S> a(16, FieldTraits<S>::from_int(0));
  a[0b0000] = alpha;
  a[0b1111] = alpha;
  a[0b0011] = beta;
  a[0b1100] = beta;
  a[0b0101] = gamma;
  a[0b1010] = gamma;
  a[0b0110] = delta;
  a[0b1001] = delta;
  return BasicTensor<S>({2, 2, 2, 2}, std::move(a));
}

/// Closed-form Det A4 on the generic four-qubit family: the squared product
/// of the four parameters and the eight signed sums.
template <Field S>
S eval_eq16(const S& alpha, const S& beta, const S& gamma, const S& delta) {
  const S& a = alpha;
  const S& b = beta;
  const S& g = gamma;
  const S& d = delta;
  const std::array<S, 12> factors{a,
                                  b,
                                  g,
                                  d,
                                  a + b + g + d,
                                  a + b + g - d,
                                  a + b - g + d,
                                  a - b + g + d,
                                  -a + b + g + d,
                                  a + b - g - d,
                                  a - b + g - d,
                                  a - b - g + d};
  S product = FieldTraits<S>::from_int(1);
  for (const auto& f : factors) product = product * f * f;
  return product;
}

/// Degree of the hyperdeterminant for the formats this library evaluates.
std::optional<int> hyperdet_degree(const Format& format);

/// Polygon inequality k1 <= k2 + ... + kn with k sorted descending.
bool hyperdet_defined(const Format& format);

template <Field S>
struct HyperdetResult {
  bool defined = false;
  /// Unit when undefined.
  S value = FieldTraits<S>::from_int(1);
  int degree = 0;
  Format format;
  /// Set when the four-qubit lift met an identically vanishing pencil.
  bool degenerate_pencil = false;
};

template <Field S>
HyperdetResult<S> hyperdet(const BasicTensor<S>& t, Tolerance tol = {}) {
  HyperdetResult<S> out;
  out.format = t.format();
  if (!hyperdet_defined(t.format())) return out;
  const auto degree = hyperdet_degree(t.format());
  if (!degree)
    throw Error(ErrorCode::UnsupportedFormat, "no hyperdeterminant formula for " + format_to_string(t.format()));
  out.defined = true;
  out.degree = *degree;
  const Format& f = t.format();
  if (f.size() == 2) {
    out.value = f[0] == 2 ? det2(t) : determinant(flatten(t, {0}));
  } else if (f == Format{2, 2, 2}) {
    out.value = det3_explicit(t);
  } else if (f == Format{3, 2, 2}) {
    out.value = det_3x2x2(t);
  } else {
    const auto r = det4_detail(t, tol);
    out.value = r.value;
    out.degenerate_pencil = r.degenerate_pencil;
  }
  return out;
}

/// Exponent of det(g_j) in hyperdet(g . T) = prod det(g_j)^{l/(k_j+1)} hyperdet(T).
inline std::vector<int> relative_invariance_exponents(const Format& format) {
  const auto degree = hyperdet_degree(format);
  if (!degree) throw Error(ErrorCode::UnsupportedFormat, "no degree for " + format_to_string(format));
  std::vector<int> out;
  for (int d : format) out.push_back(*degree / d);
  return out;
}

}  // namespace onion
