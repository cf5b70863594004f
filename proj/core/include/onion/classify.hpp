#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "onion/hyperdet.hpp"
#include "onion/quadratic_extension.hpp"
#include "onion/tensor.hpp"

namespace onion {

enum class Family { Bipartite, Qubit3, Format322, Qubit4 };

enum class ClassName {
  SchmidtRank,  // bipartite S_r - S_{r-1}
  GHZ,
  W,
  B1,
  B2,
  B3,
  S,
  GEN322,
  DEG322,
  GENERIC4,
  DEGENERATE4,
};

std::string to_string(Family family);

/// One class of the onion structure for a given format family.
struct ClassLabel {
  Family family = Family::Qubit3;
  ClassName name = ClassName::S;
  /// Bipartite only: the Schmidt rank r of the class S_r - S_{r-1}.
  int schmidt_rank = 0;
  /// Format of the classified state (representatives are built in it).
  Format format;
  std::vector<int> local_ranks;
  /// 0 is the outermost class.
  int onion_level = 0;
  /// Float mode: a decisive quantity sat within 10 eps of zero.
  bool boundary_warning = false;
  std::map<std::string, std::string> diagnostics;

  /// "GHZ", "DEG322", "S_2", ...
  std::string name_string() const;
};

/// Label with level and local ranks filled in for a finite-class family.
ClassLabel make_label(Family family, ClassName name);
ClassLabel make_bipartite_label(const Format& format, int schmidt_rank);

/// Parses "GHZ", "B2", "GEN322", "S_3", ... for the given family context.
std::optional<ClassName> parse_class_name(const std::string& text);
/// Builds a label from a bare name: qubit3 for GHZ/W/B*/S, format322 for
/// GEN322/DEG322, qubit4 for GENERIC4/DEGENERATE4, bipartite for "S_r".
ClassLabel label_from_name(const std::string& text);

/// The representative tensor listed for the class.
/// Throws NoCanonicalRepresentative for the qubit4 labels.
ExactTensor representative(const ClassLabel& label);

/// Directed edges outer -> inner realizable by noninvertible local
/// operations. Queries use the transitive, reflexive closure.
struct ReachabilityDag {
  Family family;
  std::vector<ClassName> nodes;
  std::vector<std::pair<ClassName, ClassName>> edges;
};

ReachabilityDag reachability_dag(Family family);

/// True iff some (possibly singular) local operator tuple maps a state of
/// `from` into `to`. qubit3 labels embed into the 3x2x2 diagram.
bool reachable(const ClassLabel& from, const ClassLabel& to);

/// Catalog entry: a named state of the class lists with its expected label.
struct CatalogEntry {
  std::string description;
  ExactTensor state;
  Family family;
  ClassName name;
  std::vector<int> local_ranks;
};

/// Every listed representative for 2x2x2 and 3x2x2 plus the four-qubit
/// exemplars (GHZ4, W4, generic family point).
std::vector<CatalogEntry> class_catalog();

namespace detail {

struct RankProbe {
  std::size_t rank = 0;
  bool near_boundary = false;
};

template <Field S>
RankProbe probe_rank(const Matrix<S>& m, Tolerance tol) {
  if constexpr (std::same_as<S, Float>) {
    const auto sv = singular_values(m);
    RankProbe out;
    if (sv.empty() || sv.front() == 0.0) return out;
    for (double s : sv) {
      const double ratio = s / sv.front();
      if (ratio > tol.eps) ++out.rank;
      if (ratio > 0.0 && ratio <= 10.0 * tol.eps) out.near_boundary = true;
    }
    return out;
  } else {
    return {rank(m, tol), false};
  }
}

/// Zero test of a homogeneous invariant of the given degree, reporting
/// whether it sat within 10 eps of the threshold scale.
template <Field S>
std::pair<bool, bool> invariant_zero(const S& value, double norm, int degree, Tolerance tol) {
  const double scale = std::pow(norm, static_cast<double>(degree));
  const bool zero = FieldTraits<S>::is_zero(value, scale, tol);
  bool near = false;
  if constexpr (!FieldTraits<S>::exact) {
    const double ratio = FieldTraits<S>::magnitude(value) / scale;
    near = ratio > 0.0 && ratio <= 10.0 * tol.eps;
  }
  return {zero, near};
}

template <Field S>
std::string value_string(const S& v) {
  return to_string(v);
}

template <Field S>
ClassLabel classify_qubit3(const BasicTensor<S>& t, Tolerance tol) {
  std::vector<int> ranks;
  bool warn = false;
  for (int p = 0; p < 3; ++p) {
    const auto probe = probe_rank(flatten(t, {p}), tol);
    ranks.push_back(static_cast<int>(probe.rank));
    warn = warn || probe.near_boundary;
  }
  ClassLabel label;
  const int ones = static_cast<int>(std::count(ranks.begin(), ranks.end(), 1));
  const S det = det3_explicit(t);
  if (ones == 3) {
    label = make_label(Family::Qubit3, ClassName::S);
  } else if (ones == 1) {
    const auto j = std::find(ranks.begin(), ranks.end(), 1) - ranks.begin();
    label = make_label(Family::Qubit3, j == 0 ? ClassName::B1 : j == 1 ? ClassName::B2 : ClassName::B3);
  } else if (ones == 0) {
    const auto [zero, near] = invariant_zero(det, t.norm(), 4, tol);
    warn = warn || near;
    label = make_label(Family::Qubit3, zero ? ClassName::W : ClassName::GHZ);
  } else {
    // Two rank-one cuts force the third; only reachable through float noise.
    label = make_label(Family::Qubit3, ClassName::S);
    warn = true;
  }
  label.format = t.format();
  label.local_ranks = ranks;
  label.boundary_warning = warn;
  label.diagnostics["det3"] = value_string(det);
  return label;
}

/// Projects a 3x2x2 state of party-1 rank <= 2 onto a 2x2x2 state by an
/// invertible party-1 change of basis.
template <Field S>
BasicTensor<S> project_322(const BasicTensor<S>& t, Tolerance tol) {
  Matrix<S> basis;
  if constexpr (std::same_as<S, Float>) {
    basis = left_singular_basis_adjoint(flatten(t, {0}));
  } else {
    basis = row_echelon(flatten(t, {0}), tol).transform;
  }
  const LocalOperators<S> g({basis, Matrix<S>::identity(2), Matrix<S>::identity(2)});
  const auto moved = apply_local(t, g);
  const auto amps = moved.amplitudes();
  return BasicTensor<S>({2, 2, 2}, std::vector<S>(amps.begin(), amps.begin() + 8));
}

}  // namespace detail

/// Onion classifier for bipartite, 2x2x2, 3x2x2 and 2x2x2x2 formats.
template <Field S>
ClassLabel classify(const BasicTensor<S>& t, Tolerance tol = {}) {
  const Format& f = t.format();
  if (f.size() == 2) {
    const auto probe = detail::probe_rank(flatten(t, {0}), tol);
    ClassLabel label = make_bipartite_label(f, static_cast<int>(probe.rank));
    label.boundary_warning = probe.near_boundary;
    if (f[0] == f[1]) label.diagnostics["det"] = detail::value_string(determinant(flatten(t, {0})));
    return label;
  }
  if (f == Format{2, 2, 2}) return detail::classify_qubit3(t, tol);
  if (f == Format{3, 2, 2}) {
    const auto probe = detail::probe_rank(flatten(t, {0}), tol);
    if (probe.rank == 3) {
      const S det = det_3x2x2(t);
      const auto [zero, near] = detail::invariant_zero(det, t.norm(), 6, tol);
      ClassLabel label = make_label(Family::Format322, zero ? ClassName::DEG322 : ClassName::GEN322);
      label.format = f;
      label.local_ranks = local_ranks(t, tol);
      label.boundary_warning = probe.near_boundary || near;
      label.diagnostics["det_3x2x2"] = detail::value_string(det);
      return label;
    }
    const ClassLabel inner = detail::classify_qubit3(detail::project_322(t, tol), tol);
    ClassLabel label = make_label(Family::Format322, inner.name);
    label.format = f;
    label.local_ranks = inner.local_ranks;
    label.boundary_warning = inner.boundary_warning || probe.near_boundary;
    label.diagnostics = inner.diagnostics;
    label.diagnostics["det_3x2x2"] = detail::value_string(det_3x2x2(t));
    return label;
  }
  if (f == Format{2, 2, 2, 2}) {
    const auto lifted = det4_detail(t, tol);
    const auto [zero, near] = detail::invariant_zero(lifted.value, t.norm(), 24, tol);
    ClassLabel label = make_label(Family::Qubit4, zero ? ClassName::DEGENERATE4 : ClassName::GENERIC4);
    label.format = f;
    label.local_ranks = local_ranks(t, tol);
    label.boundary_warning = near;
    label.diagnostics["det4"] = detail::value_string(lifted.value);
    if (lifted.degenerate_pencil) label.diagnostics["degenerate_pencil"] = "true";
    if (zero) {
      // Cuts up to complement: the four singletons and the three pairs with party 1.
      const std::vector<PartySet> cuts{{0}, {1}, {2}, {3}, {0, 1}, {0, 2}, {0, 3}};
      std::string ranks;
      for (const auto& cut : cuts) {
        std::string name;
        for (int p : cut) name += std::to_string(p + 1);
        ranks += (ranks.empty() ? "" : ",") + name + ":" + std::to_string(cut_rank(t, cut, tol));
      }
      label.diagnostics["cut_ranks"] = ranks;
      std::string pattern;
      for (const auto& block : separability_pattern(t, tol)) {
        pattern += "{";
        for (std::size_t i = 0; i < block.size(); ++i) pattern += (i ? "," : "") + std::to_string(block[i] + 1);
        pattern += "}";
      }
      label.diagnostics["separability_pattern"] = pattern;
    }
    return label;
  }
  throw Error(ErrorCode::UnsupportedFormat, "no classifier for format " + format_to_string(f));
}

/// Field in which the canonicalizing operators of S-valued states live:
/// the GHZ splitting needs sqrt(Det A3), which leaves Q(i).
template <Field S>
struct CanonicalField;
template <>
struct CanonicalField<Exact> {
  using type = QuadraticExtension;
  static type sqrt(const type& v) {
    const GaussianRational& r = v.rational_part();
    if (auto root = exact_sqrt(r)) return type(*root);
    return type::sqrt_of(r);
  }
};
template <>
struct CanonicalField<Float> {
  using type = Float;
  static type sqrt(const type& v) { return std::sqrt(v); }
};

template <Field E>
struct CanonicalForm {
  LocalOperators<E> operators;
  ClassLabel label;
};

/// True iff a = lambda b for some nonzero lambda.
template <Field S>
bool proportional(const BasicTensor<S>& a, const BasicTensor<S>& b, Tolerance tol = {}) {
  if (a.format() != b.format()) return false;
  std::size_t pivot = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double m = FieldTraits<S>::magnitude(b[i]);
    if (m > best) {
      best = m;
      pivot = i;
    }
  }
  const S lambda = a[pivot] / b[pivot];
  const double scale = a.norm();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!FieldTraits<S>::is_zero(a[i] - lambda * b[i], scale, tol)) return false;
  }
  return !FieldTraits<S>::is_zero(lambda, 0.0, Tolerance{0.0});
}

namespace detail {

template <Field E>
Matrix<E> slice_matrix(const BasicTensor<E>& t, int index) {
  return Matrix<E>(2, 2, std::vector<E>(t.amplitudes().begin() + 4 * index, t.amplitudes().begin() + 4 * index + 4));
}

/// B = p q^T for a rank-one 2x2 (or 2xm) matrix.
template <Field E>
std::pair<std::vector<E>, std::vector<E>> rank_one_factors(const Matrix<E>& b) {
  std::size_t pi = 0, pj = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      const double m = FieldTraits<E>::magnitude(b(i, j));
      if (m > best) {
        best = m;
        pi = i;
        pj = j;
      }
    }
  std::vector<E> p(b.rows()), q(b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i) p[i] = b(i, pj);
  for (std::size_t j = 0; j < b.cols(); ++j) q[j] = b(pi, j) / b(pi, pj);
  return {p, q};
}

/// Columns (v, e_k) with e_k chosen to make the pair a basis.
template <Field E>
Matrix<E> completed_basis(const std::vector<E>& v) {
  const E zero = FieldTraits<E>::from_int(0);
  const E one = FieldTraits<E>::from_int(1);
  if (FieldTraits<E>::magnitude(v[0]) >= FieldTraits<E>::magnitude(v[1])) return Matrix<E>{{v[0], zero}, {v[1], one}};
  return Matrix<E>{{v[0], one}, {v[1], zero}};
}

template <Field E>
Matrix<E> columns(const std::vector<E>& a, const std::vector<E>& b) {
  return Matrix<E>{{a[0], b[0]}, {a[1], b[1]}};
}

template <Field E>
Matrix<E> transpose(const Matrix<E>& m) {
  Matrix<E> out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

}  // namespace detail

/// Local operators g with g . T proportional to the representative of T's
/// class. GHZ: split T along the two roots of det(x0 A0 + x1 A1). W: reduce
/// along the double root to the x° section and normalize. Biseparable and
/// separable: normalize the rank-one factors.
template <Field S>
CanonicalForm<typename CanonicalField<S>::type> canonicalize_3qubit(const BasicTensor<S>& t, Tolerance tol = {}) {
  using E = typename CanonicalField<S>::type;
  require_format(t.format(), {2, 2, 2}, "canonicalize_3qubit");
  ClassLabel label = classify(t, tol);
  const BasicTensor<E> te = tensor_cast<E>(t);
  const E zero = FieldTraits<E>::from_int(0);
  const E one = FieldTraits<E>::from_int(1);
  const Matrix<E> id = Matrix<E>::identity(2);
  auto is_zero = [&](const E& v, double scale) { return FieldTraits<E>::is_zero(v, scale, tol); };
  const double norm = t.norm();

  std::vector<Matrix<E>> g(3, id);
  switch (label.name) {
    case ClassName::GHZ:
    case ClassName::W: {
      const Matrix<E> a0 = detail::slice_matrix(te, 0);
      const Matrix<E> a1 = detail::slice_matrix(te, 1);
      Matrix<E> sum(2, 2);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) sum(i, j) = a0(i, j) + a1(i, j);
      const E c0 = determinant(a0);
      const E c2 = determinant(a1);
      const E c1 = determinant(sum) - c0 - c2;
      const double cscale = norm * norm;
      const bool use_c2 = FieldTraits<E>::exact ? !is_zero(c2, cscale)
                                                : FieldTraits<E>::magnitude(c2) >= FieldTraits<E>::magnitude(c0);
      const E two = FieldTraits<E>::from_int(2);
      if (label.name == ClassName::GHZ) {
        const E root = CanonicalField<S>::sqrt(c1 * c1 - FieldTraits<E>::from_int(4) * c0 * c2);
        std::vector<E> u, v;
        if (use_c2 && !is_zero(c2, cscale)) {
          u = {one, (-c1 + root) / (two * c2)};
          v = {one, (-c1 - root) / (two * c2)};
        } else if (!is_zero(c0, cscale)) {
          u = {(-c1 + root) / (two * c0), one};
          v = {(-c1 - root) / (two * c0), one};
        } else {
          u = {one, zero};
          v = {zero, one};
        }
        g[0] = Matrix<E>{{u[0], u[1]}, {v[0], v[1]}};
        const Matrix<E> bu = [&] {
          Matrix<E> m(2, 2);
          for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) m(i, j) = u[0] * a0(i, j) + u[1] * a1(i, j);
          return m;
        }();
        const Matrix<E> bv = [&] {
          Matrix<E> m(2, 2);
          for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) m(i, j) = v[0] * a0(i, j) + v[1] * a1(i, j);
          return m;
        }();
        const auto [p, q] = detail::rank_one_factors(bu);
        const auto [r, s] = detail::rank_one_factors(bv);
        g[1] = inverse(detail::columns(p, r));
        g[2] = inverse(detail::columns(q, s));
      } else {
        std::vector<E> u;
        if (use_c2) {
          u = {one, -c1 / (two * c2)};
        } else {
          u = {-c1 / (two * c0), one};
        }
        const std::vector<E> w = FieldTraits<E>::magnitude(u[0]) >= FieldTraits<E>::magnitude(u[1])
                                     ? std::vector<E>{zero, one}
                                     : std::vector<E>{one, zero};
        const Matrix<E> g1a{{w[0], w[1]}, {u[0], u[1]}};
        Matrix<E> c(2, 2), b(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
          for (std::size_t j = 0; j < 2; ++j) {
            c(i, j) = w[0] * a0(i, j) + w[1] * a1(i, j);
            b(i, j) = u[0] * a0(i, j) + u[1] * a1(i, j);
          }
        const auto [p, q] = detail::rank_one_factors(b);
        const Matrix<E> g2a = inverse(detail::completed_basis(p));
        const Matrix<E> g3a = inverse(detail::completed_basis(q));
        const Matrix<E> cc = g2a * c * detail::transpose(g3a);
        const Matrix<E> g1b{{one, -cc(0, 0)}, {zero, one}};
        const Matrix<E> g2b{{one, zero}, {zero, one / cc(1, 0)}};
        const Matrix<E> g3b{{one, zero}, {zero, one / cc(0, 1)}};
        g[0] = g1b * g1a;
        g[1] = g2b * g2a;
        g[2] = g3b * g3a;
      }
      break;
    }
    case ClassName::B1:
    case ClassName::B2:
    case ClassName::B3: {
      const int j = label.name == ClassName::B1 ? 0 : label.name == ClassName::B2 ? 1 : 2;
      const auto [v, m] = detail::rank_one_factors(flatten(te, {j}));
      std::vector<int> others;
      for (int p = 0; p < 3; ++p)
        if (p != j) others.push_back(p);
      const Matrix<E> mm(2, 2, m);
      const Matrix<E> flip{{zero, one}, {one, zero}};
      g[j] = inverse(detail::completed_basis(v));
      g[others[0]] = flip * inverse(mm);
      g[others[1]] = id;
      break;
    }
    default: {
      for (int p = 0; p < 3; ++p) {
        const auto [v, rest] = detail::rank_one_factors(flatten(te, {p}));
        g[p] = inverse(detail::completed_basis(v));
      }
      break;
    }
  }
  return {LocalOperators<E>(std::move(g), tol), std::move(label)};
}

}  // namespace onion
