#pragma once

#include <map>
#include <optional>

#include "onion/hyperdet.hpp"
#include "onion/tensor.hpp"

namespace onion {

/// Membership in the node component X_node(j) of 2x2x2: the party-j
/// flattening has rank <= 1 (biseparable closure B_j u S).
template <Field S>
bool node_test_2x2x2(const BasicTensor<S>& t, int party, Tolerance tol = {}) {
  require_format(t.format(), {2, 2, 2}, "node_test_2x2x2");
  if (party < 0 || party > 2) throw Error(ErrorCode::BadCut, "party index out of range");
  return cut_rank(t, {party}, tol) <= 1;
}

/// X_cusp = X_sing = union of the three node components.
template <Field S>
bool cusp_test_2x2x2(const BasicTensor<S>& t, Tolerance tol = {}) {
  require_format(t.format(), {2, 2, 2}, "cusp_test_2x2x2");
  return node_test_2x2x2(t, 0, tol) || node_test_2x2x2(t, 1, tol) || node_test_2x2x2(t, 2, tol);
}

/// X_sing = X_node(1) for 3x2x2: all four 3x3 minors vanish.
template <Field S>
bool node1_test_3x2x2(const BasicTensor<S>& t, Tolerance tol = {}) {
  require_format(t.format(), {3, 2, 2}, "node1_test_3x2x2");
  const double scale = std::pow(t.norm(), 3.0);
  const auto m = minors_3x2x2(t);
  return std::all_of(m.begin(), m.end(), [&](const S& v) { return FieldTraits<S>::is_zero(v, scale, tol); });
}

/// Section conditions at x° = (e0, e0, e0).
struct XoSectionFlags {
  /// a000 = a001 = a010 = a100 = 0: x° is a critical point.
  bool in_xv_section = false;
  /// Additionally a011 = a111 = 0: the node(1) section.
  bool in_node1_section = false;
};

template <Field S>
XoSectionFlags xo_section_flags(const BasicTensor<S>& t, Tolerance tol = {}) {
  require_format(t.format(), {2, 2, 2}, "xo_section_flags");
  const double scale = t.norm();
  auto zero = [&](std::size_t i) { return FieldTraits<S>::is_zero(t[i], scale, tol); };
  XoSectionFlags flags;
  flags.in_xv_section = zero(0b000) && zero(0b001) && zero(0b010) && zero(0b100);
  flags.in_node1_section = flags.in_xv_section && zero(0b011) && zero(0b111);
  return flags;
}

template <Field S>
struct HessianAtXo {
  Matrix<S> quadric;
  S det;
};

/// Quadric part y of F(A, x) at x° and det y = 2 a011 a101 a110.
template <Field S>
HessianAtXo<S> hessian_at_xo(const BasicTensor<S>& t, Tolerance tol = {}) {
  if (!xo_section_flags(t, tol).in_xv_section)
    throw Error(ErrorCode::NotInSection, "state is not in the x° section of the dual variety");
  const S zero = FieldTraits<S>::from_int(0);
  const S& a011 = t[0b011];
  const S& a101 = t[0b101];
  const S& a110 = t[0b110];
  Matrix<S> y{{zero, a110, a101}, {a110, zero, a011}, {a101, a011, zero}};
  S det = determinant(y);
  return {std::move(y), std::move(det)};
}

template <Field S>
struct SingularityReport {
  bool in_dual = false;
  /// Keyed by the node label: for 2x2x2 the 1-based party j, for 3x2x2 the
  /// single entry 1.
  std::map<int, bool> node_flags;
  bool cusp_flag = false;
  std::optional<S> hessian_det;
};

template <Field S>
SingularityReport<S> singularity_report(const BasicTensor<S>& t, Tolerance tol = {}) {
  SingularityReport<S> r;
  if (t.format() == Format{2, 2, 2}) {
    const S det = det3_explicit(t);
    r.in_dual = FieldTraits<S>::is_zero(det, std::pow(t.norm(), 4.0), tol);
    for (int j = 0; j < 3; ++j) r.node_flags[j + 1] = node_test_2x2x2(t, j, tol);
    r.cusp_flag = r.node_flags[1] || r.node_flags[2] || r.node_flags[3];
    if (xo_section_flags(t, tol).in_xv_section) r.hessian_det = hessian_at_xo(t, tol).det;
  } else if (t.format() == Format{3, 2, 2}) {
    const S det = det_3x2x2(t);
    r.node_flags[1] = node1_test_3x2x2(t, tol);
    r.in_dual = r.node_flags[1] || FieldTraits<S>::is_zero(det, std::pow(t.norm(), 6.0), tol);
  } else {
    throw Error(ErrorCode::UnsupportedFormat, "singularity tests exist for 2x2x2 and 3x2x2 only");
  }
  return r;
}

}  // namespace onion
