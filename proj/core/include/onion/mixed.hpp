#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "onion/classify.hpp"

namespace onion {

/// Totally ordered chain of convex closed sets for 3-qubit mixed states.
enum class LadderClass { Separable = 0, Biseparable = 1, W = 2, GHZ = 3 };

std::string to_string(LadderClass c);
LadderClass ladder_of(ClassName pure);

/// One explicit convex decomposition rho = sum p_mu |psi_mu><psi_mu|.
template <Field S>
class Ensemble {
 public:
  using Weight = typename FieldTraits<S>::Real;
  struct Member {
    Weight weight;
    BasicTensor<S> state;
  };

  explicit Ensemble(std::vector<Member> members, Tolerance tol = {}) : members_(std::move(members)) {
    if (members_.empty()) throw Error(ErrorCode::EmptyEnsemble, "ensemble has no members");
    Weight total = 0;
    for (const auto& m : members_) {
      if (!(m.weight > 0)) throw Error(ErrorCode::InvalidEnsemble, "weights must be positive");
      if (m.state.format() != members_.front().state.format())
        throw Error(ErrorCode::InvalidEnsemble, "member formats differ");
      total += m.weight;
    }
    bool unit;
    if constexpr (FieldTraits<S>::exact) {
      unit = total == 1;
    } else {
      unit = std::abs(total - 1.0) <= tol.eps;
    }
    if (!unit) throw Error(ErrorCode::InvalidEnsemble, "weights do not sum to one");
  }

  const std::vector<Member>& members() const noexcept { return members_; }
  const Format& format() const { return members_.front().state.format(); }

 private:
  std::vector<Member> members_;
};

struct LadderResult {
  LadderClass ladder;
  /// Always "upper-bound": only the given decomposition is examined.
  std::string bound_kind = "upper-bound";
  std::vector<ClassLabel> member_labels;
};

/// Maximal ladder class over the members of this decomposition.
template <Field S>
LadderResult ensemble_upper_class(const Ensemble<S>& e, Tolerance tol = {}) {
  if (e.format() != Format{2, 2, 2})
    throw Error(ErrorCode::UnsupportedFormat, "the mixed-state ladder is defined for 2x2x2 only");
  LadderResult out{LadderClass::Separable, "upper-bound", {}};
  for (const auto& m : e.members()) {
    out.member_labels.push_back(classify(m.state, tol));
    out.ladder = std::max(out.ladder, ladder_of(out.member_labels.back().name));
  }
  return out;
}

/// rho = sum p |psi><psi| / <psi|psi>.
template <Field S>
Matrix<S> density_matrix(const Ensemble<S>& e) {
  const std::size_t n = format_volume(e.format());
  Matrix<S> rho(n, n);
  for (const auto& m : e.members()) {
    const auto a = m.state.amplitudes();
    typename FieldTraits<S>::Real norm2 = 0;
    for (const auto& v : a) norm2 += FieldTraits<S>::norm(v);
    const S scale = FieldTraits<S>::from_real(m.weight / norm2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rho(i, j) = rho(i, j) + scale * a[i] * FieldTraits<S>::conj(a[j]);
  }
  return rho;
}

}  // namespace onion
