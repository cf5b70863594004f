#include <Eigen/Dense>

#include "onion/matrix.hpp"

namespace onion {
namespace {

Eigen::MatrixXcd to_eigen(const Matrix<Float>& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

}  // namespace

std::vector<double> singular_values(const Matrix<Float>& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

Matrix<Float> left_singular_basis_adjoint(const Matrix<Float>& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m), Eigen::ComputeFullU);
  const Eigen::MatrixXcd u_adj = svd.matrixU().adjoint();
  Matrix<Float> out(u_adj.rows(), u_adj.cols());
  for (Eigen::Index r = 0; r < u_adj.rows(); ++r)
    for (Eigen::Index c = 0; c < u_adj.cols(); ++c) out(r, c) = u_adj(r, c);
  return out;
}

std::vector<double> hermitian_eigenvalues(const Matrix<Float>& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace onion
