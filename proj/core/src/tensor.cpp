#include "onion/tensor.hpp"

#include "onion/quadratic_extension.hpp"

namespace onion {

std::string format_to_string(const Format& format) {
  std::string s = "(";
  for (std::size_t i = 0; i < format.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(format[i]);
  }
  return s + ")";
}

std::vector<double> schmidt_coefficients(const FloatTensor& t) {
  if (t.parties() != 2) throw Error(ErrorCode::NotBipartite, "Schmidt data needs exactly two parties");
  return singular_values(flatten(t, {0}));
}

namespace {

/// Faddeev-LeVerrier: coefficients of det(lambda I - A), lambda^n first.
std::vector<GaussianRational> characteristic_polynomial(const Matrix<Exact>& a) {
  const std::size_t n = a.rows();
  std::vector<GaussianRational> coeffs(n + 1);
  coeffs[0] = 1;
  Matrix<Exact> m = Matrix<Exact>::identity(n);  // M_1 = I
  for (std::size_t k = 1; k <= n; ++k) {
    const Matrix<Exact> am = a * m;
    GaussianRational trace;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    coeffs[k] = -trace / GaussianRational(static_cast<long>(k));
    m = am;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += coeffs[k];
  }
  return coeffs;
}

}  // namespace

SquaredSchmidtSpectrum squared_schmidt_spectrum(const ExactTensor& t) {
  if (t.parties() != 2) throw Error(ErrorCode::NotBipartite, "Schmidt data needs exactly two parties");
  const Matrix<Exact> m = flatten(t, {0});
  Matrix<Exact> gram(m.rows(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) {
      GaussianRational acc;
      for (std::size_t c = 0; c < m.cols(); ++c) acc += m(i, c) * m(j, c).conj();
      gram(i, j) = acc;
    }

  SquaredSchmidtSpectrum out;
  out.gram = gram;
  // The Gram matrix is Hermitian, so its characteristic polynomial is real.
  for (const auto& c : characteristic_polynomial(gram)) out.characteristic_polynomial.push_back(c.real());

  auto approx = hermitian_eigenvalues(matrix_cast<Float>(gram));
  for (auto& v : approx) v = std::max(v, 0.0);
  std::sort(approx.rbegin(), approx.rend());
  out.approximate = approx;

  const std::size_t n = gram.rows();
  bool diagonal = true;
  for (std::size_t i = 0; i < n && diagonal; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !gram(i, j).is_zero()) diagonal = false;
  if (diagonal) {
    std::vector<mpq_class> values;
    for (std::size_t i = 0; i < n; ++i) values.push_back(gram(i, i).real());
    std::sort(values.rbegin(), values.rend());
    out.exact = values;
  } else if (n == 2) {
    const mpq_class& b = out.characteristic_polynomial[1];
    const mpq_class& c = out.characteristic_polynomial[2];
    const mpq_class disc = b * b - 4 * c;
    if (const auto root = exact_sqrt(GaussianRational(disc)); root && sgn(root->imag()) == 0) {
      const mpq_class hi = (-b + root->real()) / 2;
      const mpq_class lo = (-b - root->real()) / 2;
      out.exact = std::vector<mpq_class>{hi, lo};
    }
  }
  return out;
}

FloatTensor random_state(const Format& format, std::uint64_t seed) {
  validate_format(format);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Float> amps(format_volume(format));
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& a : amps) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      a = {re, im};
      norm2 += re * re + im * im;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amps) a *= inv;
  return FloatTensor(format, std::move(amps));
}

ExactTensor random_rational_state(const Format& format, std::mt19937_64& rng) {
  validate_format(format);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::vector<Exact> amps(format_volume(format));
  bool nonzero = false;
  while (!nonzero) {
    for (auto& a : amps) {
      a = GaussianRational(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
      nonzero = nonzero || !a.is_zero();
    }
  }
  for (auto& a : amps) {
    // mpq_class(int, int) is not canonical on construction.
    mpq_class re = a.real(), im = a.imag();
    re.canonicalize();
    im.canonicalize();
    a = GaussianRational(re, im);
  }
  return ExactTensor(format, std::move(amps));
}

Matrix<Exact> random_integer_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  Matrix<Exact> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = GaussianRational(dist(rng));
  return m;
}

LocalOperators<Exact> random_invertible_operators(const Format& format, std::mt19937_64& rng) {
  std::vector<Matrix<Exact>> ops;
  for (int d : format) {
    Matrix<Exact> g;
    do {
      g = random_integer_matrix(d, d, rng);
    } while (determinant(g).is_zero());
    ops.push_back(std::move(g));
  }
  return LocalOperators<Exact>(std::move(ops));
}

LocalOperators<Exact> random_singular_operators(const Format& format, std::mt19937_64& rng) {
  const std::size_t n = format.size();
  std::uniform_int_distribution<std::uint32_t> subset(1, (1u << n) - 1u);
  const std::uint32_t singular_mask = subset(rng);
  std::vector<Matrix<Exact>> ops;
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t d = static_cast<std::size_t>(format[p]);
    Matrix<Exact> g;
    if (singular_mask & (1u << p)) {
      std::uniform_int_distribution<std::size_t> rank_dist(1, d - 1);
      const std::size_t r = rank_dist(rng);
      do {
        g = random_integer_matrix(d, r, rng) * random_integer_matrix(r, d, rng);
      } while (rank(g) != r);
    } else {
      do {
        g = random_integer_matrix(d, d, rng);
      } while (determinant(g).is_zero());
    }
    ops.push_back(std::move(g));
  }
  return LocalOperators<Exact>(std::move(ops));
}

}  // namespace onion
