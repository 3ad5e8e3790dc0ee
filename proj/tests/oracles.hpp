#pragma once

// Independent reference computations for the tests: plain loops, no use of
// the library's own fast paths.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline std::string data(const std::string& name) {
  return std::string(QMT_DATA_DIR) + "/" + name + ".json";
}

inline Matrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (const auto& z : r) m(i, j++) = z;
    ++i;
  }
  return m;
}

inline double uniform(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Matrix random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = uniform(rng);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      m(i, j) = Complex(uniform(rng), uniform(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

// Hermitian with entry sum 1.
inline Matrix random_normalized_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  while (true) {
    Matrix m = random_hermitian(rng, n);
    const double s = m.sum().real();
    if (std::abs(s) > 0.05) return m / s;
  }
}

inline Matrix random_complex(std::mt19937_64& rng, Eigen::Index n) {
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(uniform(rng), uniform(rng));
  }
  return m;
}

// Sum of m(i, j) over i in a, j in b, with a and b as bitmasks.
inline Complex direct_D(const Matrix& m, std::uint64_t a, std::uint64_t b) {
  Complex s{0, 0};
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (!((a >> i) & 1)) continue;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if ((b >> j) & 1) s += m(i, j);
    }
  }
  return s;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < b.rows(); ++k)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// PSD iff every principal minor is non-negative.
inline bool principal_minors_nonneg(const Matrix& m, double tol) {
  const auto n = m.rows();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < n; ++i) {
      if ((mask >> i) & 1) idx.push_back(i);
    }
    const auto k = static_cast<Eigen::Index>(idx.size());
    Matrix sub(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = m(idx[i], idx[j]);
    if (sub.determinant().real() < -tol) return false;
  }
  return true;
}

// Leibniz expansion with explicit sign, for the determinant identity.
inline Complex leibniz_det(const Matrix& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  Complex det{0, 0};
  do {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) sign = -sign;
    Complex prod{1, 0};
    for (std::size_t i = 0; i < n; ++i) prod *= m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p[i]));
    det += double(sign) * prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return det;
}

}  // namespace oracle
