#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace qmt::detail {

// mu(mask) = v^T Re(M) v for the indicator v of every mask in [0, 2^n),
// filled in ascending order via mu(S) = mu(S - i) + M_ii + 2 sum_{j in S-i} M_ij
// with i the lowest atom of S.
std::vector<double> all_binary_forms(const Eigen::MatrixXcd& m);

struct BinaryScan {
  bool ok = true;
  std::uint64_t first_violation = 0;
  double value = 0.0;
};

// First mask in ascending order with v^T M v < -tol * |v|^2.
BinaryScan scan_binary_forms(const Eigen::MatrixXcd& m, double tol);

}  // namespace qmt::detail
