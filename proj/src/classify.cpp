#include "qmt/classify.hpp"

#include <cmath>

#include "qmt/detail/binary_forms.hpp"
#include "qmt/error.hpp"

namespace qmt {

WeakResult is_weakly_positive(const QuantumSystem& s, Tolerance tol,
                              std::size_t limit) {
  if (s.size() > limit) {
    throw Error(ErrorCode::LimitExceeded,
                "weak positivity brute force limited to " + std::to_string(limit) +
                    " atoms, system has " + std::to_string(s.size()));
  }
  const auto scan = detail::scan_binary_forms(s.matrix(), tol.bound(s.matrix()));
  WeakResult r;
  r.member = scan.ok;
  if (!scan.ok) {
    r.violation = Event::from_mask(s.size(), scan.first_violation);
    r.violation_value = scan.value;
  }
  return r;
}

StrongResult is_strongly_positive(const QuantumSystem& s, Tolerance tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(s.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::Numerical, "Hermitian eigensolver failed");
  }
  StrongResult r;
  r.min_eigenvalue = solver.eigenvalues()(0);
  r.min_eigenvector = solver.eigenvectors().col(0);
  r.member = r.min_eigenvalue >= -tol.bound(s.matrix());
  return r;
}

EntryResult is_positive_entry(const QuantumSystem& s, Tolerance tol) {
  const double t = tol.bound(s.matrix());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      const Complex z = s.entry(i, j);
      if (std::abs(z.imag()) > t || z.real() < -t) return {false, std::pair{i, j}};
    }
  }
  return {};
}

bool is_classical(const QuantumSystem& s, Tolerance tol) {
  const double t = tol.bound(s.matrix()) / static_cast<double>(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      const Complex z = s.entry(i, j);
      if (i == j ? (z.real() < -t || std::abs(z.imag()) > t) : std::abs(z) > t) {
        return false;
      }
    }
  }
  return true;
}

EntryResult is_in_dual_of_posentry(const QuantumSystem& s, Tolerance tol) {
  const double t = tol.bound(s.matrix());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (s.entry(i, j).real() < -t) return {false, std::pair{i, j}};
    }
  }
  return {};
}

bool is_real_symmetric(const QuantumSystem& s, Tolerance tol) {
  return s.matrix().imag().cwiseAbs().maxCoeff() <= tol.bound(s.matrix());
}

Classification classify(const QuantumSystem& s, Tolerance tol,
                        std::size_t brute_force_limit) {
  Classification c;
  c.tolerance = tol.bound(s.matrix());
  c.weak = is_weakly_positive(s, tol, brute_force_limit);
  c.strong = is_strongly_positive(s, tol);
  c.positive_entry = is_positive_entry(s, tol);
  c.classical = is_classical(s, tol);
  c.dual_of_posentry = is_in_dual_of_posentry(s, tol);
  c.real_symmetric = is_real_symmetric(s, tol);

  const auto require = [](bool holds, const char* what) {
    if (!holds) throw Error(ErrorCode::Numerical, std::string("inconsistent classification: ") + what);
  };
  require(!c.strong.member || c.weak.member, "strongly positive but not weakly positive");
  require(!c.classical || (c.positive_entry.member && c.strong.member),
          "classical but not positive-entry and strongly positive");
  require(!c.positive_entry.member || c.dual_of_posentry.member,
          "positive-entry but outside dual(P)");
  return c;
}

}  // namespace qmt
