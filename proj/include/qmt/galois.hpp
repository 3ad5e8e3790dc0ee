#pragma once

#include <optional>
#include <vector>

#include "qmt/system.hpp"

namespace qmt {

/// Auxiliary PSD system for a vector v of length m: atoms p0..p{m-1} carry
/// conj(v_A) v_B / rho, the extra atom x carries 1 / rho, with
/// rho = 1 + |sum v|^2.
struct ProbeSystem {
  QuantumSystem system;
  double rho;
};

/// Throws ErrorCode::InvalidArgument for empty v, ErrorCode::Numerical if
/// the result fails its PSD or normalisation self-check.
ProbeSystem build_probe_system(const Vector& v);

struct ProbeResult {
  double value = 0.0;  // composed D(E, E)
  double rho = 1.0;
  double imag_residue = 0.0;
};

/// Composes s with build_probe_system(v) and evaluates D(E, E) for
/// E = union of events[A] x {p_A}; this equals v^dagger M1 v / rho where
/// M1 = event_matrix(s, events). Throws ErrorCode::InvalidArgument on a
/// length mismatch or overlapping events.
ProbeResult probe_quadratic_form(const QuantumSystem& s, const std::vector<Event>& events,
                                 const Vector& v);

/// Atoms of s as the event list.
ProbeResult probe_quadratic_form(const QuantumSystem& s, const Vector& v);

struct DualReport {
  bool in_dual_of_posentry = false;
  // Strong positivity coincides with membership in the dual of S.
  bool strongly_positive = false;
  double min_eigenvalue = 0.0;
  // Present when s is not strongly positive: the lowest eigenvector and
  // the negative probe value it produces.
  std::optional<Vector> probe_vector;
  std::optional<ProbeResult> probe;
};

DualReport dual_membership_report(const QuantumSystem& s, Tolerance tol = {});

}  // namespace qmt
