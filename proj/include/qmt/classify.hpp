#pragma once

#include <optional>
#include <utility>

#include "qmt/system.hpp"

namespace qmt {

// Membership boundaries are inclusive: a value within tolerance of a
// constraint counts as satisfying it.

struct WeakResult {
  bool member = true;
  std::optional<Event> violation;  // first failing event in mask order
  double violation_value = 0.0;
};

struct StrongResult {
  bool member = true;
  double min_eigenvalue = 0.0;
  Vector min_eigenvector;
};

struct EntryResult {
  bool member = true;
  std::optional<std::pair<std::size_t, std::size_t>> violation;
};

struct Classification {
  WeakResult weak;
  StrongResult strong;
  EntryResult positive_entry;
  bool classical = false;
  EntryResult dual_of_posentry;
  bool real_symmetric = false;
  double tolerance = 0.0;  // tol.bound(matrix) as applied

  bool weakly_positive() const { return weak.member; }
  bool strongly_positive() const { return strong.member; }
  bool is_positive_entry() const { return positive_entry.member; }
  bool in_dual_of_posentry() const { return dual_of_posentry.member; }
};

/// Every binary vector v must give v^T M v >= -tol |v|^2. Scaling by |v|^2
/// keeps the bound consistent with the eigenvalue test, so strong
/// positivity implies weak positivity at the tolerance boundary too.
/// Throws ErrorCode::LimitExceeded above `limit` atoms.
WeakResult is_weakly_positive(const QuantumSystem& s, Tolerance tol = {},
                              std::size_t limit = kBruteForceLimit);

/// PSD test on the atomic matrix via Hermitian eigendecomposition; atoms
/// suffice because every event matrix is a coarse-graining of them. The
/// most negative eigenpair is always reported.
StrongResult is_strongly_positive(const QuantumSystem& s, Tolerance tol = {});

/// Every atomic entry real and non-negative.
EntryResult is_positive_entry(const QuantumSystem& s, Tolerance tol = {});

/// Diagonal with a probability vector on it. Off-diagonal magnitudes and
/// negative diagonal slack are held to tol/n so that, by Gershgorin,
/// classical systems pass the strong and positive-entry tests.
bool is_classical(const QuantumSystem& s, Tolerance tol = {});

/// Re D(A,B) >= 0 for all events, i.e. for all atomic entries.
EntryResult is_in_dual_of_posentry(const QuantumSystem& s, Tolerance tol = {});

bool is_real_symmetric(const QuantumSystem& s, Tolerance tol = {});

/// Runs every test above. Throws ErrorCode::Numerical if the results break
/// the class hierarchy (S => W, classical => S and P, P => dual(P)).
Classification classify(const QuantumSystem& s, Tolerance tol = {},
                        std::size_t brute_force_limit = kBruteForceLimit);

}  // namespace qmt
