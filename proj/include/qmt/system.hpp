#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qmt/event.hpp"

namespace qmt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Key/value provenance notes carried alongside a system, in insertion order.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Absolute plus Frobenius-relative tolerance: bound(M) = abs + rel * |M|_F.
struct Tolerance {
  double eps_abs = 1e-9;
  double eps_rel = 1e-9;

  Tolerance() = default;
  Tolerance(double abs, double rel);
  // The CLI's --eps sets both components.
  static Tolerance uniform(double eps) { return Tolerance(eps, eps); }

  double bound(const Matrix& m) const { return eps_abs + eps_rel * m.norm(); }
  double bound(double scale) const { return eps_abs + eps_rel * scale; }
};

struct AxiomReport {
  bool hermitian = false;
  std::optional<std::pair<std::size_t, std::size_t>> hermitian_violation;
  bool normalized = false;
  Complex entry_sum;
  // Additivity holds by construction: D is defined by summing atomic entries.
  bool additive_by_construction = true;
  // Present only when the atom count is within the brute-force limit.
  std::optional<bool> weakly_positive;
  std::optional<Event> weak_violation;
  double weak_violation_value = 0.0;
  double tolerance = 0.0;

  bool ok() const { return hermitian && normalized; }
};

/// Checks Hermiticity and normalisation of a raw atomic matrix, plus weak
/// positivity when n <= brute_force_limit. Accepts non-square input and
/// reports it as non-Hermitian.
AxiomReport check_axioms(const Matrix& m, Tolerance tol = {},
                         std::size_t brute_force_limit = kBruteForceLimit);

/// A finite system: n atoms and the Hermitian, normalised n x n matrix of
/// atomic decoherence values. D on arbitrary events follows by bi-additivity.
///
/// Weak positivity is not a constructor invariant, so quasi-systems are
/// representable; see classify() for membership tests.
class QuantumSystem {
 public:
  // Throws ErrorCode::Axiom if the matrix is not square, does not match the
  // label count, is not Hermitian, or is not normalised within `tol`.
  QuantumSystem(std::vector<std::string> labels, Matrix matrix,
                Tolerance tol = {});
  // Labels default to "g0".."g{n-1}".
  explicit QuantumSystem(Matrix matrix, Tolerance tol = {});

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const Matrix& matrix() const noexcept { return matrix_; }
  Complex entry(std::size_t i, std::size_t j) const { return matrix_(i, j); }

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  const Metadata& metadata() const noexcept { return metadata_; }
  void set_metadata(Metadata m) { metadata_ = std::move(m); }
  void add_metadata(std::string key, std::string value);

 private:
  std::vector<std::string> labels_;
  Matrix matrix_;
  std::string name_;
  Metadata metadata_;
};

std::vector<std::string> default_labels(std::size_t n);

/// D(a, b) = sum over i in a, j in b of matrix(i, j).
Complex eval_D(const QuantumSystem& s, const Event& a, const Event& b);

/// mu(a) = Re D(a, a). Throws ErrorCode::Numerical when the imaginary
/// residue exceeds the tolerance (signals non-Hermitian input).
double quantal_measure(const QuantumSystem& s, const Event& a, Tolerance tol = {});

// Systems up to this many atoms get every disjoint triple checked (4^n of
// them); larger systems are sampled.
inline constexpr std::size_t kSumRuleExhaustiveLimit = 10;

/// Quantal sum rule residual test over pairwise disjoint triples.
bool check_quantal_sum_rule(const QuantumSystem& s, Tolerance tol = {},
                            std::size_t samples = 100000,
                            std::uint64_t seed = 0x5eed);

/// event_matrix(s, events)(A, B) = D(events[A], events[B]).
Matrix event_matrix(const QuantumSystem& s, std::span<const Event> events);

inline constexpr std::size_t kMeasureTableLimit = 16;

/// A real function on all 2^n events of a small system, indexed by mask.
class MeasureTable {
 public:
  // Throws ErrorCode::LimitExceeded for n > 16, ErrorCode::InvalidArgument
  // on a size mismatch and ErrorCode::Axiom unless mu(empty) = 0 and
  // mu(full) = 1 within tol.
  MeasureTable(std::size_t n, std::vector<double> values, Tolerance tol = {});

  static MeasureTable of_system(const QuantumSystem& s, Tolerance tol = {});

  std::size_t size() const noexcept { return n_; }
  double operator[](std::uint64_t mask) const { return values_.at(mask); }
  double at(const Event& e) const { return values_.at(e.mask()); }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Exhaustive over disjoint triples; cost 4^n.
  bool satisfies_sum_rule(Tolerance tol = {}) const;

 private:
  std::size_t n_;
  std::vector<double> values_;
};

/// The real symmetric functional D^mu(A,B) = 1/2[mu(A u B) + mu(A n B)
/// - mu(A \ B) - mu(B \ A)] restricted to atoms. Throws ErrorCode::Axiom
/// when the induced quadratic form fails to reproduce the table, which for
/// mu(empty) = 0 is equivalent to a sum-rule violation.
QuantumSystem system_from_measure(const MeasureTable& m, Tolerance tol = {});

}  // namespace qmt
