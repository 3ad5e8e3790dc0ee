#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmt/compose.hpp"
#include "qmt/system.hpp"

namespace qmt {

/// z = r e^{i theta} with theta in (-pi, pi]; |z| <= tol gives (0, 0).
struct PolarEntry {
  double r = 0.0;
  double theta = 0.0;
};

PolarEntry polar(Complex z, double tol = 0.0);

/// ee = sum over even pi, pi' of prod_i N(pi(i), pi'(i)); eo pairs an even pi
/// with an odd pi'. For Hermitian N both are real.
struct PermSums {
  double ee = 0.0;
  double eo = 0.0;
  std::size_t order = 0;
  double ee_imag = 0.0;
  double eo_imag = 0.0;
};

inline constexpr std::size_t kMaxPermOrder = 6;

/// Throws ErrorCode::InvalidArgument unless 2 <= order <= 6 and square,
/// ErrorCode::Numerical if an imaginary residue exceeds the tolerance.
PermSums perm_sums(const Matrix& n, Tolerance tol = {});

/// |m! det N - 2 ee + 2 eo| with complex sums, valid for any square N.
double det_identity_residual(const Matrix& n);

struct SignPair {
  unsigned n_neg = 0;     // cos(n_neg * theta) < 0
  unsigned m_nonneg = 0;  // cos(m_nonneg * theta) >= 0
};

/// Throws ErrorCode::InvalidArgument for theta = 0, theta outside (-pi, pi]
/// or |theta| so small that n_neg would not fit.
SignPair cos_sign_pair(double theta);

/// Disjoint events with D(a, b) = r e^{i theta}, r > 0 and theta != 0.
struct PhasePair {
  Event a;
  Event b;
  double r = 0.0;
  double theta = 0.0;
  bool atomic = true;
};

// Events fallback search only runs up to this many atoms.
inline constexpr std::size_t kPhaseFallbackLimit = 10;

/// First atomic off-diagonal (row-major) with non-zero phase; otherwise
/// split an event pair with non-zero phase into disjoint pieces. Throws
/// ErrorCode::NotFound when every D value is real and non-negative.
PhasePair find_phase_pair(const QuantumSystem& s, Tolerance tol = {});

struct NegDetSubset {
  std::vector<std::size_t> atoms;
  Matrix submatrix;
  double det = 0.0;
};

inline constexpr std::size_t kNegDetSizeCap = 6;

/// Smallest atom subset whose principal submatrix has a negative
/// determinant, ties by ascending mask. Throws ErrorCode::Precondition for
/// strongly positive input and ErrorCode::NotFound past the size cap.
NegDetSubset find_negative_det_subset(const QuantumSystem& s, Tolerance tol = {});

enum class WitnessCase { A, BI, BII, BIII };

// "a", "b_i", "b_ii", "b_iii"
const char* to_string(WitnessCase c);

struct CasePlan {
  WitnessCase kase = WitnessCase::A;
  unsigned p = 0;
  unsigned q = 0;
  unsigned k = 0;
  double x_p = 0.0;
  double y_p = 0.0;
  double predicted = 0.0;
};

/// Case (a): both diagonal moduli vanish, k makes cos(k theta) < 0.
CasePlan plan_case_a(double r_ab, double theta);

/// Case (b) subcase selection and choice of p, q for a negative-determinant
/// block of order n. Throws ErrorCode::QCapExceeded if subcase (iii) needs
/// q > qmax, ErrorCode::Precondition if r_aa + r_bb is not positive or
/// ee >= eo.
CasePlan plan_case_b(double r_aa, double r_bb, double r_ab, double theta,
                     double ee, double eo, std::size_t n, unsigned qmax);

struct WitnessOptions {
  unsigned qmax = 64;
  std::size_t materialize_limit = kMaterializeLimit;
  // Predicted and verified values agree within max(abs, rel) * max(1, |pred|).
  double agree_abs = 1e-9;
  double agree_rel = 1e-9;
  // Cap on slot products evaluated by the direct verification sum.
  double work_budget = 4e9;
};

struct Witness {
  WitnessCase kase = WitnessCase::A;
  PhasePair phase;
  NegDetSubset neg_det;
  PermSums sums;
  unsigned p = 0, q = 0, k = 0;
  double x_p = 0.0, y_p = 0.0;

  // E is the disjoint union of product events; each component lists, slot
  // by slot, an index into `factors`.
  std::vector<Event> factors;
  std::vector<std::vector<std::uint32_t>> components;

  double predicted = 0.0;
  double verified = 0.0;
  double verified_imag = 0.0;
  std::optional<double> materialized;
  double agreement_tolerance = 0.0;
};

/// Builds the explicit negative-measure event in s^k for s weakly positive,
/// neither strongly positive nor positive-entry, with n >= 2. Among atomic
/// phase pairs, the one with the smallest (q, k) is used.
///
/// The verified value is a direct double sum over components of the slot
/// products of D; when n^k fits the materialization limit it is also
/// compared against eval_D on self_compose(s, k).
///
/// Throws ErrorCode::Precondition, ErrorCode::QCapExceeded,
/// ErrorCode::LimitExceeded (verification too costly) or
/// ErrorCode::Numerical (verification disagrees).
Witness build_witness(const QuantumSystem& s, Tolerance tol = {},
                      const WitnessOptions& opts = {});

/// Component tuples rendered with atom labels; non-atomic factors print as
/// "{a|b}".
std::vector<std::string> component_labels(const QuantumSystem& s, const Witness& w);

/// E as an event of the materialized power (arity n^k). Throws
/// ErrorCode::LimitExceeded past `limit`, ErrorCode::Numerical if two
/// components overlap.
Event witness_event(const QuantumSystem& s, const Witness& w,
                    std::size_t limit = kMaterializeLimit);

struct TensorProbeReport {
  bool composed_strong = false;
  double composed_min_eigenvalue = 0.0;
  bool composed_positive_entry = false;
  std::optional<bool> composed_weak;
  // Event matrix of {atom} x Omega2 over the atoms of s1.
  Matrix padded_event_matrix;
  double padded_min_eigenvalue = 0.0;
  // Omega1 x {i}, Omega1 x {j} for a non-positive entry (i, j) of s2.
  std::pair<std::size_t, std::size_t> padded_entry_index;
  Complex padded_entry;
};

/// Requires s1 positive-entry and not strongly positive and s2 strongly
/// positive and not positive-entry (ErrorCode::Precondition otherwise).
/// Throws ErrorCode::Numerical if the composition lands in either class.
TensorProbeReport tensor_closed_probe(const QuantumSystem& s1, const QuantumSystem& s2,
                                      Tolerance tol = {});

}  // namespace qmt
