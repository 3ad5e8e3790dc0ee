#include "qmt/system.hpp"

#include <bit>
#include <cmath>
#include <random>

#include "qmt/detail/binary_forms.hpp"
#include "qmt/error.hpp"

namespace qmt {

namespace detail {

std::vector<double> all_binary_forms(const Eigen::MatrixXcd& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  if (n >= 40) throw Error(ErrorCode::LimitExceeded, "binary form table too large");
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<double> mu(total, 0.0);
  for (std::uint64_t s = 1; s < total; ++s) {
    const auto i = static_cast<Eigen::Index>(std::countr_zero(s));
    const std::uint64_t rest = s & (s - 1);
    double cross = 0.0;
    for (std::uint64_t bits = rest; bits != 0; bits &= bits - 1) {
      cross += m(i, std::countr_zero(bits)).real();
    }
    mu[s] = mu[rest] + m(i, i).real() + 2.0 * cross;
  }
  return mu;
}

BinaryScan scan_binary_forms(const Eigen::MatrixXcd& m, double tol) {
  const auto mu = all_binary_forms(m);
  for (std::uint64_t s = 0; s < mu.size(); ++s) {
    if (mu[s] < -tol * static_cast<double>(std::popcount(s))) {
      return {false, s, mu[s]};
    }
  }
  return {};
}

}  // namespace detail

Tolerance::Tolerance(double abs, double rel) : eps_abs(abs), eps_rel(rel) {
  if (!(abs >= 0.0) || !(rel >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be non-negative");
  }
}

AxiomReport check_axioms(const Matrix& m, Tolerance tol,
                         std::size_t brute_force_limit) {
  AxiomReport r;
  r.tolerance = tol.bound(m);
  if (m.rows() != m.cols()) return r;

  r.hermitian = true;
  for (Eigen::Index i = 0; i < m.rows() && r.hermitian; ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > r.tolerance) {
        r.hermitian = false;
        r.hermitian_violation = {static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
        break;
      }
    }
  }

  r.entry_sum = m.sum();
  r.normalized = std::abs(r.entry_sum - Complex(1.0, 0.0)) <= r.tolerance;

  const auto n = static_cast<std::size_t>(m.rows());
  if (n <= brute_force_limit) {
    const auto scan = detail::scan_binary_forms(m, r.tolerance);
    r.weakly_positive = scan.ok;
    if (!scan.ok) {
      r.weak_violation = Event::from_mask(n, scan.first_violation);
      r.weak_violation_value = scan.value;
    }
  }
  return r;
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back("g" + std::to_string(i));
  return out;
}

QuantumSystem::QuantumSystem(std::vector<std::string> labels, Matrix matrix,
                             Tolerance tol)
    : labels_(std::move(labels)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw Error(ErrorCode::Axiom, "atomic matrix is not square");
  }
  if (static_cast<std::size_t>(matrix_.rows()) != labels_.size()) {
    throw Error(ErrorCode::Axiom, "matrix order " + std::to_string(matrix_.rows()) +
                                      " does not match " +
                                      std::to_string(labels_.size()) + " atom labels");
  }
  if (labels_.empty()) throw Error(ErrorCode::Axiom, "a system needs at least one atom");
  const auto report = check_axioms(matrix_, tol, 0);
  if (!report.hermitian) {
    const auto [i, j] = *report.hermitian_violation;
    throw Error(ErrorCode::Axiom, "matrix is not Hermitian at (" + std::to_string(i) +
                                      "," + std::to_string(j) + ")");
  }
  if (!report.normalized) {
    throw Error(ErrorCode::Axiom,
                "entries sum to " + std::to_string(report.entry_sum.real()) +
                    (report.entry_sum.imag() != 0.0
                         ? "+" + std::to_string(report.entry_sum.imag()) + "i"
                         : std::string()) +
                    ", not 1");
  }
}

QuantumSystem::QuantumSystem(Matrix matrix, Tolerance tol)
    : QuantumSystem(default_labels(static_cast<std::size_t>(matrix.rows())),
                    matrix, tol) {}

void QuantumSystem::add_metadata(std::string key, std::string value) {
  metadata_.emplace_back(std::move(key), std::move(value));
}

Complex eval_D(const QuantumSystem& s, const Event& a, const Event& b) {
  if (a.arity() != s.size() || b.arity() != s.size()) {
    throw Error(ErrorCode::ArityMismatch,
                "events of arity " + std::to_string(a.arity()) + "/" +
                    std::to_string(b.arity()) + " on a system of " +
                    std::to_string(s.size()) + " atoms");
  }
  const auto cols = b.members();
  Complex sum{0.0, 0.0};
  for (auto i : a.members()) {
    for (auto j : cols) sum += s.entry(i, j);
  }
  return sum;
}

double quantal_measure(const QuantumSystem& s, const Event& a, Tolerance tol) {
  const Complex v = eval_D(s, a, a);
  if (std::abs(v.imag()) > tol.bound(s.matrix())) {
    throw Error(ErrorCode::Numerical,
                "measure has imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

namespace {

double sum_rule_residual(const std::vector<double>& mu, std::uint64_t a,
                         std::uint64_t b, std::uint64_t c) {
  return mu[a | b | c] - mu[a | b] - mu[b | c] - mu[a | c] + mu[a] + mu[b] + mu[c];
}

// Each atom goes to alpha, beta, gamma or none: 4^n disjoint triples.
bool all_triples_pass(const std::vector<double>& mu, std::size_t n, double bound) {
  std::vector<int> digit(n, 0);
  while (true) {
    std::uint64_t abc[3] = {0, 0, 0};
    for (std::size_t i = 0; i < n; ++i) {
      if (digit[i] > 0) abc[digit[i] - 1] |= std::uint64_t{1} << i;
    }
    if (std::abs(sum_rule_residual(mu, abc[0], abc[1], abc[2])) > bound) return false;
    std::size_t pos = 0;
    while (pos < n && ++digit[pos] == 4) digit[pos++] = 0;
    if (pos == n) return true;
  }
}

}  // namespace

bool check_quantal_sum_rule(const QuantumSystem& s, Tolerance tol,
                            std::size_t samples, std::uint64_t seed) {
  const std::size_t n = s.size();
  const double bound = tol.bound(s.matrix());
  if (n <= kSumRuleExhaustiveLimit) {
    return all_triples_pass(detail::all_binary_forms(s.matrix()), n, bound);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 3);
  for (std::size_t t = 0; t < samples; ++t) {
    Event parts[3] = {Event(n), Event(n), Event(n)};
    for (std::size_t i = 0; i < n; ++i) {
      if (int d = pick(rng); d > 0) parts[d - 1].insert(i);
    }
    auto mu = [&](const Event& e) { return eval_D(s, e, e).real(); };
    const double r = mu(unite(unite(parts[0], parts[1]), parts[2])) -
                     mu(unite(parts[0], parts[1])) - mu(unite(parts[1], parts[2])) -
                     mu(unite(parts[0], parts[2])) + mu(parts[0]) + mu(parts[1]) +
                     mu(parts[2]);
    if (std::abs(r) > bound) return false;
  }
  return true;
}

Matrix event_matrix(const QuantumSystem& s, std::span<const Event> events) {
  const auto m = static_cast<Eigen::Index>(events.size());
  Matrix out(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      out(a, b) = eval_D(s, events[static_cast<std::size_t>(a)],
                         events[static_cast<std::size_t>(b)]);
    }
  }
  return out;
}

MeasureTable::MeasureTable(std::size_t n, std::vector<double> values, Tolerance tol)
    : n_(n), values_(std::move(values)) {
  if (n > kMeasureTableLimit) {
    throw Error(ErrorCode::LimitExceeded,
                "measure tables support at most " + std::to_string(kMeasureTableLimit) +
                    " atoms");
  }
  if (values_.size() != (std::size_t{1} << n)) {
    throw Error(ErrorCode::InvalidArgument, "measure table needs 2^n values");
  }
  const double bound = tol.bound(1.0);
  if (std::abs(values_.front()) > bound) {
    throw Error(ErrorCode::Axiom, "mu(empty) must be 0");
  }
  if (std::abs(values_.back() - 1.0) > bound) {
    throw Error(ErrorCode::Axiom, "mu(full) must be 1");
  }
}

MeasureTable MeasureTable::of_system(const QuantumSystem& s, Tolerance tol) {
  if (s.size() > kMeasureTableLimit) {
    throw Error(ErrorCode::LimitExceeded, "system too large for a measure table");
  }
  return MeasureTable(s.size(), detail::all_binary_forms(s.matrix()), tol);
}

bool MeasureTable::satisfies_sum_rule(Tolerance tol) const {
  if (n_ > kSumRuleExhaustiveLimit) {
    throw Error(ErrorCode::LimitExceeded, "exhaustive sum-rule check limited to " +
                                              std::to_string(kSumRuleExhaustiveLimit) +
                                              " atoms");
  }
  return all_triples_pass(values_, n_, tol.bound(1.0));
}

QuantumSystem system_from_measure(const MeasureTable& m, Tolerance tol) {
  const std::size_t n = m.size();
  const auto idx = [](std::size_t i) { return static_cast<Eigen::Index>(i); };
  Matrix d = Matrix::Zero(idx(n), idx(n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t a = std::uint64_t{1} << i;
    for (std::size_t j = i; j < n; ++j) {
      const std::uint64_t b = std::uint64_t{1} << j;
      // D^mu(A,B) = 1/2 [mu(A u B) + mu(A n B) - mu(A \ B) - mu(B \ A)]
      d(idx(i), idx(j)) = 0.5 * (m[a | b] + m[a & b] - m[a & ~b] - m[b & ~a]);
      d(idx(j), idx(i)) = d(idx(i), idx(j));  // mirrored so symmetry is exact
    }
  }
  const auto reconstructed = detail::all_binary_forms(d);
  const double bound = tol.bound(d);
  for (std::uint64_t s = 0; s < reconstructed.size(); ++s) {
    if (std::abs(reconstructed[s] - m[s]) > bound) {
      throw Error(ErrorCode::Axiom, "measure violates the quantal sum rule: event " +
                                        Event::from_mask(n, s).to_string() +
                                        " is not reproduced");
    }
  }
  QuantumSystem out(d, tol);
  out.add_metadata("origin", "real symmetric functional of a quantal measure");
  return out;
}

}  // namespace qmt
