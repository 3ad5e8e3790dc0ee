#include "qmt/galois.hpp"

#include "qmt/classify.hpp"
#include "qmt/compose.hpp"
#include "qmt/error.hpp"

namespace qmt {

ProbeSystem build_probe_system(const Vector& v) {
  if (v.size() == 0) throw Error(ErrorCode::InvalidArgument, "probe vector is empty");
  const Eigen::Index m = v.size();
  const Complex total = v.sum();
  const double rho = 1.0 + std::norm(total);

  Matrix d = Matrix::Zero(m + 1, m + 1);
  d.topLeftCorner(m, m) = v.conjugate() * v.transpose() / rho;
  d(m, m) = 1.0 / rho;

  std::vector<std::string> labels;
  for (Eigen::Index i = 0; i < m; ++i) labels.push_back("p" + std::to_string(i));
  labels.emplace_back("x");

  // Rank one plus a positive diagonal entry: PSD up to rounding.
  const double lambda = Eigen::SelfAdjointEigenSolver<Matrix>(d).eigenvalues()(0);
  if (lambda < -1e-12 * std::max(1.0, d.norm())) {
    throw Error(ErrorCode::Numerical, "probe matrix is not PSD");
  }
  QuantumSystem s(std::move(labels), std::move(d));
  s.set_name("probe");
  s.add_metadata("rho", std::to_string(rho));
  return {std::move(s), rho};
}

ProbeResult probe_quadratic_form(const QuantumSystem& s, const std::vector<Event>& events,
                                 const Vector& v) {
  if (static_cast<std::size_t>(v.size()) != events.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "probe vector has " + std::to_string(v.size()) + " entries for " +
                    std::to_string(events.size()) + " events");
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    for (std::size_t j = i + 1; j < events.size(); ++j) {
      if (!disjoint(events[i], events[j])) {
        throw Error(ErrorCode::InvalidArgument, "probe events " + std::to_string(i) + " and " +
                                                    std::to_string(j) + " overlap");
      }
    }
  }
  const auto probe = build_probe_system(v);
  const std::size_t m = probe.system.size();

  std::vector<ProductRectangle> rects;
  for (std::size_t a = 0; a < events.size(); ++a) {
    rects.push_back({events[a], Event::of(m, {a})});
  }
  Complex value;
  if (s.size() * m <= kMaterializeLimit) {
    const auto composed = compose(s, probe.system);
    Event e(s.size() * m);
    for (const auto& r : rects) e |= embed_product(r);
    value = eval_D(composed, e, e);
  } else {
    value = eval_composed_factored(s, probe.system, rects, rects);
  }
  return {value.real(), probe.rho, value.imag()};
}

ProbeResult probe_quadratic_form(const QuantumSystem& s, const Vector& v) {
  std::vector<Event> atoms;
  for (std::size_t i = 0; i < s.size(); ++i) atoms.push_back(Event::of(s.size(), {i}));
  return probe_quadratic_form(s, atoms, v);
}

DualReport dual_membership_report(const QuantumSystem& s, Tolerance tol) {
  DualReport r;
  r.in_dual_of_posentry = is_in_dual_of_posentry(s, tol).member;
  const auto strong = is_strongly_positive(s, tol);
  r.strongly_positive = strong.member;
  r.min_eigenvalue = strong.min_eigenvalue;
  if (!strong.member) {
    r.probe_vector = strong.min_eigenvector;
    r.probe = probe_quadratic_form(s, strong.min_eigenvector);
  }
  return r;
}

}  // namespace qmt
