#include "qmt/witness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qmt/classify.hpp"
#include "qmt/error.hpp"

namespace qmt {

namespace {

constexpr double kPi = std::numbers::pi;

struct Permutations {
  std::vector<std::vector<std::size_t>> even;
  std::vector<std::vector<std::size_t>> odd;
};

Permutations permutations(std::size_t m) {
  Permutations out;
  std::vector<std::size_t> p(m);
  std::iota(p.begin(), p.end(), 0);
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) inversions += p[i] > p[j];
    }
    (inversions % 2 == 0 ? out.even : out.odd).push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

void require_order(const Matrix& n) {
  if (n.rows() != n.cols()) throw Error(ErrorCode::InvalidArgument, "matrix is not square");
  const auto m = static_cast<std::size_t>(n.rows());
  if (m < 2 || m > kMaxPermOrder) {
    throw Error(ErrorCode::InvalidArgument,
                "permutation sums need order 2.." + std::to_string(kMaxPermOrder) +
                    ", got " + std::to_string(m));
  }
}

std::pair<Complex, Complex> complex_perm_sums(const Matrix& n) {
  const auto perms = permutations(static_cast<std::size_t>(n.rows()));
  auto block = [&](const std::vector<std::vector<std::size_t>>& second) {
    Complex sum{0.0, 0.0};
    for (const auto& a : perms.even) {
      for (const auto& b : second) {
        Complex prod{1.0, 0.0};
        for (std::size_t i = 0; i < a.size(); ++i) {
          prod *= n(static_cast<Eigen::Index>(a[i]), static_cast<Eigen::Index>(b[i]));
        }
        sum += prod;
      }
    }
    return sum;
  };
  return {block(perms.even), block(perms.odd)};
}

double factorial(std::size_t m) {
  double f = 1.0;
  for (std::size_t i = 2; i <= m; ++i) f *= static_cast<double>(i);
  return f;
}

bool has_phase(Complex z, double t) {
  return std::abs(z) > t && (std::abs(z.imag()) > t || z.real() < -t);
}

double ipow(double x, unsigned e) {
  double r = 1.0;
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

// n^k when it does not exceed limit.
std::optional<std::size_t> bounded_power(std::size_t n, std::size_t k, std::size_t limit) {
  std::size_t v = 1;
  for (std::size_t t = 0; t < k; ++t) {
    if (v > limit / n) return std::nullopt;
    v *= n;
  }
  return v;
}

}  // namespace

PolarEntry polar(Complex z, double tol) {
  const double r = std::abs(z);
  if (r <= tol || r == 0.0) return {};
  double theta = std::arg(z);
  if (theta <= -kPi) theta = kPi;
  return {r, theta};
}

PermSums perm_sums(const Matrix& n, Tolerance tol) {
  require_order(n);
  const auto m = static_cast<std::size_t>(n.rows());
  const auto [ee, eo] = complex_perm_sums(n);
  const double half = factorial(m) / 2.0;
  const double scale = half * half * std::max(1.0, std::pow(n.cwiseAbs().maxCoeff(), m));
  const double bound = tol.bound(scale);
  if (std::abs(ee.imag()) > bound || std::abs(eo.imag()) > bound) {
    throw Error(ErrorCode::Numerical, "permutation sums are not real: residues " +
                                          std::to_string(ee.imag()) + ", " +
                                          std::to_string(eo.imag()));
  }
  return {ee.real(), eo.real(), m, ee.imag(), eo.imag()};
}

double det_identity_residual(const Matrix& n) {
  require_order(n);
  const auto [ee, eo] = complex_perm_sums(n);
  const Complex lhs = factorial(static_cast<std::size_t>(n.rows())) * n.determinant();
  return std::abs(lhs - 2.0 * ee + 2.0 * eo);
}

SignPair cos_sign_pair(double theta) {
  if (!(theta > -kPi && theta <= kPi) || theta == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "phase must be non-zero and in (-pi, pi]");
  }
  const double a = std::abs(theta);
  if (kPi / (2.0 * a) > 1e9) {
    throw Error(ErrorCode::InvalidArgument, "phase too close to zero");
  }
  SignPair sp;
  if (a <= kPi / 2) {
    sp = {static_cast<unsigned>(std::floor(kPi / (2.0 * a) + 1.0)), 1};
  } else if (a <= 3 * kPi / 4) {
    sp = {1, 3};
  } else {
    sp = {1, 2};
  }
  // Guard the recipe against rounding right at the interval ends.
  if (!(std::cos(sp.n_neg * a) < 0.0)) {
    sp.n_neg = 1;
    while (!(std::cos(sp.n_neg * a) < 0.0)) ++sp.n_neg;
  }
  if (!(std::cos(sp.m_nonneg * a) >= 0.0)) {
    sp.m_nonneg = 1;
    while (!(std::cos(sp.m_nonneg * a) >= 0.0)) ++sp.m_nonneg;
  }
  return sp;
}

PhasePair find_phase_pair(const QuantumSystem& s, Tolerance tol) {
  const std::size_t n = s.size();
  const double t = tol.bound(s.matrix());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !has_phase(s.entry(i, j), t)) continue;
      const auto pe = polar(s.entry(i, j), t);
      return {Event::of(n, {i}), Event::of(n, {j}), pe.r, pe.theta, true};
    }
  }
  if (n > kPhaseFallbackLimit) {
    throw Error(ErrorCode::NotFound, "no atomic pair with a non-zero phase");
  }
  const auto events = enumerate_events(n);
  for (const auto& a : events) {
    for (const auto& b : events) {
      if (!has_phase(eval_D(s, a, b), t)) continue;
      const Event a1 = intersect(a, b), a2 = difference(a, b), b2 = difference(b, a);
      const std::pair<const Event*, const Event*> terms[] = {{&a1, &b2}, {&a2, &a1}, {&a2, &b2}};
      for (const auto& [x, y] : terms) {
        const Complex z = eval_D(s, *x, *y);
        if (x->is_empty() || y->is_empty() || !has_phase(z, t)) continue;
        const auto pe = polar(z, t);
        return {*x, *y, pe.r, pe.theta, x->count() == 1 && y->count() == 1};
      }
    }
  }
  throw Error(ErrorCode::NotFound, "every D value is real and non-negative within tolerance");
}

NegDetSubset find_negative_det_subset(const QuantumSystem& s, Tolerance tol) {
  const auto strong = is_strongly_positive(s, tol);
  if (strong.member) {
    throw Error(ErrorCode::Precondition, "system is strongly positive");
  }
  const std::size_t n = s.size();
  if (n >= 64) throw Error(ErrorCode::LimitExceeded, "subset search limited to 63 atoms");
  const std::uint64_t end = std::uint64_t{1} << n;
  for (std::size_t size = 1; size <= std::min(n, kNegDetSizeCap); ++size) {
    // Same-popcount masks in ascending order.
    for (std::uint64_t x = (std::uint64_t{1} << size) - 1; x < end;) {
      std::vector<std::size_t> atoms;
      for (std::uint64_t bits = x; bits != 0; bits &= bits - 1) {
        atoms.push_back(static_cast<std::size_t>(std::countr_zero(bits)));
      }
      const auto m = static_cast<Eigen::Index>(size);
      Matrix sub(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
          sub(i, j) = s.entry(atoms[static_cast<std::size_t>(i)], atoms[static_cast<std::size_t>(j)]);
        }
      }
      const double det = sub.determinant().real();
      const double thr = tol.bound(sub) * std::max(1.0, std::pow(sub.norm(), double(size - 1)));
      if (det < -thr) return {std::move(atoms), std::move(sub), det};

      const std::uint64_t c = x & (~x + 1);
      const std::uint64_t r = x + c;
      if (r == 0) break;
      x = (((r ^ x) >> 2) / c) | r;
    }
  }
  throw Error(ErrorCode::NotFound,
              "no principal minor of order <= " + std::to_string(kNegDetSizeCap) +
                  " is negative beyond tolerance; min eigenvalue " +
                  std::to_string(strong.min_eigenvalue));
}

const char* to_string(WitnessCase c) {
  switch (c) {
    case WitnessCase::A: return "a";
    case WitnessCase::BI: return "b_i";
    case WitnessCase::BII: return "b_ii";
    case WitnessCase::BIII: return "b_iii";
  }
  return "?";
}

CasePlan plan_case_a(double r_ab, double theta) {
  const auto sp = cos_sign_pair(theta);
  CasePlan plan;
  plan.kase = WitnessCase::A;
  plan.k = sp.n_neg;
  plan.predicted = 2.0 * ipow(r_ab, plan.k) * std::cos(plan.k * theta);
  return plan;
}

CasePlan plan_case_b(double r_aa, double r_bb, double r_ab, double theta, double ee,
                     double eo, std::size_t n, unsigned qmax) {
  if (!(r_aa + r_bb > 0.0)) {
    throw Error(ErrorCode::Precondition, "case (b) needs r(A,A) + r(B,B) > 0");
  }
  if (!(ee < eo)) {
    throw Error(ErrorCode::Precondition, "case (b) needs ee < eo");
  }
  const auto sp = cos_sign_pair(theta);
  CasePlan plan;
  if (eo <= 0.0) {
    plan.kase = WitnessCase::BI;
    plan.p = sp.m_nonneg;
    plan.q = 1;
  } else if (ee <= 0.0) {
    plan.kase = WitnessCase::BII;
    plan.p = sp.n_neg;
    plan.q = 1;
  } else {
    plan.kase = WitnessCase::BIII;
    plan.p = sp.n_neg;
  }
  plan.x_p = ipow(r_aa, plan.p) + ipow(r_bb, plan.p);
  plan.y_p = 2.0 * ipow(r_ab, plan.p);
  const double c = std::cos(plan.p * theta);

  if (plan.kase == WitnessCase::BIII) {
    const double target = 0.5 * plan.y_p * std::abs(c);
    const double ratio = ee / eo;
    double lhs = plan.x_p * ratio;
    plan.q = 1;
    while (lhs > target) {
      if (plan.q >= qmax) {
        throw Error(ErrorCode::QCapExceeded,
                    "subcase (iii) needs q > " + std::to_string(qmax) + " (ee/eo = " +
                        std::to_string(ratio) + ", x_p = " + std::to_string(plan.x_p) +
                        ", y_p|cos| = " + std::to_string(2.0 * target) + ")");
      }
      ++plan.q;
      lhs *= ratio;
    }
  }
  plan.k = plan.p + static_cast<unsigned>(n) * plan.q;
  plan.predicted = plan.x_p * ipow(ee, plan.q) + plan.y_p * c * ipow(eo, plan.q);
  return plan;
}

namespace {

std::vector<std::vector<std::uint32_t>> case_b_components(unsigned p, unsigned q,
                                                          std::size_t n) {
  const auto perms = permutations(n);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t side : {0u, 1u}) {
    const auto& list = side == 0 ? perms.even : perms.odd;
    std::vector<std::size_t> pick(q, 0);
    while (true) {
      std::vector<std::uint32_t> c(p, side);
      for (unsigned blk = 0; blk < q; ++blk) {
        for (auto atom : list[pick[blk]]) c.push_back(static_cast<std::uint32_t>(2 + atom));
      }
      out.push_back(std::move(c));
      unsigned pos = 0;
      while (pos < q && ++pick[pos] == list.size()) pick[pos++] = 0;
      if (pos == q) break;
    }
  }
  return out;
}

Complex direct_sum(const Matrix& t, const std::vector<std::vector<std::uint32_t>>& comps) {
  Complex sum{0.0, 0.0};
  for (const auto& c : comps) {
    for (const auto& d : comps) {
      Complex prod{1.0, 0.0};
      for (std::size_t slot = 0; slot < c.size(); ++slot) prod *= t(c[slot], d[slot]);
      sum += prod;
    }
  }
  return sum;
}

}  // namespace

Witness build_witness(const QuantumSystem& s, Tolerance tol, const WitnessOptions& opts) {
  const std::size_t n = s.size();
  if (n < 2) throw Error(ErrorCode::Precondition, "witness needs at least 2 atoms");
  const auto cls = classify(s, tol);
  if (!cls.weak.member) {
    throw Error(ErrorCode::Precondition,
                "not weakly positive: " + cls.weak.violation->to_string() +
                    " already has negative measure");
  }
  if (cls.strong.member) throw Error(ErrorCode::Precondition, "strongly positive");
  if (cls.positive_entry.member) throw Error(ErrorCode::Precondition, "positive entry");

  Witness w;
  w.neg_det = find_negative_det_subset(s, tol);
  if (w.neg_det.atoms.size() < 2) {
    throw Error(ErrorCode::Precondition, "negative atom measure in a weakly positive system");
  }
  w.sums = perm_sums(w.neg_det.submatrix, tol);
  if (!(w.sums.ee < w.sums.eo)) {
    throw Error(ErrorCode::Numerical, "negative determinant but ee >= eo");
  }

  const double t = tol.bound(s.matrix());
  std::vector<PhasePair> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !has_phase(s.entry(i, j), t)) continue;
      const auto pe = polar(s.entry(i, j), t);
      candidates.push_back({Event::of(n, {i}), Event::of(n, {j}), pe.r, pe.theta, true});
    }
  }
  if (candidates.empty()) candidates.push_back(find_phase_pair(s, tol));

  const std::size_t order = w.neg_det.atoms.size();
  std::optional<CasePlan> best;
  std::optional<Error> last_error;
  for (const auto& cand : candidates) {
    const double r_aa = polar(eval_D(s, cand.a, cand.a), t).r;
    const double r_bb = polar(eval_D(s, cand.b, cand.b), t).r;
    try {
      const CasePlan plan =
          (r_aa == 0.0 && r_bb == 0.0)
              ? plan_case_a(cand.r, cand.theta)
              : plan_case_b(r_aa, r_bb, cand.r, cand.theta, w.sums.ee, w.sums.eo, order,
                            opts.qmax);
      if (!best || std::pair{plan.q, plan.k} < std::pair{best->q, best->k}) {
        best = plan;
        w.phase = cand;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::QCapExceeded && e.code() != ErrorCode::InvalidArgument) throw;
      last_error = e;
    }
  }
  if (!best) throw *last_error;

  w.kase = best->kase;
  w.p = best->p;
  w.q = best->q;
  w.k = best->k;
  w.x_p = best->x_p;
  w.y_p = best->y_p;
  w.predicted = best->predicted;

  w.factors = {w.phase.a, w.phase.b};
  if (w.kase == WitnessCase::A) {
    w.components = {std::vector<std::uint32_t>(w.k, 0), std::vector<std::uint32_t>(w.k, 1)};
  } else {
    for (auto atom : w.neg_det.atoms) w.factors.push_back(Event::of(n, {atom}));
    const double per_side = std::pow(factorial(order) / 2.0, w.q);
    const double work = 4.0 * per_side * per_side * w.k;
    if (work > opts.work_budget) {
      throw Error(ErrorCode::LimitExceeded,
                  "verifying " + std::to_string(2.0 * per_side) +
                      " components exceeds the work budget");
    }
    w.components = case_b_components(w.p, w.q, order);
  }

  auto sorted = w.components;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::Numerical, "witness components are not distinct");
  }

  const auto f = static_cast<Eigen::Index>(w.factors.size());
  Matrix table(f, f);
  for (Eigen::Index a = 0; a < f; ++a) {
    for (Eigen::Index b = 0; b < f; ++b) {
      table(a, b) = eval_D(s, w.factors[static_cast<std::size_t>(a)],
                           w.factors[static_cast<std::size_t>(b)]);
    }
  }
  const Complex v = direct_sum(table, w.components);
  w.verified = v.real();
  w.verified_imag = v.imag();
  w.agreement_tolerance = std::max(opts.agree_abs, opts.agree_rel) *
                          std::max(1.0, std::abs(w.predicted));

  const auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::Numerical,
                what + " (case " + to_string(w.kase) + ", k=" + std::to_string(w.k) +
                    ", predicted " + std::to_string(w.predicted) + ", verified " +
                    std::to_string(w.verified) + ")");
  };
  if (std::abs(w.verified_imag) > w.agreement_tolerance) fail("verified value is not real");
  if (!(w.verified < 0.0)) fail("verified value is not negative");
  if (std::abs(w.verified - w.predicted) > w.agreement_tolerance) {
    fail("verified value disagrees with the prediction");
  }

  if (bounded_power(n, w.k, opts.materialize_limit)) {
    const Event e = witness_event(s, w, opts.materialize_limit);
    const auto power = self_compose(s, w.k, opts.materialize_limit);
    w.materialized = eval_D(power, e, e).real();
    if (std::abs(*w.materialized - w.verified) > w.agreement_tolerance) {
      fail("materialized power disagrees: " + std::to_string(*w.materialized));
    }
  }
  return w;
}

std::vector<std::string> component_labels(const QuantumSystem& s, const Witness& w) {
  std::vector<std::string> names;
  for (const auto& f : w.factors) {
    const auto members = f.members();
    if (members.size() == 1) {
      names.push_back(s.label(members[0]));
      continue;
    }
    std::string out = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
      out += (i ? "|" : "") + s.label(members[i]);
    }
    names.push_back(out + "}");
  }
  std::vector<std::string> out;
  out.reserve(w.components.size());
  for (const auto& c : w.components) {
    std::string line = "(";
    for (std::size_t slot = 0; slot < c.size(); ++slot) {
      line += (slot ? "," : "") + names[c[slot]];
    }
    out.push_back(line + ")");
  }
  return out;
}

Event witness_event(const QuantumSystem& s, const Witness& w, std::size_t limit) {
  const std::size_t n = s.size();
  const auto arity = bounded_power(n, w.k, limit);
  if (!arity) {
    throw Error(ErrorCode::LimitExceeded,
                std::to_string(n) + "^" + std::to_string(w.k) + " atoms exceeds " +
                    std::to_string(limit));
  }
  std::vector<std::vector<std::size_t>> members;
  for (const auto& f : w.factors) members.push_back(f.members());

  Event e(*arity);
  for (const auto& c : w.components) {
    std::vector<std::size_t> pick(c.size(), 0);
    while (true) {
      std::size_t index = 0;
      for (std::size_t slot = 0; slot < c.size(); ++slot) {
        index = index * n + members[c[slot]][pick[slot]];
      }
      if (e.contains(index)) throw Error(ErrorCode::Numerical, "witness components overlap");
      e.insert(index);
      bool done = true;
      for (std::size_t pos = c.size(); pos-- > 0;) {
        if (++pick[pos] < members[c[pos]].size()) {
          done = false;
          break;
        }
        pick[pos] = 0;
      }
      if (done) break;
    }
  }
  return e;
}

TensorProbeReport tensor_closed_probe(const QuantumSystem& s1, const QuantumSystem& s2,
                                      Tolerance tol) {
  const auto s1_strong = is_strongly_positive(s1, tol);
  const auto s2_entry = is_positive_entry(s2, tol);
  if (!is_positive_entry(s1, tol).member || s1_strong.member) {
    throw Error(ErrorCode::Precondition, "first system must be positive-entry and not strongly positive");
  }
  if (!is_strongly_positive(s2, tol).member || s2_entry.member) {
    throw Error(ErrorCode::Precondition, "second system must be strongly positive and not positive-entry");
  }

  const auto composed = compose(s1, s2);
  TensorProbeReport r;
  const auto strong = is_strongly_positive(composed, tol);
  r.composed_strong = strong.member;
  r.composed_min_eigenvalue = strong.min_eigenvalue;
  r.composed_positive_entry = is_positive_entry(composed, tol).member;
  if (composed.size() <= kBruteForceLimit) {
    r.composed_weak = is_weakly_positive(composed, tol).member;
  }

  const auto n1 = static_cast<Eigen::Index>(s1.size());
  r.padded_event_matrix.resize(n1, n1);
  for (Eigen::Index a = 0; a < n1; ++a) {
    for (Eigen::Index b = 0; b < n1; ++b) {
      r.padded_event_matrix(a, b) =
          marginal_check(s1, s2, Event::of(s1.size(), {static_cast<std::size_t>(a)}),
                         Event::of(s1.size(), {static_cast<std::size_t>(b)}));
    }
  }
  r.padded_min_eigenvalue =
      Eigen::SelfAdjointEigenSolver<Matrix>(r.padded_event_matrix).eigenvalues()(0);

  r.padded_entry_index = *s2_entry.violation;
  const auto [i, j] = r.padded_entry_index;
  const Event full1 = Event::full(s1.size());
  r.padded_entry = eval_D(composed, embed_product({full1, Event::of(s2.size(), {i})}),
                          embed_product({full1, Event::of(s2.size(), {j})}));

  if (r.composed_strong || r.composed_positive_entry) {
    throw Error(ErrorCode::Numerical, "composition of P\\S and S\\P landed in S or P");
  }
  return r;
}

}  // namespace qmt
