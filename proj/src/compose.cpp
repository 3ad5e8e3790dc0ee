#include "qmt/compose.hpp"

#include "qmt/error.hpp"

namespace qmt {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

std::string describe(const QuantumSystem& s) {
  if (!s.name().empty()) return s.name();
  return std::to_string(s.size()) + "-atom system";
}

void require_disjoint(const std::vector<ProductRectangle>& rects, std::size_t n1,
                      std::size_t n2) {
  for (const auto& r : rects) {
    if (r.first.arity() != n1 || r.second.arity() != n2) {
      throw Error(ErrorCode::ArityMismatch, "rectangle does not match the factor arities");
    }
  }
  for (std::size_t i = 0; i < rects.size(); ++i) {
    for (std::size_t j = i + 1; j < rects.size(); ++j) {
      if (!disjoint(rects[i].first, rects[j].first) &&
          !disjoint(rects[i].second, rects[j].second)) {
        throw Error(ErrorCode::InvalidArgument,
                    "rectangles " + std::to_string(i) + " and " + std::to_string(j) +
                        " overlap");
      }
    }
  }
}

}  // namespace

QuantumSystem compose(const QuantumSystem& s1, const QuantumSystem& s2,
                      std::size_t limit) {
  const std::size_t n1 = s1.size(), n2 = s2.size();
  if (n2 != 0 && n1 > limit / n2) {
    throw Error(ErrorCode::ArityOverflow,
                std::to_string(n1) + " x " + std::to_string(n2) +
                    " atoms exceeds the composition limit of " + std::to_string(limit));
  }
  std::vector<std::string> labels;
  labels.reserve(n1 * n2);
  for (const auto& a : s1.labels()) {
    for (const auto& b : s2.labels()) labels.push_back("(" + a + "," + b + ")");
  }
  QuantumSystem out(std::move(labels), kron(s1.matrix(), s2.matrix()));
  if (!s1.name().empty() && !s2.name().empty()) out.set_name(s1.name() + "*" + s2.name());
  out.add_metadata("factor_1", describe(s1));
  out.add_metadata("factor_2", describe(s2));
  return out;
}

Complex eval_composed_factored(const QuantumSystem& s1, const QuantumSystem& s2,
                               const std::vector<ProductRectangle>& a,
                               const std::vector<ProductRectangle>& b) {
  require_disjoint(a, s1.size(), s2.size());
  require_disjoint(b, s1.size(), s2.size());
  Complex sum{0.0, 0.0};
  for (const auto& ra : a) {
    for (const auto& rb : b) {
      sum += eval_D(s1, ra.first, rb.first) * eval_D(s2, ra.second, rb.second);
    }
  }
  return sum;
}

QuantumSystem self_compose(const QuantumSystem& s, std::size_t k, std::size_t limit) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "self-composition power must be >= 1");
  if (k == 1) return s;
  std::size_t atoms = 1;
  for (std::size_t t = 0; t < k; ++t) {
    if (atoms > limit / s.size()) {
      throw Error(ErrorCode::LimitExceeded,
                  std::to_string(s.size()) + "^" + std::to_string(k) +
                      " atoms exceeds the materialization limit of " +
                      std::to_string(limit) + "; use factored evaluation");
    }
    atoms *= s.size();
  }

  Matrix m = s.matrix();
  std::vector<std::string> parts = s.labels();
  for (std::size_t t = 1; t < k; ++t) {
    m = kron(m, s.matrix());
    std::vector<std::string> next;
    next.reserve(parts.size() * s.size());
    for (const auto& p : parts) {
      for (const auto& l : s.labels()) next.push_back(p + "," + l);
    }
    parts = std::move(next);
  }
  for (auto& p : parts) p = "(" + p + ")";

  QuantumSystem out(std::move(parts), std::move(m));
  out.add_metadata("factor", describe(s));
  out.add_metadata("power", std::to_string(k));
  return out;
}

Complex marginal_check(const QuantumSystem& s1, const QuantumSystem& s2,
                       const Event& a, const Event& b) {
  const Event full2 = Event::full(s2.size());
  const ProductRectangle ra{a, full2}, rb{b, full2};
  if (s1.size() * s2.size() <= kMaterializeLimit) {
    return eval_D(compose(s1, s2), embed_product(ra), embed_product(rb));
  }
  return eval_composed_factored(s1, s2, {ra}, {rb});
}

}  // namespace qmt
