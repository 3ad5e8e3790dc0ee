#include "qmt/gen.hpp"

#include <cmath>

#include "qmt/classify.hpp"
#include "qmt/error.hpp"

namespace qmt {

const char* to_string(Kind k) {
  switch (k) {
    case Kind::Strong: return "strong";
    case Kind::PosEntry: return "posentry";
    case Kind::Classical: return "classical";
    case Kind::WeakNotStrongNotPosEntry: return "weak_not_strong_not_posentry";
    case Kind::HermitianOnly: return "hermitian_only";
  }
  return "?";
}

std::optional<Kind> parse_kind(std::string_view s) {
  for (Kind k : {Kind::Strong, Kind::PosEntry, Kind::Classical,
                 Kind::WeakNotStrongNotPosEntry, Kind::HermitianOnly}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

using Index = Eigen::Index;

Matrix symmetric_uniform(SplitMix64& rng, Index n, double lo, double hi) {
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) m(i, j) = m(j, i) = rng.uniform(lo, hi);
  }
  return m;
}

std::optional<Matrix> draw_strong(SplitMix64& rng, Index n) {
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) a(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  }
  Matrix g = a.adjoint() * a;
  g = (g + g.adjoint()) / 2.0;
  const double sum = g.sum().real();
  if (sum < 1e-6) return std::nullopt;
  return Matrix(g / sum);
}

std::optional<Matrix> draw_posentry(SplitMix64& rng, Index n) {
  Matrix m = symmetric_uniform(rng, n, 0, 1);
  const double sum = m.sum().real();
  if (sum < 1e-6) return std::nullopt;
  return Matrix(m / sum);
}

std::optional<Matrix> draw_classical(SplitMix64& rng, Index n) {
  Matrix m = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = rng.uniform();
  const double sum = m.sum().real();
  if (sum < 1e-6) return std::nullopt;
  return Matrix(m / sum);
}

// P diagonally dominant and entrywise positive, so PSD; an imaginary
// antisymmetric part iK leaves every binary form alone but, scaled far
// enough, pushes an eigenvalue below zero. Diagonal dominance keeps the
// determinant ratios ee/eo small, which keeps the witness power low.
std::optional<Matrix> draw_weak_only(SplitMix64& rng, Index n) {
  Matrix p = symmetric_uniform(rng, n, 0, 0.3);
  for (Index i = 0; i < n; ++i) p(i, i) = rng.uniform(1, 2);
  p /= p.sum().real();

  Matrix k = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double x = rng.uniform(-1, 1);
      k(i, j) = Complex(0, x);
      k(j, i) = Complex(0, -x);
    }
  }
  if (k.norm() < 1e-3) return std::nullopt;

  auto lambda_min = [&](double s) {
    return Eigen::SelfAdjointEigenSolver<Matrix>(p + s * k).eigenvalues()(0);
  };
  double s = 1e-3;
  for (int it = 0; lambda_min(s) >= -1e-8; ++it) {
    if (it > 60) return std::nullopt;
    s *= 2.0;
  }
  return Matrix(p + 4.0 * s * k);
}

std::optional<Matrix> draw_hermitian(SplitMix64& rng, Index n) {
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    m(i, i) = rng.uniform(-1, 1);
    for (Index j = i + 1; j < n; ++j) {
      m(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
      m(j, i) = std::conj(m(i, j));
    }
  }
  const double sum = m.sum().real();
  if (std::abs(sum) < 1e-3) return std::nullopt;
  return Matrix(m / sum);
}

bool certified(Kind kind, const QuantumSystem& s, Tolerance tol) {
  switch (kind) {
    case Kind::Strong: return is_strongly_positive(s, tol).member;
    case Kind::PosEntry: return is_positive_entry(s, tol).member;
    case Kind::Classical: return is_classical(s, tol);
    case Kind::WeakNotStrongNotPosEntry:
      if (s.size() <= kBruteForceLimit && !is_weakly_positive(s, tol).member) return false;
      return !is_strongly_positive(s, tol).member && !is_positive_entry(s, tol).member;
    case Kind::HermitianOnly: return true;
  }
  return false;
}

}  // namespace

QuantumSystem generate(const GenSpec& request, Tolerance tol) {
  if (request.atoms < 1) throw Error(ErrorCode::InvalidArgument, "need at least one atom");
  if (request.kind == Kind::WeakNotStrongNotPosEntry && request.atoms < 2) {
    throw Error(ErrorCode::InvalidArgument, "weak_not_strong_not_posentry needs >= 2 atoms");
  }
  const auto n = static_cast<Index>(request.atoms);
  SplitMix64 rng(request.seed);
  for (unsigned attempt = 0; attempt < kGenRetryCap; ++attempt) {
    std::optional<Matrix> m;
    switch (request.kind) {
      case Kind::Strong: m = draw_strong(rng, n); break;
      case Kind::PosEntry: m = draw_posentry(rng, n); break;
      case Kind::Classical: m = draw_classical(rng, n); break;
      case Kind::WeakNotStrongNotPosEntry: m = draw_weak_only(rng, n); break;
      case Kind::HermitianOnly: m = draw_hermitian(rng, n); break;
    }
    if (!m) continue;
    QuantumSystem s(std::move(*m), tol);
    if (!certified(request.kind, s, tol)) continue;
    s.set_name(std::string(to_string(request.kind)) + "-" + std::to_string(request.atoms) + "-" +
               std::to_string(request.seed));
    s.add_metadata("generator", "splitmix64");
    s.add_metadata("kind", to_string(request.kind));
    s.add_metadata("atoms", std::to_string(request.atoms));
    s.add_metadata("seed", std::to_string(request.seed));
    s.add_metadata("attempts", std::to_string(attempt + 1));
    return s;
  }
  throw Error(ErrorCode::NotFound, std::string("no certified ") + to_string(request.kind) +
                                       " system after " + std::to_string(kGenRetryCap) +
                                       " draws");
}

}  // namespace qmt
