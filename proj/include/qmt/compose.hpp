#pragma once

#include <cstddef>
#include <vector>

#include "qmt/system.hpp"

namespace qmt {

// Largest composed system built as an explicit matrix.
inline constexpr std::size_t kMaterializeLimit = 4096;

/// Tensor composition: atoms are pairs (i, j) at index i * n2 + j and the
/// matrix is the Kronecker product. Labels read "(a,b)"; metadata records
/// both factors. Throws ErrorCode::ArityOverflow when n1 * n2 > limit.
QuantumSystem compose(const QuantumSystem& s1, const QuantumSystem& s2,
                      std::size_t limit = kMaterializeLimit);

/// Sum over rectangle pairs of D1(a1, b1) * D2(a2, b2), without building
/// the composed matrix. Throws ErrorCode::InvalidArgument if the rectangles
/// within either list overlap, ErrorCode::ArityMismatch on wrong arities.
Complex eval_composed_factored(const QuantumSystem& s1, const QuantumSystem& s2,
                               const std::vector<ProductRectangle>& a,
                               const std::vector<ProductRectangle>& b);

/// k-fold Kronecker power; the first slot is the most significant digit of
/// the atom index and labels read "(a,b,c)". k = 1 returns s unchanged.
/// Throws ErrorCode::LimitExceeded when n^k > limit.
QuantumSystem self_compose(const QuantumSystem& s, std::size_t k,
                           std::size_t limit = kMaterializeLimit);

/// Composed D on (a x Omega2, b x Omega2); equals D1(a, b).
Complex marginal_check(const QuantumSystem& s1, const QuantumSystem& s2,
                       const Event& a, const Event& b);

}  // namespace qmt
