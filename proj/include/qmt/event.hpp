#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qmt {

// Default cap on exhaustive enumeration over all 2^n events.
inline constexpr std::size_t kBruteForceLimit = 20;

/// A subset of the atoms {0..arity-1} of a finite sample space.
///
/// Stored as a packed bit set of ceil(arity/64) words, so arities above 64
/// (composed systems) use the same representation. Bits beyond `arity` are
/// always zero. Binary operations require equal arity and throw
/// ErrorCode::ArityMismatch otherwise.
class Event {
 public:
  Event() = default;
  explicit Event(std::size_t arity);

  static Event empty(std::size_t arity) { return Event(arity); }
  static Event full(std::size_t arity);
  static Event of(std::size_t arity, std::initializer_list<std::size_t> atoms);
  static Event of(std::size_t arity, std::span<const std::size_t> atoms);
  // Low 64 atoms from a mask; bits at or above arity must be clear.
  static Event from_mask(std::size_t arity, std::uint64_t mask);

  std::size_t arity() const noexcept { return arity_; }
  bool contains(std::size_t atom) const;
  void insert(std::size_t atom);
  void erase(std::size_t atom);

  std::size_t count() const noexcept;
  bool is_empty() const noexcept;
  bool is_full() const noexcept { return count() == arity_; }
  std::vector<std::size_t> members() const;
  // Requires arity <= 64.
  std::uint64_t mask() const;

  Event& operator|=(const Event& other);
  Event& operator&=(const Event& other);
  Event& operator^=(const Event& other);

  friend bool operator==(const Event&, const Event&) = default;

  // "{0,2}" style rendering of member indices.
  std::string to_string() const;

 private:
  void require_same_arity(const Event& other) const;
  void require_atom(std::size_t atom) const;

  std::size_t arity_ = 0;
  std::vector<std::uint64_t> words_;
};

Event unite(const Event& a, const Event& b);
Event intersect(const Event& a, const Event& b);
// (a \ b) u (b \ a): addition in the Z2 event algebra.
Event symdiff(const Event& a, const Event& b);
Event difference(const Event& a, const Event& b);
Event complement(const Event& a);
bool disjoint(const Event& a, const Event& b);
bool is_subset(const Event& a, const Event& b);

/// Cartesian product E1 x E2 of events of two factor systems.
struct ProductRectangle {
  Event first;
  Event second;
};

// Global pair-index convention for composed atoms: (i, j) -> i * n2 + j.
inline std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n2) {
  return i * n2 + j;
}

Event embed_product(const ProductRectangle& r);

enum class CoverStrategy { Atoms, Rows };

/// Decompose an event of a composed system (arity n1*n2) into pairwise
/// disjoint product rectangles whose union is exactly `e`.
///
/// Atoms yields one singleton rectangle per member pair in ascending index
/// order. Rows yields ({i}, {j : (i,j) in e}) for every i with a non-empty
/// row.
std::vector<ProductRectangle> rectangle_cover(const Event& e, std::size_t n1,
                                              std::size_t n2,
                                              CoverStrategy strategy);

/// All 2^n events in ascending mask order.
std::vector<Event> enumerate_events(std::size_t n,
                                    std::size_t limit = kBruteForceLimit);

}  // namespace qmt
