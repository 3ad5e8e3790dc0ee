#include "qmt/event.hpp"

#include <bit>
#include <sstream>

#include "qmt/error.hpp"

namespace qmt {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::ArityMismatch: return "arity mismatch";
    case ErrorCode::LimitExceeded: return "limit exceeded";
    case ErrorCode::ArityOverflow: return "arity overflow";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Axiom: return "axiom violation";
    case ErrorCode::Precondition: return "precondition violated";
    case ErrorCode::NotFound: return "not found";
    case ErrorCode::QCapExceeded: return "q cap exceeded";
    case ErrorCode::Numerical: return "numerical failure";
  }
  return "unknown error";
}

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t arity) {
  return (arity + kWordBits - 1) / kWordBits;
}

}  // namespace

Event::Event(std::size_t arity) : arity_(arity), words_(word_count(arity), 0) {}

Event Event::full(std::size_t arity) {
  Event e(arity);
  for (std::size_t w = 0; w < e.words_.size(); ++w) e.words_[w] = ~std::uint64_t{0};
  if (const std::size_t tail = arity % kWordBits; tail != 0) {
    e.words_.back() = (std::uint64_t{1} << tail) - 1;
  }
  return e;
}

Event Event::of(std::size_t arity, std::initializer_list<std::size_t> atoms) {
  return of(arity, std::span<const std::size_t>(atoms.begin(), atoms.size()));
}

Event Event::of(std::size_t arity, std::span<const std::size_t> atoms) {
  Event e(arity);
  for (std::size_t a : atoms) e.insert(a);
  return e;
}

Event Event::from_mask(std::size_t arity, std::uint64_t mask) {
  Event e(arity);
  if (arity < kWordBits && (mask >> arity) != 0) {
    throw Error(ErrorCode::InvalidArgument, "mask has bits beyond arity");
  }
  if (arity == 0) return e;
  e.words_[0] = mask;
  return e;
}

void Event::require_atom(std::size_t atom) const {
  if (atom >= arity_) {
    throw Error(ErrorCode::InvalidArgument,
                "atom " + std::to_string(atom) + " out of range for arity " +
                    std::to_string(arity_));
  }
}

void Event::require_same_arity(const Event& other) const {
  if (arity_ != other.arity_) {
    throw Error(ErrorCode::ArityMismatch,
                "events of arity " + std::to_string(arity_) + " and " +
                    std::to_string(other.arity_));
  }
}

bool Event::contains(std::size_t atom) const {
  require_atom(atom);
  return (words_[atom / kWordBits] >> (atom % kWordBits)) & 1u;
}

void Event::insert(std::size_t atom) {
  require_atom(atom);
  words_[atom / kWordBits] |= std::uint64_t{1} << (atom % kWordBits);
}

void Event::erase(std::size_t atom) {
  require_atom(atom);
  words_[atom / kWordBits] &= ~(std::uint64_t{1} << (atom % kWordBits));
}

std::size_t Event::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Event::is_empty() const noexcept {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::vector<std::size_t> Event::members() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (std::size_t w = 0; w < words_.size(); ++w) {
    for (std::uint64_t bits = words_[w]; bits != 0; bits &= bits - 1) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
    }
  }
  return out;
}

std::uint64_t Event::mask() const {
  if (arity_ > kWordBits) {
    throw Error(ErrorCode::LimitExceeded, "mask() requires arity <= 64");
  }
  return words_.empty() ? 0 : words_[0];
}

Event& Event::operator|=(const Event& other) {
  require_same_arity(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

Event& Event::operator&=(const Event& other) {
  require_same_arity(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

Event& Event::operator^=(const Event& other) {
  require_same_arity(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

std::string Event::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto m : members()) {
    if (!first) os << ',';
    os << m;
    first = false;
  }
  os << '}';
  return os.str();
}

Event unite(const Event& a, const Event& b) {
  Event r = a;
  r |= b;
  return r;
}

Event intersect(const Event& a, const Event& b) {
  Event r = a;
  r &= b;
  return r;
}

Event symdiff(const Event& a, const Event& b) {
  Event r = a;
  r ^= b;
  return r;
}

Event complement(const Event& a) { return symdiff(Event::full(a.arity()), a); }

Event difference(const Event& a, const Event& b) {
  return intersect(a, complement(b));
}

bool disjoint(const Event& a, const Event& b) { return intersect(a, b).is_empty(); }

bool is_subset(const Event& a, const Event& b) { return difference(a, b).is_empty(); }

Event embed_product(const ProductRectangle& r) {
  const std::size_t n1 = r.first.arity();
  const std::size_t n2 = r.second.arity();
  Event out(n1 * n2);
  const auto cols = r.second.members();
  for (auto i : r.first.members()) {
    for (auto j : cols) out.insert(pair_index(i, j, n2));
  }
  return out;
}

std::vector<ProductRectangle> rectangle_cover(const Event& e, std::size_t n1,
                                              std::size_t n2,
                                              CoverStrategy strategy) {
  if (e.arity() != n1 * n2) {
    throw Error(ErrorCode::ArityMismatch,
                "event arity " + std::to_string(e.arity()) + " is not " +
                    std::to_string(n1) + "x" + std::to_string(n2));
  }
  std::vector<ProductRectangle> out;
  if (strategy == CoverStrategy::Atoms) {
    for (auto idx : e.members()) {
      out.push_back({Event::of(n1, {idx / n2}), Event::of(n2, {idx % n2})});
    }
    return out;
  }
  for (std::size_t i = 0; i < n1; ++i) {
    Event row(n2);
    for (std::size_t j = 0; j < n2; ++j) {
      if (e.contains(pair_index(i, j, n2))) row.insert(j);
    }
    if (!row.is_empty()) out.push_back({Event::of(n1, {i}), std::move(row)});
  }
  return out;
}

std::vector<Event> enumerate_events(std::size_t n, std::size_t limit) {
  if (n > limit || n >= 63) {
    throw Error(ErrorCode::LimitExceeded,
                "enumerating 2^" + std::to_string(n) + " events exceeds limit " +
                    std::to_string(limit));
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<Event> out;
  out.reserve(total);
  for (std::uint64_t m = 0; m < total; ++m) out.push_back(Event::from_mask(n, m));
  return out;
}

}  // namespace qmt
