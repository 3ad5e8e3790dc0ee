#include <doctest.h>

#include "qmt/classify.hpp"
#include "qmt/error.hpp"
#include "qmt/gen.hpp"

using namespace qmt;

TEST_CASE("SplitMix64 reference stream") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
  SplitMix64 u(42);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("kind names round-trip") {
  for (Kind k : {Kind::Strong, Kind::PosEntry, Kind::Classical, Kind::WeakNotStrongNotPosEntry,
                 Kind::HermitianOnly}) {
    CHECK(parse_kind(to_string(k)) == k);
  }
  CHECK_FALSE(parse_kind("weak").has_value());
}

TEST_CASE("generate examples") {
  auto s = generate({Kind::Classical, 2, 3});
  CHECK(std::abs(s.matrix().sum() - 1.0) < 1e-12);
  CHECK(s.entry(0, 1) == Complex(0, 0));

  s = generate({Kind::Strong, 3, 7});
  CHECK(is_strongly_positive(s).min_eigenvalue >= -1e-12);
  CHECK(std::abs(s.matrix().sum() - 1.0) < 1e-12);

  s = generate({Kind::WeakNotStrongNotPosEntry, 2, 11});
  const auto c = classify(s);
  CHECK(c.weakly_positive());
  CHECK_FALSE(c.strongly_positive());
  CHECK_FALSE(c.is_positive_entry());

  bool has_generator = false;
  for (const auto& [k, v] : s.metadata()) has_generator |= k == "generator" && v == "splitmix64";
  CHECK(has_generator);
}

TEST_CASE("infeasible specs") {
  CHECK_THROWS_AS(generate({Kind::Strong, 0, 1}), Error);
  CHECK_THROWS_AS(generate({Kind::WeakNotStrongNotPosEntry, 1, 1}), Error);
}

TEST_CASE("determinism") {
  for (Kind k : {Kind::Strong, Kind::PosEntry, Kind::Classical, Kind::WeakNotStrongNotPosEntry,
                 Kind::HermitianOnly}) {
    for (std::uint64_t seed : {0ULL, 1ULL, 0xffffffffffffffffULL}) {
      const auto a = generate({k, 3, seed}), b = generate({k, 3, seed});
      CHECK(a.matrix() == b.matrix());
      CHECK(a.name() == b.name());
    }
    CHECK(generate({k, 3, 1}).matrix() != generate({k, 3, 2}).matrix());
  }
}

TEST_CASE("every generated system is certified by classify") {
  for (std::size_t n : {2u, 3u, 4u}) {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      const Tolerance tol;
      auto c = classify(generate({Kind::Strong, n, seed}, tol), tol);
      CHECK(c.strongly_positive());
      c = classify(generate({Kind::PosEntry, n, seed}, tol), tol);
      CHECK(c.is_positive_entry());
      c = classify(generate({Kind::Classical, n, seed}, tol), tol);
      CHECK(c.classical);
      c = classify(generate({Kind::WeakNotStrongNotPosEntry, n, seed}, tol), tol);
      CHECK((c.weakly_positive() && !c.strongly_positive() && !c.is_positive_entry()));
      const auto h = generate({Kind::HermitianOnly, n, seed}, tol);
      CHECK(check_axioms(h.matrix(), tol).ok());
    }
  }
}
