#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qmt/error.hpp"
#include "qmt/system.hpp"

using namespace qmt;
using oracle::mat;

namespace {

const QuantumSystem kM{mat({{2, -1}, {-1, 1}})};
const QuantumSystem kN{mat({{0.2, 0.4}, {0.4, 0}})};

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return ErrorCode::Numerical;
}

}  // namespace

TEST_CASE("eval_D examples") {
  CHECK(std::abs(eval_D(kN, Event::full(2), Event::full(2)) - 1.0) < 1e-15);
  CHECK(eval_D(kN, Event::empty(2), Event::full(2)) == Complex(0, 0));
  CHECK(eval_D(kM, Event::full(2), Event::full(2)) == Complex(1, 0));
  CHECK(code_of([] { eval_D(kM, Event(3), Event(2)); }) == ErrorCode::ArityMismatch);
}

TEST_CASE("check_axioms examples") {
  auto r = check_axioms(mat({{2, -1}, {-1, 1}}));
  CHECK(r.hermitian);
  CHECK(r.normalized);
  CHECK(r.additive_by_construction);
  REQUIRE(r.weakly_positive);
  CHECK(*r.weakly_positive);

  r = check_axioms(mat({{2, -1}, {-1, 0.5}}));
  CHECK_FALSE(r.normalized);
  CHECK(std::abs(r.entry_sum - 0.5) < 1e-15);

  r = check_axioms(mat({{1.5, -0.25}, {-0.25, 0}}));
  CHECK(r.ok());
  CHECK(*r.weakly_positive);

  r = check_axioms(mat({{1, Complex(0, 1)}, {Complex(0, 1), -1}}));
  CHECK_FALSE(r.hermitian);
  REQUIRE(r.hermitian_violation);
  CHECK(*r.hermitian_violation == std::pair<std::size_t, std::size_t>{0, 1});

  r = check_axioms(mat({{1.5, 0}, {0, -0.5}}));
  CHECK(r.ok());
  CHECK_FALSE(*r.weakly_positive);
  CHECK(*r.weak_violation == Event::of(2, {1}));

  Matrix big = Matrix::Identity(21, 21) / 21.0;
  CHECK_FALSE(check_axioms(big).weakly_positive.has_value());
  CHECK_FALSE(check_axioms(Matrix::Zero(2, 3)).hermitian);
}

TEST_CASE("QuantumSystem constructor enforces the two invariants") {
  CHECK(code_of([] { QuantumSystem(mat({{2, -1}, {-1, 0.5}})); }) == ErrorCode::Axiom);
  CHECK(code_of([] { QuantumSystem(mat({{0.5, 0.5}, {0, 0}})); }) == ErrorCode::Axiom);
  CHECK(code_of([] { QuantumSystem({"a"}, mat({{0.5, 0}, {0, 0.5}})); }) == ErrorCode::Axiom);
  CHECK(code_of([] { QuantumSystem(Matrix::Zero(2, 3)); }) == ErrorCode::Axiom);
  // Quasi-systems are representable.
  const QuantumSystem quasi(mat({{1.5, 0}, {0, -0.5}}));
  CHECK(quasi.size() == 2);
  CHECK(quasi.label(1) == "g1");
  // Near-normalised input passes at a looser tolerance only.
  const Matrix off = mat({{0.5 + 1e-6, 0}, {0, 0.5}});
  CHECK_THROWS_AS(QuantumSystem{off}, Error);
  CHECK_NOTHROW(QuantumSystem(off, Tolerance::uniform(1e-5)));
  CHECK_THROWS_AS(Tolerance(-1, 0), Error);
}

TEST_CASE("quantal_measure examples") {
  CHECK(std::abs(quantal_measure(kN, Event::full(2)) - 1) < 1e-15);
  CHECK(quantal_measure(kN, Event::of(2, {1})) == 0.0);
  CHECK(std::abs(quantal_measure(kN, Event::of(2, {0, 1})) - 1) < 1e-15);
}

TEST_CASE("bi-additivity and Hermitian symmetry on random events") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<Eigen::Index>(2 + rng() % 5);
    const QuantumSystem s(oracle::random_normalized_hermitian(rng, n));
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    const std::uint64_t a = rng() & full, b = rng() & full & ~a, c = rng() & full;
    const std::size_t un = static_cast<std::size_t>(n);
    const Event ea = Event::from_mask(un, a), eb = Event::from_mask(un, b),
                ec = Event::from_mask(un, c);
    CHECK(std::abs(eval_D(s, unite(ea, eb), ec) - eval_D(s, ea, ec) - eval_D(s, eb, ec)) < 1e-12);
    CHECK(std::abs(eval_D(s, ea, ec) - std::conj(eval_D(s, ec, ea))) < 1e-12);
    CHECK(std::abs(eval_D(s, ea, ec) - oracle::direct_D(s.matrix(), a, c)) < 1e-12);
  }
}

TEST_CASE("quantal sum rule") {
  std::mt19937_64 rng(4);
  for (Eigen::Index n : {1, 2, 3, 4}) {
    for (int t = 0; t < 10; ++t) {
      const QuantumSystem s(oracle::random_normalized_hermitian(rng, n));
      CHECK(check_quantal_sum_rule(s));
    }
  }
  // Sampled path above the exhaustive limit.
  const QuantumSystem big(oracle::random_normalized_hermitian(rng, 12));
  CHECK(check_quantal_sum_rule(big, {}, 2000));
}

TEST_CASE("empty triple gives the trivial identity") {
  const auto table = MeasureTable::of_system(kM);
  CHECK(table[0] == 0.0);
  CHECK(table.satisfies_sum_rule());
}

TEST_CASE("MeasureTable validation") {
  CHECK(code_of([] { MeasureTable(2, {0, 0.5, 0.5}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { MeasureTable(2, {0.1, 0.5, 0.5, 1}); }) == ErrorCode::Axiom);
  CHECK(code_of([] { MeasureTable(2, {0, 0.5, 0.5, 0.9}); }) == ErrorCode::Axiom);
  CHECK(code_of([] { MeasureTable(17, {}); }) == ErrorCode::LimitExceeded);
  // mu = |A| / 3 is additive.
  CHECK(MeasureTable(3, {0, 1. / 3, 1. / 3, 2. / 3, 1. / 3, 2. / 3, 2. / 3, 1}).satisfies_sum_rule());
  // Raising mu({0,1}) unbalances the triple ({0},{1},{2}).
  CHECK_FALSE(MeasureTable(3, {0, 1. / 3, 1. / 3, 0.8, 1. / 3, 2. / 3, 2. / 3, 1}).satisfies_sum_rule());
}

TEST_CASE("system_from_measure examples") {
  auto s = system_from_measure(MeasureTable(2, {0, 0.3, 0.7, 1}));
  CHECK(std::abs(s.entry(0, 0) - 0.3) < 1e-15);
  CHECK(std::abs(s.entry(1, 1) - 0.7) < 1e-15);
  CHECK(std::abs(s.entry(0, 1)) < 1e-15);

  s = system_from_measure(MeasureTable(1, {0, 1}));
  CHECK(s.entry(0, 0) == Complex(1, 0));

  s = system_from_measure(MeasureTable(2, {0, 1, 1, 1}));
  CHECK(s.entry(0, 1) == Complex(-0.5, 0));
  CHECK(s.entry(1, 0) == Complex(-0.5, 0));
  CHECK(std::abs(quantal_measure(s, Event::full(2)) - 1) < 1e-15);

  CHECK(code_of([] {
          system_from_measure(MeasureTable(3, {0, 1. / 3, 1. / 3, 0.8, 1. / 3, 2. / 3, 2. / 3, 1}));
        }) == ErrorCode::Axiom);
}

TEST_CASE("Sorkin round trip, exhaustive up to four atoms") {
  std::mt19937_64 rng(5);
  for (Eigen::Index n = 1; n <= 4; ++n) {
    for (int t = 0; t < 25; ++t) {
      const QuantumSystem src(oracle::random_normalized_hermitian(rng, n));
      const auto table = MeasureTable::of_system(src);
      const auto s = system_from_measure(table);
      CHECK(s.matrix().imag().cwiseAbs().maxCoeff() == 0.0);
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        CHECK(std::abs(oracle::direct_D(s.matrix(), m, m).real() - table[m]) < 1e-10);
      }
      // D^mu is the real part of any D realising mu.
      CHECK((s.matrix() - Matrix(src.matrix().real().cast<Complex>())).norm() < 1e-10);
    }
  }
}

TEST_CASE("event_matrix examples") {
  const std::vector<Event> atoms = {Event::of(2, {0}), Event::of(2, {1})};
  CHECK((event_matrix(kN, atoms) - kN.matrix()).norm() == 0.0);
  const std::vector<Event> ev = {Event::of(2, {0}), Event::full(2)};
  CHECK((event_matrix(kN, ev) - mat({{0.2, 0.6}, {0.6, 1}})).norm() < 1e-15);
  const std::vector<Event> empty = {Event(2)};
  const Matrix z = event_matrix(kN, empty);
  CHECK(z.rows() == 1);
  CHECK(z(0, 0) == Complex(0, 0));
}
