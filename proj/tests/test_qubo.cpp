#include <random>
#include <set>

#include "doctest.h"
#include "qubogs/qubo.hpp"
#include "qubogs/samplers.hpp"
#include "test_support.hpp"

using namespace qubogs;

TEST_CASE("logical index mapping") {
  CHECK(logical_index(0, 0, 4) == 0);
  CHECK(logical_index(2, 3, 4) == 11);
  CHECK(inverse_index(11, 4) == LogicalQubit{2, 3});
  CHECK_THROWS_AS(logical_index(0, 4, 4), std::out_of_range);
  CHECK_THROWS_AS(inverse_index(3, 0), std::out_of_range);
  for (std::size_t bits = 1; bits <= 7; ++bits) {
    for (std::size_t i = 0; i < 20; ++i) {
      for (std::size_t r = 0; r < bits; ++r) CHECK(inverse_index(logical_index(i, r, bits), bits) == LogicalQubit{i, r});
    }
  }
}

TEST_CASE("decode examples") {
  auto enc = BinaryEncoding::uniform(3, 2, 1.0, 0.5);
  for (double v : decode(Bitstring(6, 0), enc)) CHECK(v == -0.5);

  const auto one = BinaryEncoding::uniform(1, 2, 1.0, 0.0);
  CHECK(decode(Bitstring{1, 1}, one)[0] == 1.5);
  CHECK(decode(Bitstring{0, 1}, one)[0] == 0.5);

  const BinaryEncoding mixed{3, {2.0, 0.25}, {1.0, -3.0}};
  const auto top = decode(Bitstring(6, 1), mixed);
  CHECK(top[0] == doctest::Approx(2 * 2.0 * (1 - 0.125) - 1.0));
  CHECK(top[1] == doctest::Approx(2 * 0.25 * (1 - 0.125) + 3.0));
  CHECK_THROWS_AS(decode(Bitstring(5, 0), mixed), std::invalid_argument);
}

TEST_CASE("decode covers the half-open interval with 2^R distinct levels") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uc(0.1, 10.0);
  std::uniform_real_distribution<double> ud(-10.0, 10.0);
  for (std::size_t bits = 1; bits <= 8; ++bits) {
    const BinaryEncoding enc{bits, {uc(rng)}, {ud(rng)}};
    std::set<double> values;
    for (std::uint64_t s = 0; s < (1ULL << bits); ++s) {
      const double x = decode(testing::bits_of(s, bits), enc)[0];
      CHECK(x >= enc.lower(0));
      CHECK(x < enc.upper(0));
      values.insert(x);
    }
    CHECK(values.size() == (1ULL << bits));
    CHECK(*values.begin() == doctest::Approx(enc.lower(0)));
    CHECK(*std::next(values.begin()) - *values.begin() == doctest::Approx(enc.resolution(0)));
  }
}

TEST_CASE("encoding validation") {
  CHECK_THROWS_AS(BinaryEncoding::uniform(2, 0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(BinaryEncoding::uniform(2, 3, 0.0, 0.0), std::invalid_argument);
  const auto sys = testing::dense_system({{1, 0}, {0, 1}}, {1, 1});
  CHECK_THROWS_AS(encode(sys, BinaryEncoding::uniform(3, 2, 1.0, 0.0)), std::invalid_argument);
}

TEST_CASE("one-variable encoding by hand") {
  const auto sys = testing::dense_system({{1}}, {1});
  const auto q = encode(sys, BinaryEncoding::uniform(1, 1, 1.0, 0.0));
  REQUIRE(q.size() == 1);
  // -2 from the cross term, +1 from the folded q^2 term.
  CHECK(q.linear[0] == doctest::Approx(-1.0));
  CHECK(q.quadratic.empty());
  CHECK(q.offset == doctest::Approx(1.0));
  CHECK(energy(q, Bitstring{1}) == doctest::Approx(-1.0));
  CHECK(energy(q, Bitstring{0}) == 0.0);
}

TEST_CASE("zero target leaves only folded diagonal terms") {
  std::mt19937_64 rng(8);
  const auto a = testing::random_dominant_matrix(3, rng);
  const std::vector<double> d{0.5, -1.0, 2.0};
  std::vector<double> b(3, 0.0);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) b[i] -= a[i][j] * d[j];
  }
  const BinaryEncoding enc{3, {1.0, 2.0, 0.5}, d};
  const auto q = encode(testing::dense_system(a, b), enc);
  CHECK(q.offset == doctest::Approx(0.0).epsilon(1e-24));
  for (double v : q.linear) CHECK(v > 0.0);
  const auto best = solve_exhaustive(q);
  CHECK(best.best_sample().bits == Bitstring(9, 0));
  CHECK(best.best_sample().energy == 0.0);
}

TEST_CASE("energy identity holds for every bitstring") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uc(0.2, 3.0);
  std::uniform_real_distribution<double> ud(-2.0, 2.0);
  int cases = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t bits = 1; bits <= 3; ++bits) {
      if (n * bits > 12) continue;
      for (int trial = 0; trial < 4; ++trial) {
        const auto a = testing::random_matrix(n, rng);
        const auto b = testing::random_vector(n, rng);
        BinaryEncoding enc{bits, {}, {}};
        for (std::size_t i = 0; i < n; ++i) {
          enc.scale.push_back(uc(rng));
          enc.offset.push_back(ud(rng));
        }
        const auto q = encode(testing::dense_system(a, b), enc);
        for (std::uint64_t s = 0; s < (1ULL << (n * bits)); ++s) {
          const auto bs = testing::bits_of(s, n * bits);
          const double direct = testing::squared_residual(a, testing::fixed_point_value(bs, bits, enc.scale, enc.offset), b);
          const double via_qubo = energy(q, bs) + q.offset;
          CHECK(std::abs(via_qubo - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
        }
        ++cases;
      }
    }
  }
  CHECK(cases > 20);
}

TEST_CASE("quadratic terms are upper triangular, unique and skip zero couplings") {
  // Block-diagonal A: variables 0 and 1 never interact.
  const auto sys = testing::dense_system({{2, 0}, {0, 3}}, {1, 1});
  const auto q = encode(sys, BinaryEncoding::uniform(2, 3, 1.0, 0.0));
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& t : q.quadratic) {
    CHECK(t.row < t.col);
    CHECK(seen.insert({t.row, t.col}).second);
    CHECK(inverse_index(t.row, 3).variable == inverse_index(t.col, 3).variable);
  }
  CHECK(q.quadratic.size() == 6);  // 3 intra-variable pairs per variable
}

TEST_CASE("required bits") {
  CHECK(required_bits(1.0, 0.5) == 2);
  CHECK(required_bits(1.0, 2.0) == 1);
  CHECK(required_bits(50.0, 50.0) == 1);
  CHECK(required_bits(50.0, 0.1) == 10);  // 100/1024 <= 0.1 < 100/512
  CHECK_THROWS_AS(required_bits(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(required_bits(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("resource estimates") {
  const auto full = estimate_resources(81, 7, 1);
  CHECK(full.qubits_full == 567);
  CHECK(full.qubits_per_block == 567);
  CHECK(full.connectivity_reduction == 0.0);

  const auto blocked = estimate_resources(81, 7, 11);
  CHECK(blocked.block_size == 8);
  CHECK(blocked.qubits_per_block == 56);

  CHECK(estimate_resources(4, 2, 2).connectivity_reduction == doctest::Approx(64.0 * 0.75));
  CHECK_THROWS_AS(estimate_resources(4, 2, 5), std::invalid_argument);
  CHECK_THROWS_AS(estimate_resources(4, 2, 0), std::invalid_argument);
}
