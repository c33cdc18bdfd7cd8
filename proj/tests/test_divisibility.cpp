#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "balnum/divisibility.hpp"
#include "balnum/errors.hpp"
#include "balnum/primality.hpp"
#include "oracle.hpp"

using namespace balnum;

namespace {

std::vector<unsigned long> small(const std::vector<BigNat>& v) {
  std::vector<unsigned long> out;
  for (const auto& x : v) out.push_back(x.get_ui());
  return out;
}

}  // namespace

TEST_CASE("index rule matches direct big-integer divisibility") {
  auto b = oracle::balancing_upto(60);
  for (SeqIndex m = 1; m <= 60; ++m) {
    for (SeqIndex n = 1; n <= 60; ++n) {
      const bool direct = mpz_divisible_p(b[n].get_mpz_t(), b[m].get_mpz_t());
      CHECK(index_divisibility(m, n) == direct);
    }
  }
  CHECK_THROWS_AS(index_divisibility(0, 5), std::invalid_argument);
  CHECK_THROWS_AS(index_divisibility(5, 0), std::invalid_argument);
}

TEST_CASE("gcd identity") {
  for (SeqIndex m = 1; m <= 60; ++m) {
    for (SeqIndex n = 1; n <= 60; n += 3) {
      auto [g, expect] = gcd_identity(m, n);
      CHECK(g == expect);
    }
  }
  auto [g, expect] = gcd_identity(4, 6);
  CHECK(g == 6);  // gcd(204, 6930) = 6 = B_2
}

TEST_CASE("rank of apparition golden values") {
  const std::pair<unsigned long, SeqIndex> cases[] = {
      {2, 2}, {3, 2}, {5, 3}, {11, 6}, {17, 4},
      {13, 7}, {239, 7}, {29, 5}, {41, 5}, {1153, 12}};
  for (auto [p, r] : cases) {
    auto res = rank_of_apparition(BigNat(p));
    CHECK(res.prime == p);
    CHECK(res.rank == r);
  }
  CHECK_THROWS_AS(rank_of_apparition(BigNat(12)), std::invalid_argument);
  CHECK_THROWS_AS(rank_of_apparition(BigNat(1)), std::invalid_argument);
}

TEST_CASE("rank is minimal and divides the lemma 2.6 index") {
  auto sieve = oracle::prime_sieve(2000);
  for (unsigned long p = 3; p <= 2000; ++p) {
    if (!sieve[p]) continue;
    auto res = rank_of_apparition(BigNat(p));
    // Minimality: no smaller index works.
    for (SeqIndex d = 1; d < res.rank; ++d)
      CHECK(balancing_mod(d, BigNat(p)) != 0);
    CHECK(balancing_mod(res.rank, BigNat(p)) == 0);
    // The rank divides p - 1 or p + 1 according to p mod 8.
    const unsigned long m8 = p % 8;
    const SeqIndex target = (m8 == 1 || m8 == 7) ? p - 1 : p + 1;
    CHECK(target % res.rank == 0);
  }
}

TEST_CASE("rank_within agrees with the global rank") {
  auto res = rank_of_apparition(BigNat(1153));
  CHECK(rank_within(BigNat(1153), 12) == res.rank);
  CHECK(rank_within(BigNat(1153), 24) == 12);
  CHECK(rank_within(BigNat(3), 12) == 2);
  CHECK(rank_within(BigNat(11), 6) == 6);
  CHECK_THROWS_AS(rank_within(BigNat(7), 5), std::invalid_argument);
  CHECK_THROWS_AS(rank_within(BigNat(3), 0), std::invalid_argument);
}

TEST_CASE("lemma 2.6 over all odd primes up to 10^4") {
  auto sieve = oracle::prime_sieve(10'000);
  for (unsigned long p = 3; p <= 10'000; ++p) {
    if (!sieve[p]) continue;
    auto res = check_lemma_2_6(BigNat(p));
    CHECK(res.holds);
    const unsigned long m8 = p % 8;
    if (m8 == 1 || m8 == 7) {
      CHECK(res.cls == Mod8Class::PM1);
      CHECK(res.index == p - 1);
    } else {
      CHECK(res.cls == Mod8Class::PM3);
      CHECK(res.index == p + 1);
    }
  }
  CHECK_THROWS_AS(check_lemma_2_6(BigNat(2)), std::invalid_argument);
  CHECK_THROWS_AS(check_lemma_2_6(BigNat(9)), std::invalid_argument);
}

TEST_CASE("primitive divisor golden lists") {
  using V = std::vector<unsigned long>;
  CHECK(small(primitive_divisors(2).primitive) == V{3});
  CHECK(small(primitive_divisors(3).primitive) == V{5, 7});
  CHECK(small(primitive_divisors(4).primitive) == V{17});
  CHECK(small(primitive_divisors(5).primitive) == V{29, 41});
  CHECK(small(primitive_divisors(6).primitive) == V{11});
  CHECK(small(primitive_divisors(7).primitive) == V{13, 239});
  CHECK(small(primitive_divisors(12).primitive) == V{1153});
  CHECK(small(primitive_divisors(25).primitive) == V{1549, 29201, 45245801});
  CHECK(small(primitive_divisors(40).primitive) == V{188801, 9393281});

  auto r37 = primitive_divisors(37);
  CHECK(small(r37.primitive) ==
        V{223, 593, 37223, 78737, 1101341, 8761009});
  CHECK(r37.complete);
  CHECK(r37.witness.value() == balancing(37));

  CHECK_THROWS_AS(primitive_divisors(0), std::invalid_argument);
  CHECK_THROWS_AS(primitive_divisors(1), std::invalid_argument);
}

TEST_CASE("primitive divisors exist for every index 2..40") {
  for (SeqIndex n = 2; n <= 40; ++n) {
    auto rep = primitive_divisors(n);
    CHECK(rep.complete);
    CHECK_FALSE(rep.primitive.empty());
    // Definition check: each listed prime divides B_n but no earlier B_m.
    for (const auto& p : rep.primitive) {
      CHECK(balancing_mod(n, p) == 0);
      for (SeqIndex m = 1; m < n; ++m)
        CHECK(balancing_mod(m, p) != 0);
    }
  }
}

TEST_CASE("a partial witness yields a flagged partial list") {
  FactorBudget tiny;
  tiny.rho_iteration_cap = 64;
  auto rep = primitive_divisors(59, tiny);
  CHECK_FALSE(rep.complete);
  CHECK(rep.primitive.empty());
  CHECK_FALSE(rep.witness.complete());
}

TEST_CASE("lemma 2.14 part 1 rows") {
  SUBCASE("n = 3") {
    auto rep = check_lemma_2_14_part1(3);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].prime == 5);
    CHECK(rep.rows[0].residue == 2);  // 5 = -1 (mod 3)
    CHECK(rep.rows[0].residue_ok);
    CHECK(rep.rows[0].lower_bound_ok);
    CHECK(rep.rows[1].prime == 7);
    CHECK(rep.rows[1].residue == 1);
    CHECK(rep.rows[1].residue_ok);
    CHECK(rep.rows[1].lower_bound_ok);
    CHECK(rep.complete);
  }
  SUBCASE("n = 5 and n = 7") {
    auto r5 = check_lemma_2_14_part1(5);
    REQUIRE(r5.rows.size() == 2);
    CHECK(r5.rows[0].prime == 29);
    CHECK(r5.rows[0].residue == 4);
    CHECK(r5.rows[1].prime == 41);
    CHECK(r5.rows[1].residue == 1);

    auto r7 = check_lemma_2_14_part1(7);
    REQUIRE(r7.rows.size() == 2);
    CHECK(r7.rows[0].prime == 13);
    CHECK(r7.rows[0].residue == 6);
    CHECK(r7.rows[1].prime == 239);
    CHECK(r7.rows[1].residue == 1);
  }
  SUBCASE("prime lists for n = 11 and n = 13") {
    auto r11 = check_lemma_2_14_part1(11);
    std::vector<unsigned long> p11;
    for (const auto& row : r11.rows) p11.push_back(row.prime.get_ui());
    CHECK(p11 == std::vector<unsigned long>{23, 353, 5741});

    auto r13 = check_lemma_2_14_part1(13);
    std::vector<unsigned long> p13;
    for (const auto& row : r13.rows) p13.push_back(row.prime.get_ui());
    CHECK(p13 == std::vector<unsigned long>{79, 599, 33461});
  }
  SUBCASE("every row checks out for odd prime n up to 37") {
    auto sieve = oracle::prime_sieve(37);
    for (SeqIndex n = 3; n <= 37; ++n) {
      if (!sieve[n]) continue;
      auto rep = check_lemma_2_14_part1(n);
      CHECK(rep.complete);
      for (const auto& row : rep.rows) {
        CHECK(row.residue_ok);
        CHECK(row.lower_bound_ok);
      }
    }
  }
  SUBCASE("non-prime index is rejected") {
    CHECK_THROWS_AS(check_lemma_2_14_part1(4), std::invalid_argument);
    CHECK_THROWS_AS(check_lemma_2_14_part1(9), std::invalid_argument);
    CHECK_THROWS_AS(check_lemma_2_14_part1(2), std::invalid_argument);
  }
}

TEST_CASE("primitive scans across families") {
  using V = std::vector<SeqIndex>;
  SUBCASE("balancing numbers have no exceptional index") {
    auto scan = scan_primitive_divisors(SeqParams::balancing(), 30);
    CHECK(scan.exceptional == V{});
    CHECK(scan.unresolved == V{});
  }
  SUBCASE("A=3 (even-indexed Fibonacci) misses one") {
    auto scan = scan_primitive_divisors(SeqParams::balancing_like(3), 30);
    CHECK(scan.exceptional == V{6});
    CHECK(scan.unresolved == V{});
  }
  SUBCASE("A=4 misses the square at n=2") {
    auto scan = scan_primitive_divisors(SeqParams::balancing_like(4), 30);
    CHECK(scan.exceptional == V{2});
    CHECK(scan.unresolved == V{});
  }
  SUBCASE("generalized (3,2) is exception-free") {
    auto scan = scan_primitive_divisors(SeqParams::generalized(3, 2), 30);
    CHECK(scan.exceptional == V{});
    CHECK(scan.unresolved == V{});
  }
  SUBCASE("Fibonacci shows the classical exceptional set") {
    auto scan = scan_primitive_divisors(SeqParams::generalized(1, 1), 30);
    CHECK(scan.exceptional == V{2, 5, 6, 12});
    CHECK(scan.unresolved == V{});
  }
  SUBCASE("starved budget reports unresolved, not exceptional") {
    FactorBudget tiny;
    tiny.trial_division_bound = 2;
    tiny.rho_iteration_cap = 1;
    auto scan = scan_primitive_divisors(SeqParams::balancing(), 40, tiny);
    CHECK(scan.exceptional == V{});
    CHECK_FALSE(scan.unresolved.empty());
  }
  SUBCASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(
        scan_primitive_divisors(SeqParams::generalized(2, -1), 10),
        std::invalid_argument);
  }
}
