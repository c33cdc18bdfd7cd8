#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>

#include "balnum/errors.hpp"
#include "balnum/seq.hpp"
#include "oracle.hpp"

using namespace balnum;

TEST_CASE("golden balancing values") {
  const char* expected[] = {"0",       "1",       "6",        "35",
                            "204",     "1189",    "6930",     "40391",
                            "235416",  "1372105", "7997214",  "46611179",
                            "271669860", "1583407981"};
  for (std::uint64_t n = 0; n < 14; ++n)
    CHECK(balancing(n) == BigNat(expected[n]));
}

TEST_CASE("golden lucas-balancing values") {
  const char* expected[] = {"1",    "3",     "17",    "99",   "577",
                            "3363", "19601", "114243", "665857"};
  for (std::uint64_t n = 0; n < 9; ++n)
    CHECK(lucas_balancing(n) == BigNat(expected[n]));
}

TEST_CASE("fast doubling equals the recurrence up to 1000") {
  auto b = oracle::balancing_upto(1000);
  auto c = oracle::lucas_balancing_upto(1000);
  for (std::uint64_t n = 0; n <= 1000; ++n) {
    auto [B, C] = balancing_pair(n);
    CHECK(B == b[n]);
    CHECK(C == c[n]);
  }
}

TEST_CASE("pell identity") {
  for (std::uint64_t n = 0; n <= 300; ++n) {
    auto [B, C] = balancing_pair(n);
    CHECK(C * C - 8 * B * B == 1);
  }
}

TEST_CASE("addition formula") {
  auto b = oracle::balancing_upto(400);
  auto c = oracle::lucas_balancing_upto(400);
  for (std::uint64_t m = 0; m <= 200; m += 7) {
    for (std::uint64_t n = 0; n <= 200; n += 11) {
      CHECK(b[m + n] == b[m] * c[n] + c[m] * b[n]);
    }
  }
}

TEST_CASE("sequence_term dispatches per family") {
  SUBCASE("balancing") {
    auto b = oracle::balancing_upto(50);
    SeqParams p = SeqParams::balancing();
    for (std::uint64_t n = 0; n <= 50; ++n)
      CHECK(sequence_term(p, n) == b[n]);
  }
  SUBCASE("balancing-like A=6 agrees with balancing") {
    SeqParams p = SeqParams::balancing_like(6);
    for (std::uint64_t n = 0; n <= 200; ++n)
      CHECK(sequence_term(p, n) == balancing(n));
  }
  SUBCASE("balancing-like A=3 gives even-indexed Fibonacci") {
    auto f = oracle::fibonacci_upto(400);
    SeqParams p = SeqParams::balancing_like(3);
    for (std::uint64_t n = 0; n <= 200; ++n)
      CHECK(sequence_term(p, n) == f[2 * n]);
  }
  SUBCASE("balancing-like matches its own recurrence") {
    for (std::int64_t a : {4, 5, 7, 100}) {
      SeqParams p = SeqParams::balancing_like(a);
      mpz_class prev = 0, cur = 1;
      CHECK(sequence_term(p, 0) == prev);
      CHECK(sequence_term(p, 1) == cur);
      for (std::uint64_t n = 2; n <= 80; ++n) {
        mpz_class next = a * cur - prev;
        prev = cur;
        cur = next;
        CHECK(sequence_term(p, n) == cur);
      }
    }
  }
  SUBCASE("generalized (1,1) is Fibonacci") {
    auto f = oracle::fibonacci_upto(100);
    SeqParams p = SeqParams::generalized(1, 1);
    for (std::uint64_t n = 0; n <= 100; ++n)
      CHECK(sequence_term(p, n) == f[n]);
  }
  SUBCASE("generalized (2,1) is Pell") {
    SeqParams p = SeqParams::generalized(2, 1);
    const long pell[] = {0, 1, 2, 5, 12, 29, 70, 169, 408, 985};
    for (std::uint64_t n = 0; n < 10; ++n)
      CHECK(sequence_term(p, n) == pell[n]);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(SeqParams::balancing_like(2).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(SeqParams::balancing_like(0).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(SeqParams::balancing_like(-5).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(SeqParams::generalized(2, -1).validate(),
                  std::invalid_argument);  // discriminant 0
  CHECK_THROWS_AS(SeqParams::generalized(1, -1).validate(),
                  std::invalid_argument);  // discriminant -3
  CHECK_NOTHROW(SeqParams::generalized(1, 1).validate());
  CHECK_NOTHROW(SeqParams::generalized(-3, -1).validate());
  CHECK_NOTHROW(SeqParams::balancing().validate());

  SeqParams broken = SeqParams::balancing();
  broken.a = 5;
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);

  SeqParams wrong_b = SeqParams::balancing_like(4);
  wrong_b.b = 1;
  CHECK_THROWS_AS(wrong_b.validate(), std::invalid_argument);
}

TEST_CASE("modular chains agree with plain values") {
  auto b = oracle::balancing_upto(400);
  auto c = oracle::lucas_balancing_upto(400);

  SUBCASE("word-sized modulus") {
    for (std::uint64_t m : {1ull, 2ull, 97ull, 1000000007ull,
                            0xFFFFFFFFFFFFFFFFull}) {
      BigNat mod(static_cast<unsigned long>(m));
      for (std::uint64_t n = 0; n <= 400; n += 13) {
        auto [bm, cm] = balancing_pair_mod(n, mod);
        CHECK(bm == b[n] % mod);
        CHECK(cm == c[n] % mod);
        CHECK(balancing_mod_u64(n, m) == mpz_class(b[n] % mod).get_ui());
      }
    }
  }
  SUBCASE("big modulus") {
    BigNat mod = pow_ui(BigNat(10), 30) + 57;
    for (std::uint64_t n = 0; n <= 400; n += 17) {
      auto [bm, cm] = balancing_pair_mod(n, mod);
      CHECK(bm == b[n] % mod);
      CHECK(cm == c[n] % mod);
    }
  }
  SUBCASE("invalid modulus") {
    CHECK_THROWS_AS(balancing_pair_mod(5, BigNat(0)), std::invalid_argument);
    CHECK_THROWS_AS(balancing_mod_u64(5, 0), std::invalid_argument);
  }
}

TEST_CASE("alpha_power components are (C_n, 2*B_n)") {
  for (std::uint64_t n = 0; n <= 200; ++n) {
    auto [B, C] = balancing_pair(n);
    QuadInt a = alpha_power(n);
    CHECK(a.rational_part() == C);
    CHECK(a.radical_part() == 2 * B);
  }
}

TEST_CASE("cmp_with_alpha_power at the exact floor boundary") {
  // floor(alpha^n) = 2*C_n - 1 for n >= 1, so the comparison flips between
  // 2*C_n - 1 and 2*C_n.
  for (std::uint64_t n = 1; n <= 100; ++n) {
    BigNat c = lucas_balancing(n);
    CHECK(cmp_with_alpha_power(2 * c - 1, n) == std::strong_ordering::less);
    CHECK(cmp_with_alpha_power(2 * c, n) == std::strong_ordering::greater);
  }
  CHECK(cmp_with_alpha_power(BigNat(1), 0) == std::strong_ordering::equal);
  CHECK(cmp_with_alpha_power(BigNat(0), 0) == std::strong_ordering::less);
  CHECK(cmp_with_alpha_power(BigNat(2), 0) == std::strong_ordering::greater);
}

TEST_CASE("log2(alpha) sandwich used by the pre-filter") {
  // 2^25431 < alpha^10000 < 2^25432, settled in exact Z[sqrt(2)] arithmetic.
  CHECK(cmp_with_alpha_power(pow_ui(BigNat(2), 25431), 10000) ==
        std::strong_ordering::less);
  CHECK(cmp_with_alpha_power(pow_ui(BigNat(2), 25432), 10000) ==
        std::strong_ordering::greater);
}

TEST_CASE("cmp_with_balancing is exact near B_m") {
  auto b = oracle::balancing_upto(80);
  for (std::uint64_t m = 0; m <= 80; ++m) {
    CHECK(cmp_with_balancing(b[m], m) == std::strong_ordering::equal);
    CHECK(cmp_with_balancing(b[m] + 1, m) == std::strong_ordering::greater);
    if (b[m] > 0)
      CHECK(cmp_with_balancing(b[m] - 1, m) == std::strong_ordering::less);
  }
}

TEST_CASE("certified comparisons never disagree with exact ones") {
  auto b = oracle::balancing_upto(220);
  for (std::uint64_t m = 2; m <= 100; m += 3) {
    for (std::uint64_t j : {m - 2, m - 1, m, m + 1, m + 2}) {
      auto det = cmp_with_balancing_detail(b[j], m);
      CHECK(det.ordering == (cmp(b[j], b[m]) < 0
                                 ? std::strong_ordering::less
                                 : (b[j] == b[m] ? std::strong_ordering::equal
                                                 : std::strong_ordering::greater)));
      if (det.certified_by_bounds) {
        CHECK_FALSE(det.balancing_value.has_value());
        CHECK(det.ordering != std::strong_ordering::equal);
      } else {
        REQUIRE(det.balancing_value.has_value());
        CHECK(*det.balancing_value == b[m]);
      }
    }
  }
}

TEST_CASE("window neighbours are certified without computing B_m") {
  // B_{m-2} < alpha^{m-1} < B_m < alpha^m < B_{m+2}: both neighbours two
  // steps away are settled by bounds alone.
  auto b = oracle::balancing_upto(120);
  for (std::uint64_t m = 4; m <= 100; m += 7) {
    auto lo = cmp_with_balancing_detail(b[m - 2], m);
    CHECK(lo.ordering == std::strong_ordering::less);
    CHECK(lo.certified_by_bounds);
    auto hi = cmp_with_balancing_detail(b[m + 2], m);
    CHECK(hi.ordering == std::strong_ordering::greater);
    CHECK(hi.certified_by_bounds);
  }
}

TEST_CASE("digit budget") {
  SUBCASE("estimate dominates the true size") {
    for (std::uint64_t m : {1ull, 10ull, 100ull, 1000ull, 10000ull}) {
      CHECK(balancing_digits_estimate(m) >= decimal_digits(balancing(m)));
    }
  }
  SUBCASE("far-away comparisons need no budget") {
    CmpBudget tiny{10};
    auto det = cmp_with_balancing_detail(BigNat(12345), 1000, tiny);
    CHECK(det.ordering == std::strong_ordering::less);
    CHECK(det.certified_by_bounds);
    BigNat huge = pow_ui(BigNat(10), 2000);
    auto det2 = cmp_with_balancing_detail(huge, 1000, tiny);
    CHECK(det2.ordering == std::strong_ordering::greater);
    CHECK(det2.certified_by_bounds);
  }
  SUBCASE("inseparable over budget throws") {
    CmpBudget tiny{10};
    BigNat b100 = balancing(100);
    CHECK_THROWS_AS(cmp_with_balancing_detail(b100, 100, tiny), budget_error);
    CHECK_THROWS_AS(cmp_with_balancing_detail(b100, 100, tiny, true),
                    budget_error);
  }
  SUBCASE("force_exact within budget returns the value") {
    auto det = cmp_with_balancing_detail(BigNat(12345), 100, CmpBudget{}, true);
    CHECK(det.ordering == std::strong_ordering::less);
    CHECK_FALSE(det.certified_by_bounds);
    REQUIRE(det.balancing_value.has_value());
    CHECK(*det.balancing_value == balancing(100));
  }
  SUBCASE("negative x is certified less") {
    auto det = cmp_with_balancing_detail(BigNat(-5), 100, CmpBudget{10});
    CHECK(det.ordering == std::strong_ordering::less);
    CHECK(det.certified_by_bounds);
  }
}
