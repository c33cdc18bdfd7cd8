#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <utility>

#include "balnum/bignum.hpp"
#include "balnum/quadint.hpp"

namespace balnum {

// Families of second-order recurrences x_{n+1} = A*x_n + B*x_{n-1} with
// x_0 = 0, x_1 = 1. Balancing fixes (A, B) = (6, -1); BalancingLike keeps
// B = -1 with A > 2; Generalized allows any signed pair with A^2 + 4B > 0
// (two distinct real roots).
enum class SeqFamily { Balancing, BalancingLike, Generalized };

struct SeqParams {
  SeqFamily family = SeqFamily::Balancing;
  std::int64_t a = 6;
  std::int64_t b = -1;

  static SeqParams balancing() { return {SeqFamily::Balancing, 6, -1}; }
  static SeqParams balancing_like(std::int64_t a) {
    return {SeqFamily::BalancingLike, a, -1};
  }
  static SeqParams generalized(std::int64_t a, std::int64_t b) {
    return {SeqFamily::Generalized, a, b};
  }

  std::int64_t discriminant() const { return a * a + 4 * b; }

  // Throws std::invalid_argument on parameter violations.
  void validate() const;
};

// B_n and the companion C_n = sqrt(8*B_n^2 + 1), computed by fast doubling:
//   B_{2n} = 2*B_n*C_n,        C_{2n} = 2*C_n^2 - 1,
//   B_{n+1} = 3*B_n + C_n,     C_{n+1} = 8*B_n + 3*C_n.
// O(log n) big-integer multiplications.
BigNat balancing(SeqIndex n);
BigNat lucas_balancing(SeqIndex n);
std::pair<BigNat, BigNat> balancing_pair(SeqIndex n);  // (B_n, C_n)

// Term of the configured family. Signed for Generalized parameters.
BigInt sequence_term(const SeqParams& params, SeqIndex n);

// (B_n mod m, C_n mod m) for m >= 1, via the same doubling chain with all
// intermediates reduced. Uses 64-bit arithmetic when m fits a machine word.
std::pair<BigNat, BigNat> balancing_pair_mod(SeqIndex n, const BigNat& m);
BigNat balancing_mod(SeqIndex n, const BigNat& m);
std::uint64_t balancing_mod_u64(SeqIndex n, std::uint64_t m);

// alpha^n for alpha = 3 + 2*sqrt(2), as an exact QuadInt. Components equal
// (C_n, 2*B_n).
QuadInt alpha_power(SeqIndex n);

// Exact three-way comparison of an integer against the irrational alpha^n.
// Never returns equal for n >= 1.
std::strong_ordering cmp_with_alpha_power(const BigNat& x, SeqIndex n);

struct CmpBudget {
  // Cap on the decimal size of any B_m this comparison is allowed to
  // materialize. Roughly 0.7656 digits per index unit.
  std::size_t max_decimal_digits = 1'000'000;
};

struct BalancingCmp {
  std::strong_ordering ordering = std::strong_ordering::equal;
  // True when the interval alpha^{m-1} < B_m < alpha^m alone settled the
  // comparison and B_m was never computed.
  bool certified_by_bounds = false;
  // Present exactly when the comparison fell through to an exact B_m.
  std::optional<BigNat> balancing_value;
};

// Compares x against B_m without necessarily computing B_m: for m >= 2 the
// window alpha^{m-1} < B_m < alpha^m separates every x outside it. Inputs
// inside the window fall back to the exact value, subject to the digit
// budget; an inseparable comparison over budget throws budget_error.
BalancingCmp cmp_with_balancing_detail(const BigNat& x, SeqIndex m,
                                       const CmpBudget& budget = {},
                                       bool force_exact = false);
std::strong_ordering cmp_with_balancing(const BigNat& x, SeqIndex m,
                                        const CmpBudget& budget = {});

// Upper estimate of the decimal size of B_m, used for budget admission.
std::size_t balancing_digits_estimate(SeqIndex m);

}  // namespace balnum
