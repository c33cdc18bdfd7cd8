#pragma once

#include <vector>

#include "balnum/factor.hpp"
#include "balnum/seq.hpp"

namespace balnum {

// Whether B_m | B_n, decided through the index rule m | n; the test suite
// cross-validates this against direct big-integer divisibility.
bool index_divisibility(SeqIndex m, SeqIndex n);

// (gcd(B_m, B_n), B_{gcd(m, n)}); the two components are equal.
std::pair<BigNat, BigNat> gcd_identity(SeqIndex m, SeqIndex n);

// Least d >= 1 with p | B_d. For an odd prime p the rank divides p - 1 when
// p = +-1 (mod 8) and p + 1 otherwise, so candidates are the divisors of
// that quantity in ascending order; p = 2 has rank 2. Factoring p -+ 1 runs
// under the given budget and a Partial result raises budget_error.
struct RankOfApparition {
  BigNat prime;
  SeqIndex rank;
};
RankOfApparition rank_of_apparition(const BigNat& p,
                                    const FactorBudget& budget = {});

// Rank of p among the divisors of n; requires p | B_n (then the rank divides
// n and the smallest qualifying divisor is the rank itself).
SeqIndex rank_within(const BigNat& p, SeqIndex n);

enum class Mod8Class { PM1, PM3 };  // p = +-1 (mod 8) vs p = +-3 (mod 8)

struct Lemma26Result {
  Mod8Class cls;
  SeqIndex index;  // p - 1 or p + 1
  bool holds;      // p | B_index
};
Lemma26Result check_lemma_2_6(const BigNat& p);  // p an odd prime

// Primitive divisors of B_n: primes p | B_n whose rank of apparition equals
// n, excluding divisors of the discriminant 32. Partial factorizations give
// a partial list, flagged, never an error.
struct PrimitiveDivisorReport {
  SeqIndex index = 0;
  std::vector<BigNat> primitive;  // ascending
  Factorization witness;          // factorization of B_index
  bool complete = true;
};
PrimitiveDivisorReport primitive_divisors(SeqIndex n,
                                          const FactorBudget& budget = {});
PrimitiveDivisorReport primitive_divisors_from(SeqIndex n,
                                               const Factorization& f);

// For an odd prime n, each prime p | B_n satisfies p >= 2n - 1 and
// p = +-1 (mod n); one row per distinct prime factor, ascending.
struct Lemma214Row {
  BigNat prime;
  BigNat residue;  // p mod n
  bool residue_ok;
  bool lower_bound_ok;  // p >= 2n - 1
};
struct Lemma214Report {
  std::vector<Lemma214Row> rows;
  bool complete = true;
  BigNat cofactor = 1;  // unfactored part, 1 when complete
};
Lemma214Report check_lemma_2_14_part1(SeqIndex n,
                                      const FactorBudget& budget = {});
Lemma214Report check_lemma_2_14_part1_from(SeqIndex n, const Factorization& f);

// Empirical primitive-divisor scan across a whole family: for indices
// 2..n_max, records which terms provably lack a primitive divisor (primes
// dividing A^2 + 4B never count). Indices whose term did not factor far
// enough to decide are reported as unresolved, not as exceptional.
struct PrimitiveScan {
  std::vector<SeqIndex> exceptional;
  std::vector<SeqIndex> unresolved;
};
PrimitiveScan scan_primitive_divisors(const SeqParams& params, SeqIndex n_max,
                                      const FactorBudget& budget = {});

}  // namespace balnum
