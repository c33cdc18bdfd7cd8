#pragma once

#include <vector>

#include "balnum/factor.hpp"

namespace balnum {

// Multiplicative functions evaluated from a complete factorization; a
// Partial input is rejected, silently wrong answers are not an option.
BigNat euler_phi(const Factorization& f);
BigNat sigma_k(const Factorization& f, unsigned k);  // k = 0 gives tau
BigNat tau(const Factorization& f);
std::size_t omega(const Factorization& f);

// Outcome of one clause of the totient/divisor inequality bundle over n:
//   1. phi(n) > n / ln(n)            (checked for n >= 2 * 10^9)
//   2. 6 * phi(n) > n                (checked for n < 2 * 10^9; known to
//                                     fail at some n, reported not asserted)
//   3. n / phi(n) > sigma_k(n) / n^k (n >= 2, k >= 1)
//   4. n - phi(n) >= sqrt(n)         (composite n)
//   5. sigma_k(n) - n^k >= sqrt(n^k) (composite n, k >= 1)
// Margins are reported denominator-free: clause 2 as 6*phi - n, clause 3 as
// n^{k+1} - sigma_k*phi, clauses 4 and 5 in the squared domain. Clause 1's
// margin is a certified rational bound of phi*ln(n) - n obtained by directed
// rounding from the separating side.
struct ClauseOutcome {
  int clause;
  bool holds;
  bool certified;    // margin derived via directed rounding
  mpq_class margin;  // holds iff margin > 0 (>= 0 for clauses 4 and 5)
};

std::vector<ClauseOutcome> check_lemma_2_12(const BigNat& n, unsigned k,
                                            const FactorBudget& budget = {});
std::vector<ClauseOutcome> check_lemma_2_12_from(const BigNat& n, unsigned k,
                                                 const Factorization& f);

// Boundary between clause 2 and clause 1.
const BigNat& totient_clause_threshold();  // 2 * 10^9

}  // namespace balnum
