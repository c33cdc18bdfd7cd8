#include "balnum/divisibility.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "balnum/errors.hpp"
#include "balnum/primality.hpp"

namespace balnum {

namespace {

// All divisors of the factored value, ascending. Throws if any divisor
// would overflow SeqIndex.
std::vector<SeqIndex> divisors_ascending(const Factorization& f) {
  std::vector<SeqIndex> divs{1};
  for (const auto& [p, e] : f.factors) {
    if (!fits_u64(p))
      throw budget_error("divisor enumeration beyond the index range");
    const std::uint64_t pu = to_u64(p);
    const std::size_t base = divs.size();
    std::uint64_t pe = 1;
    for (unsigned i = 1; i <= e; ++i) {
      if (pe > ~std::uint64_t{0} / pu)
        throw budget_error("divisor enumeration beyond the index range");
      pe *= pu;
      for (std::size_t j = 0; j < base; ++j) {
        if (divs[j] > ~std::uint64_t{0} / pe)
          throw budget_error("divisor enumeration beyond the index range");
        divs.push_back(divs[j] * pe);
      }
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

bool divides_balancing(const BigNat& p, SeqIndex d) {
  return balancing_mod(d, p) == 0;
}

}  // namespace

bool index_divisibility(SeqIndex m, SeqIndex n) {
  if (m == 0 || n == 0)
    throw std::invalid_argument("indices must be >= 1");
  return n % m == 0;
}

std::pair<BigNat, BigNat> gcd_identity(SeqIndex m, SeqIndex n) {
  if (m == 0 || n == 0)
    throw std::invalid_argument("indices must be >= 1");
  BigNat bm = balancing(m);
  BigNat bn = balancing(n);
  BigNat g;
  mpz_gcd(g.get_mpz_t(), bm.get_mpz_t(), bn.get_mpz_t());
  return {g, balancing(std::gcd(m, n))};
}

RankOfApparition rank_of_apparition(const BigNat& p,
                                    const FactorBudget& budget) {
  if (!is_prime(p))
    throw std::invalid_argument("rank of apparition requires a prime");
  if (p == 2) return {p, 2};

  const unsigned long m8 = mpz_fdiv_ui(p.get_mpz_t(), 8);
  const BigNat candidate_multiple =
      (m8 == 1 || m8 == 7) ? BigNat(p - 1) : BigNat(p + 1);
  Factorization f = factorize(candidate_multiple, budget);
  if (!f.complete())
    throw budget_error(
        "candidate ranks could not be enumerated: p -+ 1 did not factor "
        "within the budget");
  for (SeqIndex d : divisors_ascending(f)) {
    if (divides_balancing(p, d)) return {p, d};
  }
  // Unreachable: p always divides B_{p-1} or B_{p+1}.
  throw std::logic_error("no rank found below p -+ 1");
}

SeqIndex rank_within(const BigNat& p, SeqIndex n) {
  if (n == 0) throw std::invalid_argument("requires n >= 1");
  Factorization f;
  {
    // n fits a word; enumerate its divisors by trial division.
    std::uint64_t m = n;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
      unsigned e = 0;
      while (m % d == 0) {
        m /= d;
        ++e;
      }
      if (e) f.factors.emplace_back(BigNat(d), e);
    }
    if (m > 1) f.factors.emplace_back(BigNat(m), 1);
  }
  for (SeqIndex d : divisors_ascending(f)) {
    if (divides_balancing(p, d)) return d;
  }
  throw std::invalid_argument("p does not divide B_n");
}

Lemma26Result check_lemma_2_6(const BigNat& p) {
  if (p == 2 || !is_prime(p))
    throw std::invalid_argument("requires an odd prime");
  const unsigned long m8 = mpz_fdiv_ui(p.get_mpz_t(), 8);
  const bool pm1 = (m8 == 1 || m8 == 7);
  if (!fits_u64(p + 1))
    throw budget_error("prime exceeds the index range");
  const SeqIndex idx = pm1 ? to_u64(p - 1) : to_u64(p + 1);
  return {pm1 ? Mod8Class::PM1 : Mod8Class::PM3, idx,
          divides_balancing(p, idx)};
}

PrimitiveDivisorReport primitive_divisors(SeqIndex n,
                                          const FactorBudget& budget) {
  if (n < 2)
    throw std::invalid_argument(
        "primitive divisors are defined for indices n >= 2 (B_1 = 1)");
  return primitive_divisors_from(n, factorize(balancing(n), budget));
}

PrimitiveDivisorReport primitive_divisors_from(SeqIndex n,
                                               const Factorization& f) {
  if (n < 2) throw std::invalid_argument("requires n >= 2");
  PrimitiveDivisorReport rep;
  rep.index = n;
  rep.witness = f;
  rep.complete = f.complete();
  for (const auto& [p, e] : f.factors) {
    if (p == 2) continue;  // divides the discriminant 32
    if (rank_within(p, n) == n) rep.primitive.push_back(p);
  }
  return rep;
}

Lemma214Report check_lemma_2_14_part1(SeqIndex n, const FactorBudget& budget) {
  if (n < 3 || n % 2 == 0 || !is_prime_u64(n))
    throw std::invalid_argument("requires an odd prime index");
  return check_lemma_2_14_part1_from(n, factorize(balancing(n), budget));
}

Lemma214Report check_lemma_2_14_part1_from(SeqIndex n,
                                           const Factorization& f) {
  if (n < 3 || n % 2 == 0 || !is_prime_u64(n))
    throw std::invalid_argument("requires an odd prime index");
  Lemma214Report rep;
  rep.complete = f.complete();
  rep.cofactor = f.cofactor;
  const BigNat bound = BigNat(2) * static_cast<unsigned long>(n) - 1;
  for (const auto& [p, e] : f.factors) {
    Lemma214Row row;
    row.prime = p;
    row.residue = p % static_cast<unsigned long>(n);
    row.residue_ok = row.residue == 1 || row.residue == n - 1;
    row.lower_bound_ok = p >= bound;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

PrimitiveScan scan_primitive_divisors(const SeqParams& params, SeqIndex n_max,
                                      const FactorBudget& budget) {
  params.validate();
  const BigInt disc = BigInt(params.a) * params.a + 4 * BigInt(params.b);

  // Terms by iteration; also reused for the "no earlier index" check below.
  std::vector<BigInt> w(n_max + 1);
  if (n_max >= 1) w[1] = 1;
  for (SeqIndex i = 2; i <= n_max; ++i)
    w[i] = params.a * w[i - 1] + params.b * w[i - 2];

  PrimitiveScan scan;
  for (SeqIndex n = 2; n <= n_max; ++n) {
    BigInt a = abs(w[n]);
    if (a <= 1) {
      scan.exceptional.push_back(n);
      continue;
    }
    Factorization f = factorize(a, budget);
    bool found = false;
    for (const auto& [p, e] : f.factors) {
      if (mpz_divisible_p(disc.get_mpz_t(), p.get_mpz_t())) continue;
      bool earlier = false;
      for (SeqIndex m = 1; m < n && !earlier; ++m)
        earlier = w[m] != 0 && mpz_divisible_p(w[m].get_mpz_t(), p.get_mpz_t());
      if (!earlier) {
        found = true;
        break;
      }
    }
    if (!found) {
      if (f.complete())
        scan.exceptional.push_back(n);
      else
        scan.unresolved.push_back(n);
    }
  }
  return scan;
}

}  // namespace balnum
