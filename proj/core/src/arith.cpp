#include "balnum/arith.hpp"

#include <algorithm>
#include <stdexcept>

#include "balnum/certified.hpp"
#include "balnum/errors.hpp"
#include "balnum/primality.hpp"

namespace balnum {

namespace {

void require_complete(const Factorization& f) {
  if (!f.complete())
    throw std::invalid_argument(
        "arithmetic functions require a complete factorization");
}

}  // namespace

BigNat euler_phi(const Factorization& f) {
  require_complete(f);
  BigNat r = 1;
  for (const auto& [p, e] : f.factors) r *= pow_ui(p, e - 1) * (p - 1);
  return r;
}

BigNat sigma_k(const Factorization& f, unsigned k) {
  require_complete(f);
  BigNat r = 1;
  for (const auto& [p, e] : f.factors) {
    if (k == 0) {
      r *= e + 1;
    } else {
      // (p^{k(e+1)} - 1) / (p^k - 1), exactly.
      BigNat pk = pow_ui(p, k);
      BigNat num = pow_ui(pk, e + 1) - 1;
      BigNat den = pk - 1;
      mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      r *= num;
    }
  }
  return r;
}

BigNat tau(const Factorization& f) { return sigma_k(f, 0); }

std::size_t omega(const Factorization& f) {
  require_complete(f);
  return f.factors.size();
}

const BigNat& totient_clause_threshold() {
  static const BigNat t("2000000000");
  return t;
}

std::vector<ClauseOutcome> check_lemma_2_12(const BigNat& n, unsigned k,
                                            const FactorBudget& budget) {
  if (n < 1) throw std::invalid_argument("requires n >= 1");
  Factorization f = factorize(n, budget);
  if (!f.complete())
    throw budget_error("n did not factor within the given budget");
  return check_lemma_2_12_from(n, k, f);
}

std::vector<ClauseOutcome> check_lemma_2_12_from(const BigNat& n, unsigned k,
                                                 const Factorization& f) {
  if (n < 1 || f.value() != n)
    throw std::invalid_argument("factorization does not match n");
  if (!f.complete())
    throw std::invalid_argument("requires a complete factorization");

  const BigNat phi = euler_phi(f);
  const bool composite = n > 1 && !is_prime(n);
  std::vector<ClauseOutcome> out;

  if (n >= totient_clause_threshold()) {
    // phi(n) * ln(n) > n, decided with directed rounding. The margin is a
    // certified rational bound of phi*ln(n) - n from the separating side.
    auto c = certified_phi_log_cmp(phi, n);
    out.push_back({1, c.sign > 0, true, c.witness});
  } else if (n >= 2) {
    out.push_back({2, 6 * phi > n, false, mpq_class(6 * phi - n)});
  }

  if (n >= 2 && k >= 1) {
    const BigNat nk = pow_ui(n, k);
    const BigNat sk = sigma_k(f, k);
    // n/phi > sigma_k/n^k  <=>  n^{k+1} > sigma_k * phi
    BigNat m3 = pow_ui(n, k + 1) - sk * phi;
    out.push_back({3, m3 > 0, false, mpq_class(m3)});

    if (composite) {
      // In the squared domain: (sigma_k - n^k)^2 >= n^k.
      BigNat gap = sk - nk;
      mpq_class margin5(gap * gap - nk);
      out.push_back({5, margin5 >= 0, false, margin5});
    }
  }

  if (composite) {
    BigNat gap = n - phi;
    mpq_class margin4(gap * gap - n);
    out.push_back({4, margin4 >= 0, false, margin4});
  }

  // Present in clause order.
  std::sort(out.begin(), out.end(),
            [](const ClauseOutcome& a, const ClauseOutcome& b) {
              return a.clause < b.clause;
            });
  return out;
}

}  // namespace balnum
