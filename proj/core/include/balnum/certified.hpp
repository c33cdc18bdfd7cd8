#pragma once

#include <utility>

#include "balnum/bignum.hpp"

namespace balnum {

// Certified numeric facts derived through directed rounding: every returned
// rational is an exact outward bound of the true irrational quantity, never
// an approximation of unknown sign.

// Sign of phi * ln(n) - n, with a rational witness from the separating side:
// the witness is a certified lower bound of the expression when the sign is
// positive, a certified upper bound when negative. Precision doubles until
// the interval separates (it always does: ln n is irrational for n >= 2).
struct CertifiedLogCmp {
  int sign;
  mpq_class witness;
};
CertifiedLogCmp certified_phi_log_cmp(const BigNat& phi, const BigNat& n);

// Rational L <= n / ln(n) <= U for n >= 2.
std::pair<mpq_class, mpq_class> n_over_log_bounds(const BigNat& n);

// Rational L <= log(x) / log(alpha) <= U for x >= 1, alpha = 3 + 2*sqrt(2).
std::pair<mpq_class, mpq_class> log_alpha_bounds(const BigNat& x);

}  // namespace balnum
