#include "balnum/certified.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace balnum {

namespace {

// Minimal RAII wrapper; everything else uses the mpfr C interface directly.
struct Real {
  mpfr_t v;
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~Real() { mpfr_clear(v); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
};

mpq_class to_mpq(const mpfr_t x) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x);
  return q;
}

// ln(n) with the requested rounding direction applied at every step.
void log_of_mpz(mpfr_t out, const BigNat& n, mpfr_rnd_t rnd) {
  mpfr_set_z(out, n.get_mpz_t(), rnd);
  mpfr_log(out, out, rnd);
}

// log(alpha) for alpha = 3 + 2*sqrt(2), directed.
void log_alpha(mpfr_t out, mpfr_rnd_t rnd) {
  mpfr_sqrt_ui(out, 2, rnd);
  mpfr_mul_ui(out, out, 2, rnd);
  mpfr_add_ui(out, out, 3, rnd);
  mpfr_log(out, out, rnd);
}

constexpr mpfr_prec_t kMaxPrec = mpfr_prec_t{1} << 22;

}  // namespace

CertifiedLogCmp certified_phi_log_cmp(const BigNat& phi, const BigNat& n) {
  if (n < 2) throw std::invalid_argument("requires n >= 2");
  for (mpfr_prec_t prec = 128; prec <= kMaxPrec; prec *= 2) {
    Real t(prec), b(prec);
    log_of_mpz(t.v, n, MPFR_RNDD);
    mpfr_mul_z(b.v, t.v, phi.get_mpz_t(), MPFR_RNDD);
    if (mpfr_cmp_z(b.v, n.get_mpz_t()) > 0) {
      return {1, to_mpq(b.v) - mpq_class(n)};
    }
    log_of_mpz(t.v, n, MPFR_RNDU);
    mpfr_mul_z(b.v, t.v, phi.get_mpz_t(), MPFR_RNDU);
    if (mpfr_cmp_z(b.v, n.get_mpz_t()) < 0) {
      return {-1, to_mpq(b.v) - mpq_class(n)};
    }
  }
  throw std::runtime_error("phi*ln(n) vs n failed to separate");
}

std::pair<mpq_class, mpq_class> n_over_log_bounds(const BigNat& n) {
  if (n < 2) throw std::invalid_argument("requires n >= 2");
  const mpfr_prec_t prec = 192;
  Real t(prec), num(prec), b(prec);
  // lower: round-down(n) / upper(ln n), rounded down
  log_of_mpz(t.v, n, MPFR_RNDU);
  mpfr_set_z(num.v, n.get_mpz_t(), MPFR_RNDD);
  mpfr_div(b.v, num.v, t.v, MPFR_RNDD);
  mpq_class lo = to_mpq(b.v);
  // upper: round-up(n) / lower(ln n), rounded up
  log_of_mpz(t.v, n, MPFR_RNDD);
  mpfr_set_z(num.v, n.get_mpz_t(), MPFR_RNDU);
  mpfr_div(b.v, num.v, t.v, MPFR_RNDU);
  mpq_class hi = to_mpq(b.v);
  return {lo, hi};
}

std::pair<mpq_class, mpq_class> log_alpha_bounds(const BigNat& x) {
  if (x < 1) throw std::invalid_argument("requires x >= 1");
  if (x == 1) return {mpq_class(0), mpq_class(0)};
  const mpfr_prec_t prec = 192;
  Real num(prec), den(prec), q(prec);
  log_of_mpz(num.v, x, MPFR_RNDD);
  log_alpha(den.v, MPFR_RNDU);
  mpfr_div(q.v, num.v, den.v, MPFR_RNDD);
  mpq_class lo = to_mpq(q.v);
  log_of_mpz(num.v, x, MPFR_RNDU);
  log_alpha(den.v, MPFR_RNDD);
  mpfr_div(q.v, num.v, den.v, MPFR_RNDU);
  mpq_class hi = to_mpq(q.v);
  return {lo, hi};
}

}  // namespace balnum
