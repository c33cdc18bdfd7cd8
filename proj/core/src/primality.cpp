#include "balnum/primality.hpp"

#include <array>
#include <cstdint>

namespace balnum {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr std::array<u64, 13> kWitnesses = {2,  3,  5,  7,  11, 13, 17,
                                            19, 23, 29, 31, 37, 41};

// Largest bound for which the witness set above is a deterministic test.
const mpz_class& witness_bound() {
  static const mpz_class b("3317044064679887385961981");
  return b;
}

u64 mulmod(u64 x, u64 y, u64 m) { return (u128)x * y % m; }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// One strong-pseudoprime round; n odd > 2, n - 1 = d * 2^s.
bool mr_round_u64(u64 n, u64 a, u64 d, int s) {
  a %= n;
  if (a == 0) return true;
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool mr_round_mpz(const mpz_class& n, const mpz_class& a, const mpz_class& d,
                  mp_bitcnt_t s) {
  mpz_class x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  mpz_class nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (mp_bitcnt_t i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == nm1) return true;
  }
  return false;
}

// Strong Lucas probable-prime test with Selfridge's parameter choice:
// first D in 5, -7, 9, -11, ... with (D|n) = -1, then P = 1, Q = (1-D)/4.
// Precondition: n odd, n > 41, n not a perfect square.
bool strong_lucas(const mpz_class& n) {
  mpz_class D = 5;
  while (true) {
    int j = mpz_jacobi(D.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0) return false;  // shares a factor with n
    if (D > 0)
      D = -(D + 2);
    else
      D = -(D - 2);
  }
  const mpz_class Q = (1 - D) / 4;

  mpz_class d = n + 1;
  mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_class q = d >> s;

  // Walk the bits of q computing (U_k, V_k, Q^k) mod n with P = 1.
  auto half_mod = [&n](mpz_class v) {
    if (mpz_odd_p(v.get_mpz_t())) v += n;
    v >>= 1;
    return v % n;
  };
  mpz_class U = 1, V = 1, qk = Q % n;
  if (qk < 0) qk += n;
  mp_bitcnt_t top = mpz_sizeinbase(q.get_mpz_t(), 2) - 1;
  for (mp_bitcnt_t i = top; i-- > 0;) {
    // double: k -> 2k
    U = (U * V) % n;
    V = (V * V - 2 * qk) % n;
    if (V < 0) V += n;
    qk = (qk * qk) % n;
    if (mpz_tstbit(q.get_mpz_t(), i)) {
      // increment: 2k -> 2k+1
      mpz_class U2 = half_mod(U + V);
      mpz_class V2 = half_mod(D * U + V);
      if (V2 < 0) V2 += n;
      U = std::move(U2);
      V = std::move(V2);
      qk = (qk * Q) % n;
      if (qk < 0) qk += n;
    }
  }

  if (U == 0) return true;
  for (mp_bitcnt_t r = 0; r < s; ++r) {
    if (V == 0) return true;
    V = (V * V - 2 * qk) % n;
    if (V < 0) V += n;
    qk = (qk * qk) % n;
  }
  return false;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull, 41ull}) {
    if (n % p == 0) return n == p;
  }
  if (n < 43 * 43) return true;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kWitnesses) {
    if (!mr_round_u64(n, a, d, s)) return false;
  }
  return true;
}

bool is_prime(const BigNat& n) {
  if (n < 2) return false;
  if (n.fits_ulong_p()) return is_prime_u64(mpz_get_ui(n.get_mpz_t()));

  for (u64 p : kWitnesses) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }

  mpz_class d = n - 1;
  mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;

  if (n < witness_bound()) {
    for (u64 a : kWitnesses) {
      if (!mr_round_mpz(n, mpz_class(static_cast<unsigned long>(a)), d, s))
        return false;
    }
    return true;
  }

  // Beyond the deterministic range: strong Lucas plus 64 Miller-Rabin
  // rounds with bases drawn from a fixed-seed generator.
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;
  if (!strong_lucas(n)) return false;

  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(0x5EEDBA5Eul);
  for (int round = 0; round < 64; ++round) {
    mpz_class a = rng.get_z_range(n - 3) + 2;
    if (!mr_round_mpz(n, a, d, s)) return false;
  }
  return true;
}

}  // namespace balnum
