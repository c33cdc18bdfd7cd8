#include "balnum/seq.hpp"

#include <cassert>
#include <stdexcept>

#include "balnum/errors.hpp"

namespace balnum {

namespace {

// Integer sandwich 2.5431 < log2(alpha) < 2.5432, scaled by 10^4. Used for a
// cheap certified pre-filter before any big arithmetic; validated against
// exact QuadInt comparisons in the test suite.
constexpr std::uint64_t kLog2AlphaLo = 25431;
constexpr std::uint64_t kLog2AlphaHi = 25432;
constexpr std::uint64_t kLogScale = 10000;

// Upper bound on log10(alpha) = 0.76555137..., scaled by 10^5.
constexpr std::uint64_t kLog10AlphaHi = 76556;

std::strong_ordering ord_of(int c) {
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int top_bit(SeqIndex n) {
  int top = 63;
  while (top > 0 && !((n >> top) & 1)) --top;
  return top;
}

std::uint64_t mulmod_u64(std::uint64_t x, std::uint64_t y, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(x) * y % m);
}

std::pair<std::uint64_t, std::uint64_t> pair_mod_u64(SeqIndex n,
                                                     std::uint64_t m) {
  std::uint64_t B = 0;
  std::uint64_t C = 1 % m;
  if (n == 0) return {B, C};
  using u128 = unsigned __int128;
  for (int i = top_bit(n); i >= 0; --i) {
    std::uint64_t t = mulmod_u64(B, C, m);
    std::uint64_t b2 = static_cast<std::uint64_t>((u128(t) + t) % m);
    std::uint64_t u = mulmod_u64(C, C, m);
    std::uint64_t c2 = static_cast<std::uint64_t>((u128(u) + u + m - 1) % m);
    if ((n >> i) & 1) {
      B = static_cast<std::uint64_t>((u128(b2) * 3 + c2) % m);
      C = static_cast<std::uint64_t>((u128(b2) * 8 + u128(c2) * 3) % m);
    } else {
      B = b2;
      C = c2;
    }
  }
  return {B, C};
}

std::pair<BigNat, BigNat> pair_mod_mpz(SeqIndex n, const BigNat& m) {
  BigNat B = 0;
  BigNat C = 1 % m;
  if (n == 0) return {B, C};
  for (int i = top_bit(n); i >= 0; --i) {
    BigNat b2 = (2 * B * C) % m;
    BigNat c2 = (2 * C * C + m - 1) % m;
    if ((n >> i) & 1) {
      BigNat nb = (3 * b2 + c2) % m;
      BigNat nc = (8 * b2 + 3 * c2) % m;
      B = std::move(nb);
      C = std::move(nc);
    } else {
      B = std::move(b2);
      C = std::move(c2);
    }
  }
  return {B, C};
}

}  // namespace

void SeqParams::validate() const {
  switch (family) {
    case SeqFamily::Balancing:
      if (a != 6 || b != -1)
        throw std::invalid_argument("balancing family fixes A = 6, B = -1");
      return;
    case SeqFamily::BalancingLike:
      if (b != -1)
        throw std::invalid_argument("balancing-like family fixes B = -1");
      if (a <= 2)
        throw std::invalid_argument("balancing-like family requires A > 2");
      return;
    case SeqFamily::Generalized: {
      __int128 disc = static_cast<__int128>(a) * a + 4 * static_cast<__int128>(b);
      if (disc <= 0)
        throw std::invalid_argument(
            "generalized family requires A^2 + 4B > 0");
      return;
    }
  }
  throw std::invalid_argument("unknown sequence family");
}

std::pair<BigNat, BigNat> balancing_pair(SeqIndex n) {
  BigNat B = 0;
  BigNat C = 1;
  if (n == 0) return {B, C};
  for (int i = top_bit(n); i >= 0; --i) {
    BigNat b2 = B * C;
    b2 <<= 1;
    BigNat c2 = C * C;
    c2 <<= 1;
    c2 -= 1;
    if ((n >> i) & 1) {
      B = 3 * b2 + c2;
      C = 8 * b2 + 3 * c2;
    } else {
      B = std::move(b2);
      C = std::move(c2);
    }
  }
  return {B, C};
}

BigNat balancing(SeqIndex n) { return balancing_pair(n).first; }

BigNat lucas_balancing(SeqIndex n) { return balancing_pair(n).second; }

BigInt sequence_term(const SeqParams& params, SeqIndex n) {
  params.validate();
  if (params.family == SeqFamily::Balancing) return balancing(n);
  if (params.family == SeqFamily::BalancingLike) {
    // Doubling on (x_k, v_k) where v is the companion sequence with
    // v_0 = 2, v_1 = A:
    //   x_{2k} = x_k*v_k,              v_{2k} = v_k^2 - 2,
    //   x_{k+1} = (A*x_k + v_k)/2,     v_{k+1} = ((A^2-4)*x_k + A*v_k)/2.
    // Both halvings are exact: x and v always share parity times A.
    const BigInt A = params.a;
    const BigInt D = A * A - 4;
    BigInt x = 0;
    BigInt v = 2;
    if (n == 0) return x;
    for (int i = top_bit(n); i >= 0; --i) {
      BigInt x2 = x * v;
      BigInt v2 = v * v - 2;
      if ((n >> i) & 1) {
        x = A * x2 + v2;
        v = D * x2 + A * v2;
        mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), 2);
        mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), 2);
      } else {
        x = std::move(x2);
        v = std::move(v2);
      }
    }
    return x;
  }
  // Generalized: plain iteration; indices in practical use are small.
  const BigInt A = params.a;
  const BigInt B = params.b;
  BigInt prev = 0;
  BigInt cur = 1;
  if (n == 0) return prev;
  for (SeqIndex i = 1; i < n; ++i) {
    BigInt next = A * cur + B * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::pair<BigNat, BigNat> balancing_pair_mod(SeqIndex n, const BigNat& m) {
  if (m < 1) throw std::invalid_argument("modulus must be >= 1");
  if (mpz_sizeinbase(m.get_mpz_t(), 2) <= 64 && m.fits_ulong_p()) {
    auto [b, c] = pair_mod_u64(n, mpz_get_ui(m.get_mpz_t()));
    return {BigNat(b), BigNat(c)};
  }
  return pair_mod_mpz(n, m);
}

BigNat balancing_mod(SeqIndex n, const BigNat& m) {
  return balancing_pair_mod(n, m).first;
}

std::uint64_t balancing_mod_u64(SeqIndex n, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("modulus must be >= 1");
  return pair_mod_u64(n, m).first;
}

QuadInt alpha_power(SeqIndex n) { return pow(QuadInt(3, 2), n); }

std::strong_ordering cmp_with_alpha_power(const BigNat& x, SeqIndex n) {
  QuadInt diff = QuadInt(x, 0) - alpha_power(n);
  return ord_of(diff.sign());
}

std::size_t balancing_digits_estimate(SeqIndex m) {
  using u128 = unsigned __int128;
  u128 d = (u128(m) * kLog10AlphaHi) / 100000 + 2;
  if (d > ~std::size_t{0}) return ~std::size_t{0};
  return static_cast<std::size_t>(d);
}

BalancingCmp cmp_with_balancing_detail(const BigNat& x, SeqIndex m,
                                       const CmpBudget& budget,
                                       bool force_exact) {
  using u128 = unsigned __int128;
  if (sgn(x) < 0) {
    // B_m >= 0 always.
    return {std::strong_ordering::less, true, std::nullopt};
  }
  if (m < 2 || (force_exact && balancing_digits_estimate(m) <=
                                   budget.max_decimal_digits)) {
    BigNat bm = balancing(m);
    auto o = ord_of(cmp(x, bm));
    return {o, false, std::move(bm)};
  }
  if (force_exact)
    throw budget_error("exact comparison against B_" + std::to_string(m) +
                       " exceeds the digit budget");

  // Bit-length pre-filter: decides every x separated from the window
  // (alpha^{m-1}, alpha^m) by at least a power of two, at no big-int cost.
  if (sgn(x) == 0) return {std::strong_ordering::less, true, std::nullopt};
  const u128 L = mpz_sizeinbase(x.get_mpz_t(), 2);  // 2^{L-1} <= x < 2^L
  if (L * kLogScale <= u128(m - 1) * kLog2AlphaLo)
    return {std::strong_ordering::less, true, std::nullopt};
  if ((L - 1) * kLogScale >= u128(m) * kLog2AlphaHi)
    return {std::strong_ordering::greater, true, std::nullopt};

  if (balancing_digits_estimate(m) > budget.max_decimal_digits)
    throw budget_error("comparison against B_" + std::to_string(m) +
                       " is inseparable by bounds and exceeds the digit "
                       "budget");

  // Exact window test in Z[sqrt(2)]. alpha^{m-1} is irrational for m >= 2,
  // so a non-positive sign already implies strict x < B_m.
  QuadInt lo = alpha_power(m - 1);
  if ((QuadInt(x, 0) - lo).sign() <= 0)
    return {std::strong_ordering::less, true, std::nullopt};
  QuadInt hi = lo * QuadInt(3, 2);
  if ((QuadInt(x, 0) - hi).sign() >= 0)
    return {std::strong_ordering::greater, true, std::nullopt};

  BigNat bm = balancing(m);
  auto o = ord_of(cmp(x, bm));
  return {o, false, std::move(bm)};
}

std::strong_ordering cmp_with_balancing(const BigNat& x, SeqIndex m,
                                        const CmpBudget& budget) {
  return cmp_with_balancing_detail(x, m, budget).ordering;
}

}  // namespace balnum
