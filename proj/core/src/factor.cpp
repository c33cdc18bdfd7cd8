#include "balnum/factor.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "balnum/primality.hpp"

namespace balnum {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Clock = std::chrono::steady_clock;

u64 splitmix64(u64 x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

u64 mulmod(u64 x, u64 y, u64 m) { return (u128)x * y % m; }

// Brent's cycle-finding rho with gcd batching: products of 128 differences
// are accumulated before each gcd, with a backtracking pass when the batch
// collapses to n. Returns a proper factor, or nothing once the iteration
// budget or the deadline runs out. `used` counts f-evaluations across
// attempts and persists between calls for the same composite.
std::optional<u64> brent_rho_u64(u64 n, u64 seed, u64 cap, u64& used,
                                 Clock::time_point deadline) {
  for (u64 attempt = 0; used < cap; ++attempt) {
    if (Clock::now() > deadline) return std::nullopt;
    u64 h = splitmix64(seed ^ (attempt * 0x9E3779B97F4A7C15ull));
    u64 c = h % 1024 + 1;
    u64 y = splitmix64(h) % n;
    u64 g = 1, q = 1, r = 1;
    u64 x = 0, ys = 0;
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
      used += r;
      if (used > cap || Clock::now() > deadline) return std::nullopt;
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        const u64 lim = std::min<u64>(128, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = (mulmod(y, y, n) + c) % n;
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        used += lim;
        g = std::gcd(q, n);
        k += lim;
      }
      r <<= 1;
      if (used > cap) return std::nullopt;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (mulmod(ys, ys, n) + c) % n;
        ++used;
        u64 d = x > ys ? x - ys : ys - x;
        if (d == 0) break;
        g = std::gcd(d, n);
      }
    }
    if (g != n && g != 1) return g;
  }
  return std::nullopt;
}

std::optional<mpz_class> brent_rho_mpz(const mpz_class& n, u64 seed, u64 cap,
                                       u64& used, Clock::time_point deadline) {
  mpz_class x, y, ys, q, g, diff;
  for (u64 attempt = 0; used < cap; ++attempt) {
    if (Clock::now() > deadline) return std::nullopt;
    u64 h = splitmix64(seed ^ (attempt * 0x9E3779B97F4A7C15ull));
    mpz_class c(static_cast<unsigned long>(h % 1024 + 1));
    y = mpz_class(static_cast<unsigned long>(splitmix64(h))) % n;
    g = 1;
    q = 1;
    u64 r = 1;
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = (y * y + c) % n;
      used += r;
      if (used > cap || Clock::now() > deadline) return std::nullopt;
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        const u64 lim = std::min<u64>(128, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          diff = x - y;
          q = (q * abs(diff)) % n;
        }
        used += lim;
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += lim;
      }
      r <<= 1;
      if (used > cap) return std::nullopt;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        ++used;
        diff = abs(x - ys);
        if (diff == 0) break;
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (g != n && g != 1) return g;
  }
  return std::nullopt;
}

}  // namespace

void FactorBudget::validate() const {
  if (trial_division_bound < 2)
    throw std::invalid_argument("trial division bound must be >= 2");
  if (rho_iteration_cap == 0)
    throw std::invalid_argument("rho iteration cap must be positive");
  if (wall_clock_cap.count() <= 0)
    throw std::invalid_argument("wall clock cap must be positive");
}

BigNat Factorization::value() const {
  BigNat v = cofactor;
  for (const auto& [p, e] : factors) v *= pow_ui(p, e);
  return v;
}

const std::vector<std::uint32_t>& primes_upto(std::uint32_t bound) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::vector<std::uint32_t>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(bound);
  if (it != cache.end()) return it->second;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  std::vector<std::uint32_t> ps;
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    ps.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return cache.emplace(bound, std::move(ps)).first->second;
}

Factorization factorize(const BigNat& n, const FactorBudget& budget) {
  budget.validate();
  if (n < 1) throw std::invalid_argument("factorize requires n >= 1");

  Factorization out;
  if (n == 1) return out;

  const auto deadline = Clock::now() + budget.wall_clock_cap;
  std::map<BigNat, unsigned> found;
  mpz_class rem = n;

  const std::uint32_t tb = static_cast<std::uint32_t>(
      std::min<u64>(budget.trial_division_bound, 0xFFFFFFFFull));
  for (std::uint32_t p : primes_upto(tb)) {
    if (mpz_cmp_ui(rem.get_mpz_t(), 1) == 0) break;
    if (mpz_cmp_ui(rem.get_mpz_t(), (unsigned long)p * p) < 0) break;
    while (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
      mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
      ++found[BigNat(p)];
    }
  }
  if (rem > 1 && rem < (u64)tb * tb) {
    // Survived trial division below its square root: prime.
    ++found[rem];
    rem = 1;
  }

  // Work list of composites with multiplicities; rho splits feed back in.
  std::vector<std::pair<mpz_class, unsigned>> work;
  if (rem > 1) work.emplace_back(rem, 1);

  bool partial = false;
  mpz_class cof = 1;
  while (!work.empty()) {
    auto [m, mult] = std::move(work.back());
    work.pop_back();

    if (is_prime(m)) {
      found[m] += mult;
      continue;
    }
    if (Clock::now() > deadline) {
      for (unsigned i = 0; i < mult; ++i) cof *= m;
      partial = true;
      continue;
    }
    if (mpz_perfect_power_p(m.get_mpz_t())) {
      mpz_class root;
      bool reduced = false;
      for (unsigned long e = 2; e <= mpz_sizeinbase(m.get_mpz_t(), 2); ++e) {
        if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), e)) {
          work.emplace_back(root, mult * static_cast<unsigned>(e));
          reduced = true;
          break;
        }
      }
      if (reduced) continue;
    }

    u64 used = 0;
    std::optional<mpz_class> d;
    if (m.fits_ulong_p()) {
      auto f = brent_rho_u64(mpz_get_ui(m.get_mpz_t()), budget.rho_seed,
                             budget.rho_iteration_cap, used, deadline);
      if (f) d = mpz_class(static_cast<unsigned long>(*f));
    } else {
      d = brent_rho_mpz(m, budget.rho_seed, budget.rho_iteration_cap, used,
                        deadline);
    }
    if (d) {
      work.emplace_back(m / *d, mult);
      work.emplace_back(std::move(*d), mult);
    } else {
      for (unsigned i = 0; i < mult; ++i) cof *= m;
      partial = true;
    }
  }

  out.factors.assign(found.begin(), found.end());
  out.cofactor = std::move(cof);
  out.status = partial ? FactorStatus::Partial : FactorStatus::Complete;
  return out;
}

}  // namespace balnum
