#pragma once

#include <chrono>
#include <cstdint>
#include <utility>
#include <vector>

#include "balnum/bignum.hpp"

namespace balnum {

struct FactorBudget {
  // Trial division by all primes up to this bound runs first.
  std::uint64_t trial_division_bound = 1'000'000;
  // Pollard-rho (Brent variant) iteration cap, per composite.
  std::uint64_t rho_iteration_cap = std::uint64_t{1} << 26;
  // Wall-clock cap for one factorize() call.
  std::chrono::milliseconds wall_clock_cap{60'000};
  // Seed for rho parameter choices; fixed so runs are reproducible.
  std::uint64_t rho_seed = 0x5EED;

  void validate() const;  // throws std::invalid_argument
};

enum class FactorStatus { Complete, Partial };

// Factor multiset plus an explicit unfactored cofactor. A Partial result is
// an ordinary value, not an error: every listed factor is a proven prime and
// factors times cofactor always reproduces the input.
struct Factorization {
  std::vector<std::pair<BigNat, unsigned>> factors;  // ascending primes
  BigNat cofactor = 1;
  FactorStatus status = FactorStatus::Complete;

  bool complete() const { return status == FactorStatus::Complete; }
  BigNat value() const;
};

// n >= 1. Trial division, perfect-power reduction, then Brent rho with
// batched gcds; deterministic for a fixed budget.
Factorization factorize(const BigNat& n, const FactorBudget& budget = {});

// Shared ascending prime table, sieved once per distinct bound.
const std::vector<std::uint32_t>& primes_upto(std::uint32_t bound);

}  // namespace balnum
