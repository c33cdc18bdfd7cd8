#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "balnum/arith.hpp"
#include "balnum/factor.hpp"
#include "balnum/factor_cache.hpp"
#include "balnum/seq.hpp"

namespace balnum {

// The claim catalog. Every entry is checked mechanically over configurable
// ranges; ids are stable external names (CLI, reports).
//
//   lem2.1.2  5^{n-1} < B_n < 6^{n-1}                 (n >= 3)
//   lem2.2    B_m | B_n  <=>  m | n
//   lem2.3    gcd(B_m, B_n) = B_{gcd(m,n)}
//   lem2.5    B_n has a primitive divisor             (n >= 2)
//   lem2.6    p | B_{p-1} if p = +-1 (8), else p | B_{p+1}
//   lem2.7    B_{n+1} - alpha*B_n = beta^n > 0        (so B_{n+1}/B_n > alpha)
//   cor2.8    B_n > alpha^{n-1}                       (n >= 2)
//   lem2.9    B_n < alpha^n                           (n >= 1)
//   lem2.10   B_{m+n} > B_m*B_n; B_{m-n}*B_n < B_m for m > n
//   lem2.11   B_{n^k} > B_n^k                         (n >= 2, k >= 2;
//             k = 1 degenerates to equality and is outside the domain)
//   lem2.12   totient/divisor clause bundle           (report-only)
//   lem2.13   phi(B_n) >= B_{phi(n)}, equality only at n = 1
//   lem2.14.1 p | B_n, n odd prime => p >= 2n-1, p = +-1 (mod n)
//   thm3.1    sigma_k(B_n) <= B_{sigma_k(n)}, equality only at n = 1
//   thm3.2    tau(B_n) > B_{floor(tau(n)/3)}
//   ineq3.7   tau(B_n) >= 2^{omega(B_n)} >= 2^{tau(n)} (n >= 2)
enum class ClaimId {
  Lem2_1_2,
  Lem2_2,
  Lem2_3,
  Lem2_5,
  Lem2_6,
  Lem2_7,
  Cor2_8,
  Lem2_9,
  Lem2_10,
  Lem2_11,
  Lem2_12,
  Lem2_13,
  Lem2_14p1,
  Thm3_1,
  Thm3_2,
  Ineq3_7,
};

constexpr std::size_t kClaimCount = 16;

std::string_view claim_name(ClaimId id);
std::optional<ClaimId> claim_from_name(std::string_view name);
std::vector<ClaimId> all_claims();

// Whether a Fails verdict for the claim is informational rather than a
// defect of the catalog (the totient bundle is known to fail at isolated n).
bool claim_report_only(ClaimId id);

enum class Verdict { Holds, Fails, EqualityCase, Skipped };
std::string_view verdict_name(Verdict v);

// One side of a checked comparison: an exact integer, a certified rational
// enclosure of the value, or a certified rational enclosure of its log base
// alpha (for quantities too large to materialize). None appears only on
// Skipped records.
struct Side {
  enum class Kind { None, Exact, Certified, CertifiedLog };
  Kind kind = Kind::None;
  BigInt value;             // Exact
  std::string describes;    // Certified*: what the bounds enclose
  mpq_class lo, hi;         // Certified*: outward rational bounds
};

// Margin semantics are per-claim but the sign convention is uniform: a
// nonnegative margin accompanies Holds / EqualityCase.
struct Margin {
  enum class Kind { None, Exact, Rational, LogAlpha };
  Kind kind = Kind::None;
  BigInt exact;
  mpq_class rational;  // Rational and LogAlpha
};

struct VerificationRecord {
  ClaimId claim = ClaimId::Lem2_1_2;
  // Name/value pairs (n, k, m, p, ...), kept sorted by name.
  std::vector<std::pair<std::string, BigInt>> inputs;
  Side lhs, rhs;
  Verdict verdict = Verdict::Skipped;
  Margin margin;
  std::string skip_reason;  // nonempty exactly for Skipped
};

bool record_less(const VerificationRecord& a, const VerificationRecord& b);

struct IndexRange {
  SeqIndex lo = 0;
  SeqIndex hi = 0;
};

struct SuiteConfig {
  std::vector<ClaimId> claims = all_claims();
  // Overrides for the per-claim default ranges; n_range also drives the
  // prime ranges of lem2.6 / lem2.14.1 and the sample of lem2.12.
  std::optional<IndexRange> n_range, k_range, m_range;
  FactorBudget budget;
  CmpBudget cmp_budget;
  unsigned jobs = 0;  // 0 = hardware concurrency
  bool strict = false;

  void validate() const;  // throws config_error
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<VerificationRecord> records;  // canonically ordered
  std::size_t holds = 0;
  std::size_t fails = 0;
  std::size_t equality_cases = 0;
  std::size_t skipped = 0;
  // Fails on claims that are not report-only; nonzero means the run found a
  // genuine counterexample.
  std::size_t hard_failures = 0;
};

// Runs every requested claim over its resolved ranges on a deterministic
// worker pool: results land in pre-assigned slots, then are sorted by
// (claim, inputs), so parallelism never changes the report.
SuiteReport run_suite(const SuiteConfig& config, FactorCache* cache = nullptr);

// Focused entry points used by the suite and directly by tests.
std::vector<VerificationRecord> verify_thm_3_1(IndexRange n_range,
                                               IndexRange k_range,
                                               const FactorBudget& budget = {},
                                               const CmpBudget& cmp = {},
                                               FactorCache* cache = nullptr);
std::vector<VerificationRecord> verify_thm_3_2(IndexRange n_range,
                                               const FactorBudget& budget = {},
                                               FactorCache* cache = nullptr);
std::vector<VerificationRecord> verify_lemma_2_13(
    IndexRange n_range, const FactorBudget& budget = {},
    const CmpBudget& cmp = {}, FactorCache* cache = nullptr);
std::vector<VerificationRecord> verify_growth_claims(IndexRange n_range,
                                                     IndexRange m_range,
                                                     IndexRange k_range);

}  // namespace balnum
