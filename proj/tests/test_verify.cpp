#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>

#include "balnum/errors.hpp"
#include "balnum/verify.hpp"

using namespace balnum;

namespace {

std::size_t count_verdict(const std::vector<VerificationRecord>& rs,
                          Verdict v) {
  return std::count_if(rs.begin(), rs.end(),
                       [v](const auto& r) { return r.verdict == v; });
}

const BigInt* input(const VerificationRecord& r, const std::string& name) {
  for (const auto& [k, v] : r.inputs)
    if (k == name) return &v;
  return nullptr;
}

bool same_records(const std::vector<VerificationRecord>& a,
                  const std::vector<VerificationRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    if (x.claim != y.claim || x.verdict != y.verdict ||
        x.inputs != y.inputs || x.skip_reason != y.skip_reason)
      return false;
    if (x.lhs.kind != y.lhs.kind || x.lhs.value != y.lhs.value ||
        x.lhs.describes != y.lhs.describes || x.lhs.lo != y.lhs.lo ||
        x.lhs.hi != y.lhs.hi)
      return false;
    if (x.rhs.kind != y.rhs.kind || x.rhs.value != y.rhs.value ||
        x.rhs.describes != y.rhs.describes || x.rhs.lo != y.rhs.lo ||
        x.rhs.hi != y.rhs.hi)
      return false;
    if (x.margin.kind != y.margin.kind || x.margin.exact != y.margin.exact ||
        x.margin.rational != y.margin.rational)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("claim names round-trip") {
  CHECK(all_claims().size() == kClaimCount);
  for (ClaimId c : all_claims()) {
    auto back = claim_from_name(claim_name(c));
    REQUIRE(back.has_value());
    CHECK(*back == c);
  }
  CHECK(claim_name(ClaimId::Thm3_1) == "thm3.1");
  CHECK(claim_name(ClaimId::Lem2_14p1) == "lem2.14.1");
  CHECK_FALSE(claim_from_name("thm9.9").has_value());
  CHECK(claim_report_only(ClaimId::Lem2_12));
  CHECK_FALSE(claim_report_only(ClaimId::Thm3_1));
}

TEST_CASE("theorem 3.1 over the documented example grid") {
  auto rs = verify_thm_3_1({1, 10}, {1, 2});
  CHECK(rs.size() == 20);
  CHECK(count_verdict(rs, Verdict::Holds) == 18);
  CHECK(count_verdict(rs, Verdict::EqualityCase) == 2);
  CHECK(count_verdict(rs, Verdict::Fails) == 0);
  CHECK(count_verdict(rs, Verdict::Skipped) == 0);
  for (const auto& r : rs) {
    const BigInt* n = input(r, "n");
    REQUIRE(n != nullptr);
    if (r.verdict == Verdict::EqualityCase) CHECK(*n == 1);
    if (*n == 1) CHECK(r.verdict == Verdict::EqualityCase);
  }
  CHECK(std::is_sorted(rs.begin(), rs.end(), record_less));
}

TEST_CASE("theorem 3.1 rejects k = 0") {
  CHECK_THROWS_AS(verify_thm_3_1({1, 5}, {0, 2}), config_error);
}

TEST_CASE("theorem 3.2 at n = 1 is the trivial strict win") {
  auto rs = verify_thm_3_2({1, 1});
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].verdict == Verdict::Holds);
  CHECK(rs[0].lhs.value == 1);  // tau(B_1) = tau(1) = 1
  CHECK(rs[0].rhs.value == 0);  // B_{floor(1/3)} = B_0 = 0
  CHECK(rs[0].margin.exact == 1);
}

TEST_CASE("theorem 3.2 chain stays strict over 1..30") {
  auto rs = verify_thm_3_2({1, 30});
  CHECK(rs.size() == 30);
  CHECK(count_verdict(rs, Verdict::Holds) == 30);
}

TEST_CASE("lemma 2.13 equality exactly at n = 1") {
  auto rs = verify_lemma_2_13({1, 25});
  CHECK(rs.size() == 25);
  CHECK(count_verdict(rs, Verdict::Fails) == 0);
  CHECK(count_verdict(rs, Verdict::EqualityCase) == 1);
  CHECK(rs[0].verdict == Verdict::EqualityCase);
  CHECK(*input(rs[0], "n") == 1);
}

TEST_CASE("growth claims produce only exact sides and no failures") {
  auto rs = verify_growth_claims({1, 60}, {1, 30}, {1, 3});
  CHECK(count_verdict(rs, Verdict::Fails) == 0);
  CHECK(count_verdict(rs, Verdict::Skipped) == 0);
  CHECK(!rs.empty());
  for (const auto& r : rs) {
    CHECK(r.lhs.kind != Side::Kind::None);
    if (r.margin.kind == Margin::Kind::Exact) CHECK(r.margin.exact >= 0);
  }
}

TEST_CASE("certified-bound path agrees with the exact path") {
  // A digit budget too small for B_{sigma_k(n)} pushes thm3.1 onto the
  // certified log comparison; verdicts must not change.
  CmpBudget tight;
  tight.max_decimal_digits = 40;
  auto certified = verify_thm_3_1({2, 12}, {2, 2}, FactorBudget{}, tight);
  auto exact = verify_thm_3_1({2, 12}, {2, 2});
  REQUIRE(certified.size() == exact.size());
  bool saw_certified = false;
  for (std::size_t i = 0; i < certified.size(); ++i) {
    CHECK(certified[i].verdict == exact[i].verdict);
    if (certified[i].rhs.kind == Side::Kind::CertifiedLog) {
      saw_certified = true;
      CHECK(certified[i].margin.kind == Margin::Kind::LogAlpha);
      CHECK(certified[i].margin.rational > 0);
    }
  }
  CHECK(saw_certified);
}

TEST_CASE("suite runs are independent of the job count") {
  SuiteConfig one;
  one.claims = {ClaimId::Thm3_1, ClaimId::Lem2_13, ClaimId::Ineq3_7,
                ClaimId::Lem2_2};
  one.n_range = IndexRange{1, 16};
  one.k_range = IndexRange{1, 2};
  one.m_range = IndexRange{1, 8};
  one.jobs = 1;
  SuiteConfig four = one;
  four.jobs = 4;

  auto r1 = run_suite(one);
  auto r4 = run_suite(four);
  CHECK(same_records(r1.records, r4.records));
  CHECK(r1.holds == r4.holds);
  CHECK(r1.fails == r4.fails);
  CHECK(r1.equality_cases == r4.equality_cases);
  CHECK(r1.skipped == r4.skipped);
  CHECK(r1.hard_failures == r4.hard_failures);
}

TEST_CASE("suite normalizes duplicate claims") {
  SuiteConfig cfg;
  cfg.claims = {ClaimId::Thm3_2, ClaimId::Thm3_2, ClaimId::Thm3_2};
  cfg.n_range = IndexRange{1, 10};
  cfg.jobs = 2;
  auto rep = run_suite(cfg);
  CHECK(rep.records.size() == 10);
  CHECK(rep.config.claims.size() == 1);
}

TEST_CASE("empty claim list gives an empty report") {
  SuiteConfig cfg;
  cfg.claims = {};
  auto rep = run_suite(cfg);
  CHECK(rep.records.empty());
  CHECK(rep.holds == 0);
  CHECK(rep.hard_failures == 0);
}

TEST_CASE("configuration validation") {
  SuiteConfig cfg;
  cfg.n_range = IndexRange{5, 2};
  CHECK_THROWS_AS(run_suite(cfg), config_error);

  SuiteConfig kzero;
  kzero.claims = {ClaimId::Thm3_1};
  kzero.k_range = IndexRange{0, 2};
  CHECK_THROWS_AS(run_suite(kzero), config_error);

  // k = 0 is fine when thm3.1 is not selected.
  SuiteConfig kzero_ok;
  kzero_ok.claims = {ClaimId::Lem2_12};
  kzero_ok.k_range = IndexRange{0, 1};
  kzero_ok.n_range = IndexRange{2, 12};
  CHECK_NOTHROW(run_suite(kzero_ok));

  SuiteConfig no_digits;
  no_digits.cmp_budget.max_decimal_digits = 0;
  CHECK_THROWS_AS(run_suite(no_digits), config_error);

  SuiteConfig bad_budget;
  bad_budget.budget.rho_iteration_cap = 0;
  CHECK_THROWS_AS(run_suite(bad_budget), config_error);

  SuiteConfig cap;
  cap.claims = {ClaimId::Lem2_6};
  cap.n_range = IndexRange{3, 200'000'000};
  CHECK_THROWS_AS(run_suite(cap), config_error);
}

TEST_CASE("out-of-domain ranges produce no records, not failures") {
  SuiteConfig cfg;
  cfg.claims = {ClaimId::Ineq3_7};  // domain starts at n = 2
  cfg.n_range = IndexRange{1, 1};
  auto rep = run_suite(cfg);
  CHECK(rep.records.empty());

  SuiteConfig c2;
  c2.claims = {ClaimId::Lem2_1_2};  // domain starts at n = 3
  c2.n_range = IndexRange{1, 2};
  CHECK(run_suite(c2).records.empty());
}

TEST_CASE("the totient bundle fails softly inside the suite") {
  SuiteConfig cfg;
  cfg.claims = {ClaimId::Lem2_12};
  cfg.n_range = IndexRange{223092870, 223092870};
  cfg.k_range = IndexRange{1, 1};
  auto rep = run_suite(cfg);
  REQUIRE(rep.records.size() == 4);
  CHECK(rep.fails == 1);
  CHECK(rep.hard_failures == 0);
  CHECK(rep.holds == 3);
  const auto& failing = rep.records[0];
  CHECK(failing.claim == ClaimId::Lem2_12);
  CHECK(*input(failing, "clause") == 2);
  CHECK(failing.verdict == Verdict::Fails);
  CHECK(failing.lhs.value == BigInt("218972160"));   // 6*phi
  CHECK(failing.rhs.value == BigInt("223092870"));
}

TEST_CASE("default full suite holds everywhere outside report-only claims") {
  SuiteConfig cfg;
  cfg.claims = {ClaimId::Lem2_1_2, ClaimId::Lem2_5, ClaimId::Lem2_7,
                ClaimId::Cor2_8,   ClaimId::Lem2_9, ClaimId::Lem2_11,
                ClaimId::Thm3_2,   ClaimId::Ineq3_7};
  cfg.n_range = IndexRange{1, 25};
  cfg.k_range = IndexRange{1, 2};
  auto rep = run_suite(cfg);
  CHECK(rep.hard_failures == 0);
  CHECK(rep.fails == 0);
  CHECK(rep.skipped == 0);
  CHECK(rep.holds == rep.records.size());
}

TEST_CASE("skips count separately and carry reasons") {
  FactorBudget starved;
  starved.trial_division_bound = 2;
  starved.rho_iteration_cap = 1;
  SuiteConfig cfg;
  cfg.claims = {ClaimId::Thm3_2};
  cfg.n_range = IndexRange{37, 37};  // B_37 cannot factor under this budget
  cfg.budget = starved;
  auto rep = run_suite(cfg);
  REQUIRE(rep.records.size() == 1);
  CHECK(rep.records[0].verdict == Verdict::Skipped);
  CHECK_FALSE(rep.records[0].skip_reason.empty());
  CHECK(rep.skipped == 1);
  CHECK(rep.hard_failures == 0);
}

TEST_CASE("shared cache reuses factorizations across claims") {
  FactorCache cache;
  SuiteConfig cfg;
  cfg.claims = {ClaimId::Thm3_2, ClaimId::Ineq3_7, ClaimId::Lem2_5};
  cfg.n_range = IndexRange{2, 20};
  auto rep1 = run_suite(cfg, &cache);
  CHECK(rep1.hard_failures == 0);
  auto snap = cache.snapshot();
  CHECK(snap.size() == 19);
  auto rep2 = run_suite(cfg, &cache);
  CHECK(same_records(rep1.records, rep2.records));
}
