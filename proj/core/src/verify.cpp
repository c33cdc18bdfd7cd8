#include "balnum/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <functional>
#include <memory>
#include <numeric>
#include <thread>

#include "balnum/certified.hpp"
#include "balnum/divisibility.hpp"
#include "balnum/errors.hpp"
#include "balnum/primality.hpp"

namespace balnum {

namespace {

struct ClaimMeta {
  ClaimId id;
  const char* name;
  bool report_only;
};

constexpr std::array<ClaimMeta, kClaimCount> kMeta = {{
    {ClaimId::Lem2_1_2, "lem2.1.2", false},
    {ClaimId::Lem2_2, "lem2.2", false},
    {ClaimId::Lem2_3, "lem2.3", false},
    {ClaimId::Lem2_5, "lem2.5", false},
    {ClaimId::Lem2_6, "lem2.6", false},
    {ClaimId::Lem2_7, "lem2.7", false},
    {ClaimId::Cor2_8, "cor2.8", false},
    {ClaimId::Lem2_9, "lem2.9", false},
    {ClaimId::Lem2_10, "lem2.10", false},
    {ClaimId::Lem2_11, "lem2.11", false},
    {ClaimId::Lem2_12, "lem2.12", true},
    {ClaimId::Lem2_13, "lem2.13", false},
    {ClaimId::Lem2_14p1, "lem2.14.1", false},
    {ClaimId::Thm3_1, "thm3.1", false},
    {ClaimId::Thm3_2, "thm3.2", false},
    {ClaimId::Ineq3_7, "ineq3.7", false},
}};

using Inputs = std::vector<std::pair<std::string, BigInt>>;
using Records = std::vector<VerificationRecord>;

Side exact_side(BigInt v) {
  Side s;
  s.kind = Side::Kind::Exact;
  s.value = std::move(v);
  return s;
}

Side certified_side(std::string what, mpq_class lo, mpq_class hi) {
  Side s;
  s.kind = Side::Kind::Certified;
  s.describes = std::move(what);
  s.lo = std::move(lo);
  s.hi = std::move(hi);
  return s;
}

Side certified_log_side(std::string what, mpq_class lo, mpq_class hi) {
  Side s;
  s.kind = Side::Kind::CertifiedLog;
  s.describes = std::move(what);
  s.lo = std::move(lo);
  s.hi = std::move(hi);
  return s;
}

Margin exact_margin(BigInt v) {
  Margin m;
  m.kind = Margin::Kind::Exact;
  m.exact = std::move(v);
  return m;
}

Margin rational_margin(mpq_class v) {
  Margin m;
  m.kind = Margin::Kind::Rational;
  m.rational = std::move(v);
  return m;
}

Margin log_margin(mpq_class v) {
  Margin m;
  m.kind = Margin::Kind::LogAlpha;
  m.rational = std::move(v);
  return m;
}

VerificationRecord make_record(ClaimId claim, Inputs inputs, Side lhs,
                               Side rhs, Verdict verdict, Margin margin,
                               std::string skip_reason = {}) {
  VerificationRecord r;
  r.claim = claim;
  std::sort(inputs.begin(), inputs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  r.inputs = std::move(inputs);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.verdict = verdict;
  r.margin = std::move(margin);
  r.skip_reason = std::move(skip_reason);
  return r;
}

VerificationRecord skipped_record(ClaimId claim, Inputs inputs,
                                  std::string reason) {
  return make_record(claim, std::move(inputs), Side{}, Side{},
                     Verdict::Skipped, Margin{}, std::move(reason));
}

Verdict strict_verdict(bool holds) {
  return holds ? Verdict::Holds : Verdict::Fails;
}

// Verdict for claims that are non-strict with equality permitted only at
// n = 1 (thm3.1, lem2.13): equality anywhere else contradicts the claim.
Verdict bounded_verdict(std::strong_ordering good_side,
                        std::strong_ordering got, SeqIndex n) {
  if (got == good_side) return Verdict::Holds;
  if (got == std::strong_ordering::equal)
    return n == 1 ? Verdict::EqualityCase : Verdict::Fails;
  return Verdict::Fails;
}

// Shared (B_i, C_i) prefix table for the small-index claims.
using PairTable = std::vector<std::pair<BigNat, BigNat>>;

std::shared_ptr<const PairTable> build_pair_table(SeqIndex upto) {
  auto t = std::make_shared<PairTable>();
  t->reserve(upto + 1);
  BigNat B = 0, C = 1;
  for (SeqIndex i = 0; i <= upto; ++i) {
    t->push_back({B, C});
    BigNat nb = 3 * B + C;
    BigNat nc = 8 * B + 3 * C;
    B = std::move(nb);
    C = std::move(nc);
  }
  return t;
}

// floor(2*sqrt(2)*b) for b >= 0, i.e. isqrt(8*b^2).
BigNat floor_2sqrt2(const BigNat& b) {
  BigNat t = 8 * b * b;
  mpz_sqrt(t.get_mpz_t(), t.get_mpz_t());
  return t;
}

// ---- per-claim record builders -------------------------------------------

Records lem2_1_2_records(SeqIndex n, const PairTable& tbl) {
  Records out;
  const BigNat& B = tbl[n].first;
  BigNat lo = ui_pow_ui(5, static_cast<unsigned long>(n - 1));
  BigNat hi = ui_pow_ui(6, static_cast<unsigned long>(n - 1));
  out.push_back(make_record(
      ClaimId::Lem2_1_2, {{"base", 5}, {"n", BigInt(n)}}, exact_side(lo),
      exact_side(B), strict_verdict(lo < B), exact_margin(B - lo)));
  out.push_back(make_record(
      ClaimId::Lem2_1_2, {{"base", 6}, {"n", BigInt(n)}}, exact_side(B),
      exact_side(hi), strict_verdict(B < hi), exact_margin(hi - B)));
  return out;
}

Records lem2_2_records(SeqIndex m, IndexRange n_range, const PairTable& tbl) {
  Records out;
  const BigNat& Bm = tbl[m].first;
  for (SeqIndex n = n_range.lo; n <= n_range.hi; ++n) {
    const bool index_div = (n % m == 0);
    BigNat rem = tbl[n].first % Bm;
    const bool value_div = rem == 0;
    out.push_back(make_record(
        ClaimId::Lem2_2, {{"m", BigInt(m)}, {"n", BigInt(n)}},
        exact_side(rem), exact_side(BigInt(n % m)),
        strict_verdict(index_div == value_div), Margin{}));
  }
  return out;
}

Records lem2_3_records(SeqIndex m, IndexRange n_range, const PairTable& tbl) {
  Records out;
  for (SeqIndex n = n_range.lo; n <= n_range.hi; ++n) {
    BigNat g;
    mpz_gcd(g.get_mpz_t(), tbl[m].first.get_mpz_t(),
            tbl[n].first.get_mpz_t());
    const BigNat& expect = tbl[std::gcd(m, n)].first;
    out.push_back(make_record(
        ClaimId::Lem2_3, {{"m", BigInt(m)}, {"n", BigInt(n)}}, exact_side(g),
        exact_side(expect), strict_verdict(g == expect),
        exact_margin(g - expect)));
  }
  return out;
}

Records lem2_5_records(SeqIndex n, const FactorBudget& budget,
                       FactorCache& cache) {
  Inputs in{{"n", BigInt(n)}};
  Factorization f = cache.get_or_compute(n, budget);
  auto rep = primitive_divisors_from(n, f);
  const BigInt count(static_cast<unsigned long>(rep.primitive.size()));
  if (!rep.primitive.empty()) {
    return {make_record(ClaimId::Lem2_5, std::move(in), exact_side(count),
                        exact_side(1), Verdict::Holds,
                        exact_margin(count - 1))};
  }
  if (!rep.complete) {
    return {skipped_record(ClaimId::Lem2_5, std::move(in),
                           "factorization of B_n incomplete within budget")};
  }
  return {make_record(ClaimId::Lem2_5, std::move(in), exact_side(count),
                      exact_side(1), Verdict::Fails, exact_margin(-1))};
}

Records lem2_6_records(std::uint64_t p) {
  auto res = check_lemma_2_6(BigNat(static_cast<unsigned long>(p)));
  BigNat rem = balancing_mod(res.index, BigNat(static_cast<unsigned long>(p)));
  return {make_record(
      ClaimId::Lem2_6,
      {{"index", BigInt(res.index)}, {"p", BigInt(static_cast<unsigned long>(p))}},
      exact_side(rem), exact_side(0), strict_verdict(res.holds), Margin{})};
}

Records lem2_7_records(SeqIndex n, const PairTable& tbl) {
  const BigNat& Bn = tbl[n].first;
  const BigNat& Bn1 = tbl[n + 1].first;
  QuadInt diff = QuadInt(Bn1, 0) - QuadInt(3, 2) * QuadInt(Bn, 0);
  const bool holds =
      diff == alpha_power(n).conjugate() && diff.sign() > 0;
  // ceil(alpha*B_n) = 3*B_n + floor(2*sqrt(2)*B_n) + 1 for n >= 1.
  BigNat ceil_alpha_bn = 3 * Bn + floor_2sqrt2(Bn) + 1;
  mpq_class lo = n == 1 ? mpq_class(1) : mpq_class(n);
  mpq_class hi = n == 1 ? mpq_class(1) : mpq_class(n) + 1;
  return {make_record(ClaimId::Lem2_7, {{"n", BigInt(n)}}, exact_side(Bn1),
                      certified_log_side("alpha*B_" + std::to_string(n),
                                         std::move(lo), std::move(hi)),
                      strict_verdict(holds),
                      exact_margin(Bn1 - ceil_alpha_bn))};
}

Records cor2_8_records(SeqIndex n, const PairTable& tbl) {
  const BigNat& Bn = tbl[n].first;
  const bool holds =
      cmp_with_alpha_power(Bn, n - 1) == std::strong_ordering::greater;
  // ceil(alpha^{n-1}) = 2*C_{n-1} for n >= 2.
  BigNat ceil_pow = 2 * tbl[n - 1].second;
  return {make_record(ClaimId::Cor2_8, {{"n", BigInt(n)}}, exact_side(Bn),
                      certified_log_side("alpha^" + std::to_string(n - 1),
                                         mpq_class(n) - 1, mpq_class(n) - 1),
                      strict_verdict(holds), exact_margin(Bn - ceil_pow))};
}

Records lem2_9_records(SeqIndex n, const PairTable& tbl) {
  const BigNat& Bn = tbl[n].first;
  const bool holds =
      cmp_with_alpha_power(Bn, n) == std::strong_ordering::less;
  // floor(alpha^n) = 2*C_n - 1 for n >= 1.
  BigNat floor_pow = 2 * tbl[n].second - 1;
  return {make_record(ClaimId::Lem2_9, {{"n", BigInt(n)}}, exact_side(Bn),
                      certified_log_side("alpha^" + std::to_string(n),
                                         mpq_class(n), mpq_class(n)),
                      strict_verdict(holds), exact_margin(floor_pow - Bn))};
}

Records lem2_10_records(SeqIndex m, IndexRange n_range, const PairTable& tbl) {
  Records out;
  for (SeqIndex n = n_range.lo; n <= n_range.hi; ++n) {
    BigNat prod = tbl[m].first * tbl[n].first;
    const BigNat& sum = tbl[m + n].first;
    out.push_back(make_record(
        ClaimId::Lem2_10, {{"m", BigInt(m)}, {"n", BigInt(n)}, {"part", 1}},
        exact_side(prod), exact_side(sum), strict_verdict(prod < sum),
        exact_margin(sum - prod)));
    if (m > n) {
      BigNat lhs = tbl[m - n].first * tbl[n].first;
      const BigNat& Bm = tbl[m].first;
      out.push_back(make_record(
          ClaimId::Lem2_10, {{"m", BigInt(m)}, {"n", BigInt(n)}, {"part", 2}},
          exact_side(lhs), exact_side(Bm), strict_verdict(lhs < Bm),
          exact_margin(Bm - lhs)));
    }
  }
  return out;
}

Records lem2_11_records(SeqIndex n, SeqIndex k) {
  BigNat base = balancing(n);
  BigNat lhs = pow_ui(base, static_cast<unsigned long>(k));
  std::uint64_t nk = 1;
  for (SeqIndex i = 0; i < k; ++i) nk *= n;
  BigNat rhs = balancing(nk);
  return {make_record(ClaimId::Lem2_11, {{"k", BigInt(k)}, {"n", BigInt(n)}},
                      exact_side(lhs), exact_side(rhs),
                      strict_verdict(lhs < rhs), exact_margin(rhs - lhs))};
}

Records lem2_12_records(const BigNat& n, IndexRange k_range,
                        const FactorBudget& budget) {
  Inputs base_in{{"n", n}};
  Factorization f = factorize(n, budget);
  if (!f.complete()) {
    return {skipped_record(ClaimId::Lem2_12, std::move(base_in),
                           "n did not factor within budget")};
  }
  Records out;
  const BigNat phi = euler_phi(f);

  auto clause_inputs = [&n](int clause) {
    return Inputs{{"clause", clause}, {"n", n}};
  };
  auto clause_inputs_k = [&n](int clause, SeqIndex k) {
    return Inputs{{"clause", clause}, {"k", BigInt(k)}, {"n", n}};
  };

  bool first_k = true;
  for (SeqIndex k = k_range.lo; k <= k_range.hi; ++k) {
    auto clauses =
        check_lemma_2_12_from(n, static_cast<unsigned>(k), f);
    for (const auto& c : clauses) {
      // The k-independent clauses repeat identically for every k; emit once.
      if ((c.clause == 1 || c.clause == 2 || c.clause == 4) && !first_k)
        continue;
      switch (c.clause) {
        case 1: {
          auto [lo, hi] = n_over_log_bounds(n);
          out.push_back(make_record(
              ClaimId::Lem2_12, clause_inputs(1), exact_side(phi),
              certified_side("n/log(n)", lo, hi),
              strict_verdict(c.holds), rational_margin(c.margin)));
          break;
        }
        case 2:
          out.push_back(make_record(
              ClaimId::Lem2_12, clause_inputs(2), exact_side(6 * phi),
              exact_side(n), strict_verdict(c.holds),
              exact_margin(c.margin.get_num())));
          break;
        case 3: {
          BigNat sk = sigma_k(f, static_cast<unsigned>(k));
          out.push_back(make_record(
              ClaimId::Lem2_12, clause_inputs_k(3, k),
              exact_side(pow_ui(n, static_cast<unsigned long>(k) + 1)),
              exact_side(sk * phi), strict_verdict(c.holds),
              exact_margin(c.margin.get_num())));
          break;
        }
        case 4: {
          BigNat s;
          mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
          out.push_back(make_record(
              ClaimId::Lem2_12, clause_inputs(4), exact_side(n - phi),
              certified_side("sqrt(n)", mpq_class(s), mpq_class(s + 1)),
              strict_verdict(c.holds), exact_margin(c.margin.get_num())));
          break;
        }
        case 5: {
          BigNat nk = pow_ui(n, static_cast<unsigned long>(k));
          BigNat sk = sigma_k(f, static_cast<unsigned>(k));
          BigNat s;
          mpz_sqrt(s.get_mpz_t(), nk.get_mpz_t());
          out.push_back(make_record(
              ClaimId::Lem2_12, clause_inputs_k(5, k), exact_side(sk - nk),
              certified_side("sqrt(n^k)", mpq_class(s), mpq_class(s + 1)),
              strict_verdict(c.holds), exact_margin(c.margin.get_num())));
          break;
        }
        default:
          break;
      }
    }
    first_k = false;
  }
  return out;
}

Records lem2_13_records(SeqIndex n, const FactorBudget& budget,
                        const CmpBudget& cmp, FactorCache& cache) {
  Inputs in{{"n", BigInt(n)}};
  Factorization f = cache.get_or_compute(n, budget);
  if (!f.complete()) {
    return {skipped_record(ClaimId::Lem2_13, std::move(in),
                           "factorization of B_n incomplete within budget")};
  }
  const BigNat phi_bn = euler_phi(f);
  Factorization nf = factorize(BigNat(static_cast<unsigned long>(n)), budget);
  if (!nf.complete()) {
    return {skipped_record(ClaimId::Lem2_13, std::move(in),
                           "n did not factor within budget")};
  }
  const BigNat phi_n = euler_phi(nf);
  const SeqIndex idx = to_u64(phi_n);

  BalancingCmp det;
  try {
    det = cmp_with_balancing_detail(phi_bn, idx, cmp);
  } catch (const budget_error& e) {
    return {skipped_record(ClaimId::Lem2_13, std::move(in), e.what())};
  }
  const Verdict v =
      bounded_verdict(std::strong_ordering::greater, det.ordering, n);
  Side rhs;
  Margin margin;
  if (det.balancing_value) {
    rhs = exact_side(*det.balancing_value);
    margin = exact_margin(phi_bn - *det.balancing_value);
  } else {
    rhs = certified_log_side("B_" + std::to_string(idx),
                             mpq_class(idx) - 1, mpq_class(idx));
    auto [lo2, hi2] = log_alpha_bounds(phi_bn);
    margin = det.ordering == std::strong_ordering::greater
                 ? log_margin(lo2 - mpq_class(idx))
                 : log_margin(hi2 - (mpq_class(idx) - 1));
  }
  return {make_record(ClaimId::Lem2_13, std::move(in), exact_side(phi_bn),
                      std::move(rhs), v, std::move(margin))};
}

Records lem2_14_records(SeqIndex n, const FactorBudget& budget,
                        FactorCache& cache) {
  Factorization f = cache.get_or_compute(n, budget);
  auto rep = check_lemma_2_14_part1_from(n, f);
  Records out;
  for (const auto& row : rep.rows) {
    out.push_back(make_record(
        ClaimId::Lem2_14p1,
        {{"n", BigInt(n)}, {"p", row.prime}, {"residue", row.residue}},
        exact_side(row.prime), exact_side(BigInt(2 * n - 1)),
        strict_verdict(row.residue_ok && row.lower_bound_ok),
        exact_margin(row.prime - BigInt(2 * n - 1))));
  }
  if (!rep.complete) {
    out.push_back(skipped_record(
        ClaimId::Lem2_14p1, {{"cofactor", rep.cofactor}, {"n", BigInt(n)}},
        "cofactor of B_n unfactored within budget"));
  }
  return out;
}

Records thm3_1_records(SeqIndex n, SeqIndex k, const FactorBudget& budget,
                       const CmpBudget& cmp, FactorCache& cache) {
  Inputs in{{"k", BigInt(k)}, {"n", BigInt(n)}};
  Factorization f = cache.get_or_compute(n, budget);
  if (!f.complete()) {
    return {skipped_record(ClaimId::Thm3_1, std::move(in),
                           "factorization of B_n incomplete within budget")};
  }
  const BigNat s = sigma_k(f, static_cast<unsigned>(k));
  Factorization nf = factorize(BigNat(static_cast<unsigned long>(n)), budget);
  if (!nf.complete()) {
    return {skipped_record(ClaimId::Thm3_1, std::move(in),
                           "n did not factor within budget")};
  }
  const BigNat t = sigma_k(nf, static_cast<unsigned>(k));
  if (!fits_u64(t)) {
    return {skipped_record(ClaimId::Thm3_1, std::move(in),
                           "sigma_k(n) exceeds the index range")};
  }
  const SeqIndex idx = to_u64(t);

  BalancingCmp det;
  try {
    det = cmp_with_balancing_detail(s, idx, cmp);
  } catch (const budget_error& e) {
    return {skipped_record(ClaimId::Thm3_1, std::move(in), e.what())};
  }
  const Verdict v =
      bounded_verdict(std::strong_ordering::less, det.ordering, n);
  Side rhs;
  Margin margin;
  if (det.balancing_value) {
    rhs = exact_side(*det.balancing_value);
    margin = exact_margin(*det.balancing_value - s);
  } else {
    rhs = certified_log_side("B_" + std::to_string(idx),
                             mpq_class(idx) - 1, mpq_class(idx));
    auto [lo2, hi2] = log_alpha_bounds(s);
    margin = det.ordering == std::strong_ordering::less
                 ? log_margin((mpq_class(idx) - 1) - hi2)
                 : log_margin(lo2 - mpq_class(idx));
  }
  return {make_record(ClaimId::Thm3_1, std::move(in), exact_side(s),
                      std::move(rhs), v, std::move(margin))};
}

Records thm3_2_records(SeqIndex n, const FactorBudget& budget,
                       FactorCache& cache) {
  Inputs in{{"n", BigInt(n)}};
  Factorization f = cache.get_or_compute(n, budget);
  if (!f.complete()) {
    return {skipped_record(ClaimId::Thm3_2, std::move(in),
                           "factorization of B_n incomplete within budget")};
  }
  const BigNat tau_bn = tau(f);
  Factorization nf = factorize(BigNat(static_cast<unsigned long>(n)), budget);
  const BigNat tau_n = tau(nf);
  const SeqIndex idx = to_u64(tau_n) / 3;
  BigNat rhs = balancing(idx);
  return {make_record(ClaimId::Thm3_2, std::move(in), exact_side(tau_bn),
                      exact_side(rhs), strict_verdict(tau_bn > rhs),
                      exact_margin(tau_bn - rhs))};
}

Records ineq3_7_records(SeqIndex n, const FactorBudget& budget,
                        FactorCache& cache) {
  Factorization f = cache.get_or_compute(n, budget);
  if (!f.complete()) {
    return {skipped_record(ClaimId::Ineq3_7, {{"n", BigInt(n)}},
                           "factorization of B_n incomplete within budget")};
  }
  const BigNat tau_bn = tau(f);
  const std::size_t om = omega(f);
  Factorization nf = factorize(BigNat(static_cast<unsigned long>(n)), budget);
  const BigNat tau_n = tau(nf);
  BigNat two_om = ui_pow_ui(2, static_cast<unsigned long>(om));
  BigNat two_tau = pow_ui(BigNat(2), to_u64(tau_n));

  Records out;
  out.push_back(make_record(ClaimId::Ineq3_7,
                            {{"n", BigInt(n)}, {"part", 1}},
                            exact_side(tau_bn), exact_side(two_om),
                            strict_verdict(tau_bn >= two_om),
                            exact_margin(tau_bn - two_om)));
  out.push_back(make_record(ClaimId::Ineq3_7,
                            {{"n", BigInt(n)}, {"part", 2}},
                            exact_side(two_om), exact_side(two_tau),
                            strict_verdict(two_om >= two_tau),
                            exact_margin(two_om - two_tau)));
  return out;
}

// ---- suite assembly -------------------------------------------------------

struct Task {
  ClaimId claim;
  std::function<Records()> fn;
};

IndexRange resolve(const std::optional<IndexRange>& user, IndexRange def,
                   SeqIndex domain_lo) {
  IndexRange r = user.value_or(def);
  if (r.lo < domain_lo) r.lo = domain_lo;
  return r;
}

bool nonempty(IndexRange r) { return r.lo <= r.hi; }

// Default sample for the totient bundle: a dense small prefix plus a few
// values beyond the clause-1 threshold, including the primorial that breaks
// clause 2.
std::vector<BigNat> lem2_12_sample(const std::optional<IndexRange>& user) {
  std::vector<BigNat> out;
  if (user) {
    for (SeqIndex n = std::max<SeqIndex>(1, user->lo); n <= user->hi; ++n)
      out.push_back(BigNat(static_cast<unsigned long>(n)));
    return out;
  }
  for (SeqIndex n = 2; n <= 200; ++n)
    out.push_back(BigNat(static_cast<unsigned long>(n)));
  out.push_back(BigNat("223092870"));    // 2*3*5*7*11*13*17*19*23
  out.push_back(BigNat("2000000014"));   // 2 * 1000000007
  out.push_back(BigNat("2147483647"));   // 2^31 - 1
  out.push_back(BigNat("6469693230"));   // primorial of 29
  return out;
}

void append_suite_tasks(std::vector<Task>& tasks, ClaimId claim,
                        const SuiteConfig& cfg,
                        const std::shared_ptr<const PairTable>& tbl,
                        FactorCache& cache) {
  const FactorBudget& budget = cfg.budget;
  const CmpBudget& cmp = cfg.cmp_budget;
  switch (claim) {
    case ClaimId::Lem2_1_2: {
      IndexRange r = resolve(cfg.n_range, {3, 200}, 3);
      for (SeqIndex n = r.lo; nonempty(r) && n <= r.hi; ++n)
        tasks.push_back({claim, [n, tbl] { return lem2_1_2_records(n, *tbl); }});
      break;
    }
    case ClaimId::Lem2_2: {
      IndexRange rm = resolve(cfg.m_range, {1, 60}, 1);
      IndexRange rn = resolve(cfg.n_range, {1, 60}, 1);
      if (!nonempty(rm) || !nonempty(rn)) break;
      for (SeqIndex m = rm.lo; m <= rm.hi; ++m)
        tasks.push_back(
            {claim, [m, rn, tbl] { return lem2_2_records(m, rn, *tbl); }});
      break;
    }
    case ClaimId::Lem2_3: {
      IndexRange rm = resolve(cfg.m_range, {1, 60}, 1);
      IndexRange rn = resolve(cfg.n_range, {1, 60}, 1);
      if (!nonempty(rm) || !nonempty(rn)) break;
      for (SeqIndex m = rm.lo; m <= rm.hi; ++m)
        tasks.push_back(
            {claim, [m, rn, tbl] { return lem2_3_records(m, rn, *tbl); }});
      break;
    }
    case ClaimId::Lem2_5: {
      IndexRange r = resolve(cfg.n_range, {2, 40}, 2);
      for (SeqIndex n = r.lo; nonempty(r) && n <= r.hi; ++n)
        tasks.push_back({claim, [n, budget, &cache] {
                           return lem2_5_records(n, budget, cache);
                         }});
      break;
    }
    case ClaimId::Lem2_6: {
      IndexRange r = resolve(cfg.n_range, {3, 10000}, 3);
      if (!nonempty(r)) break;
      if (r.hi > 100'000'000)
        throw config_error("lem2.6 prime range cap is 10^8");
      for (std::uint32_t p : primes_upto(static_cast<std::uint32_t>(r.hi))) {
        if (p < r.lo || p == 2) continue;
        tasks.push_back({claim, [p] { return lem2_6_records(p); }});
      }
      break;
    }
    case ClaimId::Lem2_7: {
      IndexRange r = resolve(cfg.n_range, {1, 200}, 1);
      for (SeqIndex n = r.lo; nonempty(r) && n <= r.hi; ++n)
        tasks.push_back({claim, [n, tbl] { return lem2_7_records(n, *tbl); }});
      break;
    }
    case ClaimId::Cor2_8: {
      IndexRange r = resolve(cfg.n_range, {2, 200}, 2);
      for (SeqIndex n = r.lo; nonempty(r) && n <= r.hi; ++n)
        tasks.push_back({claim, [n, tbl] { return cor2_8_records(n, *tbl); }});
      break;
    }
    case ClaimId::Lem2_9: {
      IndexRange r = resolve(cfg.n_range, {1, 200}, 1);
      for (SeqIndex n = r.lo; nonempty(r) && n <= r.hi; ++n)
        tasks.push_back({claim, [n, tbl] { return lem2_9_records(n, *tbl); }});
      break;
    }
    case ClaimId::Lem2_10: {
      IndexRange rm = resolve(cfg.m_range, {1, 100}, 1);
      IndexRange rn = resolve(cfg.n_range, {1, 100}, 1);
      if (!nonempty(rm) || !nonempty(rn)) break;
      for (SeqIndex m = rm.lo; m <= rm.hi; ++m)
        tasks.push_back(
            {claim, [m, rn, tbl] { return lem2_10_records(m, rn, *tbl); }});
      break;
    }
    case ClaimId::Lem2_11: {
      IndexRange rn = resolve(cfg.n_range, {2, 8}, 2);
      // k = 1 reads B_n > B_n; the strict inequality starts at k = 2.
      IndexRange rk = resolve(cfg.k_range, {2, 4}, 2);
      if (!nonempty(rn) || !nonempty(rk)) break;
      for (SeqIndex n = rn.lo; n <= rn.hi; ++n) {
        for (SeqIndex k = rk.lo; k <= rk.hi; ++k) {
          // Keep B_{n^k} at desk scale.
          long double nk = 1;
          for (SeqIndex i = 0; i < k; ++i) nk *= n;
          if (nk > 4096) continue;
          tasks.push_back({claim, [n, k] { return lem2_11_records(n, k); }});
        }
      }
      break;
    }
    case ClaimId::Lem2_12: {
      IndexRange rk = resolve(cfg.k_range, {1, 3}, 0);
      if (!nonempty(rk)) break;
      for (const BigNat& n : lem2_12_sample(cfg.n_range)) {
        if (n < 1) continue;
        tasks.push_back({claim, [n, rk, budget] {
                           return lem2_12_records(n, rk, budget);
                         }});
      }
      break;
    }
    case ClaimId::Lem2_13: {
      IndexRange r = resolve(cfg.n_range, {1, 50}, 1);
      for (SeqIndex n = r.lo; nonempty(r) && n <= r.hi; ++n)
        tasks.push_back({claim, [n, budget, cmp, &cache] {
                           return lem2_13_records(n, budget, cmp, cache);
                         }});
      break;
    }
    case ClaimId::Lem2_14p1: {
      IndexRange r = resolve(cfg.n_range, {3, 37}, 3);
      for (SeqIndex n = r.lo; nonempty(r) && n <= r.hi; ++n) {
        if (n % 2 == 0 || !is_prime_u64(n)) continue;
        tasks.push_back({claim, [n, budget, &cache] {
                           return lem2_14_records(n, budget, cache);
                         }});
      }
      break;
    }
    case ClaimId::Thm3_1: {
      IndexRange rn = resolve(cfg.n_range, {1, 40}, 1);
      IndexRange rk = resolve(cfg.k_range, {1, 3}, 1);
      if (!nonempty(rn) || !nonempty(rk)) break;
      for (SeqIndex n = rn.lo; n <= rn.hi; ++n)
        for (SeqIndex k = rk.lo; k <= rk.hi; ++k)
          tasks.push_back({claim, [n, k, budget, cmp, &cache] {
                             return thm3_1_records(n, k, budget, cmp, cache);
                           }});
      break;
    }
    case ClaimId::Thm3_2: {
      IndexRange r = resolve(cfg.n_range, {1, 50}, 1);
      for (SeqIndex n = r.lo; nonempty(r) && n <= r.hi; ++n)
        tasks.push_back({claim, [n, budget, &cache] {
                           return thm3_2_records(n, budget, cache);
                         }});
      break;
    }
    case ClaimId::Ineq3_7: {
      IndexRange r = resolve(cfg.n_range, {2, 50}, 2);
      for (SeqIndex n = r.lo; nonempty(r) && n <= r.hi; ++n)
        tasks.push_back({claim, [n, budget, &cache] {
                           return ineq3_7_records(n, budget, cache);
                         }});
      break;
    }
  }
}

// Largest prefix-table index a claim selection needs.
SeqIndex table_upto(const SuiteConfig& cfg) {
  SeqIndex upto = 0;
  auto bump = [&upto](SeqIndex v) { upto = std::max(upto, v); };
  for (ClaimId c : cfg.claims) {
    switch (c) {
      case ClaimId::Lem2_1_2:
        bump(resolve(cfg.n_range, {3, 200}, 3).hi);
        break;
      case ClaimId::Lem2_2:
      case ClaimId::Lem2_3:
        bump(resolve(cfg.m_range, {1, 60}, 1).hi);
        bump(resolve(cfg.n_range, {1, 60}, 1).hi);
        break;
      case ClaimId::Lem2_7:
        bump(resolve(cfg.n_range, {1, 200}, 1).hi + 1);
        break;
      case ClaimId::Cor2_8:
        bump(resolve(cfg.n_range, {2, 200}, 2).hi);
        break;
      case ClaimId::Lem2_9:
        bump(resolve(cfg.n_range, {1, 200}, 1).hi);
        break;
      case ClaimId::Lem2_10:
        bump(resolve(cfg.m_range, {1, 100}, 1).hi +
             resolve(cfg.n_range, {1, 100}, 1).hi);
        break;
      default:
        break;
    }
  }
  return upto;
}

void run_tasks(std::vector<Task>& tasks, unsigned jobs,
               std::vector<Records>& results) {
  results.resize(tasks.size());
  auto run_one = [&](std::size_t i) {
    try {
      results[i] = tasks[i].fn();
    } catch (const std::exception& e) {
      results[i] = {skipped_record(tasks[i].claim, {}, e.what())};
    }
  };
  if (jobs <= 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      run_one(i);
    }
  };
  std::vector<std::thread> pool;
  const auto count =
      static_cast<unsigned>(std::min<std::size_t>(jobs, tasks.size()));
  pool.reserve(count);
  for (unsigned j = 0; j < count; ++j) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace

std::string_view claim_name(ClaimId id) {
  for (const auto& m : kMeta)
    if (m.id == id) return m.name;
  return "?";
}

std::optional<ClaimId> claim_from_name(std::string_view name) {
  for (const auto& m : kMeta)
    if (name == m.name) return m.id;
  return std::nullopt;
}

std::vector<ClaimId> all_claims() {
  std::vector<ClaimId> out;
  out.reserve(kClaimCount);
  for (const auto& m : kMeta) out.push_back(m.id);
  return out;
}

bool claim_report_only(ClaimId id) {
  for (const auto& m : kMeta)
    if (m.id == id) return m.report_only;
  return false;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::Fails:
      return "fails";
    case Verdict::EqualityCase:
      return "equality_case";
    case Verdict::Skipped:
      return "skipped";
  }
  return "?";
}

bool record_less(const VerificationRecord& a, const VerificationRecord& b) {
  if (a.claim != b.claim) return a.claim < b.claim;
  const auto cmp_pair = [](const std::pair<std::string, BigInt>& x,
                           const std::pair<std::string, BigInt>& y) {
    if (x.first != y.first) return x.first < y.first ? -1 : 1;
    return cmp(x.second, y.second) < 0 ? -1 : (x.second == y.second ? 0 : 1);
  };
  const std::size_t common = std::min(a.inputs.size(), b.inputs.size());
  for (std::size_t i = 0; i < common; ++i) {
    int c = cmp_pair(a.inputs[i], b.inputs[i]);
    if (c != 0) return c < 0;
  }
  if (a.inputs.size() != b.inputs.size())
    return a.inputs.size() < b.inputs.size();
  // Only defensive skip records can tie on inputs; order them by reason.
  return a.skip_reason < b.skip_reason;
}

void SuiteConfig::validate() const {
  auto check = [](const std::optional<IndexRange>& r, const char* what) {
    if (r && r->lo > r->hi)
      throw config_error(std::string("empty ") + what + " range");
  };
  check(n_range, "n");
  check(k_range, "k");
  check(m_range, "m");
  if (k_range && k_range->lo == 0) {
    for (ClaimId c : claims)
      if (c == ClaimId::Thm3_1)
        throw config_error("thm3.1 requires k >= 1 (sigma_0 has no "
                           "counterpart index)");
  }
  if (cmp_budget.max_decimal_digits == 0)
    throw config_error("digit budget must be positive");
  try {
    budget.validate();
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }
}

SuiteReport run_suite(const SuiteConfig& config, FactorCache* cache) {
  config.validate();
  FactorCache local_cache;
  if (!cache) cache = &local_cache;

  SuiteConfig cfg = config;
  std::sort(cfg.claims.begin(), cfg.claims.end());
  cfg.claims.erase(std::unique(cfg.claims.begin(), cfg.claims.end()),
                   cfg.claims.end());

  auto tbl = build_pair_table(table_upto(cfg));

  std::vector<Task> tasks;
  for (ClaimId c : cfg.claims) append_suite_tasks(tasks, c, cfg, tbl, *cache);

  unsigned jobs = cfg.jobs ? cfg.jobs : std::thread::hardware_concurrency();
  if (jobs == 0) jobs = 1;
  std::vector<Records> results;
  run_tasks(tasks, jobs, results);

  SuiteReport report;
  report.config = cfg;
  for (auto& rs : results)
    for (auto& r : rs) report.records.push_back(std::move(r));
  std::sort(report.records.begin(), report.records.end(), record_less);

  for (const auto& r : report.records) {
    switch (r.verdict) {
      case Verdict::Holds:
        ++report.holds;
        break;
      case Verdict::Fails:
        ++report.fails;
        if (!claim_report_only(r.claim)) ++report.hard_failures;
        break;
      case Verdict::EqualityCase:
        ++report.equality_cases;
        break;
      case Verdict::Skipped:
        ++report.skipped;
        break;
    }
  }
  return report;
}

std::vector<VerificationRecord> verify_thm_3_1(IndexRange n_range,
                                               IndexRange k_range,
                                               const FactorBudget& budget,
                                               const CmpBudget& cmp,
                                               FactorCache* cache) {
  if (k_range.lo == 0) throw config_error("thm3.1 requires k >= 1");
  FactorCache local;
  if (!cache) cache = &local;
  Records out;
  for (SeqIndex n = std::max<SeqIndex>(1, n_range.lo); n <= n_range.hi; ++n)
    for (SeqIndex k = k_range.lo; k <= k_range.hi; ++k)
      for (auto& r : thm3_1_records(n, k, budget, cmp, *cache))
        out.push_back(std::move(r));
  std::sort(out.begin(), out.end(), record_less);
  return out;
}

std::vector<VerificationRecord> verify_thm_3_2(IndexRange n_range,
                                               const FactorBudget& budget,
                                               FactorCache* cache) {
  FactorCache local;
  if (!cache) cache = &local;
  Records out;
  for (SeqIndex n = std::max<SeqIndex>(1, n_range.lo); n <= n_range.hi; ++n)
    for (auto& r : thm3_2_records(n, budget, *cache))
      out.push_back(std::move(r));
  std::sort(out.begin(), out.end(), record_less);
  return out;
}

std::vector<VerificationRecord> verify_lemma_2_13(IndexRange n_range,
                                                  const FactorBudget& budget,
                                                  const CmpBudget& cmp,
                                                  FactorCache* cache) {
  FactorCache local;
  if (!cache) cache = &local;
  Records out;
  for (SeqIndex n = std::max<SeqIndex>(1, n_range.lo); n <= n_range.hi; ++n)
    for (auto& r : lem2_13_records(n, budget, cmp, *cache))
      out.push_back(std::move(r));
  std::sort(out.begin(), out.end(), record_less);
  return out;
}

std::vector<VerificationRecord> verify_growth_claims(IndexRange n_range,
                                                     IndexRange m_range,
                                                     IndexRange k_range) {
  SuiteConfig cfg;
  cfg.claims = {ClaimId::Lem2_1_2, ClaimId::Lem2_7, ClaimId::Cor2_8,
                ClaimId::Lem2_9,   ClaimId::Lem2_10, ClaimId::Lem2_11};
  cfg.n_range = n_range;
  cfg.m_range = m_range;
  cfg.k_range = k_range;
  cfg.jobs = 1;
  return run_suite(cfg).records;
}

}  // namespace balnum
