#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "balnum/arith.hpp"
#include "balnum/divisibility.hpp"
#include "balnum/errors.hpp"
#include "balnum/factor.hpp"
#include "balnum/factor_cache.hpp"
#include "balnum/primality.hpp"
#include "balnum/seq.hpp"
#include "balnum/verify.hpp"
#include "cache_file.hpp"
#include "json.hpp"
#include "report_io.hpp"
#include "version.hpp"

namespace balnum::cli {
namespace {

using nlohmann::json;

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  std::uint64_t value = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw config_error(what + " \"" + s + "\" is not an unsigned integer");
  return value;
}

std::optional<std::uint64_t> env_u64(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return parse_u64(v, std::string("environment variable ") + name);
}

std::string env_string(const char* name) {
  const char* v = std::getenv(name);
  return v == nullptr ? std::string() : std::string(v);
}

IndexRange parse_range(const std::string& s, const std::string& flag) {
  std::size_t pos = s.find("..");
  if (pos == std::string::npos)
    throw config_error(flag + " expects a range of the form a..b, got \"" +
                       s + "\"");
  IndexRange r;
  r.lo = parse_u64(s.substr(0, pos), flag + " lower bound");
  r.hi = parse_u64(s.substr(pos + 2), flag + " upper bound");
  return r;
}

bool all_digits(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) {
           return c >= '0' && c <= '9';
         });
}

// Budget knobs shared by the factoring subcommands. Defaults come from the
// library, overridden by environment, overridden again by flags.
struct BudgetFlags {
  std::uint64_t trial_bound;
  std::uint64_t rho_cap;
  std::uint64_t time_cap_ms;
  std::uint64_t seed;

  BudgetFlags() {
    FactorBudget d;
    trial_bound = env_u64("BALNUM_TRIAL_BOUND").value_or(
        d.trial_division_bound);
    rho_cap = env_u64("BALNUM_RHO_CAP").value_or(d.rho_iteration_cap);
    time_cap_ms = env_u64("BALNUM_TIME_CAP_MS")
                      .value_or(static_cast<std::uint64_t>(
                          d.wall_clock_cap.count()));
    seed = d.rho_seed;
  }

  FactorBudget to_budget() const {
    FactorBudget b;
    b.trial_division_bound = trial_bound;
    b.rho_iteration_cap = rho_cap;
    b.wall_clock_cap = std::chrono::milliseconds(time_cap_ms);
    b.rho_seed = seed;
    b.validate();
    return b;
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--trial-bound", trial_bound,
                    "Trial-division prime bound")
        ->capture_default_str();
    cmd->add_option("--rho-cap", rho_cap,
                    "Pollard-rho iteration cap per composite")
        ->capture_default_str();
    cmd->add_option("--time-cap-ms", time_cap_ms,
                    "Wall-clock cap per factorization, in ms")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "Pollard-rho parameter seed")
        ->capture_default_str();
  }
};

json output_header(const char* kind) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = std::string(kToolVersion);
  j["kind"] = kind;
  return j;
}

void emit_warnings(std::ostream& err, const std::vector<std::string>& ws) {
  for (const auto& w : ws) err << "warning: " << w << "\n";
}

std::string factor_terms(const Factorization& f) {
  std::string s;
  for (const auto& [prime, exp] : f.factors) {
    if (!s.empty()) s += ' ';
    s += to_decimal(prime);
    if (exp > 1) s += "^" + std::to_string(exp);
  }
  if (!f.complete()) {
    if (!s.empty()) s += ' ';
    s += "C?" + to_decimal(f.cofactor);
  }
  return s;
}

json factors_json(const Factorization& f) {
  json arr = json::array();
  for (const auto& [prime, exp] : f.factors) {
    json item;
    item["prime"] = to_decimal(prime);
    item["exp"] = exp;
    arr.push_back(item);
  }
  return arr;
}

// ---- seq ----------------------------------------------------------------

struct SeqOptions {
  std::string kind;
  std::optional<std::uint64_t> n;
  std::string range;
  std::optional<std::int64_t> a;
  std::optional<std::int64_t> b;
  std::size_t max_digits = 1'000'000;
  bool as_json = false;
  bool check_pell = false;
};

int cmd_seq(const SeqOptions& o, std::ostream& out, std::ostream& err) {
  IndexRange r;
  if (o.n && !o.range.empty())
    throw config_error("--n and --range are mutually exclusive");
  if (o.n) {
    r = {*o.n, *o.n};
  } else if (!o.range.empty()) {
    r = parse_range(o.range, "--range");
  } else {
    throw config_error("one of --n or --range is required");
  }
  if (r.lo > r.hi)
    throw config_error("empty range " + std::to_string(r.lo) + ".." +
                       std::to_string(r.hi));

  SeqParams params = SeqParams::balancing();
  const bool balancing_kind =
      o.kind == "balancing" || o.kind == "lucas-balancing";
  if (o.kind == "balancing-like") {
    if (!o.a) throw config_error("--kind balancing-like requires --a");
    params = SeqParams::balancing_like(*o.a);
  } else if (o.kind == "generalized") {
    if (!o.a || !o.b)
      throw config_error("--kind generalized requires --a and --b");
    params = SeqParams::generalized(*o.a, *o.b);
  } else if (!balancing_kind) {
    throw config_error("unknown --kind \"" + o.kind + "\"");
  }
  params.validate();
  if (o.check_pell && !balancing_kind)
    throw config_error("--check-pell applies to the balancing kinds only");

  std::size_t digits_bound;
  if (balancing_kind) {
    digits_bound = balancing_digits_estimate(r.hi);
  } else {
    auto weight = static_cast<double>(std::llabs(params.a)) +
                  static_cast<double>(std::llabs(params.b));
    digits_bound = static_cast<std::size_t>(
                       static_cast<double>(r.hi) * std::log10(weight + 1)) +
                   2;
  }
  if (digits_bound > o.max_digits)
    throw budget_error("term at index " + std::to_string(r.hi) +
                       " may need about " + std::to_string(digits_bound) +
                       " digits, over the --max-digits budget of " +
                       std::to_string(o.max_digits));

  std::vector<std::string> values;
  values.reserve(r.hi - r.lo + 1);
  for (SeqIndex i = r.lo; i <= r.hi; ++i) {
    if (o.check_pell) {
      auto [bn, cn] = balancing_pair(i);
      if (cn * cn - 8 * bn * bn != 1) {
        err << "error: Pell identity violated at index " << i << "\n";
        return kExitHardFail;
      }
    }
    if (o.kind == "balancing") {
      values.push_back(to_decimal(balancing(i)));
    } else if (o.kind == "lucas-balancing") {
      values.push_back(to_decimal(lucas_balancing(i)));
    } else {
      values.push_back(to_decimal(sequence_term(params, i)));
    }
  }

  if (o.as_json) {
    json j = output_header("sequence");
    j["family"] = o.kind;
    j["a"] = std::to_string(params.a);
    j["b"] = std::to_string(params.b);
    j["lo"] = std::to_string(r.lo);
    j["hi"] = std::to_string(r.hi);
    j["pell_checked"] = o.check_pell;
    j["values"] = values;
    out << j.dump(2) << "\n";
  } else {
    for (const auto& v : values) out << v << "\n";
  }
  return kExitOk;
}

// ---- factor -------------------------------------------------------------

struct FactorOptions {
  std::uint64_t n = 0;
  BudgetFlags budget;
  std::string cache_path;
  bool repair = false;
  bool as_json = false;
};

int cmd_factor(const FactorOptions& o, std::ostream& out, std::ostream& err) {
  const FactorBudget budget = o.budget.to_budget();
  std::vector<CacheEntry> file_entries;
  const bool use_cache = !o.cache_path.empty();
  if (o.repair && !use_cache)
    throw config_error("--repair requires a cache path");
  if (use_cache) {
    if (o.repair) {
      std::vector<std::string> warnings;
      std::size_t kept = cache_repair(o.cache_path, &warnings);
      emit_warnings(err, warnings);
      err << "repaired " << o.cache_path << ": " << kept
          << " entries kept\n";
    }
    CacheLoadResult loaded = cache_load(o.cache_path);
    emit_warnings(err, loaded.warnings);
    file_entries = std::move(loaded.entries);
  }

  Factorization result;
  bool from_cache = false;
  auto hit = std::find_if(file_entries.begin(), file_entries.end(),
                          [&](const CacheEntry& e) {
                            return e.index == o.n && e.factors.complete();
                          });
  if (hit != file_entries.end()) {
    result = hit->factors;
    from_cache = true;
  } else {
    auto start = std::chrono::steady_clock::now();
    result = factorize(balancing(o.n), budget);
    auto spent = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    if (use_cache) {
      cache_upsert(file_entries,
                   CacheEntry{o.n, result, spent, std::string(kToolVersion)});
      cache_store(o.cache_path, file_entries);
    }
  }

  if (o.as_json) {
    json j = output_header("factorization");
    j["index"] = std::to_string(o.n);
    j["value"] = to_decimal(result.value());
    j["factors"] = factors_json(result);
    j["cofactor"] = to_decimal(result.cofactor);
    j["status"] = result.complete() ? "complete" : "partial";
    j["from_cache"] = from_cache;
    out << j.dump(2) << "\n";
  } else {
    out << factor_terms(result) << "\n";
  }
  return result.complete() ? kExitOk : kExitBudget;
}

// ---- rank ---------------------------------------------------------------

struct RankOptions {
  std::string p;
  BudgetFlags budget;
  bool as_json = false;
};

int cmd_rank(const RankOptions& o, std::ostream& out, std::ostream& err) {
  if (!all_digits(o.p))
    throw config_error("--p \"" + o.p + "\" is not a decimal integer");
  BigNat p(o.p);
  if (!is_prime(p))
    throw config_error("--p " + o.p + " is not prime; the rank of "
                       "apparition is defined for primes");
  RankOfApparition rank = rank_of_apparition(p, o.budget.to_budget());
  if (o.as_json) {
    json j = output_header("rank");
    j["p"] = to_decimal(rank.prime);
    j["rank"] = std::to_string(rank.rank);
    out << j.dump(2) << "\n";
  } else {
    out << rank.rank << "\n";
  }
  (void)err;
  return kExitOk;
}

// ---- primitive ----------------------------------------------------------

struct PrimitiveOptions {
  std::uint64_t n = 0;
  BudgetFlags budget;
  std::string cache_path;
  bool as_json = false;
};

int cmd_primitive(const PrimitiveOptions& o, std::ostream& out,
                  std::ostream& err) {
  if (o.n < 2) {
    err << "error: B_" << o.n << (o.n == 1 ? " = 1 has no prime divisors"
                                            : " = 0 is divisible by every "
                                              "prime")
        << "; a primitive divisor exists exactly for indices n >= 2\n";
    return kExitConfig;
  }
  const FactorBudget budget = o.budget.to_budget();
  std::vector<CacheEntry> file_entries;
  const bool use_cache = !o.cache_path.empty();
  if (use_cache) {
    CacheLoadResult loaded = cache_load(o.cache_path);
    emit_warnings(err, loaded.warnings);
    file_entries = std::move(loaded.entries);
  }

  PrimitiveDivisorReport report;
  auto hit = std::find_if(file_entries.begin(), file_entries.end(),
                          [&](const CacheEntry& e) {
                            return e.index == o.n && e.factors.complete();
                          });
  if (hit != file_entries.end()) {
    report = primitive_divisors_from(o.n, hit->factors);
  } else {
    auto start = std::chrono::steady_clock::now();
    report = primitive_divisors(o.n, budget);
    auto spent = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    if (use_cache) {
      cache_upsert(file_entries, CacheEntry{o.n, report.witness, spent,
                                            std::string(kToolVersion)});
      cache_store(o.cache_path, file_entries);
    }
  }

  if (o.as_json) {
    json j = output_header("primitive_divisors");
    j["index"] = std::to_string(o.n);
    json primes = json::array();
    for (const auto& p : report.primitive) primes.push_back(to_decimal(p));
    j["primitive"] = primes;
    j["complete"] = report.complete;
    j["cofactor"] = to_decimal(report.witness.cofactor);
    out << j.dump(2) << "\n";
  } else {
    std::string line;
    for (const auto& p : report.primitive) {
      if (!line.empty()) line += ' ';
      line += to_decimal(p);
    }
    if (!report.complete) {
      if (!line.empty()) line += ' ';
      line += "C?" + to_decimal(report.witness.cofactor);
    }
    out << line << "\n";
  }
  return report.complete ? kExitOk : kExitBudget;
}

// ---- verify -------------------------------------------------------------

struct VerifyOptions {
  std::string claims = "all";
  std::string n_range, k_range, m_range;
  std::string format = "json";
  std::string out_path;
  BudgetFlags budget;
  std::uint64_t max_digits;
  unsigned jobs = 0;
  bool strict = false;
  bool report_only = false;
  std::string cache_path;

  VerifyOptions() { max_digits = CmpBudget{}.max_decimal_digits; }
};

std::vector<ClaimId> parse_claims(const std::string& spec) {
  std::vector<ClaimId> claims;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "all") return all_claims();
    auto id = claim_from_name(item);
    if (!id) {
      std::string known;
      for (ClaimId c : all_claims()) {
        if (!known.empty()) known += ", ";
        known += std::string(claim_name(c));
      }
      throw config_error("unknown claim \"" + item + "\"; known claims: " +
                         known + ", all");
    }
    claims.push_back(*id);
  }
  if (claims.empty()) throw config_error("no claims requested");
  return claims;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  SuiteConfig cfg;
  cfg.claims = parse_claims(o.claims);
  if (!o.n_range.empty()) cfg.n_range = parse_range(o.n_range, "--n");
  if (!o.k_range.empty()) cfg.k_range = parse_range(o.k_range, "--k");
  if (!o.m_range.empty()) cfg.m_range = parse_range(o.m_range, "--m");
  cfg.budget = o.budget.to_budget();
  cfg.cmp_budget.max_decimal_digits = o.max_digits;
  cfg.jobs = o.jobs;
  cfg.strict = o.strict;
  cfg.validate();

  FactorCache cache;
  std::vector<CacheEntry> file_entries;
  const bool use_cache = !o.cache_path.empty();
  if (use_cache) {
    CacheLoadResult loaded = cache_load(o.cache_path);
    emit_warnings(err, loaded.warnings);
    file_entries = std::move(loaded.entries);
    for (const CacheEntry& e : file_entries)
      cache.insert(e.index, e.factors);
  }

  SuiteReport report = run_suite(cfg, &cache);

  if (use_cache) {
    for (const auto& [index, f] : cache.snapshot()) {
      auto it = std::find_if(file_entries.begin(), file_entries.end(),
                             [index = index](const CacheEntry& e) {
                               return e.index == index;
                             });
      if (it != file_entries.end() && it->factors.complete()) continue;
      cache_upsert(file_entries,
                   CacheEntry{index, f, std::chrono::milliseconds(0),
                              std::string(kToolVersion)});
    }
    cache_store(o.cache_path, file_entries);
  }

  const std::string payload = o.format == "csv" ? report_to_csv(report)
                                                : report_to_json(report);
  if (o.out_path.empty()) {
    out << payload;
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw config_error("cannot write report to " + o.out_path);
    f << payload;
    if (!f.good())
      throw config_error("short write while writing " + o.out_path);
  }

  err << "records: " << report.records.size() << ", holds: " << report.holds
      << ", fails: " << report.fails
      << ", equality_cases: " << report.equality_cases
      << ", skipped: " << report.skipped
      << ", hard_failures: " << report.hard_failures << "\n";

  if (report.hard_failures > 0 && !o.report_only) return kExitHardFail;
  if (o.strict && report.skipped > 0) return kExitBudget;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Balancing-number sequences, factorization, and claim "
               "verification"};
  app.set_version_flag("--version",
                       std::string("balnum ") + std::string(kToolVersion));
  app.require_subcommand(1);

  try {
    SeqOptions seq;
    FactorOptions factor;
    RankOptions rank;
    PrimitiveOptions primitive;
    VerifyOptions verify;
    const std::string env_cache = env_string("BALNUM_CACHE");
    factor.cache_path = env_cache;
    primitive.cache_path = env_cache;
    verify.cache_path = env_cache;

    CLI::App* seq_cmd =
        app.add_subcommand("seq", "Print terms of a recurrence family");
    seq_cmd
        ->add_option("--kind", seq.kind,
                     "balancing, lucas-balancing, balancing-like, or "
                     "generalized")
        ->required();
    seq_cmd->add_option("--n", seq.n, "Single index");
    seq_cmd->add_option("--range", seq.range, "Index range a..b");
    seq_cmd->add_option("--a", seq.a, "Coefficient A (balancing-like, "
                                      "generalized)");
    seq_cmd->add_option("--b", seq.b, "Coefficient B (generalized)");
    seq_cmd->add_option("--max-digits", seq.max_digits,
                        "Decimal-digit budget for the largest term")
        ->capture_default_str();
    seq_cmd->add_flag("--json", seq.as_json, "JSON output");
    seq_cmd->add_flag("--check-pell", seq.check_pell,
                      "Assert C^2 - 8B^2 = 1 at every printed index");

    CLI::App* factor_cmd =
        app.add_subcommand("factor", "Factor the n-th balancing number");
    factor_cmd->add_option("--n", factor.n, "Sequence index")->required();
    factor.budget.attach(factor_cmd);
    factor_cmd->add_option("--cache", factor.cache_path,
                           "Factorization cache file");
    factor_cmd->add_flag("--repair", factor.repair,
                         "Rewrite the cache file, dropping invalid lines");
    factor_cmd->add_flag("--json", factor.as_json, "JSON output");

    CLI::App* rank_cmd = app.add_subcommand(
        "rank", "Rank of apparition of a prime in the balancing sequence");
    rank_cmd->add_option("--p", rank.p, "Prime, decimal")->required();
    rank.budget.attach(rank_cmd);
    rank_cmd->add_flag("--json", rank.as_json, "JSON output");

    CLI::App* primitive_cmd = app.add_subcommand(
        "primitive", "Primitive prime divisors of the n-th balancing number");
    primitive_cmd->add_option("--n", primitive.n, "Sequence index")
        ->required();
    primitive.budget.attach(primitive_cmd);
    primitive_cmd->add_option("--cache", primitive.cache_path,
                              "Factorization cache file");
    primitive_cmd->add_flag("--json", primitive.as_json, "JSON output");

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Check catalog claims over ranges");
    verify_cmd->add_option("--claim", verify.claims,
                           "Comma-separated claim ids, or \"all\"")
        ->capture_default_str();
    verify_cmd->add_option("--n", verify.n_range, "n range a..b");
    verify_cmd->add_option("--k", verify.k_range, "k range a..b");
    verify_cmd->add_option("--m", verify.m_range, "m range a..b");
    verify_cmd->add_option("--format", verify.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    verify_cmd->add_option("--out", verify.out_path,
                           "Report path (default: stdout)");
    verify.budget.attach(verify_cmd);
    verify_cmd->add_option("--max-digits", verify.max_digits,
                           "Decimal-digit budget for exact comparisons")
        ->capture_default_str();
    verify_cmd->add_option("--jobs", verify.jobs,
                           "Worker threads (0 = hardware)")
        ->capture_default_str();
    verify_cmd->add_flag("--strict", verify.strict,
                         "Exit 3 when any record was skipped for budget");
    verify_cmd->add_flag("--report-only", verify.report_only,
                         "Report failures without failing the exit status");
    verify_cmd->add_option("--cache", verify.cache_path,
                           "Factorization cache file");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("balnum");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitConfig;
    }

    if (app.got_subcommand(seq_cmd)) return cmd_seq(seq, out, err);
    if (app.got_subcommand(factor_cmd)) return cmd_factor(factor, out, err);
    if (app.got_subcommand(rank_cmd)) return cmd_rank(rank, out, err);
    if (app.got_subcommand(primitive_cmd))
      return cmd_primitive(primitive, out, err);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(verify, out, err);
    err << "error: no subcommand\n";
    return kExitConfig;
  } catch (const config_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const budget_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitHardFail;
  }
}

}  // namespace balnum::cli
