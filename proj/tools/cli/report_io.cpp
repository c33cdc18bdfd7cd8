#include "report_io.hpp"

#include <sstream>

#include "json.hpp"
#include "version.hpp"

namespace balnum::cli {
namespace {

using nlohmann::json;

std::string rational_str(const mpq_class& q) { return q.get_str(10); }

json range_json(const std::optional<IndexRange>& r) {
  if (!r) return nullptr;
  return json{{"lo", std::to_string(r->lo)}, {"hi", std::to_string(r->hi)}};
}

json side_json(const Side& s) {
  json j;
  j["kind"] = side_kind_name(s.kind);
  switch (s.kind) {
    case Side::Kind::None:
      break;
    case Side::Kind::Exact:
      j["value"] = to_decimal(s.value);
      break;
    case Side::Kind::Certified:
    case Side::Kind::CertifiedLog:
      j["describes"] = s.describes;
      j["lo"] = rational_str(s.lo);
      j["hi"] = rational_str(s.hi);
      break;
  }
  return j;
}

json margin_json(const Margin& m) {
  json j;
  j["kind"] = margin_kind_name(m.kind);
  switch (m.kind) {
    case Margin::Kind::None:
      break;
    case Margin::Kind::Exact:
      j["value"] = to_decimal(m.exact);
      break;
    case Margin::Kind::Rational:
    case Margin::Kind::LogAlpha:
      j["value"] = rational_str(m.rational);
      break;
  }
  return j;
}

json record_json(const VerificationRecord& r) {
  json inputs = json::object();
  for (const auto& [name, value] : r.inputs) inputs[name] = to_decimal(value);
  json j;
  j["claim"] = std::string(claim_name(r.claim));
  j["inputs"] = inputs;
  j["lhs"] = side_json(r.lhs);
  j["rhs"] = side_json(r.rhs);
  j["verdict"] = std::string(verdict_name(r.verdict));
  j["margin"] = margin_json(r.margin);
  if (!r.skip_reason.empty()) j["skip_reason"] = r.skip_reason;
  return j;
}

json config_json(const SuiteConfig& c) {
  json claims = json::array();
  for (ClaimId id : c.claims) claims.push_back(std::string(claim_name(id)));
  json budget;
  budget["trial_division_bound"] = std::to_string(c.budget.trial_division_bound);
  budget["rho_iteration_cap"] = std::to_string(c.budget.rho_iteration_cap);
  budget["time_cap_ms"] = std::to_string(c.budget.wall_clock_cap.count());
  budget["rho_seed"] = std::to_string(c.budget.rho_seed);
  json j;
  j["claims"] = claims;
  j["n_range"] = range_json(c.n_range);
  j["k_range"] = range_json(c.k_range);
  j["m_range"] = range_json(c.m_range);
  j["budget"] = budget;
  j["max_decimal_digits"] = std::to_string(c.cmp_budget.max_decimal_digits);
  j["jobs"] = c.jobs;
  j["strict"] = c.strict;
  return j;
}

// Quotes a CSV field per RFC 4180 when it contains a comma, quote, or
// newline; embedded quotes are doubled.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += "\"\"";
    else quoted += ch;
  }
  quoted += '"';
  return quoted;
}

std::string side_value(const Side& s) {
  return s.kind == Side::Kind::Exact ? to_decimal(s.value) : std::string();
}

std::string margin_value(const Margin& m) {
  switch (m.kind) {
    case Margin::Kind::None:
      return {};
    case Margin::Kind::Exact:
      return to_decimal(m.exact);
    case Margin::Kind::Rational:
    case Margin::Kind::LogAlpha:
      return rational_str(m.rational);
  }
  return {};
}

void side_columns(std::vector<std::string>& row, const Side& s) {
  row.push_back(side_kind_name(s.kind));
  row.push_back(side_value(s));
  row.push_back(s.kind == Side::Kind::Certified ||
                        s.kind == Side::Kind::CertifiedLog
                    ? s.describes
                    : std::string());
  bool bounded = s.kind == Side::Kind::Certified ||
                 s.kind == Side::Kind::CertifiedLog;
  row.push_back(bounded ? rational_str(s.lo) : std::string());
  row.push_back(bounded ? rational_str(s.hi) : std::string());
}

}  // namespace

std::string side_kind_name(Side::Kind k) {
  switch (k) {
    case Side::Kind::None:
      return "none";
    case Side::Kind::Exact:
      return "exact";
    case Side::Kind::Certified:
      return "certified";
    case Side::Kind::CertifiedLog:
      return "certified_log";
  }
  return "none";
}

std::string margin_kind_name(Margin::Kind k) {
  switch (k) {
    case Margin::Kind::None:
      return "none";
    case Margin::Kind::Exact:
      return "exact";
    case Margin::Kind::Rational:
      return "rational";
    case Margin::Kind::LogAlpha:
      return "log_alpha";
  }
  return "none";
}

std::string report_to_json(const SuiteReport& report) {
  json records = json::array();
  for (const auto& r : report.records) records.push_back(record_json(r));
  json summary;
  summary["records"] = report.records.size();
  summary["holds"] = report.holds;
  summary["fails"] = report.fails;
  summary["equality_cases"] = report.equality_cases;
  summary["skipped"] = report.skipped;
  summary["hard_failures"] = report.hard_failures;
  json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = std::string(kToolVersion);
  j["kind"] = "verify_report";
  j["config"] = config_json(report.config);
  j["records"] = records;
  j["summary"] = summary;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const SuiteReport& report) {
  std::ostringstream out;
  out << "claim,verdict,inputs,lhs_kind,lhs_value,lhs_describes,lhs_lo,lhs_hi,"
         "rhs_kind,rhs_value,rhs_describes,rhs_lo,rhs_hi,margin_kind,margin,"
         "skip_reason\n";
  for (const auto& r : report.records) {
    std::string inputs;
    for (const auto& [name, value] : r.inputs) {
      if (!inputs.empty()) inputs += ';';
      inputs += name + "=" + to_decimal(value);
    }
    std::vector<std::string> row;
    row.push_back(std::string(claim_name(r.claim)));
    row.push_back(std::string(verdict_name(r.verdict)));
    row.push_back(inputs);
    side_columns(row, r.lhs);
    side_columns(row, r.rhs);
    row.push_back(margin_kind_name(r.margin.kind));
    row.push_back(margin_value(r.margin));
    row.push_back(r.skip_reason);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_field(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace balnum::cli
