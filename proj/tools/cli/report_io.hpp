#pragma once

#include <string>

#include "balnum/verify.hpp"

namespace balnum::cli {

// Deterministic serializations of a suite report: object keys sorted, numbers
// as decimal strings, rationals as "p/q" (or "p" for integral values). Two
// identical reports serialize to identical bytes.
std::string report_to_json(const SuiteReport& report);

// RFC 4180: header row, CRLF-free LF lines, quotes doubled, fields quoted
// when they contain a comma, quote, or newline.
std::string report_to_csv(const SuiteReport& report);

std::string side_kind_name(Side::Kind k);
std::string margin_kind_name(Margin::Kind k);

}  // namespace balnum::cli
