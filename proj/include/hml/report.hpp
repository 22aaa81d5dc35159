#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace hml {

// Every command produces one of these. payload is the deterministic result;
// command is the fully resolved invocation (defaults filled in) so feeding
// it back reproduces payload byte for byte; duration lives outside payload.
struct ReportDocument {
    std::string schema = "hml-report/1";
    std::vector<std::pair<std::string, std::string>> command;
    nlohmann::ordered_json payload;
    std::vector<std::string> provenance;
    double duration_ms = 0.0;
};

// 17 significant digits, enough to round-trip any double.
std::string format_double17(double v);

// Stable-key-order JSON with all floats printed via format_double17.
std::string to_json(const ReportDocument& doc);

// The payload subtree alone, serialized the same way (what reruns compare).
std::string payload_json(const ReportDocument& doc);

// Flat projection carrying the same numbers: scalars as "# key = value"
// preamble lines, then either the payload's table (header row + data rows)
// or a path,value flattening when no table is present.
std::string to_csv(const ReportDocument& doc);

}  // namespace hml
