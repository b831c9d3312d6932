#pragma once

#include <string>

#include "ribnet/cauchy.hpp"
#include "ribnet/diagnostics.hpp"
#include "ribnet_cli/config.hpp"
#include "ribnet_cli/json_reader.hpp"
#include "ribnet_cli/net_file.hpp"

// Verification reports. The JSON form is a pure function of its inputs, so
// identical runs produce byte-identical files.
namespace ribnet::cli {

inline constexpr const char* kReportSchema = "ribnet.report/1";

// Projective agreement of chart and coefficient records, as a check.
CheckResult record_check(const NetDocument& doc, double tol);

ordered_json report_header(const std::string& command, const Tolerances& tol);
ordered_json lattice_json(const Lattice& lat, int n);
ordered_json checks_json(const NetDiagnostics& d);
ordered_json completion_json(const CompletionReport& r, const Lattice& lat);

// Human-readable lines for stdout.
std::string render_checks(const NetDiagnostics& d);
std::string render_location(const Location& at);
std::string format_index(const MultiIndex& t);

}  // namespace ribnet::cli
