#ifndef HYPERHARMONIC_REPORT_HPP_
#define HYPERHARMONIC_REPORT_HPP_

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hyperharmonic/catalog.hpp"

namespace hyperharmonic {

/// A verification outcome, or the numeric error that prevented one.
struct ReportRow {
  VerificationResult result;
  std::optional<std::string> error;
};

struct RunInfo {
  std::string command;
  std::string timestamp;
  std::uint64_t seed = kDefaultSeed;
  double tol_default = kIdentityTolerance;
};

nlohmann::ordered_json to_json(const ReportRow& row);
nlohmann::ordered_json make_report(const RunInfo& info, const std::vector<ReportRow>& rows);
nlohmann::ordered_json catalog_json(const std::vector<CatalogEntry>& entries);

/// Two-space indented JSON with every float written as %.17g, so parsing
/// the output and serializing again reproduces it byte for byte.
std::string serialize(const nlohmann::ordered_json& value);

/// "0.25", "0.29999999999999999+0.10000000000000001i".
std::string format_complex(Complex z);
/// "a=0.25;b=0.3+0.1i" in the given parameter order.
std::string format_point(const Params& point, const std::vector<std::string>& order);

std::string csv_field(const std::string& text);

/// UTC time as 2026-01-31T12:00:00Z.
std::string utc_timestamp();

}  // namespace hyperharmonic

#endif  // HYPERHARMONIC_REPORT_HPP_
