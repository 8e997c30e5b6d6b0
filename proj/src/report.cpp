#include "hyperharmonic/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

namespace hyperharmonic {

namespace {

using nlohmann::ordered_json;

std::string format_double(double v) {
  if (v == 0.0) return "0";  // no "-0", which would re-parse as an integer
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json complex_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

void write(const ordered_json& v, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (v.type()) {
    case ordered_json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += ordered_json(it.key()).dump();
        out += ": ";
        write(it.value(), out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Scalar arrays such as [re, im] stay on one line.
      const bool flat = std::none_of(v.begin(), v.end(), [](const ordered_json& e) {
        return e.is_structured();
      });
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        write(e, out, depth + 1);
      }
      out += flat ? "]" : "\n" + close_pad + "]";
      return;
    }
    case ordered_json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_double(d) : "null";
      return;
    }
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_double(z.real());
  std::string s = format_double(z.real());
  if (z.imag() >= 0.0) s += '+';
  return s + format_double(z.imag()) + "i";
}

std::string format_point(const Params& point, const std::vector<std::string>& order) {
  std::string s;
  for (const std::string& name : order) {
    const auto it = point.find(name);
    if (it == point.end()) continue;
    if (!s.empty()) s += ';';
    s += name + "=" + format_complex(it->second);
  }
  return s;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ordered_json to_json(const ReportRow& row) {
  const VerificationResult& r = row.result;
  ordered_json j;
  j["id"] = r.id;
  ordered_json point = ordered_json::object();
  for (const std::string& name : r.parameter_order) {
    const auto it = r.point.find(name);
    if (it != r.point.end()) point[name] = complex_json(it->second);
  }
  j["point"] = point;
  if (row.error) {
    j["lhs"] = nullptr;
    j["rhs"] = nullptr;
    j["abs_err"] = nullptr;
    j["rel_err"] = nullptr;
  } else {
    j["lhs"] = complex_json(r.lhs);
    j["rhs"] = complex_json(r.rhs);
    j["abs_err"] = r.abs_err;
    j["rel_err"] = r.rel_err;
  }
  j["tol"] = r.tol;
  j["terms_used"] = r.terms_used;
  j["method"] = row.error ? "none" : r.method;
  j["pass"] = !row.error && r.pass;
  if (!r.note.empty()) j["note"] = r.note;
  if (row.error) j["error"] = *row.error;
  return j;
}

ordered_json make_report(const RunInfo& info, const std::vector<ReportRow>& rows) {
  ordered_json run;
  run["command"] = info.command;
  run["timestamp"] = info.timestamp;
  run["seed"] = info.seed;
  run["tol_default"] = info.tol_default;
  std::size_t passed = 0, failed = 0, errors = 0;
  ordered_json results = ordered_json::array();
  for (const ReportRow& row : rows) {
    results.push_back(to_json(row));
    if (row.error) {
      ++errors;
    } else if (row.result.pass) {
      ++passed;
    } else {
      ++failed;
    }
  }
  ordered_json summary;
  summary["total"] = rows.size();
  summary["passed"] = passed;
  summary["failed"] = failed;
  summary["errors"] = errors;
  ordered_json report;
  report["run"] = run;
  report["summary"] = summary;
  report["results"] = results;
  return report;
}

ordered_json catalog_json(const std::vector<CatalogEntry>& entries) {
  ordered_json out = ordered_json::array();
  for (const CatalogEntry& e : entries) {
    ordered_json j;
    j["id"] = e.id;
    j["kind"] = e.kind;
    j["citation"] = e.citation;
    j["params"] = e.parameters;
    j["points"] = e.default_points;
    out.push_back(j);
  }
  return out;
}

std::string serialize(const ordered_json& value) {
  std::string out;
  write(value, out, 0);
  out += '\n';
  return out;
}

}  // namespace hyperharmonic
