#include "hyperharmonic/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "hyperharmonic/report.hpp"

namespace hyperharmonic::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

// A decimal number or a fraction p/q.
std::optional<double> parse_real(std::string_view s) {
  s = trim(s);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_number(s);
  const auto num = parse_number(s.substr(0, slash));
  const auto den = parse_number(s.substr(slash + 1));
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

// Coefficient of i: "", "+" and "-" mean 1, 1 and -1.
std::optional<double> parse_imaginary(std::string_view s) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

struct Task {
  std::string id;
  bool transformation = false;
  std::vector<std::string> parameters;
  double default_tol = kIdentityTolerance;
  Params point;
};

struct Settings {
  std::optional<double> tol;
  long max_terms = kDefaultMaxTerms;
  int jobs = 1;
};

ReportRow execute(const Registry& registry, const Task& task, const Settings& settings) {
  ReportRow row;
  const double tol = settings.tol.value_or(0.0);
  try {
    row.result = task.transformation
                     ? verify_transformation(registry, task.id, task.point, tol,
                                             settings.max_terms)
                     : verify(registry, task.id, task.point, tol, true, settings.max_terms);
  } catch (const std::exception& e) {
    row.result.id = task.id;
    row.result.parameter_order = task.parameters;
    row.result.point = task.point;
    row.result.tol = settings.tol.value_or(task.default_tol);
    row.error = e.what();
  }
  return row;
}

// Workers pull tasks by index; rows land in task order whatever the timing.
std::vector<ReportRow> execute_all(const Registry& registry, const std::vector<Task>& tasks,
                                   const Settings& settings) {
  std::vector<ReportRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      rows[i] = execute(registry, tasks[i], settings);
    }
  };
  const auto width = std::min<std::size_t>(static_cast<std::size_t>(settings.jobs), tasks.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t k = 1; k < width; ++k) pool.emplace_back(worker);
    worker();
  }
  return rows;
}

int exit_code(const std::vector<ReportRow>& rows) {
  const bool numeric = std::any_of(rows.begin(), rows.end(),
                                   [](const ReportRow& r) { return r.error.has_value(); });
  if (numeric) return kExitNumeric;
  const bool mismatch = std::any_of(rows.begin(), rows.end(),
                                    [](const ReportRow& r) { return !r.result.pass; });
  return mismatch ? kExitMismatch : kExitPass;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render_rows_text(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  std::size_t passed = 0, failed = 0, errors = 0;
  for (const ReportRow& row : rows) {
    const VerificationResult& r = row.result;
    const std::string point = format_point(r.point, r.parameter_order);
    char head[64];
    if (row.error) {
      ++errors;
      std::snprintf(head, sizeof head, "ERROR %-11s", r.id.c_str());
      os << head << ' ' << point << "  " << *row.error << '\n';
      continue;
    }
    (r.pass ? passed : failed)++;
    std::snprintf(head, sizeof head, "%-5s %-11s", r.pass ? "PASS" : "FAIL", r.id.c_str());
    os << head << ' ' << (point.empty() ? "-" : point) << "  rel_err=" << sci(r.rel_err)
       << " abs_err=" << sci(r.abs_err) << " tol=" << sci(r.tol) << " terms=" << r.terms_used
       << ' ' << r.method << '\n';
    if (!r.note.empty()) os << "      note: " << r.note << '\n';
  }
  os << rows.size() << " rows: " << passed << " passed, " << failed << " failed, " << errors
     << " errors\n";
  return os.str();
}

std::string render_rows_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "id,point,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,tol,terms_used,method,pass,error\n";
  for (const ReportRow& row : rows) {
    const VerificationResult& r = row.result;
    os << csv_field(r.id) << ',' << csv_field(format_point(r.point, r.parameter_order)) << ',';
    if (row.error) {
      os << ",,,,,," << full(r.tol) << ',' << r.terms_used << ",none,false,"
         << csv_field(*row.error) << '\n';
      continue;
    }
    os << full(r.lhs.real()) << ',' << full(r.lhs.imag()) << ',' << full(r.rhs.real()) << ','
       << full(r.rhs.imag()) << ',' << full(r.abs_err) << ',' << full(r.rel_err) << ','
       << full(r.tol) << ',' << r.terms_used << ',' << r.method << ','
       << (r.pass ? "true" : "false") << ",\n";
  }
  return os.str();
}

std::string render_sweep_csv(const std::string& name, const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << csv_field(name) << ",lhs_re,lhs_im,rhs_re,rhs_im,rel_err,terms_used,pass,error\n";
  for (const ReportRow& row : rows) {
    const VerificationResult& r = row.result;
    os << format_complex(r.point.at(name)) << ',';
    if (row.error) {
      os << ",,,,," << r.terms_used << ",false," << csv_field(*row.error) << '\n';
      continue;
    }
    os << full(r.lhs.real()) << ',' << full(r.lhs.imag()) << ',' << full(r.rhs.real()) << ','
       << full(r.rhs.imag()) << ',' << full(r.rel_err) << ',' << r.terms_used << ','
       << (r.pass ? "true" : "false") << ",\n";
  }
  return os.str();
}

std::string render_catalog(const std::vector<CatalogEntry>& entries, const std::string& format) {
  if (format == "json") return serialize(catalog_json(entries));
  std::ostringstream os;
  if (format == "csv") {
    os << "id,kind,params,points,citation\n";
    for (const CatalogEntry& e : entries) {
      std::string params;
      for (const std::string& p : e.parameters) params += (params.empty() ? "" : ";") + p;
      os << csv_field(e.id) << ',' << e.kind << ',' << csv_field(params) << ','
         << e.default_points << ',' << csv_field(e.citation) << '\n';
    }
    return os.str();
  }
  for (const CatalogEntry& e : entries) {
    std::string params;
    for (const std::string& p : e.parameters) params += (params.empty() ? "" : ",") + p;
    char line[96];
    std::snprintf(line, sizeof line, "%-11s %-14s %-9s %3zu  ", e.id.c_str(), e.kind.c_str(),
                  params.empty() ? "-" : params.c_str(), e.default_points);
    os << line << e.citation << '\n';
  }
  return os.str();
}

Task make_task(const Registry& registry, const std::string& id, Params point) {
  Task task;
  task.id = id;
  task.point = std::move(point);
  for (const Transformation& t : registry.transformations()) {
    if (t.id == id) {
      task.transformation = true;
      task.parameters = t.parameters;
      task.default_tol = t.tol;
      return task;
    }
  }
  const Identity& identity = registry.identity(id);
  task.parameters = identity.parameters;
  task.default_tol = identity.tol;
  return task;
}

const std::vector<Params>& default_points(const Registry& registry, const std::string& id) {
  for (const Transformation& t : registry.transformations()) {
    if (t.id == id) return t.default_points;
  }
  return registry.identity(id).default_points;
}

std::optional<std::uint64_t> parse_seed(std::string_view s) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::optional<Complex> parse_value(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) return std::nullopt;
  if (s.back() != 'i') {
    const auto re = parse_real(s);
    if (!re) return std::nullopt;
    return Complex(*re, 0.0);
  }
  s.remove_suffix(1);
  // The split is the last sign that is not part of an exponent.
  std::size_t split_at = std::string_view::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split_at = i;
      break;
    }
  }
  if (split_at == std::string_view::npos) {
    const auto im = parse_imaginary(s);
    if (!im) return std::nullopt;
    return Complex(0.0, *im);
  }
  const auto re = parse_real(s.substr(0, split_at));
  const auto im = parse_imaginary(s.substr(split_at));
  if (!re || !im) return std::nullopt;
  return Complex(*re, *im);
}

std::optional<Params> parse_params(std::string_view text) {
  Params params;
  for (std::string_view item : split(text, ',')) {
    item = trim(item);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) return std::nullopt;
    const std::string name(trim(item.substr(0, eq)));
    const auto value = parse_value(item.substr(eq + 1));
    if (name.empty() || !value || params.count(name)) return std::nullopt;
    params[name] = *value;
  }
  return params;
}

std::optional<SweepRange> parse_range(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) return std::nullopt;
  const auto fields = split(text.substr(eq + 1), ':');
  if (fields.size() != 3) return std::nullopt;
  SweepRange r;
  r.name = std::string(trim(text.substr(0, eq)));
  const auto lo = parse_real(fields[0]);
  const auto hi = parse_real(fields[1]);
  const auto steps = parse_seed(fields[2]);
  if (r.name.empty() || !lo || !hi || !steps || *steps == 0 || *steps > 100000) {
    return std::nullopt;
  }
  r.lo = *lo;
  r.hi = *hi;
  r.steps = static_cast<int>(*steps);
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Registry* registry) {
  CLI::App app{"Evaluate and verify harmonic-number series identities", "hyperharmonic"};
  std::string command;
  bool all = false;
  std::vector<std::string> ids;
  std::string params_text;
  std::string range_text;
  std::string format;
  std::string out_path;
  double tol = 0.0;
  long max_terms = kDefaultMaxTerms;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::uint64_t seed = kDefaultSeed;

  app.add_option("command", command, "list, verify or sweep")
      ->required()
      ->check(CLI::IsMember({"list", "verify", "sweep"}));
  app.add_flag("--all", all, "Select every identity and transformation");
  app.add_option("--id", ids, "Comma-separated ids")->delimiter(',');
  auto* params_opt = app.add_option("--params", params_text, "Parameter point, k=v,...");
  auto* range_opt = app.add_option("--range", range_text, "Sweep range p=lo:hi:n");
  auto* tol_opt = app.add_option("--tol", tol, "Tolerance override")->check(CLI::PositiveNumber);
  app.add_option("--max-terms", max_terms, "Series term cap")->check(CLI::PositiveNumber);
  auto* format_opt = app.add_option("--format", format, "json, csv or text")
                         ->check(CLI::IsMember({"json", "csv", "text"}));
  auto* out_opt = app.add_option("--out", out_path, "Write output to a file");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for randomly drawn default points");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }
  const auto usage = [&err](const std::string& message) {
    err << "usage error: " << message << '\n';
    return kExitUsage;
  };

  if (const char* env = std::getenv("HYPERHARMONIC_SEED")) {
    const auto parsed = parse_seed(env);
    if (!parsed) return usage("HYPERHARMONIC_SEED must be a non-negative integer");
    seed = *parsed;
  }
  if (*tol_opt && !std::isfinite(tol)) return usage("--tol must be finite");

  std::optional<Registry> owned;
  const Registry& reg = registry ? *registry : owned.emplace(seed);

  for (const std::string& id : ids) {
    if (!reg.contains(id)) return usage("unknown id '" + id + "'");
  }
  if (all && !ids.empty()) return usage("--all and --id are mutually exclusive");

  std::optional<Params> override_point;
  if (*params_opt) {
    override_point = parse_params(params_text);
    if (!override_point) return usage("cannot parse --params '" + params_text + "'");
  }
  if (!format_opt->count()) format = command == "list" ? "text" : command == "verify" ? "json" : "csv";

  // Selected ids in registry order.
  std::vector<std::string> selected;
  for (const CatalogEntry& e : list_identities(reg)) {
    if (all || std::find(ids.begin(), ids.end(), e.id) != ids.end()) selected.push_back(e.id);
  }

  std::string output;
  int code = kExitPass;
  RunInfo info{command, utc_timestamp(), reg.seed(), *tol_opt ? tol : kIdentityTolerance};
  const Settings settings{*tol_opt ? std::optional<double>(tol) : std::nullopt, max_terms, jobs};

  if (command == "list") {
    if (*range_opt || *params_opt) return usage("list takes no --params or --range");
    auto entries = list_identities(reg);
    if (!ids.empty()) {
      std::erase_if(entries, [&](const CatalogEntry& e) {
        return std::find(selected.begin(), selected.end(), e.id) == selected.end();
      });
    }
    output = render_catalog(entries, format);
  } else if (command == "verify") {
    if (*range_opt) return usage("--range applies to sweep only");
    if (selected.empty()) return usage("verify needs --all or --id");
    std::vector<Task> tasks;
    for (const std::string& id : selected) {
      if (override_point) {
        tasks.push_back(make_task(reg, id, *override_point));
      } else {
        for (const Params& p : default_points(reg, id)) tasks.push_back(make_task(reg, id, p));
      }
    }
    const auto rows = execute_all(reg, tasks, settings);
    code = exit_code(rows);
    if (format == "json") {
      output = serialize(make_report(info, rows));
    } else if (format == "csv") {
      output = render_rows_csv(rows);
    } else {
      output = render_rows_text(rows);
    }
  } else {
    if (all || ids.size() != 1) return usage("sweep needs exactly one --id");
    if (!*range_opt) return usage("sweep needs --range p=lo:hi:n");
    const auto range = parse_range(range_text);
    if (!range) return usage("cannot parse --range '" + range_text + "' (steps must be >= 1)");
    const std::string& id = ids.front();
    Task probe = make_task(reg, id, {});
    if (std::find(probe.parameters.begin(), probe.parameters.end(), range->name) ==
        probe.parameters.end()) {
      return usage(id + " has no parameter '" + range->name + "'");
    }
    Params base;
    if (override_point) {
      base = *override_point;
    } else if (!default_points(reg, id).empty()) {
      base = default_points(reg, id).front();
    }
    std::vector<Task> tasks;
    for (int i = 0; i < range->steps; ++i) {
      const double t = range->steps == 1 ? 0.0 : static_cast<double>(i) / (range->steps - 1);
      Params p = base;
      p[range->name] = range->lo + t * (range->hi - range->lo);
      tasks.push_back(make_task(reg, id, std::move(p)));
    }
    const auto rows = execute_all(reg, tasks, settings);
    code = exit_code(rows);
    if (format == "json") {
      output = serialize(make_report(info, rows));
    } else if (format == "csv") {
      output = render_sweep_csv(range->name, rows);
    } else {
      output = render_rows_text(rows);
    }
  }

  if (*out_opt) {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) return usage("cannot open --out '" + out_path + "' for writing");
    file << output;
    if (!file) return usage("cannot write --out '" + out_path + "'");
  } else {
    out << output;
  }
  return code;
}

}  // namespace hyperharmonic::cli
