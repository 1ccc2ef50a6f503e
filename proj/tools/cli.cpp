#include "cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cylqft/kernels.hpp"

namespace cylqft::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_integer(const std::string& key, const std::string& value) {
  T out{};
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || value.empty()) {
    throw ConfigError(key, "expected an integer, got '" + value + "'");
  }
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty() || !std::isfinite(out)) {
    throw ConfigError(key, "expected a real number, got '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError(key, "expected true or false, got '" + value + "'");
}

void apply(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "n_max") {
    cfg.n_max = parse_integer<int>(key, value);
  } else if (key == "K") {
    cfg.K = parse_integer<int>(key, value);
  } else if (key == "hbar_trunc") {
    cfg.hbar_trunc = parse_integer<std::size_t>(key, value);
  } else if (key == "band_limit") {
    cfg.band_limit = parse_integer<int>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "output_dir") {
    if (value.empty()) throw ConfigError(key, "empty path");
    cfg.output_dir = value;
  } else if (key == "deterministic") {
    cfg.deterministic = parse_bool(key, value);
  } else if (std::find(tolerance_keys().begin(), tolerance_keys().end(), key) != tolerance_keys().end()) {
    const double t = parse_real(key, value);
    if (!(t > 0.0)) throw ConfigError(key, "tolerance must be positive");
    cfg.tolerances[key] = t;
  } else {
    throw ConfigError(key, "unknown configuration key");
  }
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

const std::vector<std::string>& tolerance_keys() {
  static const std::vector<std::string> keys = {"tol_abel",     "tol_anomaly", "tol_cocycle", "tol_kernel",
                                                "tol_primary",  "tol_route",   "tol_weighted"};
  return keys;
}

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "missing key");
    if (!kv.emplace(key, value).second) throw ConfigError(key, "duplicate key");
  }
  return kv;
}

KeyValues read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

void validate(const RunConfig& cfg) {
  if (cfg.n_max < 1) throw ConfigError("n_max", "must be >= 1 (got " + std::to_string(cfg.n_max) + ")");
  if (cfg.K < 4 * cfg.n_max) {
    throw ConfigError("K", "must be >= 4*n_max = " + std::to_string(4 * cfg.n_max) + " (got " +
                               std::to_string(cfg.K) + ")");
  }
  if (cfg.hbar_trunc < 2) throw ConfigError("hbar_trunc", "must be >= 2 (got " + std::to_string(cfg.hbar_trunc) + ")");
  if (cfg.band_limit < 0) throw ConfigError("band_limit", "must be >= 0 (got " + std::to_string(cfg.band_limit) + ")");
}

RunConfig parse_config(const KeyValues& file_values, const KeyValues& flag_values) {
  RunConfig cfg;
  for (const auto& [k, v] : file_values) apply(cfg, k, v);
  for (const auto& [k, v] : flag_values) apply(cfg, k, v);
  validate(cfg);
  return cfg;
}

std::string dump_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "# effective configuration\n";
  os << "n_max = " << cfg.n_max << "\n";
  os << "K = " << cfg.K << "\n";
  os << "hbar_trunc = " << cfg.hbar_trunc << "\n";
  os << "band_limit = " << cfg.band_limit << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "output_dir = " << cfg.output_dir.string() << "\n";
  os << "deterministic = " << (cfg.deterministic ? "true" : "false") << "\n";
  for (const auto& [k, v] : cfg.tolerances) os << k << " = " << format_real(v) << "\n";
  return os.str();
}

SuiteOptions to_suite_options(const RunConfig& cfg) {
  SuiteOptions o;
  o.n_max = cfg.n_max;
  o.K = cfg.K;
  o.hbar_trunc = cfg.hbar_trunc;
  o.band_limit = cfg.band_limit;
  o.seed = cfg.seed;
  o.deterministic = cfg.deterministic;
  auto set = [&](const char* key, double& slot) {
    if (auto it = cfg.tolerances.find(key); it != cfg.tolerances.end()) slot = it->second;
  };
  set("tol_abel", o.tol.abel);
  set("tol_anomaly", o.tol.anomaly);
  set("tol_cocycle", o.tol.cocycle);
  set("tol_kernel", o.tol.kernel);
  set("tol_primary", o.tol.primary);
  set("tol_route", o.tol.route);
  set("tol_weighted", o.tol.weighted);
  return o;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
  }
  fs::rename(tmp, path);
}

const std::vector<std::string>& kernel_names() {
  static const std::vector<std::string> names = {"diag-diff", "e-cyl", "e-mink", "w-cyl"};
  return names;
}

std::string kernel_csv(const std::string& name, int n) {
  if (n < 1) throw std::invalid_argument("grid size must be >= 1");
  // w-cyl is the chiral vacuum kernel at a fixed small regulator.
  constexpr double kWcylEps = 1e-3;
  std::function<double(double, double)> value;
  if (name == "e-mink") {
    value = [](double du, double dv) { return eval_E_mink({du, dv}, {0.0, 0.0}); };
  } else if (name == "e-cyl") {
    value = [](double du, double dv) { return eval_E_cyl({du, dv}, {0.0, 0.0}); };
  } else if (name == "w-cyl") {
    value = [](double du, double) { return eval_dW_cyl_closed(du, 0.0, kWcylEps).real(); };
  } else if (name == "diag-diff") {
    value = [](double du, double) { return diag_difference(du); };
  } else {
    throw std::invalid_argument("unknown kernel '" + name + "'");
  }
  const double step = 2.0 * kTwoPi / n;
  std::string out = "u_sep,v_sep,value\n";
  out.reserve(out.size() + static_cast<std::size_t>(n) * n * 64);
  char buf[96];
  for (int i = 0; i < n; ++i) {
    const double du = -kTwoPi + (i + 0.5) * step;
    for (int j = 0; j < n; ++j) {
      const double dv = -kTwoPi + (j + 0.5) * step;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", du, dv, value(du, dv));
      out += buf;
    }
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"cylqft: exact star products, Virasoro checks and conformal kernels"};
  app.require_subcommand(1);

  std::optional<int> n_max;
  std::optional<int> k_trunc;
  std::optional<std::size_t> hbar_order;
  std::optional<int> band_limit;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> config_path;
  std::optional<std::string> out_dir;
  std::string format = "json";
  bool deterministic = false;

  app.fallthrough();
  app.add_option("--n-max", n_max, "largest mode index |n| in the tables");
  app.add_option("--k-trunc", k_trunc, "truncation K of the quadratic generators");
  app.add_option("--hbar-order", hbar_order, "truncation order of hbar series");
  app.add_option("--band-limit", band_limit, "band limit of random configurations");
  app.add_option("--seed", seed, "seed for randomized checks");
  app.add_option("--config", config_path, "flat key = value configuration file");
  app.add_option("--out-dir", out_dir, "directory for reports");
  app.add_option("--format", format, "report format (json)");
  app.add_flag("--deterministic", deterministic, "zero runtimes so reports are byte-identical");

  auto* verify = app.add_subcommand("verify", "run verification suites and write JSON reports");
  std::vector<std::string> suites;
  verify->add_option("suites", suites, "suite names (see list-suites)")->required();

  auto* dump = app.add_subcommand("dump-kernel", "write a kernel grid as CSV");
  std::string kernel;
  int grid = 64;
  std::string csv_path;
  dump->add_option("name", kernel, "kernel: e-mink, e-cyl, w-cyl, diag-diff")->required();
  dump->add_option("--grid", grid, "grid points per axis");
  dump->add_option("--out", csv_path, "output CSV path (default <out-dir>/<name>.csv)");

  auto* list = app.add_subcommand("list-suites", "print suite identifiers");
  for (auto* sub : {verify, dump, list}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  RunConfig cfg;
  try {
    KeyValues file_values;
    if (config_path) file_values = read_config_file(*config_path);
    KeyValues flags;
    if (n_max) flags["n_max"] = std::to_string(*n_max);
    if (k_trunc) flags["K"] = std::to_string(*k_trunc);
    if (hbar_order) flags["hbar_trunc"] = std::to_string(*hbar_order);
    if (band_limit) flags["band_limit"] = std::to_string(*band_limit);
    if (seed) flags["seed"] = std::to_string(*seed);
    if (out_dir) flags["output_dir"] = *out_dir;
    if (deterministic) flags["deterministic"] = "true";
    cfg = parse_config(file_values, flags);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kUsage;
  }
  if (format != "json") {
    err << "error: unsupported format '" << format << "' (only json)\n";
    return kUsage;
  }

  if (list->parsed()) {
    for (const auto& s : suite_names()) out << s << "\n";
    return kOk;
  }

  if (dump->parsed()) {
    if (std::find(kernel_names().begin(), kernel_names().end(), kernel) == kernel_names().end()) {
      err << "error: unknown kernel '" << kernel << "'\n";
      return kUsage;
    }
    if (grid < 1) {
      err << "error: --grid must be >= 1\n";
      return kUsage;
    }
    const std::filesystem::path path = csv_path.empty() ? cfg.output_dir / (kernel + ".csv") : std::filesystem::path(csv_path);
    try {
      write_atomic(path, kernel_csv(kernel, grid));
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    }
    out << kernel << ": " << grid * grid << " rows -> " << path.string() << "\n";
    return kOk;
  }

  for (const auto& s : suites) {
    if (!is_suite(s)) {
      err << "error: unknown suite '" << s << "'\n";
      return kUsage;
    }
  }
  const SuiteOptions opt = to_suite_options(cfg);
  bool failed = false;
  try {
    write_atomic(cfg.output_dir / "effective_config.ini", dump_config(cfg));
    for (const auto& s : suites) {
      const SuiteReport r = run_suite(s, opt);
      const auto path = cfg.output_dir / (s + ".json");
      write_atomic(path, to_json(r));
      out << s << ": " << r.checks.size() - r.failures() << "/" << r.checks.size() << " checks passed -> "
          << path.string() << "\n";
      for (const auto& c : r.checks) {
        if (!c.pass) err << "  FAIL " << s << " " << c.check_id << ": expected " << c.expected << ", got " << c.actual << "\n";
      }
      failed = failed || !r.all_passed();
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return failed ? kCheckFailure : kOk;
}

}  // namespace cylqft::cli
