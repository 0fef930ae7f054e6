// Batch front-end: coefficient cache, evaluation, zero counting and the verify suite.

#include "lfz/asymptotics.hpp"
#include "lfz/coefficients.hpp"
#include "lfz/errors.hpp"
#include "lfz/io.hpp"
#include "lfz/lfunction.hpp"
#include "lfz/verify.hpp"
#include "lfz/zeros.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace lfz;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void note(const std::string& s) { std::cerr << "[lfz] " << s << std::endl; }

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw UsageError(what + ": not a number: '" + s + "'");
  return v;
}

int to_int(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw UsageError(what + ": not an integer: '" + s + "'");
  return static_cast<int>(v);
}

// "lo:hi:step", both ends included
std::vector<double> parse_grid(const std::string& s) {
  const auto parts = [&] {
    std::vector<std::string> p;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ':')) p.push_back(trim(item));
    return p;
  }();
  if (parts.size() != 3) throw UsageError("grid must look like lo:hi:step, got '" + s + "'");
  const double lo = to_double(parts[0], "grid"), hi = to_double(parts[1], "grid"), step = to_double(parts[2], "grid");
  if (!(step > 0)) throw UsageError("grid step must be positive");
  std::vector<double> out;
  for (int i = 0; lo + i * step <= hi + 1e-9 * step; ++i) out.push_back(lo + i * step);
  return out;
}

// a, a+bi, a-bi, bi, or "a,b"
cplx parse_complex(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  const std::string num = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
  std::smatch m;
  if (std::regex_match(s, m, std::regex("([+-]?" + num + ")")))
    return {std::stod(m[1]), 0.0};
  if (std::regex_match(s, m, std::regex("([+-]?" + num + ")?[ij]")))
    return {0.0, m[1].matched ? std::stod(m[1]) : 1.0};
  if (std::regex_match(s, m, std::regex("([+-]?" + num + ")([+-])(" + num + ")?[ij]"))) {
    const double im = m[3].matched ? std::stod(m[3]) : 1.0;
    return {std::stod(m[1]), m[2] == "-" ? -im : im};
  }
  if (std::regex_match(s, m, std::regex("([+-]?" + num + "),([+-]?" + num + ")"))) return {std::stod(m[1]), std::stod(m[2])};
  throw UsageError("cannot read a complex number from '" + s + "'");
}

// ---------------------------------------------------------------------------
// configuration

struct RunConfig {
  int weight = 12;
  std::vector<int> orders{0, 1, 2};
  std::vector<double> heights{20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::vector<double> sigmas{0.55, 0.65, 0.75, 0.85, 0.95};
  Precision precision = Precision::standard;
  int jobs = 1;
  fs::path out = "out";
  fs::path cache = "cache";
  std::size_t table_length = 100000;
};

const std::vector<std::string> kKeys = {"weight", "m",    "T",     "sigma", "grid",
                                        "precision", "jobs", "out", "cache", "table_length"};

std::map<std::string, std::string> read_config_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path.string() + ":" + std::to_string(no) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
      throw UsageError(path.string() + ":" + std::to_string(no) + ": unknown key '" + key + "'");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

RunConfig resolve(const std::map<std::string, std::string>& kv) {
  RunConfig c;
  auto has = [&](const char* k) { return kv.count(k) > 0; };
  if (has("weight")) {
    c.weight = to_int(kv.at("weight"), "weight");
    const auto& w = EigenformSpec::admissible_weights();
    if (std::find(w.begin(), w.end(), c.weight) == w.end())
      throw UsageError("weight must be one of 12, 16, 18, 20, 22, 26");
  }
  if (has("m")) {
    c.orders.clear();
    for (const auto& s : split_list(kv.at("m"))) c.orders.push_back(to_int(s, "m"));
    if (c.orders.empty()) throw UsageError("derivative order list is empty");
    for (int m : c.orders)
      if (m < 0 || m > 4) throw UsageError("derivative orders must lie in 0..4");
    std::sort(c.orders.begin(), c.orders.end());
    c.orders.erase(std::unique(c.orders.begin(), c.orders.end()), c.orders.end());
  }
  if (has("T") && has("grid")) throw UsageError("give either T or grid, not both");
  if (has("T") || has("grid")) {
    c.heights.clear();
    if (has("T"))
      for (const auto& s : split_list(kv.at("T"))) c.heights.push_back(to_double(s, "T"));
    else
      c.heights = parse_grid(kv.at("grid"));
    std::sort(c.heights.begin(), c.heights.end());
    c.heights.erase(std::unique(c.heights.begin(), c.heights.end()), c.heights.end());
  }
  if (c.heights.empty()) throw UsageError("T grid is empty");
  for (double T : c.heights)
    if (!(T > 0) || T > 100) throw UsageError("T values must lie in (0, 100]");
  if (has("sigma")) {
    c.sigmas.clear();
    for (const auto& s : split_list(kv.at("sigma"))) c.sigmas.push_back(to_double(s, "sigma"));
    if (c.sigmas.empty()) throw UsageError("sigma grid is empty");
  }
  if (has("precision")) {
    const auto& p = kv.at("precision");
    if (p == "double")
      c.precision = Precision::standard;
    else if (p == "extended")
      c.precision = Precision::extended;
    else
      throw UsageError("precision must be double or extended");
  }
  if (has("jobs")) {
    c.jobs = to_int(kv.at("jobs"), "jobs");
    if (c.jobs < 1 || c.jobs > 256) throw UsageError("jobs must lie in 1..256");
  }
  if (has("out")) c.out = kv.at("out");
  if (has("cache")) c.cache = kv.at("cache");
  if (c.cache == "none") c.cache.clear();
  if (has("table_length")) {
    const int n = to_int(kv.at("table_length"), "table_length");
    if (n < 10000 || n > 2000000) throw UsageError("table_length must lie in [10^4, 2 * 10^6]");
    c.table_length = static_cast<std::size_t>(n);
  }
  return c;
}

void require_sigmas_above_half(const RunConfig& c) {
  for (double s : c.sigmas)
    if (!(s > 0.5)) throw UsageError("sigma values must exceed 1/2");
}

// ---------------------------------------------------------------------------
// shared plumbing

std::shared_ptr<const CoefficientTable> load(const RunConfig& c, int weight) {
  std::vector<std::string> events;
  fs::path file;
  if (!c.cache.empty()) {
    fs::create_directories(c.cache);
    file = cache_file(c.cache, weight);
  }
  auto t = std::make_shared<CoefficientTable>(load_or_build(EigenformSpec(weight), c.table_length, file, &events));
  for (const auto& e : events) note(e);
  return t;
}

EvaluatorOptions evaluator_options(const RunConfig& c) {
  EvaluatorOptions o;
  o.precision = c.precision;
  return o;
}

ZeroOptions zero_options(const RunConfig& c) {
  ZeroOptions o;
  o.jobs = c.jobs;
  return o;
}

std::string num(double x) { return format_double(x); }
std::string num(std::size_t x) { return std::to_string(x); }
std::string num(int x) { return std::to_string(x); }

json provenance(const LFunctionEvaluator& ev, const RunConfig& c) {
  json p;
  p["weight"] = ev.weight();
  p["table_length"] = ev.table().length();
  p["n_f"] = ev.table().n_f();
  p["precision"] = c.precision == Precision::extended ? "extended" : "double";
  p["series_threshold"] = ev.options().series_threshold;
  p["sigma_left"] = ev.options().sigma_left;
  p["series_max_terms"] = ev.options().series_max_terms;
  p["series_rel_tolerance"] = ev.options().series_rel_tolerance;
  const auto rc = ev.regime_counts();
  p["regime_evaluations"] = {{"series", rc[0]}, {"completed", rc[1]}, {"reflected", rc[2]}};
  return p;
}

json strip_provenance(const ZeroFinder& zf, int m) {
  const auto z = zf.zero_free_certify(m);
  return {{"sigma_right", z.sigma_right}, {"alpha", z.alpha_left}, {"delta", z.delta}, {"certificate", z.method}};
}

void write_outputs(const RunConfig& c, const std::string& stem, const CsvTable& csv, const json& rows) {
  const fs::path csv_path = c.out / (stem + ".csv"), json_path = c.out / (stem + ".json");
  write_atomically(csv_path, csv.str());
  write_atomically(json_path, rows.dump(2) + "\n");
  note("wrote " + csv_path.string() + " and " + json_path.string() + " (" + std::to_string(csv.rows()) + " rows)");
}

// ---------------------------------------------------------------------------
// commands

int cmd_eval(const RunConfig& c, const std::string& text) {
  const cplx s = parse_complex(text);
  LFunctionEvaluator ev(load(c, c.weight), evaluator_options(c));
  for (int m : c.orders) {
    const auto r = ev.eval(s, m);
    json j;
    j["weight"] = c.weight;
    j["m"] = m;
    j["s_re"] = s.real();
    j["s_im"] = s.imag();
    j["value_re"] = r.value.real();
    j["value_im"] = r.value.imag();
    j["error_estimate"] = r.error_estimate;
    j["regime"] = regime_name(r.regime);
    std::cout << j.dump() << "\n";
  }
  return 0;
}

int cmd_coeffs(const RunConfig& c, std::size_t rows) {
  const auto t = load(c, c.weight);
  rows = std::min(rows, t->length());
  CsvTable csv({"n", "a_n", "lambda_n"});
  for (std::size_t n = 1; n <= rows; ++n) csv.add_row({num(n), t->a(n).str(), num(t->lambda(n))});
  const auto d = deligne_check(*t);
  const auto f = rankin_fit(*t);
  json j;
  j["weight"] = c.weight;
  j["label"] = t->spec().label();
  j["table_length"] = t->length();
  j["rows_written"] = rows;
  j["n_f"] = t->n_f();
  j["lambda_n_f"] = t->lambda(t->n_f());
  j["deligne_max_ratio"] = d.max_ratio;
  j["deligne_argmax"] = d.argmax;
  j["rankin_C_hat"] = f.C_hat;
  j["rankin_drift_exponent"] = f.drift_exponent;
  j["cache_file"] = c.cache.empty() ? "" : cache_file(c.cache, c.weight).string();
  write_outputs(c, "coeffs_k" + std::to_string(c.weight), csv, json::array({j}));
  return 0;
}

int cmd_zeros(const RunConfig& c) {
  LFunctionEvaluator ev(load(c, c.weight), evaluator_options(c));
  ZeroFinder zf(ev, zero_options(c));
  const double T = c.heights.back();
  CsvTable csv({"m", "re", "im", "residual", "isolation_radius", "method", "multiplicity", "flagged"});
  json rows = json::array();
  for (int m : c.orders) {
    const auto rect = zf.strip(T, m);
    auto zs = zf.isolate_zeros(rect, m);
    std::sort(zs.begin(), zs.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
      return a.location.imag() != b.location.imag() ? a.location.imag() < b.location.imag()
                                                    : a.location.real() < b.location.real();
    });
    int flagged = 0;
    for (const auto& z : zs) {
      flagged += z.flagged;
      csv.add_row({num(m), num(z.location.real()), num(z.location.imag()), num(z.residual), num(z.isolation_radius),
                   method_name(z.method), num(z.multiplicity), z.flagged ? "1" : "0"});
    }
    json j;
    j["m"] = m;
    j["T"] = T;
    j["zeros"] = zs.size();
    j["flagged"] = flagged;
    j["rectangle"] = {{"sigma_min", rect.sigma_min}, {"sigma_max", rect.sigma_max}, {"t_min", rect.t_min}, {"t_max", rect.t_max}};
    j["strip"] = strip_provenance(zf, m);
    rows.push_back(j);
  }
  const auto p = provenance(ev, c);
  for (auto& r : rows) r["provenance"] = p;
  write_outputs(c, "zeros", csv, rows);
  return 0;
}

int cmd_count(const RunConfig& c) {
  LFunctionEvaluator ev(load(c, c.weight), evaluator_options(c));
  ZeroFinder zf(ev, zero_options(c));
  CsvTable csv({"m", "T", "count", "main_term", "deviation", "deviation/logT"});
  json rows = json::array();
  for (int m : c.orders) {
    for (const auto& r : zf.count_to_heights(c.heights, m)) {
      csv.add_row({num(m), num(r.T), num(r.computed_count), num(r.main_term), num(r.deviation), num(r.deviation_over_logT)});
      json j;
      j["m"] = m;
      j["T"] = r.T;
      j["count"] = r.computed_count;
      j["main_term"] = r.main_term;
      j["deviation"] = r.deviation;
      j["deviation_over_logT"] = r.deviation_over_logT;
      j["rounding_gap"] = r.rounding_gap;
      j["t_shift"] = r.t_shift;
      j["evaluations"] = r.evaluations;
      j["strip"] = strip_provenance(zf, m);
      rows.push_back(j);
    }
  }
  const auto p = provenance(ev, c);
  for (auto& r : rows) r["provenance"] = p;
  write_outputs(c, "count", csv, rows);
  return 0;
}

int cmd_density(const RunConfig& c) {
  require_sigmas_above_half(c);
  LFunctionEvaluator ev(load(c, c.weight), evaluator_options(c));
  ZeroFinder zf(ev, zero_options(c));
  const double C = rankin_fit(ev.table()).C_hat;
  CsvTable csv({"m", "sigma", "T", "count", "envelope_zd2", "slack", "correction", "bound_zd1", "pass"});
  json rows = json::array();
  bool ok = true;
  for (int m : c.orders) {
    const auto k = density_constants(ev.table(), m, C);
    for (double T : c.heights)
      for (double s : c.sigmas) {
        const auto n = zf.count_right_of(s, T, m);
        const auto r = density_envelope(s, T, m, k, n.computed_count);
        ok = ok && r.pass;
        csv.add_row({num(m), num(s), num(T), num(r.empirical_count), num(r.envelope_zd2), num(r.slack), num(r.correction),
                     num(r.explicit_bound_zd1), r.pass ? "true" : "false"});
        json j;
        j["m"] = m;
        j["sigma"] = s;
        j["T"] = T;
        j["count"] = r.empirical_count;
        j["envelope_zd2"] = r.envelope_zd2;
        j["slack"] = r.slack;
        j["correction"] = r.correction;
        j["bound_zd1"] = r.explicit_bound_zd1;
        j["pass"] = r.pass;
        j["constants"] = {{"C_f", k.C_f}, {"n_f", k.n_f}, {"lambda_n_f", k.lambda_nf}, {"slack_logT", k.slack_logT},
                          {"inner_constant", k.inner_constant}};
        j["rounding_gap"] = n.rounding_gap;
        j["strip"] = strip_provenance(zf, m);
        rows.push_back(j);
      }
  }
  const auto p = provenance(ev, c);
  for (auto& r : rows) r["provenance"] = p;
  write_outputs(c, "density", csv, rows);
  if (!ok) note("some density rows exceed the explicit bound");
  return ok ? 0 : 1;
}

int cmd_meansquare(const RunConfig& c) {
  require_sigmas_above_half(c);
  for (double T : c.heights)
    if (T < 1) throw UsageError("mean squares need T >= 1");
  LFunctionEvaluator ev(load(c, c.weight), evaluator_options(c));
  CsvTable csv({"m", "sigma", "T", "integral", "quadrature_error", "reference_main", "difference", "error_order",
                "normalized_difference", "budget_exhausted"});
  json rows = json::array();
  for (int m : c.orders)
    for (double s : c.sigmas) {
      const auto ps = coefficient_power_sum(s, m, ev.table());
      for (const auto& r : mean_square_numeric(ev, s, c.heights, m)) {
        csv.add_row({num(m), num(s), num(r.T), num(r.numeric_integral), num(r.quadrature_error), num(r.reference_main),
                     num(r.difference), num(r.predicted_error_order), num(r.normalized_difference),
                     r.budget_exhausted ? "true" : "false"});
        json j;
        j["m"] = m;
        j["sigma"] = s;
        j["T"] = r.T;
        j["integral"] = r.numeric_integral;
        j["quadrature_error"] = r.quadrature_error;
        j["reference_main"] = r.reference_main;
        j["difference"] = r.difference;
        j["error_order"] = r.predicted_error_order;
        j["normalized_difference"] = r.normalized_difference;
        j["budget_exhausted"] = r.budget_exhausted;
        j["evaluations"] = r.evaluations;
        j["power_sum"] = {{"value", ps.value}, {"tail_estimate", ps.tail_estimate}, {"tail_bound", ps.tail_bound},
                          {"terms", ps.terms}};
        rows.push_back(j);
      }
    }
  const auto p = provenance(ev, c);
  for (auto& r : rows) r["provenance"] = p;
  write_outputs(c, "meansquare", csv, rows);
  return 0;
}

int cmd_littlewood(const RunConfig& c) {
  require_sigmas_above_half(c);
  LFunctionEvaluator ev(load(c, c.weight), evaluator_options(c));
  ZeroFinder zf(ev, zero_options(c));
  CsvTable csv({"m", "sigma", "sigma_right", "t_min", "T", "zeros", "lhs", "rhs", "discrepancy", "quadrature_error", "pass"});
  json rows = json::array();
  bool ok = true;
  for (int m : c.orders)
    for (double s : c.sigmas)
      for (double T : c.heights) {
        if (T <= 1) throw UsageError("littlewood rectangles start at t = 1; T must exceed 1");
        const auto r = zf.littlewood_check(s, T, m);
        const bool pass = r.discrepancy <= 1e-5 * std::max(1.0, std::abs(r.rhs));
        ok = ok && pass;
        csv.add_row({num(m), num(s), num(r.sigma_right), num(r.t_min), num(r.T), num(r.zeros_used), num(r.lhs), num(r.rhs),
                     num(r.discrepancy), num(r.quadrature_error), pass ? "true" : "false"});
        json j;
        j["m"] = m;
        j["sigma"] = s;
        j["sigma_right"] = r.sigma_right;
        j["t_min"] = r.t_min;
        j["T"] = r.T;
        j["zeros"] = r.zeros_used;
        j["lhs"] = r.lhs;
        j["rhs"] = r.rhs;
        j["discrepancy"] = r.discrepancy;
        j["quadrature_error"] = r.quadrature_error;
        j["t_shift"] = r.t_shift;
        j["pass"] = pass;
        rows.push_back(j);
      }
  const auto p = provenance(ev, c);
  for (auto& r : rows) r["provenance"] = p;
  write_outputs(c, "littlewood", csv, rows);
  return ok ? 0 : 1;
}

int cmd_verify(const RunConfig& c) {
  SuiteConfig sc;
  sc.weight = c.weight;
  sc.orders = c.orders;
  sc.heights = c.heights;
  sc.sigmas = c.sigmas;
  sc.table_length = c.table_length;
  sc.precision = c.precision;
  sc.jobs = c.jobs;
  sc.cache_dir = c.cache;
  try {
    sc.validate();
  } catch (const ContractError& e) {
    throw UsageError(e.what());
  }
  Suite suite(sc, note);
  const auto rep = suite.run_all();
  CsvTable csv({"criterion", "id", "pass", "failures", "first_failure"});
  for (const auto& k : rep.checks) {
    csv.add_row({num(k.criterion), k.id, k.pass ? "true" : "false", num(k.failures.size()),
                 k.failures.empty() ? "" : k.failures.front()});
    std::cout << "criterion " << k.criterion << " " << k.id << ": " << (k.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& f : k.failures) std::cout << "    " << f << "\n";
  }
  std::cout << (rep.all_pass() ? "all checks pass" : "some checks failed") << std::endl;
  write_outputs(c, "verify", csv, to_json(rep));
  return rep.all_pass() ? 0 : 1;
}

int run(int argc, char** argv) {
  CLI::App app{"Numerics for L-functions of level-one eigenforms and their derivatives"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::map<std::string, std::string> flags;
  std::map<std::string, CLI::Option*> opts;
  app.add_option("--config", config_path, "key=value file; flags override it");
  const auto flag = [&](const std::string& key, const std::string& help) {
    opts[key] = app.add_option("--" + key, flags[key], help);
  };
  flag("weight", "form weight: 12, 16, 18, 20, 22 or 26");
  flag("m", "derivative orders, comma separated (0..4)");
  flag("T", "heights, comma separated (each in (0, 100])");
  flag("sigma", "abscissas, comma separated");
  flag("grid", "height grid lo:hi:step, instead of --T");
  opts["precision"] =
      app.add_option("--precision", flags["precision"], "double or extended")->check(CLI::IsMember({"double", "extended"}));
  flag("jobs", "worker threads for zero searches");
  flag("out", "output directory");
  flag("cache", "coefficient cache directory, or none");
  flag("table_length", "coefficients kept per form");

  std::string point;
  std::size_t coeff_rows = 30;
  auto* eval = app.add_subcommand("eval", "print L^(m)(s), its error estimate and regime");
  eval->add_option("s", point, "point, e.g. 3, 0.5+14i, -3")->required();
  auto* coeffs = app.add_subcommand("coeffs", "build or load the coefficient table and write the first rows");
  coeffs->add_option("--rows", coeff_rows, "rows to write");
  auto* zeros = app.add_subcommand("zeros", "isolate the zeros in the counting strip up to max T");
  auto* count = app.add_subcommand("count", "zero counts against the main term");
  auto* density = app.add_subcommand("density", "zeros right of sigma against the explicit density bound");
  auto* meansquare = app.add_subcommand("meansquare", "numerical mean squares on vertical lines");
  auto* littlewood = app.add_subcommand("littlewood", "Littlewood identity on [sigma, sigma_right] x [1, T]");
  auto* verify = app.add_subcommand("verify", "run every acceptance check and write a JSON summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::map<std::string, std::string> kv;
  if (!config_path.empty()) kv = read_config_file(config_path);
  for (const auto& [k, o] : opts)
    if (o->count() > 0) kv[k] = flags[k];
  // a T grid from the file gives way to a grid flag and vice versa
  if (opts["T"]->count() > 0 && opts["grid"]->count() == 0) kv.erase("grid");
  if (opts["grid"]->count() > 0 && opts["T"]->count() == 0) kv.erase("T");
  const RunConfig c = resolve(kv);

  const auto t0 = std::chrono::steady_clock::now();
  int rc = 0;
  if (*eval)
    rc = cmd_eval(c, point);
  else if (*coeffs)
    rc = cmd_coeffs(c, coeff_rows);
  else if (*zeros)
    rc = cmd_zeros(c);
  else if (*count)
    rc = cmd_count(c);
  else if (*density)
    rc = cmd_density(c);
  else if (*meansquare)
    rc = cmd_meansquare(c);
  else if (*littlewood)
    rc = cmd_littlewood(c);
  else if (*verify)
    rc = cmd_verify(c);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream msg;
  msg.precision(3);
  msg << "done in " << secs << " s, exit " << rc;
  note(msg.str());
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << std::endl;
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << std::endl;
    return 2;
  } catch (const ContractError& e) {
    std::cerr << "invalid request: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
