#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "sievekit/empirical_lab.hpp"
#include "sievekit/errors.hpp"
#include "sievekit/sieve_functions.hpp"
#include "sievekit/theorem_verifier.hpp"

namespace sievekit::cli {

namespace {

using arith::PrimeTable;
using arith::u64;

const std::map<std::string, std::string>& key_help() {
  static const std::map<std::string, std::string> keys = {
      {"X", "window (X, 2X]"},
      {"Xs", "comma-separated list of X values"},
      {"ell", "modulus l"},
      {"ell-max", "largest l when --ell is absent"},
      {"u", "u parameter"},
      {"vartheta", "exponent vartheta"},
      {"theta", "level theta"},
      {"theta0", "Dartyge theta_0"},
      {"alpha", "sieve exponent alpha"},
      {"beta", "sieve exponent beta"},
      {"delta", "crossover delta"},
      {"r", "almost-prime order r"},
      {"z", "sifting level z"},
      {"k", "tau exponent"},
      {"d", "modulus d"},
      {"a", "residue a"},
      {"L", "square sieve range L"},
      {"p", "prime p"},
      {"q", "prime q"},
      {"m", "multiplier m"},
      {"max-pq", "largest pq in the exhaustive Weil check"},
      {"max-prime", "largest prime in the exhaustive Weil check"},
      {"weight", "sharp, bump or plateau"},
      {"epsilon", "plateau transition width"},
      {"oracle", "also run the brute-force oracle"},
      {"step", "grid step"},
      {"min", "table start"},
      {"max", "table end"},
      {"out", "output path"},
      {"format", "json, csv or markdown"},
      {"threads", "worker threads"},
      {"seed", "seed"},
      {"sigma2", "strict or cap: handling of sigma2 arguments above 2"},
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) throw UsageError("--" + key + ": not a number: " + text);
  return v;
}

u64 parse_integer(const std::string& key, const std::string& text) {
  const double v = parse_real(key, text);
  if (v < 0 || v != std::floor(v) || v > 9.0e18) throw UsageError("--" + key + ": not a non-negative integer: " + text);
  return static_cast<u64>(v);
}

unsigned default_threads() {
  if (const char* env = std::getenv("SIEVEKIT_THREADS")) {
    try {
      const u64 n = parse_integer("SIEVEKIT_THREADS", env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const UsageError&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// -- output ---------------------------------------------------------------------

Json theorem_entry(const TheoremReport& r) {
  Json j = to_json(r);
  j["kind"] = "theorem";
  return j;
}

Json experiment_entry(const ExperimentReport& r) {
  Json j = to_json(r);
  j["kind"] = "experiment";
  return j;
}

bool entry_passed(const Json& e) {
  return e.value("kind", "") == "theorem" ? e.value("passed", false) : e.value("invariants_ok", false);
}

Json make_doc(const RunConfig& cfg, const std::string& target, Json reports) {
  Json doc;
  doc["schema"] = kReportSchema;
  doc["command"] = cfg.command;
  doc["target"] = target;
  doc["seed"] = cfg.seed;
  bool ok = true;
  for (const auto& e : reports) ok = ok && entry_passed(e);
  doc["passed"] = ok;
  doc["reports"] = std::move(reports);
  return doc;
}

std::string csv_of(const Json& doc) {
  // A lone histogram-bearing report prints its histogram.
  const auto& reports = doc.at("reports");
  if (reports.size() == 1 && reports[0].contains("extra") && reports[0]["extra"].contains("histogram")) {
    return lab::histogram_csv(experiment_report_from_json(reports[0]));
  }
  std::ostringstream out;
  out << std::setprecision(17) << "report,key,value\n";
  for (const auto& e : reports) {
    const std::string name = e.value("name", "");
    for (const char* section : {"computed", "values", "counters", "residuals"}) {
      if (!e.contains(section)) continue;
      for (const auto& [k, v] : e[section].items()) out << name << ',' << k << ',' << v.dump() << '\n';
    }
    if (e.contains("margin")) out << name << ",margin," << e["margin"].dump() << '\n';
  }
  return out.str();
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out);
  if (!file) throw UsageError("cannot write " + cfg.out);
  file << text;
}

int emit_doc(const RunConfig& cfg, const Json& doc, std::ostream& out) {
  if (cfg.format == "json") {
    emit(cfg, doc.dump(2) + "\n", out);
  } else if (cfg.format == "csv") {
    emit(cfg, csv_of(doc), out);
  } else {
    emit(cfg, markdown_summary(doc), out);
  }
  return doc.at("passed").get<bool>() ? kPass : kFail;
}

// -- verify ---------------------------------------------------------------------

Json verify_thm1(const RunConfig& cfg, const sieve::SieveTables& tables) {
  const auto params = cfg.has("delta")
                          ? verify::WeightedSieveParams::make(cfg.real("alpha", 1.0 / 12.0), cfg.real("beta", 0.622),
                                                              static_cast<int>(cfg.integer("r", 4)), cfg.real("delta", 0))
                          : verify::WeightedSieveParams::make(cfg.real("alpha", 1.0 / 12.0), cfg.real("beta", 0.622),
                                                              static_cast<int>(cfg.integer("r", 4)));
  Json out = Json::array();
  TheoremReport delta;
  delta.name = "delta_root";
  delta.put("delta_bisection", verify::solve_delta(), 1e-14);
  delta.put("delta_quadratic", verify::solve_delta_quadratic(), 1e-15);
  const double d = delta.computed["delta_bisection"];
  delta.put("route_discrepancy", std::abs(d - delta.computed["delta_quadratic"]));
  delta.set_margin(std::min({d - 0.435, 0.445 - d, 1e-9 - delta.computed["route_discrepancy"]}));
  delta.note("margin: distance of delta to the ends of [0.435, 0.445], and route agreement within 1e-9");
  out.push_back(theorem_entry(delta));
  out.push_back(theorem_entry(verify::compute_C(params, tables.linear)));
  return out;
}

Json verify_thm2(const RunConfig& cfg) {
  Json out = Json::array();
  const double vartheta = cfg.real("vartheta", 0.847);
  out.push_back(theorem_entry(verify::theorem2_integral(vartheta)));
  TheoremReport best;
  best.name = "max_vartheta";
  best.inputs["vartheta"] = vartheta;
  const double v = verify::find_max_vartheta();
  best.put("max_vartheta", v, 1e-12);
  best.set_margin(v - vartheta);
  out.push_back(theorem_entry(best));
  return out;
}

Json verify_thm3(const RunConfig& cfg, const sieve::SieveTables& tables) {
  const double theta0 = cfg.real("theta0", verify::kDartygeTheta0);
  const std::string policy = cfg.text("sigma2", "strict");
  if (policy != "strict" && policy != "cap") throw UsageError("--sigma2 must be strict or cap");
  const auto p = policy == "cap" ? verify::Sigma2Policy::MonotoneCap : verify::Sigma2Policy::Strict;
  return Json::array({theorem_entry(verify::dartyge_margin(cfg.real("u", 11.2), theta0, tables, p))});
}

int cmd_verify(const RunConfig& cfg, const std::string& target, std::ostream& out) {
  Json reports = Json::array();
  auto append = [&](Json part) {
    for (auto& e : part) reports.push_back(std::move(e));
  };
  std::optional<sieve::SieveTables> tables;
  auto get_tables = [&]() -> const sieve::SieveTables& {
    if (!tables) tables = sieve::SieveTables::build();
    return *tables;
  };
  if (target == "thm1" || target == "all") append(verify_thm1(cfg, get_tables()));
  if (target == "thm2" || target == "all") append(verify_thm2(cfg));
  if (target == "thm3" || target == "all") append(verify_thm3(cfg, get_tables()));
  return emit_doc(cfg, make_doc(cfg, target, std::move(reports)), out);
}

// -- functions ------------------------------------------------------------------

struct FunctionSpec {
  double lo, hi;  // default table range
  std::function<double(double)> eval;
};

FunctionSpec function_spec(const std::string& name, std::optional<sieve::SieveTables>& tables) {
  auto need = [&]() -> const sieve::SieveTables& {
    if (!tables) tables = sieve::SieveTables::build();
    return *tables;
  };
  if (name == "F") return {0.5, 10.0, [&, t = &need()](double s) { return sieve::eval_F(s, t->linear); }};
  if (name == "f") return {0.5, 10.0, [&, t = &need()](double s) { return sieve::eval_f(s, t->linear); }};
  if (name == "w") return {1.0, 12.0, [&, t = &need()](double u) { return sieve::buchstab_w(u, t->buchstab); }};
  if (name == "sigma2") return {0.1, 2.0, [](double s) { return sieve::selberg_sigma2(s); }};
  if (name == "gamma_theta") return {0.5, 0.94, [](double t) { return verify::gamma_theta(t); }};
  throw UsageError("unknown function: " + name + " (F, f, w, sigma2, gamma_theta)");
}

std::string format_value(double v) {
  std::ostringstream s;
  s << std::setprecision(15) << v;
  return s.str();
}

int cmd_functions(const RunConfig& cfg, const std::string& action, const std::string& name, const std::string& arg,
                  std::ostream& out) {
  std::optional<sieve::SieveTables> tables;
  const FunctionSpec spec = function_spec(name, tables);
  if (action == "eval") {
    if (arg.empty()) throw UsageError("functions eval needs an argument");
    const double x = parse_real("arg", arg);
    const double v = spec.eval(x);
    if (cfg.format == "json") {
      Json doc{{"schema", kReportSchema}, {"function", name}, {"arg", x}, {"value", v}};
      emit(cfg, doc.dump(2) + "\n", out);
    } else {
      emit(cfg, format_value(v) + "\n", out);
    }
    return kPass;
  }
  if (action != "table") throw UsageError("functions action must be eval or table");
  const double lo = cfg.real("min", spec.lo);
  const double hi = cfg.real("max", spec.hi);
  const double step = cfg.real("step", 0.01);
  if (!(step > 0.0) || hi < lo) throw UsageError("functions table: need step > 0 and max >= min");
  std::ostringstream csv;
  csv << "x," << name << '\n';
  const auto n = static_cast<long long>(std::floor((hi - lo) / step + 1e-9));
  for (long long i = 0; i <= n; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    csv << format_value(x) << ',' << format_value(spec.eval(x)) << '\n';
  }
  emit(cfg, csv.str(), out);
  return kPass;
}

// -- empirical ------------------------------------------------------------------

u64 table_limit(u64 X) { return std::max<u64>(2 * X, 100); }

ExperimentReport q_ell_experiment(const RunConfig& cfg, const lab::SmoothWeight& w) {
  const u64 X = cfg.integer("X", 10'000);
  const bool oracle = cfg.flag("oracle");
  const auto primes = PrimeTable::build(table_limit(X));
  std::vector<u64> ells;
  if (cfg.has("ell")) {
    ells.push_back(cfg.integer("ell", 1));
  } else {
    for (u64 l = 1; l <= cfg.integer("ell-max", 200); ++l) ells.push_back(l);
  }
  ExperimentReport r;
  r.name = "q_ell";
  r.parameters = {{"X", X}, {"weight", lab::to_string(w.mode())}, {"oracle", oracle}};
  Json rows = Json::array();
  double worst = 0.0;
  for (u64 ell : ells) {
    const double fast = lab::Q_ell(X, ell, w, primes);
    Json row{{"ell", ell}, {"Q", fast}};
    if (oracle) {
      const double brute = lab::Q_ell_bruteforce(X, ell, w, primes);
      row["Q_bruteforce"] = brute;
      worst = std::max(worst, std::abs(fast - brute));
    }
    rows.push_back(row);
  }
  r.extra["rows"] = rows;
  r.counters["moduli"] = static_cast<long long>(ells.size());
  if (oracle) {
    r.residuals["max_abs_difference"] = worst;
    r.require(worst == 0.0, "Q_ell fast path equals the brute-force path");
  }
  return r;
}

ExperimentReport q_ell_u_experiment(const RunConfig& cfg, const lab::SmoothWeight& w) {
  const u64 X = cfg.integer("X", 10'000);
  const u64 ell = cfg.integer("ell", 5);
  const double u = cfg.real("u", 11.2);
  const auto primes = PrimeTable::build(table_limit(X));
  ExperimentReport r;
  r.name = "q_ell_u";
  r.parameters = {{"X", X}, {"ell", ell}, {"u", u}, {"weight", lab::to_string(w.mode())}};
  r.values["Q"] = lab::Q_ell_u(X, ell, u, w, primes);
  if (cfg.flag("oracle")) {
    const double brute = lab::Q_ell_u_bruteforce(X, ell, u, w, primes);
    r.values["Q_bruteforce"] = brute;
    r.residuals["abs_difference"] = std::abs(brute - r.values["Q"]);
    r.require(brute == r.values["Q"], "Q_ell(.; u) fast path equals the brute-force path");
  }
  return r;
}

ExperimentReport phi_experiment(const RunConfig& cfg, const lab::SmoothWeight& w) {
  const u64 X = cfg.integer("X", 10'000);
  const double z = cfg.real("z", 11);
  const u64 d = cfg.integer("d", 4);
  const u64 a = cfg.integer("a", 1);
  const auto primes = PrimeTable::build(table_limit(X));
  ExperimentReport r;
  r.name = "phi_sifted";
  r.parameters = {{"X", X}, {"z", z}, {"d", d}, {"a", a}, {"weight", lab::to_string(w.mode())}};
  r.values["Phi_d_a"] = lab::phi_sifted(X, z, d, a, w, primes);
  r.values["Phi_d"] = lab::phi_sifted_coprime(X, z, d, w, primes);
  return r;
}

ExperimentReport a_d_experiment(const RunConfig& cfg, const lab::SmoothWeight& w) {
  const u64 X = cfg.integer("X", 10'000);
  const u64 ell = cfg.integer("ell", 10);
  const u64 d = cfg.integer("d", 3);
  ExperimentReport r;
  r.name = "a_d";
  r.parameters = {{"X", X}, {"ell", ell}, {"d", d}, {"weight", lab::to_string(w.mode())}};
  r.values["A_d"] = lab::A_d_count(X, ell, d, w);
  r.values["r_d"] = lab::r_d_error(X, ell, d, w);
  if (cfg.flag("oracle")) {
    const double brute = lab::A_d_count_bruteforce(X, ell, d, w);
    r.values["A_d_bruteforce"] = brute;
    r.require(brute == r.values["A_d"], "A_d over CRT classes equals the brute-force count");
  }
  return r;
}

ExperimentReport bv_experiment(const RunConfig& cfg, const lab::SmoothWeight& w, bool wolke) {
  const auto Xs = cfg.integers("Xs", {10'000, 100'000, 1'000'000});
  const int k = static_cast<int>(cfg.integer("k", lab::kDefaultTauExponent));
  const auto primes = PrimeTable::build(table_limit(*std::max_element(Xs.begin(), Xs.end())));
  if (wolke) return lab::wolke_error_average(Xs, cfg.real("z", 11), k, w, primes);
  return lab::bv_error_average(Xs, k, w, primes);
}

ExperimentReport dispatch_empirical(const RunConfig& cfg, const std::string& name) {
  const auto w = lab::SmoothWeight::make(lab::parse_weight_mode(cfg.text("weight", "sharp")),
                                         cfg.real("epsilon", lab::SmoothWeight::kDefaultEpsilon));
  if (name == "q-ell") return q_ell_experiment(cfg, w);
  if (name == "q-ell-u") return q_ell_u_experiment(cfg, w);
  if (name == "phi") return phi_experiment(cfg, w);
  if (name == "a-d") return a_d_experiment(cfg, w);
  if (name == "bv") return bv_experiment(cfg, w, false);
  if (name == "wolke") return bv_experiment(cfg, w, true);
  if (name == "chebyshev") {
    const u64 X = cfg.integer("X", 1'000'000);
    return lab::chebyshev_decomposition(X, cfg.real("vartheta", 0.847), w, PrimeTable::build(table_limit(X)));
  }
  if (name == "bt") {
    const u64 X = cfg.integer("X", 100'000);
    return lab::bt_exception_count(X, cfg.real("theta", 0.55), w, PrimeTable::build(table_limit(X)), cfg.threads);
  }
  if (name == "weil") {
    if (cfg.has("p") || cfg.has("q")) {
      return lab::weil_sum_check(cfg.integer("p", 3), cfg.integer("q", 5), cfg.integer("m", 1));
    }
    return lab::weil_exhaustive(cfg.integer("max-pq", 10'000), cfg.integer("max-prime", 97));
  }
  if (name == "square-sieve") {
    const u64 X = cfg.integer("X", 10'000);
    const u64 L = cfg.integer("L", 100);
    ExperimentReport r;
    r.name = "square_sieve";
    r.parameters = {{"X", X}, {"L", L}};
    r.counters["N"] = static_cast<long long>(lab::square_sieve_count(X, L));
    if (cfg.flag("oracle")) {
      r.counters["N_bruteforce"] = static_cast<long long>(lab::square_sieve_count_bruteforce(X, L));
      r.require(r.counters["N"] == r.counters["N_bruteforce"], "root count equals the brute-force count");
    }
    return r;
  }
  if (name == "weighted-sieve") {
    const u64 X = cfg.integer("X", 1'000'000);
    const double alpha = cfg.real("alpha", 1.0 / 12.0), beta = cfg.real("beta", 0.622);
    const int r = static_cast<int>(cfg.integer("r", 4));
    const auto params = cfg.has("delta") ? verify::WeightedSieveParams::make(alpha, beta, r, cfg.real("delta", 0))
                                         : verify::WeightedSieveParams::make(alpha, beta, r);
    return lab::weighted_sieve_experiment(X, params, w, PrimeTable::build(table_limit(X)));
  }
  if (name == "almost-prime") {
    const u64 X = cfg.integer("X", 1'000'000);
    return lab::almost_prime_survey(X, static_cast<int>(cfg.integer("r", 4)), PrimeTable::build(table_limit(X)));
  }
  if (name == "gpf") {
    const u64 X = cfg.integer("X", 1'000'000);
    return lab::gpf_survey(X, cfg.real("vartheta", 0.847), PrimeTable::build(table_limit(X)));
  }
  if (name == "dartyge") {
    const u64 X = cfg.integer("X", 100'000);
    return lab::dartyge_survey(X, cfg.real("u", 11.2), PrimeTable::build(table_limit(X)));
  }
  throw UsageError("unknown experiment: " + name);
}

int cmd_empirical(const RunConfig& cfg, const std::string& name, std::ostream& out) {
  const ExperimentReport r = dispatch_empirical(cfg, name);
  return emit_doc(cfg, make_doc(cfg, name, Json::array({experiment_entry(r)})), out);
}

// -- plot-data ------------------------------------------------------------------

int cmd_plot_data(const RunConfig& cfg, const std::string& curve, std::ostream& out) {
  if (curve != "c-beta") throw UsageError("unknown curve: " + curve + " (c-beta)");
  const int r = static_cast<int>(cfg.integer("r", 4));
  const auto tables = sieve::SieveTables::build();
  const auto c = verify::optimize_beta(r, cfg.real("alpha", 1.0 / 12.0), tables.linear, cfg.threads);
  std::ostringstream csv;
  csv << std::setprecision(12) << "beta,C,is_max\n";
  for (const auto& p : c.points) csv << p.beta << ',' << p.C << ',' << (p.beta == c.beta_star ? 1 : 0) << '\n';
  emit(cfg, csv.str(), out);
  return kPass;
}

// -- report ---------------------------------------------------------------------

int cmd_report(const RunConfig& cfg, const std::vector<std::string>& inputs, std::ostream& out) {
  if (inputs.empty()) throw UsageError("report needs at least one JSON file");
  std::string text;
  bool ok = true;
  for (const auto& path : inputs) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw UsageError(path + ": " + e.what());
    }
    if (doc.value("schema", 0) != kReportSchema) throw UsageError(path + ": unsupported schema");
    text += markdown_summary(doc) + "\n";
    ok = ok && doc.value("passed", false);
  }
  emit(cfg, text, out);
  return ok ? kPass : kFail;
}

}  // namespace

// -- RunConfig --------------------------------------------------------------------

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [key, help] : key_help()) k.push_back(key);
    return k;
  }();
  return keys;
}

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (!key_help().contains(key)) throw UsageError("config line " + std::to_string(lineno) + ": unknown key " + key);
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::string RunConfig::text(const std::string& key, const std::string& def) const {
  const auto it = overrides.find(key);
  return it == overrides.end() ? def : it->second;
}

double RunConfig::real(const std::string& key, double def) const {
  const auto it = overrides.find(key);
  return it == overrides.end() ? def : parse_real(key, it->second);
}

std::uint64_t RunConfig::integer(const std::string& key, std::uint64_t def) const {
  const auto it = overrides.find(key);
  return it == overrides.end() ? def : parse_integer(key, it->second);
}

bool RunConfig::flag(const std::string& key) const {
  const auto it = overrides.find(key);
  if (it == overrides.end()) return false;
  const std::string& v = it->second;
  if (v.empty() || v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw UsageError("--" + key + ": expected a boolean, got " + v);
}

std::vector<std::uint64_t> RunConfig::integers(const std::string& key, const std::vector<std::uint64_t>& def) const {
  const auto it = overrides.find(key);
  if (it == overrides.end()) return def;
  std::vector<std::uint64_t> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_integer(key, trim(item)));
  if (out.empty()) throw UsageError("--" + key + ": empty list");
  return out;
}

std::string markdown_summary(const Json& doc) {
  std::ostringstream md;
  md << std::setprecision(10);
  md << "## " << doc.value("command", std::string("run")) << ' ' << doc.value("target", std::string()) << "\n\n";
  md << "| report | status | key values |\n|---|---|---|\n";
  for (const auto& e : doc.at("reports")) {
    std::ostringstream vals;
    vals << std::setprecision(10);
    bool first = true;
    auto add = [&](const std::string& k, const Json& v) {
      if (!first) vals << ", ";
      first = false;
      vals << k << " = " << v.dump();
    };
    if (e.contains("margin")) add("margin", e["margin"]);
    for (const char* section : {"computed", "values", "counters"}) {
      if (!e.contains(section)) continue;
      for (const auto& [k, v] : e[section].items()) add(k, v);
    }
    md << "| " << e.value("name", std::string()) << " | " << (entry_passed(e) ? "PASS" : "FAIL") << " | "
       << vals.str() << " |\n";
  }
  md << "\nOverall: " << (doc.value("passed", false) ? "PASS" : "FAIL") << "\n";
  return md.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sievekit: sieve constants and desk-scale experiments for n^2 + 1"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "key = value config file");

  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flag_options;
  auto add_keys = [&](CLI::App* sub) {
    for (const auto& [key, help] : key_help()) {
      if (key == "oracle") {
        flag_options[key + "@" + sub->get_name()] =
            sub->add_flag("--" + key, flag_values[key], help)->default_str("true");
      } else {
        flag_options[key + "@" + sub->get_name()] = sub->add_option("--" + key, flag_values[key], help);
      }
    }
  };

  std::string verify_target, fn_action, fn_name, fn_arg, experiment, curve;
  std::vector<std::string> report_inputs;

  auto* verify = app.add_subcommand("verify", "certify the theorem constants");
  verify->add_option("target", verify_target, "thm1, thm2, thm3 or all")
      ->required()
      ->check(CLI::IsMember({"thm1", "thm2", "thm3", "all"}));
  auto* functions = app.add_subcommand("functions", "evaluate or tabulate sieve functions");
  functions->add_option("action", fn_action, "eval or table")->required()->check(CLI::IsMember({"eval", "table"}));
  functions->add_option("name", fn_name, "F, f, w, sigma2 or gamma_theta")->required();
  functions->add_option("arg", fn_arg, "argument for eval");
  auto* empirical = app.add_subcommand("empirical", "run a desk-scale experiment");
  empirical->add_option("name", experiment,
                        "q-ell, q-ell-u, phi, a-d, bv, wolke, chebyshev, bt, weil, square-sieve, weighted-sieve, "
                        "almost-prime, gpf, dartyge")
      ->required();
  auto* plot = app.add_subcommand("plot-data", "emit curve data as CSV");
  plot->add_option("curve", curve, "c-beta")->required();
  auto* report = app.add_subcommand("report", "summarise JSON reports as Markdown");
  report->add_option("inputs", report_inputs, "JSON files")->required();
  for (auto* sub : {verify, functions, empirical, plot, report}) add_keys(sub);

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kPass;
    }
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    RunConfig cfg;
    CLI::App* active = app.get_subcommands().front();
    cfg.command = active->get_name();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw UsageError("cannot read config " + config_path);
      cfg.overrides = parse_config(in);
    }
    for (const auto& key : known_keys()) {
      const auto* opt = flag_options.at(key + "@" + cfg.command);
      if (opt->count() > 0) cfg.overrides[key] = flag_values[key];
    }
    cfg.out = cfg.text("out", "");
    cfg.format = cfg.text("format", cfg.command == "functions" ? "text" : "json");
    if (cfg.format == "markdown-summary") cfg.format = "markdown";
    if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "markdown" && cfg.format != "text") {
      throw UsageError("--format must be json, csv or markdown");
    }
    cfg.threads = cfg.has("threads") ? static_cast<unsigned>(std::max<u64>(1, cfg.integer("threads", 1)))
                                     : default_threads();
    cfg.seed = cfg.integer("seed", cfg.seed);

    if (cfg.command == "verify") return cmd_verify(cfg, verify_target, out);
    if (cfg.command == "functions") return cmd_functions(cfg, fn_action, fn_name, fn_arg, out);
    if (cfg.command == "empirical") return cmd_empirical(cfg, experiment, out);
    if (cfg.command == "plot-data") return cmd_plot_data(cfg, curve, out);
    return cmd_report(cfg, report_inputs, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParameterError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFail;
  }
}

}  // namespace sievekit::cli
