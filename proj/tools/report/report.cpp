#include "report.hpp"

#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <limits>

#include "rank1lab/convexity.hpp"
#include "rank1lab/injectivity.hpp"
#include "rank1lab/parallel.hpp"
#include "rank1lab/suites.hpp"

namespace rank1lab::report {

namespace {

constexpr std::array<const char*, 8> kCommands = {
    "identities", "gradcheck", "ellipticity", "injectivity",
    "twins",      "blatzko-scan", "pc-check", "all"};

// Violations listed inline in report.json; the CSV export has all of them.
constexpr std::size_t kInlineViolations = 20;

Json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

Json to_json(const Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

Json to_json(const Mat3& m) {
  Json a = Json::array();
  for (double x : m.flat()) a.push_back(x);
  return a;
}

Json to_json(const SuiteResult& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"samples", c.samples},
                      {"value", number(c.value)},
                      {"bound", c.bound},
                      {"lower_bound", c.lower_bound},
                      {"passed", c.passed}});
  }
  return {{"passed", r.passed()}, {"checks", checks}};
}

Json to_json(const DirectionalSample& s) {
  return {{"F", to_json(s.f)},
          {"xi", to_json(s.xi)},
          {"eta", to_json(s.eta)},
          {"value", s.value},
          {"threshold", s.threshold}};
}

Json to_json(const MaterialModel& m, const CollisionCertificate& c, double tol) {
  Json j = {{"F", to_json(c.f)},
            {"xi", to_json(c.p.xi())},
            {"eta", to_json(c.p.eta())},
            {"residual", number(c.residual)},
            {"perturbation_norm", c.perturbation_norm},
            {"segment_ok", c.segment_ok},
            {"start_index", c.start_index},
            {"valid", c.valid(tol)}};
  j["monotonicity_gap"] = c.segment_ok ? number(monotonicity_gap(m, c.f, c.p)) : Json(nullptr);
  return j;
}

Json to_json(const PressureScan& s, const char* variable) {
  Json j = {{"points", s.records.size()},
            {"is_monotone", s.is_monotone},
            {"interior_max", s.interior_max},
            {std::string(variable) + "_star", s.alpha_star},
            {"t_star", s.t_star}};
  return j;
}

Json model_json(const MaterialModel& m) {
  Json params = Json::object();
  for (const auto& [k, v] : m.parameters()) params[k] = v;
  return {{"name", m.name()},
          {"parameters", params},
          {"declared_rank_one_convex", m.declared_rank_one_convex()}};
}

Json config_json(const RunConfig& cfg) {
  Json models = Json::array();
  for (const auto& name : cfg.models) models.push_back(model_json(*cfg.build(name)));
  Json probes = Json::array();
  for (const auto& f : cfg.probe_F) probes.push_back(to_json(f));
  Json lambdas = Json::array();
  for (double l : cfg.pc_lambdas) lambdas.push_back(l);
  return {{"seed", cfg.seed.value},
          {"spread", cfg.spread},
          {"models", models},
          {"scan",
           {{"n_F", cfg.n_F},
            {"n_dir", cfg.n_dir},
            {"n_refine", cfg.n_refine},
            {"n_search_F", cfg.n_search_F},
            {"n_starts", cfg.n_starts},
            {"s_max", cfg.s_max},
            {"probe_F", probes}}},
          {"suite",
           {{"identity_samples", cfg.identity_samples},
            {"gradient_samples", cfg.gradient_samples},
            {"theorem_samples", cfg.theorem_samples},
            {"twin_samples", cfg.twin_samples},
            {"twin_det_samples", cfg.twin_det_samples}}},
          {"pressure",
           {{"alpha_min", cfg.alpha_min},
            {"alpha_max", cfg.alpha_max},
            {"points", cfg.alpha_points}}},
          {"dilation",
           {{"lambda_min", cfg.dilation_min},
            {"lambda_max", cfg.dilation_max},
            {"points", cfg.dilation_points},
            {"pc_lambdas", lambdas}}}};
}

std::string iso_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string host_name() {
  char buf[256] = {};
  if (gethostname(buf, sizeof buf - 1) != 0) return "unknown";
  return buf;
}

// Accumulates suite results, findings and timings for one run.
class Run {
 public:
  explicit Run(const RunConfig& cfg) : cfg_(cfg) {}

  template <class Fn>
  void timed(const std::string& label, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    wall_[label] = dt.count();
  }

  // A raw finding; `inconsistent` marks it as contradicting the declared class.
  void finding(bool inconsistent) {
    findings_ = true;
    if (inconsistent) inconsistent_ = true;
  }

  void suite(const char* key, const SuiteResult& r) {
    suites_[key] = to_json(r);
    if (!r.passed()) finding(true);
  }

  void identities() {
    timed("identities", [&] {
      suite("identities", identity_suite(cfg_.seed, cfg_.identity_samples, cfg_.spread));
    });
    timed("theorem_identity", [&] {
      suite("theorem_identity", theorem_identity_suite(cfg_.build_all(), cfg_.seed,
                                                       cfg_.theorem_samples, cfg_.spread));
    });
  }

  void gradcheck() {
    timed("gradcheck", [&] {
      suite("gradcheck",
            gradient_suite(cfg_.build_all(), cfg_.seed, cfg_.gradient_samples, cfg_.spread));
    });
  }

  void twins() {
    timed("twins", [&] {
      suite("twins",
            twin_suite(cfg_.seed, cfg_.twin_samples, cfg_.twin_det_samples, cfg_.spread));
    });
  }

  void ellipticity(const std::string& name) {
    const auto model = cfg_.build(name);
    timed("ellipticity:" + model->name(), [&] {
      const EllipticityReport r = ellipticity_scan(*model, cfg_.scan());
      const bool found = !r.violations.empty();
      const bool inconsistent = found && model->declared_rank_one_convex();
      if (found) finding(inconsistent);

      Json violations = Json::array();
      for (std::size_t k = 0; k < std::min(r.violations.size(), kInlineViolations); ++k)
        violations.push_back(to_json(r.violations[k]));
      suites_["ellipticity"][model->name()] = {
          {"model", model_json(*model)},
          {"samples_tested", r.samples_tested},
          {"indeterminate", r.indeterminate},
          {"refined", r.refined},
          {"min_second_derivative", number(r.min_second_derivative)},
          {"argmin", r.argmin ? to_json(*r.argmin) : Json(nullptr)},
          {"violation_count", r.violations.size()},
          {"violations", violations},
          {"consistent", !inconsistent}};

      std::string& csv = files_["ellipticity_violations.csv"];
      if (csv.empty())
        csv = "model,F11,F12,F13,F21,F22,F23,F31,F32,F33,xi1,xi2,xi3,eta1,eta2,eta3,value\n";
      for (const auto& v : r.violations) {
        csv += model->name();
        for (double x : v.f.flat()) csv += "," + format_number(x);
        for (std::size_t i = 0; i < 3; ++i) csv += "," + format_number(v.xi[i]);
        for (std::size_t i = 0; i < 3; ++i) csv += "," + format_number(v.eta[i]);
        csv += "," + format_number(v.value) + "\n";
      }
    });
  }

  void injectivity(const std::string& name) {
    const auto model = cfg_.build(name);
    timed("injectivity:" + model->name(), [&] {
      const InjectivitySearchResult r = injectivity_search(*model, cfg_.scan());
      const bool found = !r.certificates.empty();
      const bool inconsistent = found && model->declared_rank_one_convex();
      if (found) finding(inconsistent);

      Json certs = Json::array();
      for (const auto& c : r.certificates) certs.push_back(to_json(*model, c, r.tolerance));
      suites_["injectivity"][model->name()] = {
          {"model", model_json(*model)},
          {"starts", r.starts},
          {"gradients", r.gradients},
          {"tolerance", r.tolerance},
          {"min_residual_found", number(r.min_residual_found)},
          {"best", r.best ? to_json(*model, *r.best, r.tolerance) : Json(nullptr)},
          {"certificate_count", r.certificates.size()},
          {"certificates", certs},
          {"consistent", !inconsistent}};
    });
  }

  void blatzko_scan() {
    const auto model = cfg_.build("blatz-ko");
    const double mu = model->stress_scale();
    timed("blatzko-scan", [&] {
      const PressureScan s = blatzko_pressure_scan(mu, cfg_.alpha_min, cfg_.alpha_max,
                                                   cfg_.alpha_points);
      Json j = to_json(s, "alpha");
      j["mu"] = mu;
      if (s.collision) {
        const auto& c = *s.collision;
        j["collision"] = {{"alpha1", c.alpha1},
                          {"alpha2", c.alpha2},
                          {"t1", c.t1},
                          {"t2", c.t2},
                          {"level", c.level},
                          {"difference", std::abs(c.t1 - c.t2)},
                          {"difference_rank_one", c.difference_rank_one}};
        // a rank-one connected pair with equal stress would break injectivity
        if (c.difference_rank_one) finding(true);
      } else {
        j["collision"] = nullptr;
      }
      suites_["blatzko_scan"] = j;

      std::string csv = "alpha,spherical\n";
      for (const auto& r : s.records)
        csv += format_number(r.alpha) + "," + format_number(r.spherical) + "\n";
      files_["pressure_scan.csv"] = std::move(csv);
    });
  }

  void pc_check(const std::string& name) {
    const auto model = cfg_.build(name);
    timed("pc-check:" + model->name(), [&] {
      const PressureCompressionResult pc = pressure_compression_check(*model, cfg_.pc_lambdas);
      const PressureScan dil = dilation_spherical_scan(*model, cfg_.dilation_min,
                                                       cfg_.dilation_max, cfg_.dilation_points);
      const bool found = !pc.verdict;
      const bool inconsistent = found && model->declared_rank_one_convex();
      if (found) finding(inconsistent);

      std::size_t skipped = 0, negative = 0;
      double min_product = std::numeric_limits<double>::infinity();
      Json failures = Json::array();
      for (const auto& e : pc.entries) {
        if (e.skipped) {
          ++skipped;
          continue;
        }
        min_product = std::min(min_product, e.product);
        if (!(e.product > 0.0)) {
          ++negative;
          failures.push_back({{"lambda", e.lambda}, {"product", e.product}});
        }
      }
      suites_["pc_check"][model->name()] = {
          {"model", model_json(*model)},
          {"points", pc.entries.size()},
          {"skipped", skipped},
          {"min_product", number(min_product)},
          {"failures", failures},
          {"verdict", pc.verdict},
          {"dilation", to_json(dil, "lambda")},
          {"consistent", !inconsistent}};

      std::string& csv = files_["dilation_scan.csv"];
      if (csv.empty()) csv = "model,lambda,spherical\n";
      for (const auto& r : dil.records)
        csv += model->name() + "," + format_number(r.alpha) + "," + format_number(r.spherical) +
               "\n";
    });
  }

  RunOutcome finish(const std::string& command, const std::string& target) {
    RunOutcome out;
    Json& j = out.report;
    j["schema"] = kSchemaName;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["target"] = target.empty() ? Json(nullptr) : Json(canonical_model_name(target));
    j["config"] = config_json(cfg_);
    j["suites"] = suites_;
    j["violations_found"] = findings_;
    j["verdict"] = inconsistent_ ? "fail" : "pass";

    Json wall = Json::object();
    for (const auto& [k, v] : wall_) wall[k] = v;
    j["meta"] = {{"timestamp", iso_timestamp()},
                 {"host", host_name()},
                 {"version", RANK1LAB_VERSION},
                 {"threads", resolve_threads(cfg_.threads)},
                 {"wall_clock_s", wall}};

    out.exit_code = (command == "all") ? (inconsistent_ ? 1 : 0) : (findings_ ? 1 : 0);
    out.files = std::move(files_);
    return out;
  }

 private:
  const RunConfig& cfg_;
  Json suites_ = Json::object();
  std::map<std::string, std::string> files_;
  std::map<std::string, double> wall_;
  bool findings_ = false;
  bool inconsistent_ = false;
};

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw OutputError("cannot write " + path.string());
}

}  // namespace

bool is_command(const std::string& command) {
  return std::find(kCommands.begin(), kCommands.end(), command) != kCommands.end();
}

bool command_takes_model(const std::string& command) {
  return command == "ellipticity" || command == "injectivity" || command == "pc-check";
}

RunOutcome run_command(const std::string& command, const std::string& target,
                       const RunConfig& cfg) {
  if (!is_command(command)) throw ConfigError("unknown command '" + command + "'");
  if (command_takes_model(command) != !target.empty())
    throw ConfigError(command_takes_model(command) ? command + " requires a model"
                                                   : command + " takes no model");
  if (!target.empty()) cfg.build(target);  // unknown model -> ConfigError
  cfg.validate();

  Run run(cfg);
  if (command == "identities") {
    run.identities();
  } else if (command == "gradcheck") {
    run.gradcheck();
  } else if (command == "ellipticity") {
    run.ellipticity(target);
  } else if (command == "injectivity") {
    run.injectivity(target);
  } else if (command == "twins") {
    run.twins();
  } else if (command == "blatzko-scan") {
    run.blatzko_scan();
  } else if (command == "pc-check") {
    run.pc_check(target);
  } else {
    run.identities();
    run.gradcheck();
    for (const auto& m : cfg.models) run.ellipticity(m);
    for (const auto& m : cfg.models) run.injectivity(m);
    run.twins();
    run.blatzko_scan();
    for (const auto& m : cfg.models) run.pc_check(m);
  }
  return run.finish(command, target);
}

std::string dump(const Json& report) { return report.dump(2) + "\n"; }

Json strip_meta(const Json& report) {
  Json copy = report;
  copy.erase("meta");
  return copy;
}

void write_outputs(const RunOutcome& outcome, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw OutputError("cannot create output directory " + dir.string());

  std::map<std::string, std::string> files = outcome.files;
  files["report.json"] = dump(outcome.report);

  // every file goes to a temporary first; nothing is renamed unless all succeed
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> staged;
  try {
    for (const auto& [name, content] : files) {
      const auto final_path = dir / name;
      const auto tmp = dir / ("." + name + ".tmp");
      staged.emplace_back(tmp, final_path);
      write_file(tmp, content);
    }
    for (const auto& [tmp, final_path] : staged) {
      std::filesystem::rename(tmp, final_path, ec);
      if (ec) throw OutputError("cannot rename into " + final_path.string());
    }
  } catch (...) {
    for (const auto& [tmp, final_path] : staged) std::filesystem::remove(tmp, ec);
    throw;
  }
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // guard against a locale with ',' as decimal separator
  std::string s(buf);
  std::replace(s.begin(), s.end(), ',', '.');
  return s;
}

}  // namespace rank1lab::report
