#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace rank1lab::report {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out))
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("config: '" + key + "' expects a non-negative integer, got '" + v + "'");
  return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::string normalized = v;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::vector<double> out;
  for (const auto& tok : split(normalized, ' ')) out.push_back(parse_double(key, tok));
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k)
    g[k] = lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(n - 1));
  return g;
}

}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig c;
  for (const char* name : {"blatz-ko", "neo-hooke", "svk", "volumetric-cubic"})
    c.models.push_back(name);
  c.probe_F = {Mat3::identity(), Mat3::diag(0.4, 1.0, 1.0)};
  c.pc_lambdas = log_grid(0.2, 5.0, 41);
  return c;
}

ModelSpec RunConfig::model(const std::string& name) const {
  const std::string canon = canonical_model_name(name);
  if (canon.empty()) throw ConfigError("unknown model '" + name + "'");
  const auto it = model_params.find(canon);
  return {canon, it == model_params.end() ? std::map<std::string, double>{} : it->second};
}

std::shared_ptr<const MaterialModel> RunConfig::build(const std::string& name) const {
  const ModelSpec spec = model(name);
  try {
    return make_model(spec.name, spec.params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<std::shared_ptr<const MaterialModel>> RunConfig::build_all() const {
  std::vector<std::shared_ptr<const MaterialModel>> out;
  for (const auto& m : models) out.push_back(build(m));
  return out;
}

ScanConfig RunConfig::scan() const {
  ScanConfig s;
  s.seed = seed;
  s.spread = spread;
  s.n_F = n_F;
  s.n_dir = n_dir;
  s.n_refine = n_refine;
  s.probe_F = probe_F;
  s.n_search_F = n_search_F;
  s.n_starts = n_starts;
  s.s_max = s_max;
  s.threads = threads;
  return s;
}

void RunConfig::validate() const {
  if (!(spread > 0.0 && spread < 1.0)) throw ConfigError("config: spread must lie in (0, 1)");
  const std::pair<const char*, std::size_t> budgets[] = {
      {"scan.n_F", n_F},
      {"scan.n_dir", n_dir},
      {"scan.n_starts", n_starts},
      {"suite.identity.n", identity_samples},
      {"suite.gradient.n", gradient_samples},
      {"suite.theorem.n", theorem_samples},
      {"suite.twins.n", twin_samples},
      {"suite.twins.n_det", twin_det_samples}};
  for (const auto& [key, v] : budgets)
    if (v == 0) throw ConfigError(std::string("config: ") + key + " must be positive");
  if (models.empty()) throw ConfigError("config: no models configured");
  for (const auto& m : models) build(m);
  for (const auto& [name, params] : model_params) build(name);
  for (const auto& f : probe_F)
    if (!(det(f) > 0.0)) throw ConfigError("config: probe.F must have positive determinant");
  if (!(alpha_min > 0.0 && alpha_min < alpha_max) || alpha_points < 3)
    throw ConfigError("config: invalid pressure scan window");
  if (!(dilation_min > 0.0 && dilation_min < dilation_max) || dilation_points < 3)
    throw ConfigError("config: invalid dilation scan window");
  for (double l : pc_lambdas)
    if (!(l > 0.0)) throw ConfigError("config: pc.lambdas must be positive");
}

namespace {

// Re-labels a value error with its line number.
template <class Fn>
void at_line(int lineno, Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    if (msg.rfind("config: ", 0) == 0) msg.erase(0, 8);
    throw ConfigError("config line " + std::to_string(lineno) + ": " + msg);
  }
}

}  // namespace

RunConfig parse_config(const std::string& text, RunConfig base) {
  RunConfig c = std::move(base);
  bool probes_replaced = false;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto size_setter = [](std::size_t& field) -> Setter {
    return [&field](const std::string& k, const std::string& v) {
      field = static_cast<std::size_t>(parse_u64(k, v));
    };
  };
  auto double_setter = [](double& field) -> Setter {
    return [&field](const std::string& k, const std::string& v) { field = parse_double(k, v); };
  };
  const std::map<std::string, Setter> setters = {
      {"seed", [&](const std::string& k, const std::string& v) { c.seed = Seed{parse_u64(k, v)}; }},
      {"spread", double_setter(c.spread)},
      {"threads",
       [&](const std::string& k, const std::string& v) {
         c.threads = static_cast<unsigned>(parse_u64(k, v));
       }},
      {"output_dir", [&](const std::string&, const std::string& v) { c.output_dir = v; }},
      {"scan.n_F", size_setter(c.n_F)},
      {"scan.n_dir", size_setter(c.n_dir)},
      {"scan.n_refine", size_setter(c.n_refine)},
      {"scan.n_starts", size_setter(c.n_starts)},
      {"scan.n_search_F", size_setter(c.n_search_F)},
      {"scan.s_max", double_setter(c.s_max)},
      {"suite.identity.n", size_setter(c.identity_samples)},
      {"suite.gradient.n", size_setter(c.gradient_samples)},
      {"suite.theorem.n", size_setter(c.theorem_samples)},
      {"suite.twins.n", size_setter(c.twin_samples)},
      {"suite.twins.n_det", size_setter(c.twin_det_samples)},
      {"pressure.alpha_min", double_setter(c.alpha_min)},
      {"pressure.alpha_max", double_setter(c.alpha_max)},
      {"pressure.n", size_setter(c.alpha_points)},
      {"dilation.lambda_min", double_setter(c.dilation_min)},
      {"dilation.lambda_max", double_setter(c.dilation_max)},
      {"dilation.n", size_setter(c.dilation_points)},
      {"pc.lambdas",
       [&](const std::string& k, const std::string& v) { c.pc_lambdas = parse_list(k, v); }},
      {"probe.F",
       [&](const std::string& k, const std::string& v) {
         const auto vals = parse_list(k, v);
         if (vals.size() != 9) throw ConfigError("config: probe.F expects 9 numbers");
         if (!probes_replaced) c.probe_F.clear();
         probes_replaced = true;
         std::array<double, 9> a{};
         std::copy(vals.begin(), vals.end(), a.begin());
         c.probe_F.push_back(Mat3::from_flat(a));
       }},
      {"models",
       [&](const std::string&, const std::string& v) {
         std::vector<std::string> next;
         for (const auto& name : split(v, ',')) {
           const std::string canon = canonical_model_name(name);
           if (canon.empty()) throw ConfigError("config: unknown model '" + name + "'");
           if (std::find(next.begin(), next.end(), canon) == next.end()) next.push_back(canon);
         }
         c.models = std::move(next);
       }},
  };

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");

    if (key.rfind("model.", 0) == 0) {
      // model.<name>.<param>
      const auto dot = key.find('.', 6);
      if (dot == std::string::npos)
        throw ConfigError("config line " + std::to_string(lineno) + ": expected model.<name>.<param>");
      const std::string canon = canonical_model_name(key.substr(6, dot - 6));
      if (canon.empty())
        throw ConfigError("config line " + std::to_string(lineno) + ": unknown model in '" + key + "'");
      const std::string param = key.substr(dot + 1);
      if (param.empty() || param.find('.') != std::string::npos)
        throw ConfigError("config line " + std::to_string(lineno) + ": bad parameter in '" + key + "'");
      at_line(lineno, [&] { c.model_params[canon][param] = parse_double(key, value); });
      continue;
    }

    const auto s = setters.find(key);
    if (s == setters.end())
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    at_line(lineno, [&] { s->second(key, value); });
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

}  // namespace rank1lab::report
