// rank1lab: seeded checks of cofactor identities, material gradients,
// ellipticity, rank-one injectivity and the Blatz-Ko pressure scan.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rank1lab/errors.hpp"
#include "report/config.hpp"
#include "report/report.hpp"

namespace {

constexpr int kExitUsage = 2;

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("RANK1LAB_SEED");
  if (s == nullptr || *s == '\0') return std::nullopt;
  const std::string text(s);
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.front() == '-')
    throw rank1lab::report::ConfigError("RANK1LAB_SEED is not a non-negative integer");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  namespace rr = rank1lab::report;

  CLI::App app{"rank1lab - rank-one convexity and Cauchy stress injectivity checks"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  bool json_stdout = false;
  std::optional<unsigned> threads;

  app.add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "master seed (overrides RANK1LAB_SEED and the config)");
  app.add_option("--out", out_dir, "output directory for report.json and CSV exports");
  app.add_flag("--json", json_stdout, "also print report.json to stdout");
  app.add_option("--threads", threads, "worker threads, 0 = all cores");

  std::string model;
  auto add = [&](const char* name, const char* help, bool with_model) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (with_model) sub->add_option("model", model, "material model")->required();
    sub->fallthrough();
    return sub;
  };
  add("identities", "tensor identity and theorem-identity suites", false);
  add("gradcheck", "analytic vs finite-difference Piola stress", false);
  add("ellipticity", "strong-ellipticity scan for one model", true);
  add("injectivity", "rank-one injectivity search for one model", true);
  add("twins", "rank-one twins with equal left Cauchy-Green tensor", false);
  add("blatzko-scan", "Blatz-Ko spherical stress along B = alpha 1", false);
  add("pc-check", "pressure-compression sign check for one model", true);
  add("all", "every suite over every configured model", false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    rr::RunConfig cfg = config_path.empty() ? rr::RunConfig::defaults()
                                            : rr::load_config(config_path);
    if (const auto s = env_seed()) cfg.seed = rank1lab::Seed{*s};
    if (seed) cfg.seed = rank1lab::Seed{*seed};
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (threads) cfg.threads = *threads;

    const rr::RunOutcome outcome = rr::run_command(command, model, cfg);
    rr::write_outputs(outcome, cfg.output_dir);
    if (json_stdout) std::cout << rr::dump(outcome.report);
    std::cerr << command << (model.empty() ? "" : " " + model) << ": "
              << outcome.report["verdict"].get<std::string>()
              << (outcome.report["violations_found"].get<bool>() ? " (findings)" : "")
              << ", report in " << (cfg.output_dir / "report.json").string() << "\n";
    return outcome.exit_code;
  } catch (const rr::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const rr::OutputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
