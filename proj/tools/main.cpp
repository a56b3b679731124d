#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "dispatch.hpp"
#include "json.hpp"

int main(int argc, char** argv) {
  CLI::App app{"lvspread: fronts, simulations and certificates for the competitive Lotka-Volterra system"};
  std::string command, config, out;
  int threads = 0;
  std::vector<std::string> sets;
  bool print_config = false;
  app.add_option("command", command, "front | simulate | speed | zones | geometry | certify | radius-search");
  app.add_option("-c,--config", config, "INI config file");
  app.add_option("-o,--out", out, "run directory (run.out)");
  app.add_option("-t,--threads", threads, "thread cap (run.threads)")->check(CLI::PositiveNumber);
  app.add_option("-s,--set", sets, "override, section.key=value (repeatable)");
  app.add_flag("--print-config", print_config, "print the effective config and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : lvcli::kExitConfig;
  }

  lvcli::RunConfig cfg;
  try {
    if (!config.empty()) cfg = lvcli::parse_config_file(config);
    if (!command.empty()) lvcli::apply_override(cfg, "run.command=" + command);
    if (!out.empty()) lvcli::apply_override(cfg, "run.out=" + out);
    if (threads > 0) lvcli::apply_override(cfg, "run.threads=" + std::to_string(threads));
    for (const auto& s : sets) lvcli::apply_override(cfg, s);
    lvcli::validate(cfg);
  } catch (const lvcli::ConfigError& e) {
    const nlohmann::json rec = {{"status", "error"}, {"kind", "config"},        {"exit_code", lvcli::kExitConfig},
                                {"message", e.what()}, {"key", e.key()}};
    std::cerr << rec.dump() << "\n";
    return lvcli::kExitConfig;
  }
  if (print_config) {
    std::cout << cfg.dump();
    return 0;
  }
  return lvcli::dispatch(cfg, std::cout, std::cerr);
}
