#include "commands.hpp"

#include <dispmap/error.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

int main(int argc, char** argv) {
  using namespace dispmap;
  CLI::App app{"Effective dispersive map toolkit: rates, transients and exact benchmarks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  unsigned threads = 1;
  bool no_header = false;
  app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "Output file (default: stdout)");
  app.add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_flag("--no-header", no_header, "Omit the leading comment line with the run time");

  const cli::CommandEntry* chosen = nullptr;
  for (const auto& entry : cli::commands()) {
    CLI::App* sub = app.add_subcommand(entry.name, entry.description);
    sub->fallthrough();
    sub->callback([&chosen, &entry] { chosen = &entry; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    std::unique_ptr<std::ofstream> file;
    if (!out_path.empty()) {
      file = std::make_unique<std::ofstream>(out_path);
      if (!*file) throw ConfigError("cannot open output file '" + out_path + "'");
    }
    std::ostream& out = file ? *file : std::cout;
    cli::CommandOptions opts;
    opts.threads = threads;
    opts.header_comment = !no_header;
    const int code = chosen->run(cfg, out, opts);
    out.flush();
    if (!out) throw ConfigError("failed writing output");
    return code;
  } catch (const TrackingLostError& e) {
    std::cerr << "error: " << e.what() << " (omega_c = " << e.omega_c_mhz() << " MHz)\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
