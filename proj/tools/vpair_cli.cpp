#include <CLI11.hpp>

#include "vpair/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"steady vortex-patch pair solver"};
  vpair::RunSpec spec;
  app.add_option("--command", spec.command, "solve | continue | verify | expand-check | emit")
      ->required();
  app.add_option("--config", spec.config_path, "configuration file (key = value lines)")
      ->required();
  app.add_option("--out", spec.out_dir, "output directory (default: current)");
  app.add_option("--set", spec.overrides, "key=value override of a config entry (repeatable)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help exits cleanly, usage errors map to 1
  }
  return vpair::run_command(spec);
}
