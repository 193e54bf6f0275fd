#include <string>

#include "CLI11.hpp"
#include "hope/io/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"HOPE solver for Maxwell scattering by biperiodic inhomogeneous slabs"};
  app.require_subcommand(1, 1);
  hope::io::CliOptions opts;

  const std::pair<const char*, const char*> subs[] = {
      {"solve", "Taylor expansion plus Taylor and Pade summed efficiencies"},
      {"converge", "Error table and slopes of the Taylor partial sums"},
      {"continue", "Sweep of delta with Taylor, Pade and oracle columns"},
      {"envelope-plot", "Envelope and permittivity grids over an (x, z) slice"},
      {"oracle", "Transfer-matrix reflectance sweep for laminar envelopes"}};
  for (const auto& [name, help] : subs) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opts.config_path, "INI configuration file")->required();
    sub->add_option("--out", opts.out_dir, "Output directory (default: $HOPE_OUT_DIR or hope_out)");
    sub->add_option("--threads", opts.threads, "Worker threads (0: runtime default)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", opts.seed, "Seed recorded for randomized utilities");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  opts.subcommand = app.get_subcommands().front()->get_name();
  return hope::io::run(opts);
}
