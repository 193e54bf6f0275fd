#pragma once

#include <string>

namespace hope::io {

struct CliOptions {
  std::string subcommand;  // solve | converge | continue | envelope-plot | oracle
  std::string config_path;
  std::string out_dir;     // empty: HOPE_OUT_DIR, then "hope_out"
  int threads = 0;         // 0: runtime default
  unsigned long long seed = 0;
};

// Runs one subcommand and returns the process exit status. Errors are
// reported on stderr; the status distinguishes configuration errors, Wood
// anomalies, closure resonances and solver failures.
int run(const CliOptions& opts);

std::string resolve_out_dir(const std::string& flag);

}  // namespace hope::io
