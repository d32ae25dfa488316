#pragma once

#include <string>
#include <vector>

#include "io/config.hpp"
#include "io/results.hpp"

namespace hrlab {

struct RunOptions {
  std::string out_dir = "hrlab-out";
  bool no_cache = false;
  bool plot = false;
};

struct RunOutcome {
  int exit_code = 0;  // 0 ok, 1 FAIL verdicts present
  ResultEnvelope envelope;
  std::vector<std::string> files;   // emitted paths
  bool from_cache = false;
};

inline const std::vector<std::string> kCommands = {"certify", "spectrum", "lightcone",
                                                   "massshell", "arveson", "scatter",
                                                   "gapflow", "all"};

// Executes one command; `all` runs the acceptance-relevant commands in
// dependency order and aggregates verdicts. Results are cached keyed by
// (config hash, command, version) unless no_cache is set.
RunOutcome run_command(const std::string& command, const Manifest& manifest,
                       const RunOptions& opt);

// Renders `kind` from a result envelope JSON file into an SVG file.
void plot_result_file(const std::string& result_path, const std::string& kind,
                      const std::string& svg_path);

}  // namespace hrlab
