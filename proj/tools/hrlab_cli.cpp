// hrlab command-line driver. Links the C API only.
//
//   hrlab <command> --config <path> [--out <dir>] [--no-cache] [--plot]
//   hrlab plot <result.json> --kind <dispersion|lightcone|packet|overlap> --out-file <svg>
//
// Exit codes: 0 success, 1 FAIL verdicts, 2 usage/config errors, 3 numerical.

#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "hrlab/hrlab.h"

namespace {

struct SessionDeleter {
  void operator()(hrlab_session* s) const { hrlab_session_free(s); }
};
using Session = std::unique_ptr<hrlab_session, SessionDeleter>;

int map_status(int rc) {
  switch (rc) {
    case HRLAB_OK: return 0;
    case HRLAB_ERR_CHECK_FAILED: return 1;
    case HRLAB_ERR_ARGUMENT: return 2;
    case HRLAB_ERR_NUMERIC: return 3;
    default: return 4;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hrlab - finite-lattice scattering diagnostics for gapped spin chains"};
  app.require_subcommand(1);
  app.failure_message([](const CLI::App* a, const CLI::Error& e) {
    return CLI::FailureMessage::help(a, e);
  });

  const char* commands[] = {"certify", "spectrum", "lightcone", "massshell",
                            "arveson", "scatter",  "gapflow",   "all"};
  struct Common {
    std::string config;
    std::string out = "hrlab-out";
    bool no_cache = false;
    bool plot = false;
  };
  std::map<std::string, Common> opts;
  for (const char* c : commands) {
    auto* sub = app.add_subcommand(c);
    auto& o = opts[c];
    sub->add_option("--config", o.config, "experiment manifest")->required();
    sub->add_option("--out", o.out, "output directory");
    sub->add_flag("--no-cache", o.no_cache, "recompute even on a cache hit");
    sub->add_flag("--plot", o.plot, "emit SVG plots next to the results");
  }

  std::string plot_in, plot_kind, plot_out = "plot.svg";
  auto* plot_cmd = app.add_subcommand("plot", "render an emitted result file");
  plot_cmd->add_option("result", plot_in, "result JSON file")->required();
  plot_cmd->add_option("--kind", plot_kind, "dispersion|lightcone|packet|overlap")->required();
  plot_cmd->add_option("--out-file", plot_out, "SVG output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // unknown command / bad usage
  }

  Session s(hrlab_session_new());
  if (!s) {
    std::fprintf(stderr, "error: cannot create session\n");
    return 4;
  }

  if (plot_cmd->parsed()) {
    int rc = hrlab_plot_file(s.get(), plot_in.c_str(), plot_kind.c_str(), plot_out.c_str());
    if (rc != HRLAB_OK) {
      std::fprintf(stderr, "error: %s\n", hrlab_last_error(s.get()));
      return map_status(rc);
    }
    std::printf("%s\n", plot_out.c_str());
    return 0;
  }

  for (const char* c : commands) {
    auto* sub = app.get_subcommand(c);
    if (!sub->parsed()) continue;
    const Common& o = opts[c];
    int rc = hrlab_load_config_file(s.get(), o.config.c_str());
    if (rc != HRLAB_OK) {
      std::fprintf(stderr, "error: %s\n", hrlab_last_error(s.get()));
      return map_status(rc);
    }
    hrlab_set_option(s.get(), "out_dir", o.out.c_str());
    hrlab_set_option(s.get(), "no_cache", o.no_cache ? "1" : "0");
    hrlab_set_option(s.get(), "plot", o.plot ? "1" : "0");
    rc = hrlab_run(s.get(), c);
    if (rc == HRLAB_OK || rc == HRLAB_ERR_CHECK_FAILED) {
      const char* files = hrlab_result_files(s.get());
      if (files) std::fputs(files, stdout);
      if (rc == HRLAB_ERR_CHECK_FAILED)
        std::fprintf(stderr, "one or more verdicts FAILED (see result JSON)\n");
    } else {
      std::fprintf(stderr, "error: %s\n", hrlab_last_error(s.get()));
    }
    return map_status(rc);
  }
  return 2;
}
