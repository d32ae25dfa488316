#include "hrlab/hrlab.h"

#include <string>

#include "io/results.hpp"
#include "runner.hpp"

using namespace hrlab;

struct hrlab_session {
  Manifest manifest;
  bool has_config = false;
  RunOptions options;
  std::string last_error;
  std::string result_json;
  std::string result_files;
  std::string config_hash;
  bool has_result = false;
};

namespace {

int guard(hrlab_session* s, int (*body)(hrlab_session*, void*), void* arg) {
  if (!s) return HRLAB_ERR_ARGUMENT;
  s->last_error.clear();
  try {
    return body(s, arg);
  } catch (const DomainError& e) {
    s->last_error = e.what();
    return HRLAB_ERR_ARGUMENT;
  } catch (const NumericalError& e) {
    s->last_error = e.what();
    return HRLAB_ERR_NUMERIC;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return HRLAB_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* hrlab_version(void) { return kToolVersion; }

hrlab_session* hrlab_session_new(void) { return new (std::nothrow) hrlab_session(); }

void hrlab_session_free(hrlab_session* s) { delete s; }

int hrlab_load_config_file(hrlab_session* s, const char* path) {
  if (!path) return HRLAB_ERR_ARGUMENT;
  struct Arg { const char* p; } arg{path};
  return guard(s, [](hrlab_session* ss, void* a) {
    ss->manifest = Manifest::parse_file(static_cast<Arg*>(a)->p);
    ss->has_config = true;
    ss->config_hash = ss->manifest.hash();
    return int(HRLAB_OK);
  }, &arg);
}

int hrlab_load_config_text(hrlab_session* s, const char* text) {
  if (!text) return HRLAB_ERR_ARGUMENT;
  struct Arg { const char* t; } arg{text};
  return guard(s, [](hrlab_session* ss, void* a) {
    ss->manifest = Manifest::parse_string(static_cast<Arg*>(a)->t);
    ss->has_config = true;
    ss->config_hash = ss->manifest.hash();
    return int(HRLAB_OK);
  }, &arg);
}

int hrlab_set_option(hrlab_session* s, const char* key, const char* value) {
  if (!key || !value) return HRLAB_ERR_ARGUMENT;
  struct Arg { const char* k; const char* v; } arg{key, value};
  return guard(s, [](hrlab_session* ss, void* a) {
    auto* ar = static_cast<Arg*>(a);
    const std::string k = ar->k, v = ar->v;
    if (k == "out_dir") ss->options.out_dir = v;
    else if (k == "no_cache") ss->options.no_cache = (v == "1" || v == "true");
    else if (k == "plot") ss->options.plot = (v == "1" || v == "true");
    else throw DomainError("unknown option: " + k);
    return int(HRLAB_OK);
  }, &arg);
}

int hrlab_run(hrlab_session* s, const char* command) {
  if (!command) return HRLAB_ERR_ARGUMENT;
  struct Arg { const char* c; } arg{command};
  return guard(s, [](hrlab_session* ss, void* a) {
    if (!ss->has_config) throw DomainError("no configuration loaded");
    RunOutcome oc = run_command(static_cast<Arg*>(a)->c, ss->manifest, ss->options);
    ss->result_json = oc.envelope.to_json().dump(2);
    ss->result_files.clear();
    for (const auto& f : oc.files) {
      ss->result_files += f;
      ss->result_files += "\n";
    }
    ss->has_result = true;
    return oc.exit_code == 0 ? int(HRLAB_OK) : int(HRLAB_ERR_CHECK_FAILED);
  }, &arg);
}

const char* hrlab_result_json(const hrlab_session* s) {
  return s && s->has_result ? s->result_json.c_str() : nullptr;
}

const char* hrlab_result_files(const hrlab_session* s) {
  return s && s->has_result ? s->result_files.c_str() : nullptr;
}

const char* hrlab_config_hash(const hrlab_session* s) {
  return s && s->has_config ? s->config_hash.c_str() : nullptr;
}

const char* hrlab_last_error(const hrlab_session* s) {
  static const char* empty = "";
  return s ? s->last_error.c_str() : empty;
}

int hrlab_plot_file(hrlab_session* s, const char* result_json_path, const char* kind,
                    const char* svg_out_path) {
  if (!result_json_path || !kind || !svg_out_path) return HRLAB_ERR_ARGUMENT;
  struct Arg { const char *r, *k, *o; } arg{result_json_path, kind, svg_out_path};
  return guard(s, [](hrlab_session*, void* a) {
    auto* ar = static_cast<Arg*>(a);
    plot_result_file(ar->r, ar->k, ar->o);
    return int(HRLAB_OK);
  }, &arg);
}

}  // extern "C"
