/// @file capi.cpp
/// @brief extern-C shared-library surface over the solver core.

#include "dgmc/dgmc.h"

#include "run_config.hpp"
#include "runner.hpp"

#include <json.hpp>

#include <cstring>
#include <sstream>
#include <string>

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : "unknown error"; }

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream iss(text);
  while (std::getline(iss, cur, ',')) {
    // trim surrounding whitespace
    std::size_t b = cur.find_first_not_of(" \t");
    std::size_t e = cur.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
  }
  return out;
}

} // namespace

struct dgmc_config {
  dgmc::RunConfig cfg;
};

struct dgmc_report {
  int status = DGMC_OK;
  nlohmann::json summary;
  std::string json_text;
};

extern "C" {

dgmc_config* dgmc_config_create(void) {
  g_last_error.clear();
  return new (std::nothrow) dgmc_config;
}

void dgmc_config_destroy(dgmc_config* cfg) { delete cfg; }

int dgmc_config_load_file(dgmc_config* cfg, const char* path) {
  if (!cfg || !path) {
    set_error("null argument");
    return DGMC_ERROR;
  }
  try {
    dgmc::apply_config_file(cfg->cfg, path);
    return DGMC_OK;
  } catch (const std::exception& e) {
    set_error(e.what());
    return DGMC_ERROR;
  }
}

int dgmc_config_set(dgmc_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) {
    set_error("null argument");
    return DGMC_ERROR;
  }
  try {
    dgmc::apply_config_entry(cfg->cfg, key, value);
    return DGMC_OK;
  } catch (const std::exception& e) {
    set_error(e.what());
    return DGMC_ERROR;
  }
}

int dgmc_run_case(const dgmc_config* cfg, dgmc_report** out) {
  if (!cfg || !out) {
    set_error("null argument");
    return DGMC_ERROR;
  }
  *out = nullptr;
  try {
    const dgmc::RunReport rep = dgmc::run_case(cfg->cfg);
    auto* r = new dgmc_report;
    r->status = rep.exit_code() == 2 ? DGMC_DIVERGED : DGMC_OK;
    r->json_text = dgmc::write_run_json(rep);
    r->summary = nlohmann::json::parse(r->json_text);
    *out = r;
    return r->status;
  } catch (const std::exception& e) {
    set_error(e.what());
    return DGMC_ERROR;
  }
}

int dgmc_run_sweep(const dgmc_config* cfg, const char* axis, const char* values,
                   dgmc_report** out) {
  if (!cfg || !axis || !values || !out) {
    set_error("null argument");
    return DGMC_ERROR;
  }
  *out = nullptr;
  try {
    const dgmc::SweepReport rep = dgmc::run_sweep(cfg->cfg, axis, split_csv(values));
    auto* r = new dgmc_report;
    bool any_diverged = false;
    for (const dgmc::SweepPoint& pt : rep.points) any_diverged = any_diverged || pt.report.diverged;
    r->status = any_diverged ? DGMC_DIVERGED : DGMC_OK;
    r->json_text = dgmc::write_sweep_json(rep);
    r->summary = nlohmann::json::parse(r->json_text);
    *out = r;
    return r->status;
  } catch (const std::exception& e) {
    set_error(e.what());
    return DGMC_ERROR;
  }
}

void dgmc_report_destroy(dgmc_report* rep) { delete rep; }

int dgmc_report_status(const dgmc_report* rep) { return rep ? rep->status : DGMC_ERROR; }

int dgmc_report_metric(const dgmc_report* rep, const char* name, double* value) {
  if (!rep || !name || !value) {
    set_error("null argument");
    return DGMC_ERROR;
  }
  const auto it = rep->summary.find(name);
  if (it == rep->summary.end() || !it->is_number()) {
    set_error(("no numeric metric '" + std::string(name) + "'").c_str());
    return DGMC_ERROR;
  }
  *value = it->get<double>();
  return DGMC_OK;
}

const char* dgmc_report_json(const dgmc_report* rep) {
  return rep ? rep->json_text.c_str() : "";
}

const char* dgmc_last_error(void) { return g_last_error.c_str(); }

const char* dgmc_version(void) { return "0.1.0"; }

} // extern "C"
