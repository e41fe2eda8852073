#include "irp/irp.h"

#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "benchgen/benchgen.hpp"
#include "io/formats.hpp"
#include "model/errors.hpp"
#include "model/evaluate.hpp"
#include "search/enumerate.hpp"
#include "search/search.hpp"
#include "service/http_api.hpp"
#include "service/run_registry.hpp"

struct irp_instance {
  std::shared_ptr<const irp::Instance> inst;
};

struct irp_validation {
  irp::ValidationReport report;
  std::vector<std::string> messages;
};

struct irp_result {
  std::shared_ptr<const irp::Instance> inst;
  irp::search::SearchConfig config;
  irp::search::SearchStats stats;
  irp::pareto::Archive archive;
  std::string statsLine;
};

struct irp_routing_problem {
  irp::vrp::RoutingProblem problem;
};

struct irp_routing_solution {
  irp::vrp::RoutingSolution solution;
};

struct irp_server {
  std::unique_ptr<irp::service::HttpServer> server;
};

namespace {

thread_local std::string lastError;

irp_status fail(irp_status status, const std::string& message) {
  lastError = message;
  return status;
}

template <typename F>
irp_status guarded(F&& body) {
  try {
    body();
    return IRP_OK;
  } catch (const irp::ContractError& e) {
    return fail(IRP_ERR_CONTRACT, e.what());
  } catch (const irp::FormatError& e) {
    return fail(IRP_ERR_FORMAT, e.what());
  } catch (const irp::IoError& e) {
    return fail(IRP_ERR_IO, e.what());
  } catch (const irp::ValidationError& e) {
    return fail(IRP_ERR_VALIDATION, e.what());
  } catch (const irp::service::InvalidInstanceError& e) {
    return fail(IRP_ERR_VALIDATION, e.what());
  } catch (const std::out_of_range& e) {
    return fail(IRP_ERR_CONTRACT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(IRP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(IRP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(IRP_ERR_INTERNAL, "unknown error");
  }
}

void requireArg(bool ok, const char* what) {
  if (!ok) throw irp::ContractError(std::string("null argument: ") + what);
}

irp::vrp::Solver toSolver(irp_vrp_solver s) {
  switch (s) {
    case IRP_VRP_SAVINGS: return irp::vrp::Solver::Savings;
    case IRP_VRP_RTR: return irp::vrp::Solver::Rtr;
    case IRP_VRP_EXACT: return irp::vrp::Solver::Exact;
  }
  throw irp::ContractError("unknown routing solver " + std::to_string(static_cast<int>(s)));
}

irp::search::SearchConfig toConfig(const irp_search_config& c) {
  irp::search::SearchConfig cfg;
  cfg.refPointCount = c.ref_points;
  cfg.solver = toSolver(c.solver);
  cfg.seed = c.seed;
  cfg.mixedSamples = c.mixed_samples;
  if (c.max_steps > 0) cfg.maxSteps = c.max_steps;
  if (c.max_evaluations > 0) cfg.maxEvaluations = c.max_evaluations;
  if (c.max_seconds > 0) cfg.maxSeconds = c.max_seconds;
  cfg.threads = c.threads;
  return cfg;
}

irp::FrequencyVector toFreqs(const int32_t* freqs, size_t count) {
  requireArg(freqs != nullptr || count == 0, "freqs");
  return irp::FrequencyVector(std::vector<int>(freqs, freqs + count));
}

}  // namespace

extern "C" {

const char* irp_version(void) { return "1.0.0"; }

const char* irp_last_error(void) { return lastError.c_str(); }

const char* irp_status_name(irp_status status) {
  switch (status) {
    case IRP_OK: return "ok";
    case IRP_ERR_IO: return "io";
    case IRP_ERR_FORMAT: return "format";
    case IRP_ERR_VALIDATION: return "validation";
    case IRP_ERR_CONTRACT: return "contract";
    case IRP_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

irp_status irp_instance_load(const char* path, irp_instance** out) {
  return guarded([&] {
    requireArg(path && out, "path/out");
    *out = nullptr;
    auto inst = irp::io::loadInstance(path);
    *out = new irp_instance{std::make_shared<const irp::Instance>(std::move(inst))};
  });
}

irp_status irp_instance_parse(const char* text, size_t length, irp_instance** out) {
  return guarded([&] {
    requireArg(text && out, "text/out");
    *out = nullptr;
    auto inst = irp::io::parseInstance(std::string_view(text, length));
    *out = new irp_instance{std::make_shared<const irp::Instance>(std::move(inst))};
  });
}

irp_status irp_instance_save(const irp_instance* inst, const char* path) {
  return guarded([&] {
    requireArg(inst && path, "inst/path");
    irp::io::saveInstance(*inst->inst, path);
  });
}

void irp_instance_free(irp_instance* inst) { delete inst; }

size_t irp_instance_customer_count(const irp_instance* inst) {
  return inst ? inst->inst->customerCount() : 0;
}

int32_t irp_instance_horizon(const irp_instance* inst) { return inst ? inst->inst->horizon : 0; }

const char* irp_instance_name(const irp_instance* inst) {
  return inst ? inst->inst->name.c_str() : "";
}

irp_status irp_instance_validate(const irp_instance* inst, irp_validation** out) {
  return guarded([&] {
    requireArg(inst && out, "inst/out");
    *out = nullptr;
    auto v = std::make_unique<irp_validation>();
    v->report = irp::validateInstance(*inst->inst);
    for (const auto& violation : v->report.violations) {
      std::string msg;
      if (violation.customerId >= 0) msg += "customer " + std::to_string(violation.customerId);
      if (violation.period > 0) {
        msg += (msg.empty() ? "" : ", ") + std::string("period ") + std::to_string(violation.period);
      }
      msg += (msg.empty() ? "" : ": ") + violation.message;
      v->messages.push_back(std::move(msg));
    }
    *out = v.release();
  });
}

int irp_validation_ok(const irp_validation* report) { return report && report->report.ok(); }

size_t irp_validation_count(const irp_validation* report) {
  return report ? report->messages.size() : 0;
}

const char* irp_validation_message(const irp_validation* report, size_t index) {
  if (!report || index >= report->messages.size()) return "";
  return report->messages[index].c_str();
}

void irp_validation_free(irp_validation* report) { delete report; }

irp_status irp_evaluate(const irp_instance* inst, const int32_t* freqs, size_t count,
                        irp_vrp_solver solver, uint64_t seed, double* inventory,
                        double* distance) {
  return guarded([&] {
    requireArg(inst && inventory && distance, "inst/inventory/distance");
    irp::requireValid(*inst->inst);
    irp::EvalSettings settings;
    settings.solver = toSolver(solver);
    settings.seed = seed;
    const auto obj = irp::evaluateObjectives(*inst->inst, toFreqs(freqs, count), settings);
    *inventory = obj.inventory;
    *distance = obj.distance;
  });
}

void irp_scenario_spec_default(irp_scenario_spec* spec) {
  if (!spec) return;
  const irp::bench::ScenarioSpec d;
  spec->kind = 'a';
  spec->horizon = d.horizon;
  spec->deviation = d.deviation;
  spec->seed = d.seed;
  spec->storage_cap_factor = d.storageCapFactor;
}

irp_status irp_generate(const char* geometry_path, const irp_scenario_spec* spec,
                        int64_t vehicle_cap, irp_instance** out, size_t* clamped) {
  return guarded([&] {
    requireArg(geometry_path && spec && out, "geometry_path/spec/out");
    *out = nullptr;
    irp::bench::ScenarioSpec s;
    s.kind = irp::bench::scenarioFromString(std::string(1, spec->kind));
    s.horizon = spec->horizon;
    s.deviation = spec->deviation;
    s.seed = spec->seed;
    s.storageCapFactor = spec->storage_cap_factor;
    s.check();
    const auto geometry = irp::bench::loadGeometry(geometry_path);
    irp::bench::GenerationReport report;
    auto inst = irp::bench::generateInstance(geometry, s, vehicle_cap, &report);
    if (clamped) *clamped = report.clampedDemands;
    *out = new irp_instance{std::make_shared<const irp::Instance>(std::move(inst))};
  });
}

void irp_search_config_default(irp_search_config* cfg) {
  if (!cfg) return;
  const irp::search::SearchConfig d;
  cfg->ref_points = d.refPointCount;
  cfg->solver = IRP_VRP_SAVINGS;
  cfg->seed = d.seed;
  cfg->mixed_samples = d.mixedSamples;
  cfg->max_steps = 0;
  cfg->max_evaluations = 0;
  cfg->max_seconds = 0.0;
  cfg->threads = d.threads;
}

irp_status irp_solve(const irp_instance* inst, const irp_search_config* cfg, irp_result** out) {
  return guarded([&] {
    requireArg(inst && cfg && out, "inst/cfg/out");
    *out = nullptr;
    irp::search::Search search(inst->inst, toConfig(*cfg));
    search.run();
    auto res = std::make_unique<irp_result>();
    res->inst = inst->inst;
    res->config = search.config();
    res->stats = search.stats();
    res->archive = search.archive();
    res->statsLine = irp::io::statsLine(res->stats);
    *out = res.release();
  });
}

irp_status irp_enumerate(const irp_instance* inst, int32_t max_freq, int32_t threads,
                         irp_result** out) {
  return guarded([&] {
    requireArg(inst && out, "inst/out");
    *out = nullptr;
    irp::requireValid(*inst->inst);
    const auto start = std::chrono::steady_clock::now();
    auto front = irp::search::enumerateFront(*inst->inst, max_freq, threads);
    auto res = std::make_unique<irp_result>();
    res->inst = inst->inst;
    res->config.solver = irp::vrp::Solver::Exact;
    res->config.threads = threads;
    res->stats.evaluations = static_cast<std::int64_t>(front.evaluations);
    res->stats.archiveSize = static_cast<std::int64_t>(front.front.size());
    res->stats.elapsedSeconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    res->archive = std::move(front.front);
    res->statsLine = irp::io::statsLine(res->stats);
    *out = res.release();
  });
}

void irp_result_stats(const irp_result* res, irp_stats* out) {
  if (!res || !out) return;
  out->steps = res->stats.steps;
  out->evaluations = res->stats.evaluations;
  out->archive_size = res->stats.archiveSize;
  out->cpu_seconds = res->stats.cpuSeconds;
  out->elapsed_seconds = res->stats.elapsedSeconds;
}

size_t irp_result_size(const irp_result* res) { return res ? res->archive.size() : 0; }

irp_status irp_result_entry(const irp_result* res, size_t index, double* inventory,
                            double* distance, int32_t* freqs) {
  return guarded([&] {
    requireArg(res != nullptr, "res");
    if (index >= res->archive.size()) {
      throw irp::ContractError("entry index " + std::to_string(index) + " out of range");
    }
    const auto& e = res->archive.entries()[index];
    if (inventory) *inventory = e.objectives.inventory;
    if (distance) *distance = e.objectives.distance;
    if (freqs) {
      for (std::size_t i = 0; i < e.freqs.size(); ++i) freqs[i] = e.freqs[i];
    }
  });
}

irp_status irp_result_write_archive(const irp_result* res, const char* path) {
  return guarded([&] {
    requireArg(res && path, "res/path");
    std::ostringstream out;
    irp::pareto::writeCsv(out, res->archive, res->inst->customerCount());
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
      std::error_code ec;
      std::filesystem::create_directories(p.parent_path(), ec);
    }
    irp::io::writeFile(p, out.str());
  });
}

irp_status irp_result_write_bundle(const irp_result* res, const char* dir) {
  return guarded([&] {
    requireArg(res && dir, "res/dir");
    irp::io::writeBundle(dir, *res->inst, res->config, res->stats, res->archive);
  });
}

const char* irp_result_stats_line(const irp_result* res) {
  return res ? res->statsLine.c_str() : "";
}

void irp_result_free(irp_result* res) { delete res; }

irp_status irp_routing_problem_load(const char* path, irp_routing_problem** out) {
  return guarded([&] {
    requireArg(path && out, "path/out");
    *out = nullptr;
    *out = new irp_routing_problem{irp::io::loadRoutingProblem(path)};
  });
}

void irp_routing_problem_free(irp_routing_problem* p) { delete p; }

irp_status irp_vrp_solve(const irp_routing_problem* p, irp_vrp_solver solver, uint64_t seed,
                         irp_routing_solution** out) {
  return guarded([&] {
    requireArg(p && out, "problem/out");
    *out = nullptr;
    *out = new irp_routing_solution{irp::vrp::solve(p->problem, toSolver(solver), seed)};
  });
}

double irp_routing_solution_distance(const irp_routing_solution* s) {
  return s ? s->solution.totalDistance : 0.0;
}

size_t irp_routing_solution_route_count(const irp_routing_solution* s) {
  return s ? s->solution.routes.size() : 0;
}

irp_status irp_routing_solution_save(const irp_routing_solution* s, const char* path) {
  return guarded([&] {
    requireArg(s && path, "solution/path");
    irp::io::writeFile(path, irp::io::routingSolutionJson(s->solution).dump(2) + "\n");
  });
}

void irp_routing_solution_free(irp_routing_solution* s) { delete s; }

irp_status irp_server_create(const char* data_dir, irp_server** out) {
  return guarded([&] {
    requireArg(data_dir && out, "data_dir/out");
    *out = nullptr;
    *out = new irp_server{std::make_unique<irp::service::HttpServer>(data_dir)};
  });
}

irp_status irp_server_set_static_dir(irp_server* server, const char* dir) {
  return guarded([&] {
    requireArg(server && dir, "server/dir");
    if (!server->server->setStaticDir(dir)) {
      throw irp::IoError(std::string("static directory '") + dir + "' not found");
    }
  });
}

irp_status irp_server_listen(irp_server* server, const char* host, int port) {
  return guarded([&] {
    requireArg(server && host, "server/host");
    if (!server->server->listen(host, port)) {
      throw irp::IoError(std::string("cannot listen on ") + host + ":" + std::to_string(port));
    }
  });
}

void irp_server_stop(irp_server* server) {
  if (server) server->server->stop();
}

void irp_server_free(irp_server* server) { delete server; }

}  // extern "C"
