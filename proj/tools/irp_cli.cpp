// irp: command line front end to the inventory routing solver library.

#include <csignal>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <thread>

#include <pthread.h>

#include <CLI11.hpp>

#include "irp/irp.h"

namespace {

enum ExitCode { kOk = 0, kIoError = 1, kUsageError = 2, kInternalError = 3 };

int exitCodeFor(irp_status status) {
  switch (status) {
    case IRP_OK: return kOk;
    case IRP_ERR_IO: return kIoError;
    case IRP_ERR_FORMAT:
    case IRP_ERR_VALIDATION:
    case IRP_ERR_CONTRACT: return kUsageError;
    case IRP_ERR_INTERNAL: return kInternalError;
  }
  return kInternalError;
}

int report(irp_status status) {
  if (status != IRP_OK) std::cerr << "irp: error: " << irp_last_error() << "\n";
  return exitCodeFor(status);
}

// Frees the handle on scope exit.
template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  ~Handle() { Free(ptr); }
};

irp_vrp_solver parseSolver(const std::string& name) {
  if (name == "rtr") return IRP_VRP_RTR;
  if (name == "exact") return IRP_VRP_EXACT;
  return IRP_VRP_SAVINGS;
}

int loadInstance(const std::string& path, irp_instance** out) {
  return report(irp_instance_load(path.c_str(), out));
}

struct GenerateArgs {
  std::string geometry;
  std::string scenario = "a";
  int periods = 240;
  std::uint64_t seed = 1;
  std::int64_t capacity = 0;
  std::string out;
  double deviation = 0.25;
  double storageFactor = 10.0;
};

int cmdGenerate(const GenerateArgs& a) {
  irp_scenario_spec spec;
  irp_scenario_spec_default(&spec);
  spec.kind = a.scenario.front();
  spec.horizon = a.periods;
  spec.seed = a.seed;
  spec.deviation = a.deviation;
  spec.storage_cap_factor = a.storageFactor;
  Handle<irp_instance, irp_instance_free> inst;
  size_t clamped = 0;
  if (int rc = report(irp_generate(a.geometry.c_str(), &spec, a.capacity, &inst.ptr, &clamped))) {
    return rc;
  }
  if (clamped > 0) {
    std::cerr << "irp: note: " << clamped << " demand draws clamped to min(storage, vehicle) capacity\n";
  }
  return report(irp_instance_save(inst.ptr, a.out.c_str()));
}

struct SolveArgs {
  std::string instance;
  int refPoints = 3;
  std::string vrp = "savings";
  std::uint64_t seed = 1;
  std::string out;
  std::int64_t maxSteps = 0;
  int threads = 0;
  int mixed = 5;
};

int cmdSolve(const SolveArgs& a) {
  Handle<irp_instance, irp_instance_free> inst;
  if (int rc = loadInstance(a.instance, &inst.ptr)) return rc;
  irp_search_config cfg;
  irp_search_config_default(&cfg);
  cfg.ref_points = a.refPoints;
  cfg.solver = parseSolver(a.vrp);
  cfg.seed = a.seed;
  cfg.max_steps = a.maxSteps;
  cfg.threads = a.threads;
  cfg.mixed_samples = a.mixed;
  Handle<irp_result, irp_result_free> res;
  if (int rc = report(irp_solve(inst.ptr, &cfg, &res.ptr))) return rc;
  if (int rc = report(irp_result_write_bundle(res.ptr, a.out.c_str()))) return rc;
  std::cout << irp_result_stats_line(res.ptr) << "\n";
  return kOk;
}

struct EnumerateArgs {
  std::string instance;
  int maxFreq = 1;
  std::string out;
  int threads = 0;
};

int cmdEnumerate(const EnumerateArgs& a) {
  Handle<irp_instance, irp_instance_free> inst;
  if (int rc = loadInstance(a.instance, &inst.ptr)) return rc;
  Handle<irp_result, irp_result_free> res;
  if (int rc = report(irp_enumerate(inst.ptr, a.maxFreq, a.threads, &res.ptr))) return rc;
  if (int rc = report(irp_result_write_archive(res.ptr, a.out.c_str()))) return rc;
  std::cout << irp_result_stats_line(res.ptr) << "\n";
  return kOk;
}

struct VrpArgs {
  std::string problem;
  std::string solver = "savings";
  std::uint64_t seed = 1;
  std::string out;
};

int cmdVrpSolve(const VrpArgs& a) {
  Handle<irp_routing_problem, irp_routing_problem_free> problem;
  if (int rc = report(irp_routing_problem_load(a.problem.c_str(), &problem.ptr))) return rc;
  Handle<irp_routing_solution, irp_routing_solution_free> sol;
  if (int rc = report(irp_vrp_solve(problem.ptr, parseSolver(a.solver), a.seed, &sol.ptr))) {
    return rc;
  }
  if (!a.out.empty()) {
    if (int rc = report(irp_routing_solution_save(sol.ptr, a.out.c_str()))) return rc;
  }
  std::printf("distance=%.6f routes=%zu\n", irp_routing_solution_distance(sol.ptr),
              irp_routing_solution_route_count(sol.ptr));
  return kOk;
}

struct ServeArgs {
  std::string data = "data";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string staticDir;
};

int cmdServe(const ServeArgs& a) {
  // Block termination signals in every thread; a dedicated thread waits for
  // them and shuts the server down.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  Handle<irp_server, irp_server_free> server;
  if (int rc = report(irp_server_create(a.data.c_str(), &server.ptr))) return rc;
  if (!a.staticDir.empty()) {
    if (int rc = report(irp_server_set_static_dir(server.ptr, a.staticDir.c_str()))) return rc;
  }

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    irp_server_stop(server.ptr);
  });
  std::cerr << "irp: serving " << a.data << " on http://" << a.host << ":" << a.port << "\n";
  const int rc = report(irp_server_listen(server.ptr, a.host.c_str(), a.port));
  if (rc != kOk) {
    pthread_kill(waiter.native_handle(), SIGTERM);
  }
  waiter.join();
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biobjective inventory routing solver"};
  app.require_subcommand(1);
  app.set_version_flag("--version", irp_version());

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a benchmark instance from a geometry file");
  generate->add_option("--geometry", gen.geometry, "Geometry listing (depot and customers)")
      ->required();
  generate->add_option("--scenario", gen.scenario, "Demand scenario")
      ->check(CLI::IsMember({"a", "b", "c"}));
  generate->add_option("--periods", gen.periods, "Planning horizon T")->required();
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--capacity", gen.capacity, "Vehicle capacity C")->required();
  generate->add_option("--out", gen.out, "Output instance file")->required();
  generate->add_option("--deviation", gen.deviation, "Relative demand deviation");
  generate->add_option("--storage-factor", gen.storageFactor, "Storage capacity in base demands");

  SolveArgs sol;
  auto* solve = app.add_subcommand("solve", "Approximate the Pareto front of an instance");
  solve->add_option("--instance", sol.instance, "Instance file")->required();
  solve->add_option("--refpoints", sol.refPoints, "Number of reference points (odd, >= 3)");
  solve->add_option("--vrp", sol.vrp, "Routing heuristic")
      ->check(CLI::IsMember({"savings", "rtr", "exact"}));
  solve->add_option("--seed", sol.seed, "Random seed");
  solve->add_option("--out", sol.out, "Output bundle directory")->required();
  solve->add_option("--max-steps", sol.maxSteps, "Stop after this many improvement steps");
  solve->add_option("--threads", sol.threads, "Worker threads (0 = all cores)");
  solve->add_option("--mixed", sol.mixed, "Random vectors per frequency pair in construction");

  EnumerateArgs en;
  auto* enumerate = app.add_subcommand("enumerate", "Exact Pareto front by full enumeration");
  enumerate->add_option("--instance", en.instance, "Instance file")->required();
  enumerate->add_option("--max-freq", en.maxFreq, "Largest frequency K")->required();
  enumerate->add_option("--out", en.out, "Output archive CSV")->required();
  enumerate->add_option("--threads", en.threads, "Worker threads (0 = all cores)");

  VrpArgs vrp;
  auto* vrpSolve = app.add_subcommand("vrp-solve", "Solve a single capacitated routing problem");
  vrpSolve->add_option("--problem", vrp.problem, "Routing problem file")->required();
  vrpSolve->add_option("--solver", vrp.solver, "Routing method")
      ->check(CLI::IsMember({"savings", "rtr", "exact"}));
  vrpSolve->add_option("--seed", vrp.seed, "Random seed");
  vrpSolve->add_option("--out", vrp.out, "Output solution file");

  ServeArgs srv;
  auto* serve = app.add_subcommand("serve", "Run the decision-support HTTP service");
  serve->add_option("--data", srv.data, "Data directory");
  serve->add_option("--host", srv.host, "Bind address");
  serve->add_option("--port", srv.port, "Port");
  serve->add_option("--static", srv.staticDir, "Directory with the built web client");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  if (*generate) return cmdGenerate(gen);
  if (*solve) return cmdSolve(sol);
  if (*enumerate) return cmdEnumerate(en);
  if (*vrpSolve) return cmdVrpSolve(vrp);
  if (*serve) return cmdServe(srv);
  return kUsageError;
}
