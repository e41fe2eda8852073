#include "service/run_registry.hpp"

#include <fstream>

#include "io/formats.hpp"
#include "model/errors.hpp"

namespace irp::service {

namespace fs = std::filesystem;

struct RunRegistry::Run {
  std::string id;
  std::string instanceId;
  std::shared_ptr<const Instance> instance;

  std::mutex control;  // serializes refine / stop / worker hand-over
  std::unique_ptr<search::Search> search;
  std::jthread worker;
  int refinements = 0;

  mutable std::mutex snapMutex;
  std::shared_ptr<const RunSnapshot> snap;

  std::shared_ptr<const RunSnapshot> current() const {
    std::lock_guard lock(snapMutex);
    return snap;
  }
};

std::string_view toString(RunState s) {
  switch (s) {
    case RunState::Constructing: return "constructing";
    case RunState::Improving: return "improving";
    case RunState::Converged: return "converged";
    case RunState::Stopped: return "stopped";
    case RunState::Failed: return "failed";
  }
  return "failed";
}

RunState runStateFromString(std::string_view s) {
  for (auto st : {RunState::Constructing, RunState::Improving, RunState::Converged,
                  RunState::Stopped, RunState::Failed}) {
    if (toString(st) == s) return st;
  }
  throw FormatError("unknown run state '" + std::string(s) + "'");
}

RunRegistry::RunRegistry(fs::path dataDir) : dataDir_(std::move(dataDir)) {
  std::error_code ec;
  fs::create_directories(dataDir_ / "instances", ec);
  fs::create_directories(dataDir_ / "runs", ec);
  if (ec) throw IoError("cannot create data directory '" + dataDir_.string() + "': " + ec.message());
  restore();
}

RunRegistry::~RunRegistry() {
  std::vector<std::shared_ptr<Run>> all;
  {
    std::lock_guard lock(mutex_);
    for (auto& [id, run] : runs_) all.push_back(run);
  }
  for (auto& run : all) {
    std::lock_guard lock(run->control);
    if (run->worker.joinable()) {
      run->worker.request_stop();
      run->worker.join();
    }
  }
}

std::string RunRegistry::addInstance(Instance inst) {
  auto report = validateInstance(inst);
  if (!report.ok()) throw InvalidInstanceError(std::move(report));
  std::lock_guard lock(mutex_);
  const std::string id = "inst-" + std::to_string(nextInstance_++);
  io::saveInstance(inst, dataDir_ / "instances" / (id + ".json"));
  instances_[id] = std::make_shared<const Instance>(std::move(inst));
  persistManifestLocked();
  return id;
}

std::shared_ptr<const Instance> RunRegistry::instance(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = instances_.find(id);
  if (it == instances_.end()) throw NotFoundError("unknown instance '" + id + "'");
  return it->second;
}

std::shared_ptr<RunRegistry::Run> RunRegistry::findRun(const std::string& runId) const {
  std::lock_guard lock(mutex_);
  auto it = runs_.find(runId);
  if (it == runs_.end()) throw NotFoundError("unknown run '" + runId + "'");
  return it->second;
}

std::string RunRegistry::startRun(const std::string& instanceId, search::SearchConfig cfg) {
  auto inst = instance(instanceId);
  auto run = std::make_shared<Run>();
  run->instanceId = instanceId;
  run->instance = inst;
  run->search = std::make_unique<search::Search>(inst, std::move(cfg));
  {
    std::lock_guard lock(mutex_);
    run->id = "run-" + std::to_string(nextRun_++);
    runs_[run->id] = run;
  }
  std::lock_guard control(run->control);
  publish(*run, RunState::Constructing);
  persistManifest();
  launch(run);
  return run->id;
}

void RunRegistry::launch(const std::shared_ptr<Run>& run) {
  run->worker = std::jthread([this, run](std::stop_token stop) { work(run, stop); });
}

void RunRegistry::work(const std::shared_ptr<Run>& run, std::stop_token stop) {
  RunState final = RunState::Failed;
  std::string error;
  try {
    const auto reason = run->search->run(
        stop, [&](const search::Search&) { publish(*run, RunState::Improving); });
    final = reason == search::StopReason::Converged ? RunState::Converged : RunState::Stopped;
  } catch (const std::exception& e) {
    error = e.what();
  }
  try {
    const auto& s = *run->search;
    io::writeBundle(dataDir_ / "runs" / run->id, s.instance(), s.config(), s.stats(), s.archive());
  } catch (const std::exception& e) {
    final = RunState::Failed;
    if (error.empty()) error = std::string("cannot persist run bundle: ") + e.what();
  }
  publish(*run, final, error);
  persistManifest();
}

void RunRegistry::publish(Run& run, RunState state, const std::string& error) {
  auto snap = std::make_shared<RunSnapshot>();
  snap->id = run.id;
  snap->instanceId = run.instanceId;
  snap->state = state;
  snap->config = run.search->config();
  snap->stats = run.search->stats();
  snap->archive = run.search->archive();
  snap->refs = run.search->referencePoints();
  snap->refinements = run.refinements;
  snap->error = error;
  std::lock_guard lock(run.snapMutex);
  snap->version = run.snap ? run.snap->version + 1 : 1;
  run.snap = std::move(snap);
}

std::shared_ptr<const RunSnapshot> RunRegistry::snapshot(const std::string& runId) const {
  return findRun(runId)->current();
}

std::vector<std::shared_ptr<const RunSnapshot>> RunRegistry::runs() const {
  std::vector<std::shared_ptr<Run>> all;
  {
    std::lock_guard lock(mutex_);
    for (const auto& [id, run] : runs_) all.push_back(run);
  }
  std::vector<std::shared_ptr<const RunSnapshot>> out;
  for (const auto& run : all) out.push_back(run->current());
  return out;
}

std::shared_ptr<const RunSnapshot> RunRegistry::refine(const std::string& runId,
                                                       std::vector<pareto::NormalizedPoint> points) {
  auto run = findRun(runId);
  std::lock_guard control(run->control);
  const auto state = run->current()->state;
  if (isActive(state)) throw ConflictError("run '" + runId + "' is still " + std::string(toString(state)));
  if (state == RunState::Failed) throw ConflictError("run '" + runId + "' has failed");
  if (points.empty()) throw ContractError("refine needs at least one reference point");
  if (run->worker.joinable()) run->worker.join();
  run->search->setUserReferencePoints(std::move(points));
  ++run->refinements;
  publish(*run, RunState::Improving);
  auto snap = run->current();
  launch(run);
  return snap;
}

void RunRegistry::stop(const std::string& runId) {
  auto run = findRun(runId);
  std::lock_guard control(run->control);
  const auto state = run->current()->state;
  if (!isActive(state)) {
    throw ConflictError("run '" + runId + "' is " + std::string(toString(state)) + ", not active");
  }
  run->worker.request_stop();
}

SolutionDetail RunRegistry::solution(const std::string& runId, std::uint64_t solutionId) const {
  auto run = findRun(runId);
  const auto snap = run->current();
  const auto* entry = snap->archive.find(solutionId);
  if (entry == nullptr) {
    throw NotFoundError("run '" + runId + "' has no solution " + std::to_string(solutionId));
  }
  SolutionDetail detail;
  detail.entry = *entry;
  detail.instance = run->instance;
  detail.solution = evaluate(*run->instance, entry->freqs, snap->config.evalSettings());
  return detail;
}

void RunRegistry::persistManifest() {
  std::lock_guard lock(mutex_);
  persistManifestLocked();
}

void RunRegistry::persistManifestLocked() {
  io::Json manifest;
  manifest["version"] = 1;
  manifest["nextInstance"] = nextInstance_;
  manifest["nextRun"] = nextRun_;
  manifest["instances"] = io::Json::array();
  for (const auto& [id, inst] : instances_) manifest["instances"].push_back(id);
  manifest["runs"] = io::Json::array();
  for (const auto& [id, run] : runs_) {
    const auto snap = run->current();
    if (!snap) continue;
    manifest["runs"].push_back({{"id", id},
                                {"instance", run->instanceId},
                                {"state", std::string(toString(snap->state))},
                                {"refinements", snap->refinements},
                                {"error", snap->error}});
  }
  io::writeFile(dataDir_ / "manifest.json", manifest.dump(2) + "\n");
}

void RunRegistry::restore() {
  const auto path = dataDir_ / "manifest.json";
  if (!fs::exists(path)) return;
  io::Json manifest;
  try {
    manifest = io::Json::parse(io::readFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("corrupt service manifest: ") + e.what());
  }
  nextInstance_ = manifest.value("nextInstance", std::uint64_t{1});
  nextRun_ = manifest.value("nextRun", std::uint64_t{1});
  for (const auto& idJson : manifest.value("instances", io::Json::array())) {
    const auto id = idJson.get<std::string>();
    instances_[id] =
        std::make_shared<const Instance>(io::loadInstance(dataDir_ / "instances" / (id + ".json")));
  }
  for (const auto& r : manifest.value("runs", io::Json::array())) {
    auto run = std::make_shared<Run>();
    run->id = r.at("id").get<std::string>();
    run->instanceId = r.at("instance").get<std::string>();
    run->refinements = r.value("refinements", 0);
    auto state = runStateFromString(r.at("state").get<std::string>());
    std::string error = r.value("error", std::string());

    const auto bundleDir = dataDir_ / "runs" / run->id;
    auto instIt = instances_.find(run->instanceId);
    if (fs::exists(bundleDir / "archive.json")) {
      auto bundle = io::readBundle(bundleDir);
      run->instance = instIt != instances_.end()
                          ? instIt->second
                          : std::make_shared<const Instance>(std::move(bundle.instance));
      run->search = std::make_unique<search::Search>(run->instance, bundle.config,
                                                     std::move(bundle.archive), bundle.stats);
      if (isActive(state)) state = RunState::Stopped;
    } else {
      if (instIt == instances_.end()) continue;
      run->instance = instIt->second;
      run->search = std::make_unique<search::Search>(run->instance, search::SearchConfig{});
      state = RunState::Failed;
      error = "run was interrupted before its results were saved";
    }
    publish(*run, state, error);
    runs_[run->id] = std::move(run);
  }
}

}  // namespace irp::service
