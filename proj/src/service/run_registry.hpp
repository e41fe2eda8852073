#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "model/evaluate.hpp"
#include "model/instance.hpp"
#include "pareto/archive.hpp"
#include "pareto/reference.hpp"
#include "search/search.hpp"

namespace irp::service {

class NotFoundError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// The request is well-formed but the run is in the wrong state for it.
class ConflictError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Instance rejected on upload; carries the full report.
class InvalidInstanceError : public std::runtime_error {
public:
  explicit InvalidInstanceError(ValidationReport report)
      : std::runtime_error(report.summary()), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

private:
  ValidationReport report_;
};

enum class RunState { Constructing, Improving, Converged, Stopped, Failed };

std::string_view toString(RunState s);
RunState runStateFromString(std::string_view s);
inline bool isActive(RunState s) { return s == RunState::Constructing || s == RunState::Improving; }

// Immutable view of a run, published by the worker at step boundaries.
struct RunSnapshot {
  std::string id;
  std::string instanceId;
  RunState state = RunState::Constructing;
  search::SearchConfig config;
  search::SearchStats stats;
  pareto::Archive archive;
  pareto::ReferencePointSet refs;
  std::uint64_t version = 0;
  int refinements = 0;
  std::string error;
};

struct SolutionDetail {
  pareto::ArchiveEntry entry;
  Solution solution;
  std::shared_ptr<const Instance> instance;
};

// Owns instances and runs. Each run has one background worker; readers only
// ever see published snapshots. Everything is persisted under dataDir:
// instances/<id>.json, runs/<id>/ (run bundle) and manifest.json.
class RunRegistry {
public:
  explicit RunRegistry(std::filesystem::path dataDir);
  ~RunRegistry();

  RunRegistry(const RunRegistry&) = delete;
  RunRegistry& operator=(const RunRegistry&) = delete;

  // Throws InvalidInstanceError when validation fails.
  std::string addInstance(Instance inst);
  std::shared_ptr<const Instance> instance(const std::string& id) const;

  // Throws NotFoundError for an unknown instance, ContractError for a bad
  // config. The run starts in the background.
  std::string startRun(const std::string& instanceId, search::SearchConfig cfg);

  std::shared_ptr<const RunSnapshot> snapshot(const std::string& runId) const;
  std::vector<std::shared_ptr<const RunSnapshot>> runs() const;

  // Resumes a converged or stopped run with user reference points. Throws
  // ConflictError while the run is active, ContractError on bad points.
  std::shared_ptr<const RunSnapshot> refine(const std::string& runId,
                                            std::vector<pareto::NormalizedPoint> points);

  // Requests cancellation at the next step boundary. Throws ConflictError
  // when the run is not active.
  void stop(const std::string& runId);

  // Re-evaluates an archive member of the latest snapshot. Throws
  // NotFoundError when the run or solution id is unknown.
  SolutionDetail solution(const std::string& runId, std::uint64_t solutionId) const;

  const std::filesystem::path& dataDir() const { return dataDir_; }

private:
  struct Run;

  std::shared_ptr<Run> findRun(const std::string& runId) const;
  void launch(const std::shared_ptr<Run>& run);
  void work(const std::shared_ptr<Run>& run, std::stop_token stop);
  void publish(Run& run, RunState state, const std::string& error = {});
  void persistManifest();
  void persistManifestLocked();  // caller holds mutex_
  void restore();

  std::filesystem::path dataDir_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const Instance>> instances_;
  std::map<std::string, std::shared_ptr<Run>> runs_;
  std::uint64_t nextInstance_ = 1;
  std::uint64_t nextRun_ = 1;
};

}  // namespace irp::service
