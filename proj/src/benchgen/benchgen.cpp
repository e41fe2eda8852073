#include "benchgen/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "model/errors.hpp"

namespace irp::bench {

namespace {

bool parseNumbers(const std::vector<std::string>& tokens, std::vector<double>& out) {
  out.clear();
  for (const auto& tok : tokens) {
    std::size_t used = 0;
    try {
      out.push_back(std::stod(tok, &used));
    } catch (const std::exception&) {
      return false;
    }
    if (used != tok.size()) return false;
  }
  return true;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  return tokens;
}

}  // namespace

Scenario scenarioFromString(const std::string& name) {
  if (name == "a") return Scenario::Constant;
  if (name == "b") return Scenario::Increasing;
  if (name == "c") return Scenario::Sinus;
  throw ContractError("unknown scenario '" + name + "' (expected a, b or c)");
}

char scenarioLetter(Scenario s) {
  switch (s) {
    case Scenario::Constant: return 'a';
    case Scenario::Increasing: return 'b';
    case Scenario::Sinus: return 'c';
  }
  return '?';
}

void ScenarioSpec::check() const {
  if (horizon < 1) throw ContractError("horizon must be ≥ 1");
  if (!(deviation >= 0.0 && deviation < 1.0)) throw ContractError("deviation must lie in [0, 1)");
  if (!(storageCapFactor > 0.0)) throw ContractError("storage cap factor must be positive");
}

Geometry parseGeometry(std::istream& in, const std::string& name) {
  Geometry g;
  g.name = name;
  bool haveDepot = false;
  bool explicitDepot = false;
  int nextId = 1;
  int lineNo = 0;
  std::vector<double> nums;
  for (std::string line; std::getline(in, line);) {
    ++lineNo;
    const auto tokens = tokenize(line);
    if (tokens.empty() || tokens.front().starts_with('#')) continue;

    if (tokens.front() == "depot" || tokens.front() == "DEPOT") {
      std::vector<std::string> rest(tokens.begin() + 1, tokens.end());
      if (haveDepot || !parseNumbers(rest, nums) || nums.size() != 2) {
        throw FormatError("geometry line " + std::to_string(lineNo) + ": bad depot line");
      }
      g.depot = {nums[0], nums[1]};
      haveDepot = explicitDepot = true;
      continue;
    }
    if (!parseNumbers(tokens, nums)) {
      if (haveDepot) {
        throw FormatError("geometry line " + std::to_string(lineNo) + ": not numeric");
      }
      continue;  // textual header
    }
    if (g.customers.empty() && nums.size() == 2 && !explicitDepot) {
      // "n capacity" headers precede the depot; the last pair wins
      g.depot = {nums[0], nums[1]};
      haveDepot = true;
      continue;
    }
    if (!haveDepot) continue;  // numeric header such as "n capacity maxlen drop"
    GeometryCustomer c;
    if (nums.size() == 4) {
      c.id = static_cast<int>(nums[0]);
      if (static_cast<double>(c.id) != nums[0]) {
        throw FormatError("geometry line " + std::to_string(lineNo) + ": id is not an integer");
      }
      c.location = {nums[1], nums[2]};
      c.baseDemand = nums[3];
    } else if (nums.size() == 3) {
      c.id = nextId;
      c.location = {nums[0], nums[1]};
      c.baseDemand = nums[2];
    } else {
      throw FormatError("geometry line " + std::to_string(lineNo) +
                        ": expected 'id x y demand' or 'x y demand'");
    }
    nextId = c.id + 1;
    g.customers.push_back(c);
  }
  if (!haveDepot) throw FormatError("geometry has no depot line");
  return g;
}

Geometry loadGeometry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open geometry file '" + path + "'");
  auto stem = path.substr(path.find_last_of('/') + 1);
  stem = stem.substr(0, stem.find('.'));
  return parseGeometry(in, stem);
}

double averageDemand(Scenario kind, double base, int period, int horizon) {
  if (horizon <= 1 || kind == Scenario::Constant) return base;
  const double phase = static_cast<double>(period - 1) / static_cast<double>(horizon - 1);
  if (kind == Scenario::Increasing) return base * (1.0 + phase);
  return base * (1.0 + std::sin(std::numbers::pi * phase));
}

Instance generateInstance(const Geometry& geometry, const ScenarioSpec& spec, Quantity vehicleCap,
                          GenerationReport* report) {
  spec.check();
  if (geometry.customers.empty()) throw ContractError("geometry has no customers");
  if (vehicleCap <= 0) throw ContractError("vehicle capacity must be positive");
  for (const auto& c : geometry.customers) {
    if (!(c.baseDemand > 0.0)) {
      throw ContractError("customer " + std::to_string(c.id) + " has nonpositive base demand");
    }
  }

  constexpr double eps = 1e-9;
  std::mt19937_64 rng(spec.seed);
  GenerationReport local;

  Instance inst;
  inst.name = (geometry.name.empty() ? std::string("irp") : geometry.name) + "-" +
              scenarioLetter(spec.kind);
  inst.depot = geometry.depot;
  inst.vehicleCap = vehicleCap;
  inst.horizon = spec.horizon;
  for (const auto& g : geometry.customers) {
    Customer c;
    c.id = g.id;
    c.location = g.location;
    c.storageCap = static_cast<Quantity>(std::ceil(spec.storageCapFactor * g.baseDemand - eps));
    c.initialInventory = 0;
    const Quantity cap = std::min(c.storageCap, vehicleCap);
    c.demands.reserve(static_cast<std::size_t>(spec.horizon));
    for (int t = 1; t <= spec.horizon; ++t) {
      const double avg = averageDemand(spec.kind, g.baseDemand, t, spec.horizon);
      auto lo = static_cast<Quantity>(std::ceil((1.0 - spec.deviation) * avg - eps));
      auto hi = static_cast<Quantity>(std::floor((1.0 + spec.deviation) * avg + eps));
      if (lo > hi) lo = hi = std::llround(avg);
      Quantity d = std::uniform_int_distribution<Quantity>(lo, hi)(rng);
      if (d > cap) {
        d = cap;
        ++local.clampedDemands;
      }
      c.demands.push_back(d);
    }
    inst.customers.push_back(std::move(c));
  }

  const auto validation = validateInstance(inst);
  if (!validation.ok()) throw ValidationError("generated instance invalid: " + validation.summary());
  if (report != nullptr) *report = local;
  return inst;
}

}  // namespace irp::bench
