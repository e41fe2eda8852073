#include "io/formats.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "model/errors.hpp"

namespace irp::io {

namespace fs = std::filesystem;

namespace {

Json parseJson(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

const Json& field(const Json& obj, const char* key, std::string_view where) {
  if (!obj.is_object()) throw FormatError(std::string(where) + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw FormatError(std::string(where) + " lacks field '" + key + "'");
  }
  return *it;
}

template <class T>
T get(const Json& obj, const char* key, std::string_view where) {
  const auto& v = field(obj, key, where);
  try {
    if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw FormatError("");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw FormatError("");
    }
    return v.get<T>();
  } catch (const std::exception&) {
    throw FormatError(std::string(where) + " field '" + key + "' has the wrong type");
  }
}

template <class T>
T getOr(const Json& obj, const char* key, T fallback, std::string_view where) {
  if (!obj.contains(key)) return fallback;
  return get<T>(obj, key, where);
}

Point getPoint(const Json& obj, std::string_view where) {
  return {get<double>(obj, "x", where), get<double>(obj, "y", where)};
}

std::string num(double v) { return Json(v).dump(); }

}  // namespace

std::string readFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void writeFile(const fs::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write to '" + path.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename into '" + path.string() + "': " + ec.message());
}

Instance parseInstance(std::string_view text) {
  const Json doc = parseJson(text, "instance");
  if (!doc.is_object()) throw FormatError("instance must be an object");
  if (doc.contains("version") && getOr<int>(doc, "version", 1, "instance") != kInstanceFormatVersion) {
    throw FormatError("unsupported instance format version");
  }
  Instance inst;
  inst.name = getOr<std::string>(doc, "name", "", "instance");
  inst.vehicleCap = get<Quantity>(doc, "vehicleCap", "instance");
  inst.horizon = get<int>(doc, "horizon", "instance");
  inst.depot = getPoint(field(doc, "depot", "instance"), "depot");
  const auto& customers = field(doc, "customers", "instance");
  if (!customers.is_array()) throw FormatError("instance field 'customers' must be an array");
  for (const auto& cj : customers) {
    Customer c;
    c.id = get<int>(cj, "id", "customer");
    const std::string where = "customer " + std::to_string(c.id);
    c.location = getPoint(cj, where);
    c.storageCap = get<Quantity>(cj, "storageCap", where);
    c.initialInventory = getOr<Quantity>(cj, "initialInventory", 0, where);
    const auto& demands = field(cj, "demands", where);
    if (!demands.is_array()) throw FormatError(where + " demands must be an array");
    for (const auto& d : demands) {
      if (!d.is_number_integer()) throw FormatError(where + " demands must be integers");
      c.demands.push_back(d.get<Quantity>());
    }
    if (static_cast<long>(c.demands.size()) != inst.horizon) {
      throw FormatError(where + " has " + std::to_string(c.demands.size()) +
                        " demands, horizon is " + std::to_string(inst.horizon));
    }
    inst.customers.push_back(std::move(c));
  }
  return inst;
}

Instance loadInstance(const fs::path& path) { return parseInstance(readFile(path)); }

std::string formatInstance(const Instance& inst) {
  std::ostringstream out;
  out << "{\n"
      << "  \"format\": \"irp-instance\",\n"
      << "  \"version\": " << kInstanceFormatVersion << ",\n"
      << "  \"name\": " << Json(inst.name).dump() << ",\n"
      << "  \"vehicleCap\": " << inst.vehicleCap << ",\n"
      << "  \"horizon\": " << inst.horizon << ",\n"
      << "  \"depot\": {\"x\": " << num(inst.depot.x) << ", \"y\": " << num(inst.depot.y)
      << "},\n"
      << "  \"customers\": [";
  for (std::size_t k = 0; k < inst.customers.size(); ++k) {
    const auto& c = inst.customers[k];
    out << (k == 0 ? "\n" : ",\n") << "    {\"id\": " << c.id << ", \"x\": " << num(c.location.x)
        << ", \"y\": " << num(c.location.y) << ", \"storageCap\": " << c.storageCap
        << ", \"initialInventory\": " << c.initialInventory << ", \"demands\": [";
    for (std::size_t t = 0; t < c.demands.size(); ++t) {
      if (t != 0) out << ", ";
      out << c.demands[t];
    }
    out << "]}";
  }
  out << (inst.customers.empty() ? "]\n" : "\n  ]\n") << "}\n";
  return out.str();
}

void saveInstance(const Instance& inst, const fs::path& path) {
  writeFile(path, formatInstance(inst));
}

vrp::RoutingProblem parseRoutingProblem(std::string_view text) {
  const Json doc = parseJson(text, "routing problem");
  vrp::RoutingProblem p;
  p.vehicleCap = get<Quantity>(doc, "vehicleCap", "routing problem");
  p.depot = getPoint(field(doc, "depot", "routing problem"), "depot");
  const auto& stops = field(doc, "stops", "routing problem");
  if (!stops.is_array()) throw FormatError("routing problem field 'stops' must be an array");
  for (const auto& sj : stops) {
    vrp::Stop s;
    s.id = get<int>(sj, "id", "stop");
    s.load = get<Quantity>(sj, "load", "stop");
    s.location = getPoint(sj, "stop");
    p.stops.push_back(s);
  }
  return p;
}

vrp::RoutingProblem loadRoutingProblem(const fs::path& path) {
  return parseRoutingProblem(readFile(path));
}

std::string formatRoutingProblem(const vrp::RoutingProblem& p) {
  Json doc;
  doc["format"] = "irp-routing-problem";
  doc["version"] = 1;
  doc["vehicleCap"] = p.vehicleCap;
  doc["depot"] = {{"x", p.depot.x}, {"y", p.depot.y}};
  doc["stops"] = Json::array();
  for (const auto& s : p.stops) {
    doc["stops"].push_back({{"id", s.id}, {"load", s.load}, {"x", s.location.x}, {"y", s.location.y}});
  }
  return doc.dump(2) + "\n";
}

Json routingSolutionJson(const vrp::RoutingSolution& s) {
  Json doc;
  doc["totalDistance"] = s.totalDistance;
  doc["routes"] = Json::array();
  for (const auto& r : s.routes) {
    doc["routes"].push_back({{"stops", r.stopSequence}, {"load", r.load}, {"length", r.length}});
  }
  return doc;
}

Json configJson(const search::SearchConfig& cfg) {
  Json j;
  j["refPoints"] = cfg.refPointCount;
  j["solver"] = std::string(vrp::toString(cfg.solver));
  j["seed"] = cfg.seed;
  j["mixedSamples"] = cfg.mixedSamples;
  j["maxSteps"] = cfg.maxSteps ? Json(*cfg.maxSteps) : Json(nullptr);
  j["maxEvaluations"] = cfg.maxEvaluations ? Json(*cfg.maxEvaluations) : Json(nullptr);
  j["maxSeconds"] = cfg.maxSeconds ? Json(*cfg.maxSeconds) : Json(nullptr);
  j["userRefPoints"] = Json::array();
  for (const auto& p : cfg.userRefPoints) j["userRefPoints"].push_back({p.u, p.v});
  j["weights"] = {cfg.weights.inventory, cfg.weights.distance};
  j["rtr"] = {{"deviation", cfg.rtr.deviation},
              {"maxNonImproving", cfg.rtr.maxNonImproving},
              {"neighborCount", cfg.rtr.neighborCount}};
  j["threads"] = cfg.threads;
  return j;
}

search::SearchConfig parseConfig(const Json& j) {
  constexpr std::string_view where = "config";
  if (!j.is_object()) throw FormatError("config must be an object");
  search::SearchConfig cfg;
  cfg.refPointCount = getOr<int>(j, "refPoints", cfg.refPointCount, where);
  if (j.contains("solver")) {
    try {
      cfg.solver = vrp::solverFromString(get<std::string>(j, "solver", where));
    } catch (const ContractError& e) {
      throw FormatError(e.what());
    }
  }
  cfg.seed = getOr<std::uint64_t>(j, "seed", cfg.seed, where);
  cfg.mixedSamples = getOr<int>(j, "mixedSamples", cfg.mixedSamples, where);
  if (j.contains("maxSteps") && !j["maxSteps"].is_null()) cfg.maxSteps = get<std::int64_t>(j, "maxSteps", where);
  if (j.contains("maxEvaluations") && !j["maxEvaluations"].is_null()) {
    cfg.maxEvaluations = get<std::int64_t>(j, "maxEvaluations", where);
  }
  if (j.contains("maxSeconds") && !j["maxSeconds"].is_null()) {
    cfg.maxSeconds = get<double>(j, "maxSeconds", where);
  }
  if (j.contains("userRefPoints")) {
    for (const auto& p : j["userRefPoints"]) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw FormatError("userRefPoints entries must be [u, v] pairs");
      }
      cfg.userRefPoints.push_back({p[0].get<double>(), p[1].get<double>()});
    }
  }
  if (j.contains("weights")) {
    const auto& w = j["weights"];
    if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number()) {
      throw FormatError("weights must be a [inventory, distance] pair");
    }
    cfg.weights = {w[0].get<double>(), w[1].get<double>()};
  }
  if (j.contains("rtr")) {
    const auto& r = j["rtr"];
    cfg.rtr.deviation = getOr<double>(r, "deviation", cfg.rtr.deviation, "rtr");
    cfg.rtr.maxNonImproving = getOr<int>(r, "maxNonImproving", cfg.rtr.maxNonImproving, "rtr");
    cfg.rtr.neighborCount = getOr<int>(r, "neighborCount", cfg.rtr.neighborCount, "rtr");
  }
  cfg.threads = getOr<int>(j, "threads", cfg.threads, where);
  return cfg;
}

Json statsJson(const search::SearchStats& s) {
  return {{"steps", s.steps},
          {"evaluations", s.evaluations},
          {"archive_size", s.archiveSize},
          {"cpu_seconds", s.cpuSeconds},
          {"elapsed_seconds", s.elapsedSeconds}};
}

search::SearchStats parseStats(const Json& j) {
  search::SearchStats s;
  s.steps = get<std::int64_t>(j, "steps", "stats");
  s.evaluations = get<std::int64_t>(j, "evaluations", "stats");
  s.archiveSize = get<std::int64_t>(j, "archive_size", "stats");
  s.cpuSeconds = get<double>(j, "cpu_seconds", "stats");
  s.elapsedSeconds = getOr<double>(j, "elapsed_seconds", 0.0, "stats");
  return s;
}

Json archiveJson(const pareto::Archive& archive) {
  Json entries = Json::array();
  for (const auto& e : archive.entries()) {
    entries.push_back({{"id", e.id},
                       {"inventory", e.objectives.inventory},
                       {"distance", e.objectives.distance},
                       {"freqs", std::vector<int>(e.freqs.begin(), e.freqs.end())}});
  }
  return {{"entries", entries}};
}

pareto::Archive parseArchive(const Json& j) {
  pareto::Archive archive;
  const auto& entries = field(j, "entries", "archive");
  if (!entries.is_array()) throw FormatError("archive entries must be an array");
  for (const auto& e : entries) {
    const ObjectiveVector obj{get<double>(e, "inventory", "archive entry"),
                              get<double>(e, "distance", "archive entry")};
    const auto freqs = get<std::vector<int>>(e, "freqs", "archive entry");
    if (!archive.restore(get<std::uint64_t>(e, "id", "archive entry"), obj, FrequencyVector(freqs))) {
      throw FormatError("archive entries are not mutually nondominated");
    }
  }
  return archive;
}

void writeBundle(const fs::path& dir, const Instance& inst, const search::SearchConfig& cfg,
                 const search::SearchStats& stats, const pareto::Archive& archive) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  std::ostringstream csv;
  pareto::writeCsv(csv, archive, inst.customerCount());
  writeFile(dir / "archive.csv", csv.str());
  writeFile(dir / "archive.json", archiveJson(archive).dump() + "\n");
  writeFile(dir / "stats.json", statsJson(stats).dump(2) + "\n");
  writeFile(dir / "config.json", configJson(cfg).dump(2) + "\n");
  writeFile(dir / "instance.json", formatInstance(inst));
}

RunBundle readBundle(const fs::path& dir) {
  RunBundle b;
  b.instance = loadInstance(dir / "instance.json");
  b.config = parseConfig(parseJson(readFile(dir / "config.json"), "config"));
  b.stats = parseStats(parseJson(readFile(dir / "stats.json"), "stats"));
  b.archive = parseArchive(parseJson(readFile(dir / "archive.json"), "archive"));
  return b;
}

std::string statsLine(const search::SearchStats& s) {
  std::ostringstream out;
  out << "steps=" << s.steps << " evaluations=" << s.evaluations << " size=" << s.archiveSize
      << " cpu_seconds=" << std::fixed << std::setprecision(3) << s.cpuSeconds;
  return out.str();
}

}  // namespace irp::io
