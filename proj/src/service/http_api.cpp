#include "service/http_api.hpp"

#include <httplib.h>

#include <charconv>

#include "io/formats.hpp"
#include "model/errors.hpp"

namespace irp::service {

namespace {

using io::Json;

constexpr const char* kJson = "application/json";

void sendJson(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void sendError(httplib::Response& res, int status, const std::string& code,
               const std::string& message, Json extra = Json::object()) {
  Json body = {{"code", code}, {"message", message}};
  for (auto& [k, v] : extra.items()) body[k] = v;
  sendJson(res, status, body);
}

Json violationsJson(const ValidationReport& report) {
  Json out = Json::array();
  for (const auto& v : report.violations) {
    out.push_back({{"customer", v.customerId >= 0 ? Json(v.customerId) : Json(nullptr)},
                   {"period", v.period > 0 ? Json(v.period) : Json(nullptr)},
                   {"message", v.message}});
  }
  return out;
}

// Runs a handler and maps the error taxonomy onto status codes.
template <class Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const NotFoundError& e) {
    sendError(res, 404, "not_found", e.what());
  } catch (const ConflictError& e) {
    sendError(res, 409, "conflict", e.what());
  } catch (const InvalidInstanceError& e) {
    sendError(res, 422, "invalid_instance", e.what(),
              {{"violations", violationsJson(e.report())}});
  } catch (const ValidationError& e) {
    sendError(res, 422, "invalid_instance", e.what());
  } catch (const ContractError& e) {
    sendError(res, 422, "invalid_request", e.what());
  } catch (const FormatError& e) {
    sendError(res, 400, "malformed_request", e.what());
  } catch (const nlohmann::json::exception& e) {
    sendError(res, 400, "malformed_request", e.what());
  } catch (const IoError& e) {
    sendError(res, 500, "io_error", e.what());
  } catch (const std::exception& e) {
    sendError(res, 500, "internal", e.what());
  }
}

Json parseBody(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("request body is not valid JSON: ") + e.what());
  }
}

Json entriesJson(const pareto::Archive& archive) {
  Json out = Json::array();
  if (archive.empty()) return out;
  const auto norm = pareto::Normalization::of(archive);
  for (const auto& e : archive.entries()) {
    const auto p = norm(e.objectives);
    out.push_back({{"id", e.id},
                   {"inventory", e.objectives.inventory},
                   {"distance", e.objectives.distance},
                   {"u", p.u},
                   {"v", p.v},
                   {"freqs", std::vector<int>(e.freqs.begin(), e.freqs.end())}});
  }
  return out;
}

Json refsJson(const pareto::ReferencePointSet& refs) {
  Json out = Json::array();
  for (const auto& p : refs.points) out.push_back({{"u", p.u}, {"v", p.v}});
  return out;
}

Json runJson(const RunSnapshot& s, bool withArchive) {
  Json j = {{"id", s.id},
            {"instance", s.instanceId},
            {"state", std::string(toString(s.state))},
            {"version", s.version},
            {"refinements", s.refinements},
            {"stats", io::statsJson(s.stats)},
            {"config", io::configJson(s.config)},
            {"referencePoints", refsJson(s.refs)}};
  if (!s.error.empty()) j["error"] = s.error;
  if (withArchive) j["archive"] = entriesJson(s.archive);
  return j;
}

Json solutionViewJson(const SolutionDetail& d, int period) {
  const auto& inst = *d.instance;
  const auto& sol = d.solution;
  const auto& routing = sol.periodRoutes[static_cast<std::size_t>(period - 1)];

  std::map<int, std::size_t> byId;
  for (std::size_t i = 0; i < inst.customerCount(); ++i) byId[inst.customers[i].id] = i;

  Json routes = Json::array();
  for (const auto& r : routing.routes) {
    Json stops = Json::array();
    for (int id : r.stopSequence) {
      const auto i = byId.at(id);
      const auto& c = inst.customers[i];
      stops.push_back({{"id", id},
                       {"x", c.location.x},
                       {"y", c.location.y},
                       {"load", sol.trajectory.deliveries.at(i, period)}});
    }
    routes.push_back({{"stops", stops}, {"load", r.load}, {"length", r.length}});
  }

  Json customers = Json::array();
  for (std::size_t i = 0; i < inst.customerCount(); ++i) {
    const auto& c = inst.customers[i];
    customers.push_back({{"id", c.id},
                         {"x", c.location.x},
                         {"y", c.location.y},
                         {"storageCap", c.storageCap},
                         {"demand", inst.demand(i, period)},
                         {"delivery", sol.trajectory.deliveries.at(i, period)},
                         {"level", sol.trajectory.levels.at(i, period)}});
  }

  Json series = Json::array();
  for (int t = 1; t <= inst.horizon; ++t) series.push_back(sol.trajectory.periodInventory(t));

  return {{"id", d.entry.id},
          {"objectives",
           {{"inventory", sol.objectives.inventory}, {"distance", sol.objectives.distance}}},
          {"freqs", std::vector<int>(sol.freqs.begin(), sol.freqs.end())},
          {"period", period},
          {"horizon", inst.horizon},
          {"vehicleCap", inst.vehicleCap},
          {"depot", {{"x", inst.depot.x}, {"y", inst.depot.y}}},
          {"vehiclesUsed", routing.routes.size()},
          {"periodDistance", routing.totalDistance},
          {"periodInventory", sol.trajectory.periodInventory(period)},
          {"routes", routes},
          {"customers", customers},
          {"inventorySeries", series}};
}

std::vector<pareto::NormalizedPoint> parsePoints(const Json& body) {
  const Json* list = &body;
  if (body.is_object()) {
    if (!body.contains("points")) throw FormatError("refine body lacks 'points'");
    list = &body["points"];
  }
  if (!list->is_array()) throw FormatError("'points' must be an array");
  std::vector<pareto::NormalizedPoint> points;
  for (const auto& p : *list) {
    if (p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number()) {
      points.push_back({p[0].get<double>(), p[1].get<double>()});
    } else if (p.is_object() && p.contains("u") && p.contains("v") && p["u"].is_number() &&
               p["v"].is_number()) {
      points.push_back({p["u"].get<double>(), p["v"].get<double>()});
    } else {
      throw FormatError("reference points must be [u, v] pairs or {u, v} objects");
    }
  }
  return points;
}

std::uint64_t parseId(const std::string& text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw NotFoundError("unknown solution '" + text + "'");
  return v;
}

}  // namespace

HttpServer::HttpServer(std::filesystem::path dataDir)
    : registry_(std::make_unique<RunRegistry>(std::move(dataDir))),
      http_(std::make_unique<httplib::Server>()) {
  installRoutes();
}

HttpServer::~HttpServer() {
  stop();
  // Workers are joined by the registry destructor.
}

bool HttpServer::setStaticDir(const std::filesystem::path& dir) {
  return http_->set_mount_point("/", dir.string());
}

bool HttpServer::listen(const std::string& host, int port) { return http_->listen(host, port); }

int HttpServer::bindToAnyPort(const std::string& host) { return http_->bind_to_any_port(host); }

bool HttpServer::listenAfterBind() { return http_->listen_after_bind(); }

void HttpServer::stop() {
  if (http_->is_running()) http_->stop();
}

bool HttpServer::isRunning() const { return http_->is_running(); }

void HttpServer::installRoutes() {
  auto& svr = *http_;
  auto& reg = *registry_;
  const std::string api = kApiPrefix;

  svr.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Headers", "Content-Type"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  svr.Options(api + "/.*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  svr.Get(api + "/health", [](const httplib::Request&, httplib::Response& res) {
    sendJson(res, 200, {{"status", "ok"}});
  });

  svr.Post(api + "/instances", [&reg](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto inst = io::parseInstance(req.body);
      const auto id = reg.addInstance(std::move(inst));
      sendJson(res, 201, {{"id", id}});
    });
  });

  svr.Get(api + R"(/instances/([^/]+))", [&reg](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto inst = reg.instance(req.matches[1]);
      res.status = 200;
      res.set_content(io::formatInstance(*inst), kJson);
    });
  });

  svr.Post(api + "/runs", [&reg](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const Json body = parseBody(req);
      if (!body.is_object() || !body.contains("instance") || !body["instance"].is_string()) {
        throw FormatError("run request needs an 'instance' id");
      }
      auto cfg = io::parseConfig(body);
      if (body.contains("budget")) {
        const auto& b = body["budget"];
        if (!b.is_object()) throw FormatError("'budget' must be an object");
        Json flat = {{"maxSteps", b.value("maxSteps", Json(nullptr))},
                     {"maxEvaluations", b.value("maxEvaluations", Json(nullptr))},
                     {"maxSeconds", b.value("maxSeconds", Json(nullptr))}};
        const auto budget = io::parseConfig(flat);
        cfg.maxSteps = budget.maxSteps;
        cfg.maxEvaluations = budget.maxEvaluations;
        cfg.maxSeconds = budget.maxSeconds;
      }
      const auto id = reg.startRun(body["instance"].get<std::string>(), std::move(cfg));
      sendJson(res, 202, {{"id", id}});
    });
  });

  svr.Get(api + "/runs", [&reg](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      Json list = Json::array();
      for (const auto& s : reg.runs()) list.push_back(runJson(*s, false));
      sendJson(res, 200, {{"runs", list}});
    });
  });

  svr.Get(api + R"(/runs/([^/]+))", [&reg](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { sendJson(res, 200, runJson(*reg.snapshot(req.matches[1]), true)); });
  });

  svr.Get(api + R"(/runs/([^/]+)/archive)",
          [&reg](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
              const auto snap = reg.snapshot(req.matches[1]);
              sendJson(res, 200,
                       {{"id", snap->id},
                        {"state", std::string(toString(snap->state))},
                        {"version", snap->version},
                        {"entries", entriesJson(snap->archive)}});
            });
          });

  svr.Get(api + R"(/runs/([^/]+)/solutions/([^/]+))",
          [&reg](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
              const std::string runId = req.matches[1];
              const auto sid = parseId(req.matches[2]);
              const auto inst = reg.instance(reg.snapshot(runId)->instanceId);
              int period = 1;
              if (req.has_param("period")) {
                const auto text = req.get_param_value("period");
                auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), period);
                if (ec != std::errc() || ptr != text.data() + text.size()) {
                  throw ContractError("period must be an integer");
                }
              }
              if (period < 1 || period > inst->horizon) {
                throw ContractError("period must lie in 1.." + std::to_string(inst->horizon));
              }
              sendJson(res, 200, solutionViewJson(reg.solution(runId, sid), period));
            });
          });

  svr.Post(api + R"(/runs/([^/]+)/refine)",
           [&reg](const httplib::Request& req, httplib::Response& res) {
             guarded(res, [&] {
               auto points = parsePoints(parseBody(req));
               const auto snap = reg.refine(req.matches[1], std::move(points));
               sendJson(res, 202, runJson(*snap, false));
             });
           });

  svr.Post(api + R"(/runs/([^/]+)/stop)",
           [&reg](const httplib::Request& req, httplib::Response& res) {
             guarded(res, [&] {
               reg.stop(req.matches[1]);
               sendJson(res, 202, {{"id", std::string(req.matches[1])}, {"stopping", true}});
             });
           });
}

}  // namespace irp::service
