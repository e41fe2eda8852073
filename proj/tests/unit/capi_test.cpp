#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "irp/irp.h"

namespace {

namespace fs = std::filesystem;

const std::string kData = IRP_TEST_DATA_DIR;

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("irp-capi-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

irp_instance* generate(int periods, uint64_t seed) {
  irp_scenario_spec spec;
  irp_scenario_spec_default(&spec);
  spec.horizon = periods;
  spec.seed = seed;
  irp_instance* inst = nullptr;
  EXPECT_EQ(irp_generate((kData + "/geometry_small.txt").c_str(), &spec, 100, &inst, nullptr),
            IRP_OK)
      << irp_last_error();
  return inst;
}

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(irp_version(), "1.0.0");
  EXPECT_STREQ(irp_status_name(IRP_ERR_IO), "io");
  EXPECT_STREQ(irp_status_name(IRP_ERR_CONTRACT), "contract");
}

TEST(CApi, GenerateSaveLoad) {
  const auto dir = scratch("gen");
  irp_instance* inst = generate(12, 3);
  ASSERT_NE(inst, nullptr);
  EXPECT_EQ(irp_instance_customer_count(inst), 6u);
  EXPECT_EQ(irp_instance_horizon(inst), 12);
  EXPECT_STREQ(irp_instance_name(inst), "geometry_small-a");
  const auto path = (dir / "inst.json").string();
  ASSERT_EQ(irp_instance_save(inst, path.c_str()), IRP_OK);

  irp_instance* loaded = nullptr;
  ASSERT_EQ(irp_instance_load(path.c_str(), &loaded), IRP_OK);
  EXPECT_EQ(irp_instance_horizon(loaded), 12);
  irp_instance_free(loaded);
  irp_instance_free(inst);
  fs::remove_all(dir);
}

TEST(CApi, ErrorCodes) {
  irp_instance* inst = nullptr;
  EXPECT_EQ(irp_instance_load("/nonexistent/x.json", &inst), IRP_ERR_IO);
  EXPECT_EQ(inst, nullptr);
  EXPECT_NE(std::strlen(irp_last_error()), 0u);

  const char* junk = "{ nope";
  EXPECT_EQ(irp_instance_parse(junk, std::strlen(junk), &inst), IRP_ERR_FORMAT);
  EXPECT_EQ(irp_instance_parse(nullptr, 0, &inst), IRP_ERR_CONTRACT);

  irp_scenario_spec spec;
  irp_scenario_spec_default(&spec);
  spec.horizon = 0;
  EXPECT_EQ(irp_generate((kData + "/geometry_small.txt").c_str(), &spec, 100, &inst, nullptr),
            IRP_ERR_CONTRACT);
  EXPECT_STREQ(irp_last_error(), "horizon must be ≥ 1");
  spec.horizon = 5;
  spec.kind = 'z';
  EXPECT_EQ(irp_generate((kData + "/geometry_small.txt").c_str(), &spec, 100, &inst, nullptr),
            IRP_ERR_CONTRACT);
}

TEST(CApi, ValidationReport) {
  const char* text = R"({"format": "irp-instance", "version": 1, "name": "bad", "vehicleCap": 1,
    "horizon": 2, "depot": {"x": 0, "y": 0},
    "customers": [{"id": 1, "x": 1, "y": 0, "storageCap": 10, "initialInventory": 0,
                   "demands": [2, 3]}]})";
  irp_instance* inst = nullptr;
  ASSERT_EQ(irp_instance_parse(text, std::strlen(text), &inst), IRP_OK) << irp_last_error();
  irp_validation* report = nullptr;
  ASSERT_EQ(irp_instance_validate(inst, &report), IRP_OK);
  EXPECT_FALSE(irp_validation_ok(report));
  ASSERT_EQ(irp_validation_count(report), 2u);
  EXPECT_NE(std::string(irp_validation_message(report, 0)).find("demand exceeds vehicle cap"),
            std::string::npos);
  EXPECT_STREQ(irp_validation_message(report, 5), "");
  irp_validation_free(report);

  irp_search_config cfg;
  irp_search_config_default(&cfg);
  irp_result* res = nullptr;
  EXPECT_EQ(irp_solve(inst, &cfg, &res), IRP_ERR_VALIDATION);
  EXPECT_EQ(res, nullptr);
  irp_instance_free(inst);
}

TEST(CApi, EvaluateSmallExample) {
  const char* text = R"({"format": "irp-instance", "version": 1, "name": "tiny", "vehicleCap": 10,
    "horizon": 2, "depot": {"x": 0, "y": 0},
    "customers": [{"id": 1, "x": 1, "y": 0, "storageCap": 10, "initialInventory": 0,
                   "demands": [1, 1]}]})";
  irp_instance* inst = nullptr;
  ASSERT_EQ(irp_instance_parse(text, std::strlen(text), &inst), IRP_OK) << irp_last_error();
  double inv = -1, dist = -1;
  const int32_t one[] = {1};
  ASSERT_EQ(irp_evaluate(inst, one, 1, IRP_VRP_SAVINGS, 1, &inv, &dist), IRP_OK);
  EXPECT_EQ(inv, 0.0);
  EXPECT_EQ(dist, 4.0);
  const int32_t two[] = {2};
  ASSERT_EQ(irp_evaluate(inst, two, 1, IRP_VRP_EXACT, 1, &inv, &dist), IRP_OK);
  EXPECT_EQ(inv, 1.0);
  EXPECT_EQ(dist, 2.0);
  const int32_t three[] = {3};
  EXPECT_EQ(irp_evaluate(inst, three, 1, IRP_VRP_SAVINGS, 1, &inv, &dist), IRP_ERR_CONTRACT);
  irp_instance_free(inst);
}

TEST(CApi, SolveAndExport) {
  const auto dir = scratch("solve");
  irp_instance* inst = generate(10, 1);
  irp_search_config cfg;
  irp_search_config_default(&cfg);
  EXPECT_EQ(cfg.ref_points, 3);
  cfg.ref_points = 4;
  irp_result* res = nullptr;
  EXPECT_EQ(irp_solve(inst, &cfg, &res), IRP_ERR_CONTRACT);
  EXPECT_STREQ(irp_last_error(), "reference point count must be odd ≥ 3");

  cfg.ref_points = 5;
  ASSERT_EQ(irp_solve(inst, &cfg, &res), IRP_OK) << irp_last_error();
  irp_stats stats;
  irp_result_stats(res, &stats);
  EXPECT_GT(stats.evaluations, 0);
  EXPECT_EQ(static_cast<size_t>(stats.archive_size), irp_result_size(res));

  std::vector<int32_t> freqs(6);
  double prevInv = -1;
  for (size_t k = 0; k < irp_result_size(res); ++k) {
    double inv = 0, dist = 0;
    ASSERT_EQ(irp_result_entry(res, k, &inv, &dist, freqs.data()), IRP_OK);
    EXPECT_GT(inv, prevInv);
    prevInv = inv;
    double inv2 = 0, dist2 = 0;
    ASSERT_EQ(irp_evaluate(inst, freqs.data(), freqs.size(), IRP_VRP_SAVINGS, cfg.seed, &inv2, &dist2),
              IRP_OK);
    EXPECT_EQ(inv, inv2);
    EXPECT_EQ(dist, dist2);
  }
  EXPECT_EQ(irp_result_entry(res, irp_result_size(res), nullptr, nullptr, nullptr),
            IRP_ERR_CONTRACT);

  const std::string line = irp_result_stats_line(res);
  EXPECT_EQ(line.rfind("steps=" + std::to_string(stats.steps) + " evaluations=", 0), 0u);

  ASSERT_EQ(irp_result_write_bundle(res, (dir / "bundle").c_str()), IRP_OK);
  EXPECT_TRUE(fs::exists(dir / "bundle" / "archive.csv"));
  ASSERT_EQ(irp_result_write_archive(res, (dir / "sub" / "front.csv").c_str()), IRP_OK);
  std::ifstream csv(dir / "sub" / "front.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "inventory,distance,pi_1,pi_2,pi_3,pi_4,pi_5,pi_6");

  irp_result_free(res);
  irp_instance_free(inst);
  fs::remove_all(dir);
}

TEST(CApi, EnumerateGuard) {
  irp_instance* inst = generate(6, 2);
  irp_result* res = nullptr;
  EXPECT_EQ(irp_enumerate(inst, 7, 0, &res), IRP_ERR_CONTRACT);
  ASSERT_EQ(irp_enumerate(inst, 2, 0, &res), IRP_OK) << irp_last_error();
  irp_stats stats;
  irp_result_stats(res, &stats);
  EXPECT_EQ(stats.evaluations, 64);
  irp_result_free(res);
  irp_instance_free(inst);
}

TEST(CApi, RoutingProblem) {
  irp_routing_problem* p = nullptr;
  ASSERT_EQ(irp_routing_problem_load((kData + "/routing_three.json").c_str(), &p), IRP_OK)
      << irp_last_error();
  for (auto solver : {IRP_VRP_SAVINGS, IRP_VRP_RTR, IRP_VRP_EXACT}) {
    irp_routing_solution* s = nullptr;
    ASSERT_EQ(irp_vrp_solve(p, solver, 1, &s), IRP_OK);
    EXPECT_NEAR(irp_routing_solution_distance(s), 4.0 + std::sqrt(2.0), 1e-12);
    EXPECT_EQ(irp_routing_solution_route_count(s), 2u);
    irp_routing_solution_free(s);
  }
  irp_routing_problem_free(p);
  EXPECT_EQ(irp_routing_problem_load("/nonexistent.json", &p), IRP_ERR_IO);
}

TEST(CApi, NullHandlesAreHarmless) {
  irp_instance_free(nullptr);
  irp_result_free(nullptr);
  irp_validation_free(nullptr);
  irp_server_stop(nullptr);
  irp_server_free(nullptr);
  EXPECT_EQ(irp_instance_customer_count(nullptr), 0u);
  EXPECT_EQ(irp_result_size(nullptr), 0u);
  EXPECT_EQ(irp_solve(nullptr, nullptr, nullptr), IRP_ERR_CONTRACT);
}

}  // namespace
