#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include "pentapath.h"

namespace {

const char* kShowcase = R"({
  "version": 1,
  "design": {
    "case": "LO", "alpha": 0.15, "beta": -0.066666666666666666,
    "r": [0, 0, 0, 5, 9],
    "base": [[0, 0], [5, 0], [0, 5], [8, 3], [12, 12]]
  },
  "limits": {"epsilon": 0.4, "legs": [
    {"prismatic": true, "rho_min": 5.1, "rho_max": 16.0}, {}, {}, {}, {}]},
  "optimizer": {"lambda": 0.001, "eta": 0.05, "growth": 5.0,
                "max_iterations": 3, "cover_enabled": false,
                "joints_enabled": false},
  "path": {"formula": "spherical_blend_cubic", "range": [2, 5], "count": 12}
})";

}  // namespace

TEST_CASE("c api round trip") {
  CHECK(pp_abi_version() == 1);

  pp_config* cfg = nullptr;
  REQUIRE(pp_config_parse(kShowcase, &cfg) == PP_OK);
  REQUIRE(cfg != nullptr);
  CHECK(pp_validate(cfg) == PP_OK);

  pp_result* result = nullptr;
  REQUIRE(pp_run(cfg, &result) == PP_OK);
  CHECK(pp_result_iteration_count(result) >= 1);
  CHECK(pp_result_breakpoint_count(result) == 12);

  double pose[6];
  REQUIRE(pp_result_breakpoint(result, 0, pose) == PP_OK);
  CHECK(std::abs(pose[0] * pose[0] + pose[1] * pose[1] + pose[2] * pose[2] - 1.0) < 1e-12);
  CHECK(pp_result_breakpoint(result, 99, pose) != PP_OK);

  double length = 0, curvature = 0, elapsed = 0;
  int final_n = 0;
  REQUIRE(pp_result_summary(result, &length, &curvature, &elapsed, &final_n) == PP_OK);
  CHECK(length > 0.0);
  CHECK(final_n == 12);

  REQUIRE(pp_result_record_count(result) == pp_result_iteration_count(result) + 1);
  double obj0 = 0, obj_last = 0;
  int it = -1;
  REQUIRE(pp_result_record(result, 0, &it, &obj0, nullptr, nullptr, nullptr) == PP_OK);
  CHECK(it == 0);
  REQUIRE(pp_result_record(result, pp_result_record_count(result) - 1, nullptr,
                           &obj_last, nullptr, nullptr, nullptr) == PP_OK);
  CHECK(obj_last <= obj0);

  const auto dir = std::filesystem::temp_directory_path() / "pentapath_capi_export";
  std::filesystem::remove_all(dir);
  REQUIRE(pp_result_export(result, dir.string().c_str()) == PP_OK);
  CHECK(std::filesystem::exists(dir / "summary.json"));
  CHECK(std::filesystem::exists(dir / "breakpoints.csv"));
  CHECK(std::filesystem::exists(dir / "objective.csv"));
  CHECK(std::filesystem::exists(dir / "pedals.csv"));
  CHECK(std::filesystem::exists(dir / "config.json"));

  pp_result_free(result);
  pp_config_free(cfg);
}

TEST_CASE("c api pedal queries") {
  pp_config* cfg = nullptr;
  REQUIRE(pp_config_parse(kShowcase, &cfg) == PP_OK);

  const double pose[6] = {1, 0, 0, 4, 5, 6};
  pp_pedal pedals[8];
  int count = 0;
  REQUIRE(pp_pedals(cfg, pose, pedals, 8, &count) == PP_OK);
  CHECK(count >= 2);
  CHECK(count <= 4);
  for (int i = 1; i < count; ++i)
    CHECK(pedals[i - 1].distance <= pedals[i].distance);

  double f1 = 0, f2 = 0;
  REQUIRE(pp_sigma_values(cfg, pose, &f1, &f2) == PP_OK);
  CHECK(f1 == 6.0);  // LO hyperplane value is the last coordinate

  pp_config_free(cfg);
}

TEST_CASE("c api error reporting") {
  pp_config* cfg = nullptr;
  SUBCASE("schema errors carry code 2 and a message") {
    CHECK(pp_config_parse("{\"version\": 1}", &cfg) == PP_ERROR_SCHEMA);
    CHECK(std::strlen(pp_last_error()) > 0);
  }
  SUBCASE("missing file is an io error") {
    CHECK(pp_config_load("/nonexistent/nowhere.json", &cfg) == PP_ERROR_IO);
  }
  SUBCASE("infeasible initial path carries code 3") {
    const char* bad = R"({
      "version": 1,
      "design": {"case": "LO", "alpha": 0.15, "beta": -0.066666666666666666,
                 "r": [0, 0, 0, 5, 9],
                 "base": [[0, 0], [5, 0], [0, 5], [8, 3], [12, 12]]},
      "optimizer": {"lambda": 0.001, "eta": 0.05,
                    "max_iterations": 1, "cover_enabled": false,
                    "joints_enabled": false},
      "path": {"breakpoints": [[1,0,0,0,0,1],[1,0,0,1,0,0],[1,0,0,2,0,1]]}
    })";
    REQUIRE(pp_config_parse(bad, &cfg) == PP_OK);
    CHECK(pp_validate(cfg) == PP_ERROR_INFEASIBLE_PATH);
    pp_result* result = nullptr;
    CHECK(pp_run(cfg, &result) == PP_ERROR_INFEASIBLE_PATH);
    CHECK(result == nullptr);
    pp_config_free(cfg);
  }
}
