#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "revsurf/experiments.hpp"

using namespace revsurf::experiments;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("revsurf_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void expect_all_anchors_pass(const ExperimentSummary& s) {
  EXPECT_FALSE(s.anchors.empty()) << to_string(s.id);
  for (const auto& a : s.anchors) EXPECT_TRUE(a.passed) << a.name << ": " << a.detail;
  EXPECT_TRUE(s.failures.empty()) << to_string(s.id);
  EXPECT_TRUE(s.passed());
}

}  // namespace

TEST(ExperimentIds, RoundTrip) {
  EXPECT_EQ(all_experiments().size(), 9u);
  for (auto id : all_experiments()) EXPECT_EQ(parse_experiment_id(to_string(id)), id);
  EXPECT_FALSE(parse_experiment_id("fig9").has_value());
}

TEST(SweepSpec, RejectsEmptyGrids) {
  auto s = default_spec(ExperimentId::fig4a_levels_vs_lambda);
  s.primary.clear();
  EXPECT_THROW(s.validate(), std::invalid_argument);
  auto t = default_spec(ExperimentId::fig6_T_vs_E);
  t.transport_grid_points = 50;
  EXPECT_THROW((void)run_experiment(t), std::invalid_argument);
}

TEST(SweepSpec, HashDependsOnContent) {
  auto a = default_spec(ExperimentId::fig2_gp);
  auto b = a;
  EXPECT_EQ(a.canonical(), b.canonical());
  b.series.push_back(2.0);
  EXPECT_NE(content_hash(a.canonical()), content_hash(b.canonical()));
  EXPECT_EQ(content_hash(""), "cbf29ce484222325");  // FNV-1a offset basis
}

TEST(Experiments, BoundStateReproductionsPassAnchors) {
  for (auto id : {ExperimentId::table1, ExperimentId::fig2_gp, ExperimentId::fig3_pd,
                  ExperimentId::fig4a_levels_vs_lambda, ExperimentId::fig4b_ground_vs_height}) {
    auto spec = default_spec(id);
    spec.workers = 2;
    expect_all_anchors_pass(run_experiment(spec));
  }
}

TEST(Experiments, TransportReproductionsPassAnchors) {
  for (auto id : {ExperimentId::fig6_T_vs_E, ExperimentId::fig7_T_vs_E_eps, ExperimentId::fig8_T_vs_R1}) {
    auto spec = default_spec(id);
    spec.workers = 2;
    expect_all_anchors_pass(run_experiment(spec));
  }
}

TEST(Experiments, GaasSurfaceAndContours) {
  auto spec = default_spec(ExperimentId::fig5_gaas);
  spec.workers = 2;
  spec.output_dir = fresh_dir("fig5");
  const auto summary = run_experiment(spec);
  expect_all_anchors_pass(summary);
  ASSERT_EQ(summary.files.size(), 2u);
  const std::string table = slurp(summary.files[0]);
  EXPECT_NE(table.find("# units: rho = 10 nm"), std::string::npos);
  const std::string contours = slurp(summary.files[1]);
  EXPECT_NE(contours.find("\n0.05,"), std::string::npos);
}

TEST(Experiments, OutputIsDeterministicAcrossWorkerCounts) {
  auto spec = default_spec(ExperimentId::fig4b_ground_vs_height);
  spec.output_dir = fresh_dir("det1");
  spec.workers = 1;
  const auto a = run_experiment(spec);
  spec.output_dir = fresh_dir("det4");
  spec.workers = 4;
  const auto b = run_experiment(spec);
  ASSERT_EQ(a.files.size(), 1u);
  ASSERT_EQ(b.files.size(), 1u);
  EXPECT_EQ(a.files[0].filename(), b.files[0].filename());
  EXPECT_EQ(slurp(a.files[0]), slurp(b.files[0]));
}

TEST(Experiments, FileCarriesMetadataHeader) {
  auto spec = default_spec(ExperimentId::table1);
  spec.output_dir = fresh_dir("meta");
  const auto s = run_experiment(spec);
  ASSERT_EQ(s.files.size(), 1u);
  const auto name = s.files[0].filename().string();
  EXPECT_EQ(name.rfind("table1_", 0), 0u);
  EXPECT_EQ(s.files[0].extension(), ".csv");
  const std::string text = slurp(s.files[0]);
  for (const char* key : {"# experiment: table1", "# code_version: ", "# grid.primary: 1.5 4", "# tolerances: ",
                          "# units: ", "# hbar2_over_2me: 38.0998 meV nm^2"}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
  EXPECT_NE(text.find("zmax_over_rho,n,c,c_published\n1.5,0,1.450851"), std::string::npos);
}

TEST(Experiments, PointFailuresAreRecordedAndRunContinues) {
  auto spec = default_spec(ExperimentId::fig4b_ground_vs_height);
  // at lambda = 0.1 the ground level of tall cones falls below zero
  spec.series = {0.1};
  spec.primary = {2.0, 6.0, 10.0, 12.0};
  const auto s = run_experiment(spec);
  EXPECT_FALSE(s.failures.empty());
  EXPECT_LT(s.failures.size(), 4u);
  EXPECT_FALSE(s.passed());
}
