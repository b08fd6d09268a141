#include <gtest/gtest.h>

#include <complex>
#include <filesystem>
#include <fstream>
#include <random>

#include "bfss/pipeline.hpp"
#include "json.hpp"

using namespace bfss;

namespace {

int total(const std::map<int, int>& m) {
  int t = 0;
  for (auto [w, n] : m) t += n;
  return t;
}

int determinant(const PlatDiagram& d) {
  const ResolutionCube cube = resolution_cube(d);
  std::complex<double> s = 0;
  for (unsigned v = 0; v < cube.vertices.size(); ++v)
    if (cube.vertices[v].circles == 1) s += std::pow(std::complex<double>(0, -1), __builtin_popcount(v));
  return static_cast<int>(std::lround(std::abs(s)));
}

}  // namespace

TEST(ParseBraid, Accepts) {
  const auto d = parse_braid("s1 s2^-1 s2^+1 s1^1", 4);
  EXPECT_EQ(d.strands, 4);
  EXPECT_EQ(d.word, (std::vector<Generator>{{1, 1}, {2, -1}, {2, 1}, {1, 1}}));
  EXPECT_TRUE(parse_braid("", 4).word.empty());
  EXPECT_TRUE(parse_braid("   ", 6).word.empty());
  EXPECT_EQ(braid_str(d.word), "s1 s2^-1 s2 s1");
}

TEST(ParseBraid, Rejects) {
  EXPECT_THROW(parse_braid("s1", 5), ValidationError);
  EXPECT_THROW(parse_braid("s1", 2), ValidationError);
  EXPECT_THROW(parse_braid("s3", 4), ValidationError);
  EXPECT_THROW(parse_braid("s0", 4), ValidationError);
  EXPECT_THROW(parse_braid("s1^2", 4), ValidationError);
  EXPECT_THROW(parse_braid("x1", 4), ValidationError);
  EXPECT_THROW(parse_braid("s1,s2", 4), ValidationError);
}

TEST(Pipeline, JsonReport) {
  PipelineOptions o;
  o.oracle = true;
  const auto r = run_pipeline(parse_braid("s2 s2", 4), o);
  const auto j = nlohmann::json::parse(to_json(r));
  EXPECT_EQ(j.at("schema_version"), kSchemaVersion);
  EXPECT_EQ(j.at("genus"), 1);
  EXPECT_EQ(j.at("input").at("braid"), "s2 s2");
  EXPECT_EQ(j.at("oracle").at("verdict"), "pass");
  EXPECT_EQ(j.at("spectral_sequence").at("e_infty_total"), 2);
  std::vector<std::string> names;
  for (const auto& s : j.at("stages")) names.push_back(s.at("name"));
  const std::vector<std::string> want{"cfdd_identity", "cfaa_identity", "cfdd_cone s2p", "cfda s2p", "cfd_tower",
                                      "cfa_plat", "final_complex", "spectral_sequence", "khovanov_oracle"};
  EXPECT_EQ(names, want);
}

TEST(Pipeline, TextReport) {
  PipelineOptions o;
  o.oracle = true;
  const std::string t = to_text(run_pipeline(parse_braid("", 4), o));
  EXPECT_NE(t.find("(empty)"), std::string::npos);
  EXPECT_NE(t.find("oracle pass"), std::string::npos);
}

TEST(Pipeline, JobsDoNotChangeResults) {
  const auto d = parse_braid("s1 s2^-1 s1 s2", 4);
  PipelineOptions a, b;
  b.jobs = 2;
  EXPECT_EQ(to_json(run_pipeline(d, a).ss), to_json(run_pipeline(d, b).ss));
}

TEST(Pipeline, ReductionDoesNotChangePages) {
  const auto d = parse_braid("s2 s1^-1 s2", 4);
  PipelineOptions raw;
  raw.reduce = false;
  const auto r1 = run_pipeline(d), r2 = run_pipeline(d, raw);
  for (int r = 1; r <= 4; ++r) EXPECT_EQ(r1.ss.page(r).ranks_by_weight, r2.ss.page(r).ranks_by_weight) << r;
  EXPECT_EQ(r1.ss.e_infty_total, r2.ss.e_infty_total);
}

TEST(Pipeline, ReidemeisterTwo) {
  const auto a = run_pipeline(parse_braid("s2 s2^-1", 4)), b = run_pipeline(parse_braid("", 4));
  EXPECT_EQ(a.ss.e_infty_total, b.ss.e_infty_total);
  EXPECT_EQ(a.ss.page(2).total(), b.ss.page(2).total());
}

TEST(Pipeline, DumpStages) {
  const auto dir = std::filesystem::temp_directory_path() / "bfss_dump_test";
  std::filesystem::remove_all(dir);
  PipelineOptions o;
  o.dump_dir = dir.string();
  run_pipeline(parse_braid("s1", 4), o);
  for (const char* f : {"1_cfdd_identity.json", "2_cfdd_cone_s1p.json", "3_cfaa_identity.json", "4_cfda_s1p.json",
                        "5_cfa_plat.json", "5_cfd_tower.json", "6_final_complex.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
    EXPECT_NO_THROW((void)nlohmann::json::parse(std::ifstream(dir / f)));
  }
  std::filesystem::remove_all(dir);
}

TEST(Pipeline, GenusMismatchRejected) {
  Pipeline p(1);
  EXPECT_THROW(p.complex(parse_braid("s1", 6)), ValidationError);
  EXPECT_THROW(Pipeline(0), ValidationError);
}

TEST(Pipeline, EInfinityMatchesDeterminant) {
  Pipeline p(1);
  std::mt19937 rng(19);
  std::uniform_int_distribution<int> idx(1, 2), sg(0, 1);
  for (int trial = 0; trial < 25; ++trial) {
    PlatDiagram d{4, {}};
    for (int i = 0; i < trial % 7; ++i) d.word.push_back({idx(rng), sg(rng) ? 1 : -1});
    const auto r = p.run(d);
    const int det = determinant(d);
    EXPECT_EQ(r.ss.e_infty_total, det ? det : 2) << braid_str(d.word);
    std::map<int, int> kh;
    for (auto [w, n] : reduced_kh(d, kFrozenKhGrading))
      if (n) kh[w] = n;
    EXPECT_EQ(r.ss.page(2).ranks_by_weight, kh) << braid_str(d.word);
    EXPECT_LE(total(r.ss.page(2).ranks_by_weight), total(r.ss.page(1).ranks_by_weight));
  }
}
