#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>

#include "netfp/netfp.h"

namespace {

netfp_graph* path4() {
  const uint32_t pairs[] = {0, 1, 1, 2, 2, 3};
  netfp_graph* g = nullptr;
  EXPECT_EQ(netfp_graph_from_edges(4, pairs, 3, &g), NETFP_OK);
  return g;
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STRNE(netfp_version(), "");
  EXPECT_STREQ(netfp_status_name(NETFP_OK), "ok");
  EXPECT_STREQ(netfp_status_name(NETFP_ERR_PARSE), "parse error");
}

TEST(CApi, GraphBasics) {
  netfp_graph* g = path4();
  EXPECT_EQ(netfp_graph_node_count(g), 4u);
  EXPECT_EQ(netfp_graph_edge_count(g), 3u);
  size_t d = 0;
  EXPECT_EQ(netfp_graph_degree(g, 1, &d), NETFP_OK);
  EXPECT_EQ(d, 2u);
  EXPECT_EQ(netfp_graph_degree(g, 9, &d), NETFP_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(netfp_last_error()).find("range"), std::string::npos);
  uint32_t pairs[6] = {};
  EXPECT_EQ(netfp_graph_edges(g, pairs, 3), NETFP_OK);
  EXPECT_EQ(pairs[4], 2u);
  EXPECT_EQ(pairs[5], 3u);
  netfp_graph_free(g);
}

TEST(CApi, RejectsBadEdges) {
  const uint32_t loop[] = {1, 1};
  netfp_graph* g = reinterpret_cast<netfp_graph*>(0x1);
  EXPECT_EQ(netfp_graph_from_edges(3, loop, 1, &g), NETFP_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(g, nullptr);
  EXPECT_STRNE(netfp_last_error(), "");
  EXPECT_EQ(netfp_graph_from_edges(3, nullptr, 0, nullptr), NETFP_ERR_INVALID_ARGUMENT);
}

TEST(CApi, Metrics) {
  netfp_graph* g = path4();
  double c = -1, r = 0;
  int defined = 0;
  EXPECT_EQ(netfp_graph_clustering(g, &c), NETFP_OK);
  EXPECT_EQ(c, 0.0);
  EXPECT_EQ(netfp_graph_assortativity(g, &r, &defined), NETFP_OK);
  EXPECT_EQ(defined, 1);
  EXPECT_NEAR(r, -0.5, 1e-12);
  uint64_t counts[NETFP_MOTIF_COUNT];
  EXPECT_EQ(netfp_graph_motif_census(g, 1, counts), NETFP_OK);
  EXPECT_EQ(counts[5], 1u);
  EXPECT_EQ(counts[0] + counts[1] + counts[2] + counts[3] + counts[4], 0u);
  netfp_graph_free(g);

  const uint32_t tri[] = {0, 1, 1, 2, 0, 2};
  EXPECT_EQ(netfp_graph_from_edges(3, tri, 3, &g), NETFP_OK);
  EXPECT_EQ(netfp_graph_assortativity(g, &r, &defined), NETFP_OK);
  EXPECT_EQ(defined, 0);
  netfp_graph_free(g);
}

TEST(CApi, GmlRoundTripAndErrors) {
  netfp_graph* g = path4();
  char* text = nullptr;
  size_t len = 0;
  ASSERT_EQ(netfp_graph_write_gml(g, &text, &len), NETFP_OK);
  EXPECT_EQ(std::strlen(text), len);
  netfp_graph* h = nullptr;
  netfp_simplify_report rep{9, 9, 9};
  ASSERT_EQ(netfp_graph_parse_gml(text, len, &h, &rep), NETFP_OK);
  EXPECT_EQ(rep.self_loops + rep.multi_edges + rep.zero_weight, 0u);
  EXPECT_EQ(netfp_graph_edge_count(h), 3u);
  netfp_string_free(text);
  netfp_graph_free(g);
  netfp_graph_free(h);

  const std::string bad = "graph [ node [ id 0 ] edge [ source 0 target 7 ] ]";
  EXPECT_EQ(netfp_graph_parse_gml(bad.data(), bad.size(), &h, nullptr), NETFP_ERR_REFERENCE);
  const std::string broken = "graph [\n node [ id 0 ]\n";
  EXPECT_EQ(netfp_graph_parse_gml(broken.data(), broken.size(), &h, nullptr), NETFP_ERR_PARSE);
  EXPECT_NE(std::string(netfp_last_error()).find("line"), std::string::npos);
  EXPECT_EQ(netfp_graph_load_gml("/nonexistent.gml", &h, nullptr), NETFP_ERR_IO);
  EXPECT_NE(std::string(netfp_last_error()).find("/nonexistent.gml"), std::string::npos);
}

TEST(CApi, GenerateRewireFeaturize) {
  netfp_graph* g = nullptr;
  ASSERT_EQ(netfp_graph_generate("ws", "n=60,k=6,p=0.1", 3, 0, &g), NETFP_OK);
  EXPECT_EQ(netfp_graph_edge_count(g), 180u);
  netfp_graph* r = nullptr;
  ASSERT_EQ(netfp_graph_rewire(g, 1000, 5, &r), NETFP_OK);
  for (size_t i = 0; i < 60; ++i) {
    size_t a = 0, b = 0;
    netfp_graph_degree(g, i, &a);
    netfp_graph_degree(r, i, &b);
    EXPECT_EQ(a, b);
  }
  netfp_profile_options opts;
  netfp_profile_options_init(&opts);
  opts.ensemble_size = 10;
  netfp_feature_vector fv;
  ASSERT_EQ(netfp_graph_featurize(g, &opts, &fv), NETFP_OK);
  double norm = 0;
  for (double v : fv.sp) norm += v * v;
  EXPECT_NEAR(std::sqrt(norm), 1.0, 1e-12);
  EXPECT_GT(fv.clustering, 0.3);
  netfp_graph_free(g);
  netfp_graph_free(r);
  EXPECT_EQ(netfp_graph_generate("zz", nullptr, 3, 0, &g), NETFP_ERR_INVALID_ARGUMENT);
}

TEST(CApi, RunCommand) {
  const auto dir = std::filesystem::temp_directory_path() / "netfp_capi_run";
  std::filesystem::remove_all(dir);
  const std::string cfg = "{\"model\":\"ba\",\"params\":\"n=30,m=2,m0=2\",\"count\":3,\"out\":\"" +
                          dir.string() + "\",\"threads\":2}";
  char* summary = nullptr;
  ASSERT_EQ(netfp_run("gen", cfg.c_str(), &summary), NETFP_OK) << netfp_last_error();
  EXPECT_NE(std::string(summary).find("\"graphs\": 3"), std::string::npos);
  netfp_string_free(summary);
  EXPECT_TRUE(std::filesystem::exists(dir / "ba_0002.gml"));
  EXPECT_EQ(netfp_run("gen", "{\"model\":\"ba\",\"out\":\"x\",\"bogus\":1}", nullptr),
            NETFP_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(netfp_last_error()).find("bogus"), std::string::npos);
  EXPECT_EQ(netfp_run("gen", "{not json", nullptr), NETFP_ERR_PARSE);
  EXPECT_EQ(netfp_run("nope", "{}", nullptr), NETFP_ERR_INVALID_ARGUMENT);
  std::filesystem::remove_all(dir);
}
