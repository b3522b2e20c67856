#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "corpus.hpp"
#include "whitehead/io.hpp"

using namespace whitehead;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("whitehead-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::size_t files_in(const fs::path& dir) {
  return static_cast<std::size_t>(std::distance(fs::directory_iterator(dir), fs::directory_iterator()));
}

}  // namespace

TEST(Json, GraphRoundTrip) {
  const Graph g = reduce_dominating(corpus::star(4));
  EXPECT_EQ(graph_from_json(graph_json(g)), g);
  EXPECT_EQ(graph_from_json(graph_json(corpus::g11())), corpus::g11());
  EXPECT_THROW(vertex_set_from_json(json::parse("[0]")), domain_error);
}

TEST(Json, PosetRoundTrip) {
  const auto P = enumerate_poset(corpus::g5());
  const auto j = poset_json(P);
  EXPECT_EQ(j["size"], 61);
  const auto Q = poset_from_json(json::parse(j.dump()));
  EXPECT_EQ(Q.elements(), P.elements());
  EXPECT_EQ(Q.hasse_edges(), P.hasse_edges());
  EXPECT_EQ(Q.graph(), P.graph());
  auto bad = j;
  bad["schema"] = 99;
  EXPECT_THROW(poset_from_json(bad), domain_error);
}

TEST(Cache, StoresAndReuses) {
  TempDir tmp;
  const Graph g = corpus::edgeless(4);
  const auto first = cached_poset(g, tmp.path.string(), {});
  ASSERT_EQ(files_in(tmp.path), 1u);
  const fs::path file = tmp.path / ("poset-" + cache_key(g) + ".json");
  ASSERT_TRUE(fs::exists(file));
  const auto second = cached_poset(g, tmp.path.string(), {});
  EXPECT_EQ(first.elements(), second.elements());
  EXPECT_EQ(second.elements(), enumerate_poset(g).elements());

  // An unreadable entry is rebuilt.
  std::ofstream(file) << "{ not json";
  EXPECT_EQ(cached_poset(g, tmp.path.string(), {}).elements(), first.elements());
  std::ifstream rebuilt(file);
  EXPECT_EQ(json::parse(rebuilt)["size"], first.size());

  // An entry for another graph under the same name is ignored.
  const auto other = enumerate_poset(corpus::edgeless(3));
  std::ofstream(file) << poset_json(other).dump();
  EXPECT_EQ(cached_poset(g, tmp.path.string(), {}).elements(), first.elements());
}

TEST(Cache, KeyFollowsCanonicalForm) {
  EXPECT_EQ(cache_key(parse_graph("5\n1 2")), cache_key(parse_graph(R"({"n": 5, "edges": [[1, 2]]})")));
  EXPECT_NE(cache_key(corpus::g5()), cache_key(corpus::edgeless(5)));
}

TEST(Output, Dot) {
  const auto dot = poset_dot(enumerate_poset(corpus::edgeless(2)));
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("n0 ["), std::string::npos);
  EXPECT_EQ(dot.find("n1"), std::string::npos);
  EXPECT_EQ(dot.find("->"), std::string::npos);
}

TEST(Output, Csv) {
  const auto csv = e1_csv(e1_dimensions(enumerate_poset(corpus::g5())));
  EXPECT_EQ(csv.rfind("p,q,dim\n0,0,61\n0,1,119\n", 0), 0u);
}

TEST(Report, ConsistentOnCorpus) {
  for (const auto& e : corpus::small_graphs()) {
    const auto P = enumerate_poset(reduce_dominating(e.graph));
    const auto r = make_report(e.graph, P, 1, true);
    EXPECT_NO_THROW(assert_consistent(r)) << e.name;
    const auto j = report_json(r);
    EXPECT_EQ(j["betti_psaut"].get<std::vector<std::uint64_t>>(), r.psaut);
  }
  const auto P = enumerate_poset(corpus::g5());
  auto r = make_report(corpus::g5(), P, 1, false);
  EXPECT_EQ(r.psaut, (std::vector<std::uint64_t>{1, 15, 78, 155, 78, 15, 1}));
  r.psout[1] = 11;
  EXPECT_THROW(assert_consistent(r), internal_error);
}

TEST(Report, PresentationJson) {
  const auto j = presentation_json(presentation(corpus::g5()));
  EXPECT_EQ(j["generators"].size(), 15u);
  EXPECT_EQ(j["relations"].size(), 24u + 18u + 36u);
  EXPECT_EQ(j["relations"][0]["type"], "i");
}
