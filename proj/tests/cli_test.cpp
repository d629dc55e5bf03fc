#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "qct/catalog.hpp"
#include "qct/cli.hpp"
#include "qct/quantum.hpp"

using namespace qct;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qct_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

  fs::path dir_;
};

std::size_t lines(const std::string& s) {
  std::istringstream in(s);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) n += !line.empty();
  return n;
}

}  // namespace

TEST(Cli, DualBasis) {
  auto r = run({"field", "--p", "2", "--e", "2", "--dual-basis", "1,w"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("{w^2,1}"), std::string::npos) << r.out;
  auto j = run({"field", "--p", "2", "--e", "2", "--dual-basis", "1,w", "--json"});
  EXPECT_EQ(nlohmann::json::parse(j.out)["dual_basis"], nlohmann::json({"w^2", "1"}));
}

TEST(Cli, SelfDualBasisSearch) {
  auto yes = nlohmann::json::parse(run({"field", "--p", "2", "--e", "3", "--self-dual", "--json"}).out);
  EXPECT_EQ(yes["self_dual_basis"].size(), 3u);
  auto no = nlohmann::json::parse(run({"field", "--p", "3", "--e", "2", "--self-dual", "--json"}).out);
  EXPECT_TRUE(no["self_dual_basis"].is_null());
}

TEST(Cli, Bch1TableThreeRecord) {
  auto r = run({"quantum", "bch1", "--m", "10", "--d1", "15", "--d2", "31", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto p = aqc_from_json(nlohmann::json::parse(r.out)["params"]);
  EXPECT_EQ(p.format(), "[[1023,803,{31,15}]]_2");
}

TEST(Cli, AuditExitsZeroWithInconsistentRows) {
  auto r = run({"audit", "examples"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("inconsistent"), std::string::npos);
  auto csv = run({"audit", "table3", "--csv"});
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(lines(csv.out), 5u);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"quantum", "bch1", "--m", "10"}).code, 2);
  EXPECT_EQ(run({"audit", "table9"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, FailuresExitOne) {
  auto pre = run({"quantum", "bch1", "--m", "6", "--d1", "4", "--d2", "7"});
  EXPECT_EQ(pre.code, 1);
  EXPECT_FALSE(pre.err.empty());
  // The construction runs but a check fails.
  EXPECT_EQ(run({"quantum", "negacyclic-expand", "--q", "9", "--n", "8", "--s", "6", "--m", "2"}).code, 1);
  EXPECT_EQ(run({"quantum", "simplex", "--m", "3"}).code, 0);
}

TEST(Cli, JsonOutputIsDeterministic) {
  std::vector<std::string> args = {"quantum", "rs-sum", "--q", "16", "--k1", "9", "--k2", "2", "--json"};
  auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  std::vector<std::string> code = {"code", "build", "bch", "--q", "4", "--n", "15", "--delta", "5", "--json"};
  EXPECT_EQ(run(code).out, run(code).out);
}

TEST_F(TempDir, CodeRecordsRoundTrip) {
  auto built = run({"code", "build", "bch", "--q", "4", "--n", "15", "--delta", "5", "--distance", "--json"});
  ASSERT_EQ(built.code, 0);
  auto original = code_from_json(nlohmann::json::parse(built.out));
  write("c.json", built.out);
  for (std::string verb : {"dual", "extend", "puncture"}) {
    auto r = run({"code", verb, "--in", path("c.json"), "--json"});
    ASSERT_EQ(r.code, 0) << verb << r.err;
    auto j = nlohmann::json::parse(r.out);
    auto back = code_from_json(j);
    EXPECT_EQ(to_json(back)["generator"], j["generator"]);
  }
  EXPECT_EQ(code_from_json(nlohmann::json::parse(run({"code", "dual", "--in", path("c.json"), "--json"}).out)),
            dual(original));
  auto d = run({"code", "distance", "--in", path("c.json"), "--json"});
  EXPECT_EQ(nlohmann::json::parse(d.out)["value"], 5);
}

TEST_F(TempDir, ExpandAndHermitianDual) {
  auto rs = run({"code", "build", "rs", "--q", "4", "--k", "2", "--json"});
  write("rs.json", rs.out);
  auto x = run({"code", "expand", "--in", path("rs.json"), "--q", "2", "--parity", "--json"});
  ASSERT_EQ(x.code, 0) << x.err;
  auto e = code_from_json(nlohmann::json::parse(x.out));
  EXPECT_EQ(e.length(), 9u);
  EXPECT_EQ(e.dimension(), 4u);
  EXPECT_EQ(run({"code", "expand", "--in", path("rs.json"), "--q", "3"}).code, 1);
  auto h = run({"code", "hdual", "--in", path("rs.json"), "--json"});
  ASSERT_EQ(h.code, 0);
  EXPECT_EQ(code_from_json(nlohmann::json::parse(h.out)).dimension(), 1u);
}

TEST_F(TempDir, CssFromFiles) {
  write("rep.json", R"({"q": 2, "generator": [[1,1,1,1,1,1,1]]})");
  write("ham.json", R"({"q": 2, "generator": [[1,0,0,0,1,1,0],[0,1,0,0,1,0,1],[0,0,1,0,0,1,1],[0,0,0,1,1,1,1]]})");
  auto r = run({"quantum", "css", "--c1", path("rep.json"), "--c2", path("ham.json"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(aqc_from_json(nlohmann::json::parse(r.out)["params"]).format(), "[[7,3,{3,2}]]_2");
  EXPECT_EQ(run({"quantum", "css", "--c1", path("ham.json"), "--c2", path("rep.json")}).code, 1);
  EXPECT_EQ(run({"quantum", "css", "--c1", path("missing.json"), "--c2", path("rep.json")}).code, 1);
}

TEST_F(TempDir, CatalogPutIsIdempotent) {
  const auto cat = path("cat.jsonl");
  write("rec.json", R"({"q": 2, "generator": [[1,1,1]]})");
  auto a = run({"--catalog", cat, "catalog", "put", "--in", path("rec.json"), "--json"});
  auto b = run({"--catalog", cat, "catalog", "put", "--in", path("rec.json"), "--json"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto list = nlohmann::json::parse(run({"--catalog", cat, "catalog", "list", "--json"}).out);
  EXPECT_EQ(list.size(), 1u);
  const std::string id = list[0]["id"];
  EXPECT_EQ(id.size(), 64u);
  auto got = run({"--catalog", cat, "catalog", "get", id.substr(0, 10)});
  EXPECT_EQ(got.code, 0);
  EXPECT_EQ(run({"--catalog", cat, "catalog", "get", "0000000000"}).code, 1);
}

TEST_F(TempDir, CatalogSearchAfterAudit) {
  const auto cat = path("cat.jsonl");
  ASSERT_EQ(run({"--catalog", cat, "audit", "table4"}).code, 0);
  auto hits = nlohmann::json::parse(run({"--catalog", cat, "catalog", "search", "--n", "45", "--q", "4", "--json"}).out);
  EXPECT_EQ(hits.size(), 6u);
  auto strong = nlohmann::json::parse(
      run({"--catalog", cat, "catalog", "search", "--n", "45", "--dz-min", "14", "--json"}).out);
  EXPECT_EQ(strong.size(), 3u);
  auto reports = nlohmann::json::parse(run({"--catalog", cat, "catalog", "search", "--kind", "report", "--json"}).out);
  ASSERT_EQ(reports.size(), 1u);
  for (const auto& h : hits) EXPECT_EQ(h["inputs"][0], reports[0]["id"]);
  // A second audit run adds nothing.
  run({"--catalog", cat, "audit", "table4"});
  EXPECT_EQ(nlohmann::json::parse(run({"--catalog", cat, "catalog", "list", "--json"}).out).size(), 13u);
}

TEST_F(TempDir, CatalogPathFromEnvironment) {
  const auto cat = path("env.jsonl");
  ::setenv("QCT_CATALOG", cat.c_str(), 1);
  run({"quantum", "simplex", "--m", "3"});
  ::unsetenv("QCT_CATALOG");
  EXPECT_EQ(Catalog(cat).list().size(), 1u);
  // The flag wins over the variable.
  ::setenv("QCT_CATALOG", path("other.jsonl").c_str(), 1);
  run({"--catalog", cat, "quantum", "simplex", "--m", "4"});
  ::unsetenv("QCT_CATALOG");
  EXPECT_EQ(Catalog(cat).list().size(), 2u);
  EXPECT_FALSE(fs::exists(path("other.jsonl")));
}

TEST_F(TempDir, CatalogLibrary) {
  Catalog cat(path("lib.jsonl"));
  auto a = cat.put("quantum", to_json(th_best_simplex(3).params));
  EXPECT_EQ(a.id, content_id(to_json(th_best_simplex(3).params)));
  EXPECT_THROW(cat.put("quantum", nlohmann::json{{"n", 1}}, {"feedface"}), NotFound);
  EXPECT_THROW(cat.put("bogus", nlohmann::json::object()), PreconditionError);
  EXPECT_THROW(cat.get("nope-nope"), NotFound);
  auto b = cat.put("report", to_json(audit_table("table3")), {a.id});
  EXPECT_EQ(cat.get(b.id).inputs, std::vector<std::string>{a.id});
  CatalogQuery q;
  q.dx_min = 2;
  EXPECT_EQ(cat.search(q).size(), 1u);
  std::ofstream(path("lib.jsonl"), std::ios::app) << "{not json\n";
  EXPECT_THROW(cat.list(), Error);
}
