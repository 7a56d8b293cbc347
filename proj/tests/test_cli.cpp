#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lnposet/cli.hpp"
#include "lnposet/ln.hpp"
#include "lnposet/poset_io.hpp"

namespace lnposet {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("lnposet_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const nlohmann::json& doc) {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << doc.dump();
    return path;
  }

  std::filesystem::path dir_;
};

TEST(Cli, HasseDotOfL3) {
  const Result r = call({"ln", "hasse", "--n", "3", "--dot"});
  ASSERT_EQ(r.code, kExitOk);
  std::size_t edges = 0, pos = 0;
  while ((pos = r.out.find("->", pos)) != std::string::npos) {
    ++edges;
    pos += 2;
  }
  EXPECT_EQ(edges, 8U);
  for (const auto& s : ln::all_elements(3)) EXPECT_NE(r.out.find("\"" + s.to_string() + "\""), std::string::npos);
}

TEST(Cli, HasseDefaultIsCoverTsv) {
  const Result r = call({"ln", "hasse", "--n", "2"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "{}\t1\n1\t2\n2\t1,2\n");
}

TEST(Cli, HasseJsonRoundTrips) {
  const Result r = call({"ln", "hasse", "--n", "4", "--json"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_TRUE(poset_from_json(nlohmann::json::parse(r.out)).same_relation(ln::build_ln(4)));
}

TEST(Cli, JoinMeetWorkedExample) {
  const Result r = call({"ln", "joinmeet", "--n", "12", "1,4,6,7,11", "2,5,9,10"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "join=1,4,6,9,11 meet=2,5,7,10\n");
}

TEST(Cli, SlidesAndMobiusPair) {
  EXPECT_EQ(call({"ln", "slides", "--n", "3", "--set", "1,3"}).out, "3\n1,2\n");
  EXPECT_EQ(call({"ln", "mobius", "--n", "3", "--from", "2", "--to", "1,3"}).out, "x\ty\tmu\n2\t1,3\t1\n");
}

TEST(Cli, LnMobiusTableMatchesClosedForm) {
  const Result r = call({"ln", "mobius", "--n", "3"});
  ASSERT_EQ(r.code, kExitOk);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "x\ty\tmu");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string x, y;
    std::int64_t mu = 0;
    std::getline(fields, x, '\t');
    std::getline(fields, y, '\t');
    fields >> mu;
    const auto s = ln::LnElement::parse(3, x);
    const auto t = ln::LnElement::parse(3, y);
    EXPECT_TRUE(ln::leq(s, t)) << line;
    EXPECT_EQ(mu, ln::mobius_closed(s, t)) << line;
    ++rows;
  }
  std::size_t comparable = 0;
  for (const auto& s : ln::all_elements(3))
    for (const auto& t : ln::all_elements(3)) comparable += ln::leq(s, t);
  EXPECT_EQ(rows, comparable);
}

TEST(Cli, IntervalIsADiamond) {
  const Result r = call({"ln", "interval", "--n", "3", "--from", "2", "--to", "1,3"});
  ASSERT_EQ(r.code, kExitOk);
  const FinitePoset p = poset_from_json(nlohmann::json::parse(r.out));
  EXPECT_TRUE(p.same_relation(ln::boolean_poset(2)) || find_isomorphism(p, ln::boolean_poset(2)));
  const Result open = call({"ln", "interval", "--n", "3", "--from", "2", "--to", "1,3", "--open"});
  EXPECT_EQ(poset_from_json(nlohmann::json::parse(open.out)).size(), 2U);
}

TEST(Cli, VerifyMobiusSuite) {
  const Result r = call({"verify", "--suite", "mobius", "--max-n", "6"});
  ASSERT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("cases\t5460"), std::string::npos);
  EXPECT_NE(r.out.find("failures\t0"), std::string::npos);
}

TEST(Cli, VerifyJsonReport) {
  const Result r = call({"verify", "--suite", "double", "--max-n", "4", "--json"});
  ASSERT_EQ(r.code, kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  const auto& report = doc.is_array() ? doc.at(0) : doc;
  EXPECT_EQ(report.at("suite"), "double");
  EXPECT_TRUE(report.at("failures").empty());
}

TEST(Cli, VerifyReportsLatticeFailure) {
  const Result r = call({"verify", "--suite", "lattice", "--max-n", "3"});
  EXPECT_EQ(r.code, kExitVerifyFailed);
  EXPECT_NE(r.out.find("n=2 S=1"), std::string::npos);
}

TEST(Cli, OutputIsDeterministic) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"ln", "mobius", "--n", "4"}, {"ln", "hasse", "--n", "4", "--dot"},
        {"verify", "--suite", "surgery", "--instances", "40", "--seed", "5"}}) {
    const Result a = call(args);
    const Result b = call(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({}).code, kExitUsage);
  EXPECT_EQ(call({"bogus"}).code, kExitUsage);
  EXPECT_EQ(call({"ln", "joinmeet", "--n", "3", "4", "1"}).code, kExitUsage);
  EXPECT_EQ(call({"ln", "hasse", "--n", "3", "--dot", "--json"}).code, kExitUsage);
  EXPECT_EQ(call({"verify", "--suite", "nope"}).code, kExitUsage);
  EXPECT_EQ(call({"verify", "--suite", "mobius", "--max-n", "9"}).code, kExitOverflow);
  EXPECT_EQ(call({"--help"}).code, kExitOk);
}

TEST_F(CliFiles, MobiusOfChain) {
  const std::string path = write("c3.json", to_json(FinitePoset::chain(3)));
  const Result r = call({"mobius", "--input", path});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "x\ty\tmu\n0\t0\t1\n0\t1\t-1\n0\t2\t0\n1\t1\t1\n1\t2\t-1\n2\t2\t1\n");
}

TEST_F(CliFiles, ConnectSumClosedForm) {
  const std::string c2 = write("c2.json", to_json(FinitePoset::chain(2)));
  const std::string pt = write("pt.json", to_json(FinitePoset::chain(1)));
  const Result r = call({"connect-sum", c2, c2, pt, "--i0", "0:1", "--i1", "0:0", "--closed-form"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(poset_from_json(doc.at("poset")).same_relation(FinitePoset::chain(4)));
  EXPECT_EQ(doc.at("offset"), 2);
  EXPECT_TRUE(doc.at("diff").empty());
  EXPECT_EQ(doc.at("mobius_block"), doc.at("mobius_closed_form"));
}

TEST_F(CliFiles, ConnectSumReportsConditionFailure) {
  const auto vee = FinitePoset::from_cover_relations({"u", "v", "b"}, {{2, 0}, {2, 1}});
  const std::string p0 = write("p0.json", to_json(vee));
  const std::string p1 = write("p1.json", to_json(FinitePoset::antichain(2)));
  const std::string q = write("q.json", to_json(FinitePoset::antichain(2)));
  const Result r = call({"connect-sum", p0, p1, q, "--i0", "0:0,1:1", "--i1", "0:0,1:1", "--closed-form"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("closed_form_error").at("witness"), 2);
}

TEST_F(CliFiles, ConnectSumRejectsBadEmbedding) {
  const std::string c2 = write("c2.json", to_json(FinitePoset::chain(2)));
  const std::string q = write("q.json", to_json(FinitePoset::antichain(2)));
  EXPECT_EQ(call({"connect-sum", c2, c2, q, "--i0", "0:0,1:1", "--i1", "0:0,1:1"}).code, kExitUsage);
}

TEST_F(CliFiles, DoubleOfL2) {
  const std::string l2 = write("l2.json", to_json(ln::build_ln(2)));
  const Result r = call({"double", l2, "--sign", "-1,-1,1,1", "--lift", "0:2,1:3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(poset_from_json(doc.at("poset")).same_relation(ln::build_ln(3)));
  EXPECT_EQ(doc.at("layer").at("sign").size(), 8U);
  EXPECT_EQ(call({"double", l2, "--sign", "1,-1,1,1", "--lift", "1:2"}).code, kExitUsage);
}

TEST_F(CliFiles, ComplexOfOpenInterval) {
  const std::string l3 = write("l3.json", to_json(ln::build_ln(3)));
  const Result r = call({"complex", "--input", l3, "--open-interval", "2", "1,3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "key\tvalue\nf0\t2\nchi\t2\n");
}

TEST_F(CliFiles, MissingFileIsUsageError) {
  EXPECT_EQ(call({"mobius", "--input", (dir_ / "absent.json").string()}).code, kExitUsage);
}

}  // namespace
}  // namespace lnposet
