#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "pebbling/cli.hpp"

using namespace pebbling;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pebble_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    std::ofstream(path) << content;
    return path.string();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, CoverStar) {
  const auto t = file("t", "b a\nb c\nb d\n");
  const auto w = file("w", "a 1\nc 1\n");
  const auto r = run({"cover", "--tree", t, "--weights", w});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "# vertex s\na 6\nb 5\nc 6\nd 8\ngamma 8\nargmax d\n");
  EXPECT_TRUE(r.err.empty());
}

TEST_F(CliTest, CoverZeroDemand) {
  const auto t = file("t", "a b\n");
  const auto w = file("w", "# nothing\n");
  const auto r = run({"cover", "--tree", t, "--weights", w});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("gamma 0"), std::string::npos);
  EXPECT_NE(r.out.find("degenerate demand"), std::string::npos);
}

TEST_F(CliTest, CoverJson) {
  const auto t = file("t", "b a\nb c\nb d\n");
  const auto w = file("w", "a 1\nc 1\n");
  const auto r = run({"cover", "--tree", t, "--weights", w, "--json"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["gamma"], 8);
  EXPECT_EQ(j["argmax"], "d");
  EXPECT_EQ(j["s"]["b"], 5);
}

TEST_F(CliTest, SolvableAndUnsolvable) {
  const auto t = file("t", "a b\n");
  const auto w = file("w", "b 1\n");
  const auto no = run({"solvable", "--tree", t, "--weights", w, "--dist", file("d", "a 1\n")});
  EXPECT_EQ(no.code, 1);
  EXPECT_EQ(no.out, "UNSOLVABLE\n# vertex hat_c\na -1\nb -1\n");
  const auto yes = run({"solvable", "--tree", t, "--weights", w, "--dist", file("e", "a 2\n")});
  EXPECT_EQ(yes.code, 0);
  EXPECT_EQ(yes.out, "SOLVABLE\nwitness_root a\n");
}

TEST_F(CliTest, WitnessRoundTrip) {
  const auto t = file("t", "a b\nb c\nc d\nb e\n");
  const auto w = file("w", "d 1\ne 1\n");
  const auto d = file("d", "a 12\n");
  const auto wit = run({"witness", "--tree", t, "--weights", w, "--dist", d});
  ASSERT_EQ(wit.code, 0) << wit.err;
  const auto sim = run({"simulate", "--tree", t, "--dist", d, "--moves", "-"}, wit.out);
  EXPECT_EQ(sim.code, 0) << sim.err;
  const auto tr = parse_tree("a b\nb c\nc d\nb e\n");
  std::string body = sim.out.substr(sim.out.find('\n') + 1);
  const auto final_d = parse_vertex_map<DistributionTag>(tr, body);
  EXPECT_GE(final_d[tr.at("d")], 1);
  EXPECT_GE(final_d[tr.at("e")], 1);
}

TEST_F(CliTest, WitnessOnUnsolvable) {
  const auto t = file("t", "a b\n");
  const auto r = run({"witness", "--tree", t, "--weights", file("w", "b 1\n"), "--dist",
                      file("d", "a 1\n")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err.rfind("error: UNSOLVABLE:", 0), 0u);
}

TEST_F(CliTest, SimulateIllegalMove) {
  const auto t = file("t", "a b\nb c\n");
  const auto r = run({"simulate", "--tree", t, "--dist", file("d", "a 2\n"), "--moves",
                      file("m", "a b\nb c\n")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "illegal_move 1\n");
  EXPECT_EQ(r.err.rfind("error: ILLEGAL_MOVE:", 0), 0u);
}

TEST_F(CliTest, Partition) {
  const auto t = file("t", "c x\nc y\nc z\n");
  const auto r = run({"partition", "--tree", t, "--root", "x"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "# path partition toward x\nsizes 2 1\npath y c x\npath z c\n");
}

TEST_F(CliTest, TPebble) {
  const auto t = file("t", "c x\nc y\nc z\n");
  const auto one = run({"tpebble", "--tree", t, "--root", "c", "-t", "1"});
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(one.out, "# t-pebbling number, t 1\nroot c\nvalue 4\n");
  const auto all = run({"tpebble", "--tree", t, "-t", "1"});
  EXPECT_EQ(all.out, "# vertex f_1\nc 4\nx 5\ny 5\nz 5\nvalue 5\nargmax x\n");
  const auto p = file("p", "a b\nb c\n");
  EXPECT_NE(run({"tpebble", "--tree", p, "--root", "c", "-t", "2"}).out.find("value 8"),
            std::string::npos);
}

TEST_F(CliTest, Extremal) {
  const auto t = file("t", "b a\nb c\nb d\n");
  const auto r = run({"extremal", "--tree", t, "--weights", file("w", "a 1\nc 1\n")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "# vertex pebbles (size 7)\na 0\nb 0\nc 0\nd 7\n");
}

TEST_F(CliTest, Verify) {
  const auto t = file("t", "b a\nb c\nb d\n");
  const auto w = file("w", "a 1\nc 1\n");
  const auto r = run({"verify", "--tree", t, "--weights", w});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("status PASS"), std::string::npos);
  EXPECT_NE(r.out.find("oracle_gamma 8"), std::string::npos);
  const auto skip = run({"verify", "--tree", t, "--weights", w, "--max-pebbles", "0"});
  EXPECT_NE(skip.out.find("enumerated_gamma skipped"), std::string::npos);
  const auto j = run({"verify", "--tree", t, "--weights", w, "--json"});
  EXPECT_EQ(nlohmann::json::parse(j.out)["status"], "PASS");
}

TEST_F(CliTest, GenTreeParsesBack) {
  for (int seed = 0; seed < 20; ++seed) {
    const auto r = run({"gen-tree", "-n", std::to_string(1 + seed), "--seed", std::to_string(seed)});
    EXPECT_EQ(r.code, 0);
    const auto t = parse_tree(r.out);
    EXPECT_EQ(t.size(), static_cast<std::size_t>(1 + seed));
    EXPECT_EQ(r.out, serialize_tree(oracle::random_tree(1 + seed, seed)));
  }
}

TEST_F(CliTest, ExitCodes) {
  const auto good = file("t", "a b\n");
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"cover", "--tree", good}).code, 2);
  EXPECT_EQ(run({"cover", "--tree", good, "--weights", file("w", "a 1\n"), "--nope"}).code, 2);

  const auto cycle = run({"cover", "--tree", file("c", "a b\nb c\nc a\n"), "--weights",
                          file("w2", "a 1\n")});
  EXPECT_EQ(cycle.code, 2);
  EXPECT_EQ(cycle.err.rfind("error: PARSE:", 0), 0u);

  const auto unknown = run({"cover", "--tree", good, "--weights", file("w3", "q 1\n")});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_EQ(unknown.err.rfind("error: UNKNOWN_VERTEX:", 0), 0u);

  EXPECT_EQ(run({"cover", "--tree", (dir_ / "missing").string(), "--weights", good}).code, 2);

  std::string path;
  for (int i = 0; i < 70; ++i) path += "p" + std::to_string(100 + i) + " p" + std::to_string(101 + i) + "\n";
  const auto overflow = run({"cover", "--tree", file("long", path), "--weights",
                             file("w4", "p100 1\n")});
  EXPECT_EQ(overflow.code, 3);
  EXPECT_EQ(overflow.err.rfind("error: OVERFLOW:", 0), 0u);

  const auto big = file("big", serialize_tree(oracle::random_tree(9, 3)));
  const auto budget = run({"verify", "--tree", big, "--weights", file("w5", "v1 1\n")});
  EXPECT_EQ(budget.code, 4);
  EXPECT_EQ(budget.err.rfind("error: BOUNDS_EXCEEDED:", 0), 0u);

  const auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("gen-tree"), std::string::npos);
}

TEST_F(CliTest, StdinOnlyOnce) {
  const auto r = run({"cover", "--tree", "-", "--weights", "-"}, "a b\n");
  EXPECT_EQ(r.code, 2);
  const auto ok = run({"cover", "--tree", "-", "--weights", file("w", "b 1\n")}, "a b\n");
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("gamma 2"), std::string::npos);
}

TEST_F(CliTest, DeterministicOutput) {
  const auto t = file("t", "b a\nb c\nb d\nd e\n");
  const auto w = file("w", "a 1\ne 2\n");
  const auto d = file("d", "c 9\nb 3\n");
  const std::vector<std::vector<std::string>> commands{
      {"partition", "--tree", t, "--root", "a"},
      {"tpebble", "--tree", t, "-t", "2"},
      {"cover", "--tree", t, "--weights", w, "--json"},
      {"solvable", "--tree", t, "--weights", w, "--dist", d},
      {"extremal", "--tree", t, "--weights", w},
      {"verify", "--tree", t, "--weights", w},
  };
  for (const auto& c : commands) {
    const auto a = run(c);
    const auto b = run(c);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
  }
}
