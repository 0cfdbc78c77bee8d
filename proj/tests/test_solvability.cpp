#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "helpers.hpp"

using namespace pebbling;
using namespace testing_support;

namespace {

GeneralizedDistribution gen_dist(std::vector<std::int64_t> v) {
  return GeneralizedDistribution(std::move(v));
}

std::vector<PebblingMove> moves(const Tree& t,
                                const std::vector<std::pair<std::string, std::string>>& m) {
  std::vector<PebblingMove> out;
  for (const auto& [a, b] : m) out.push_back({t.at(a), t.at(b)});
  return out;
}

bool covers(const Distribution& d, const WeightFunction& w) {
  for (Vertex v = 0; v < d.size(); ++v) {
    if (d[v] < w[v]) return false;
  }
  return true;
}

// Every weight function with entries in {0,1,2} and total at most 4.
void for_each_small_weight(std::size_t n, const std::function<void(const WeightFunction&)>& f) {
  std::vector<std::int64_t> w(n, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t sum) {
    if (i == n) {
      f(WeightFunction(w));
      return;
    }
    for (std::int64_t x = 0; x <= 2 && sum + x <= 4; ++x) {
      w[i] = x;
      rec(i + 1, sum + x);
    }
    w[i] = 0;
  };
  rec(0, 0);
}

}  // namespace

TEST(ReduceLeaf, Examples) {
  const auto p = tree("a b\nb c");
  auto [t1, c1] = reduce_leaf(gen_dist({4, 0, -1}), p, p.at("a"));
  EXPECT_EQ(t1, tree("b c"));
  EXPECT_EQ(c1, gen_dist({2, -1}));

  auto [t2, c2] = reduce_leaf(c1, t1, t1.at("b"));
  EXPECT_EQ(t2, tree("c"));
  EXPECT_EQ(c2, gen_dist({0}));

  const auto ab = tree("a b");
  auto [t3, c3] = reduce_leaf(gen_dist({1, -1}), ab, ab.at("b"));
  EXPECT_EQ(t3, tree("a"));
  EXPECT_EQ(c3, gen_dist({-1}));
}

TEST(ReduceLeaf, Errors) {
  const auto p = tree("a b\nb c");
  EXPECT_THROW(reduce_leaf(gen_dist({0, 0, 0}), p, p.at("b")), Error);
  EXPECT_THROW(reduce_leaf(gen_dist({0}), tree("v"), 0), Error);
  // Odd surpluses round down, including 1.
  auto [t, c] = reduce_leaf(gen_dist({1, 0, 0}), p, p.at("a"));
  EXPECT_EQ(c, gen_dist({0, 0}));
}

TEST(HatC, Examples) {
  const auto p = tree("a b\nb c");
  EXPECT_EQ(hat_c(p, dist(p, {{"a", 4}}), weights(p, {{"c", 1}}), p.at("c")), 0);
  const auto ab = tree("a b");
  EXPECT_EQ(hat_c(ab, dist(ab, {{"a", 1}}), weights(ab, {{"b", 1}}), ab.at("b")), -1);
  const auto v = tree("v");
  EXPECT_EQ(hat_c(v, dist(v, {{"v", 3}}), weights(v, {{"v", 1}}), 0), 2);
}

TEST(HatC, DeficitsOverflow) {
  std::string text;
  for (int i = 0; i < 70; ++i) text += "v" + std::to_string(100 + i) + " v" + std::to_string(101 + i) + "\n";
  const auto t = tree(text);
  const auto w = weights(t, {{"v100", 1}});
  try {
    hat_c(t, Distribution(t.size()), w, t.at("v170"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOverflow);
  }
}

TEST(IsSolvable, Examples) {
  const auto p = tree("a b\nb c");
  const auto cert = is_solvable(p, dist(p, {{"a", 4}}), weights(p, {{"c", 1}}));
  EXPECT_TRUE(cert.solvable);
  // Every root reaches exactly zero; the smallest name wins.
  EXPECT_EQ(cert.hat_values, (std::vector<std::int64_t>{0, 0, 0}));
  EXPECT_EQ(cert.witness_root, p.at("a"));

  const auto ab = tree("a b");
  const auto no = is_solvable(ab, dist(ab, {{"a", 1}}), weights(ab, {{"b", 1}}));
  EXPECT_FALSE(no.solvable);
  EXPECT_FALSE(no.witness_root);
  EXPECT_EQ(no.hat_values, (std::vector<std::int64_t>{-1, -1}));
}

TEST(IsSolvable, ExactCoverAtEveryRoot) {
  std::mt19937_64 gen(5);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto t = oracle::random_tree(1 + seed % 8, seed);
    const auto counts = random_counts(gen, t.size(), gen() % 10);
    const WeightFunction w(counts);
    const Distribution d(counts);
    for (Vertex r = 0; r < t.size(); ++r) EXPECT_GE(hat_c(t, d, w, r), 0);
    EXPECT_TRUE(solve_witness(t, d, w, 0).empty());
  }
}

TEST(IsSolvable, WitnessRootIsSmallestNonnegative) {
  std::mt19937_64 gen(6);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto t = oracle::random_tree(1 + seed % 8, seed);
    const Distribution d(random_counts(gen, t.size(), gen() % 15));
    const WeightFunction w(random_counts(gen, t.size(), gen() % 5));
    const auto cert = is_solvable(t, d, w);
    std::optional<Vertex> first;
    for (Vertex v = 0; v < t.size(); ++v) {
      EXPECT_EQ(cert.hat_values[v], hat_c(t, d, w, v));
      if (!first && cert.hat_values[v] >= 0) first = v;
    }
    EXPECT_EQ(cert.witness_root, first);
    EXPECT_EQ(cert.solvable, first.has_value());
  }
}

TEST(HatC, OrderIndependent) {
  std::mt19937_64 gen(21);
  std::uniform_int_distribution<std::int64_t> value(-4, 4);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto t = oracle::random_tree(1 + seed % 8, seed);
    std::vector<std::int64_t> raw(t.size());
    for (auto& x : raw) x = value(gen);
    const GeneralizedDistribution c(raw);
    const Vertex root = gen() % t.size();
    const auto expected = hat_c(t, c, root);
    for (int trial = 0; trial < 20; ++trial) {
      Tree cur = t;
      GeneralizedDistribution cv = c;
      while (cur.size() > 1) {
        std::vector<Vertex> options;
        for (Vertex v : leaves(cur)) {
          if (cur.name(v) != t.name(root)) options.push_back(v);
        }
        const Vertex pick = options[gen() % options.size()];
        std::tie(cur, cv) = reduce_leaf(cv, cur, pick);
      }
      EXPECT_EQ(cur.name(0), t.name(root));
      EXPECT_EQ(cv[0], expected);
    }
  }
}

TEST(IsSolvable, AgreesWithSearchOnSmallTrees) {
  oracle::Bounds bounds;
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::int64_t max_total = n <= 5 ? 8 : 6;
    for (const auto& t : oracle::nonisomorphic_trees(n)) {
      for_each_small_weight(n, [&](const WeightFunction& w) {
        for (std::int64_t size = 0; size <= max_total; ++size) {
          oracle::enumerate_distributions(t, size, std::nullopt, [&](const Distribution& d) {
            EXPECT_EQ(is_solvable(t, d, w).solvable, oracle::brute_solvable(t, d, w, bounds))
                << serialize_tree(t);
            return true;
          });
        }
      });
    }
  }
}

TEST(SolveWitness, Examples) {
  const auto p = tree("a b\nb c");
  const auto d = dist(p, {{"a", 4}});
  const auto w = weights(p, {{"c", 1}});
  const auto m = solve_witness(p, d, w, p.at("c"));
  EXPECT_EQ(m, moves(p, {{"a", "b"}, {"a", "b"}, {"b", "c"}}));
  EXPECT_EQ(simulate(p, d, m), dist(p, {{"c", 1}}));

  const auto s = star("b", {"a", "c", "d"});
  const auto ds = dist(s, {{"b", 8}});
  const auto ws = weights(s, {{"a", 1}, {"c", 1}});
  const auto ms = solve_witness(s, ds, ws, s.at("b"));
  EXPECT_EQ(ms, moves(s, {{"b", "a"}, {"b", "c"}}));
  EXPECT_EQ(simulate(s, ds, ms), dist(s, {{"a", 1}, {"b", 4}, {"c", 1}}));
}

TEST(SolveWitness, RejectsNonWitnessRoot) {
  const auto ab = tree("a b");
  try {
    solve_witness(ab, dist(ab, {{"a", 1}}), weights(ab, {{"b", 1}}), ab.at("b"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecondition);
  }
}

TEST(SolveWitness, SoundOnRandomInstances) {
  std::mt19937_64 gen(8);
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto t = oracle::random_tree(1 + seed % 10, seed);
    const Distribution d(random_counts(gen, t.size(), gen() % 40));
    const WeightFunction w(random_counts(gen, t.size(), gen() % 6));
    const auto cert = is_solvable(t, d, w);
    for (Vertex r = 0; r < t.size(); ++r) {
      if (cert.hat_values[r] < 0) continue;
      const auto m = solve_witness(t, d, w, r);
      const auto final_d = simulate(t, d, m);
      EXPECT_TRUE(covers(final_d, w));
      EXPECT_EQ(final_d.total(), d.total() - static_cast<std::int64_t>(m.size()));
    }
  }
}

TEST(IsSolvable, MonotoneUnderAddingAPebble) {
  std::mt19937_64 gen(9);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto t = oracle::random_tree(1 + seed % 10, seed);
    Distribution d(random_counts(gen, t.size(), gen() % 20));
    const WeightFunction w(random_counts(gen, t.size(), gen() % 5));
    if (!is_solvable(t, d, w).solvable) continue;
    for (Vertex v = 0; v < t.size(); ++v) {
      Distribution more = d;
      more.add(v, 1);
      EXPECT_TRUE(is_solvable(t, more, w).solvable);
    }
  }
}

TEST(Simulate, Examples) {
  const auto ab = tree("a b");
  EXPECT_EQ(simulate(ab, dist(ab, {{"a", 2}}), moves(ab, {{"a", "b"}})), dist(ab, {{"b", 1}}));
  try {
    simulate(ab, dist(ab, {{"a", 1}}), moves(ab, {{"a", "b"}}));
    FAIL();
  } catch (const IllegalMoveError& e) {
    EXPECT_EQ(e.index(), 0u);
    EXPECT_EQ(e.code(), ErrorCode::kIllegalMove);
  }
  const auto p = tree("a b\nb c");
  EXPECT_EQ(simulate(p, dist(p, {{"a", 4}}), moves(p, {{"a", "b"}, {"a", "b"}, {"b", "c"}})),
            dist(p, {{"c", 1}}));
}

TEST(Simulate, IllegalMovesReportIndex) {
  const auto p = tree("a b\nb c");
  try {
    simulate(p, dist(p, {{"a", 4}}), moves(p, {{"a", "b"}, {"a", "c"}}));
    FAIL();
  } catch (const IllegalMoveError& e) {
    EXPECT_EQ(e.index(), 1u);
  }
  try {
    simulate(p, dist(p, {{"a", 4}}), moves(p, {{"a", "b"}, {"a", "b"}, {"a", "b"}}));
    FAIL();
  } catch (const IllegalMoveError& e) {
    EXPECT_EQ(e.index(), 2u);
  }
  EXPECT_THROW(simulate(p, dist(p, {{"a", 4}}), moves(p, {{"a", "a"}})), IllegalMoveError);
}

TEST(Moves, FormatParseRoundTrip) {
  const auto p = tree("a b\nb c");
  const auto m = moves(p, {{"a", "b"}, {"b", "c"}});
  EXPECT_EQ(format_moves(p, m), "a b\nb c\n");
  EXPECT_EQ(parse_moves(p, format_moves(p, m)), m);
  EXPECT_THROW(parse_moves(p, "a"), Error);
  EXPECT_THROW(parse_moves(p, "a q"), Error);
}
