#pragma once

/**
 * @file cli.hpp
 * @brief The `pebble` command line: parsing, dispatch, output formatting and
 * the exit-code contract. Kept in a header so tests can drive it in-process.
 *
 * Exit codes: 0 success, 1 negative answer (unsolvable, illegal move,
 * verification mismatch), 2 usage or input error, 3 arithmetic overflow,
 * 4 oracle budget exceeded. Errors go to the error stream as one line,
 * "error: CODE: message".
 */

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pebbling/cover.hpp"
#include "pebbling/error.hpp"
#include "pebbling/oracle.hpp"
#include "pebbling/path_partition.hpp"
#include "pebbling/solvability.hpp"
#include "pebbling/tree.hpp"

namespace pebbling::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitOverflow = 3;
inline constexpr int kExitBudget = 4;

/// is_solvable is quadratic; past this many vertices `solvable` warns.
inline constexpr std::size_t kQuadraticWarning = 1000;

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOverflow: return kExitOverflow;
    case ErrorCode::kBoundsExceeded: return kExitBudget;
    case ErrorCode::kIllegalMove:
    case ErrorCode::kPrecondition: return kExitNegative;
    default: return kExitUsage;
  }
}

namespace detail {

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool stdin_used = false;

  /// Reads a file argument; "-" is the input stream, usable once.
  std::string slurp(const std::string& path) {
    if (path == "-") {
      if (stdin_used) throw Error(ErrorCode::kInvalidArgument, "only one input may be '-'");
      stdin_used = true;
      return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorCode::kParse, "cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
  }
};

template <typename Tag>
Json vertex_map_json(const Tree& t, const VertexValues<Tag>& values) {
  Json obj = Json::object();
  for (Vertex v = 0; v < t.size(); ++v) obj[t.name(v)] = values[v];
  return obj;
}

inline Json int_table_json(const Tree& t, const std::vector<std::int64_t>& values) {
  Json obj = Json::object();
  for (Vertex v = 0; v < t.size(); ++v) obj[t.name(v)] = values[v];
  return obj;
}

inline std::string int_table(const Tree& t, const std::string& header,
                             const std::vector<std::int64_t>& values) {
  std::string out = "# vertex " + header + "\n";
  for (Vertex v = 0; v < t.size(); ++v) out += t.name(v) + " " + std::to_string(values[v]) + "\n";
  return out;
}

inline Json names_json(const Tree& t, const std::vector<Vertex>& path) {
  Json arr = Json::array();
  for (Vertex v : path) arr.push_back(t.name(v));
  return arr;
}

inline std::string join_names(const Tree& t, const std::vector<Vertex>& path) {
  std::string out;
  for (Vertex v : path) out += (out.empty() ? "" : " ") + t.name(v);
  return out;
}

inline void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  detail::Io io{in, out, err};

  CLI::App app{"Pebbling numbers, cover pebbling and solvability on trees", "pebble"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  std::string tree_file, weights_file, dist_file, moves_file, root_name;
  std::int64_t t_value = 1;
  std::int64_t max_pebbles = oracle::VerifyOptions{}.enumeration_max_pebbles;
  std::size_t gen_n = 1;
  std::uint64_t seed = 0;
  bool json = false;

  auto add_tree = [&](CLI::App* sub) {
    sub->add_option("--tree", tree_file, "Edge-list tree file ('-' for stdin)")->required();
  };
  auto add_weights = [&](CLI::App* sub) {
    sub->add_option("--weights", weights_file, "Demand file of 'vertex value' lines")->required();
  };
  auto add_dist = [&](CLI::App* sub) {
    sub->add_option("--dist", dist_file, "Distribution file of 'vertex value' lines")->required();
  };
  auto add_json = [&](CLI::App* sub) {
    sub->add_flag("--json", json, "Emit JSON instead of text");
  };

  auto* partition_cmd = app.add_subcommand("partition", "Maximum path partition toward a root");
  add_tree(partition_cmd);
  partition_cmd->add_option("--root", root_name, "Sink vertex")->required();
  add_json(partition_cmd);

  auto* tpebble_cmd = app.add_subcommand("tpebble", "t-pebbling number of a vertex or of the tree");
  add_tree(tpebble_cmd);
  tpebble_cmd->add_option("--root", root_name, "Target vertex; omit for the maximum over all");
  tpebble_cmd->add_option("-t", t_value, "Pebbles required at the target")->required();
  add_json(tpebble_cmd);

  auto* cover_cmd = app.add_subcommand("cover", "Cover pebbling number for a demand");
  add_tree(cover_cmd);
  add_weights(cover_cmd);
  add_json(cover_cmd);

  auto* solvable_cmd = app.add_subcommand("solvable", "Decide whether a distribution covers a demand");
  add_tree(solvable_cmd);
  add_weights(solvable_cmd);
  add_dist(solvable_cmd);
  add_json(solvable_cmd);

  auto* witness_cmd = app.add_subcommand("witness", "Replayable move list for a solvable instance");
  add_tree(witness_cmd);
  add_weights(witness_cmd);
  add_dist(witness_cmd);
  add_json(witness_cmd);

  auto* simulate_cmd = app.add_subcommand("simulate", "Replay a move list from a distribution");
  add_tree(simulate_cmd);
  add_dist(simulate_cmd);
  simulate_cmd->add_option("--moves", moves_file, "Move file of 'from to' lines")->required();
  add_json(simulate_cmd);

  auto* extremal_cmd = app.add_subcommand("extremal", "Largest unsolvable distribution");
  add_tree(extremal_cmd);
  add_weights(extremal_cmd);
  add_json(extremal_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Check the closed form against brute force");
  add_tree(verify_cmd);
  add_weights(verify_cmd);
  verify_cmd->add_option("--max-pebbles", max_pebbles,
                     "Also enumerate every distribution when gamma is at most this")
      ->check(CLI::NonNegativeNumber);
  add_json(verify_cmd);

  auto* gen_tree_cmd = app.add_subcommand("gen-tree", "Uniform random labeled tree");
  gen_tree_cmd->add_option("-n", gen_n, "Vertex count")->required()->check(CLI::PositiveNumber);
  gen_tree_cmd->add_option("--seed", seed, "Random seed")->required();
  add_json(gen_tree_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: USAGE: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (gen_tree_cmd->parsed()) {
      const auto t = oracle::random_tree(gen_n, seed);
      if (json) {
        Json j = Json::array();
        for (const auto& e : t.edges()) j.push_back(Json::array({t.name(e.u), t.name(e.v)}));
        detail::emit_json(out, {{"vertices", t.names()}, {"edges", j}});
      } else {
        out << serialize_tree(t);
      }
      return kExitOk;
    }

    const Tree t = parse_tree(io.slurp(tree_file));

    if (partition_cmd->parsed()) {
      const Vertex root = t.at(root_name);
      Subtree sink{std::vector<bool>(t.size(), false), {}};
      sink.member[root] = true;
      const auto p = max_path_partition(orient_toward(t, sink));
      if (json) {
        Json paths = Json::array();
        for (const auto& path : p.paths) paths.push_back(detail::names_json(t, path));
        detail::emit_json(out, {{"root", root_name}, {"sizes", p.sizes}, {"paths", paths}});
      } else {
        out << "# path partition toward " << root_name << "\n";
        out << "sizes";
        for (auto a : p.sizes) out << " " << a;
        out << "\n";
        for (const auto& path : p.paths) out << "path " << detail::join_names(t, path) << "\n";
      }
      return kExitOk;
    }

    if (tpebble_cmd->parsed()) {
      if (!root_name.empty()) {
        const auto r = t_pebbling_number(t, t.at(root_name), t_value);
        if (json) {
          detail::emit_json(out, {{"t", t_value}, {"root", root_name}, {"value", r.value},
                                  {"sizes", r.partition.sizes}});
        } else {
          out << "# t-pebbling number, t " << t_value << "\n";
          out << "root " << root_name << "\nvalue " << r.value << "\n";
        }
        return kExitOk;
      }
      std::vector<std::int64_t> per_vertex(t.size());
      for (Vertex v = 0; v < t.size(); ++v) per_vertex[v] = t_pebbling_number(t, v, t_value).value;
      const auto best = t_pebbling_global(t, t_value);
      if (json) {
        detail::emit_json(out, {{"t", t_value},
                                {"per_vertex", detail::int_table_json(t, per_vertex)},
                                {"value", best.value},
                                {"argmax", t.name(best.argmax)}});
      } else {
        out << detail::int_table(t, "f_" + std::to_string(t_value), per_vertex);
        out << "value " << best.value << "\nargmax " << t.name(best.argmax) << "\n";
      }
      return kExitOk;
    }

    if (simulate_cmd->parsed()) {
      const auto d = parse_vertex_map<DistributionTag>(t, io.slurp(dist_file));
      const auto moves = parse_moves(t, io.slurp(moves_file));
      try {
        const auto final_d = simulate(t, d, moves);
        if (json) {
          detail::emit_json(out, {{"moves", moves.size()},
                                  {"distribution", detail::vertex_map_json(t, final_d)}});
        } else {
          out << "# vertex pebbles\n" << format_vertex_map(t, final_d);
        }
        return kExitOk;
      } catch (const IllegalMoveError& e) {
        if (json) {
          detail::emit_json(out, {{"illegal_move", e.index()}});
        } else {
          out << "illegal_move " << e.index() << "\n";
        }
        err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
        return kExitNegative;
      }
    }

    const auto w = parse_vertex_map<WeightTag>(t, io.slurp(weights_file));

    if (cover_cmd->parsed()) {
      const auto c = cover_pebbling_number(t, w);
      if (json) {
        Json j{{"gamma", c.gamma}};
        if (c.degenerate()) {
          j["argmax"] = nullptr;
          j["degenerate"] = true;
        } else {
          j["argmax"] = t.name(*c.argmax_root);
          j["degenerate"] = false;
          j["s"] = detail::int_table_json(t, c.per_vertex_s);
        }
        detail::emit_json(out, j);
      } else if (c.degenerate()) {
        out << "# cover pebbling number\ngamma 0\ndegenerate demand\n";
      } else {
        out << detail::int_table(t, "s", c.per_vertex_s);
        out << "gamma " << c.gamma << "\nargmax " << t.name(*c.argmax_root) << "\n";
      }
      return kExitOk;
    }

    if (extremal_cmd->parsed()) {
      const auto d = extremal_distribution(t, w);
      if (json) {
        detail::emit_json(out, {{"size", d.total()}, {"distribution", detail::vertex_map_json(t, d)}});
      } else {
        out << "# vertex pebbles (size " << d.total() << ")\n" << format_vertex_map(t, d);
      }
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      oracle::VerifyOptions options;
      options.enumeration_max_pebbles = max_pebbles;
      const auto r = oracle::verify_gamma(t, w, options);
      if (json) {
        Json j{{"tree", r.tree_id},
               {"omega", detail::vertex_map_json(t, r.omega)},
               {"status", r.pass() ? "PASS" : "MISMATCH"},
               {"formula_gamma", r.formula_gamma},
               {"oracle_gamma", r.oracle_gamma},
               {"max_unsolvable", r.max_unsolvable},
               {"max_leaf_unsolvable", r.max_leaf_unsolvable},
               {"basis_size", r.basis_size},
               {"enumerated", r.enumerated},
               {"distributions_checked", r.distributions_checked},
               {"witness_confirmed", r.witness_confirmed}};
        if (r.enumerated) j["enumerated_gamma"] = r.enumerated_gamma;
        if (r.unsolvable_witness) j["witness"] = detail::vertex_map_json(t, *r.unsolvable_witness);
        j["failures"] = r.failures;
        detail::emit_json(out, j);
      } else {
        out << oracle::format_report(t, r);
      }
      return r.pass() ? kExitOk : kExitNegative;
    }

    const auto d = parse_vertex_map<DistributionTag>(t, io.slurp(dist_file));

    if (solvable_cmd->parsed()) {
      if (t.size() > kQuadraticWarning) {
        err << "warning: " << t.size() << " vertices; solvability check is quadratic\n";
      }
      const auto cert = is_solvable(t, d, w);
      if (json) {
        Json j{{"solvable", cert.solvable}};
        if (cert.solvable) {
          j["witness_root"] = t.name(*cert.witness_root);
        } else {
          j["hat_c"] = detail::int_table_json(t, cert.hat_values);
        }
        detail::emit_json(out, j);
      } else if (cert.solvable) {
        out << "SOLVABLE\nwitness_root " << t.name(*cert.witness_root) << "\n";
      } else {
        out << "UNSOLVABLE\n" << detail::int_table(t, "hat_c", cert.hat_values);
      }
      return cert.solvable ? kExitOk : kExitNegative;
    }

    if (witness_cmd->parsed()) {
      const auto cert = is_solvable(t, d, w);
      if (!cert.solvable) {
        err << "error: UNSOLVABLE: no root has a nonnegative hat value\n";
        return kExitNegative;
      }
      const auto moves = solve_witness(t, d, w, *cert.witness_root);
      if (json) {
        Json arr = Json::array();
        for (auto m : moves) arr.push_back(Json::array({t.name(m.from), t.name(m.to)}));
        detail::emit_json(out, {{"root", t.name(*cert.witness_root)}, {"moves", arr}});
      } else {
        out << format_moves(t, moves);
      }
      return kExitOk;
    }

  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kExitUsage;
}

}  // namespace pebbling::cli
