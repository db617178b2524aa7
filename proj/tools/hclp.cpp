// hclp: consistency and deduction for preference statements under
// hierarchical lexicographic models.
//
// Exit codes: solve 0 consistent / 1 inconsistent; deduce 0 deduced /
// 1 not deduced; 2 on any error or timeout.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hclp/hclp.hpp"

namespace {

constexpr int kExitError = 2;

std::size_t find_alternative(const std::string& tok,
                             const hclp::Instance& inst) {
  const auto& names = inst.meta.alternative_names;
  for (std::size_t a = 0; a < names.size(); ++a) {
    if (names[a] == tok) return a;
  }
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != tok.size()) {
    throw hclp::InputError("unknown alternative '" + tok + "'");
  }
  return v;
}

hclp::PreferenceStatement parse_statement(const std::string& text,
                                          const hclp::Instance& inst) {
  std::istringstream in(text);
  std::string a, rel, b, rest;
  if (!(in >> a >> rel >> b) || (in >> rest) || (rel != "<" && rel != "<=")) {
    throw hclp::InputError("statement must read '<i> < <j>' or '<i> <= <j>', got '" +
                           text + "'");
  }
  hclp::PreferenceStatement phi{find_alternative(a, inst),
                                find_alternative(b, inst), rel == "<"};
  hclp::validate_statement(phi, inst.alternatives());
  return phi;
}

std::optional<std::chrono::milliseconds> timeout_of(long ms) {
  if (ms <= 0) return std::nullopt;
  return std::chrono::milliseconds(ms);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hclp::InputError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw hclp::InputError("failed writing " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consistency checking for preference statements under HCLP models"};
  app.require_subcommand(1);

  // solve
  std::string solve_path;
  std::string solve_algo = "pc";
  std::size_t solve_t = 0;
  std::size_t solve_s = 5;
  long solve_timeout = 0;
  auto* solve = app.add_subcommand("solve", "Decide C(t)-consistency of an instance");
  solve->add_option("path", solve_path, "Instance file")->required();
  solve->add_option("--algorithm", solve_algo, "c1 | pc | pc-conflicts | oracle")
      ->check(CLI::IsMember({"c1", "pc", "pc-conflicts", "oracle"}));
  solve->add_option("--t", solve_t, "Level-size bound (default: n)");
  solve->add_option("--s", solve_s, "Conflicting-set size bound")->check(CLI::Range(2, 64));
  solve->add_option("--timeout-ms", solve_timeout, "Search deadline in milliseconds");

  // deduce
  std::string deduce_path;
  std::string deduce_stmt;
  std::size_t deduce_t = 0;
  std::size_t deduce_s = 5;
  bool deduce_conflicts = false;
  auto* deduce = app.add_subcommand("deduce", "Check whether a statement follows in C(t)");
  deduce->add_option("path", deduce_path, "Instance file")->required();
  deduce->add_option("--statement", deduce_stmt, "\"<i> < <j>\" or \"<i> <= <j>\"")->required();
  deduce->add_option("--t", deduce_t, "Level-size bound (default: n)");
  deduce->add_option("--s", deduce_s, "Conflicting-set size bound")->check(CLI::Range(2, 64));
  deduce->add_flag("--conflicts", deduce_conflicts, "Learn conflicting sets during the search");

  // generate
  hclp::GenConfig gen;
  std::string gen_out;
  std::string gen_name;
  auto* generate = app.add_subcommand("generate", "Write a random instance");
  generate->add_option("--n", gen.n, "Evaluations")->required();
  generate->add_option("--m", gen.m, "Alternatives")->capture_default_str();
  generate->add_option("--g", gen.g, "Statements")->required();
  generate->add_option("--seed", gen.seed, "Seed")->capture_default_str();
  generate->add_option("--domain-max", gen.domain_max, "Largest value")->capture_default_str();
  generate->add_option("--name", gen_name, "Instance name");
  generate->add_option("--out", gen_out, "Output path (default: stdout)");

  // export-lp
  std::string lp_path;
  std::size_t lp_t = 0;
  std::string lp_out;
  auto* export_lp = app.add_subcommand("export-lp", "Write the MILP formulation in LP format");
  export_lp->add_option("path", lp_path, "Instance file")->required();
  export_lp->add_option("--t", lp_t, "Level-size bound (default: n)");
  export_lp->add_option("--out", lp_out, "Output path (default: stdout)");

  // bench
  std::string bench_sizes;
  std::size_t bench_per_size = 50;
  std::string bench_algos = "pc,pc-conflicts";
  std::uint64_t bench_seed = 1;
  long bench_timeout = 0;
  std::string bench_out;
  std::string bench_summary;
  hclp::BenchConfig bench_cfg;
  auto* bench = app.add_subcommand("bench", "Time solvers on seeded random instances");
  bench->add_option("--sizes", bench_sizes, "\"n,g;n,g;...\"")->required();
  bench->add_option("--per-size", bench_per_size, "Instances per size")->capture_default_str();
  bench->add_option("--algorithms", bench_algos, "Comma-separated algorithms")->capture_default_str();
  bench->add_option("--seed", bench_seed, "Base seed")->capture_default_str();
  bench->add_option("--timeout-ms", bench_timeout, "Per-run deadline in milliseconds");
  bench->add_option("--m", bench_cfg.m, "Alternatives")->capture_default_str();
  bench->add_option("--t", bench_cfg.run.t, "Level-size bound (default: n)");
  bench->add_option("--s", bench_cfg.run.s, "Conflicting-set size bound")->check(CLI::Range(2, 64));
  bench->add_option("--domain-max", bench_cfg.domain_max, "Largest value")->capture_default_str();
  bench->add_option("--out", bench_out, "Per-instance CSV (default: stdout)");
  bench->add_option("--summary", bench_summary, "Per-size summary CSV (default: stderr)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (*solve) {
      hclp::Instance inst = hclp::read_instance_file(solve_path);
      if (!inst.meta.name) inst.meta.name = solve_path;
      hclp::RunOptions opts{solve_t, solve_s, timeout_of(solve_timeout)};
      const auto algo = hclp::parse_algorithm(solve_algo);
      const auto result = hclp::run_algorithm(algo, inst, opts);
      const auto report = hclp::make_report(inst, algo, opts, result);
      std::cout << hclp::to_json(report, inst.meta.evaluation_names).dump(2) << '\n';
      switch (result.verdict) {
        case hclp::Verdict::Consistent: return 0;
        case hclp::Verdict::Inconsistent: return 1;
        case hclp::Verdict::Timeout: return kExitError;
      }
    }

    if (*deduce) {
      const hclp::Instance inst = hclp::read_instance_file(deduce_path);
      const auto phi = parse_statement(deduce_stmt, inst);
      hclp::SearchConfig cfg;
      cfg.t = deduce_t == 0 ? inst.evaluations() : deduce_t;
      cfg.s = deduce_s;
      cfg.conflicts_enabled = deduce_conflicts;
      const bool deduced = hclp::deduce(inst.matrix, inst.statements, phi, cfg);
      nlohmann::ordered_json j;
      j["instance"] = inst.meta.name.value_or(deduce_path);
      j["statement"] = hclp::to_string(phi);
      j["t"] = cfg.t;
      j["result"] = deduced ? "deduced" : "not-deduced";
      std::cout << j.dump(2) << '\n';
      return deduced ? 0 : 1;
    }

    if (*generate) {
      hclp::Instance inst = hclp::generate(gen);
      if (!gen_name.empty()) inst.meta.name = gen_name;
      write_text(gen_out, hclp::serialize(inst));
      return 0;
    }

    if (*export_lp) {
      const hclp::Instance inst = hclp::read_instance_file(lp_path);
      const std::size_t t = lp_t == 0 ? inst.evaluations() : lp_t;
      const auto f = hclp::milp::build_formulation(inst.matrix, inst.statements, t);
      write_text(lp_out, hclp::milp::write_lp(f));
      std::cerr << "variables: " << f.variables().size()
                << ", constraints: " << f.constraints().size() << '\n';
      return 0;
    }

    if (*bench) {
      bench_cfg.sizes = hclp::parse_sizes(bench_sizes);
      bench_cfg.per_size = bench_per_size;
      bench_cfg.seed = bench_seed;
      bench_cfg.run.timeout = timeout_of(bench_timeout);
      bench_cfg.algorithms.clear();
      std::stringstream ss(bench_algos);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) bench_cfg.algorithms.push_back(hclp::parse_algorithm(item));
      }
      bench_cfg.threads = hclp::bench_threads(1);
      const auto rows = hclp::run_bench(bench_cfg);

      std::ostringstream csv;
      hclp::write_bench_csv(rows, csv);
      write_text(bench_out, csv.str());

      std::ostringstream summary;
      hclp::write_summary_csv(hclp::summarize(rows), summary);
      if (bench_summary.empty()) {
        std::cerr << summary.str();
      } else {
        write_text(bench_summary, summary.str());
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
