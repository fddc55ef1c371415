#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "diageq/error.hpp"

namespace {

const CLI::IsMember kStrategies({"auto", "general", "quadratic", "cubic", "linear", "oracle"});

}  // namespace

int main(int argc, char** argv) {
  using namespace diageq::cli;
  CLI::App app{"Nonzero solutions of diagonal equation systems over prime fields"};
  app.require_subcommand(1);

  SolveArgs solve;
  std::string solve_output;
  auto* s = app.add_subcommand("solve", "Solve an instance file");
  s->add_option("--input", solve.input, "Instance JSON")->required();
  s->add_option("--output", solve_output, "Solution JSON (default: stdout)");
  s->add_option("--seed", solve.seed, "RNG seed");
  std::string solve_strategy = "auto";
  s->add_option("--strategy", solve_strategy, "auto, general, quadratic, cubic, linear or oracle")
      ->check(kStrategies);
  s->add_option("--cap", solve.cap, "Upper bound on q^n for exhaustive search");

  GenArgs gen;
  std::string gen_q, gen_output;
  unsigned gen_bits = 0;
  std::size_t gen_n = 0;
  auto* g = app.add_subcommand(
      "gen",
      "Write a random instance. With --q-bits, q is the first probable prime found among random odd "
      "candidates of that bit length with q = 1 (mod d).");
  auto* q_opt = g->add_option("--q", gen_q, "Prime modulus (decimal)");
  auto* bits_opt = g->add_option("--q-bits", gen_bits, "Bit length of a random prime modulus");
  q_opt->excludes(bits_opt);
  g->add_option("--d", gen.d, "Degree")->required();
  g->add_option("--m", gen.m, "Number of equations")->required();
  auto* n_opt = g->add_option("--n", gen_n, "Number of variables (default: solver requirement)");
  std::string gen_strategy = "auto";
  g->add_option("--strategy", gen_strategy, "Strategy whose requirement sets the default n")->check(kStrategies);
  g->add_option("--seed", gen.seed, "RNG seed");
  g->add_option("--output", gen_output, "Instance JSON (default: stdout)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check a solution against an instance; exit 1 if it fails");
  v->add_option("--input", verify.input, "Instance JSON")->required();
  v->add_option("--solution", verify.solution, "Solution JSON")->required();

  BenchArgs bench;
  std::string bench_output;
  auto* b = app.add_subcommand("bench", "Run benchmark cells from a JSON config and write CSV");
  b->add_option("--input", bench.config, "Config JSON")->required();
  b->add_option("--output", bench_output, "CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code::bad_input;
  }

  if (s->parsed()) {
    if (!solve_output.empty()) solve.output = solve_output;
    solve.strategy = diageq::parse_strategy(solve_strategy);
    return cmd_solve(solve, std::cout, std::cerr);
  }
  if (g->parsed()) {
    gen.strategy = diageq::parse_strategy(gen_strategy);
    if (*q_opt) gen.q = gen_q;
    if (*bits_opt) gen.q_bits = gen_bits;
    if (*n_opt) gen.n = gen_n;
    if (!gen_output.empty()) gen.output = gen_output;
    return cmd_gen(gen, std::cout, std::cerr);
  }
  if (v->parsed()) return cmd_verify(verify, std::cout, std::cerr);
  if (!bench_output.empty()) bench.output = bench_output;
  return cmd_bench(bench, std::cout, std::cerr);
}
