#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <numeric>
#include <sstream>

#include "diageq/error.hpp"
#include "diageq/numth.hpp"
#include "diageq/solver.hpp"

namespace diageq::cli {

using nlohmann::json;

namespace {

// Upper bound on m * n for generated instances.
constexpr std::size_t kMaxEntries = std::size_t{1} << 28;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(what + ": " + e.what());
  }
}

void write_text(const std::optional<std::filesystem::path>& path, const std::string& text, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot write " + path->string());
  file << text;
}

mpz_class parse_decimal(const json& v, const std::string& what) {
  std::string text;
  if (v.is_string()) {
    text = v.get<std::string>();
  } else if (v.is_number_unsigned()) {
    text = std::to_string(v.get<std::uint64_t>());
  } else {
    throw InvalidArgument(what + " must be a decimal string");
  }
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw InvalidArgument(what + " '" + text + "' is not a decimal integer");
  }
  return mpz_class(text, 10);
}

std::uint64_t parse_count(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_unsigned()) throw InvalidArgument(std::string("'") + key + "' must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

// Runs a command body and maps library errors to exit codes.
template <typename F>
int guarded(std::ostream& err, F body) {
  try {
    return body();
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::bad_input;
  } catch (const InsufficientVariables& e) {
    err << "error: " << e.what() << " (required " << e.required() << ")\n";
    return exit_code::cannot_solve;
  } catch (const StrategyUnavailable& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::cannot_solve;
  } catch (const BudgetExhausted& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::cannot_solve;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::bad_input;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_code::internal;
  }
}

}  // namespace

json instance_to_json(const SdeInstance& instance) {
  json coeffs = json::array();
  for (std::size_t i = 0; i < instance.equations(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < instance.variables(); ++j) row.push_back(instance.coeffs().at(i, j).to_string());
    coeffs.push_back(std::move(row));
  }
  return json{{"q", instance.field().modulus().get_str()},
              {"d", instance.degree()},
              {"m", instance.equations()},
              {"n", instance.variables()},
              {"coeffs", std::move(coeffs)}};
}

SdeInstance instance_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("instance must be a JSON object");
  if (!j.contains("q")) throw InvalidArgument("missing field 'q'");
  auto field = std::make_shared<const PrimeField>(parse_decimal(j.at("q"), "q"));
  const std::uint64_t d = parse_count(j, "d");
  const std::uint64_t m = parse_count(j, "m");
  const std::uint64_t n = parse_count(j, "n");
  if (!j.contains("coeffs") || !j.at("coeffs").is_array()) throw InvalidArgument("'coeffs' must be an array");
  const json& rows = j.at("coeffs");
  if (rows.size() != m) {
    throw InvalidArgument("'coeffs' has " + std::to_string(rows.size()) + " rows, expected m = " + std::to_string(m));
  }
  FieldMatrix coeffs(*field, m, n);
  for (std::size_t i = 0; i < m; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) {
      throw InvalidArgument("row " + std::to_string(i) + " must hold n = " + std::to_string(n) + " entries");
    }
    for (std::size_t k = 0; k < n; ++k) {
      const std::string where = "coeffs[" + std::to_string(i) + "][" + std::to_string(k) + "]";
      mpz_class v = parse_decimal(rows[i][k], where);
      if (v >= field->modulus()) throw InvalidArgument(where + " is not below q");
      coeffs.set(i, k, field->element(v));
    }
  }
  return SdeInstance(std::move(field), d, std::move(coeffs));
}

std::string serialize_instance(const SdeInstance& instance) { return instance_to_json(instance).dump(2) + "\n"; }

SdeInstance read_instance(const std::filesystem::path& path) {
  return instance_from_json(parse_json(read_file(path), path.string()));
}

json solution_to_json(const Solution& sol, Strategy strategy, std::uint64_t seed) {
  json x = json::array();
  for (const auto& v : sol.x) x.push_back(v.to_string());
  return json{{"solution", std::move(x)},
              {"stats",
               {{"path", std::string(to_string(sol.stats.path))},
                {"restarts", sol.stats.restarts},
                {"seed", seed},
                {"strategy", std::string(to_string(strategy))},
                {"vectors_used", sol.stats.vectors_used}}}};
}

Vec solution_from_json(const json& j, const SdeInstance& instance) {
  if (!j.is_object() || !j.contains("solution") || !j.at("solution").is_array()) {
    throw InvalidArgument("solution document needs a 'solution' array");
  }
  const json& arr = j.at("solution");
  if (arr.size() != instance.variables()) {
    throw InvalidArgument("solution has " + std::to_string(arr.size()) + " entries, expected n = " +
                          std::to_string(instance.variables()));
  }
  Vec x;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    mpz_class v = parse_decimal(arr[k], "solution[" + std::to_string(k) + "]");
    if (v >= instance.field().modulus()) throw InvalidArgument("solution entry is not below q");
    x.push_back(instance.field().element(v));
  }
  return x;
}

mpz_class random_prime(unsigned bits, std::uint64_t d, SeededRng& rng) {
  if (bits < 3) throw InvalidArgument("q_bits must be at least 3");
  if (d == 0) throw InvalidArgument("degree must be at least 1");
  const std::uint64_t step = std::lcm<std::uint64_t>(2, d);
  mpz_class low;
  mpz_setbit(low.get_mpz_t(), bits - 1);
  constexpr int kAttempts = 1 << 16;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    mpz_class c = rng.random_bits(bits);
    mpz_setbit(c.get_mpz_t(), bits - 1);
    // Move down to the nearest value = 1 (mod step).
    const unsigned long r = mpz_fdiv_ui(mpz_class(c - 1).get_mpz_t(), step);
    c -= r;
    if (c < low || c < 3) continue;
    if (mpz_probab_prime_p(c.get_mpz_t(), 64) != 0) return c;
  }
  throw InvalidArgument("no " + std::to_string(bits) + "-bit prime = 1 (mod " + std::to_string(step) + ") found");
}

std::size_t default_variable_count(Strategy strategy, std::uint64_t d, const mpz_class& q, std::size_t m) {
  const std::uint64_t dp = lift_exponent(d, q).d_prime;
  mpz_class need;
  switch (strategy) {
    case Strategy::automatic:
    case Strategy::general:
      need = required_input_count(dp, m);
      break;
    case Strategy::oracle:
      need = required_count(Strategy::oracle, d, m);
      break;
    default:
      need = required_count(strategy, dp, m);
      break;
  }
  if (!mpz_fits_ulong_p(need.get_mpz_t())) throw InvalidArgument("required n = " + need.get_str() + " is too large");
  return need.get_ui();
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SdeInstance instance = read_instance(args.input);
    SeededRng rng(args.seed);
    SolveOptions options;
    options.cap = args.cap;
    const Solution sol = solve(instance, args.strategy, rng, options);
    write_text(args.output, solution_to_json(sol, args.strategy, args.seed).dump(2) + "\n", out);
    return exit_code::ok;
  });
}

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SeededRng rng(args.seed);
    mpz_class q;
    if (args.q) {
      q = parse_decimal(json(*args.q), "q");
    } else if (args.q_bits) {
      q = random_prime(*args.q_bits, args.d, rng);
    } else {
      throw InvalidArgument("gen needs --q or --q-bits");
    }
    auto field = std::make_shared<const PrimeField>(q);
    if (args.m == 0) throw InvalidArgument("m must be at least 1");
    const std::size_t n = args.n ? *args.n : default_variable_count(args.strategy, args.d, q, args.m);
    if (n == 0 || n > kMaxEntries / args.m) {
      throw InvalidArgument("instance with m = " + std::to_string(args.m) + ", n = " + std::to_string(n) +
                            " is outside the supported size");
    }
    const SdeInstance instance = SdeInstance::random(field, args.d, args.m, n, rng);
    write_text(args.output, serialize_instance(instance), out);
    return exit_code::ok;
  });
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SdeInstance instance = read_instance(args.input);
    const Vec x = solution_from_json(parse_json(read_file(args.solution), args.solution.string()), instance);
    if (verify(instance, x)) {
      out << "verified\n";
      return exit_code::ok;
    }
    out << "not verified\n";
    return exit_code::not_verified;
  });
}

namespace {

struct BenchCell {
  std::uint64_t d = 2;
  std::vector<std::size_t> ms;
  unsigned q_bits = 32;
  Strategy strategy = Strategy::automatic;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
};

std::vector<BenchCell> parse_bench_config(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return {};
  const json config = parse_json(text, "bench config");
  const json* cells = &config;
  if (config.is_object()) {
    if (!config.contains("cells")) return {};
    cells = &config.at("cells");
  }
  if (!cells->is_array()) throw InvalidArgument("bench config must list cells");
  std::vector<BenchCell> out;
  for (const auto& c : *cells) {
    if (!c.is_object()) throw InvalidArgument("bench cell must be an object");
    BenchCell cell;
    cell.d = parse_count(c, "d");
    const json& m = c.at("m");
    if (m.is_array()) {
      for (const auto& v : m) {
        if (!v.is_number_unsigned()) throw InvalidArgument("'m' entries must be nonnegative integers");
        cell.ms.push_back(v.get<std::size_t>());
      }
    } else {
      cell.ms.push_back(parse_count(c, "m"));
    }
    cell.q_bits = static_cast<unsigned>(parse_count(c, "q_bits"));
    if (c.contains("strategy")) cell.strategy = parse_strategy(c.at("strategy").get<std::string>());
    if (c.contains("trials")) cell.trials = parse_count(c, "trials");
    if (c.contains("seed")) cell.seed = parse_count(c, "seed");
    out.push_back(std::move(cell));
  }
  return out;
}

}  // namespace

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<BenchCell> cells = parse_bench_config(read_file(args.config));
    std::ostringstream csv;
    csv << "d,m,q_bits,n,strategy,restarts,time_ms,verified,seed\n";
    int status = exit_code::ok;
    for (const auto& cell : cells) {
      for (const std::size_t m : cell.ms) {
        if (m == 0) throw InvalidArgument("m must be at least 1");
        for (std::size_t trial = 0; trial < cell.trials && status == exit_code::ok; ++trial) {
          const std::uint64_t seed = cell.seed + trial;
          SeededRng rng(seed);
          auto field = std::make_shared<const PrimeField>(random_prime(cell.q_bits, cell.d, rng));
          const std::size_t n = default_variable_count(cell.strategy, cell.d, field->modulus(), m);
          const SdeInstance instance = SdeInstance::random(field, cell.d, m, n, rng);
          const auto start = std::chrono::steady_clock::now();
          const Solution sol = solve(instance, cell.strategy, rng);
          const double ms =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
          const bool ok = verify(instance, sol.x);
          csv << cell.d << ',' << m << ',' << cell.q_bits << ',' << n << ',' << to_string(cell.strategy) << ','
              << sol.stats.restarts << ',' << ms << ',' << (ok ? "true" : "false") << ',' << seed << '\n';
          if (!ok) {
            err << "error: unverified solution (d=" << cell.d << ", m=" << m << ", seed=" << seed << ")\n";
            status = exit_code::internal;
          }
        }
      }
    }
    write_text(args.output, csv.str(), out);
    return status;
  });
}

}  // namespace diageq::cli
