#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "diageq/instance.hpp"
#include "diageq/rng.hpp"

namespace diageq::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int not_verified = 1;
inline constexpr int bad_input = 2;
inline constexpr int cannot_solve = 3;
inline constexpr int internal = 4;
}  // namespace exit_code

nlohmann::json instance_to_json(const SdeInstance& instance);
/// Throws InvalidArgument on any malformed field.
SdeInstance instance_from_json(const nlohmann::json& j);
std::string serialize_instance(const SdeInstance& instance);
SdeInstance read_instance(const std::filesystem::path& path);

nlohmann::json solution_to_json(const Solution& sol, Strategy strategy, std::uint64_t seed);
/// The "solution" array of a solution document, checked against the field and n.
Vec solution_from_json(const nlohmann::json& j, const SdeInstance& instance);

/// Odd probable prime with exactly `bits` bits and q = 1 (mod d).
mpz_class random_prime(unsigned bits, std::uint64_t d, SeededRng& rng);

/// n used by gen when --n is omitted.
std::size_t default_variable_count(Strategy strategy, std::uint64_t d, const mpz_class& q, std::size_t m);

struct SolveArgs {
  std::filesystem::path input;
  std::optional<std::filesystem::path> output;
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::automatic;
  std::uint64_t cap = 10'000'000;
};

struct GenArgs {
  std::optional<std::string> q;
  std::optional<unsigned> q_bits;
  std::uint64_t d = 2;
  std::size_t m = 1;
  std::optional<std::size_t> n;
  Strategy strategy = Strategy::automatic;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> output;
};

struct VerifyArgs {
  std::filesystem::path input;
  std::filesystem::path solution;
};

struct BenchArgs {
  std::filesystem::path config;
  std::optional<std::filesystem::path> output;
};

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err);
/// 0 when the solution verifies, 1 when it does not.
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);

}  // namespace diageq::cli
