#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "cbd/coupling.hpp"

namespace cbd::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 2;
inline constexpr int exit_resource_limit = 3;

/// What a subcommand printed and its process exit status. The verdict lives
/// inside `output`; a contextual system still exits with 0.
struct CommandResult {
  int exit_code = exit_ok;
  std::string output;
  std::string error;
};

enum class AnalysisMethod { automatic, cyclic, lp };

struct AnalyzeOptions {
  AnalysisMethod method = AnalysisMethod::automatic;
  bool witness = false;  // with automatic, also selects the LP
  bool machine = false;
  CouplingOptions lp;
};

CommandResult analyze_document(std::string_view document, const AnalyzeOptions& options);
CommandResult cmd_analyze(const std::string& path, const AnalyzeOptions& options);

struct ReduceOptions {
  bool machine = false;
  std::optional<std::string> output_path;  // also write the reduced document here
};

CommandResult reduce_document(std::string_view document, const ReduceOptions& options);
CommandResult cmd_reduce(const std::string& path, const ReduceOptions& options);

struct DoubleSlitOptions {
  std::string p = "0";
  std::string q = "0";
  std::string p_prime = "0";
  std::string q_prime = "0";
  std::string r_prime = "0";
  bool emit_system = false;
  bool machine = false;
};

CommandResult cmd_double_slit(const DoubleSlitOptions& options);

struct SweepOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  std::optional<std::string> grid_step;
  std::size_t lp_subsample = 0;
  bool machine = false;
};

CommandResult cmd_sweep(const SweepOptions& options);

CommandResult cmd_demo(std::string_view name, bool machine);

}  // namespace cbd::cli
