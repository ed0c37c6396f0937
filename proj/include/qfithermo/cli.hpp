#pragma once

// Command layer behind the qfithermo executable. Each command takes a parsed
// JSON configuration and returns the full text it would emit, so the output
// can be tested byte for byte without spawning a process.

#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qfithermo/dickelab.hpp"
#include "qfithermo/metro.hpp"
#include "qfithermo/rabi.hpp"

namespace qfithermo::cli {

enum class Format { csv, json };

struct OutputOptions {
  Format format = Format::csv;
  bool bits = false;     // entropies divided by log 2
  bool verify = false;   // re-derive inequalities before emitting
  unsigned threads = 1;  // 0 = hardware concurrency
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

// Parsed requests ------------------------------------------------------------

struct BoundsRequest {
  ComplexVector coefficients;  // Dicke-basis (or generator-basis) amplitudes
  std::vector<double> spectrum;  // eigenvalues of the diagonal generator
  double t = 1.0;
  double kbt = 1.0;
  double entropy_final = 0.0;
};

struct RabiRequest {
  RabiConfig config;
  std::vector<double> c0_list;
};

struct ScanRequest {
  RabiConfig config;
  double tau_min = 20.0;
  double tau_max = 40.0;
  int steps = 201;
};

struct DickeRequest {
  std::vector<DickeFamily> families;
  std::vector<int> qubits;
  int fit_min_qubits = kFitMinQubits;
  std::optional<std::pair<int, int>> saturation_pair;
};

BoundsRequest parse_bounds(const nlohmann::json& config);
RabiRequest parse_rabi(const nlohmann::json& config);
ScanRequest parse_scan(const nlohmann::json& config);
DickeRequest parse_dicke(const nlohmann::json& config);

// Commands -------------------------------------------------------------------

std::string cmd_bounds(const BoundsRequest& request, const OutputOptions& options);
std::string cmd_rabi(const RabiRequest& request, const OutputOptions& options);
std::string cmd_erasure_scan(const ScanRequest& request, const OutputOptions& options);
std::string cmd_dicke(const DickeRequest& request, const OutputOptions& options);

/// Parse `config` for `command` (bounds, rabi, dicke, erasure-scan) and run it.
std::string run_command(std::string_view command, const nlohmann::json& config, const OutputOptions& options);

nlohmann::json load_config(const std::filesystem::path& path);

/// 12 significant digits, "%.12g"; negative zero prints as 0.
std::string format_number(double x);

}  // namespace qfithermo::cli
