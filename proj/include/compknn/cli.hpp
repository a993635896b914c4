#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "compknn/metrics.hpp"

namespace compknn::cli {

inline constexpr const char* kToolName = "compknn";
inline constexpr const char* kVersion = "1.0.0";

enum class Command { Dist, Transform, Tune, Roc, Loci };
enum class Format { Json, Csv };

std::string_view to_string(Command command);

struct RunConfig {
  Command command = Command::Tune;
  std::filesystem::path input;
  std::optional<std::string> label_column;
  std::vector<std::string> exclude{"RI"};
  MetricFamily family = MetricFamily::ESOV;
  std::vector<double> alphas{1.0};
  std::vector<std::size_t> ks{1};
  std::size_t replications = 200;
  std::size_t test_total = 0;
  std::optional<std::uint64_t> seed;
  std::filesystem::path output;  // file, or directory for roc; empty = stdout
  Format format = Format::Json;
  std::size_t threads = 1;
  std::size_t resolution = 200;      // loci lattice
  std::vector<double> reference;     // loci; barycentre when empty
  std::vector<double> x, w;          // dist
};

/// Executes one command. Returns the process exit status; diagnostics go to
/// `err`, reports to the configured output or `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace compknn::cli
