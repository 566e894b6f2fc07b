#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace danforge {

struct BenchRecord {
  std::string instance_id;
  std::string family;
  std::size_t n = 0;
  std::size_t m = 0;                 // directed support size of the demand
  std::string algo;
  std::size_t delta_bound_claimed = 0;  // 0 when the row makes no degree claim
  std::size_t max_degree_observed = 0;
  double epl = 0.0;
  double h_xy = 0.0;
  double h_yx = 0.0;
  double lower_bound = 0.0;
  double ratio_epl_over_entropy = 0.0;  // epl / (h_xy + h_yx + 2)
  double wall_time_ms = 0.0;
  // Spanner rows only.
  std::optional<double> nd;
  std::optional<double> apd;
};

const std::vector<std::string_view>& suite_names();

// Deterministic for a given (name, seed). Wall time is only measured when
// `timing` is set; otherwise the column is 0 so output is reproducible.
// Throws UnknownSuite.
std::vector<BenchRecord> run_suite(std::string_view name, std::uint64_t seed, bool timing = false);

std::string to_csv(std::span<const BenchRecord> records);

int cli(int argc, const char* const* argv);

}  // namespace danforge
