#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sluiceops {

// Opening pattern of an n-bay gated structure. Bays are numbered 1..n from
// left to right facing downstream; open_mask[i] is bay i+1.
struct GateConfiguration {
  int n = 0;
  std::vector<bool> open_mask;

  int open_count() const;
  bool is_symmetric() const;

  // '0'/'1' per bay, bay 1 first.
  std::string to_string() const;
};

// Number of ways to open m of n gates. With the symmetry constraint the
// count is C(floor(n/2), floor(m/2)), and zero for even n with odd m.
std::uint64_t count_configs(int n, int m, bool symmetric);

// Sum of count_configs over m = 0..n.
std::uint64_t total_configs(int n, bool symmetric);

// Materializes the counted set in ascending mask order (bay 1 = most
// significant position).
std::vector<GateConfiguration> enumerate_configs(int n, int m, bool symmetric);

}  // namespace sluiceops
