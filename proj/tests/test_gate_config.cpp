#include <doctest.h>

#include <cstdint>
#include <set>
#include <string>

#include "sluiceops/gate_config.hpp"

using namespace sluiceops;

namespace {

// Exhaustive oracle: walk every bitmask of n bays and count the ones with m
// open gates, optionally restricted to left-right symmetric (palindromic)
// patterns.
std::uint64_t brute_count(int n, int m, bool symmetric) {
  std::uint64_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int open = 0;
    bool pal = true;
    for (int i = 0; i < n; ++i) {
      const bool bi = (mask >> i) & 1u;
      if (bi) ++open;
      if (bi != (((mask >> (n - 1 - i)) & 1u) != 0)) pal = false;
    }
    if (open != m) continue;
    if (symmetric && !pal) continue;
    ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("seven-bay headline counts") {
  CHECK(total_configs(7, false) == 128);
  CHECK(total_configs(7, true) == 16);
}

TEST_CASE("closed-form counts agree with brute force for n <= 12") {
  for (int n = 1; n <= 12; ++n) {
    std::uint64_t total_free = 0, total_sym = 0;
    for (int m = 0; m <= n; ++m) {
      CHECK(count_configs(n, m, false) == brute_count(n, m, false));
      CHECK(count_configs(n, m, true) == brute_count(n, m, true));
      total_free += count_configs(n, m, false);
      total_sym += count_configs(n, m, true);
    }
    CHECK(total_configs(n, false) == total_free);
    CHECK(total_configs(n, true) == total_sym);
  }
}

TEST_CASE("even bay count has no symmetric odd-m configuration") {
  CHECK(count_configs(6, 3, true) == 0);
  CHECK(count_configs(8, 1, true) == 0);
  CHECK(count_configs(8, 5, true) == 0);
}

TEST_CASE("enumeration matches the counts and the constraints") {
  for (int n : {5, 7}) {
    for (int m = 0; m <= n; ++m) {
      for (bool symmetric : {false, true}) {
        const auto configs = enumerate_configs(n, m, symmetric);
        CHECK(configs.size() == count_configs(n, m, symmetric));
        std::set<std::string> seen;
        for (const auto& c : configs) {
          CHECK(c.n == n);
          CHECK(c.open_count() == m);
          if (symmetric) CHECK(c.is_symmetric());
          CHECK(seen.insert(c.to_string()).second);  // no duplicates
        }
      }
    }
  }
}

TEST_CASE("configuration string and symmetry helpers") {
  GateConfiguration c;
  c.n = 5;
  c.open_mask = {true, false, true, false, true};
  CHECK(c.to_string() == "10101");
  CHECK(c.open_count() == 3);
  CHECK(c.is_symmetric());

  c.open_mask = {true, true, false, false, false};
  CHECK_FALSE(c.is_symmetric());
}
