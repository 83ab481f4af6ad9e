#include "sluiceops/gate_config.hpp"

#include <algorithm>
#include <stdexcept>

namespace sluiceops {

namespace {

void check_nm(int n, int m) {
  if (n < 1) throw std::domain_error("bay count must be >= 1");
  if (m < 0 || m > n) throw std::domain_error("open count must be in [0, n]");
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

// All length-len masks with `ones` set bits, ascending as binary numbers.
std::vector<std::string> mask_strings(int len, int ones) {
  std::vector<std::string> out;
  if (len == 0) {
    if (ones == 0) out.emplace_back("");
    return out;
  }
  std::string s(static_cast<size_t>(len - ones), '0');
  s.append(static_cast<size_t>(ones), '1');
  do {
    out.push_back(s);
  } while (std::next_permutation(s.begin(), s.end()));
  return out;
}

GateConfiguration from_string(int n, const std::string& s) {
  GateConfiguration cfg;
  cfg.n = n;
  cfg.open_mask.reserve(static_cast<size_t>(n));
  for (char c : s) cfg.open_mask.push_back(c == '1');
  return cfg;
}

}  // namespace

int GateConfiguration::open_count() const {
  return static_cast<int>(std::count(open_mask.begin(), open_mask.end(), true));
}

bool GateConfiguration::is_symmetric() const {
  auto rev = open_mask;
  std::reverse(rev.begin(), rev.end());
  return rev == open_mask;
}

std::string GateConfiguration::to_string() const {
  std::string s;
  s.reserve(open_mask.size());
  for (bool b : open_mask) s.push_back(b ? '1' : '0');
  return s;
}

std::uint64_t count_configs(int n, int m, bool symmetric) {
  check_nm(n, m);
  if (!symmetric) return binomial(n, m);
  if (n % 2 == 0 && m % 2 == 1) return 0;
  return binomial(n / 2, m / 2);
}

std::uint64_t total_configs(int n, bool symmetric) {
  if (n < 1) throw std::domain_error("bay count must be >= 1");
  std::uint64_t total = 0;
  for (int m = 0; m <= n; ++m) total += count_configs(n, m, symmetric);
  return total;
}

std::vector<GateConfiguration> enumerate_configs(int n, int m, bool symmetric) {
  check_nm(n, m);
  std::vector<GateConfiguration> out;
  if (!symmetric) {
    for (const auto& s : mask_strings(n, m)) out.push_back(from_string(n, s));
    return out;
  }
  if (n % 2 == 0 && m % 2 == 1) return out;
  const int half = n / 2;
  const bool center = (n % 2 == 1);
  // A symmetric mask is a free left half mirrored onto the right; the center
  // bay (odd n) absorbs the odd gate.
  for (const auto& left : mask_strings(half, m / 2)) {
    std::string s = left;
    if (center) s.push_back(m % 2 == 1 ? '1' : '0');
    std::string right(left.rbegin(), left.rend());
    s += right;
    out.push_back(from_string(n, s));
  }
  return out;
}

}  // namespace sluiceops
