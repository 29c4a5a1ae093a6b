#include "kform/combinatorics.hpp"

#include <atomic>
#include <bit>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace kform {

namespace {
std::atomic<int> g_max_dimension{10};
}

int max_dimension() { return g_max_dimension.load(); }

void set_max_dimension(int n) {
  if (n < 1 || n > kHardMaxDimension)
    throw std::invalid_argument("max dimension must lie in [1, 16]");
  g_max_dimension.store(n);
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

BasisTable::BasisTable(int n) : n_(n) {
  masks_.resize(n + 1);
  rank_of_mask_.assign(std::size_t{1} << n, -1);
  for (int p = 0; p <= n; ++p) {
    auto& list = masks_[p];
    list.reserve(binomial(n, p));
    // Enumerate increasing p-tuples of 1..n in lexicographic order.
    std::vector<int> c(p);
    for (int i = 0; i < p; ++i) c[i] = i + 1;
    while (true) {
      std::uint32_t mask = 0;
      for (int v : c) mask |= 1u << (v - 1);
      rank_of_mask_[mask] = static_cast<int>(list.size());
      list.push_back(mask);
      if (p == 0) break;
      int i = p - 1;
      while (i >= 0 && c[i] == n - (p - 1 - i)) --i;
      if (i < 0) break;
      ++c[i];
      for (int j = i + 1; j < p; ++j) c[j] = c[j - 1] + 1;
    }
  }
}

const BasisTable& BasisTable::get(int n) {
  if (n < 1 || n > kHardMaxDimension)
    throw std::invalid_argument("BasisTable: dimension out of range");
  static std::mutex mu;
  static std::unique_ptr<BasisTable> cache[kHardMaxDimension + 1];
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[n]) cache[n].reset(new BasisTable(n));
  return *cache[n];
}

int BasisTable::dim(int p) const {
  if (p < 0 || p > n_) return 0;
  return static_cast<int>(masks_[p].size());
}

int wedge_sign(std::uint32_t s, std::uint32_t t) {
  if (s & t) return 0;
  // Parity of the number of pairs (a in s, b in t) with b < a.
  int inv = 0;
  for (std::uint32_t rest = s; rest;) {
    std::uint32_t bit = rest & (~rest + 1);
    inv += std::popcount(t & (bit - 1));
    rest ^= bit;
  }
  return (inv & 1) ? -1 : 1;
}

int contract_sign(int i, std::uint32_t t) {
  std::uint32_t bit = 1u << (i - 1);
  if (!(t & bit)) throw std::invalid_argument("contract_sign: index not present");
  return (std::popcount(t & (bit - 1)) & 1) ? -1 : 1;
}

std::vector<int> mask_to_indices(std::uint32_t mask) {
  std::vector<int> idx;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u) idx.push_back(i + 1);
  return idx;
}

std::uint32_t indices_to_mask(const std::vector<int>& indices, int n) {
  std::uint32_t mask = 0;
  for (int v : indices) {
    if (v < 1 || v > n) throw std::invalid_argument("index out of range");
    std::uint32_t bit = 1u << (v - 1);
    if (mask & bit) throw std::invalid_argument("repeated index");
    mask |= bit;
  }
  return mask;
}

}  // namespace kform
