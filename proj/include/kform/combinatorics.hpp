#pragma once

#include <cstdint>
#include <vector>

namespace kform {

// Hard ceiling on the ambient dimension (bitmask representation uses 16 bits).
inline constexpr int kHardMaxDimension = 16;

// Runtime cap on the ambient dimension accepted by constructors. Defaults to
// 10; may be raised up to kHardMaxDimension for experiments.
int max_dimension();
void set_max_dimension(int n);

std::uint64_t binomial(int n, int k);

// Basis bookkeeping for one ambient dimension. Degree-p basis elements are
// the strictly increasing index tuples, ordered lexicographically and stored
// as bitmasks (bit i-1 set <=> index i present, indices 1-based).
class BasisTable {
 public:
  static const BasisTable& get(int n);

  int n() const { return n_; }
  // Number of degree-p basis elements; 0 outside [0, n].
  int dim(int p) const;
  std::uint32_t mask(int p, int rank) const { return masks_[p][rank]; }
  // Rank of a basis mask within its own degree.
  int rank(std::uint32_t mask) const { return rank_of_mask_[mask]; }
  const std::vector<std::uint32_t>& masks(int p) const { return masks_[p]; }

 private:
  explicit BasisTable(int n);

  int n_;
  std::vector<std::vector<std::uint32_t>> masks_;
  std::vector<int> rank_of_mask_;
};

// Sign of e_S ∧ e_T as a multiple of the canonical basis element on S ∪ T;
// 0 when S and T share an index.
int wedge_sign(std::uint32_t s, std::uint32_t t);

// Sign produced by pulling index i (1-based, required to lie in T) out of
// e_T: (-1)^(number of indices of T below i).
int contract_sign(int i, std::uint32_t t);

std::vector<int> mask_to_indices(std::uint32_t mask);
std::uint32_t indices_to_mask(const std::vector<int>& indices, int n);

}  // namespace kform
