#pragma once

#include <span>
#include <utility>
#include <vector>

namespace tmflow {

struct Triplet {
  int r;
  int c;
  double v;
};

// Compressed-row matrix. Column indices are strictly increasing within each
// row and duplicates are summed on construction; structural zeros are kept.
class SparseMatrix {
 public:
  int rows = 0;
  int cols = 0;
  std::vector<int> row_ptr;
  std::vector<int> col_idx;
  std::vector<double> vals;

  static SparseMatrix from_triplets(int rows, int cols,
                                    std::vector<Triplet> triplets);

  int nnz() const { return static_cast<int>(vals.size()); }

  void matvec(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;

  SparseMatrix transposed() const;

  // sum_k coeff_k * A_k with pattern union
  static SparseMatrix weighted_sum(
      const std::vector<std::pair<double, const SparseMatrix*>>& terms);

  std::vector<double> diagonal() const;
  double quad_form(std::span<const double> x, std::span<const double> y) const;
  void scale(double s);
};

}  // namespace tmflow
