#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lvs::detail {

// Square banded matrix in LAPACK general-band storage, solved with dgbsv
// (LU with partial pivoting). Row/column indices are 0-based.
class BandedMatrix {
 public:
  BandedMatrix(std::size_t n, int kl, int ku);

  void clear();
  void add(std::size_t row, std::size_t col, double value);
  std::size_t size() const noexcept { return n_; }

  // Solves A x = rhs in place. The factorisation destroys the matrix.
  // Returns false when the matrix is numerically singular.
  bool solve_in_place(std::span<double> rhs);

 private:
  std::size_t n_;
  int kl_;
  int ku_;
  int ldab_;
  std::vector<double> ab_;
  std::vector<int> ipiv_;
};

}  // namespace lvs::detail
