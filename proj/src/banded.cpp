#include "banded.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cassert>
#include <cstdlib>

namespace lvs::detail {

BandedMatrix::BandedMatrix(std::size_t n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1), ab_(static_cast<std::size_t>(ldab_) * n, 0.0), ipiv_(n) {}

void BandedMatrix::clear() { std::fill(ab_.begin(), ab_.end(), 0.0); }

void BandedMatrix::add(std::size_t row, std::size_t col, double value) {
  const auto i = static_cast<long>(row);
  const auto j = static_cast<long>(col);
  assert(j - i <= ku_ && i - j <= kl_);
  // Column-major band storage with kl extra rows reserved for fill-in.
  const long band_row = kl_ + ku_ + i - j;
  ab_[static_cast<std::size_t>(band_row + j * ldab_)] += value;
}

bool BandedMatrix::solve_in_place(std::span<double> rhs) {
  assert(rhs.size() == n_);
  const auto n = static_cast<lapack_int>(n_);
  const lapack_int info = LAPACKE_dgbsv(LAPACK_COL_MAJOR, n, kl_, ku_, 1, ab_.data(), ldab_, ipiv_.data(),
                                        rhs.data(), n);
  return info == 0;
}

}  // namespace lvs::detail
