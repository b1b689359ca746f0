#pragma once

#include <cstddef>
#include <vector>

#include "fsi/precision.hpp"

namespace fsi {

/// Dense cube tensor of rank 2..4 over a d-dimensional index space,
/// stored row-major. Holds potential derivatives V_ij, V_ijk, V_ijkl.
template <RealNumber Real>
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, int rank) : dim_(dim), rank_(rank), data_(size(dim, rank), Real(0)) {}

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] int rank() const noexcept { return rank_; }
  [[nodiscard]] const std::vector<Real>& data() const noexcept { return data_; }

  Real& operator()(int i, int j) { return data_[i * dim_ + j]; }
  const Real& operator()(int i, int j) const { return data_[i * dim_ + j]; }
  Real& operator()(int i, int j, int k) { return data_[(i * dim_ + j) * dim_ + k]; }
  const Real& operator()(int i, int j, int k) const { return data_[(i * dim_ + j) * dim_ + k]; }
  Real& operator()(int i, int j, int k, int l) {
    return data_[((i * dim_ + j) * dim_ + k) * dim_ + l];
  }
  const Real& operator()(int i, int j, int k, int l) const {
    return data_[((i * dim_ + j) * dim_ + k) * dim_ + l];
  }

 private:
  static std::size_t size(int dim, int rank) {
    std::size_t n = 1;
    for (int r = 0; r < rank; ++r) {
      n *= static_cast<std::size_t>(dim);
    }
    return n;
  }

  int dim_ = 0;
  int rank_ = 0;
  std::vector<Real> data_;
};

}  // namespace fsi
