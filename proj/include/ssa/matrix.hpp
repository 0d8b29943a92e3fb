#ifndef SSA_MATRIX_HPP
#define SSA_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "ssa/sc_core.hpp"

namespace ssa {

/// Dense row-major real matrix. Shape is fixed at construction.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  static RealMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

  bool same_shape(const RealMatrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool all_finite() const noexcept;
  /// True when every entry lies in [0,1].
  bool all_in_unit_interval() const noexcept;

  bool operator==(const RealMatrix& other) const noexcept = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Binary matrix holding one time step of a spike tensor. Entries are 0/1.
class SpikeMatrix {
 public:
  SpikeMatrix() = default;
  SpikeMatrix(std::size_t rows, std::size_t cols, Bit fill = 0);
  static SpikeMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Bit operator()(std::size_t r, std::size_t c) const noexcept { return bits_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Bit b);

  const std::vector<Bit>& bits() const noexcept { return bits_; }

  bool same_shape(const SpikeMatrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  std::size_t popcount() const noexcept;
  double spike_rate() const noexcept;

  /// View as probabilities/reals (0.0 or 1.0 per entry).
  RealMatrix to_real() const;

  bool operator==(const SpikeMatrix& other) const noexcept = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Bit> bits_;
};

}  // namespace ssa

#endif  // SSA_MATRIX_HPP
