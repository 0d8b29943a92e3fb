#include "ssa/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace ssa {

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("RealMatrix dimensions must be positive");
  }
}

RealMatrix RealMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r > 0 ? rows.begin()->size() : 0;
  RealMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) {
      throw std::invalid_argument("RealMatrix::from_rows: ragged rows");
    }
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

bool RealMatrix::all_finite() const noexcept {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

bool RealMatrix::all_in_unit_interval() const noexcept {
  for (double v : data_) {
    if (!(v >= 0.0 && v <= 1.0)) return false;
  }
  return true;
}

SpikeMatrix::SpikeMatrix(std::size_t rows, std::size_t cols, Bit fill)
    : rows_(rows), cols_(cols), bits_(rows * cols, fill) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("SpikeMatrix dimensions must be positive");
  }
  if (fill > 1) {
    throw std::invalid_argument("SpikeMatrix entries must be 0 or 1");
  }
}

SpikeMatrix SpikeMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r > 0 ? rows.begin()->size() : 0;
  SpikeMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) {
      throw std::invalid_argument("SpikeMatrix::from_rows: ragged rows");
    }
    std::size_t j = 0;
    for (int v : row) m.set(i, j++, static_cast<Bit>(v));
    ++i;
  }
  return m;
}

void SpikeMatrix::set(std::size_t r, std::size_t c, Bit b) {
  if (b > 1) {
    throw std::invalid_argument("SpikeMatrix entries must be 0 or 1");
  }
  bits_[r * cols_ + c] = b;
}

std::size_t SpikeMatrix::popcount() const noexcept {
  std::size_t ones = 0;
  for (Bit b : bits_) ones += b;
  return ones;
}

double SpikeMatrix::spike_rate() const noexcept {
  if (bits_.empty()) return 0.0;
  return static_cast<double>(popcount()) / static_cast<double>(bits_.size());
}

RealMatrix SpikeMatrix::to_real() const {
  RealMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    m.data()[i] = static_cast<double>(bits_[i]);
  }
  return m;
}

}  // namespace ssa
