#ifndef SSA_MATRIX_IO_HPP
#define SSA_MATRIX_IO_HPP

#include <filesystem>
#include <iosfwd>

#include "ssa/matrix.hpp"

// Binary matrix container. Little-endian throughout:
//   magic   8 bytes  "SSAMTRX\0"
//   version u32      currently 1
//   rows    u32
//   cols    u32
//   kind    u32      0 = real64, 1 = bit-packed
//   payload          row-major; real64 as 8-byte IEEE doubles; bit-packed
//                    rows padded to a byte boundary, LSB-first within bytes
// The payload length must match the header exactly.

namespace ssa {

inline constexpr std::uint32_t kMatrixFileVersion = 1;

void write_real_matrix(std::ostream& os, const RealMatrix& m);
void write_spike_matrix(std::ostream& os, const SpikeMatrix& m);
RealMatrix read_real_matrix(std::istream& is);
SpikeMatrix read_spike_matrix(std::istream& is);

void write_real_matrix(const std::filesystem::path& path, const RealMatrix& m);
void write_spike_matrix(const std::filesystem::path& path, const SpikeMatrix& m);
RealMatrix read_real_matrix(const std::filesystem::path& path);
SpikeMatrix read_spike_matrix(const std::filesystem::path& path);

}  // namespace ssa

#endif  // SSA_MATRIX_IO_HPP
