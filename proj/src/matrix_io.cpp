#include "ssa/matrix_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace ssa {

namespace {

constexpr std::array<char, 8> kMagic = {'S', 'S', 'A', 'M', 'T', 'R', 'X', '\0'};
constexpr std::uint32_t kKindReal64 = 0;
constexpr std::uint32_t kKindBitPacked = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  const char bytes[4] = {
      static_cast<char>(v & 0xFF),
      static_cast<char>((v >> 8) & 0xFF),
      static_cast<char>((v >> 16) & 0xFF),
      static_cast<char>((v >> 24) & 0xFF),
  };
  os.write(bytes, 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char bytes[4];
  is.read(reinterpret_cast<char*>(bytes), 4);
  if (!is) throw std::runtime_error("matrix file: truncated header");
  return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
         (static_cast<std::uint32_t>(bytes[2]) << 16) | (static_cast<std::uint32_t>(bytes[3]) << 24);
}

void put_f64(std::ostream& os, double v) {
  const auto u = std::bit_cast<std::uint64_t>(v);
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((u >> (8 * i)) & 0xFF);
  os.write(bytes, 8);
}

double get_f64(std::istream& is) {
  unsigned char bytes[8];
  is.read(reinterpret_cast<char*>(bytes), 8);
  if (!is) throw std::runtime_error("matrix file: truncated payload");
  std::uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(u);
}

struct Header {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::uint32_t kind = 0;
};

void write_header(std::ostream& os, std::uint32_t rows, std::uint32_t cols, std::uint32_t kind) {
  os.write(kMagic.data(), kMagic.size());
  put_u32(os, kMatrixFileVersion);
  put_u32(os, rows);
  put_u32(os, cols);
  put_u32(os, kind);
}

Header read_header(std::istream& is, std::uint32_t expected_kind) {
  std::array<char, 8> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) throw std::runtime_error("matrix file: bad magic");
  const std::uint32_t version = get_u32(is);
  if (version != kMatrixFileVersion) {
    throw std::runtime_error("matrix file: unsupported version " + std::to_string(version));
  }
  Header h;
  h.rows = get_u32(is);
  h.cols = get_u32(is);
  h.kind = get_u32(is);
  if (h.kind != expected_kind) {
    throw std::runtime_error("matrix file: unexpected element kind");
  }
  if (h.rows == 0 || h.cols == 0) {
    throw std::runtime_error("matrix file: zero dimension");
  }
  return h;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
  return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path.string());
  return is;
}

}  // namespace

void write_real_matrix(std::ostream& os, const RealMatrix& m) {
  write_header(os, static_cast<std::uint32_t>(m.rows()), static_cast<std::uint32_t>(m.cols()),
               kKindReal64);
  for (double v : m.data()) put_f64(os, v);
  if (!os) throw std::runtime_error("matrix file: write failed");
}

RealMatrix read_real_matrix(std::istream& is) {
  const Header h = read_header(is, kKindReal64);
  RealMatrix m(h.rows, h.cols);
  for (double& v : m.data()) v = get_f64(is);
  is.peek();
  if (!is.eof()) throw std::runtime_error("matrix file: payload longer than header");
  return m;
}

void write_spike_matrix(std::ostream& os, const SpikeMatrix& m) {
  write_header(os, static_cast<std::uint32_t>(m.rows()), static_cast<std::uint32_t>(m.cols()),
               kKindBitPacked);
  const std::size_t row_bytes = (m.cols() + 7) / 8;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::string row(row_bytes, '\0');
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c)) row[c / 8] = static_cast<char>(row[c / 8] | (1 << (c % 8)));
    }
    os.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
  if (!os) throw std::runtime_error("matrix file: write failed");
}

SpikeMatrix read_spike_matrix(std::istream& is) {
  const Header h = read_header(is, kKindBitPacked);
  SpikeMatrix m(h.rows, h.cols);
  const std::size_t row_bytes = (h.cols + 7) / 8;
  std::string row(row_bytes, '\0');
  for (std::size_t r = 0; r < h.rows; ++r) {
    is.read(row.data(), static_cast<std::streamsize>(row.size()));
    if (!is) throw std::runtime_error("matrix file: truncated payload");
    for (std::size_t c = 0; c < h.cols; ++c) {
      const Bit b = static_cast<Bit>((static_cast<unsigned char>(row[c / 8]) >> (c % 8)) & 1);
      m.set(r, c, b);
    }
    // Padding bits past the last column must be zero.
    for (std::size_t bit = h.cols; bit < row_bytes * 8; ++bit) {
      if ((static_cast<unsigned char>(row[bit / 8]) >> (bit % 8)) & 1) {
        throw std::runtime_error("matrix file: nonzero padding bits");
      }
    }
  }
  is.peek();
  if (!is.eof()) throw std::runtime_error("matrix file: payload longer than header");
  return m;
}

void write_real_matrix(const std::filesystem::path& path, const RealMatrix& m) {
  auto os = open_out(path);
  write_real_matrix(os, m);
}

void write_spike_matrix(const std::filesystem::path& path, const SpikeMatrix& m) {
  auto os = open_out(path);
  write_spike_matrix(os, m);
}

RealMatrix read_real_matrix(const std::filesystem::path& path) {
  auto is = open_in(path);
  return read_real_matrix(is);
}

SpikeMatrix read_spike_matrix(const std::filesystem::path& path) {
  auto is = open_in(path);
  return read_spike_matrix(is);
}

}  // namespace ssa
