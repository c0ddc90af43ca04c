#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tsloc {

// Element types understood by the NPY codec. f4, i4 and b1 are read-only
// and widen to f8, i8 and u1 respectively.
enum class DType { kF8, kF4, kI8, kI4, kU1, kB1 };

std::string_view to_string(DType dtype);

struct NpyArray {
  std::vector<std::size_t> shape;
  // Type recorded in the file (before widening).
  DType dtype = DType::kF8;
  // Row-major, native byte order.
  std::variant<std::vector<double>, std::vector<std::int64_t>,
               std::vector<std::uint8_t>>
      data;

  std::size_t size() const;
  bool is_floating() const { return std::holds_alternative<std::vector<double>>(data); }
  // Converts any element type to doubles.
  std::vector<double> to_f8() const;
  // Throws FormatError unless the payload is integral.
  std::vector<std::int64_t> to_i8() const;
  // Throws FormatError unless every value is 0 or 1 / fits in a byte.
  std::vector<std::uint8_t> to_u1() const;
};

// Serializes to NPY format version 1.0: magic, version, little-endian header
// length, a dict header padded with spaces so the preamble is a multiple of
// 64 bytes and ends in '\n', then C-order little-endian data.
// f8 input must be finite (IoError otherwise).
std::string encode_npy(std::span<const double> values,
                       std::span<const std::size_t> shape);
std::string encode_npy(std::span<const std::int64_t> values,
                       std::span<const std::size_t> shape);
std::string encode_npy(std::span<const std::uint8_t> values,
                       std::span<const std::size_t> shape);

// Parses NPY versions 1.0, 2.0 and 3.0 with little- or big-endian data in C
// or Fortran order; the result is always row-major native. Throws
// FormatError.
NpyArray decode_npy(std::string_view bytes);

// File wrappers; these add IoError for filesystem failures.
void write_npy(const std::filesystem::path& path, std::span<const double> values,
               std::span<const std::size_t> shape);
void write_npy(const std::filesystem::path& path,
               std::span<const std::int64_t> values,
               std::span<const std::size_t> shape);
void write_npy(const std::filesystem::path& path,
               std::span<const std::uint8_t> values,
               std::span<const std::size_t> shape);
NpyArray read_npy(const std::filesystem::path& path);

// Reads and writes whole files as bytes; IoError on failure.
std::string read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::string_view bytes);

}  // namespace tsloc
