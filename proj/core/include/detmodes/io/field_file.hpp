#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "detmodes/lp/spectral_field.hpp"

namespace detmodes::io {

/// Field snapshot container. All integers and doubles little-endian.
///
///   offset  size  content
///   0       8     magic "DMFIELD1"
///   8       4     uint32 format version (1)
///   12      4     int32 n
///   16      8     double L
///   24      8     double t
///   32      4     uint32 name length m
///   36      m     quantity name (UTF-8, no terminator)
///   36+m    16 n (n/2+1)  coefficients as (re, im) double pairs, row-major:
///                 row r holds kx = r (r < n/2) or r - n, column c holds ky = c
///   end-32  32    SHA-256 of every preceding byte
struct FieldSnapshot {
  lp::SpectralField field;
  std::string quantity;
  double t = 0.0;
};

inline constexpr char kFieldMagic[8] = {'D', 'M', 'F', 'I', 'E', 'L', 'D', '1'};
inline constexpr std::uint32_t kFieldVersion = 1;

void write_field(const std::filesystem::path& path, const lp::SpectralField& field,
                 const std::string& quantity, double t);

/// Throws ChecksumError if the trailer does not match and std::runtime_error
/// for unreadable or malformed files.
FieldSnapshot read_field(const std::filesystem::path& path);

/// Lower-case hex SHA-256.
std::string sha256_hex(std::span<const unsigned char> bytes);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace detmodes::io
