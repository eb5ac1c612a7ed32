#include "detmodes/io/field_file.hpp"

#include <openssl/evp.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <vector>

#include "detmodes/errors.hpp"

namespace detmodes::io {

static_assert(std::endian::native == std::endian::little, "field files assume a little-endian host");

namespace {

constexpr std::size_t kDigestSize = 32;

std::vector<unsigned char> sha256(std::span<const unsigned char> bytes) {
  std::vector<unsigned char> out(kDigestSize);
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != kDigestSize) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  return out;
}

template <class T>
void put(std::vector<unsigned char>& buf, const T& value) {
  const auto* p = reinterpret_cast<const unsigned char*>(&value);
  buf.insert(buf.end(), p, p + sizeof(T));
}

template <class T>
T get(const std::vector<unsigned char>& buf, std::size_t& pos) {
  if (pos + sizeof(T) > buf.size()) throw std::runtime_error("field file truncated");
  T value;
  std::memcpy(&value, buf.data() + pos, sizeof(T));
  pos += sizeof(T);
  return value;
}

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

std::string sha256_hex(std::span<const unsigned char> bytes) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s;
  for (unsigned char c : sha256(bytes)) {
    s.push_back(kHex[c >> 4]);
    s.push_back(kHex[c & 15]);
  }
  return s;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(slurp(path)); }

void write_field(const std::filesystem::path& path, const lp::SpectralField& field,
                 const std::string& quantity, double t) {
  const lp::Grid& g = field.grid();
  std::vector<unsigned char> buf;
  buf.reserve(64 + quantity.size() + 16 * g.spectral_size());
  buf.insert(buf.end(), std::begin(kFieldMagic), std::end(kFieldMagic));
  put(buf, kFieldVersion);
  put(buf, static_cast<std::int32_t>(g.n()));
  put(buf, g.length());
  put(buf, t);
  put(buf, static_cast<std::uint32_t>(quantity.size()));
  buf.insert(buf.end(), quantity.begin(), quantity.end());
  for (const lp::Complex& c : field.data()) {
    put(buf, c.real());
    put(buf, c.imag());
  }
  const auto digest = sha256(buf);
  buf.insert(buf.end(), digest.begin(), digest.end());

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

FieldSnapshot read_field(const std::filesystem::path& path) {
  const std::vector<unsigned char> buf = slurp(path);
  if (buf.size() < sizeof(kFieldMagic) + kDigestSize) throw std::runtime_error("field file truncated");
  const std::size_t body = buf.size() - kDigestSize;
  const auto digest = sha256(std::span(buf).first(body));
  if (!std::equal(digest.begin(), digest.end(), buf.begin() + static_cast<std::ptrdiff_t>(body))) {
    throw ChecksumError("checksum mismatch in " + path.string());
  }
  if (!std::equal(std::begin(kFieldMagic), std::end(kFieldMagic), buf.begin())) {
    throw std::runtime_error(path.string() + " is not a field file");
  }
  std::size_t pos = sizeof(kFieldMagic);
  const auto version = get<std::uint32_t>(buf, pos);
  if (version != kFieldVersion) throw std::runtime_error("unsupported field file version");
  const auto n = get<std::int32_t>(buf, pos);
  const auto length = get<double>(buf, pos);
  const auto t = get<double>(buf, pos);
  const auto name_len = get<std::uint32_t>(buf, pos);
  if (pos + name_len > body) throw std::runtime_error("field file truncated");
  std::string name(buf.begin() + static_cast<std::ptrdiff_t>(pos),
                   buf.begin() + static_cast<std::ptrdiff_t>(pos + name_len));
  pos += name_len;
  const lp::Grid grid(n, length);
  if (body - pos != 16 * grid.spectral_size()) throw std::runtime_error("field file size does not match n");
  FieldSnapshot snap{lp::SpectralField(grid), std::move(name), t};
  for (lp::Complex& c : snap.field.data()) {
    const double re = get<double>(buf, pos);
    const double im = get<double>(buf, pos);
    c = {re, im};
  }
  return snap;
}

}  // namespace detmodes::io
