#pragma once

#include <cstdint>
#include <cstring>
#include <iosfwd>
#include <istream>
#include <ostream>

namespace acgraph::detail {

// All on-disk formats are little-endian regardless of host order.

inline void store_le32(std::uint32_t v, unsigned char* p) {
  p[0] = static_cast<unsigned char>(v);
  p[1] = static_cast<unsigned char>(v >> 8);
  p[2] = static_cast<unsigned char>(v >> 16);
  p[3] = static_cast<unsigned char>(v >> 24);
}

inline void store_le64(std::uint64_t v, unsigned char* p) {
  store_le32(static_cast<std::uint32_t>(v), p);
  store_le32(static_cast<std::uint32_t>(v >> 32), p + 4);
}

inline std::uint32_t load_le32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint64_t load_le64(const unsigned char* p) {
  return static_cast<std::uint64_t>(load_le32(p)) |
         (static_cast<std::uint64_t>(load_le32(p + 4)) << 32);
}

inline void write_le32(std::ostream& out, std::uint32_t v) {
  unsigned char buf[4];
  store_le32(v, buf);
  out.write(reinterpret_cast<const char*>(buf), 4);
}

inline void write_le64(std::ostream& out, std::uint64_t v) {
  unsigned char buf[8];
  store_le64(v, buf);
  out.write(reinterpret_cast<const char*>(buf), 8);
}

inline bool read_le32(std::istream& in, std::uint32_t& v) {
  unsigned char buf[4];
  if (!in.read(reinterpret_cast<char*>(buf), 4)) return false;
  v = load_le32(buf);
  return true;
}

inline bool read_le64(std::istream& in, std::uint64_t& v) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), 8)) return false;
  v = load_le64(buf);
  return true;
}

}  // namespace acgraph::detail
