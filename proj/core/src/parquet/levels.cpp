#include "levels.hpp"

#include "medsgraph/parquet.hpp"

namespace medsgraph::parquet {
namespace {

uint64_t read_varint(const uint8_t* data, size_t size, size_t& pos) {
  uint64_t value = 0;
  int shift = 0;
  for (;;) {
    if (pos >= size) throw ParquetError("level stream truncated (varint)");
    const uint8_t byte = data[pos++];
    value |= static_cast<uint64_t>(byte & 0x7F) << shift;
    if ((byte & 0x80) == 0) return value;
    shift += 7;
    if (shift > 63) throw ParquetError("level stream varint overflow");
  }
}

}  // namespace

void decode_rle_hybrid(const uint8_t* data, size_t size, uint32_t bit_width,
                       size_t count, std::vector<uint32_t>& out) {
  out.clear();
  out.reserve(count);
  if (bit_width == 0) {
    out.assign(count, 0);
    return;
  }
  const size_t value_bytes = (bit_width + 7) / 8;
  size_t pos = 0;
  while (out.size() < count) {
    const uint64_t header = read_varint(data, size, pos);
    if ((header & 1) == 0) {
      // RLE run: repeated value, little-endian in ceil(width/8) bytes.
      const uint64_t run = header >> 1;
      if (pos + value_bytes > size)
        throw ParquetError("level stream truncated (rle value)");
      uint32_t value = 0;
      for (size_t i = 0; i < value_bytes; ++i)
        value |= static_cast<uint32_t>(data[pos + i]) << (8 * i);
      pos += value_bytes;
      for (uint64_t i = 0; i < run && out.size() < count; ++i)
        out.push_back(value);
    } else {
      // Bit-packed run: groups of 8 values, LSB first.
      const uint64_t groups = header >> 1;
      const size_t bytes = static_cast<size_t>(groups) * bit_width;
      if (pos + bytes > size)
        throw ParquetError("level stream truncated (bit-packed run)");
      uint64_t bit_pos = 0;
      const uint64_t total = groups * 8;
      for (uint64_t i = 0; i < total; ++i) {
        uint32_t value = 0;
        for (uint32_t b = 0; b < bit_width; ++b, ++bit_pos) {
          const uint8_t byte = data[pos + (bit_pos >> 3)];
          value |= static_cast<uint32_t>((byte >> (bit_pos & 7)) & 1) << b;
        }
        if (out.size() < count) out.push_back(value);
      }
      pos += bytes;
    }
  }
}

std::string encode_rle(const std::vector<uint32_t>& values,
                       uint32_t bit_width) {
  std::string out;
  const size_t value_bytes = (bit_width + 7) / 8;
  size_t i = 0;
  while (i < values.size()) {
    size_t j = i + 1;
    while (j < values.size() && values[j] == values[i]) ++j;
    const uint64_t run = j - i;
    uint64_t header = run << 1;
    while (header >= 0x80) {
      out += static_cast<char>((header & 0x7F) | 0x80);
      header >>= 7;
    }
    out += static_cast<char>(header);
    for (size_t b = 0; b < value_bytes; ++b)
      out += static_cast<char>((values[i] >> (8 * b)) & 0xFF);
    i = j;
  }
  return out;
}

}  // namespace medsgraph::parquet
