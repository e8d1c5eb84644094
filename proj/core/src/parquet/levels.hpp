// Parquet RLE / bit-packed hybrid codec, used for definition and repetition
// levels and for dictionary indices.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace medsgraph::parquet {

// Decodes exactly `count` values. Throws ParquetError on truncated input.
void decode_rle_hybrid(const uint8_t* data, size_t size, uint32_t bit_width,
                       size_t count, std::vector<uint32_t>& out);

// Pure RLE runs (a valid hybrid stream; no bit-packed groups).
std::string encode_rle(const std::vector<uint32_t>& values, uint32_t bit_width);

inline uint32_t bit_width_for(uint32_t max_value) {
  uint32_t width = 0;
  while (max_value != 0) {
    ++width;
    max_value >>= 1;
  }
  return width;
}

}  // namespace medsgraph::parquet
