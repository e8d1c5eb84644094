// Page decompression: snappy (own decoder) and gzip (zlib).
#pragma once

#include <cstdint>
#include <vector>

namespace medsgraph::parquet {

// Raw snappy block format. Throws ParquetError on malformed input.
std::vector<uint8_t> snappy_decompress(const uint8_t* data, size_t size);

// RFC 1952 gzip (also accepts a bare zlib stream).
std::vector<uint8_t> gzip_decompress(const uint8_t* data, size_t size,
                                     size_t expected_size);

}  // namespace medsgraph::parquet
