#include "codec.hpp"

#include <zlib.h>

#include "medsgraph/parquet.hpp"

namespace medsgraph::parquet {

std::vector<uint8_t> snappy_decompress(const uint8_t* data, size_t size) {
  size_t pos = 0;
  uint64_t expected = 0;
  int shift = 0;
  for (;;) {
    if (pos >= size) throw ParquetError("snappy: truncated preamble");
    const uint8_t byte = data[pos++];
    expected |= static_cast<uint64_t>(byte & 0x7F) << shift;
    if ((byte & 0x80) == 0) break;
    shift += 7;
    if (shift > 35) throw ParquetError("snappy: preamble overflow");
  }

  std::vector<uint8_t> out;
  out.reserve(expected);
  while (pos < size) {
    const uint8_t tag = data[pos++];
    const uint32_t kind = tag & 0x03;
    if (kind == 0) {
      // Literal run.
      uint64_t len = (tag >> 2) + 1;
      if (len > 60) {
        const uint32_t extra = static_cast<uint32_t>(len - 60);
        if (pos + extra > size) throw ParquetError("snappy: truncated literal length");
        len = 0;
        for (uint32_t i = 0; i < extra; ++i)
          len |= static_cast<uint64_t>(data[pos + i]) << (8 * i);
        len += 1;
        pos += extra;
      }
      if (pos + len > size) throw ParquetError("snappy: truncated literal");
      out.insert(out.end(), data + pos, data + pos + len);
      pos += len;
      continue;
    }

    uint64_t length = 0;
    uint64_t offset = 0;
    if (kind == 1) {
      if (pos >= size) throw ParquetError("snappy: truncated copy");
      length = ((tag >> 2) & 0x07) + 4;
      offset = (static_cast<uint64_t>(tag >> 5) << 8) | data[pos];
      pos += 1;
    } else if (kind == 2) {
      if (pos + 2 > size) throw ParquetError("snappy: truncated copy");
      length = (tag >> 2) + 1;
      offset = data[pos] | (static_cast<uint64_t>(data[pos + 1]) << 8);
      pos += 2;
    } else {
      if (pos + 4 > size) throw ParquetError("snappy: truncated copy");
      length = (tag >> 2) + 1;
      offset = data[pos] | (static_cast<uint64_t>(data[pos + 1]) << 8) |
               (static_cast<uint64_t>(data[pos + 2]) << 16) |
               (static_cast<uint64_t>(data[pos + 3]) << 24);
      pos += 4;
    }
    if (offset == 0 || offset > out.size())
      throw ParquetError("snappy: copy offset out of range");
    // Copies may overlap their own output; byte-by-byte is the semantics.
    size_t from = out.size() - offset;
    for (uint64_t i = 0; i < length; ++i) out.push_back(out[from + i]);
  }
  if (out.size() != expected)
    throw ParquetError("snappy: output size mismatch");
  return out;
}

std::vector<uint8_t> gzip_decompress(const uint8_t* data, size_t size,
                                     size_t expected_size) {
  std::vector<uint8_t> out(expected_size);
  z_stream stream{};
  // 15+32: accept either a gzip or a zlib wrapper.
  if (inflateInit2(&stream, 15 + 32) != Z_OK)
    throw ParquetError("gzip: inflateInit failed");
  stream.next_in = const_cast<Bytef*>(data);
  stream.avail_in = static_cast<uInt>(size);
  stream.next_out = out.data();
  stream.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&stream, Z_FINISH);
  inflateEnd(&stream);
  if (rc != Z_STREAM_END || stream.total_out != expected_size)
    throw ParquetError("gzip: bad or truncated stream");
  return out;
}

}  // namespace medsgraph::parquet
