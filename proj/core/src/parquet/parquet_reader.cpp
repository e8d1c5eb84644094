#include <algorithm>
#include <cstring>
#include <fstream>

#include "codec.hpp"
#include "levels.hpp"
#include "medsgraph/parquet.hpp"
#include "metadata.hpp"

namespace medsgraph::parquet {

const Column* RowBatch::find(std::string_view name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return &columns[i];
  return nullptr;
}

Column& RowBatch::add(std::string name, ColumnType type) {
  names.push_back(std::move(name));
  Column col;
  col.type = type;
  columns.push_back(std::move(col));
  return columns.back();
}

namespace {

constexpr char kMagic[4] = {'P', 'A', 'R', '1'};

// A leaf column resolved from the schema tree: either a flat primitive or
// the element of a one-level list.
struct Leaf {
  std::string field_name;
  std::vector<std::string> path;
  int32_t physical = -1;
  bool is_list = false;
  bool optional_element = false;
  uint32_t max_def = 0;
  uint32_t max_rep = 0;
  meta::TimeUnit timestamp_unit = meta::TimeUnit::None;
  bool supported = true;
};

// Values of one chunk, normalized: INT32 widens to int64, FLOAT to double.
struct PlainValues {
  std::vector<int64_t> ints;
  std::vector<double> doubles;
  std::vector<uint8_t> bools;
  std::vector<std::string> strings;

  size_t size(int32_t physical) const {
    switch (physical) {
      case meta::kBoolean:
        return bools.size();
      case meta::kInt32:
      case meta::kInt64:
        return ints.size();
      case meta::kFloat:
      case meta::kDouble:
        return doubles.size();
      default:
        return strings.size();
    }
  }
};

struct DecodedChunk {
  std::vector<uint32_t> def_levels;  // empty when max_def == 0
  std::vector<uint32_t> rep_levels;  // empty when max_rep == 0
  PlainValues values;
  size_t slots = 0;
};

uint32_t read_u32le(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

uint64_t read_u64le(const uint8_t* p) {
  return static_cast<uint64_t>(read_u32le(p)) |
         (static_cast<uint64_t>(read_u32le(p + 4)) << 32);
}

void decode_plain(int32_t physical, const uint8_t* data, size_t size,
                  size_t count, PlainValues& out) {
  size_t pos = 0;
  switch (physical) {
    case meta::kBoolean: {
      if ((count + 7) / 8 > size) throw ParquetError("plain booleans truncated");
      for (size_t i = 0; i < count; ++i)
        out.bools.push_back((data[i >> 3] >> (i & 7)) & 1);
      return;
    }
    case meta::kInt32: {
      if (count * 4 > size) throw ParquetError("plain int32 truncated");
      for (size_t i = 0; i < count; ++i)
        out.ints.push_back(static_cast<int32_t>(read_u32le(data + i * 4)));
      return;
    }
    case meta::kInt64: {
      if (count * 8 > size) throw ParquetError("plain int64 truncated");
      for (size_t i = 0; i < count; ++i)
        out.ints.push_back(static_cast<int64_t>(read_u64le(data + i * 8)));
      return;
    }
    case meta::kFloat: {
      if (count * 4 > size) throw ParquetError("plain float truncated");
      for (size_t i = 0; i < count; ++i) {
        const uint32_t bits = read_u32le(data + i * 4);
        float f;
        std::memcpy(&f, &bits, sizeof(f));
        out.doubles.push_back(f);
      }
      return;
    }
    case meta::kDouble: {
      if (count * 8 > size) throw ParquetError("plain double truncated");
      for (size_t i = 0; i < count; ++i) {
        const uint64_t bits = read_u64le(data + i * 8);
        double d;
        std::memcpy(&d, &bits, sizeof(d));
        out.doubles.push_back(d);
      }
      return;
    }
    case meta::kByteArray: {
      for (size_t i = 0; i < count; ++i) {
        if (pos + 4 > size) throw ParquetError("plain byte array truncated");
        const uint32_t len = read_u32le(data + pos);
        pos += 4;
        if (pos + len > size) throw ParquetError("plain byte array truncated");
        out.strings.emplace_back(reinterpret_cast<const char*>(data + pos), len);
        pos += len;
      }
      return;
    }
    default:
      throw ParquetError("unsupported physical type " +
                         std::to_string(physical));
  }
}

void append_from_dictionary(const PlainValues& dict, int32_t physical,
                            const std::vector<uint32_t>& indices,
                            PlainValues& out) {
  const size_t dict_size = dict.size(physical);
  for (const uint32_t index : indices) {
    if (index >= dict_size) throw ParquetError("dictionary index out of range");
    switch (physical) {
      case meta::kBoolean:
        out.bools.push_back(dict.bools[index]);
        break;
      case meta::kInt32:
      case meta::kInt64:
        out.ints.push_back(dict.ints[index]);
        break;
      case meta::kFloat:
      case meta::kDouble:
        out.doubles.push_back(dict.doubles[index]);
        break;
      default:
        out.strings.push_back(dict.strings[index]);
    }
  }
}

std::vector<uint8_t> decompress(int32_t codec, const uint8_t* data,
                                size_t size, size_t uncompressed_size) {
  switch (codec) {
    case meta::kUncompressed:
      return std::vector<uint8_t>(data, data + size);
    case meta::kSnappy:
      return snappy_decompress(data, size);
    case meta::kGzip:
      return gzip_decompress(data, size, uncompressed_size);
    default:
      throw ParquetError("unsupported compression codec " +
                         std::to_string(codec));
  }
}

}  // namespace

struct FileReader::Impl {
  std::filesystem::path path;
  std::ifstream file;
  meta::FileMetaData footer;
  std::vector<Leaf> leaves;
  std::vector<FieldInfo> fields;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParquetError(path.string() + ": " + message);
  }

  void load_footer() {
    file.seekg(0, std::ios::end);
    const int64_t size = file.tellg();
    if (size < 12) fail("not a parquet file (too small)");
    char head[4], tail[8];
    file.seekg(0);
    file.read(head, 4);
    file.seekg(size - 8);
    file.read(tail, 8);
    if (!file || std::memcmp(head, kMagic, 4) != 0 ||
        std::memcmp(tail + 4, kMagic, 4) != 0)
      fail("not a parquet file (bad magic)");
    const uint32_t footer_len =
        read_u32le(reinterpret_cast<const uint8_t*>(tail));
    if (footer_len + 12 > static_cast<uint64_t>(size))
      fail("footer length out of range");
    std::vector<uint8_t> buf(footer_len);
    file.seekg(size - 8 - static_cast<int64_t>(footer_len));
    file.read(reinterpret_cast<char*>(buf.data()), footer_len);
    if (!file) fail("failed to read footer");
    try {
      footer = meta::parse_file_metadata(buf.data(), buf.size());
    } catch (const thrift::ProtocolError& e) {
      fail(std::string("corrupt footer: ") + e.what());
    }
    if (footer.schema.empty()) fail("empty schema");
  }

  // Consumes one subtree of the preorder schema list rooted at `index`.
  size_t subtree_end(size_t index) const {
    size_t end = index + 1;
    for (int32_t i = 0; i < footer.schema[index].num_children; ++i)
      end = subtree_end(end);
    return end;
  }

  void resolve_schema() {
    const meta::SchemaElement& root = footer.schema[0];
    size_t index = 1;
    for (int32_t child = 0; child < root.num_children; ++child) {
      if (index >= footer.schema.size()) fail("schema tree truncated");
      const meta::SchemaElement& e = footer.schema[index];
      Leaf leaf;
      leaf.field_name = e.name;
      if (e.num_children == 0) {
        leaf.physical = e.physical;
        leaf.path = {e.name};
        leaf.timestamp_unit = timestamp_unit_of(e);
        if (e.repetition == meta::kRepeated) {
          leaf.is_list = true;
          leaf.max_def = 1;
          leaf.max_rep = 1;
        } else {
          leaf.max_def = e.repetition == meta::kOptional ? 1 : 0;
        }
        ++index;
      } else if (is_list_group(e) && index + 1 < footer.schema.size()) {
        const size_t end = subtree_end(index);
        const meta::SchemaElement& mid = footer.schema[index + 1];
        const uint32_t outer_def = e.repetition == meta::kOptional ? 1 : 0;
        leaf.is_list = true;
        leaf.max_rep = 1;
        if (mid.repetition == meta::kRepeated && mid.num_children == 0) {
          // Legacy two-level list: the repeated node is the element.
          leaf.physical = mid.physical;
          leaf.path = {e.name, mid.name};
          leaf.max_def = outer_def + 1;
        } else if (mid.repetition == meta::kRepeated &&
                   mid.num_children == 1 && index + 2 < footer.schema.size() &&
                   footer.schema[index + 2].num_children == 0) {
          const meta::SchemaElement& elem = footer.schema[index + 2];
          leaf.physical = elem.physical;
          leaf.path = {e.name, mid.name, elem.name};
          leaf.optional_element = elem.repetition == meta::kOptional;
          leaf.max_def = outer_def + 1 + (leaf.optional_element ? 1 : 0);
          leaf.timestamp_unit = timestamp_unit_of(elem);
        } else {
          leaf.supported = false;
        }
        index = end;
      } else {
        leaf.supported = false;
        index = subtree_end(index);
      }
      fields.push_back({leaf.field_name, leaf.is_list});
      leaves.push_back(std::move(leaf));
    }
  }

  static bool is_list_group(const meta::SchemaElement& e) {
    return e.converted == meta::kList || e.logical_list;
  }

  static meta::TimeUnit timestamp_unit_of(const meta::SchemaElement& e) {
    if (e.timestamp_unit != meta::TimeUnit::None) return e.timestamp_unit;
    if (e.converted == meta::kTimestampMillis) return meta::TimeUnit::Millis;
    if (e.converted == meta::kTimestampMicros) return meta::TimeUnit::Micros;
    return meta::TimeUnit::None;
  }

  const Leaf* find_leaf(std::string_view name) const {
    for (const Leaf& leaf : leaves)
      if (leaf.field_name == name) return &leaf;
    return nullptr;
  }

  DecodedChunk decode_chunk(const Leaf& leaf, const meta::ColumnChunk& chunk) {
    if (!chunk.file_path.empty())
      fail("column chunk stored in an external file is unsupported");
    if (!chunk.has_meta) fail("column chunk without metadata");
    const meta::ColumnMeta& cm = chunk.meta;
    if (cm.physical != leaf.physical)
      fail("column chunk type disagrees with schema");

    int64_t start = cm.data_page_offset;
    if (cm.dictionary_page_offset > 0 &&
        cm.dictionary_page_offset < cm.data_page_offset)
      start = cm.dictionary_page_offset;
    const int64_t span = cm.total_compressed_size;
    std::vector<uint8_t> buf(static_cast<size_t>(span));
    file.seekg(start);
    file.read(reinterpret_cast<char*>(buf.data()), span);
    if (!file) fail("failed to read column chunk bytes");

    DecodedChunk out;
    PlainValues dictionary;
    bool have_dictionary = false;
    int64_t remaining = cm.num_values;
    size_t pos = 0;
    while (remaining > 0) {
      if (pos >= buf.size()) fail("column chunk ran out of pages");
      thrift::Reader tr(buf.data() + pos, buf.size() - pos);
      meta::PageHeader header;
      try {
        header = meta::parse_page_header(tr);
      } catch (const thrift::ProtocolError& e) {
        fail(std::string("corrupt page header: ") + e.what());
      }
      pos += tr.position();
      if (pos + static_cast<size_t>(header.compressed_page_size) > buf.size())
        fail("page body runs past column chunk");
      const uint8_t* body = buf.data() + pos;
      const auto body_size = static_cast<size_t>(header.compressed_page_size);
      pos += body_size;

      if (header.type == meta::kDictionaryPage) {
        if (!header.dictionary) fail("dictionary page without header");
        const auto raw =
            decompress(cm.codec, body, body_size,
                       static_cast<size_t>(header.uncompressed_page_size));
        dictionary = PlainValues();
        decode_plain(leaf.physical, raw.data(), raw.size(),
                     static_cast<size_t>(header.dictionary->num_values),
                     dictionary);
        have_dictionary = true;
        continue;
      }
      if (header.type == meta::kDataPage) {
        if (!header.data) fail("data page without header");
        const auto raw =
            decompress(cm.codec, body, body_size,
                       static_cast<size_t>(header.uncompressed_page_size));
        decode_data_page_v1(leaf, *header.data, raw, dictionary,
                            have_dictionary, out);
        remaining -= header.data->num_values;
        continue;
      }
      if (header.type == meta::kDataPageV2) {
        if (!header.data_v2) fail("v2 data page without header");
        decode_data_page_v2(leaf, *header.data_v2, cm.codec, body, body_size,
                            static_cast<size_t>(header.uncompressed_page_size),
                            dictionary, have_dictionary, out);
        remaining -= header.data_v2->num_values;
        continue;
      }
      // Index or unknown page: skip its body.
    }
    out.slots = static_cast<size_t>(cm.num_values);
    return out;
  }

  void decode_values(const Leaf& leaf, int32_t encoding, const uint8_t* data,
                     size_t size, size_t count, const PlainValues& dictionary,
                     bool have_dictionary, PlainValues& out) {
    if (count == 0) return;
    if (encoding == meta::kPlain) {
      decode_plain(leaf.physical, data, size, count, out);
      return;
    }
    if (encoding == meta::kPlainDictionary ||
        encoding == meta::kRleDictionary) {
      if (!have_dictionary) fail("dictionary-encoded page without dictionary");
      if (size < 1) fail("dictionary page data truncated");
      const uint32_t bit_width = data[0];
      std::vector<uint32_t> indices;
      decode_rle_hybrid(data + 1, size - 1, bit_width, count, indices);
      append_from_dictionary(dictionary, leaf.physical, indices, out);
      return;
    }
    fail("unsupported value encoding " + std::to_string(encoding));
  }

  void decode_data_page_v1(const Leaf& leaf, const meta::DataPageHeader& h,
                           const std::vector<uint8_t>& raw,
                           const PlainValues& dictionary, bool have_dictionary,
                           DecodedChunk& out) {
    const auto num_values = static_cast<size_t>(h.num_values);
    size_t pos = 0;
    const auto read_levels = [&](uint32_t max_level,
                                 std::vector<uint32_t>& sink) {
      if (max_level == 0) return;
      if (pos + 4 > raw.size()) fail("level section truncated");
      const uint32_t len = read_u32le(raw.data() + pos);
      pos += 4;
      if (pos + len > raw.size()) fail("level section truncated");
      std::vector<uint32_t> levels;
      decode_rle_hybrid(raw.data() + pos, len, bit_width_for(max_level),
                        num_values, levels);
      pos += len;
      sink.insert(sink.end(), levels.begin(), levels.end());
    };
    read_levels(leaf.max_rep, out.rep_levels);

    size_t present = num_values;
    if (leaf.max_def > 0) {
      const size_t def_start = out.def_levels.size();
      read_levels(leaf.max_def, out.def_levels);
      present = static_cast<size_t>(
          std::count(out.def_levels.begin() + def_start, out.def_levels.end(),
                     leaf.max_def));
    }
    decode_values(leaf, h.encoding, raw.data() + pos, raw.size() - pos,
                  present, dictionary, have_dictionary, out.values);
  }

  void decode_data_page_v2(const Leaf& leaf, const meta::DataPageHeaderV2& h,
                           int32_t codec, const uint8_t* body, size_t body_size,
                           size_t uncompressed_size,
                           const PlainValues& dictionary, bool have_dictionary,
                           DecodedChunk& out) {
    const auto rep_bytes = static_cast<size_t>(h.rep_levels_byte_length);
    const auto def_bytes = static_cast<size_t>(h.def_levels_byte_length);
    if (rep_bytes + def_bytes > body_size) fail("v2 level sections truncated");
    const auto num_values = static_cast<size_t>(h.num_values);

    if (leaf.max_rep > 0) {
      std::vector<uint32_t> levels;
      decode_rle_hybrid(body, rep_bytes, bit_width_for(leaf.max_rep),
                        num_values, levels);
      out.rep_levels.insert(out.rep_levels.end(), levels.begin(), levels.end());
    }
    size_t present = num_values;
    if (leaf.max_def > 0) {
      std::vector<uint32_t> levels;
      decode_rle_hybrid(body + rep_bytes, def_bytes,
                        bit_width_for(leaf.max_def), num_values, levels);
      present = static_cast<size_t>(
          std::count(levels.begin(), levels.end(), leaf.max_def));
      out.def_levels.insert(out.def_levels.end(), levels.begin(), levels.end());
    }

    const uint8_t* values = body + rep_bytes + def_bytes;
    const size_t values_size = body_size - rep_bytes - def_bytes;
    if (h.is_compressed && codec != meta::kUncompressed) {
      const auto raw = decompress(codec, values, values_size,
                                  uncompressed_size - rep_bytes - def_bytes);
      decode_values(leaf, h.encoding, raw.data(), raw.size(), present,
                    dictionary, have_dictionary, out.values);
    } else {
      decode_values(leaf, h.encoding, values, values_size, present, dictionary,
                    have_dictionary, out.values);
    }
  }
};

FileReader::FileReader(const std::filesystem::path& path)
    : impl_(std::make_unique<Impl>()) {
  impl_->path = path;
  impl_->file.open(path, std::ios::binary);
  if (!impl_->file) impl_->fail("cannot open file");
  impl_->load_footer();
  impl_->resolve_schema();
}

FileReader::~FileReader() = default;
FileReader::FileReader(FileReader&&) noexcept = default;
FileReader& FileReader::operator=(FileReader&&) noexcept = default;

size_t FileReader::row_group_count() const {
  return impl_->footer.row_groups.size();
}

int64_t FileReader::total_rows() const { return impl_->footer.num_rows; }

const std::vector<FieldInfo>& FileReader::fields() const {
  return impl_->fields;
}

namespace {

// Distributes decoded flat values / presence flags into a Column of the
// requested type, applying widening coercions.
void assemble_flat(const Leaf& leaf, const ColumnSpec& spec,
                   const DecodedChunk& chunk, size_t num_rows, Column& out,
                   const std::filesystem::path& path) {
  const auto coercion_error = [&](const char* detail) {
    throw SchemaError(path.string() + ": column '" + spec.name + "': " +
                      detail);
  };
  if (chunk.slots != num_rows)
    coercion_error("value count disagrees with row count");

  out.present.assign(num_rows, 1);
  if (leaf.max_def > 0) {
    for (size_t i = 0; i < num_rows; ++i)
      out.present[i] = chunk.def_levels[i] == leaf.max_def ? 1 : 0;
  }

  const PlainValues& v = chunk.values;
  size_t vi = 0;
  switch (spec.type) {
    case ColumnType::Boolean: {
      if (leaf.physical != meta::kBoolean)
        coercion_error("expected a boolean column");
      out.bools.assign(num_rows, 0);
      for (size_t i = 0; i < num_rows; ++i)
        if (out.present[i]) out.bools[i] = v.bools[vi++];
      break;
    }
    case ColumnType::Int64: {
      if (leaf.physical != meta::kInt32 && leaf.physical != meta::kInt64)
        coercion_error("expected an integer column");
      out.ints.assign(num_rows, 0);
      for (size_t i = 0; i < num_rows; ++i)
        if (out.present[i]) out.ints[i] = v.ints[vi++];
      break;
    }
    case ColumnType::Double: {
      out.doubles.assign(num_rows, 0);
      const bool from_ints =
          leaf.physical == meta::kInt32 || leaf.physical == meta::kInt64;
      if (!from_ints && leaf.physical != meta::kFloat &&
          leaf.physical != meta::kDouble)
        coercion_error("expected a numeric column");
      for (size_t i = 0; i < num_rows; ++i)
        if (out.present[i])
          out.doubles[i] = from_ints ? static_cast<double>(v.ints[vi++])
                                     : v.doubles[vi++];
      break;
    }
    case ColumnType::String: {
      out.strings.assign(num_rows, std::string());
      if (leaf.physical == meta::kByteArray) {
        for (size_t i = 0; i < num_rows; ++i)
          if (out.present[i]) out.strings[i] = v.strings[vi++];
      } else if (leaf.physical == meta::kInt32 ||
                 leaf.physical == meta::kInt64) {
        // Integer identifiers surface as their decimal rendering.
        for (size_t i = 0; i < num_rows; ++i)
          if (out.present[i]) out.strings[i] = std::to_string(v.ints[vi++]);
      } else {
        coercion_error("expected a string column");
      }
      break;
    }
    case ColumnType::Timestamp: {
      if (leaf.physical != meta::kInt64 ||
          leaf.timestamp_unit == meta::TimeUnit::None)
        coercion_error("expected a timestamp column");
      out.ints.assign(num_rows, 0);
      for (size_t i = 0; i < num_rows; ++i) {
        if (!out.present[i]) continue;
        const int64_t raw = v.ints[vi++];
        switch (leaf.timestamp_unit) {
          case meta::TimeUnit::Millis:
            out.ints[i] = raw * 1000;
            break;
          case meta::TimeUnit::Micros:
            out.ints[i] = raw;
            break;
          default:  // Nanos: truncate toward negative infinity
            out.ints[i] =
                raw >= 0 ? raw / 1000 : (raw - 999) / 1000;
        }
      }
      break;
    }
    case ColumnType::StringList:
      coercion_error("column is not a list");
  }
}

void assemble_list(const Leaf& leaf, const ColumnSpec& spec,
                   const DecodedChunk& chunk, size_t num_rows, Column& out,
                   const std::filesystem::path& path) {
  if (leaf.physical != meta::kByteArray)
    throw SchemaError(path.string() + ": column '" + spec.name +
                      "': only string lists are supported");
  const uint32_t outer_def = leaf.max_def - 1 - (leaf.optional_element ? 1 : 0);
  out.present.assign(num_rows, 1);
  std::vector<uint32_t> counts(num_rows, 0);
  std::vector<std::string> elems;
  size_t vi = 0;
  size_t row = SIZE_MAX;
  for (size_t slot = 0; slot < chunk.slots; ++slot) {
    const uint32_t rep = chunk.rep_levels.empty() ? 0 : chunk.rep_levels[slot];
    const uint32_t def = chunk.def_levels.empty() ? 0 : chunk.def_levels[slot];
    if (rep == 0) ++row;
    if (row >= num_rows)
      throw ParquetError(path.string() + ": list rows exceed row group size");
    if (def == leaf.max_def) {
      elems.push_back(chunk.values.strings[vi++]);
      ++counts[row];
    } else if (leaf.optional_element && def == leaf.max_def - 1) {
      // Null element inside a list: dropped.
    } else if (def < outer_def) {
      out.present[row] = 0;  // null list
    }
  }
  if (row + 1 != num_rows && !(num_rows == 0 && row == SIZE_MAX))
    throw ParquetError(path.string() + ": list rows disagree with row count");
  out.list_offsets.assign(num_rows + 1, 0);
  for (size_t i = 0; i < num_rows; ++i)
    out.list_offsets[i + 1] = out.list_offsets[i] + counts[i];
  out.strings = std::move(elems);
}

}  // namespace

RowBatch FileReader::read_row_group(size_t index,
                                    std::span<const ColumnSpec> wanted) {
  if (index >= impl_->footer.row_groups.size())
    impl_->fail("row group index out of range");
  const meta::RowGroup& group = impl_->footer.row_groups[index];
  const auto num_rows = static_cast<size_t>(group.num_rows);

  RowBatch batch;
  batch.rows = num_rows;
  for (const ColumnSpec& spec : wanted) {
    Column& out = batch.add(spec.name, spec.type);
    const Leaf* leaf = impl_->find_leaf(spec.name);
    if (leaf == nullptr || !leaf->supported) {
      if (spec.required)
        throw SchemaError(impl_->path.string() + ": required column '" +
                          spec.name + "' is missing");
      out.present.assign(num_rows, 0);
      if (spec.type == ColumnType::StringList)
        out.list_offsets.assign(num_rows + 1, 0);
      continue;
    }
    const meta::ColumnChunk* chunk = nullptr;
    for (const meta::ColumnChunk& candidate : group.columns) {
      if (candidate.has_meta && candidate.meta.path == leaf->path) {
        chunk = &candidate;
        break;
      }
    }
    if (chunk == nullptr)
      impl_->fail("no column chunk for field '" + spec.name + "'");
    const DecodedChunk decoded = impl_->decode_chunk(*leaf, *chunk);
    if (spec.type == ColumnType::StringList) {
      if (!leaf->is_list)
        throw SchemaError(impl_->path.string() + ": column '" + spec.name +
                          "' is not a list");
      assemble_list(*leaf, spec, decoded, num_rows, out, impl_->path);
    } else {
      if (leaf->is_list)
        throw SchemaError(impl_->path.string() + ": column '" + spec.name +
                          "' is a list");
      assemble_flat(*leaf, spec, decoded, num_rows, out, impl_->path);
    }
  }
  return batch;
}

}  // namespace medsgraph::parquet
