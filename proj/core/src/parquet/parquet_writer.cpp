#include <cstring>
#include <fstream>

#include "levels.hpp"
#include "medsgraph/parquet.hpp"
#include "metadata.hpp"

namespace medsgraph::parquet {
namespace {

constexpr char kMagic[4] = {'P', 'A', 'R', '1'};
constexpr std::string_view kCreatedBy = "medsgraph parquet writer";

void append_u32le(std::string& out, uint32_t v) {
  out += static_cast<char>(v & 0xFF);
  out += static_cast<char>((v >> 8) & 0xFF);
  out += static_cast<char>((v >> 16) & 0xFF);
  out += static_cast<char>((v >> 24) & 0xFF);
}

void append_u64le(std::string& out, uint64_t v) {
  append_u32le(out, static_cast<uint32_t>(v));
  append_u32le(out, static_cast<uint32_t>(v >> 32));
}

int32_t physical_of(ColumnType type) {
  switch (type) {
    case ColumnType::Boolean:
      return meta::kBoolean;
    case ColumnType::Int64:
    case ColumnType::Timestamp:
      return meta::kInt64;
    case ColumnType::Double:
      return meta::kDouble;
    case ColumnType::String:
    case ColumnType::StringList:
      return meta::kByteArray;
  }
  return meta::kByteArray;
}

// RLE-encoded level section with its 4-byte length prefix (v1 pages).
void append_level_section(std::string& out, const std::vector<uint32_t>& levels,
                          uint32_t bit_width) {
  const std::string encoded = encode_rle(levels, bit_width);
  append_u32le(out, static_cast<uint32_t>(encoded.size()));
  out += encoded;
}

}  // namespace

struct FileWriter::Impl {
  std::filesystem::path path;
  std::ofstream out;
  std::vector<ColumnSpec> schema;
  meta::FileMetaData footer;
  uint64_t offset = 0;
  int64_t total_rows = 0;
  bool closed = false;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParquetError(path.string() + ": " + message);
  }

  void build_schema_elements() {
    meta::SchemaElement root;
    root.name = "schema";
    root.num_children = static_cast<int32_t>(schema.size());
    footer.schema.push_back(root);
    for (const ColumnSpec& spec : schema) {
      if (spec.type == ColumnType::StringList) {
        meta::SchemaElement outer;
        outer.name = spec.name;
        outer.has_repetition = true;
        outer.repetition = meta::kOptional;
        outer.num_children = 1;
        outer.converted = meta::kList;
        outer.logical_list = true;
        footer.schema.push_back(outer);

        meta::SchemaElement mid;
        mid.name = "list";
        mid.has_repetition = true;
        mid.repetition = meta::kRepeated;
        mid.num_children = 1;
        footer.schema.push_back(mid);

        meta::SchemaElement elem;
        elem.name = "element";
        elem.has_repetition = true;
        elem.repetition = meta::kRequired;
        elem.physical = meta::kByteArray;
        elem.converted = meta::kUtf8;
        footer.schema.push_back(elem);
        continue;
      }
      meta::SchemaElement e;
      e.name = spec.name;
      e.has_repetition = true;
      e.repetition = spec.required ? meta::kRequired : meta::kOptional;
      e.physical = physical_of(spec.type);
      if (spec.type == ColumnType::String) e.converted = meta::kUtf8;
      if (spec.type == ColumnType::Timestamp) {
        e.converted = meta::kTimestampMicros;
        e.timestamp_unit = meta::TimeUnit::Micros;
      }
      footer.schema.push_back(e);
    }
  }

  std::string encode_plain_values(const ColumnSpec& spec, const Column& col) {
    std::string values;
    const size_t rows = col.rows();
    switch (spec.type) {
      case ColumnType::Boolean: {
        uint8_t bits = 0;
        int filled = 0;
        for (size_t i = 0; i < rows; ++i) {
          if (!col.present[i]) continue;
          if (col.bools[i]) bits |= static_cast<uint8_t>(1 << filled);
          if (++filled == 8) {
            values += static_cast<char>(bits);
            bits = 0;
            filled = 0;
          }
        }
        if (filled > 0) values += static_cast<char>(bits);
        break;
      }
      case ColumnType::Int64:
      case ColumnType::Timestamp:
        for (size_t i = 0; i < rows; ++i)
          if (col.present[i])
            append_u64le(values, static_cast<uint64_t>(col.ints[i]));
        break;
      case ColumnType::Double:
        for (size_t i = 0; i < rows; ++i) {
          if (!col.present[i]) continue;
          uint64_t bits;
          std::memcpy(&bits, &col.doubles[i], sizeof(bits));
          append_u64le(values, bits);
        }
        break;
      case ColumnType::String:
        for (size_t i = 0; i < rows; ++i) {
          if (!col.present[i]) continue;
          append_u32le(values, static_cast<uint32_t>(col.strings[i].size()));
          values += col.strings[i];
        }
        break;
      case ColumnType::StringList:
        for (const std::string& s : col.strings) {
          append_u32le(values, static_cast<uint32_t>(s.size()));
          values += s;
        }
        break;
    }
    return values;
  }

  // One uncompressed v1 data page holding the whole chunk.
  void write_column_chunk(const ColumnSpec& spec, const Column& col,
                          meta::RowGroup& group) {
    const size_t rows = col.rows();
    std::string payload;
    size_t slots = rows;

    if (spec.type == ColumnType::StringList) {
      std::vector<uint32_t> def_levels;
      std::vector<uint32_t> rep_levels;
      for (size_t i = 0; i < rows; ++i) {
        const uint32_t begin = col.list_offsets[i];
        const uint32_t end = col.list_offsets[i + 1];
        if (begin == end) {
          def_levels.push_back(1);  // present, empty
          rep_levels.push_back(0);
          continue;
        }
        for (uint32_t k = begin; k < end; ++k) {
          def_levels.push_back(2);
          rep_levels.push_back(k == begin ? 0 : 1);
        }
      }
      slots = def_levels.size();
      append_level_section(payload, rep_levels, 1);
      append_level_section(payload, def_levels, 2);
    } else if (!spec.required) {
      std::vector<uint32_t> def_levels(rows);
      for (size_t i = 0; i < rows; ++i) def_levels[i] = col.present[i] ? 1 : 0;
      append_level_section(payload, def_levels, 1);
    } else {
      for (size_t i = 0; i < rows; ++i)
        if (!col.present[i])
          fail("null in required column '" + spec.name + "' at row " +
               std::to_string(i));
    }
    payload += encode_plain_values(spec, col);

    meta::PageHeader header;
    header.type = meta::kDataPage;
    header.uncompressed_page_size = static_cast<int32_t>(payload.size());
    header.compressed_page_size = static_cast<int32_t>(payload.size());
    header.data = meta::DataPageHeader{};
    header.data->num_values = static_cast<int32_t>(slots);
    header.data->encoding = meta::kPlain;

    thrift::Writer tw;
    meta::write_page_header(tw, header);
    const std::string header_bytes = tw.take();

    const uint64_t page_offset = offset;
    out.write(header_bytes.data(),
              static_cast<std::streamsize>(header_bytes.size()));
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) fail("write failed");
    offset += header_bytes.size() + payload.size();

    meta::ColumnChunk chunk;
    chunk.file_offset = static_cast<int64_t>(page_offset);
    chunk.has_meta = true;
    chunk.meta.physical = physical_of(spec.type);
    chunk.meta.encodings = {meta::kPlain, meta::kRle};
    chunk.meta.path = spec.type == ColumnType::StringList
                          ? std::vector<std::string>{spec.name, "list",
                                                     "element"}
                          : std::vector<std::string>{spec.name};
    chunk.meta.codec = meta::kUncompressed;
    chunk.meta.num_values = static_cast<int64_t>(slots);
    chunk.meta.total_uncompressed_size =
        static_cast<int64_t>(header_bytes.size() + payload.size());
    chunk.meta.total_compressed_size = chunk.meta.total_uncompressed_size;
    chunk.meta.data_page_offset = static_cast<int64_t>(page_offset);
    group.total_byte_size += chunk.meta.total_uncompressed_size;
    group.columns.push_back(std::move(chunk));
  }
};

FileWriter::FileWriter(const std::filesystem::path& path,
                       std::vector<ColumnSpec> schema)
    : impl_(std::make_unique<Impl>()) {
  impl_->path = path;
  impl_->schema = std::move(schema);
  impl_->out.open(path, std::ios::binary | std::ios::trunc);
  if (!impl_->out) impl_->fail("cannot open file for writing");
  impl_->out.write(kMagic, 4);
  impl_->offset = 4;
  impl_->footer.version = 1;
  impl_->footer.created_by = std::string(kCreatedBy);
  impl_->build_schema_elements();
}

FileWriter::~FileWriter() {
  if (impl_ && !impl_->closed) {
    try {
      close();
    } catch (...) {
      // Destructor stays silent; call close() to observe errors.
    }
  }
}

FileWriter::FileWriter(FileWriter&&) noexcept = default;
FileWriter& FileWriter::operator=(FileWriter&&) noexcept = default;

void FileWriter::write(const RowBatch& batch) {
  Impl& impl = *impl_;
  if (impl.closed) impl.fail("writer already closed");
  meta::RowGroup group;
  group.num_rows = static_cast<int64_t>(batch.rows);
  for (const ColumnSpec& spec : impl.schema) {
    const Column* col = batch.find(spec.name);
    if (col == nullptr) impl.fail("batch lacks column '" + spec.name + "'");
    if (col->type != spec.type)
      impl.fail("batch column '" + spec.name + "' has the wrong type");
    if (col->rows() != batch.rows)
      impl.fail("batch column '" + spec.name + "' has the wrong row count");
    impl.write_column_chunk(spec, *col, group);
  }
  impl.footer.row_groups.push_back(std::move(group));
  impl.total_rows += static_cast<int64_t>(batch.rows);
}

void FileWriter::close() {
  Impl& impl = *impl_;
  if (impl.closed) return;
  impl.footer.num_rows = impl.total_rows;
  thrift::Writer tw;
  meta::write_file_metadata(tw, impl.footer);
  const std::string footer_bytes = tw.take();
  impl.out.write(footer_bytes.data(),
                 static_cast<std::streamsize>(footer_bytes.size()));
  std::string tail;
  append_u32le(tail, static_cast<uint32_t>(footer_bytes.size()));
  tail.append(kMagic, 4);
  impl.out.write(tail.data(), static_cast<std::streamsize>(tail.size()));
  impl.out.flush();
  if (!impl.out) impl.fail("failed to write footer");
  impl.out.close();
  impl.closed = true;
}

}  // namespace medsgraph::parquet
