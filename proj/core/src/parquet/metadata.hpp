// Parquet footer / page-header structures (the subset this toolkit reads
// and writes) and their thrift codecs.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thrift_compact.hpp"

namespace medsgraph::parquet::meta {

// parquet.thrift enum values.
enum Physical : int32_t {
  kBoolean = 0,
  kInt32 = 1,
  kInt64 = 2,
  kInt96 = 3,
  kFloat = 4,
  kDouble = 5,
  kByteArray = 6,
  kFixedLenByteArray = 7,
};

enum Converted : int32_t {
  kConvertedNone = -1,
  kUtf8 = 0,
  kList = 3,
  kTimestampMillis = 9,
  kTimestampMicros = 10,
};

enum Repetition : int32_t { kRequired = 0, kOptional = 1, kRepeated = 2 };

enum Encoding : int32_t {
  kPlain = 0,
  kPlainDictionary = 2,
  kRle = 3,
  kRleDictionary = 8,
};

enum Codec : int32_t {
  kUncompressed = 0,
  kSnappy = 1,
  kGzip = 2,
  kZstd = 6,
};

enum PageType : int32_t {
  kDataPage = 0,
  kIndexPage = 1,
  kDictionaryPage = 2,
  kDataPageV2 = 3,
};

enum class TimeUnit : uint8_t { None, Millis, Micros, Nanos };

struct SchemaElement {
  int32_t physical = -1;  // -1 for group nodes
  int32_t repetition = kRequired;
  bool has_repetition = false;
  std::string name;
  int32_t num_children = 0;
  int32_t converted = kConvertedNone;
  bool logical_string = false;
  bool logical_list = false;
  TimeUnit timestamp_unit = TimeUnit::None;
};

struct ColumnMeta {
  int32_t physical = -1;
  std::vector<int32_t> encodings;
  std::vector<std::string> path;
  int32_t codec = kUncompressed;
  int64_t num_values = 0;  // leaf slots, nulls included
  int64_t total_uncompressed_size = 0;
  int64_t total_compressed_size = 0;
  int64_t data_page_offset = -1;
  int64_t dictionary_page_offset = -1;
};

struct ColumnChunk {
  std::string file_path;  // set => external chunk (unsupported)
  int64_t file_offset = 0;
  ColumnMeta meta;
  bool has_meta = false;
};

struct RowGroup {
  std::vector<ColumnChunk> columns;
  int64_t total_byte_size = 0;
  int64_t num_rows = 0;
};

struct FileMetaData {
  int32_t version = 1;
  std::vector<SchemaElement> schema;  // preorder, schema[0] is the root
  int64_t num_rows = 0;
  std::vector<RowGroup> row_groups;
  std::string created_by;
};

struct DataPageHeader {
  int32_t num_values = 0;
  int32_t encoding = kPlain;
  int32_t def_level_encoding = kRle;
  int32_t rep_level_encoding = kRle;
};

struct DataPageHeaderV2 {
  int32_t num_values = 0;
  int32_t num_nulls = 0;
  int32_t num_rows = 0;
  int32_t encoding = kPlain;
  int32_t def_levels_byte_length = 0;
  int32_t rep_levels_byte_length = 0;
  bool is_compressed = true;
};

struct DictionaryPageHeader {
  int32_t num_values = 0;
  int32_t encoding = kPlainDictionary;
};

struct PageHeader {
  int32_t type = kDataPage;
  int32_t uncompressed_page_size = 0;
  int32_t compressed_page_size = 0;
  std::optional<DataPageHeader> data;
  std::optional<DataPageHeaderV2> data_v2;
  std::optional<DictionaryPageHeader> dictionary;
};

FileMetaData parse_file_metadata(const uint8_t* data, size_t size);
PageHeader parse_page_header(thrift::Reader& reader);

void write_file_metadata(thrift::Writer& out, const FileMetaData& meta);
void write_page_header(thrift::Writer& out, const PageHeader& header);

}  // namespace medsgraph::parquet::meta
