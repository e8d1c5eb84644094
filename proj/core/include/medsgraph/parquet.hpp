#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace medsgraph::parquet {

class ParquetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested column is missing or cannot be served at the requested type.
class SchemaError : public ParquetError {
 public:
  using ParquetError::ParquetError;
};

/// Logical column types this reader/writer understands. Timestamp values
/// travel as microseconds since the Unix epoch, UTC.
enum class ColumnType : uint8_t {
  Boolean,
  Int64,
  Double,
  String,
  Timestamp,
  StringList,
};

struct ColumnSpec {
  std::string name;
  ColumnType type = ColumnType::String;
  bool required = false;
};

/// Decoded values for one column of a row batch. present[i] says whether
/// row i holds a value; the value vector matching the type is indexed by
/// row (absent slots keep a default). StringList flattens elements into
/// `strings` with rows+1 `list_offsets`.
struct Column {
  ColumnType type = ColumnType::String;
  std::vector<uint8_t> present;
  std::vector<int64_t> ints;         // Int64, Timestamp
  std::vector<double> doubles;       // Double
  std::vector<uint8_t> bools;        // Boolean
  std::vector<std::string> strings;  // String values / StringList elements
  std::vector<uint32_t> list_offsets;

  size_t rows() const { return present.size(); }
};

struct RowBatch {
  size_t rows = 0;
  std::vector<std::string> names;
  std::vector<Column> columns;

  const Column* find(std::string_view name) const;

  /// Appends a column and returns it. The reference lives until the next
  /// add() beyond the reserve()d capacity.
  Column& add(std::string name, ColumnType type);
  void reserve(size_t n_columns) {
    names.reserve(n_columns);
    columns.reserve(n_columns);
  }
};

/// Top-level schema field as named in the file footer.
struct FieldInfo {
  std::string name;
  bool is_list = false;
};

/// Reads the Parquet subset MEDS tables use: flat required/optional columns
/// of BOOLEAN / INT32 / INT64 / FLOAT / DOUBLE / BYTE_ARRAY plus one-level
/// string lists; PLAIN and dictionary encodings; UNCOMPRESSED, SNAPPY, and
/// GZIP codecs; v1 and v2 data pages. Row groups decode independently, so
/// peak memory follows the largest row group, not the file.
class FileReader {
 public:
  explicit FileReader(const std::filesystem::path& path);
  ~FileReader();
  FileReader(FileReader&&) noexcept;
  FileReader& operator=(FileReader&&) noexcept;

  size_t row_group_count() const;
  int64_t total_rows() const;
  const std::vector<FieldInfo>& fields() const;

  /// Decodes the requested columns of one row group. A missing optional
  /// column yields all-absent values; a missing required column, or a
  /// physical type the request cannot take, throws ParquetError. Int64
  /// data can serve a String request (decimal form), Float a Double one.
  RowBatch read_row_group(size_t index, std::span<const ColumnSpec> wanted);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Writes files the reader above (and standard Parquet tooling) can load:
/// PLAIN encoding, uncompressed, one data page per column chunk, one row
/// group per write() call. Output bytes are a pure function of the rows.
class FileWriter {
 public:
  FileWriter(const std::filesystem::path& path, std::vector<ColumnSpec> schema);
  ~FileWriter();
  FileWriter(FileWriter&&) noexcept;
  FileWriter& operator=(FileWriter&&) noexcept;

  /// Appends one row group. Every schema column must be present in the
  /// batch with matching type and row count; a null in a required column
  /// throws ParquetError.
  void write(const RowBatch& batch);

  /// Writes the footer. The destructor closes silently; call this to see
  /// errors. No further writes afterwards.
  void close();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace medsgraph::parquet
