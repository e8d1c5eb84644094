#include "medsgraph/meds_reader.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "medsgraph/parquet.hpp"

namespace medsgraph::meds {
namespace {

namespace fs = std::filesystem;
using parquet::Column;
using parquet::ColumnSpec;
using parquet::ColumnType;

const std::vector<ColumnSpec> kEventColumns = {
    {"subject_id", ColumnType::String, true},
    {"time", ColumnType::Timestamp, false},
    {"code", ColumnType::String, true},
    {"numeric_value", ColumnType::Double, false},
    {"text_value", ColumnType::String, false},
};

const std::vector<ColumnSpec> kCodeColumns = {
    {"code", ColumnType::String, true},
    {"description", ColumnType::String, false},
    {"parent_codes", ColumnType::StringList, false},
};

const std::vector<ColumnSpec> kSplitColumns = {
    {"subject_id", ColumnType::String, true},
    {"split", ColumnType::String, true},
};

const std::vector<ColumnSpec> kLabelColumns = {
    {"subject_id", ColumnType::String, true},
    {"prediction_time", ColumnType::Timestamp, true},
    {"boolean_value", ColumnType::Boolean, false},
    {"integer_value", ColumnType::Int64, false},
    {"float_value", ColumnType::Double, false},
    {"categorical_value", ColumnType::String, false},
};

std::vector<fs::path> parquet_files_under(const fs::path& dir) {
  std::vector<fs::path> files;
  if (!fs::exists(dir)) return files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".parquet")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.generic_string() < b.generic_string();
            });
  return files;
}

void warn_unknown_fields(const parquet::FileReader& reader,
                         std::span<const ColumnSpec> known,
                         const fs::path& file, const WarnFn& warn) {
  if (!warn) return;
  for (const parquet::FieldInfo& field : reader.fields()) {
    const bool recognized =
        std::any_of(known.begin(), known.end(),
                    [&](const ColumnSpec& c) { return c.name == field.name; });
    if (!recognized)
      warn(file.generic_string() + ": ignoring unknown column '" + field.name +
           "'");
  }
}

// Presence-checked cell accessors; `row` is the index within the batch.
std::string required_string(const Column& col, size_t row,
                            const fs::path& shard, int64_t file_row,
                            const char* name) {
  if (!col.present[row])
    throw ShardParseError(shard, file_row,
                          std::string("null ") + name + " value");
  return col.strings[row];
}

template <typename Fn>
void read_parquet_rows(const fs::path& file,
                       std::span<const ColumnSpec> columns, const WarnFn& warn,
                       Fn&& per_batch) {
  try {
    parquet::FileReader reader(file);
    warn_unknown_fields(reader, columns, file, warn);
    int64_t base_row = 0;
    for (size_t g = 0; g < reader.row_group_count(); ++g) {
      const parquet::RowBatch batch = reader.read_row_group(g, columns);
      per_batch(batch, base_row);
      base_row += static_cast<int64_t>(batch.rows);
    }
  } catch (const parquet::SchemaError& e) {
    throw SchemaMismatch(e.what());
  } catch (const parquet::ParquetError& e) {
    throw ShardParseError(file, -1, e.what());
  }
}

EventRecord event_from_batch(const parquet::RowBatch& batch, size_t row,
                             const fs::path& file, int64_t file_row) {
  const Column& subject = *batch.find("subject_id");
  const Column& time = *batch.find("time");
  const Column& code = *batch.find("code");
  const Column& numeric = *batch.find("numeric_value");
  const Column& text = *batch.find("text_value");

  EventRecord record;
  record.subject_id =
      required_string(subject, row, file, file_row, "subject_id");
  record.code_string = required_string(code, row, file, file_row, "code");
  if (record.subject_id.empty())
    throw ShardParseError(file, file_row, "empty subject_id");
  if (record.code_string.empty())
    throw ShardParseError(file, file_row, "empty code");
  if (time.present[row]) record.time = MicroTimestamp(time.ints[row]);
  if (numeric.present[row]) record.numeric_value = numeric.doubles[row];
  if (text.present[row]) record.text_value = text.strings[row];
  return record;
}

}  // namespace

ShardParseError::ShardParseError(const fs::path& shard, int64_t row,
                                 const std::string& message)
    : IngestError(shard.generic_string() +
                  (row >= 0 ? " row " + std::to_string(row) : "") + ": " +
                  message),
      shard_(shard.generic_string()),
      row_(row) {}

std::vector<std::string> list_event_shards(const fs::path& root) {
  const fs::path data_dir = root / "data";
  std::vector<std::string> names;
  for (const fs::path& file : parquet_files_under(data_dir)) {
    fs::path rel = fs::relative(file, data_dir);
    rel.replace_extension();
    names.push_back(rel.generic_string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

void for_each_event_in_shard(
    const fs::path& root, std::string_view shard,
    const std::function<void(uint64_t, const EventRecord&)>& fn,
    const WarnFn& warn) {
  const fs::path file = root / "data" / (std::string(shard) + ".parquet");
  read_parquet_rows(file, kEventColumns, warn,
                    [&](const parquet::RowBatch& batch, int64_t base_row) {
                      for (size_t i = 0; i < batch.rows; ++i) {
                        const int64_t row = base_row + static_cast<int64_t>(i);
                        fn(static_cast<uint64_t>(row),
                           event_from_batch(batch, i, file, row));
                      }
                    });
}

void for_each_event(
    const fs::path& root,
    const std::function<void(std::string_view, uint64_t, const EventRecord&)>&
        fn,
    const WarnFn& warn) {
  for (const std::string& shard : list_event_shards(root)) {
    for_each_event_in_shard(
        root, shard,
        [&](uint64_t row, const EventRecord& record) { fn(shard, row, record); },
        warn);
  }
}

namespace {

using nlohmann::json;

std::optional<std::string> json_opt_string(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return std::nullopt;
  if (!it->is_string())
    throw SchemaMismatch(std::string("dataset.json: field '") + key +
                         "' must be a string");
  return it->get<std::string>();
}

std::vector<std::string> json_uri_list(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return {};
  if (it->is_string()) return {it->get<std::string>()};
  if (it->is_array()) {
    std::vector<std::string> out;
    for (const json& item : *it) {
      if (!item.is_string())
        throw SchemaMismatch(std::string("dataset.json: field '") + key +
                             "' must hold strings");
      out.push_back(item.get<std::string>());
    }
    return out;
  }
  throw SchemaMismatch(std::string("dataset.json: field '") + key +
                       "' must be a string or an array of strings");
}

}  // namespace

DatasetMetadataRecord load_dataset_metadata(const fs::path& root) {
  const fs::path file = root / "metadata" / "dataset.json";
  std::ifstream in(file);
  if (!in)
    throw MissingMetadata("no dataset descriptor at " + file.generic_string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaMismatch(file.generic_string() + ": " + e.what());
  }
  if (!doc.is_object())
    throw SchemaMismatch(file.generic_string() + ": descriptor must be an object");

  DatasetMetadataRecord meta;
  const auto name = json_opt_string(doc, "dataset_name");
  const auto meds_version = json_opt_string(doc, "meds_version");
  const auto created_at = json_opt_string(doc, "created_at");
  if (!name || !meds_version || !created_at)
    throw SchemaMismatch(
        file.generic_string() +
        ": dataset_name, meds_version, and created_at are required");
  meta.dataset_name = *name;
  meta.meds_version = *meds_version;
  const auto created = parse_timestamp(*created_at);
  if (!created)
    throw SchemaMismatch(file.generic_string() + ": bad created_at '" +
                         *created_at + "'");
  meta.created_at = *created;
  meta.dataset_version = json_opt_string(doc, "dataset_version");
  meta.license = json_opt_string(doc, "license");
  meta.location_uris = json_uri_list(doc, "location_uri");
  meta.description_uris = json_uri_list(doc, "description_uri");
  meta.etl_name = json_opt_string(doc, "etl_name");
  meta.etl_version = json_opt_string(doc, "etl_version");
  if (meta.etl_version && !meta.etl_name)
    throw SchemaMismatch(file.generic_string() +
                         ": etl_version given without etl_name");
  return meta;
}

std::vector<CodeRecord> load_codes(const fs::path& root, const WarnFn& warn) {
  const fs::path file = root / "metadata" / "codes.parquet";
  std::vector<CodeRecord> codes;
  if (!fs::exists(file)) return codes;
  read_parquet_rows(
      file, kCodeColumns, warn,
      [&](const parquet::RowBatch& batch, int64_t base_row) {
        const Column& code = *batch.find("code");
        const Column& description = *batch.find("description");
        const Column& parents = *batch.find("parent_codes");
        for (size_t i = 0; i < batch.rows; ++i) {
          const int64_t row = base_row + static_cast<int64_t>(i);
          CodeRecord record;
          record.code_string = required_string(code, i, file, row, "code");
          if (record.code_string.empty())
            throw ShardParseError(file, row, "empty code");
          if (description.present[i])
            record.description = description.strings[i];
          if (!parents.list_offsets.empty()) {
            std::set<std::string_view> seen;
            for (uint32_t k = parents.list_offsets[i];
                 k < parents.list_offsets[i + 1]; ++k) {
              const std::string& parent = parents.strings[k];
              if (!seen.insert(parent).second) {
                if (warn)
                  warn(file.generic_string() + " row " + std::to_string(row) +
                       ": duplicate parent code '" + parent + "' dropped");
                continue;
              }
              record.parent_codes.push_back(parent);
            }
          }
          codes.push_back(std::move(record));
        }
      });
  return codes;
}

std::vector<SplitAssignment> load_splits(const fs::path& root,
                                         const WarnFn& warn) {
  const fs::path file = root / "metadata" / "subject_splits.parquet";
  std::vector<SplitAssignment> splits;
  if (!fs::exists(file)) return splits;
  read_parquet_rows(file, kSplitColumns, warn,
                    [&](const parquet::RowBatch& batch, int64_t base_row) {
                      const Column& subject = *batch.find("subject_id");
                      const Column& split = *batch.find("split");
                      for (size_t i = 0; i < batch.rows; ++i) {
                        const int64_t row = base_row + static_cast<int64_t>(i);
                        splits.push_back(SplitAssignment{
                            required_string(subject, i, file, row, "subject_id"),
                            required_string(split, i, file, row, "split")});
                      }
                    });
  return splits;
}

std::vector<LabelRecord> load_labels(const fs::path& root, const WarnFn& warn) {
  std::vector<LabelRecord> labels;
  for (const fs::path& file : parquet_files_under(root / "labels")) {
    read_parquet_rows(
        file, kLabelColumns, warn,
        [&](const parquet::RowBatch& batch, int64_t base_row) {
          const Column& subject = *batch.find("subject_id");
          const Column& prediction = *batch.find("prediction_time");
          const Column& booleans = *batch.find("boolean_value");
          const Column& integers = *batch.find("integer_value");
          const Column& floats = *batch.find("float_value");
          const Column& categoricals = *batch.find("categorical_value");
          for (size_t i = 0; i < batch.rows; ++i) {
            const int64_t row = base_row + static_cast<int64_t>(i);
            LabelRecord record;
            record.subject_id =
                required_string(subject, i, file, row, "subject_id");
            if (!prediction.present[i])
              throw ShardParseError(file, row, "null prediction_time");
            record.prediction_time = MicroTimestamp(prediction.ints[i]);
            if (booleans.present[i])
              record.boolean_value = booleans.bools[i] != 0;
            if (integers.present[i]) record.integer_value = integers.ints[i];
            if (floats.present[i]) record.float_value = floats.doubles[i];
            if (categoricals.present[i])
              record.categorical_value = categoricals.strings[i];
            labels.push_back(std::move(record));
          }
        });
  }
  return labels;
}

MedsDataset load_dataset(const fs::path& root, const WarnFn& warn) {
  if (!fs::exists(root))
    throw MissingMetadata("no such MEDS root: " + root.generic_string());
  MedsDataset dataset;
  dataset.metadata = load_dataset_metadata(root);
  for (const std::string& shard : list_event_shards(root)) {
    EventShard out;
    out.name = shard;
    for_each_event_in_shard(
        root, shard,
        [&](uint64_t, const EventRecord& record) { out.events.push_back(record); },
        warn);
    dataset.shards.push_back(std::move(out));
  }
  dataset.codes = load_codes(root, warn);
  dataset.splits = load_splits(root, warn);
  dataset.labels = load_labels(root, warn);
  return dataset;
}

}  // namespace medsgraph::meds
