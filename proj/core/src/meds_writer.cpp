#include "medsgraph/meds_writer.hpp"

#include <fstream>

#include <json.hpp>

#include "medsgraph/meds_reader.hpp"
#include "medsgraph/parquet.hpp"

namespace medsgraph::meds {
namespace {

namespace fs = std::filesystem;
using parquet::Column;
using parquet::ColumnSpec;
using parquet::ColumnType;

constexpr size_t kRowsPerGroup = 65536;

void write_descriptor(const DatasetMetadataRecord& meta, const fs::path& file) {
  nlohmann::ordered_json doc;
  doc["dataset_name"] = meta.dataset_name;
  if (meta.dataset_version) doc["dataset_version"] = *meta.dataset_version;
  doc["meds_version"] = meta.meds_version;
  doc["created_at"] = format_timestamp(meta.created_at);
  if (meta.license) doc["license"] = *meta.license;
  if (!meta.location_uris.empty()) doc["location_uri"] = meta.location_uris;
  if (!meta.description_uris.empty())
    doc["description_uri"] = meta.description_uris;
  if (meta.etl_name) doc["etl_name"] = *meta.etl_name;
  if (meta.etl_version) doc["etl_version"] = *meta.etl_version;

  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IngestError("cannot write " + file.generic_string());
  out << doc.dump(2) << '\n';
}

void write_event_shard(const EventShard& shard, const fs::path& file) {
  parquet::FileWriter writer(
      file, {{"subject_id", ColumnType::String, true},
             {"time", ColumnType::Timestamp, false},
             {"code", ColumnType::String, true},
             {"numeric_value", ColumnType::Double, false},
             {"text_value", ColumnType::String, false}});
  for (size_t start = 0; start < shard.events.size() || start == 0;
       start += kRowsPerGroup) {
    const size_t end = std::min(start + kRowsPerGroup, shard.events.size());
    parquet::RowBatch batch;
    batch.reserve(5);
    batch.rows = end - start;
    Column& subject = batch.add("subject_id", ColumnType::String);
    Column& time = batch.add("time", ColumnType::Timestamp);
    Column& code = batch.add("code", ColumnType::String);
    Column& numeric = batch.add("numeric_value", ColumnType::Double);
    Column& text = batch.add("text_value", ColumnType::String);
    for (size_t i = start; i < end; ++i) {
      const EventRecord& e = shard.events[i];
      subject.present.push_back(1);
      subject.strings.push_back(e.subject_id);
      time.present.push_back(e.time ? 1 : 0);
      time.ints.push_back(e.time ? e.time->micros() : 0);
      code.present.push_back(1);
      code.strings.push_back(e.code_string);
      numeric.present.push_back(e.numeric_value ? 1 : 0);
      numeric.doubles.push_back(e.numeric_value.value_or(0.0));
      text.present.push_back(e.text_value ? 1 : 0);
      text.strings.push_back(e.text_value.value_or(std::string()));
    }
    writer.write(batch);
    if (end == shard.events.size()) break;
  }
  writer.close();
}

void write_codes(const std::vector<CodeRecord>& codes, const fs::path& file) {
  parquet::FileWriter writer(file,
                             {{"code", ColumnType::String, true},
                              {"description", ColumnType::String, false},
                              {"parent_codes", ColumnType::StringList, false}});
  parquet::RowBatch batch;
  batch.reserve(3);
  batch.rows = codes.size();
  Column& code = batch.add("code", ColumnType::String);
  Column& description = batch.add("description", ColumnType::String);
  Column& parents = batch.add("parent_codes", ColumnType::StringList);
  parents.list_offsets.push_back(0);
  for (const CodeRecord& record : codes) {
    code.present.push_back(1);
    code.strings.push_back(record.code_string);
    description.present.push_back(record.description ? 1 : 0);
    description.strings.push_back(record.description.value_or(std::string()));
    parents.present.push_back(1);
    for (const std::string& parent : record.parent_codes)
      parents.strings.push_back(parent);
    parents.list_offsets.push_back(
        static_cast<uint32_t>(parents.strings.size()));
  }
  writer.write(batch);
  writer.close();
}

void write_splits(const std::vector<SplitAssignment>& splits,
                  const fs::path& file) {
  parquet::FileWriter writer(file, {{"subject_id", ColumnType::String, true},
                                    {"split", ColumnType::String, true}});
  parquet::RowBatch batch;
  batch.reserve(2);
  batch.rows = splits.size();
  Column& subject = batch.add("subject_id", ColumnType::String);
  Column& split = batch.add("split", ColumnType::String);
  for (const SplitAssignment& a : splits) {
    subject.present.push_back(1);
    subject.strings.push_back(a.subject_id);
    split.present.push_back(1);
    split.strings.push_back(a.split_name);
  }
  writer.write(batch);
  writer.close();
}

void write_labels(const std::vector<LabelRecord>& labels,
                  const fs::path& file) {
  parquet::FileWriter writer(
      file, {{"subject_id", ColumnType::String, true},
             {"prediction_time", ColumnType::Timestamp, true},
             {"boolean_value", ColumnType::Boolean, false},
             {"integer_value", ColumnType::Int64, false},
             {"float_value", ColumnType::Double, false},
             {"categorical_value", ColumnType::String, false}});
  parquet::RowBatch batch;
  batch.reserve(6);
  batch.rows = labels.size();
  Column& subject = batch.add("subject_id", ColumnType::String);
  Column& prediction = batch.add("prediction_time", ColumnType::Timestamp);
  Column& booleans = batch.add("boolean_value", ColumnType::Boolean);
  Column& integers = batch.add("integer_value", ColumnType::Int64);
  Column& floats = batch.add("float_value", ColumnType::Double);
  Column& categoricals = batch.add("categorical_value", ColumnType::String);
  for (const LabelRecord& l : labels) {
    subject.present.push_back(1);
    subject.strings.push_back(l.subject_id);
    prediction.present.push_back(1);
    prediction.ints.push_back(l.prediction_time.micros());
    booleans.present.push_back(l.boolean_value ? 1 : 0);
    booleans.bools.push_back(l.boolean_value.value_or(false) ? 1 : 0);
    integers.present.push_back(l.integer_value ? 1 : 0);
    integers.ints.push_back(l.integer_value.value_or(0));
    floats.present.push_back(l.float_value ? 1 : 0);
    floats.doubles.push_back(l.float_value.value_or(0.0));
    categoricals.present.push_back(l.categorical_value ? 1 : 0);
    categoricals.strings.push_back(l.categorical_value.value_or(std::string()));
  }
  writer.write(batch);
  writer.close();
}

}  // namespace

void write_meds_root(const MedsDataset& dataset, const fs::path& root) {
  fs::create_directories(root / "metadata");
  fs::create_directories(root / "data");
  write_descriptor(dataset.metadata, root / "metadata" / "dataset.json");
  for (const EventShard& shard : dataset.shards) {
    const fs::path file = root / "data" / (shard.name + ".parquet");
    fs::create_directories(file.parent_path());
    write_event_shard(shard, file);
  }
  if (!dataset.codes.empty())
    write_codes(dataset.codes, root / "metadata" / "codes.parquet");
  if (!dataset.splits.empty())
    write_splits(dataset.splits, root / "metadata" / "subject_splits.parquet");
  if (!dataset.labels.empty()) {
    fs::create_directories(root / "labels");
    write_labels(dataset.labels, root / "labels" / "labels.parquet");
  }
}

}  // namespace medsgraph::meds
