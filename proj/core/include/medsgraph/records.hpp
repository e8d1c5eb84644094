#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "medsgraph/timestamp.hpp"

namespace medsgraph::meds {

/// One event row: a subject observation with a categorical code and
/// optional time / numeric / text payloads.
struct EventRecord {
  std::string subject_id;
  std::string code_string;
  std::optional<MicroTimestamp> time;
  std::optional<double> numeric_value;
  std::optional<std::string> text_value;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

/// Code-table row: canonical identifier plus optional description and
/// parent codes (an in-dataset hierarchy or external vocabulary links).
struct CodeRecord {
  std::string code_string;
  std::optional<std::string> description;
  std::vector<std::string> parent_codes;

  friend bool operator==(const CodeRecord&, const CodeRecord&) = default;
};

/// Dataset descriptor: identity, versioning, licensing, hosting, and the
/// producing ETL run.
struct DatasetMetadataRecord {
  std::string dataset_name;
  std::optional<std::string> dataset_version;
  std::string meds_version;
  MicroTimestamp created_at;
  std::optional<std::string> license;
  std::vector<std::string> location_uris;
  std::vector<std::string> description_uris;
  std::optional<std::string> etl_name;
  std::optional<std::string> etl_version;

  friend bool operator==(const DatasetMetadataRecord&,
                         const DatasetMetadataRecord&) = default;
};

struct SplitAssignment {
  std::string subject_id;
  std::string split_name;

  friend bool operator==(const SplitAssignment&,
                         const SplitAssignment&) = default;
};

/// A supervised-learning sample. Exactly one of the value fields should be
/// set; the mapping layer rejects records that break that rule.
struct LabelRecord {
  std::string subject_id;
  MicroTimestamp prediction_time;
  std::optional<bool> boolean_value;
  std::optional<int64_t> integer_value;
  std::optional<double> float_value;
  std::optional<std::string> categorical_value;

  int value_variant_count() const {
    return (boolean_value ? 1 : 0) + (integer_value ? 1 : 0) +
           (float_value ? 1 : 0) + (categorical_value ? 1 : 0);
  }

  friend bool operator==(const LabelRecord&, const LabelRecord&) = default;
};

/// One named event shard; rows keep their on-disk order.
struct EventShard {
  std::string name;
  std::vector<EventRecord> events;

  friend bool operator==(const EventShard&, const EventShard&) = default;
};

struct MedsDataset {
  DatasetMetadataRecord metadata;
  std::vector<EventShard> shards;
  std::vector<CodeRecord> codes;
  std::vector<SplitAssignment> splits;
  std::vector<LabelRecord> labels;

  size_t event_count() const;

  friend bool operator==(const MedsDataset&, const MedsDataset&) = default;
};

}  // namespace medsgraph::meds
