#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "medsgraph/records.hpp"

namespace medsgraph::meds {

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The root has no metadata/dataset.json descriptor.
class MissingMetadata : public IngestError {
 public:
  using IngestError::IngestError;
};

/// A required column is absent or carries an incompatible type, or the
/// descriptor violates the schema.
class SchemaMismatch : public IngestError {
 public:
  using IngestError::IngestError;
};

/// A shard file failed to parse; carries the shard path and, when the
/// failure is row-scoped, the row index.
class ShardParseError : public IngestError {
 public:
  ShardParseError(const std::filesystem::path& shard, int64_t row,
                  const std::string& message);

  const std::string& shard() const { return shard_; }
  int64_t row() const { return row_; }  // -1 when not row-scoped

 private:
  std::string shard_;
  int64_t row_;
};

using WarnFn = std::function<void(const std::string&)>;

/// Event shard names (paths under data/ minus the .parquet suffix), in
/// lexicographic order — the canonical shard enumeration order.
std::vector<std::string> list_event_shards(const std::filesystem::path& root);

/// Streams events in deterministic (shard lexicographic, then row) order
/// without materializing more than one row group at a time.
void for_each_event(
    const std::filesystem::path& root,
    const std::function<void(std::string_view shard, uint64_t row,
                             const EventRecord&)>& fn,
    const WarnFn& warn = {});

/// Streams one shard only; `shard` as returned by list_event_shards.
void for_each_event_in_shard(
    const std::filesystem::path& root, std::string_view shard,
    const std::function<void(uint64_t row, const EventRecord&)>& fn,
    const WarnFn& warn = {});

DatasetMetadataRecord load_dataset_metadata(const std::filesystem::path& root);
std::vector<CodeRecord> load_codes(const std::filesystem::path& root,
                                   const WarnFn& warn = {});
std::vector<SplitAssignment> load_splits(const std::filesystem::path& root,
                                         const WarnFn& warn = {});
std::vector<LabelRecord> load_labels(const std::filesystem::path& root,
                                     const WarnFn& warn = {});

/// Parses a whole MEDS root: metadata/dataset.json, event shards under
/// data/, optional metadata/codes.parquet, metadata/subject_splits.parquet,
/// and labels under labels/. Unknown event columns produce warnings, not
/// errors.
MedsDataset load_dataset(const std::filesystem::path& root,
                         const WarnFn& warn = {});

}  // namespace medsgraph::meds
