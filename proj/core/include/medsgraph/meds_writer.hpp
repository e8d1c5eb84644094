#pragma once

#include <filesystem>

#include "medsgraph/records.hpp"

namespace medsgraph::meds {

/// Writes a dataset as a MEDS root directory: metadata/dataset.json, one
/// data/<shard>.parquet per shard, metadata/codes.parquet,
/// metadata/subject_splits.parquet, and labels/labels.parquet (the latter
/// three only when non-empty). Deterministic byte-for-byte for equal input.
void write_meds_root(const MedsDataset& dataset,
                     const std::filesystem::path& root);

}  // namespace medsgraph::meds
