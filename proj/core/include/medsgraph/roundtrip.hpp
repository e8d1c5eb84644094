#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "medsgraph/graph.hpp"
#include "medsgraph/records.hpp"
#include "medsgraph/vocabulary.hpp"

namespace medsgraph::roundtrip {

class RoundtripError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The graph does not contain exactly one DatasetMetadata node.
class AmbiguousMetadata : public RoundtripError {
 public:
  using RoundtripError::RoundtripError;
};

/// The graph breaks a structural assumption of the mapping (validate it
/// against the builtin suite before inverting).
class NonConformingGraph : public RoundtripError {
 public:
  using RoundtripError::RoundtripError;
};

/// Reads the mapping backwards: Event/Code/DatasetMetadata/SubjectSplit/
/// SubjectLabel nodes become rows again. Output is already in canonical
/// order (one "data" shard, events/codes/splits/labels sorted). Designed
/// for graphs this toolkit produced; foreign IRI schemes are best-effort
/// and may raise NonConformingGraph.
meds::MedsDataset invert(const rdf::Graph& g,
                         const rdf::Vocabulary& vocab = rdf::Vocabulary());

/// Normal form used for fidelity comparison: shards merged into one "data"
/// shard with events sorted by (subject, time absent-first, code, numeric,
/// text); codes sorted/deduplicated with sorted parents; splits sorted and
/// deduplicated; labels sorted by (subject, per-subject order);
/// description_uris sorted and deduplicated.
meds::MedsDataset canonicalize(const meds::MedsDataset& dataset);

struct FieldDiff {
  std::string table;
  std::string key;
  std::string field;
  std::string expected;
  std::string actual;

  friend bool operator==(const FieldDiff&, const FieldDiff&) = default;
};

/// Per-table equality flags; all true exactly when diffs is empty.
struct FidelityReport {
  bool events_equal = true;
  bool codes_equal = true;
  bool metadata_equal = true;
  bool splits_equal = true;
  bool labels_equal = true;
  std::vector<FieldDiff> diffs;

  bool clean() const {
    return events_equal && codes_equal && metadata_equal && splits_equal &&
           labels_equal;
  }
};

/// Field-wise comparison after canonicalizing both sides. Timestamps
/// compare at stored microsecond precision; doubles by their shortest
/// round-trip lexical form.
FidelityReport fidelity(const meds::MedsDataset& original,
                        const meds::MedsDataset& reconstructed);

/// Stable-key-order JSON rendering of the report.
std::string fidelity_json(const FidelityReport& report);

}  // namespace medsgraph::roundtrip
