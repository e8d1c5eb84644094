#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "medsgraph/graph.hpp"
#include "medsgraph/meds_reader.hpp"
#include "medsgraph/records.hpp"
#include "medsgraph/vocabulary.hpp"

namespace medsgraph::mapping {

class MappingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A code row lists itself among its parents.
class SelfParent : public MappingError {
 public:
  using MappingError::MappingError;
};

/// description_uris given without any location_uris: there is no
/// distribution node to attach them to.
class DanglingAccessUrl : public MappingError {
 public:
  using MappingError::MappingError;
};

class MultipleLabelValues : public MappingError {
 public:
  using MappingError::MappingError;
};

class NoLabelValue : public MappingError {
 public:
  using MappingError::MappingError;
};

/// Everything that parameterizes the record-to-triple transformation.
/// Same context + same input => same output graph.
struct MappingContext {
  /// Root namespace for minted node IRIs; must be absolute. The dataset
  /// slug is appended, so one base can host many datasets.
  std::string base_iri = "https://example.org/meds/";
  /// URL-safe dataset segment; derived from the dataset name when empty.
  std::string dataset_slug;
  /// Emit {event prov:wasDerivedFrom dataset} for every event.
  bool include_event_provenance = true;
  /// Names the split experiment the split table describes, so independent
  /// split groups can coexist under one dataset.
  std::string split_table_id = "default";
  /// Namespace of the MEDS vocabulary terms.
  std::string meds_namespace = std::string(rdf::kDefaultMedsNs);
};

/// Lowercases, maps runs of URL-unsafe characters to '-', and falls back to
/// "dataset" if nothing survives.
std::string derive_dataset_slug(std::string_view dataset_name);

/// Deterministic node identities under {base}{slug}/. Injective on their
/// natural keys: variable parts are percent-encoded, so distinct keys mint
/// distinct IRIs.
class IriScheme {
 public:
  explicit IriScheme(const MappingContext& ctx);

  rdf::Term subject(std::string_view subject_id) const;
  rdf::Term event(std::string_view shard_name, uint64_t row_index) const;
  rdf::Term code(std::string_view code_string) const;
  rdf::Term dataset() const;
  rdf::Term etl() const;
  rdf::Term split(std::string_view split_name) const;
  rdf::Term label(std::string_view subject_id, uint64_t ordinal) const;
  rdf::Term distribution(uint64_t ordinal) const;
  rdf::Term license(std::string_view license_text) const;

  const std::string& root() const { return root_; }

 private:
  std::string root_;  // {base}{slug}
  std::string split_table_id_;
};

/// Applies the per-record mapping rules. Pure and const, safe to share
/// across threads.
class Mapper {
 public:
  explicit Mapper(MappingContext ctx);

  const MappingContext& context() const { return ctx_; }
  const rdf::Vocabulary& vocab() const { return vocab_; }
  const IriScheme& iris() const { return iris_; }

  /// Event row -> 4 mandatory templates + optional time/numeric/text +
  /// dataset provenance when enabled. 5 + presence-count triples under the
  /// default context.
  std::vector<rdf::Triple> map_event(const meds::EventRecord& event,
                                     std::string_view shard_name,
                                     uint64_t row_index) const;

  /// Subject node: type + subjectId. Idempotent under graph set semantics.
  std::vector<rdf::Triple> map_subject(std::string_view subject_id) const;

  /// Code row: type + codeString, optional description, and a type +
  /// parentCode pair per parent. Parents outside the code table still get
  /// their type triple. Throws SelfParent.
  std::vector<rdf::Triple> map_code(const meds::CodeRecord& code) const;

  /// Dataset descriptor -> DatasetMetadata node with DCTERMS/DCAT fields,
  /// license node, distribution nodes, and the generating ETL activity.
  /// Throws DanglingAccessUrl.
  std::vector<rdf::Triple> map_dataset_metadata(
      const meds::DatasetMetadataRecord& meta) const;

  /// Split assignment: split-node type + assignedSplit edge.
  std::vector<rdf::Triple> map_split(const meds::SplitAssignment& a) const;

  /// Label row: type, hasSubject, predictionTime, and exactly one value
  /// triple. Throws MultipleLabelValues / NoLabelValue.
  std::vector<rdf::Triple> map_label(const meds::LabelRecord& label,
                                     uint64_t ordinal) const;

  /// Like map_label but emits one value triple per set variant without
  /// enforcing exclusivity — the conversion pipeline uses this so that the
  /// validator, not the mapper, reports exclusive-group breaches.
  std::vector<rdf::Triple> map_label_unchecked(const meds::LabelRecord& label,
                                               uint64_t ordinal) const;

 private:
  MappingContext ctx_;
  rdf::Vocabulary vocab_;
  IriScheme iris_;
};

enum class Strictness { FailFast, Collect };

struct ConvertIssue {
  std::string where;  // "shard:row", "codes[i]", "labels[i]", "metadata"
  std::string message;
};

struct ConvertResult {
  rdf::Graph graph;
  std::vector<ConvertIssue> issues;
};

/// Converts a whole in-memory dataset. Emits the dataset-metadata node,
/// every split and label, a Subject node for every subject id seen in
/// events, splits, or labels, and a Code node for every code string seen in
/// events or the code table. FailFast rethrows the first record error;
/// Collect skips offending records and reports them in `issues`.
ConvertResult convert(const meds::MedsDataset& dataset, MappingContext ctx,
                      Strictness strictness = Strictness::FailFast);

/// Converts straight from a MEDS root directory, reading shards in
/// lexicographic order. `threads` > 1 maps shards in parallel; the output
/// graph is identical for any thread count.
ConvertResult convert_root(const std::filesystem::path& root,
                           MappingContext ctx,
                           Strictness strictness = Strictness::FailFast,
                           unsigned threads = 1,
                           const meds::WarnFn& warn = {});

}  // namespace medsgraph::mapping
