#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "medsgraph/graph.hpp"
#include "medsgraph/vocabulary.hpp"

namespace medsgraph::stats {

/// Moments of the triples-per-Event-node distribution. Standard deviation
/// is the population form; the median takes the lower-middle element for
/// even counts.
struct EventTripleDistribution {
  double mean = 0;
  double std_dev = 0;
  double median = 0;
  uint64_t min = 0;
  uint64_t max = 0;
  uint64_t event_count = 0;

  friend bool operator==(const EventTripleDistribution&,
                         const EventTripleDistribution&) = default;
};

struct GraphStats {
  uint64_t triple_count = 0;
  uint64_t distinct_subjects = 0;
  uint64_t distinct_predicates = 0;
  uint64_t distinct_objects = 0;
  /// IRIs occurring in any position (subject, predicate, or object).
  uint64_t distinct_iris = 0;
  uint64_t distinct_literals = 0;
  /// Always zero: the term model has no blank-node variant.
  uint64_t blank_node_count = 0;
  std::map<std::string, uint64_t> per_class_instance_counts;
  /// Absent when the graph holds no Event instances.
  std::optional<EventTripleDistribution> event_triples;

  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

/// Single pass over the triple set; insertion-order invariant. The
/// vocabulary supplies the Event class IRI for the per-event distribution.
GraphStats compute_stats(const rdf::Graph& g,
                         const rdf::Vocabulary& vocab = rdf::Vocabulary());

/// Stable-key-order JSON document, byte-identical for equal stats. A
/// "conventions" object records the population-std-dev and
/// IRIs-in-any-position choices.
std::string stats_json(const GraphStats& stats);

/// Human-readable summary table.
void print_stats_table(const GraphStats& stats, std::ostream& out);

}  // namespace medsgraph::stats
