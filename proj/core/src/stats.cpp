#include "medsgraph/stats.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

namespace medsgraph::stats {

using rdf::Graph;
using rdf::Term;
using rdf::TermId;

GraphStats compute_stats(const Graph& g, const rdf::Vocabulary& vocab) {
  GraphStats stats;
  stats.triple_count = g.size();

  const size_t n_terms = g.term_count();
  std::vector<uint8_t> in_subject(n_terms, 0);
  std::vector<uint8_t> in_predicate(n_terms, 0);
  std::vector<uint8_t> in_object(n_terms, 0);
  for (const rdf::TripleIds& t : g.triples()) {
    in_subject[t.subject] = 1;
    in_predicate[t.predicate] = 1;
    in_object[t.object] = 1;
  }
  for (size_t i = 0; i < n_terms; ++i) {
    const bool anywhere = in_subject[i] || in_predicate[i] || in_object[i];
    stats.distinct_subjects += in_subject[i];
    stats.distinct_predicates += in_predicate[i];
    stats.distinct_objects += in_object[i];
    if (!anywhere) continue;
    if (g.term(static_cast<TermId>(i)).is_iri())
      ++stats.distinct_iris;
    else
      ++stats.distinct_literals;
  }

  const auto type_id = g.find_term(Term::iri(std::string(rdf::kRdfNs) + "type"));
  std::vector<TermId> event_nodes;
  if (type_id) {
    const auto event_class = g.find_term(vocab.event_class);
    for (const uint32_t index : g.with_predicate(*type_id)) {
      const rdf::TripleIds& t = g.triples()[index];
      ++stats.per_class_instance_counts[g.term(t.object).text()];
      if (event_class && t.object == *event_class)
        event_nodes.push_back(t.subject);
    }
  }

  if (!event_nodes.empty()) {
    std::vector<uint64_t> counts;
    counts.reserve(event_nodes.size());
    for (const TermId node : event_nodes)
      counts.push_back(g.with_subject(node).size());
    std::sort(counts.begin(), counts.end());

    EventTripleDistribution dist;
    dist.event_count = counts.size();
    dist.min = counts.front();
    dist.max = counts.back();
    dist.median = static_cast<double>(counts[(counts.size() - 1) / 2]);
    double sum = 0;
    for (const uint64_t c : counts) sum += static_cast<double>(c);
    dist.mean = sum / static_cast<double>(counts.size());
    double sq = 0;
    for (const uint64_t c : counts) {
      const double d = static_cast<double>(c) - dist.mean;
      sq += d * d;
    }
    dist.std_dev = std::sqrt(sq / static_cast<double>(counts.size()));
    stats.event_triples = dist;
  }
  return stats;
}

std::string stats_json(const GraphStats& stats) {
  nlohmann::ordered_json doc;
  doc["triple_count"] = stats.triple_count;
  doc["distinct_subjects"] = stats.distinct_subjects;
  doc["distinct_predicates"] = stats.distinct_predicates;
  doc["distinct_objects"] = stats.distinct_objects;
  doc["distinct_iris"] = stats.distinct_iris;
  doc["distinct_literals"] = stats.distinct_literals;
  doc["blank_node_count"] = stats.blank_node_count;
  nlohmann::ordered_json classes = nlohmann::ordered_json::object();
  for (const auto& [iri, count] : stats.per_class_instance_counts)
    classes[iri] = count;
  doc["per_class_instance_counts"] = std::move(classes);
  if (stats.event_triples) {
    const EventTripleDistribution& d = *stats.event_triples;
    nlohmann::ordered_json dist;
    dist["event_count"] = d.event_count;
    dist["mean"] = d.mean;
    dist["std_dev"] = d.std_dev;
    dist["min"] = d.min;
    dist["max"] = d.max;
    dist["median"] = d.median;
    doc["event_triple_distribution"] = std::move(dist);
  } else {
    doc["event_triple_distribution"] = nullptr;
  }
  doc["conventions"] = {
      {"std_dev", "population"},
      {"distinct_iris", "IRIs in any position"},
      {"distinct_objects", "distinct terms in object position"},
      {"median", "lower middle for even counts"},
  };
  return doc.dump(2) + "\n";
}

void print_stats_table(const GraphStats& stats, std::ostream& out) {
  out << "triples            " << stats.triple_count << "\n"
      << "distinct subjects  " << stats.distinct_subjects << "\n"
      << "distinct predicates " << stats.distinct_predicates << "\n"
      << "distinct objects   " << stats.distinct_objects << "\n"
      << "distinct IRIs      " << stats.distinct_iris << "\n"
      << "distinct literals  " << stats.distinct_literals << "\n"
      << "blank nodes        " << stats.blank_node_count << "\n";
  for (const auto& [iri, count] : stats.per_class_instance_counts)
    out << "instances of <" << iri << ">: " << count << "\n";
  if (stats.event_triples) {
    const EventTripleDistribution& d = *stats.event_triples;
    out << "triples per event: mean " << d.mean << ", std " << d.std_dev
        << ", min " << d.min << ", max " << d.max << ", median " << d.median
        << " over " << d.event_count << " events\n";
  }
}

}  // namespace medsgraph::stats
