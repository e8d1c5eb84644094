#include "medsgraph/roundtrip.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <unordered_map>

#include <json.hpp>

#include "medsgraph/iri.hpp"

namespace medsgraph::roundtrip {

using meds::CodeRecord;
using meds::DatasetMetadataRecord;
using meds::EventRecord;
using meds::EventShard;
using meds::LabelRecord;
using meds::MedsDataset;
using meds::SplitAssignment;
using rdf::Graph;
using rdf::Term;
using rdf::TermId;
using rdf::Vocabulary;
using rdf::XsdType;

namespace {

constexpr std::string_view kCanonicalShard = "data";

// Total order used for the canonical event sort; absent optionals first,
// doubles by lexical form so the order is total even for NaN.
bool event_less(const EventRecord& a, const EventRecord& b) {
  if (a.subject_id != b.subject_id) return a.subject_id < b.subject_id;
  if (a.time.has_value() != b.time.has_value()) return !a.time.has_value();
  if (a.time && *a.time != *b.time) return *a.time < *b.time;
  if (a.code_string != b.code_string) return a.code_string < b.code_string;
  if (a.numeric_value.has_value() != b.numeric_value.has_value())
    return !a.numeric_value.has_value();
  if (a.numeric_value) {
    const std::string la = rdf::format_xsd_double(*a.numeric_value);
    const std::string lb = rdf::format_xsd_double(*b.numeric_value);
    if (la != lb) return la < lb;
  }
  if (a.text_value.has_value() != b.text_value.has_value())
    return !a.text_value.has_value();
  if (a.text_value && *a.text_value != *b.text_value)
    return *a.text_value < *b.text_value;
  return false;
}

bool code_less(const CodeRecord& a, const CodeRecord& b) {
  if (a.code_string != b.code_string) return a.code_string < b.code_string;
  if (a.description != b.description) return a.description < b.description;
  return a.parent_codes < b.parent_codes;
}

bool split_less(const SplitAssignment& a, const SplitAssignment& b) {
  if (a.subject_id != b.subject_id) return a.subject_id < b.subject_id;
  return a.split_name < b.split_name;
}

struct Inverter {
  const Graph& g;
  const Vocabulary& vocab;
  std::string root;
  std::optional<TermId> type_id;

  [[noreturn]] static void nonconforming(const std::string& message) {
    throw NonConformingGraph(message);
  }

  std::optional<TermId> id_of(const Term& t) const { return g.find_term(t); }

  std::vector<TermId> nodes_of_class(const Term& cls) const {
    std::vector<TermId> out;
    if (!type_id) return out;
    const auto cls_id = id_of(cls);
    if (!cls_id) return out;
    for (const uint32_t index : g.with_predicate(*type_id)) {
      const rdf::TripleIds& t = g.triples()[index];
      if (t.object == *cls_id) out.push_back(t.subject);
    }
    return out;
  }

  std::vector<TermId> objects(TermId node, const Term& predicate) const {
    const auto pred_id = id_of(predicate);
    if (!pred_id) return {};
    return g.objects_of(node, *pred_id);
  }

  std::optional<TermId> at_most_one(TermId node, const Term& predicate,
                                    const char* what) const {
    const std::vector<TermId> found = objects(node, predicate);
    if (found.size() > 1)
      nonconforming("node " + g.term(node).text() + " has " +
                    std::to_string(found.size()) + " values of " + what);
    if (found.empty()) return std::nullopt;
    return found.front();
  }

  TermId exactly_one(TermId node, const Term& predicate,
                     const char* what) const {
    const auto found = at_most_one(node, predicate, what);
    if (!found)
      nonconforming("node " + g.term(node).text() + " lacks " + what);
    return *found;
  }

  std::optional<std::string> opt_literal(TermId node, const Term& predicate,
                                         const char* what) const {
    const auto found = at_most_one(node, predicate, what);
    if (!found) return std::nullopt;
    const Term& term = g.term(*found);
    if (!term.is_literal())
      nonconforming("value of " + std::string(what) + " on " +
                    g.term(node).text() + " is not a literal");
    return term.text();
  }

  std::string literal(TermId node, const Term& predicate,
                      const char* what) const {
    const auto found = opt_literal(node, predicate, what);
    if (!found)
      nonconforming("node " + g.term(node).text() + " lacks " + what);
    return *found;
  }

  MicroTimestamp timestamp(const std::string& lexical,
                           const char* what) const {
    const auto parsed = parse_timestamp(lexical);
    if (!parsed)
      nonconforming("bad " + std::string(what) + " literal '" + lexical + "'");
    return *parsed;
  }

  // Percent-decoded tail of a toolkit-minted IRI under root + infix.
  std::string decode_tail(std::string_view iri, const std::string& infix,
                          const char* what) const {
    const std::string prefix = root + infix;
    if (!iri.starts_with(prefix))
      nonconforming("IRI " + std::string(iri) + " does not follow the " +
                    what + " scheme");
    const auto decoded = iri_decode_component(iri.substr(prefix.size()));
    if (!decoded)
      nonconforming("IRI " + std::string(iri) + " has a malformed " + what +
                    " segment");
    return *decoded;
  }
};

}  // namespace

MedsDataset invert(const Graph& g, const Vocabulary& vocab) {
  Inverter inv{g, vocab, {}, g.find_term(Term::iri(std::string(rdf::kRdfNs) +
                                                   "type"))};

  const std::vector<TermId> datasets =
      inv.nodes_of_class(vocab.dataset_metadata_class);
  if (datasets.size() != 1)
    throw AmbiguousMetadata("expected exactly one DatasetMetadata node, found " +
                            std::to_string(datasets.size()));
  const TermId dataset_node = datasets.front();
  const std::string& dataset_iri = g.term(dataset_node).text();
  constexpr std::string_view kDatasetSuffix = "/dataset";
  if (!dataset_iri.ends_with(kDatasetSuffix))
    Inverter::nonconforming("dataset node IRI '" + dataset_iri +
                            "' does not follow the toolkit scheme");
  inv.root = dataset_iri.substr(0, dataset_iri.size() - kDatasetSuffix.size());

  MedsDataset out;

  // Dataset metadata.
  DatasetMetadataRecord& meta = out.metadata;
  meta.dataset_name = inv.literal(dataset_node, vocab.dct_title, "dct:title");
  meta.meds_version =
      inv.literal(dataset_node, vocab.meds_version, "medsVersion");
  meta.created_at = inv.timestamp(
      inv.literal(dataset_node, vocab.dct_created, "dct:created"),
      "dct:created");
  meta.dataset_version =
      inv.opt_literal(dataset_node, vocab.dct_has_version, "dct:hasVersion");
  if (const auto license_node =
          inv.at_most_one(dataset_node, vocab.dct_license, "dct:license")) {
    meta.license =
        inv.decode_tail(g.term(*license_node).text(), "/license/", "license");
  }
  {
    std::map<uint64_t, std::string> downloads;
    for (const TermId dist :
         inv.objects(dataset_node, vocab.dcat_distribution)) {
      const std::string ord_text = inv.decode_tail(
          g.term(dist).text(), "/distribution/", "distribution");
      uint64_t ordinal = 0;
      const auto parsed = std::from_chars(
          ord_text.data(), ord_text.data() + ord_text.size(), ordinal);
      if (parsed.ec != std::errc() ||
          parsed.ptr != ord_text.data() + ord_text.size())
        Inverter::nonconforming("distribution IRI lacks a numeric ordinal: " +
                                g.term(dist).text());
      const TermId url = inv.exactly_one(dist, vocab.dcat_download_url,
                                         "dcat:downloadURL");
      downloads[ordinal] = g.term(url).text();
      for (const TermId access : inv.objects(dist, vocab.dcat_access_url))
        meta.description_uris.push_back(g.term(access).text());
    }
    for (auto& [ordinal, url] : downloads)
      meta.location_uris.push_back(std::move(url));
    std::sort(meta.description_uris.begin(), meta.description_uris.end());
    meta.description_uris.erase(
        std::unique(meta.description_uris.begin(), meta.description_uris.end()),
        meta.description_uris.end());
  }
  if (const auto etl = inv.at_most_one(dataset_node, vocab.prov_was_generated_by,
                                       "prov:wasGeneratedBy")) {
    meta.etl_name = inv.literal(*etl, vocab.rdfs_label, "rdfs:label");
    meta.etl_version =
        inv.opt_literal(*etl, vocab.dct_has_version, "dct:hasVersion");
  }

  // Subjects: node -> identifier.
  std::unordered_map<TermId, std::string> subject_ids;
  for (const TermId node : inv.nodes_of_class(vocab.subject_class))
    subject_ids.emplace(node,
                        inv.literal(node, vocab.subject_id, "subjectId"));
  const auto subject_of = [&](TermId node, const char* what) -> std::string {
    const TermId ref = inv.exactly_one(node, vocab.has_subject, what);
    const auto it = subject_ids.find(ref);
    if (it == subject_ids.end())
      Inverter::nonconforming("hasSubject points to an untyped node: " +
                              g.term(ref).text());
    return it->second;
  };

  // Events.
  EventShard shard;
  shard.name = std::string(kCanonicalShard);
  for (const TermId node : inv.nodes_of_class(vocab.event_class)) {
    EventRecord event;
    event.subject_id = subject_of(node, "hasSubject");
    event.code_string = inv.literal(node, vocab.code_string, "codeString");
    if (const auto lex = inv.opt_literal(node, vocab.time, "time"))
      event.time = inv.timestamp(*lex, "time");
    if (const auto lex =
            inv.opt_literal(node, vocab.numeric_value, "numericValue")) {
      const auto value = rdf::parse_xsd_double(*lex);
      if (!value)
        Inverter::nonconforming("bad numericValue literal '" + *lex + "'");
      event.numeric_value = *value;
    }
    event.text_value = inv.opt_literal(node, vocab.text_value, "textValue");
    shard.events.push_back(std::move(event));
  }
  std::sort(shard.events.begin(), shard.events.end(), event_less);
  out.shards.push_back(std::move(shard));

  // Codes. Bare parent nodes carry no codeString literal; their identifier
  // comes back out of the IRI.
  const auto code_string_of = [&](TermId node) {
    if (const auto lex = inv.opt_literal(node, vocab.code_string, "codeString"))
      return *lex;
    return inv.decode_tail(g.term(node).text(), "/code/", "code");
  };
  for (const TermId node : inv.nodes_of_class(vocab.code_class)) {
    CodeRecord code;
    code.code_string = code_string_of(node);
    code.description =
        inv.opt_literal(node, vocab.code_description, "codeDescription");
    for (const TermId parent : inv.objects(node, vocab.parent_code))
      code.parent_codes.push_back(code_string_of(parent));
    std::sort(code.parent_codes.begin(), code.parent_codes.end());
    code.parent_codes.erase(
        std::unique(code.parent_codes.begin(), code.parent_codes.end()),
        code.parent_codes.end());
    out.codes.push_back(std::move(code));
  }
  std::sort(out.codes.begin(), out.codes.end(), code_less);
  out.codes.erase(std::unique(out.codes.begin(), out.codes.end()),
                  out.codes.end());

  // Splits.
  for (const auto& [node, subject] : subject_ids) {
    for (const TermId split : inv.objects(node, vocab.assigned_split)) {
      const std::string& iri = g.term(split).text();
      const size_t slash = iri.rfind('/');
      if (slash == std::string::npos)
        Inverter::nonconforming("split IRI has no name segment: " + iri);
      const auto name = iri_decode_component(
          std::string_view(iri).substr(slash + 1));
      if (!name)
        Inverter::nonconforming("split IRI has a malformed name segment: " +
                                iri);
      out.splits.push_back({subject, *name});
    }
  }
  std::sort(out.splits.begin(), out.splits.end(), split_less);
  out.splits.erase(std::unique(out.splits.begin(), out.splits.end()),
                   out.splits.end());

  // Labels, ordered by (subject, minting ordinal).
  std::vector<std::pair<std::pair<std::string, uint64_t>, LabelRecord>> labels;
  for (const TermId node : inv.nodes_of_class(vocab.subject_label_class)) {
    LabelRecord label;
    label.subject_id = subject_of(node, "hasSubject");
    label.prediction_time = inv.timestamp(
        inv.literal(node, vocab.prediction_time, "predictionTime"),
        "predictionTime");
    if (const auto lex =
            inv.opt_literal(node, vocab.boolean_value, "booleanValue"))
      label.boolean_value = *lex == "true" || *lex == "1";
    if (const auto lex =
            inv.opt_literal(node, vocab.integer_value, "integerValue")) {
      int64_t value = 0;
      const auto parsed =
          std::from_chars(lex->data(), lex->data() + lex->size(), value);
      if (parsed.ec != std::errc() || parsed.ptr != lex->data() + lex->size())
        Inverter::nonconforming("bad integerValue literal '" + *lex + "'");
      label.integer_value = value;
    }
    if (const auto lex =
            inv.opt_literal(node, vocab.float_value, "floatValue")) {
      const auto value = rdf::parse_xsd_double(*lex);
      if (!value)
        Inverter::nonconforming("bad floatValue literal '" + *lex + "'");
      label.float_value = *value;
    }
    label.categorical_value =
        inv.opt_literal(node, vocab.categorical_value, "categoricalValue");

    const std::string& iri = g.term(node).text();
    const size_t slash = iri.rfind('/');
    uint64_t ordinal = 0;
    if (slash != std::string::npos) {
      const std::string_view tail = std::string_view(iri).substr(slash + 1);
      std::from_chars(tail.data(), tail.data() + tail.size(), ordinal);
    }
    labels.push_back({{label.subject_id, ordinal}, std::move(label)});
  }
  std::sort(labels.begin(), labels.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [key, label] : labels) out.labels.push_back(std::move(label));

  return out;
}

MedsDataset canonicalize(const MedsDataset& dataset) {
  MedsDataset out;
  out.metadata = dataset.metadata;
  std::sort(out.metadata.description_uris.begin(),
            out.metadata.description_uris.end());
  out.metadata.description_uris.erase(
      std::unique(out.metadata.description_uris.begin(),
                  out.metadata.description_uris.end()),
      out.metadata.description_uris.end());

  EventShard all;
  all.name = std::string(kCanonicalShard);
  for (const EventShard& shard : dataset.shards)
    all.events.insert(all.events.end(), shard.events.begin(),
                      shard.events.end());
  std::sort(all.events.begin(), all.events.end(), event_less);
  out.shards.push_back(std::move(all));

  out.codes = dataset.codes;
  for (CodeRecord& code : out.codes) {
    std::sort(code.parent_codes.begin(), code.parent_codes.end());
    code.parent_codes.erase(
        std::unique(code.parent_codes.begin(), code.parent_codes.end()),
        code.parent_codes.end());
  }
  std::sort(out.codes.begin(), out.codes.end(), code_less);
  out.codes.erase(std::unique(out.codes.begin(), out.codes.end()),
                  out.codes.end());

  out.splits = dataset.splits;
  std::sort(out.splits.begin(), out.splits.end(), split_less);
  out.splits.erase(std::unique(out.splits.begin(), out.splits.end()),
                   out.splits.end());

  // Keep per-subject label order; order subjects lexicographically.
  out.labels = dataset.labels;
  std::stable_sort(out.labels.begin(), out.labels.end(),
                   [](const LabelRecord& a, const LabelRecord& b) {
                     return a.subject_id < b.subject_id;
                   });
  return out;
}

namespace {

std::string show(const std::optional<std::string>& v) {
  return v ? *v : "(absent)";
}

std::string show_time(const std::optional<MicroTimestamp>& v) {
  return v ? format_timestamp(*v) : "(absent)";
}

std::string show_double(const std::optional<double>& v) {
  return v ? rdf::format_xsd_double(*v) : "(absent)";
}

std::string show_list(const std::vector<std::string>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i];
  }
  return out + "]";
}

struct DiffSink {
  FidelityReport* report;
  std::string table;
  bool* flag;

  void operator()(const std::string& key, const std::string& field,
                  std::string expected, std::string actual) const {
    *flag = false;
    report->diffs.push_back(
        {table, key, field, std::move(expected), std::move(actual)});
  }

  void field(const std::string& key, const std::string& name,
             const std::string& expected, const std::string& actual) const {
    if (expected != actual) (*this)(key, name, expected, actual);
  }
};

}  // namespace

FidelityReport fidelity(const MedsDataset& original,
                        const MedsDataset& reconstructed) {
  const MedsDataset a = canonicalize(original);
  const MedsDataset b = canonicalize(reconstructed);
  FidelityReport report;

  {
    DiffSink d{&report, "metadata", &report.metadata_equal};
    const DatasetMetadataRecord& ma = a.metadata;
    const DatasetMetadataRecord& mb = b.metadata;
    d.field("dataset", "dataset_name", ma.dataset_name, mb.dataset_name);
    d.field("dataset", "dataset_version", show(ma.dataset_version),
            show(mb.dataset_version));
    d.field("dataset", "meds_version", ma.meds_version, mb.meds_version);
    d.field("dataset", "created_at", format_timestamp(ma.created_at),
            format_timestamp(mb.created_at));
    d.field("dataset", "license", show(ma.license), show(mb.license));
    d.field("dataset", "location_uri", show_list(ma.location_uris),
            show_list(mb.location_uris));
    d.field("dataset", "description_uri", show_list(ma.description_uris),
            show_list(mb.description_uris));
    d.field("dataset", "etl_name", show(ma.etl_name), show(mb.etl_name));
    d.field("dataset", "etl_version", show(ma.etl_version),
            show(mb.etl_version));
  }

  {
    DiffSink d{&report, "events", &report.events_equal};
    const std::vector<EventRecord>& ea = a.shards.front().events;
    const std::vector<EventRecord>& eb = b.shards.front().events;
    if (ea.size() != eb.size()) {
      d("", "row_count", std::to_string(ea.size()), std::to_string(eb.size()));
    } else {
      for (size_t i = 0; i < ea.size(); ++i) {
        const std::string key = std::to_string(i) + ":" + ea[i].subject_id;
        d.field(key, "subject_id", ea[i].subject_id, eb[i].subject_id);
        d.field(key, "code_string", ea[i].code_string, eb[i].code_string);
        d.field(key, "time", show_time(ea[i].time), show_time(eb[i].time));
        d.field(key, "numeric_value", show_double(ea[i].numeric_value),
                show_double(eb[i].numeric_value));
        d.field(key, "text_value", show(ea[i].text_value),
                show(eb[i].text_value));
      }
    }
  }

  {
    DiffSink d{&report, "codes", &report.codes_equal};
    if (a.codes.size() != b.codes.size()) {
      d("", "row_count", std::to_string(a.codes.size()),
        std::to_string(b.codes.size()));
    } else {
      for (size_t i = 0; i < a.codes.size(); ++i) {
        const std::string key = a.codes[i].code_string;
        d.field(key, "code", a.codes[i].code_string, b.codes[i].code_string);
        d.field(key, "description", show(a.codes[i].description),
                show(b.codes[i].description));
        d.field(key, "parent_codes", show_list(a.codes[i].parent_codes),
                show_list(b.codes[i].parent_codes));
      }
    }
  }

  {
    DiffSink d{&report, "splits", &report.splits_equal};
    if (a.splits.size() != b.splits.size()) {
      d("", "row_count", std::to_string(a.splits.size()),
        std::to_string(b.splits.size()));
    } else {
      for (size_t i = 0; i < a.splits.size(); ++i) {
        const std::string key = a.splits[i].subject_id;
        d.field(key, "subject_id", a.splits[i].subject_id,
                b.splits[i].subject_id);
        d.field(key, "split", a.splits[i].split_name, b.splits[i].split_name);
      }
    }
  }

  {
    DiffSink d{&report, "labels", &report.labels_equal};
    if (a.labels.size() != b.labels.size()) {
      d("", "row_count", std::to_string(a.labels.size()),
        std::to_string(b.labels.size()));
    } else {
      for (size_t i = 0; i < a.labels.size(); ++i) {
        const LabelRecord& la = a.labels[i];
        const LabelRecord& lb = b.labels[i];
        const std::string key = std::to_string(i) + ":" + la.subject_id;
        d.field(key, "subject_id", la.subject_id, lb.subject_id);
        d.field(key, "prediction_time",
                format_timestamp(la.prediction_time),
                format_timestamp(lb.prediction_time));
        d.field(key, "boolean_value",
                la.boolean_value ? (*la.boolean_value ? "true" : "false")
                                 : "(absent)",
                lb.boolean_value ? (*lb.boolean_value ? "true" : "false")
                                 : "(absent)");
        d.field(key, "integer_value",
                la.integer_value ? std::to_string(*la.integer_value)
                                 : "(absent)",
                lb.integer_value ? std::to_string(*lb.integer_value)
                                 : "(absent)");
        d.field(key, "float_value", show_double(la.float_value),
                show_double(lb.float_value));
        d.field(key, "categorical_value", show(la.categorical_value),
                show(lb.categorical_value));
      }
    }
  }

  return report;
}

std::string fidelity_json(const FidelityReport& report) {
  nlohmann::ordered_json doc;
  doc["events_equal"] = report.events_equal;
  doc["codes_equal"] = report.codes_equal;
  doc["metadata_equal"] = report.metadata_equal;
  doc["splits_equal"] = report.splits_equal;
  doc["labels_equal"] = report.labels_equal;
  doc["diff_count"] = report.diffs.size();
  nlohmann::ordered_json diffs = nlohmann::ordered_json::array();
  for (const FieldDiff& diff : report.diffs) {
    diffs.push_back({{"table", diff.table},
                     {"key", diff.key},
                     {"field", diff.field},
                     {"expected", diff.expected},
                     {"actual", diff.actual}});
  }
  doc["diffs"] = std::move(diffs);
  return doc.dump(2) + "\n";
}

}  // namespace medsgraph::roundtrip
