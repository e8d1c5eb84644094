#include "medsgraph/mapping.hpp"

#include <atomic>
#include <condition_variable>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "medsgraph/iri.hpp"

namespace medsgraph::mapping {

using meds::CodeRecord;
using meds::DatasetMetadataRecord;
using meds::EventRecord;
using meds::LabelRecord;
using meds::MedsDataset;
using meds::SplitAssignment;
using rdf::Graph;
using rdf::Term;
using rdf::Triple;

std::string derive_dataset_slug(std::string_view dataset_name) {
  std::string slug;
  bool gap = false;
  for (char c : dataset_name) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    const bool keep = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                      c == '-' || c == '.' || c == '_' || c == '~';
    if (keep) {
      if (gap && !slug.empty()) slug += '-';
      gap = false;
      slug += c;
    } else {
      gap = true;
    }
  }
  return slug.empty() ? "dataset" : slug;
}

IriScheme::IriScheme(const MappingContext& ctx)
    : split_table_id_(ctx.split_table_id) {
  if (!iri_is_absolute(ctx.base_iri))
    throw MappingError("base IRI is not absolute: '" + ctx.base_iri + "'");
  if (ctx.dataset_slug.empty())
    throw MappingError("dataset slug must not be empty");
  root_ = ctx.base_iri;
  if (!root_.ends_with('/')) root_ += '/';
  root_ += ctx.dataset_slug;
}

Term IriScheme::subject(std::string_view subject_id) const {
  return Term::iri(root_ + "/subject/" + iri_encode_component(subject_id));
}

Term IriScheme::event(std::string_view shard_name, uint64_t row_index) const {
  return Term::iri(root_ + "/event/" + iri_encode_component(shard_name) + "/" +
                   std::to_string(row_index));
}

Term IriScheme::code(std::string_view code_string) const {
  return Term::iri(root_ + "/code/" + iri_encode_component(code_string));
}

Term IriScheme::dataset() const { return Term::iri(root_ + "/dataset"); }

Term IriScheme::etl() const { return Term::iri(root_ + "/etl"); }

Term IriScheme::split(std::string_view split_name) const {
  return Term::iri(root_ + "/split/" + iri_encode_component(split_table_id_) +
                   "/" + iri_encode_component(split_name));
}

Term IriScheme::label(std::string_view subject_id, uint64_t ordinal) const {
  return Term::iri(root_ + "/label/" + iri_encode_component(subject_id) + "/" +
                   std::to_string(ordinal));
}

Term IriScheme::distribution(uint64_t ordinal) const {
  return Term::iri(root_ + "/distribution/" + std::to_string(ordinal));
}

Term IriScheme::license(std::string_view license_text) const {
  return Term::iri(root_ + "/license/" + iri_encode_component(license_text));
}

Mapper::Mapper(MappingContext ctx)
    : ctx_(std::move(ctx)), vocab_(ctx_.meds_namespace), iris_(ctx_) {}

std::vector<Triple> Mapper::map_event(const EventRecord& event,
                                      std::string_view shard_name,
                                      uint64_t row_index) const {
  if (event.subject_id.empty()) throw MappingError("empty subject_id");
  if (event.code_string.empty()) throw MappingError("empty code_string");

  const Term node = iris_.event(shard_name, row_index);
  std::vector<Triple> out;
  out.reserve(8);
  out.emplace_back(node, vocab_.rdf_type, vocab_.event_class);
  out.emplace_back(node, vocab_.has_subject, iris_.subject(event.subject_id));
  out.emplace_back(node, vocab_.has_code, iris_.code(event.code_string));
  out.emplace_back(node, vocab_.code_string, Term::str(event.code_string));
  if (event.time)
    out.emplace_back(node, vocab_.time, Term::date_time(*event.time));
  if (event.numeric_value)
    out.emplace_back(node, vocab_.numeric_value,
                     Term::real(*event.numeric_value));
  if (event.text_value)
    out.emplace_back(node, vocab_.text_value, Term::str(*event.text_value));
  if (ctx_.include_event_provenance)
    out.emplace_back(node, vocab_.prov_was_derived_from, iris_.dataset());
  return out;
}

std::vector<Triple> Mapper::map_subject(std::string_view subject_id) const {
  if (subject_id.empty()) throw MappingError("empty subject_id");
  const Term node = iris_.subject(subject_id);
  return {
      Triple(node, vocab_.rdf_type, vocab_.subject_class),
      Triple(node, vocab_.subject_id, Term::str(std::string(subject_id))),
  };
}

std::vector<Triple> Mapper::map_code(const CodeRecord& code) const {
  if (code.code_string.empty()) throw MappingError("empty code_string");
  for (const std::string& parent : code.parent_codes) {
    if (parent == code.code_string)
      throw SelfParent("code '" + code.code_string +
                       "' lists itself as a parent");
  }
  const Term node = iris_.code(code.code_string);
  std::vector<Triple> out;
  out.emplace_back(node, vocab_.rdf_type, vocab_.code_class);
  out.emplace_back(node, vocab_.code_string, Term::str(code.code_string));
  if (code.description)
    out.emplace_back(node, vocab_.code_description,
                     Term::str(*code.description));
  for (const std::string& parent : code.parent_codes) {
    const Term parent_node = iris_.code(parent);
    // Parents absent from the code table still become typed Code nodes.
    out.emplace_back(parent_node, vocab_.rdf_type, vocab_.code_class);
    out.emplace_back(node, vocab_.parent_code, parent_node);
  }
  return out;
}

std::vector<Triple> Mapper::map_dataset_metadata(
    const DatasetMetadataRecord& meta) const {
  if (meta.location_uris.empty() && !meta.description_uris.empty())
    throw DanglingAccessUrl(
        "description_uri given without any location_uri: no distribution "
        "node to attach it to");

  const Term dataset = iris_.dataset();
  std::vector<Triple> out;
  out.emplace_back(dataset, vocab_.rdf_type, vocab_.dataset_metadata_class);
  out.emplace_back(dataset, vocab_.dct_title, Term::str(meta.dataset_name));
  out.emplace_back(dataset, vocab_.meds_version, Term::str(meta.meds_version));
  out.emplace_back(dataset, vocab_.dct_created,
                   Term::date_time(meta.created_at));
  if (meta.dataset_version)
    out.emplace_back(dataset, vocab_.dct_has_version,
                     Term::str(*meta.dataset_version));
  if (meta.license) {
    const Term license_node = iris_.license(*meta.license);
    out.emplace_back(license_node, vocab_.rdf_type,
                     vocab_.license_document_class);
    out.emplace_back(dataset, vocab_.dct_license, license_node);
  }
  try {
    for (size_t i = 0; i < meta.location_uris.size(); ++i) {
      const Term dist = iris_.distribution(i);
      out.emplace_back(dataset, vocab_.dcat_distribution, dist);
      out.emplace_back(dist, vocab_.dcat_download_url,
                       Term::iri(meta.location_uris[i]));
    }
    if (!meta.description_uris.empty()) {
      // No stated rule for pairing access URLs with distributions; they all
      // attach to the first one.
      const Term dist = iris_.distribution(0);
      for (const std::string& uri : meta.description_uris)
        out.emplace_back(dist, vocab_.dcat_access_url, Term::iri(uri));
    }
  } catch (const rdf::BadTerm& e) {
    throw MappingError(std::string("bad dataset URI: ") + e.what());
  }
  if (meta.etl_name) {
    const Term etl = iris_.etl();
    out.emplace_back(etl, vocab_.rdf_type, vocab_.activity_class);
    out.emplace_back(etl, vocab_.rdfs_label, Term::str(*meta.etl_name));
    out.emplace_back(dataset, vocab_.prov_was_generated_by, etl);
    if (meta.etl_version)
      out.emplace_back(etl, vocab_.dct_has_version,
                       Term::str(*meta.etl_version));
  }
  return out;
}

std::vector<Triple> Mapper::map_split(const SplitAssignment& a) const {
  if (a.subject_id.empty()) throw MappingError("empty subject_id");
  if (a.split_name.empty()) throw MappingError("empty split name");
  const Term split_node = iris_.split(a.split_name);
  return {
      Triple(split_node, vocab_.rdf_type, vocab_.subject_split_class),
      Triple(iris_.subject(a.subject_id), vocab_.assigned_split, split_node),
  };
}

std::vector<Triple> Mapper::map_label(const LabelRecord& label,
                                      uint64_t ordinal) const {
  const int variants = label.value_variant_count();
  if (variants > 1)
    throw MultipleLabelValues("label carries " + std::to_string(variants) +
                              " value variants; exactly one is allowed");
  if (variants == 0) throw NoLabelValue("label carries no value");
  return map_label_unchecked(label, ordinal);
}

std::vector<Triple> Mapper::map_label_unchecked(const LabelRecord& label,
                                                uint64_t ordinal) const {
  if (label.subject_id.empty()) throw MappingError("empty subject_id");
  const Term node = iris_.label(label.subject_id, ordinal);
  std::vector<Triple> out;
  out.emplace_back(node, vocab_.rdf_type, vocab_.subject_label_class);
  out.emplace_back(node, vocab_.has_subject, iris_.subject(label.subject_id));
  out.emplace_back(node, vocab_.prediction_time,
                   Term::date_time(label.prediction_time));
  if (label.boolean_value)
    out.emplace_back(node, vocab_.boolean_value,
                     Term::boolean(*label.boolean_value));
  if (label.integer_value)
    out.emplace_back(node, vocab_.integer_value,
                     Term::integer(*label.integer_value));
  if (label.float_value)
    out.emplace_back(node, vocab_.float_value, Term::real(*label.float_value));
  if (label.categorical_value)
    out.emplace_back(node, vocab_.categorical_value,
                     Term::str(*label.categorical_value));
  return out;
}

namespace {

void insert_all(Graph& g, const std::vector<Triple>& triples) {
  for (const Triple& t : triples) g.insert(t);
}

struct IssueSink {
  Strictness strictness;
  std::vector<ConvertIssue>* issues;

  // Runs fn; in Collect mode a mapping failure becomes an issue, in
  // FailFast mode it propagates with the record coordinates prepended.
  template <typename Fn>
  bool guard(const std::string& where, Fn&& fn) {
    try {
      fn();
      return true;
    } catch (const SelfParent& e) {
      return handle<SelfParent>(where, e.what());
    } catch (const DanglingAccessUrl& e) {
      return handle<DanglingAccessUrl>(where, e.what());
    } catch (const MultipleLabelValues& e) {
      return handle<MultipleLabelValues>(where, e.what());
    } catch (const NoLabelValue& e) {
      return handle<NoLabelValue>(where, e.what());
    } catch (const MappingError& e) {
      return handle<MappingError>(where, e.what());
    } catch (const rdf::BadTerm& e) {
      return handle<MappingError>(where, e.what());
    }
  }

  template <typename Error>
  bool handle(const std::string& where, const std::string& message) {
    if (strictness == Strictness::FailFast)
      throw Error(where + ": " + message);
    issues->push_back({where, message});
    return false;
  }
};

// Event plus the bookkeeping nodes it implies: its subject and its code
// (typed and labeled even when the code table never mentions it).
void emit_event(const Mapper& mapper, std::string_view shard, uint64_t row,
                const EventRecord& event, Graph& g, IssueSink& sink) {
  sink.guard(std::string(shard) + ":" + std::to_string(row), [&] {
    insert_all(g, mapper.map_event(event, shard, row));
    insert_all(g, mapper.map_subject(event.subject_id));
    const Term code_node = mapper.iris().code(event.code_string);
    g.insert(code_node, mapper.vocab().rdf_type, mapper.vocab().code_class);
    g.insert(code_node, mapper.vocab().code_string,
             Term::str(event.code_string));
  });
}

// Everything except the event stream: dataset metadata, the code table,
// splits, labels, and the subject nodes splits/labels imply.
void emit_static(const Mapper& mapper, const MedsDataset& dataset, Graph& g,
                 IssueSink& sink) {
  const bool ok = sink.guard("metadata", [&] {
    insert_all(g, mapper.map_dataset_metadata(dataset.metadata));
  });
  if (!ok) {
    // Collect mode: fall back to the metadata without its access URLs so
    // the dataset node itself still materializes.
    DatasetMetadataRecord stripped = dataset.metadata;
    stripped.description_uris.clear();
    sink.guard("metadata", [&] {
      insert_all(g, mapper.map_dataset_metadata(stripped));
    });
  }

  for (size_t i = 0; i < dataset.codes.size(); ++i) {
    const bool mapped = sink.guard("codes[" + std::to_string(i) + "]", [&] {
      insert_all(g, mapper.map_code(dataset.codes[i]));
    });
    if (!mapped) {
      CodeRecord stripped = dataset.codes[i];
      std::erase(stripped.parent_codes, stripped.code_string);
      sink.guard("codes[" + std::to_string(i) + "]",
                 [&] { insert_all(g, mapper.map_code(stripped)); });
    }
  }

  for (size_t i = 0; i < dataset.splits.size(); ++i) {
    sink.guard("splits[" + std::to_string(i) + "]", [&] {
      insert_all(g, mapper.map_split(dataset.splits[i]));
      insert_all(g, mapper.map_subject(dataset.splits[i].subject_id));
    });
  }

  // Label identity is (subject, per-subject ordinal in table order).
  std::unordered_map<std::string, uint64_t> label_ordinals;
  for (size_t i = 0; i < dataset.labels.size(); ++i) {
    const LabelRecord& label = dataset.labels[i];
    const uint64_t ordinal = label_ordinals[label.subject_id]++;
    sink.guard("labels[" + std::to_string(i) + "]", [&] {
      // The value-exclusivity rule is deliberately left to the validator:
      // a label with zero or several values maps as-is and is reported by
      // the exclusive-group constraint, not here.
      insert_all(g, mapper.map_label_unchecked(label, ordinal));
      insert_all(g, mapper.map_subject(label.subject_id));
    });
  }
}

}  // namespace

ConvertResult convert(const MedsDataset& dataset, MappingContext ctx,
                      Strictness strictness) {
  if (ctx.dataset_slug.empty())
    ctx.dataset_slug = derive_dataset_slug(dataset.metadata.dataset_name);
  const Mapper mapper(ctx);
  ConvertResult result;
  IssueSink sink{strictness, &result.issues};
  emit_static(mapper, dataset, result.graph, sink);
  for (const meds::EventShard& shard : dataset.shards) {
    for (size_t row = 0; row < shard.events.size(); ++row)
      emit_event(mapper, shard.name, row, shard.events[row], result.graph,
                 sink);
  }
  return result;
}

namespace {

struct ShardResult {
  Graph graph;
  std::vector<ConvertIssue> issues;
  std::exception_ptr error;
};

ShardResult map_one_shard(const std::filesystem::path& root,
                          const std::string& shard, const Mapper& mapper,
                          Strictness strictness, const meds::WarnFn& warn) {
  ShardResult result;
  IssueSink sink{strictness, &result.issues};
  try {
    meds::for_each_event_in_shard(
        root, shard,
        [&](uint64_t row, const EventRecord& event) {
          emit_event(mapper, shard, row, event, result.graph, sink);
        },
        warn);
  } catch (const meds::IngestError& e) {
    if (strictness == Strictness::FailFast) throw;
    // An unreadable row aborts the rest of its shard; report it whole.
    result.issues.push_back(
        {shard, std::string("shard aborted: ") + e.what()});
  }
  return result;
}

}  // namespace

ConvertResult convert_root(const std::filesystem::path& root,
                           MappingContext ctx, Strictness strictness,
                           unsigned threads, const meds::WarnFn& warn) {
  const DatasetMetadataRecord metadata = meds::load_dataset_metadata(root);
  MedsDataset static_part;
  static_part.metadata = metadata;
  static_part.codes = meds::load_codes(root, warn);
  static_part.splits = meds::load_splits(root, warn);
  static_part.labels = meds::load_labels(root, warn);

  if (ctx.dataset_slug.empty())
    ctx.dataset_slug = derive_dataset_slug(metadata.dataset_name);
  const Mapper mapper(ctx);

  ConvertResult result;
  IssueSink sink{strictness, &result.issues};
  emit_static(mapper, static_part, result.graph, sink);

  const std::vector<std::string> shards = meds::list_event_shards(root);
  if (threads <= 1 || shards.size() <= 1) {
    for (const std::string& shard : shards) {
      ShardResult r = map_one_shard(root, shard, mapper, strictness, warn);
      result.graph.merge(r.graph);
      result.issues.insert(result.issues.end(), r.issues.begin(),
                           r.issues.end());
    }
    return result;
  }

  // Workers claim shards by index; the main thread merges them back in
  // shard order, so the resulting graph is identical to the serial run.
  std::mutex mu;
  std::condition_variable ready_cv;
  std::vector<std::unique_ptr<ShardResult>> done(shards.size());
  std::atomic<size_t> next{0};
  const auto n_workers =
      static_cast<unsigned>(std::min<size_t>(threads, shards.size()));
  std::vector<std::thread> workers;
  workers.reserve(n_workers);
  for (unsigned w = 0; w < n_workers; ++w) {
    workers.emplace_back([&] {
      for (;;) {
        const size_t index = next.fetch_add(1);
        if (index >= shards.size()) return;
        auto r = std::make_unique<ShardResult>();
        try {
          *r = map_one_shard(root, shards[index], mapper, strictness, warn);
        } catch (...) {
          r->error = std::current_exception();
        }
        std::lock_guard<std::mutex> lock(mu);
        done[index] = std::move(r);
        ready_cv.notify_all();
      }
    });
  }

  std::exception_ptr first_error;
  for (size_t index = 0; index < shards.size(); ++index) {
    std::unique_ptr<ShardResult> r;
    {
      std::unique_lock<std::mutex> lock(mu);
      ready_cv.wait(lock, [&] { return done[index] != nullptr; });
      r = std::move(done[index]);
    }
    if (r->error && !first_error) first_error = r->error;
    if (first_error) continue;  // drain remaining shards, keep the first
    result.graph.merge(r->graph);
    result.issues.insert(result.issues.end(), r->issues.begin(),
                         r->issues.end());
  }
  for (std::thread& worker : workers) worker.join();
  if (first_error) std::rethrow_exception(first_error);
  return result;
}

}  // namespace medsgraph::mapping
