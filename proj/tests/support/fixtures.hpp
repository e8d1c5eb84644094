// Shared dataset fixtures and independent counting oracles. The oracles
// tally node and triple counts straight from the input records by applying
// the per-table triple templates by hand; they never touch the mapping
// code, so they can check it.
#pragma once

#include <set>
#include <string>

#include "medsgraph/mapping.hpp"
#include "medsgraph/records.hpp"
#include "medsgraph/synth.hpp"
#include "medsgraph/timestamp.hpp"

namespace medsgraph::test {

inline MicroTimestamp ts(const char* iso) { return *parse_timestamp(iso); }

inline meds::DatasetMetadataRecord minimal_metadata() {
  meds::DatasetMetadataRecord meta;
  meta.dataset_name = "fixture";
  meta.meds_version = "0.3.3";
  meta.created_at = ts("2025-03-01T12:00:00Z");
  return meta;
}

inline meds::DatasetMetadataRecord full_metadata() {
  meds::DatasetMetadataRecord meta = minimal_metadata();
  meta.dataset_version = "2.1";
  meta.license = "CC-BY-4.0";
  meta.location_uris = {"https://data.example.org/fixture/a.parquet",
                        "https://data.example.org/fixture/b.parquet"};
  meta.description_uris = {"https://docs.example.org/fixture"};
  meta.etl_name = "MEDS-extract";
  meta.etl_version = "0.5.0";
  return meta;
}

// 3 events, 2 subjects, 2 codes, 1 split assignment. Subject rows are
// contiguous with the static (timeless) row first.
inline meds::MedsDataset three_event_fixture() {
  meds::MedsDataset ds;
  ds.metadata = minimal_metadata();
  ds.codes = {
      {"ATC:C08CA06", "Nimodipine", {}},
      {"ICD10:I60", std::nullopt, {}},
  };
  meds::EventShard shard;
  shard.name = "s0";
  shard.events = {
      {"10234", "ICD10:I60", std::nullopt, 4.5, std::nullopt},
      {"10234", "ATC:C08CA06", ts("2024-05-01T08:00:00Z"), std::nullopt,
       std::nullopt},
      {"777", "ATC:C08CA06", ts("2024-05-02T09:30:00Z"), std::nullopt,
       std::string("note")},
  };
  ds.shards.push_back(std::move(shard));
  ds.splits = {{"10234", "train"}};
  return ds;
}

// Distinct graph subjects implied by the records:
//   events + subjects + codes (incl. parents and event-only codes)
//   + 1 dataset + split names + etl? + labels + distributions + license?
inline uint64_t oracle_distinct_graph_subjects(const meds::MedsDataset& ds) {
  std::set<std::string> subjects;
  std::set<std::string> codes;
  std::set<std::string> split_names;
  uint64_t events = 0;
  for (const meds::EventShard& shard : ds.shards) {
    events += shard.events.size();
    for (const meds::EventRecord& e : shard.events) {
      subjects.insert(e.subject_id);
      codes.insert(e.code_string);
    }
  }
  for (const meds::CodeRecord& c : ds.codes) {
    codes.insert(c.code_string);
    for (const std::string& p : c.parent_codes) codes.insert(p);
  }
  for (const meds::SplitAssignment& s : ds.splits) {
    subjects.insert(s.subject_id);
    split_names.insert(s.split_name);
  }
  for (const meds::LabelRecord& l : ds.labels) subjects.insert(l.subject_id);
  return events + subjects.size() + codes.size() + 1 + split_names.size() +
         (ds.metadata.etl_name ? 1 : 0) + ds.labels.size() +
         ds.metadata.location_uris.size() + (ds.metadata.license ? 1 : 0);
}

// Whole-graph triple count from the per-table templates. Assumes what the
// generator guarantees: unique (subject, split) pairs, unique code rows,
// no duplicate parent edges.
inline uint64_t oracle_triple_count(const meds::MedsDataset& ds,
                                    bool event_provenance = true) {
  uint64_t total = 0;

  const meds::DatasetMetadataRecord& m = ds.metadata;
  total += 4;  // type, title, medsVersion, created
  total += m.dataset_version ? 1 : 0;
  total += m.license ? 2 : 0;
  total += 2 * m.location_uris.size();
  if (!m.location_uris.empty()) {
    const std::set<std::string> desc(m.description_uris.begin(),
                                     m.description_uris.end());
    total += desc.size();
  }
  if (m.etl_name) total += 3 + (m.etl_version ? 1 : 0);

  std::set<std::string> subjects;
  std::set<std::string> with_code_string;  // event or table codes
  std::set<std::string> all_codes;
  std::set<std::string> split_names;
  for (const meds::EventShard& shard : ds.shards) {
    for (const meds::EventRecord& e : shard.events) {
      total += 4 + (e.time ? 1 : 0) + (e.numeric_value ? 1 : 0) +
               (e.text_value ? 1 : 0) + (event_provenance ? 1 : 0);
      subjects.insert(e.subject_id);
      with_code_string.insert(e.code_string);
      all_codes.insert(e.code_string);
    }
  }
  for (const meds::CodeRecord& c : ds.codes) {
    with_code_string.insert(c.code_string);
    all_codes.insert(c.code_string);
    total += c.description ? 1 : 0;
    total += c.parent_codes.size();  // parentCode edges
    for (const std::string& p : c.parent_codes) all_codes.insert(p);
  }
  total += all_codes.size();         // one type triple per code node
  total += with_code_string.size();  // codeString on event/table codes
  for (const meds::SplitAssignment& s : ds.splits) {
    subjects.insert(s.subject_id);
    split_names.insert(s.split_name);
    total += 1;  // assignedSplit
  }
  total += split_names.size();  // split node types
  for (const meds::LabelRecord& l : ds.labels) {
    subjects.insert(l.subject_id);
    total += 3 + static_cast<uint64_t>(l.value_variant_count());
  }
  total += 2 * subjects.size();
  return total;
}

// Deterministic config variation for property campaigns.
inline synth::SynthConfig random_config(uint64_t seed) {
  synth::Splitmix64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  synth::SynthConfig cfg;
  cfg.seed = seed;
  cfg.n_subjects = 2 + static_cast<uint32_t>(rng.below(40));
  cfg.events_per_subject_min = static_cast<uint32_t>(rng.below(3));
  cfg.events_per_subject_max =
      cfg.events_per_subject_min + 1 + static_cast<uint32_t>(rng.below(8));
  cfg.p_time = rng.next_double();
  cfg.p_numeric = rng.next_double() * 0.6;
  cfg.p_text = rng.next_double() * 0.4;
  cfg.n_codes = 3 + static_cast<uint32_t>(rng.below(30));
  cfg.code_hierarchy_depth = 1 + static_cast<uint32_t>(rng.below(3));
  switch (rng.below(3)) {
    case 0:
      cfg.split_fractions = {{"train", 1.0}};
      break;
    case 1:
      cfg.split_fractions = {{"train", 0.7}, {"held_out", 0.3}};
      break;
    default:
      cfg.split_fractions = {{"train", 0.8}, {"tuning", 0.1}, {"held_out", 0.1}};
  }
  cfg.labels_per_subject_min = 0;
  cfg.labels_per_subject_max = static_cast<uint32_t>(rng.below(3));
  cfg.label_kind = static_cast<synth::LabelKind>(rng.below(4));
  return cfg;
}

}  // namespace medsgraph::test
