#include "medsgraph/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>

namespace medsgraph::synth {

using meds::CodeRecord;
using meds::EventRecord;
using meds::EventShard;
using meds::LabelRecord;
using meds::MedsDataset;
using meds::SplitAssignment;

namespace {

constexpr size_t kMaxEventsPerShard = 100'000;
// 2024-01-01T00:00:00Z
constexpr int64_t kBaseMicros = 1'704'067'200'000'000;

std::string zero_padded(uint64_t value, int width) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%0*llu", width,
                static_cast<unsigned long long>(value));
  return buf;
}

void check(const SynthConfig& cfg) {
  const auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!in_unit(cfg.p_time) || !in_unit(cfg.p_numeric) || !in_unit(cfg.p_text))
    throw BadSynthConfig("probabilities must lie in [0, 1]");
  if (cfg.events_per_subject_min > cfg.events_per_subject_max)
    throw BadSynthConfig("events_per_subject range is inverted");
  if (cfg.labels_per_subject_min > cfg.labels_per_subject_max)
    throw BadSynthConfig("labels_per_subject range is inverted");
  if (cfg.n_codes == 0) throw BadSynthConfig("need at least one code");
  if (cfg.code_hierarchy_depth == 0)
    throw BadSynthConfig("code_hierarchy_depth must be at least 1");
  if (cfg.split_fractions.empty())
    throw BadSynthConfig("need at least one split");
  double sum = 0;
  for (const auto& [name, fraction] : cfg.split_fractions) {
    if (name.empty()) throw BadSynthConfig("split name must not be empty");
    if (fraction < 0) throw BadSynthConfig("split fractions must be >= 0");
    sum += fraction;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw BadSynthConfig("split fractions must sum to 1");
}

double random_numeric(Splitmix64& rng) {
  switch (rng.below(4)) {
    case 0:  // integer-valued
      return static_cast<double>(static_cast<int64_t>(rng.below(2001)) - 1000);
    case 1:  // three decimals
      return static_cast<double>(rng.below(1'000'000)) / 1000.0;
    case 2:
      return rng.next_double() * 1000.0;
    default: {  // arbitrary finite bit pattern
      for (;;) {
        const uint64_t bits = rng.next();
        double value;
        std::memcpy(&value, &bits, sizeof(value));
        if (std::isfinite(value)) return value;
      }
    }
  }
}

std::string random_text(Splitmix64& rng, uint64_t salt) {
  switch (rng.below(5)) {
    case 0:
      return "note " + std::to_string(salt);
    case 1:
      return "line one\nline two";
    case 2:
      return "tab\tseparated \"quoted\"";
    case 3:
      return "unicode: π ≈ 3, naïve";
    default:
      return "result " + std::to_string(rng.below(1000)) + " of " +
             std::to_string(salt);
  }
}

}  // namespace

MedsDataset generate(const SynthConfig& cfg) {
  check(cfg);
  Splitmix64 rng(cfg.seed);
  MedsDataset out;

  // Dataset descriptor first, so its draws do not depend on corpus size.
  {
    auto& meta = out.metadata;
    meta.dataset_name = "synth-seed-" + std::to_string(cfg.seed);
    if (rng.chance(0.8))
      meta.dataset_version = "1." + std::to_string(rng.below(10)) + "." +
                             std::to_string(rng.below(10));
    meta.meds_version = "0.3.3";
    meta.created_at =
        MicroTimestamp(kBaseMicros + static_cast<int64_t>(rng.below(86'400)) *
                                         1'000'000);
    if (rng.chance(0.5)) {
      static constexpr const char* kLicenses[] = {"CC-BY-4.0", "Apache-2.0",
                                                  "ODC-By 1.0"};
      meta.license = kLicenses[rng.below(3)];
    }
    const uint64_t locations = rng.below(3);
    for (uint64_t i = 0; i < locations; ++i)
      meta.location_uris.push_back("https://data.example.org/" +
                                   meta.dataset_name + "/part-" +
                                   std::to_string(i) + ".parquet");
    if (locations > 0) {
      const uint64_t descriptions = rng.below(3);
      for (uint64_t i = 0; i < descriptions; ++i)
        meta.description_uris.push_back("https://docs.example.org/" +
                                        meta.dataset_name + "/" +
                                        static_cast<char>('a' + i));
    }
    if (rng.chance(0.7)) {
      meta.etl_name = "synth-meds-generator";
      if (rng.chance(0.9))
        meta.etl_version = "0.1." + std::to_string(rng.below(5));
    }
  }

  // Code table with an optional hierarchy: level of code i is i mod depth,
  // parents come from the previous level.
  for (uint32_t i = 0; i < cfg.n_codes; ++i) {
    CodeRecord code;
    code.code_string = "SYN:" + zero_padded(i, 4);
    if (rng.chance(0.15)) code.code_string += "/sub type";
    if (rng.chance(0.6)) {
      code.description = "Synthetic concept " + std::to_string(i);
      if (rng.chance(0.2)) *code.description += " (é)";
    }
    const uint32_t level = i % cfg.code_hierarchy_depth;
    if (level > 0) {
      const uint32_t parents = 1 + (rng.chance(0.25) ? 1 : 0);
      for (uint32_t p = 0; p < parents; ++p) {
        // Codes at the previous level have index i-1, i-1-depth, ...
        const uint64_t candidates = (i - 1) / cfg.code_hierarchy_depth + 1;
        const uint64_t pick = rng.below(candidates);
        const uint64_t parent_index =
            (i - 1) - pick * cfg.code_hierarchy_depth;
        std::string parent = out.codes[parent_index].code_string;
        if (std::find(code.parent_codes.begin(), code.parent_codes.end(),
                      parent) == code.parent_codes.end())
          code.parent_codes.push_back(std::move(parent));
      }
    }
    out.codes.push_back(std::move(code));
  }

  // Subjects, events, splits, labels.
  EventShard current;
  size_t shard_index = 0;
  current.name = zero_padded(shard_index, 5);
  double cumulative = 0;
  std::vector<std::pair<std::string, double>> cutoffs;
  for (const auto& [name, fraction] : cfg.split_fractions) {
    cumulative += fraction;
    cutoffs.emplace_back(name, cumulative);
  }
  const auto pick_split = [&](double u) -> const std::string& {
    for (const auto& [name, cutoff] : cutoffs)
      if (u < cutoff) return name;
    return cutoffs.back().first;
  };

  for (uint32_t s = 0; s < cfg.n_subjects; ++s) {
    std::string subject_id = "subj-" + zero_padded(s, 6);
    if (rng.chance(0.08)) subject_id += "/grp " + std::to_string(rng.below(7));

    const auto n_events = static_cast<uint32_t>(
        rng.range(cfg.events_per_subject_min, cfg.events_per_subject_max));
    std::vector<EventRecord> timed;
    std::vector<EventRecord> untimed;
    const int64_t subject_base =
        kBaseMicros + static_cast<int64_t>(s) * 3'600'000'000LL;
    int64_t clock = subject_base;
    for (uint32_t e = 0; e < n_events; ++e) {
      EventRecord event;
      event.subject_id = subject_id;
      event.code_string = out.codes[rng.below(cfg.n_codes)].code_string;
      const bool has_time = rng.chance(cfg.p_time);
      if (has_time) {
        clock += static_cast<int64_t>(rng.range(5, 600)) * 60'000'000LL;
        event.time = MicroTimestamp(clock);
      }
      if (rng.chance(cfg.p_numeric)) event.numeric_value = random_numeric(rng);
      if (rng.chance(cfg.p_text)) event.text_value = random_text(rng, e);
      (has_time ? timed : untimed).push_back(std::move(event));
    }
    // Subject contiguity: static rows first, then time-ascending (already
    // ascending by construction).
    for (auto& event : untimed) current.events.push_back(std::move(event));
    for (auto& event : timed) current.events.push_back(std::move(event));
    if (current.events.size() >= kMaxEventsPerShard) {
      out.shards.push_back(std::move(current));
      current = EventShard{};
      current.name = zero_padded(++shard_index, 5);
    }

    out.splits.push_back({subject_id, pick_split(rng.next_double())});

    const auto n_labels = static_cast<uint32_t>(
        rng.range(cfg.labels_per_subject_min, cfg.labels_per_subject_max));
    for (uint32_t l = 0; l < n_labels; ++l) {
      LabelRecord label;
      label.subject_id = subject_id;
      label.prediction_time = MicroTimestamp(
          subject_base + static_cast<int64_t>(rng.below(172'800)) * 1'000'000);
      switch (cfg.label_kind) {
        case LabelKind::Boolean:
          label.boolean_value = rng.chance(0.5);
          break;
        case LabelKind::Integer:
          label.integer_value = static_cast<int64_t>(rng.below(2001)) - 1000;
          break;
        case LabelKind::Float:
          label.float_value = random_numeric(rng);
          break;
        case LabelKind::Categorical: {
          static constexpr const char* kCategories[] = {"alpha", "beta",
                                                        "gamma"};
          label.categorical_value = kCategories[rng.below(3)];
          break;
        }
      }
      out.labels.push_back(std::move(label));
    }
  }
  if (!current.events.empty() || out.shards.empty())
    out.shards.push_back(std::move(current));

  // A few split-only subjects exercise the subjects-without-events path.
  if (cfg.n_subjects > 0 && rng.chance(0.3)) {
    const uint64_t extras = 1 + rng.below(2);
    for (uint64_t i = 0; i < extras; ++i)
      out.splits.push_back({"extra-" + zero_padded(i, 3),
                            pick_split(rng.next_double())});
  }
  return out;
}

}  // namespace medsgraph::synth
