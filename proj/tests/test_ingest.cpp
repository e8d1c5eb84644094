#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "medsgraph/meds_reader.hpp"
#include "medsgraph/meds_writer.hpp"
#include "medsgraph/parquet.hpp"
#include "support/fixtures.hpp"

using namespace medsgraph;
using test::three_event_fixture;
using test::ts;
namespace fs = std::filesystem;

namespace {

fs::path temp_root(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "medsgraph-ingest-tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_descriptor(const fs::path& root, const char* body) {
  fs::create_directories(root / "metadata");
  fs::create_directories(root / "data");
  std::ofstream(root / "metadata" / "dataset.json") << body;
}

constexpr const char* kMinimalDescriptor =
    R"({"dataset_name":"t","meds_version":"0.3.3","created_at":"2025-01-01T00:00:00Z"})";

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("write/load round trip preserves every table") {
  meds::MedsDataset ds = three_event_fixture();
  ds.metadata = test::full_metadata();
  ds.codes[0].parent_codes = {"ATC:C08CA"};
  ds.labels = {
      {"10234", ts("2024-05-03T00:00:00Z"), std::nullopt, std::nullopt,
       std::nullopt, std::string("rehabilitation")},
      {"10234", ts("2024-05-04T00:00:00Z"), true, std::nullopt, std::nullopt,
       std::nullopt},
  };
  const fs::path root = temp_root("roundtrip");
  meds::write_meds_root(ds, root);

  const meds::MedsDataset loaded = meds::load_dataset(root);
  CHECK(loaded == ds);

  // Re-loading is stable.
  CHECK(meds::load_dataset(root) == loaded);
}

TEST_CASE("streaming yields shard-lexicographic then row order") {
  meds::MedsDataset ds;
  ds.metadata = test::minimal_metadata();
  ds.shards.push_back(
      {"0.x", {{"a", "C1", std::nullopt, std::nullopt, std::nullopt},
               {"a", "C2", ts("2024-01-01T00:00:00Z"), std::nullopt,
                std::nullopt}}});
  ds.shards.push_back(
      {"1.x", {{"b", "C1", std::nullopt, std::nullopt, std::nullopt}}});
  const fs::path root = temp_root("ordering");
  meds::write_meds_root(ds, root);

  std::vector<std::pair<std::string, uint64_t>> seen;
  meds::for_each_event(root, [&](std::string_view shard, uint64_t row,
                                 const meds::EventRecord&) {
    seen.emplace_back(std::string(shard), row);
  });
  const std::vector<std::pair<std::string, uint64_t>> expected = {
      {"0.x", 0}, {"0.x", 1}, {"1.x", 0}};
  CHECK(seen == expected);

  // load_dataset events equal the streamed sequence, in order.
  const meds::MedsDataset loaded = meds::load_dataset(root);
  std::vector<meds::EventRecord> streamed;
  meds::for_each_event(root,
                       [&](std::string_view, uint64_t,
                           const meds::EventRecord& e) { streamed.push_back(e); });
  std::vector<meds::EventRecord> materialized;
  for (const meds::EventShard& shard : loaded.shards)
    for (const meds::EventRecord& e : shard.events)
      materialized.push_back(e);
  CHECK(streamed == materialized);
}

TEST_CASE("nested shard directories order by relative path") {
  meds::MedsDataset ds;
  ds.metadata = test::minimal_metadata();
  ds.shards.push_back(
      {"train/1", {{"a", "C", std::nullopt, std::nullopt, std::nullopt}}});
  ds.shards.push_back(
      {"held_out/0", {{"b", "C", std::nullopt, std::nullopt, std::nullopt}}});
  const fs::path root = temp_root("nested");
  meds::write_meds_root(ds, root);
  CHECK(meds::list_event_shards(root) ==
        std::vector<std::string>{"held_out/0", "train/1"});
}

TEST_CASE("empty data directory yields an empty stream") {
  const fs::path root = temp_root("empty");
  write_descriptor(root, kMinimalDescriptor);
  size_t calls = 0;
  meds::for_each_event(root, [&](std::string_view, uint64_t,
                                 const meds::EventRecord&) { ++calls; });
  CHECK(calls == 0);
  const meds::MedsDataset loaded = meds::load_dataset(root);
  CHECK(loaded.event_count() == 0);
  CHECK(loaded.codes.empty());
  CHECK(loaded.labels.empty());
}

TEST_CASE("missing descriptor raises MissingMetadata") {
  const fs::path root = temp_root("nodesc");
  fs::create_directories(root / "data");
  CHECK_THROWS_AS(meds::load_dataset(root), meds::MissingMetadata);
  CHECK_THROWS_AS(meds::load_dataset(root / "does-not-exist"),
                  meds::MissingMetadata);
}

TEST_CASE("descriptor validation") {
  const fs::path root = temp_root("desc");

  write_descriptor(root, R"({"meds_version":"0.3.3","created_at":"2025-01-01T00:00:00Z"})");
  CHECK_THROWS_AS(meds::load_dataset_metadata(root), meds::SchemaMismatch);

  write_descriptor(root, R"({"dataset_name":"t","meds_version":"0.3.3","created_at":"yesterday"})");
  CHECK_THROWS_AS(meds::load_dataset_metadata(root), meds::SchemaMismatch);

  write_descriptor(root, R"(not json)");
  CHECK_THROWS_AS(meds::load_dataset_metadata(root), meds::SchemaMismatch);

  write_descriptor(
      root,
      R"({"dataset_name":"t","meds_version":"0.3.3","created_at":"2025-01-01T00:00:00Z","etl_version":"1.0"})");
  CHECK_THROWS_AS(meds::load_dataset_metadata(root), meds::SchemaMismatch);

  // location_uri accepts a bare string or an array.
  write_descriptor(
      root,
      R"({"dataset_name":"t","meds_version":"0.3.3","created_at":"2025-01-01T00:00:00Z","license":null,"location_uri":"https://x.example/d"})");
  const auto meta = meds::load_dataset_metadata(root);
  CHECK(meta.location_uris == std::vector<std::string>{"https://x.example/d"});
  CHECK(!meta.license.has_value());
}

TEST_CASE("malformed shard raises ShardParseError with the path") {
  const fs::path root = temp_root("badshard");
  write_descriptor(root, kMinimalDescriptor);
  std::ofstream(root / "data" / "bad.parquet") << "PAR1 garbage here PAR1";
  try {
    meds::load_dataset(root);
    FAIL("expected ShardParseError");
  } catch (const meds::ShardParseError& e) {
    CHECK(e.shard().find("bad.parquet") != std::string::npos);
  }
}

TEST_CASE("wrong column type raises SchemaMismatch") {
  const fs::path root = temp_root("badtype");
  write_descriptor(root, kMinimalDescriptor);
  {
    parquet::FileWriter writer(root / "data" / "0.parquet",
                               {{"subject_id", parquet::ColumnType::String, true},
                                {"code", parquet::ColumnType::Double, true}});
    parquet::RowBatch batch;
    batch.reserve(2);
    batch.rows = 1;
    auto& s = batch.add("subject_id", parquet::ColumnType::String);
    s.present = {1};
    s.strings = {"a"};
    auto& c = batch.add("code", parquet::ColumnType::Double);
    c.present = {1};
    c.doubles = {1.0};
    writer.write(batch);
    writer.close();
  }
  CHECK_THROWS_AS(meds::load_dataset(root), meds::SchemaMismatch);
}

TEST_CASE("null or empty required values raise row-scoped errors") {
  const fs::path root = temp_root("nullreq");
  write_descriptor(root, kMinimalDescriptor);
  {
    parquet::FileWriter writer(
        root / "data" / "0.parquet",
        {{"subject_id", parquet::ColumnType::String, true},
         {"code", parquet::ColumnType::String, false}});
    parquet::RowBatch batch;
    batch.reserve(2);
    batch.rows = 2;
    auto& s = batch.add("subject_id", parquet::ColumnType::String);
    s.present = {1, 1};
    s.strings = {"a", "b"};
    auto& c = batch.add("code", parquet::ColumnType::String);
    c.present = {1, 0};  // null code in row 1
    c.strings = {"C1", ""};
    writer.write(batch);
    writer.close();
  }
  try {
    meds::load_dataset(root);
    FAIL("expected ShardParseError");
  } catch (const meds::ShardParseError& e) {
    CHECK(e.row() == 1);
  }
}

TEST_CASE("integer subject ids load as decimal strings") {
  const fs::path root = temp_root("intids");
  write_descriptor(root, kMinimalDescriptor);
  {
    parquet::FileWriter writer(root / "data" / "0.parquet",
                               {{"subject_id", parquet::ColumnType::Int64, true},
                                {"code", parquet::ColumnType::String, true}});
    parquet::RowBatch batch;
    batch.reserve(2);
    batch.rows = 2;
    auto& s = batch.add("subject_id", parquet::ColumnType::Int64);
    s.present = {1, 1};
    s.ints = {10234, -5};
    auto& c = batch.add("code", parquet::ColumnType::String);
    c.present = {1, 1};
    c.strings = {"C1", "C2"};
    writer.write(batch);
    writer.close();
  }
  const meds::MedsDataset loaded = meds::load_dataset(root);
  REQUIRE(loaded.event_count() == 2);
  CHECK(loaded.shards[0].events[0].subject_id == "10234");
  CHECK(loaded.shards[0].events[1].subject_id == "-5");
}

TEST_CASE("unknown event columns warn and are ignored") {
  const fs::path root = temp_root("unknowncol");
  write_descriptor(root, kMinimalDescriptor);
  {
    parquet::FileWriter writer(root / "data" / "0.parquet",
                               {{"subject_id", parquet::ColumnType::String, true},
                                {"code", parquet::ColumnType::String, true},
                                {"bonus", parquet::ColumnType::Int64, false}});
    parquet::RowBatch batch;
    batch.reserve(3);
    batch.rows = 1;
    auto& s = batch.add("subject_id", parquet::ColumnType::String);
    s.present = {1};
    s.strings = {"a"};
    auto& c = batch.add("code", parquet::ColumnType::String);
    c.present = {1};
    c.strings = {"C1"};
    auto& b = batch.add("bonus", parquet::ColumnType::Int64);
    b.present = {1};
    b.ints = {9};
    writer.write(batch);
    writer.close();
  }
  std::vector<std::string> warnings;
  const meds::MedsDataset loaded = meds::load_dataset(
      root, [&](const std::string& w) { warnings.push_back(w); });
  CHECK(loaded.event_count() == 1);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("bonus") != std::string::npos);
}

TEST_CASE("duplicate parent codes are dropped with a warning") {
  const fs::path root = temp_root("dupparents");
  write_descriptor(root, kMinimalDescriptor);
  meds::MedsDataset ds;
  ds.metadata = test::minimal_metadata();
  ds.shards.push_back(
      {"0", {{"a", "C1", std::nullopt, std::nullopt, std::nullopt}}});
  ds.codes = {{"C1", std::nullopt, {"P1", "P1", "P2"}}};
  meds::write_meds_root(ds, root);
  std::vector<std::string> warnings;
  const meds::MedsDataset loaded = meds::load_dataset(
      root, [&](const std::string& w) { warnings.push_back(w); });
  CHECK(loaded.codes[0].parent_codes == std::vector<std::string>{"P1", "P2"});
  CHECK(warnings.size() == 1);
}

TEST_CASE("labels: value variants and required prediction_time") {
  meds::MedsDataset ds;
  ds.metadata = test::minimal_metadata();
  ds.shards.push_back(
      {"0", {{"a", "C1", std::nullopt, std::nullopt, std::nullopt}}});
  ds.labels = {
      {"a", ts("2024-01-01T00:00:00Z"), true, std::nullopt, std::nullopt,
       std::nullopt},
      {"a", ts("2024-01-02T00:00:00Z"), std::nullopt, int64_t{42},
       std::nullopt, std::nullopt},
      {"a", ts("2024-01-03T00:00:00Z"), std::nullopt, std::nullopt, 2.5,
       std::nullopt},
      {"a", ts("2024-01-04T00:00:00Z"), std::nullopt, std::nullopt,
       std::nullopt, std::string("x")},
  };
  const fs::path root = temp_root("labels");
  meds::write_meds_root(ds, root);
  const meds::MedsDataset loaded = meds::load_dataset(root);
  REQUIRE(loaded.labels.size() == 4);
  CHECK(loaded.labels[0].boolean_value == true);
  CHECK(loaded.labels[1].integer_value == 42);
  CHECK(loaded.labels[2].float_value == 2.5);
  CHECK(loaded.labels[3].categorical_value == "x");
  for (const meds::LabelRecord& l : loaded.labels)
    CHECK(l.value_variant_count() == 1);
}

}  // TEST_SUITE
