#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>

#include <zlib.h>

#include "levels.hpp"
#include "medsgraph/parquet.hpp"
#include "metadata.hpp"
#include "codec.hpp"
#include "thrift_compact.hpp"

using namespace medsgraph::parquet;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "medsgraph-parquet-tests";
  fs::create_directories(dir);
  return dir / name;
}

// Minimal valid snappy stream: one literal run.
std::string snappy_literal(std::string_view payload) {
  std::string out;
  size_t len = payload.size();
  while (len >= 0x80) {
    out += static_cast<char>((len & 0x7F) | 0x80);
    len >>= 7;
  }
  out += static_cast<char>(len);
  REQUIRE(payload.size() <= 60);
  out += static_cast<char>((payload.size() - 1) << 2);
  out.append(payload);
  return out;
}

}  // namespace

TEST_SUITE("parquet") {

TEST_CASE("rle hybrid codec round trip") {
  for (const uint32_t width : {1u, 2u, 3u, 8u, 12u}) {
    std::vector<uint32_t> values;
    for (size_t i = 0; i < 1000; ++i)
      values.push_back((i / 7 + i % 3) & ((1u << width) - 1));
    const std::string encoded = encode_rle(values, width);
    std::vector<uint32_t> decoded;
    decode_rle_hybrid(reinterpret_cast<const uint8_t*>(encoded.data()),
                      encoded.size(), width, values.size(), decoded);
    CHECK(decoded == values);
  }
}

TEST_CASE("rle hybrid decodes bit-packed runs") {
  // Two bit-packed groups of 8 one-bit values: 0,1,0,1,... header (2<<1)|1.
  const uint8_t data[] = {0x05, 0b10101010, 0b10101010};
  std::vector<uint32_t> out;
  decode_rle_hybrid(data, sizeof(data), 1, 16, out);
  REQUIRE(out.size() == 16);
  for (size_t i = 0; i < 16; ++i) CHECK(out[i] == (i % 2 == 0 ? 0 : 1));
}

TEST_CASE("rle hybrid rejects truncated streams") {
  const uint8_t data[] = {0x08};  // RLE run of 4, value byte missing
  std::vector<uint32_t> out;
  CHECK_THROWS_AS(decode_rle_hybrid(data, sizeof(data), 1, 4, out),
                  ParquetError);
}

TEST_CASE("snappy decoder: literals and all copy forms") {
  const std::string lit = snappy_literal("hello snappy");
  const auto out = snappy_decompress(
      reinterpret_cast<const uint8_t*>(lit.data()), lit.size());
  CHECK(std::string(out.begin(), out.end()) == "hello snappy");

  // "abcd" + copy1(offset 4, len 4) + copy2(offset 8, len 8) = "abcdabcdabcdabcd"
  std::string stream;
  stream += static_cast<char>(16);  // uncompressed length
  stream += static_cast<char>(3 << 2);  // literal, len 4
  stream += "abcd";
  stream += static_cast<char>(0x01);  // copy1: len=4 ((0>>2&7)+4), offset hi 0
  stream += static_cast<char>(4);     // offset lo
  stream += static_cast<char>((7 << 2) | 0x02);  // copy2: len 8
  stream += static_cast<char>(8);
  stream += static_cast<char>(0);
  const auto out2 = snappy_decompress(
      reinterpret_cast<const uint8_t*>(stream.data()), stream.size());
  CHECK(std::string(out2.begin(), out2.end()) == "abcdabcdabcdabcd");

  // Overlapping copy: "ab" then copy(offset 1, len 6) -> "abbbbbbb"
  std::string overlap;
  overlap += static_cast<char>(8);
  overlap += static_cast<char>(1 << 2);
  overlap += "ab";
  overlap += static_cast<char>(((6 - 4) << 2) | 0x01);
  overlap += static_cast<char>(1);
  auto out3 = snappy_decompress(
      reinterpret_cast<const uint8_t*>(overlap.data()), overlap.size());
  CHECK(std::string(out3.begin(), out3.end()) == "abbbbbbb");

  const uint8_t bad[] = {0x04, 0x01, 0x09};  // copy before any output
  CHECK_THROWS_AS(snappy_decompress(bad, sizeof(bad)), ParquetError);
}

TEST_CASE("writer/reader round trip across all column types") {
  const fs::path path = temp_file("roundtrip.parquet");
  std::vector<ColumnSpec> schema = {
      {"id", ColumnType::String, true},
      {"when", ColumnType::Timestamp, false},
      {"flag", ColumnType::Boolean, false},
      {"count", ColumnType::Int64, false},
      {"value", ColumnType::Double, false},
      {"tags", ColumnType::StringList, false},
  };
  {
    FileWriter writer(path, schema);
    for (int group = 0; group < 3; ++group) {
      RowBatch batch;
      batch.reserve(6);
      batch.rows = 5;
      Column& id = batch.add("id", ColumnType::String);
      Column& when = batch.add("when", ColumnType::Timestamp);
      Column& flag = batch.add("flag", ColumnType::Boolean);
      Column& count = batch.add("count", ColumnType::Int64);
      Column& value = batch.add("value", ColumnType::Double);
      Column& tags = batch.add("tags", ColumnType::StringList);
      tags.list_offsets.push_back(0);
      for (int i = 0; i < 5; ++i) {
        id.present.push_back(1);
        id.strings.push_back("row-" + std::to_string(group * 5 + i) +
                             " π\n\"q\"");
        when.present.push_back(i % 2);
        when.ints.push_back(i % 2 ? 1700000000000000LL + i : 0);
        flag.present.push_back(i != 2);
        flag.bools.push_back(i % 2);
        count.present.push_back(i != 3);
        count.ints.push_back(-1000 + i);
        value.present.push_back(i != 4);
        value.doubles.push_back(0.5 * i);
        tags.present.push_back(1);
        for (int k = 0; k < i; ++k)
          tags.strings.push_back("t" + std::to_string(k));
        tags.list_offsets.push_back(
            static_cast<uint32_t>(tags.strings.size()));
      }
      writer.write(batch);
    }
    writer.close();
  }

  FileReader reader(path);
  CHECK(reader.row_group_count() == 3);
  CHECK(reader.total_rows() == 15);
  REQUIRE(reader.fields().size() == 6);
  CHECK(reader.fields()[5].is_list);

  for (size_t group = 0; group < 3; ++group) {
    const RowBatch batch = reader.read_row_group(group, schema);
    REQUIRE(batch.rows == 5);
    const Column& id = *batch.find("id");
    const Column& when = *batch.find("when");
    const Column& flag = *batch.find("flag");
    const Column& count = *batch.find("count");
    const Column& value = *batch.find("value");
    const Column& tags = *batch.find("tags");
    for (size_t i = 0; i < 5; ++i) {
      CHECK(id.strings[i] ==
            "row-" + std::to_string(group * 5 + i) + " π\n\"q\"");
      CHECK(when.present[i] == (i % 2 ? 1 : 0));
      if (when.present[i]) CHECK(when.ints[i] == 1700000000000000LL + i);
      CHECK(flag.present[i] == (i != 2 ? 1 : 0));
      if (flag.present[i]) CHECK(flag.bools[i] == i % 2);
      CHECK(count.present[i] == (i != 3 ? 1 : 0));
      if (count.present[i]) CHECK(count.ints[i] == -1000 + static_cast<int>(i));
      CHECK(value.present[i] == (i != 4 ? 1 : 0));
      if (value.present[i]) CHECK(value.doubles[i] == 0.5 * i);
      const size_t n_tags = tags.list_offsets[i + 1] - tags.list_offsets[i];
      CHECK(n_tags == i);
      for (size_t k = 0; k < n_tags; ++k)
        CHECK(tags.strings[tags.list_offsets[i] + k] ==
              "t" + std::to_string(k));
    }
  }
}

TEST_CASE("writer output is byte-deterministic") {
  const fs::path a = temp_file("det_a.parquet");
  const fs::path b = temp_file("det_b.parquet");
  for (const fs::path& path : {a, b}) {
    FileWriter writer(path, {{"v", ColumnType::Int64, true}});
    RowBatch batch;
    batch.rows = 3;
    Column& v = batch.add("v", ColumnType::Int64);
    v.present = {1, 1, 1};
    v.ints = {1, 2, 3};
    writer.write(batch);
    writer.close();
  }
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  const std::string ba((std::istreambuf_iterator<char>(fa)), {});
  const std::string bb((std::istreambuf_iterator<char>(fb)), {});
  CHECK(ba == bb);
  CHECK(ba.substr(0, 4) == "PAR1");
  CHECK(ba.substr(ba.size() - 4) == "PAR1");
}

TEST_CASE("reader coercions and schema errors") {
  const fs::path path = temp_file("coerce.parquet");
  {
    FileWriter writer(path, {{"id", ColumnType::Int64, true},
                             {"score", ColumnType::Double, false}});
    RowBatch batch;
    batch.reserve(2);
    batch.rows = 2;
    Column& id = batch.add("id", ColumnType::Int64);
    id.present = {1, 1};
    id.ints = {42, -1};
    Column& score = batch.add("score", ColumnType::Double);
    score.present = {1, 0};
    score.doubles = {2.5, 0};
    writer.write(batch);
    writer.close();
  }
  FileReader reader(path);

  // Int64 serves a String request as decimal text.
  const std::vector<ColumnSpec> as_string = {{"id", ColumnType::String, true}};
  const RowBatch strings = reader.read_row_group(0, as_string);
  CHECK(strings.find("id")->strings[0] == "42");
  CHECK(strings.find("id")->strings[1] == "-1");

  // Int64 serves a Double request.
  const std::vector<ColumnSpec> as_double = {{"id", ColumnType::Double, true}};
  CHECK(reader.read_row_group(0, as_double).find("id")->doubles[0] == 42.0);

  // Missing optional column -> all absent; missing required -> SchemaError.
  const std::vector<ColumnSpec> missing_opt = {
      {"nope", ColumnType::String, false}};
  const RowBatch absent = reader.read_row_group(0, missing_opt);
  CHECK(absent.find("nope")->present == std::vector<uint8_t>{0, 0});
  const std::vector<ColumnSpec> missing_req = {
      {"nope", ColumnType::String, true}};
  CHECK_THROWS_AS(reader.read_row_group(0, missing_req), SchemaError);

  // Type mismatch -> SchemaError.
  const std::vector<ColumnSpec> bad_type = {
      {"score", ColumnType::Boolean, false}};
  CHECK_THROWS_AS(reader.read_row_group(0, bad_type), SchemaError);
  const std::vector<ColumnSpec> not_list = {
      {"score", ColumnType::StringList, false}};
  CHECK_THROWS_AS(reader.read_row_group(0, not_list), SchemaError);
}

TEST_CASE("writer rejects nulls in required columns") {
  const fs::path path = temp_file("reqnull.parquet");
  FileWriter writer(path, {{"id", ColumnType::String, true}});
  RowBatch batch;
  batch.rows = 1;
  Column& id = batch.add("id", ColumnType::String);
  id.present = {0};
  id.strings = {""};
  CHECK_THROWS_AS(writer.write(batch), ParquetError);
}

TEST_CASE("reader rejects non-parquet files") {
  const fs::path path = temp_file("garbage.bin");
  std::ofstream(path, std::ios::binary) << "this is not parquet at all";
  CHECK_THROWS_AS(FileReader{path}, ParquetError);
  const fs::path tiny = temp_file("tiny.bin");
  std::ofstream(tiny, std::ios::binary) << "PAR1";
  CHECK_THROWS_AS(FileReader{tiny}, ParquetError);
}

// Hand-built file exercising the paths our writer never produces:
// dictionary-encoded values, compressed pages, and v2 data pages.
TEST_CASE("reader handles dictionary, snappy, gzip, and v2 pages") {
  namespace meta = medsgraph::parquet::meta;
  using medsgraph::parquet::thrift::Writer;

  const auto build_file = [&](const fs::path& path, int32_t codec,
                              bool v2_page) {
    // One optional BYTE_ARRAY column "word", 4 rows: "a", "b", null, "a".
    const std::vector<uint32_t> def = {1, 1, 0, 1};
    const std::vector<uint32_t> indices = {0, 1, 0};

    std::string dict_raw;  // PLAIN dictionary: "a", "b"
    for (const std::string_view w : {"a", "b"}) {
      const uint32_t len = static_cast<uint32_t>(w.size());
      dict_raw.append(reinterpret_cast<const char*>(&len), 4);
      dict_raw.append(w);
    }
    std::string values_raw;  // bit width 1 + RLE-hybrid indices
    values_raw += static_cast<char>(1);
    values_raw += encode_rle(indices, 1);

    const std::string def_rle = encode_rle(def, 1);

    const auto compress = [&](const std::string& raw) {
      if (codec == meta::kSnappy) return snappy_literal(raw);
      if (codec == meta::kGzip) {
        uLongf bound = compressBound(raw.size());
        std::string out(bound, '\0');
        REQUIRE(compress2(reinterpret_cast<Bytef*>(out.data()), &bound,
                          reinterpret_cast<const Bytef*>(raw.data()),
                          raw.size(), 6) == Z_OK);
        out.resize(bound);
        return out;
      }
      return raw;
    };

    std::string file = "PAR1";
    // Dictionary page.
    const std::string dict_body = compress(dict_raw);
    {
      Writer tw;
      int16_t last = 0;
      tw.field_i32(last, 1, meta::kDictionaryPage);
      tw.field_i32(last, 2, static_cast<int32_t>(dict_raw.size()));
      tw.field_i32(last, 3, static_cast<int32_t>(dict_body.size()));
      {
        tw.field_struct(last, 7);
        int16_t dl = 0;
        tw.field_i32(dl, 1, 2);  // num_values
        tw.field_i32(dl, 2, meta::kPlainDictionary);
        tw.stop();
      }
      tw.stop();
      file += tw.buffer();
    }
    const size_t dict_page_offset = 4;
    file += dict_body;

    // Data page.
    const size_t data_page_offset = file.size();
    if (!v2_page) {
      std::string raw;
      const uint32_t def_len = static_cast<uint32_t>(def_rle.size());
      raw.append(reinterpret_cast<const char*>(&def_len), 4);
      raw += def_rle;
      raw += values_raw;
      const std::string body = compress(raw);
      Writer tw;
      int16_t last = 0;
      tw.field_i32(last, 1, meta::kDataPage);
      tw.field_i32(last, 2, static_cast<int32_t>(raw.size()));
      tw.field_i32(last, 3, static_cast<int32_t>(body.size()));
      {
        tw.field_struct(last, 5);
        int16_t dl = 0;
        tw.field_i32(dl, 1, 4);  // num_values
        tw.field_i32(dl, 2, meta::kRleDictionary);
        tw.field_i32(dl, 3, meta::kRle);
        tw.field_i32(dl, 4, meta::kRle);
        tw.stop();
      }
      tw.stop();
      file += tw.buffer();
      file += body;
    } else {
      // v2: levels uncompressed up front, values compressed separately.
      const std::string body_values = compress(values_raw);
      Writer tw;
      int16_t last = 0;
      tw.field_i32(last, 1, meta::kDataPageV2);
      tw.field_i32(last, 2,
                   static_cast<int32_t>(def_rle.size() + values_raw.size()));
      tw.field_i32(last, 3,
                   static_cast<int32_t>(def_rle.size() + body_values.size()));
      {
        tw.field_struct(last, 8);
        int16_t dl = 0;
        tw.field_i32(dl, 1, 4);  // num_values
        tw.field_i32(dl, 2, 1);  // num_nulls
        tw.field_i32(dl, 3, 4);  // num_rows
        tw.field_i32(dl, 4, meta::kRleDictionary);
        tw.field_i32(dl, 5, static_cast<int32_t>(def_rle.size()));
        tw.field_i32(dl, 6, 0);  // rep levels
        tw.field_bool(dl, 7, codec != meta::kUncompressed);
        tw.stop();
      }
      tw.stop();
      file += tw.buffer();
      file += def_rle;
      file += body_values;
    }
    const size_t chunk_end = file.size();

    meta::FileMetaData fm;
    fm.version = 1;
    fm.num_rows = 4;
    meta::SchemaElement root;
    root.name = "schema";
    root.num_children = 1;
    fm.schema.push_back(root);
    meta::SchemaElement word;
    word.name = "word";
    word.physical = meta::kByteArray;
    word.has_repetition = true;
    word.repetition = meta::kOptional;
    word.converted = meta::kUtf8;
    fm.schema.push_back(word);
    meta::RowGroup rg;
    rg.num_rows = 4;
    rg.total_byte_size = static_cast<int64_t>(chunk_end - 4);
    meta::ColumnChunk chunk;
    chunk.file_offset = static_cast<int64_t>(dict_page_offset);
    chunk.has_meta = true;
    chunk.meta.physical = meta::kByteArray;
    chunk.meta.encodings = {meta::kPlainDictionary, meta::kRle};
    chunk.meta.path = {"word"};
    chunk.meta.codec = codec;
    chunk.meta.num_values = 4;
    chunk.meta.total_uncompressed_size = static_cast<int64_t>(chunk_end - 4);
    chunk.meta.total_compressed_size = static_cast<int64_t>(chunk_end - 4);
    chunk.meta.data_page_offset = static_cast<int64_t>(data_page_offset);
    chunk.meta.dictionary_page_offset = static_cast<int64_t>(dict_page_offset);
    rg.columns.push_back(chunk);
    fm.row_groups.push_back(rg);

    Writer tw;
    meta::write_file_metadata(tw, fm);
    const std::string footer = tw.take();
    file += footer;
    const uint32_t footer_len = static_cast<uint32_t>(footer.size());
    file.append(reinterpret_cast<const char*>(&footer_len), 4);
    file += "PAR1";

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << file;
  };

  const std::vector<ColumnSpec> wanted = {{"word", ColumnType::String, false}};
  struct Case {
    const char* name;
    int32_t codec;
    bool v2;
  };
  for (const Case c : {Case{"dict_plain.parquet", meta::kUncompressed, false},
                       Case{"dict_snappy.parquet", meta::kSnappy, false},
                       Case{"dict_gzip.parquet", meta::kGzip, false},
                       Case{"dict_v2_snappy.parquet", meta::kSnappy, true}}) {
    CAPTURE(c.name);
    const fs::path path = temp_file(c.name);
    build_file(path, c.codec, c.v2);
    FileReader reader(path);
    const RowBatch batch = reader.read_row_group(0, wanted);
    const Column& word = *batch.find("word");
    REQUIRE(batch.rows == 4);
    CHECK(word.present == std::vector<uint8_t>{1, 1, 0, 1});
    CHECK(word.strings[0] == "a");
    CHECK(word.strings[1] == "b");
    CHECK(word.strings[3] == "a");
  }
}

}  // TEST_SUITE
