#include "metadata.hpp"

namespace medsgraph::parquet::meta {

using thrift::CType;
using thrift::Reader;
using thrift::Writer;

namespace {

// LogicalType is a thrift union; only STRING / LIST / TIMESTAMP matter here.
void parse_logical_type(Reader& r, SchemaElement& element) {
  int16_t last = 0;
  for (;;) {
    const auto f = r.read_field(last);
    if (f.stop) return;
    last = f.id;
    switch (f.id) {
      case 1:  // STRING
        r.skip(f.type);
        element.logical_string = true;
        break;
      case 3:  // LIST
        r.skip(f.type);
        element.logical_list = true;
        break;
      case 8: {  // TIMESTAMP { 1: isAdjustedToUTC, 2: unit }
        int16_t ts_last = 0;
        for (;;) {
          const auto tf = r.read_field(ts_last);
          if (tf.stop) break;
          ts_last = tf.id;
          if (tf.id == 2 && tf.type == CType::Struct) {
            int16_t unit_last = 0;
            for (;;) {
              const auto uf = r.read_field(unit_last);
              if (uf.stop) break;
              unit_last = uf.id;
              if (uf.id == 1) element.timestamp_unit = TimeUnit::Millis;
              if (uf.id == 2) element.timestamp_unit = TimeUnit::Micros;
              if (uf.id == 3) element.timestamp_unit = TimeUnit::Nanos;
              r.skip(uf.type);
            }
          } else {
            r.skip(tf.type);
          }
        }
        break;
      }
      default:
        r.skip(f.type);
    }
  }
}

SchemaElement parse_schema_element(Reader& r) {
  SchemaElement e;
  int16_t last = 0;
  for (;;) {
    const auto f = r.read_field(last);
    if (f.stop) return e;
    last = f.id;
    switch (f.id) {
      case 1:
        e.physical = r.read_i32();
        break;
      case 3:
        e.repetition = r.read_i32();
        e.has_repetition = true;
        break;
      case 4:
        e.name = std::string(r.read_binary());
        break;
      case 5:
        e.num_children = r.read_i32();
        break;
      case 6:
        e.converted = r.read_i32();
        break;
      case 10:
        parse_logical_type(r, e);
        break;
      default:
        r.skip(f.type);
    }
  }
}

ColumnMeta parse_column_meta(Reader& r) {
  ColumnMeta m;
  int16_t last = 0;
  for (;;) {
    const auto f = r.read_field(last);
    if (f.stop) return m;
    last = f.id;
    switch (f.id) {
      case 1:
        m.physical = r.read_i32();
        break;
      case 2: {
        const auto list = r.read_list_header();
        for (uint32_t i = 0; i < list.size; ++i)
          m.encodings.push_back(static_cast<int32_t>(r.read_zigzag()));
        break;
      }
      case 3: {
        const auto list = r.read_list_header();
        for (uint32_t i = 0; i < list.size; ++i)
          m.path.emplace_back(r.read_binary());
        break;
      }
      case 4:
        m.codec = r.read_i32();
        break;
      case 5:
        m.num_values = r.read_i64();
        break;
      case 6:
        m.total_uncompressed_size = r.read_i64();
        break;
      case 7:
        m.total_compressed_size = r.read_i64();
        break;
      case 9:
        m.data_page_offset = r.read_i64();
        break;
      case 11:
        m.dictionary_page_offset = r.read_i64();
        break;
      default:
        r.skip(f.type);
    }
  }
}

ColumnChunk parse_column_chunk(Reader& r) {
  ColumnChunk c;
  int16_t last = 0;
  for (;;) {
    const auto f = r.read_field(last);
    if (f.stop) return c;
    last = f.id;
    switch (f.id) {
      case 1:
        c.file_path = std::string(r.read_binary());
        break;
      case 2:
        c.file_offset = r.read_i64();
        break;
      case 3:
        c.meta = parse_column_meta(r);
        c.has_meta = true;
        break;
      default:
        r.skip(f.type);
    }
  }
}

RowGroup parse_row_group(Reader& r) {
  RowGroup g;
  int16_t last = 0;
  for (;;) {
    const auto f = r.read_field(last);
    if (f.stop) return g;
    last = f.id;
    switch (f.id) {
      case 1: {
        const auto list = r.read_list_header();
        for (uint32_t i = 0; i < list.size; ++i)
          g.columns.push_back(parse_column_chunk(r));
        break;
      }
      case 2:
        g.total_byte_size = r.read_i64();
        break;
      case 3:
        g.num_rows = r.read_i64();
        break;
      default:
        r.skip(f.type);
    }
  }
}

DataPageHeader parse_data_page_header(Reader& r) {
  DataPageHeader h;
  int16_t last = 0;
  for (;;) {
    const auto f = r.read_field(last);
    if (f.stop) return h;
    last = f.id;
    switch (f.id) {
      case 1:
        h.num_values = r.read_i32();
        break;
      case 2:
        h.encoding = r.read_i32();
        break;
      case 3:
        h.def_level_encoding = r.read_i32();
        break;
      case 4:
        h.rep_level_encoding = r.read_i32();
        break;
      default:
        r.skip(f.type);
    }
  }
}

DataPageHeaderV2 parse_data_page_header_v2(Reader& r) {
  DataPageHeaderV2 h;
  int16_t last = 0;
  for (;;) {
    const auto f = r.read_field(last);
    if (f.stop) return h;
    last = f.id;
    switch (f.id) {
      case 1:
        h.num_values = r.read_i32();
        break;
      case 2:
        h.num_nulls = r.read_i32();
        break;
      case 3:
        h.num_rows = r.read_i32();
        break;
      case 4:
        h.encoding = r.read_i32();
        break;
      case 5:
        h.def_levels_byte_length = r.read_i32();
        break;
      case 6:
        h.rep_levels_byte_length = r.read_i32();
        break;
      case 7:
        h.is_compressed = f.bool_value;
        break;
      default:
        r.skip(f.type);
    }
  }
}

DictionaryPageHeader parse_dictionary_page_header(Reader& r) {
  DictionaryPageHeader h;
  int16_t last = 0;
  for (;;) {
    const auto f = r.read_field(last);
    if (f.stop) return h;
    last = f.id;
    switch (f.id) {
      case 1:
        h.num_values = r.read_i32();
        break;
      case 2:
        h.encoding = r.read_i32();
        break;
      default:
        r.skip(f.type);
    }
  }
}

}  // namespace

FileMetaData parse_file_metadata(const uint8_t* data, size_t size) {
  Reader r(data, size);
  FileMetaData meta;
  int16_t last = 0;
  for (;;) {
    const auto f = r.read_field(last);
    if (f.stop) return meta;
    last = f.id;
    switch (f.id) {
      case 1:
        meta.version = r.read_i32();
        break;
      case 2: {
        const auto list = r.read_list_header();
        for (uint32_t i = 0; i < list.size; ++i)
          meta.schema.push_back(parse_schema_element(r));
        break;
      }
      case 3:
        meta.num_rows = r.read_i64();
        break;
      case 4: {
        const auto list = r.read_list_header();
        for (uint32_t i = 0; i < list.size; ++i)
          meta.row_groups.push_back(parse_row_group(r));
        break;
      }
      case 6:
        meta.created_by = std::string(r.read_binary());
        break;
      default:
        r.skip(f.type);
    }
  }
}

PageHeader parse_page_header(Reader& r) {
  PageHeader h;
  int16_t last = 0;
  for (;;) {
    const auto f = r.read_field(last);
    if (f.stop) return h;
    last = f.id;
    switch (f.id) {
      case 1:
        h.type = r.read_i32();
        break;
      case 2:
        h.uncompressed_page_size = r.read_i32();
        break;
      case 3:
        h.compressed_page_size = r.read_i32();
        break;
      case 5:
        h.data = parse_data_page_header(r);
        break;
      case 7:
        h.dictionary = parse_dictionary_page_header(r);
        break;
      case 8:
        h.data_v2 = parse_data_page_header_v2(r);
        break;
      default:
        r.skip(f.type);
    }
  }
}

namespace {

void write_schema_element(Writer& w, const SchemaElement& e) {
  int16_t last = 0;
  if (e.physical >= 0) w.field_i32(last, 1, e.physical);
  if (e.has_repetition) w.field_i32(last, 3, e.repetition);
  w.field_binary(last, 4, e.name);
  if (e.num_children > 0) w.field_i32(last, 5, e.num_children);
  if (e.converted != kConvertedNone) w.field_i32(last, 6, e.converted);
  if (e.logical_string || e.logical_list ||
      e.timestamp_unit != TimeUnit::None) {
    w.field_struct(last, 10);
    int16_t lt_last = 0;
    if (e.logical_string) {
      w.field_struct(lt_last, 1);
      w.stop();
    } else if (e.logical_list) {
      w.field_struct(lt_last, 3);
      w.stop();
    } else {
      w.field_struct(lt_last, 8);
      int16_t ts_last = 0;
      w.field_bool(ts_last, 1, true);  // isAdjustedToUTC
      w.field_struct(ts_last, 2);
      int16_t unit_last = 0;
      const int16_t unit_id = e.timestamp_unit == TimeUnit::Millis ? 1
                              : e.timestamp_unit == TimeUnit::Micros ? 2
                                                                     : 3;
      w.field_struct(unit_last, unit_id);
      w.stop();  // unit variant
      w.stop();  // TimeUnit
      w.stop();  // TimestampType
    }
    w.stop();  // LogicalType
  }
  w.stop();
}

void write_column_chunk(Writer& w, const ColumnChunk& c) {
  int16_t last = 0;
  w.field_i64(last, 2, c.file_offset);
  w.field_struct(last, 3);
  {
    const ColumnMeta& m = c.meta;
    int16_t ml = 0;
    w.field_i32(ml, 1, m.physical);
    w.field_list(ml, 2, CType::I32, static_cast<uint32_t>(m.encodings.size()));
    for (const int32_t enc : m.encodings) w.write_zigzag(enc);
    w.field_list(ml, 3, CType::Binary, static_cast<uint32_t>(m.path.size()));
    for (const std::string& part : m.path) w.write_binary(part);
    w.field_i32(ml, 4, m.codec);
    w.field_i64(ml, 5, m.num_values);
    w.field_i64(ml, 6, m.total_uncompressed_size);
    w.field_i64(ml, 7, m.total_compressed_size);
    w.field_i64(ml, 9, m.data_page_offset);
    w.stop();
  }
  w.stop();
}

}  // namespace

void write_file_metadata(Writer& w, const FileMetaData& meta) {
  int16_t last = 0;
  w.field_i32(last, 1, meta.version);
  w.field_list(last, 2, CType::Struct,
               static_cast<uint32_t>(meta.schema.size()));
  for (const SchemaElement& e : meta.schema) write_schema_element(w, e);
  w.field_i64(last, 3, meta.num_rows);
  w.field_list(last, 4, CType::Struct,
               static_cast<uint32_t>(meta.row_groups.size()));
  for (const RowGroup& g : meta.row_groups) {
    int16_t gl = 0;
    w.field_list(gl, 1, CType::Struct, static_cast<uint32_t>(g.columns.size()));
    for (const ColumnChunk& c : g.columns) write_column_chunk(w, c);
    w.field_i64(gl, 2, g.total_byte_size);
    w.field_i64(gl, 3, g.num_rows);
    w.stop();
  }
  if (!meta.created_by.empty()) w.field_binary(last, 6, meta.created_by);
  w.stop();
}

void write_page_header(Writer& w, const PageHeader& h) {
  int16_t last = 0;
  w.field_i32(last, 1, h.type);
  w.field_i32(last, 2, h.uncompressed_page_size);
  w.field_i32(last, 3, h.compressed_page_size);
  if (h.data) {
    w.field_struct(last, 5);
    int16_t dl = 0;
    w.field_i32(dl, 1, h.data->num_values);
    w.field_i32(dl, 2, h.data->encoding);
    w.field_i32(dl, 3, h.data->def_level_encoding);
    w.field_i32(dl, 4, h.data->rep_level_encoding);
    w.stop();
  }
  w.stop();
}

}  // namespace medsgraph::parquet::meta
