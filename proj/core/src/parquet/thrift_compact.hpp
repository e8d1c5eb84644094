// Thrift compact-protocol codec, just enough for Parquet file metadata and
// page headers. Field ids are tracked by the caller per struct scope.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace medsgraph::parquet::thrift {

enum class CType : uint8_t {
  Stop = 0,
  BoolTrue = 1,
  BoolFalse = 2,
  I8 = 3,
  I16 = 4,
  I32 = 5,
  I64 = 6,
  Double = 7,
  Binary = 8,
  List = 9,
  Set = 10,
  Map = 11,
  Struct = 12,
};

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Reader {
 public:
  Reader(const uint8_t* data, size_t size) : data_(data), size_(size) {}

  struct Field {
    CType type = CType::Stop;
    int16_t id = 0;
    bool stop = true;
    bool bool_value = false;
  };

  Field read_field(int16_t last_id) {
    Field f;
    const uint8_t byte = read_byte();
    if (byte == 0) return f;
    f.stop = false;
    const uint8_t delta = byte >> 4;
    f.type = static_cast<CType>(byte & 0x0F);
    f.id = delta != 0 ? static_cast<int16_t>(last_id + delta)
                      : static_cast<int16_t>(read_zigzag());
    f.bool_value = f.type == CType::BoolTrue;
    return f;
  }

  uint64_t read_varint() {
    uint64_t value = 0;
    int shift = 0;
    for (;;) {
      const uint8_t byte = read_byte();
      value |= static_cast<uint64_t>(byte & 0x7F) << shift;
      if ((byte & 0x80) == 0) break;
      shift += 7;
      if (shift > 63) throw ProtocolError("varint overflow");
    }
    return value;
  }

  int64_t read_zigzag() {
    const uint64_t v = read_varint();
    return static_cast<int64_t>(v >> 1) ^ -static_cast<int64_t>(v & 1);
  }

  int32_t read_i32() { return static_cast<int32_t>(read_zigzag()); }
  int64_t read_i64() { return read_zigzag(); }

  std::string_view read_binary() {
    const uint64_t len = read_varint();
    if (len > size_ - pos_) throw ProtocolError("binary runs past buffer");
    const std::string_view view(reinterpret_cast<const char*>(data_ + pos_),
                                static_cast<size_t>(len));
    pos_ += static_cast<size_t>(len);
    return view;
  }

  struct ListHeader {
    CType elem_type;
    uint32_t size;
  };

  ListHeader read_list_header() {
    const uint8_t byte = read_byte();
    const auto elem = static_cast<CType>(byte & 0x0F);
    uint32_t size = byte >> 4;
    if (size == 15) size = static_cast<uint32_t>(read_varint());
    return {elem, size};
  }

  void skip(CType type) {
    switch (type) {
      case CType::BoolTrue:
      case CType::BoolFalse:
        return;  // value lives in the field header
      case CType::I8:
        read_byte();
        return;
      case CType::I16:
      case CType::I32:
      case CType::I64:
        read_varint();
        return;
      case CType::Double:
        advance(8);
        return;
      case CType::Binary:
        read_binary();
        return;
      case CType::List:
      case CType::Set: {
        const ListHeader h = read_list_header();
        for (uint32_t i = 0; i < h.size; ++i) skip_element(h.elem_type);
        return;
      }
      case CType::Map: {
        const uint64_t size = read_varint();
        if (size == 0) return;
        const uint8_t kv = read_byte();
        for (uint64_t i = 0; i < size; ++i) {
          skip_element(static_cast<CType>(kv >> 4));
          skip_element(static_cast<CType>(kv & 0x0F));
        }
        return;
      }
      case CType::Struct: {
        int16_t last = 0;
        for (;;) {
          const Field f = read_field(last);
          if (f.stop) return;
          last = f.id;
          skip(f.type);
        }
      }
      case CType::Stop:
        throw ProtocolError("cannot skip stop");
    }
    throw ProtocolError("unknown thrift type");
  }

  // Container elements encode bools as one byte, unlike struct fields.
  void skip_element(CType type) {
    if (type == CType::BoolTrue || type == CType::BoolFalse) {
      read_byte();
      return;
    }
    skip(type);
  }

  bool read_bool_element() { return read_byte() != 0; }

  size_t position() const { return pos_; }
  bool done() const { return pos_ >= size_; }

 private:
  uint8_t read_byte() {
    if (pos_ >= size_) throw ProtocolError("unexpected end of buffer");
    return data_[pos_++];
  }

  void advance(size_t n) {
    if (n > size_ - pos_) throw ProtocolError("unexpected end of buffer");
    pos_ += n;
  }

  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
};

class Writer {
 public:
  void field_header(int16_t& last_id, int16_t id, CType type) {
    const int delta = id - last_id;
    if (delta > 0 && delta <= 15) {
      buf_ += static_cast<char>((delta << 4) | static_cast<int>(type));
    } else {
      buf_ += static_cast<char>(type);
      write_zigzag(id);
    }
    last_id = id;
  }

  void field_bool(int16_t& last_id, int16_t id, bool value) {
    field_header(last_id, id, value ? CType::BoolTrue : CType::BoolFalse);
  }

  void field_i32(int16_t& last_id, int16_t id, int32_t value) {
    field_header(last_id, id, CType::I32);
    write_zigzag(value);
  }

  void field_i64(int16_t& last_id, int16_t id, int64_t value) {
    field_header(last_id, id, CType::I64);
    write_zigzag(value);
  }

  void field_binary(int16_t& last_id, int16_t id, std::string_view value) {
    field_header(last_id, id, CType::Binary);
    write_binary(value);
  }

  void field_list(int16_t& last_id, int16_t id, CType elem, uint32_t size) {
    field_header(last_id, id, CType::List);
    list_header(elem, size);
  }

  void field_struct(int16_t& last_id, int16_t id) {
    field_header(last_id, id, CType::Struct);
  }

  void list_header(CType elem, uint32_t size) {
    if (size < 15) {
      buf_ += static_cast<char>((size << 4) | static_cast<int>(elem));
    } else {
      buf_ += static_cast<char>(0xF0 | static_cast<int>(elem));
      write_varint(size);
    }
  }

  void write_varint(uint64_t value) {
    while (value >= 0x80) {
      buf_ += static_cast<char>((value & 0x7F) | 0x80);
      value >>= 7;
    }
    buf_ += static_cast<char>(value);
  }

  void write_zigzag(int64_t value) {
    write_varint((static_cast<uint64_t>(value) << 1) ^
                 static_cast<uint64_t>(value >> 63));
  }

  void write_binary(std::string_view value) {
    write_varint(value.size());
    buf_ += value;
  }

  void stop() { buf_ += '\0'; }

  const std::string& buffer() const { return buf_; }
  std::string take() { return std::move(buf_); }

 private:
  std::string buf_;
};

}  // namespace medsgraph::parquet::thrift
