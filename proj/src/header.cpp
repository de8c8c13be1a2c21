#include "evtp/header.hpp"

#include <cstdio>

namespace evtp {

namespace {

void append_be(std::vector<uint8_t>& out, uint64_t value, int bytes) {
  for (int i = bytes - 1; i >= 0; --i)
    out.push_back(uint8_t(value >> (8 * i)));
}

uint64_t read_be(const uint8_t* p, int bytes) {
  uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v = (v << 8) | p[i];
  return v;
}

Error overflow(const char* what) {
  return Error{Errc::FieldOverflow, what};
}

Error truncated(const char* stage, size_t need, size_t have) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s: need %zu bytes, have %zu", stage, need,
                have);
  return Error{Errc::Truncated, buf};
}

}  // namespace

std::string make_sensor_model(std::string_view label) {
  std::string model(label.substr(0, 32));
  model.resize(32, ' ');
  return model;
}

Result<std::vector<uint8_t>> encode_header(const HeaderRecord& record,
                                           Strictness strictness) {
  if (record.global_ts > 0xFFFFFF) return overflow("global_ts exceeds 24 bits");
  if (record.sensor_modality > 7) return overflow("sensor_modality exceeds 3 bits");
  if (record.data_modality > 7) return overflow("data_modality exceeds 3 bits");
  if (record.num_datum >= (1u << 18)) return overflow("num_datum exceeds 18 bits");
  if (record.sensor_model.size() != 32)
    return overflow("sensor_model must be exactly 32 bytes");
  if (record.user_words.size() > 0xFFFF)
    return overflow("more than 65535 user words");
  if (strictness == Strictness::Strict) {
    for (char ch : record.sensor_model) {
      if (uint8_t(ch) >= 0x80)
        return Error{Errc::NonAsciiModel, "sensor_model byte >= 0x80"};
    }
  }

  std::vector<uint8_t> out;
  out.reserve(kRequiredHeaderBytes + 2 + 4 * record.user_words.size() + 8 +
              4 * record.pointer_table.offsets.size());
  out.push_back(record.header_id);
  append_be(out, record.epoch_ts, 8);
  append_be(out, record.global_ts, 3);
  const uint32_t packed = (uint32_t(record.sensor_modality) << 21) |
                          (uint32_t(record.data_modality) << 18) |
                          record.num_datum;
  append_be(out, packed, 3);
  append_be(out, record.rows, 2);
  append_be(out, record.cols, 2);
  append_be(out, 0, 8);  // reserved
  out.insert(out.end(), record.sensor_model.begin(), record.sensor_model.end());
  append_be(out, record.user_words.size(), 2);
  for (uint32_t w : record.user_words) append_be(out, w, 4);
  append_be(out, record.pointer_table.offsets.size(), 4);
  append_be(out, record.pointer_table.increment_us, 4);
  for (uint32_t off : record.pointer_table.offsets) append_be(out, off, 4);
  return out;
}

Result<DecodedHeader> decode_header(std::span<const uint8_t> bytes,
                                    Strictness strictness) {
  if (bytes.empty()) return truncated("header id", 1, 0);
  if (bytes[0] != kHeaderId) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "first byte 0x%02X, expected 0x%02X",
                  unsigned(bytes[0]), unsigned(kHeaderId));
    return Error{Errc::BadHeaderId, buf};
  }
  if (bytes.size() < kRequiredHeaderBytes)
    return truncated("required region", kRequiredHeaderBytes, bytes.size());

  DecodedHeader out;
  HeaderRecord& h = out.record;
  const uint8_t* p = bytes.data();
  h.header_id = p[0];
  h.epoch_ts = read_be(p + 1, 8);
  h.global_ts = uint32_t(read_be(p + 9, 3));
  const uint32_t packed = uint32_t(read_be(p + 12, 3));
  h.sensor_modality = uint8_t(packed >> 21);
  h.data_modality = uint8_t((packed >> 18) & 0x7);
  h.num_datum = packed & 0x3FFFF;
  h.rows = uint16_t(read_be(p + 15, 2));
  h.cols = uint16_t(read_be(p + 17, 2));
  if (strictness == Strictness::Strict && read_be(p + 19, 8) != 0)
    return Error{Errc::ReservedNonzero, "reserved bits 64 not all zero"};
  h.sensor_model.assign(reinterpret_cast<const char*>(p + 27), 32);

  size_t pos = kRequiredHeaderBytes;
  if (bytes.size() - pos < 2)
    return truncated("user word count", pos + 2, bytes.size());
  const size_t user_count = size_t(read_be(p + pos, 2));
  pos += 2;
  if (bytes.size() - pos < 4 * user_count)
    return truncated("user words", pos + 4 * user_count, bytes.size());
  h.user_words.reserve(user_count);
  for (size_t i = 0; i < user_count; ++i, pos += 4)
    h.user_words.push_back(uint32_t(read_be(p + pos, 4)));

  if (bytes.size() - pos < 8)
    return truncated("pointer table", pos + 8, bytes.size());
  const size_t ptr_count = size_t(read_be(p + pos, 4));
  pos += 4;
  h.pointer_table.increment_us = uint32_t(read_be(p + pos, 4));
  pos += 4;
  if ((bytes.size() - pos) / 4 < ptr_count)
    return truncated("pointer offsets", pos + 4 * ptr_count, bytes.size());
  h.pointer_table.offsets.reserve(ptr_count);
  for (size_t i = 0; i < ptr_count; ++i, pos += 4)
    h.pointer_table.offsets.push_back(uint32_t(read_be(p + pos, 4)));

  out.consumed = pos;
  return out;
}

}  // namespace evtp
