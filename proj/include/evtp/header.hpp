#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evtp/result.hpp"

namespace evtp {

/// First byte of every segment header. Chosen disjoint from all datum code
/// bytes so a scanner can tell a header start from payload words.
inline constexpr uint8_t kHeaderId = 0xEB;

/// Pointer-table entry meaning "no data in this interval".
inline constexpr uint32_t kPointerSentinel = 0xFFFFFFFF;

/// Fixed-size portion of the header: 472 bits.
inline constexpr size_t kRequiredHeaderBytes = 59;

/// Smallest possible header: required region + empty user words + empty
/// pointer table.
inline constexpr size_t kMinHeaderBytes = kRequiredHeaderBytes + 2 + 4 + 4;

/// Index of byte offsets into a segment payload at fixed time increments.
/// Offsets are relative to the first payload byte and each non-sentinel
/// entry addresses a TS MSB word, the only place a decode can start cold.
struct PointerTable {
  uint32_t increment_us = 0;
  std::vector<uint32_t> offsets;

  bool operator==(const PointerTable&) const = default;
};

/// Per-segment metadata. The required region is 59 bytes; user words and the
/// pointer table follow with their own counts.
struct HeaderRecord {
  uint8_t header_id = kHeaderId;
  uint64_t epoch_ts = 0;    // microseconds since host epoch; 0 when unset
  uint32_t global_ts = 0;   // opaque 24-bit synchronization stamp
  uint8_t sensor_modality = 0;  // 3-bit
  uint8_t data_modality = 4;    // 3-bit
  uint32_t num_datum = 0;   // 18-bit payload word count; 0 = read to end
  uint16_t rows = 1;
  uint16_t cols = 1;
  std::string sensor_model = std::string(32, ' ');  // exactly 32 bytes, ASCII
  std::vector<uint32_t> user_words;                 // length <= 65535
  PointerTable pointer_table;

  bool operator==(const HeaderRecord&) const = default;
};

/// Space-pads (or truncates) a label to the 32-byte sensor_model field.
std::string make_sensor_model(std::string_view label);

/// Serializes a header, big-endian, in wire order: header_id (1B), epoch_ts
/// (8B), global_ts (3B), a packed group with sensor_modality in bits 23..21 /
/// data_modality in bits 20..18 / num_datum in bits 17..0 (3B), rows (2B),
/// cols (2B), reserved zeros (8B), sensor_model (32B), user word count (2B),
/// user words (4B each), pointer count (4B), increment_us (4B), offsets
/// (4B each).
/// Errors: FieldOverflow; NonAsciiModel (strict) for model bytes >= 0x80.
Result<std::vector<uint8_t>> encode_header(
    const HeaderRecord& record, Strictness strictness = Strictness::Strict);

struct DecodedHeader {
  HeaderRecord record;
  size_t consumed = 0;  // full header length including the pointer table
};

/// Inverse of encode_header.
/// Errors: BadHeaderId; Truncated; ReservedNonzero (strict).
Result<DecodedHeader> decode_header(std::span<const uint8_t> bytes,
                                    Strictness strictness = Strictness::Strict);

}  // namespace evtp
