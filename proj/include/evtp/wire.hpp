#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "evtp/result.hpp"

namespace evtp {

enum class Polarity : uint8_t { Off = 0, On = 1 };

// Datum code bytes. The code occupies the most significant byte of every
// 32-bit word, so a decoder can dispatch on the first byte on the wire.
namespace code {
inline constexpr uint8_t kTsMsb = 0x01;
inline constexpr uint8_t kEventY = 0x02;
inline constexpr uint8_t kMixedXOnMsb = 0x03;
inline constexpr uint8_t kMixedXOffMsb = 0x04;
inline constexpr uint8_t kMixedXLsb = 0x05;
inline constexpr uint8_t kEventXOn = 0x06;
inline constexpr uint8_t kEventXOff = 0x07;
inline constexpr uint8_t kVecXOnMsb = 0x08;
inline constexpr uint8_t kVecXOffMsb = 0x09;
inline constexpr uint8_t kVecXLsb = 0x0A;
inline constexpr uint8_t kVecIntensityMsb = 0x0B;
inline constexpr uint8_t kVecIntensityLsb = 0x0C;
}  // namespace code

/// Timestamp bits 39..16.
struct TsMsb {
  uint32_t ts_msb = 0;  // 24-bit
  bool operator==(const TsMsb&) const = default;
};

/// Row address plus timestamp bits 15..8.
struct EventY {
  uint16_t y = 0;
  uint8_t ts_lsb = 0;
  bool operator==(const EventY&) const = default;
};

/// Column address plus the top 8 bits of the co-located 32-bit intensity.
struct MixedXMsb {
  Polarity polarity = Polarity::On;
  uint16_t x = 0;
  uint8_t intensity_msb = 0;  // intensity bits 31..24
  bool operator==(const MixedXMsb&) const = default;
};

/// Lower 24 bits of the intensity opened by the preceding MixedXMsb.
struct MixedXLsb {
  uint32_t intensity_lsb24 = 0;  // intensity bits 23..0
  bool operator==(const MixedXLsb&) const = default;
};

/// Serialized event: column address plus timestamp bits 7..0.
struct EventX {
  Polarity polarity = Polarity::On;
  uint16_t x = 0;
  uint8_t ts_llsb = 0;
  bool operator==(const EventX&) const = default;
};

/// Vector root address plus the one-hot occupancy of the first 8 columns.
struct VecXMsb {
  Polarity polarity = Polarity::On;
  uint16_t root_x = 0;
  uint8_t onehot8 = 0;
  bool operator==(const VecXMsb&) const = default;
};

/// Daisy-chained one-hot word covering the next 24 columns of the open vector.
struct VecXLsb {
  uint32_t onehot24 = 0;
  bool operator==(const VecXLsb&) const = default;
};

/// Intensity bits 31..8 for the next pending vectorized column.
struct VecIntensityMsb {
  uint32_t intensity_msb24 = 0;
  bool operator==(const VecIntensityMsb&) const = default;
};

/// Intensity bits 7..0; the remaining 16 payload bits are zero padding.
struct VecIntensityLsb {
  uint8_t intensity_lsb8 = 0;
  bool operator==(const VecIntensityLsb&) const = default;
};

/// One decoded 32-bit wire word. The twelve wire codes map onto nine
/// variants; ON/OFF code pairs fold into a Polarity field.
using Datum = std::variant<TsMsb, EventY, MixedXMsb, MixedXLsb, EventX,
                           VecXMsb, VecXLsb, VecIntensityMsb, VecIntensityLsb>;

/// Packs a datum into its 32-bit word: code in bits 31..24, 16-bit address
/// fields in bits 23..8, trailing 8-bit fields in bits 7..0, and 24-bit
/// fields filling bits 23..0.
/// Errors: FieldOverflow if a 24-bit field exceeds its width.
Result<uint32_t> encode_word(const Datum& datum);

/// Inverse of encode_word; total over all 2^32 inputs.
/// Errors: UnknownDatumCode for code bytes outside 0x01..0x0C,
/// NonzeroPadding (strict only) for a VecIntensityLsb with nonzero bits 15..0.
Result<Datum> decode_word(uint32_t word,
                          Strictness strictness = Strictness::Strict);

/// Code byte a datum serializes under.
uint8_t datum_code(const Datum& datum);

bool is_valid_code(uint8_t code);

/// True for words that carry a column address or one-hot column occupancy
/// (EVENT X, MIXED X MSB, VEC X MSB, VEC X LSB).
bool is_address_word(uint8_t code);

/// Uppercase wire name for a code byte ("TS_MSB", ...), "UNKNOWN" otherwise.
std::string_view datum_code_name(uint8_t code);

// Words travel big-endian so the code byte leads on the wire.
void append_word_be(std::vector<uint8_t>& out, uint32_t word);
std::vector<uint8_t> words_to_bytes(std::span<const uint32_t> words);
uint32_t read_word_be(const uint8_t* p);
std::vector<uint32_t> bytes_to_words(std::span<const uint8_t> bytes);

}  // namespace evtp
