#include "evtp/wire.hpp"

#include <cstdio>

namespace evtp {

namespace {

constexpr uint32_t kMax24 = 0xFFFFFF;

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

uint32_t pack24(uint8_t code, uint32_t payload24) {
  return (uint32_t(code) << 24) | (payload24 & kMax24);
}

uint32_t pack_addr(uint8_t code, uint16_t addr, uint8_t trailer) {
  return pack24(code, (uint32_t(addr) << 8) | trailer);
}

Error overflow24(const char* field, uint32_t value) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%s=0x%08X exceeds 24 bits", field, value);
  return Error{Errc::FieldOverflow, buf};
}

}  // namespace

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::FieldOverflow: return "FieldOverflow";
    case Errc::UnknownDatumCode: return "UnknownDatumCode";
    case Errc::NonzeroPadding: return "NonzeroPadding";
    case Errc::NonAsciiModel: return "NonAsciiModel";
    case Errc::BadHeaderId: return "BadHeaderId";
    case Errc::Truncated: return "Truncated";
    case Errc::ReservedNonzero: return "ReservedNonzero";
    case Errc::MissingTimestamp: return "MissingTimestamp";
    case Errc::MissingRow: return "MissingRow";
    case Errc::OrphanVectorLsb: return "OrphanVectorLsb";
    case Errc::OrphanIntensity: return "OrphanIntensity";
    case Errc::DanglingMixedMsb: return "DanglingMixedMsb";
    case Errc::IntensityUnderrun: return "IntensityUnderrun";
    case Errc::ModalityViolation: return "ModalityViolation";
    case Errc::ColumnOverflow: return "ColumnOverflow";
    case Errc::UnsortedInput: return "UnsortedInput";
    case Errc::MissingIntensity: return "MissingIntensity";
    case Errc::SpanTooLarge: return "SpanTooLarge";
    case Errc::UndecodablePayload: return "UndecodablePayload";
    case Errc::SentinelInterval: return "SentinelInterval";
    case Errc::CountMismatch: return "CountMismatch";
    case Errc::TrailingGarbage: return "TrailingGarbage";
    case Errc::BadParams: return "BadParams";
  }
  return "Unknown";
}

Result<uint32_t> encode_word(const Datum& datum) {
  return std::visit(
      Overload{
          [](const TsMsb& d) -> Result<uint32_t> {
            if (d.ts_msb > kMax24) return overflow24("ts_msb", d.ts_msb);
            return pack24(code::kTsMsb, d.ts_msb);
          },
          [](const EventY& d) -> Result<uint32_t> {
            return pack_addr(code::kEventY, d.y, d.ts_lsb);
          },
          [](const MixedXMsb& d) -> Result<uint32_t> {
            const uint8_t c = d.polarity == Polarity::On ? code::kMixedXOnMsb
                                                         : code::kMixedXOffMsb;
            return pack_addr(c, d.x, d.intensity_msb);
          },
          [](const MixedXLsb& d) -> Result<uint32_t> {
            if (d.intensity_lsb24 > kMax24)
              return overflow24("intensity_lsb24", d.intensity_lsb24);
            return pack24(code::kMixedXLsb, d.intensity_lsb24);
          },
          [](const EventX& d) -> Result<uint32_t> {
            const uint8_t c = d.polarity == Polarity::On ? code::kEventXOn
                                                         : code::kEventXOff;
            return pack_addr(c, d.x, d.ts_llsb);
          },
          [](const VecXMsb& d) -> Result<uint32_t> {
            const uint8_t c = d.polarity == Polarity::On ? code::kVecXOnMsb
                                                         : code::kVecXOffMsb;
            return pack_addr(c, d.root_x, d.onehot8);
          },
          [](const VecXLsb& d) -> Result<uint32_t> {
            if (d.onehot24 > kMax24) return overflow24("onehot24", d.onehot24);
            return pack24(code::kVecXLsb, d.onehot24);
          },
          [](const VecIntensityMsb& d) -> Result<uint32_t> {
            if (d.intensity_msb24 > kMax24)
              return overflow24("intensity_msb24", d.intensity_msb24);
            return pack24(code::kVecIntensityMsb, d.intensity_msb24);
          },
          [](const VecIntensityLsb& d) -> Result<uint32_t> {
            return pack24(code::kVecIntensityLsb,
                          uint32_t(d.intensity_lsb8) << 16);
          },
      },
      datum);
}

Result<Datum> decode_word(uint32_t word, Strictness strictness) {
  const uint8_t c = uint8_t(word >> 24);
  const uint32_t payload = word & kMax24;
  const uint16_t addr = uint16_t(payload >> 8);
  const uint8_t trailer = uint8_t(payload & 0xFF);
  switch (c) {
    case code::kTsMsb:
      return Datum{TsMsb{payload}};
    case code::kEventY:
      return Datum{EventY{addr, trailer}};
    case code::kMixedXOnMsb:
      return Datum{MixedXMsb{Polarity::On, addr, trailer}};
    case code::kMixedXOffMsb:
      return Datum{MixedXMsb{Polarity::Off, addr, trailer}};
    case code::kMixedXLsb:
      return Datum{MixedXLsb{payload}};
    case code::kEventXOn:
      return Datum{EventX{Polarity::On, addr, trailer}};
    case code::kEventXOff:
      return Datum{EventX{Polarity::Off, addr, trailer}};
    case code::kVecXOnMsb:
      return Datum{VecXMsb{Polarity::On, addr, trailer}};
    case code::kVecXOffMsb:
      return Datum{VecXMsb{Polarity::Off, addr, trailer}};
    case code::kVecXLsb:
      return Datum{VecXLsb{payload}};
    case code::kVecIntensityMsb:
      return Datum{VecIntensityMsb{payload}};
    case code::kVecIntensityLsb:
      if (strictness == Strictness::Strict && (payload & 0xFFFF) != 0) {
        char buf[72];
        std::snprintf(buf, sizeof(buf),
                      "VEC_X_INTENSITY_LSB padding bits 15..0 = 0x%04X",
                      unsigned(payload & 0xFFFF));
        return Error{Errc::NonzeroPadding, buf};
      }
      return Datum{VecIntensityLsb{uint8_t(payload >> 16)}};
    default: {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "code byte 0x%02X", unsigned(c));
      return Error{Errc::UnknownDatumCode, buf};
    }
  }
}

uint8_t datum_code(const Datum& datum) {
  return std::visit(
      Overload{
          [](const TsMsb&) { return code::kTsMsb; },
          [](const EventY&) { return code::kEventY; },
          [](const MixedXMsb& d) {
            return d.polarity == Polarity::On ? code::kMixedXOnMsb
                                              : code::kMixedXOffMsb;
          },
          [](const MixedXLsb&) { return code::kMixedXLsb; },
          [](const EventX& d) {
            return d.polarity == Polarity::On ? code::kEventXOn
                                              : code::kEventXOff;
          },
          [](const VecXMsb& d) {
            return d.polarity == Polarity::On ? code::kVecXOnMsb
                                              : code::kVecXOffMsb;
          },
          [](const VecXLsb&) { return code::kVecXLsb; },
          [](const VecIntensityMsb&) { return code::kVecIntensityMsb; },
          [](const VecIntensityLsb&) { return code::kVecIntensityLsb; },
      },
      datum);
}

bool is_valid_code(uint8_t code) {
  return code >= code::kTsMsb && code <= code::kVecIntensityLsb;
}

bool is_address_word(uint8_t code) {
  switch (code) {
    case code::kEventXOn:
    case code::kEventXOff:
    case code::kMixedXOnMsb:
    case code::kMixedXOffMsb:
    case code::kVecXOnMsb:
    case code::kVecXOffMsb:
    case code::kVecXLsb:
      return true;
    default:
      return false;
  }
}

std::string_view datum_code_name(uint8_t code) {
  switch (code) {
    case code::kTsMsb: return "TS_MSB";
    case code::kEventY: return "EVENT_Y";
    case code::kMixedXOnMsb: return "MIXED_X_ON_MSB";
    case code::kMixedXOffMsb: return "MIXED_X_OFF_MSB";
    case code::kMixedXLsb: return "MIXED_X_LSB";
    case code::kEventXOn: return "EVENT_X_ON";
    case code::kEventXOff: return "EVENT_X_OFF";
    case code::kVecXOnMsb: return "VEC_X_ON_MSB";
    case code::kVecXOffMsb: return "VEC_X_OFF_MSB";
    case code::kVecXLsb: return "VEC_X_LSB";
    case code::kVecIntensityMsb: return "VEC_X_INTENSITY_MSB";
    case code::kVecIntensityLsb: return "VEC_X_INTENSITY_LSB";
    default: return "UNKNOWN";
  }
}

void append_word_be(std::vector<uint8_t>& out, uint32_t word) {
  out.push_back(uint8_t(word >> 24));
  out.push_back(uint8_t(word >> 16));
  out.push_back(uint8_t(word >> 8));
  out.push_back(uint8_t(word));
}

std::vector<uint8_t> words_to_bytes(std::span<const uint32_t> words) {
  std::vector<uint8_t> out;
  out.reserve(words.size() * 4);
  for (uint32_t w : words) append_word_be(out, w);
  return out;
}

uint32_t read_word_be(const uint8_t* p) {
  return (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) |
         (uint32_t(p[2]) << 8) | uint32_t(p[3]);
}

std::vector<uint32_t> bytes_to_words(std::span<const uint8_t> bytes) {
  std::vector<uint32_t> out;
  out.reserve(bytes.size() / 4);
  for (size_t i = 0; i + 4 <= bytes.size(); i += 4)
    out.push_back(read_word_be(bytes.data() + i));
  return out;
}

}  // namespace evtp
