#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <span>
#include <tuple>
#include <vector>

#include "evtp/decoder.hpp"
#include "evtp/event.hpp"
#include "evtp/wire.hpp"

namespace evtp::testing {

inline void canonical_sort(std::vector<EventRecord>& events) {
  std::sort(events.begin(), events.end(),
            [](const EventRecord& a, const EventRecord& b) {
              return std::tie(a.t_us, a.y, a.x, a.polarity, a.intensity) <
                     std::tie(b.t_us, b.y, b.x, b.polarity, b.intensity);
            });
}

inline std::vector<EventRecord> events_without_intensity(
    std::vector<EventRecord> events) {
  for (EventRecord& e : events) e.intensity.reset();
  return events;
}

/// What a lossless round trip through the given modality preserves: the full
/// 40-bit timestamp only in baseline mode (the trailing byte is repurposed
/// elsewhere), intensity only in the mixed modes.
inline std::vector<EventRecord> at_modality_resolution(
    std::vector<EventRecord> events, DataModality m) {
  for (EventRecord& e : events) {
    if (m != DataModality::Event) e.t_us &= ~uint64_t(0xFF);
    if (!modality_carries_intensity(m)) e.intensity.reset();
  }
  return events;
}

/// Sorted-by-(t, y, x) random events within a small array, duplicates
/// possible. Intensities are filled when the modality wants them.
inline std::vector<EventRecord> random_events(std::mt19937_64& rng, size_t n,
                                              uint16_t rows, uint16_t cols,
                                              uint64_t t_max,
                                              bool with_intensity) {
  std::vector<EventRecord> events(n);
  for (EventRecord& e : events) {
    e.t_us = rng() % (t_max + 1);
    e.x = uint16_t(rng() % cols);
    e.y = uint16_t(rng() % rows);
    e.polarity = (rng() & 1) ? Polarity::On : Polarity::Off;
    if (with_intensity) e.intensity = uint32_t(rng());
  }
  std::sort(events.begin(), events.end(),
            [](const EventRecord& a, const EventRecord& b) {
              return std::tie(a.t_us, a.y, a.x) < std::tie(b.t_us, b.y, b.x);
            });
  return events;
}

/// Deliberately naive reference decoder for well-formed payloads: no carried
/// state, every event re-derives its context by scanning backward from its
/// own word. Exists purely as an independent oracle.
inline std::vector<EventRecord> naive_decode(std::span<const uint32_t> words,
                                             DataModality modality) {
  std::vector<EventRecord> out;
  const auto code_at = [&](size_t i) { return uint8_t(words[i] >> 24); };
  const auto payload_at = [&](size_t i) { return words[i] & 0xFFFFFF; };

  // Last TS MSB / EVENT Y at or before position i.
  const auto ts_msb_before = [&](size_t i) -> uint32_t {
    for (size_t j = i + 1; j-- > 0;)
      if (code_at(j) == code::kTsMsb) return payload_at(j);
    return 0;
  };
  const auto event_y_before = [&](size_t i, uint16_t& y, uint8_t& lsb) {
    for (size_t j = i + 1; j-- > 0;) {
      if (code_at(j) == code::kEventY) {
        y = uint16_t(payload_at(j) >> 8);
        lsb = uint8_t(payload_at(j) & 0xFF);
        return;
      }
    }
    y = 0;
    lsb = 0;
  };
  const auto time_at = [&](size_t i, uint8_t llsb) {
    uint16_t y;
    uint8_t lsb;
    event_y_before(i, y, lsb);
    return assemble_timestamp(ts_msb_before(i), lsb, llsb);
  };
  const auto row_at = [&](size_t i) {
    uint16_t y;
    uint8_t lsb;
    event_y_before(i, y, lsb);
    return y;
  };
  // Start of the vector chain containing position i (its VEC X MSB).
  const auto chain_start = [&](size_t i) -> size_t {
    for (size_t j = i + 1; j-- > 0;) {
      const uint8_t c = code_at(j);
      if (c == code::kVecXOnMsb || c == code::kVecXOffMsb) return j;
    }
    return 0;
  };
  const auto chain_columns = [&](size_t msb_at) {
    std::vector<uint16_t> cols;
    const uint32_t root = payload_at(msb_at) >> 8;
    const uint8_t onehot8 = uint8_t(payload_at(msb_at) & 0xFF);
    for (uint32_t b = 0; b < 8; ++b)
      if ((onehot8 >> b) & 1) cols.push_back(uint16_t(root + b));
    size_t k = 0;
    for (size_t j = msb_at + 1; j < words.size() && code_at(j) == code::kVecXLsb;
         ++j, ++k) {
      for (uint32_t b = 0; b < 24; ++b)
        if ((payload_at(j) >> b) & 1)
          cols.push_back(uint16_t(root + 8 + 24 * k + b));
    }
    return cols;
  };

  for (size_t i = 0; i < words.size(); ++i) {
    switch (code_at(i)) {
      case code::kEventXOn:
      case code::kEventXOff: {
        EventRecord e;
        e.polarity =
            code_at(i) == code::kEventXOn ? Polarity::On : Polarity::Off;
        e.x = uint16_t(payload_at(i) >> 8);
        e.y = row_at(i);
        e.t_us = time_at(i, uint8_t(payload_at(i) & 0xFF));
        out.push_back(e);
        break;
      }
      case code::kMixedXLsb: {
        // In a well-formed stream the MSB is the immediately preceding word.
        EventRecord e;
        e.polarity = code_at(i - 1) == code::kMixedXOnMsb ? Polarity::On
                                                          : Polarity::Off;
        e.x = uint16_t(payload_at(i - 1) >> 8);
        e.y = row_at(i);
        e.t_us = time_at(i, 0);
        e.intensity =
            (uint32_t(payload_at(i - 1) & 0xFF) << 24) | payload_at(i);
        out.push_back(e);
        break;
      }
      case code::kVecXOnMsb:
      case code::kVecXOffMsb: {
        if (modality != DataModality::Vectorized) break;
        const uint32_t root = payload_at(i) >> 8;
        const uint8_t onehot8 = uint8_t(payload_at(i) & 0xFF);
        for (uint32_t b = 0; b < 8; ++b) {
          if (!((onehot8 >> b) & 1)) continue;
          EventRecord e;
          e.polarity =
              code_at(i) == code::kVecXOnMsb ? Polarity::On : Polarity::Off;
          e.x = uint16_t(root + b);
          e.y = row_at(i);
          e.t_us = time_at(i, 0);
          out.push_back(e);
        }
        break;
      }
      case code::kVecXLsb: {
        if (modality != DataModality::Vectorized) break;
        const size_t start = chain_start(i);
        size_t position = 0;  // how many LSB words precede this one
        for (size_t j = start + 1; j < i; ++j)
          if (code_at(j) == code::kVecXLsb) ++position;
        const uint32_t root = payload_at(start) >> 8;
        for (uint32_t b = 0; b < 24; ++b) {
          if (!((payload_at(i) >> b) & 1)) continue;
          EventRecord e;
          e.polarity = code_at(start) == code::kVecXOnMsb ? Polarity::On
                                                          : Polarity::Off;
          e.x = uint16_t(root + 8 + 24 * position + b);
          e.y = row_at(i);
          e.t_us = time_at(i, 0);
          out.push_back(e);
        }
        break;
      }
      case code::kVecIntensityLsb: {
        // Pairing index = count of completed intensity pairs in this chain.
        const size_t start = chain_start(i);
        size_t pair_index = 0;
        for (size_t j = start + 1; j < i; ++j)
          if (code_at(j) == code::kVecIntensityLsb) ++pair_index;
        const auto cols = chain_columns(start);
        EventRecord e;
        e.polarity = code_at(start) == code::kVecXOnMsb ? Polarity::On
                                                        : Polarity::Off;
        e.x = cols.at(pair_index);
        e.y = row_at(i);
        e.t_us = time_at(i, 0);
        e.intensity = (payload_at(i - 1) << 8) | (payload_at(i) >> 16);
        out.push_back(e);
        break;
      }
      default:
        break;
    }
  }
  return out;
}

}  // namespace evtp::testing
