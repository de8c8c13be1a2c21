#include "evtp/index.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <vector>

namespace evtp {

namespace {

// Offsets are u32, so a table longer than this could not be addressed anyway.
constexpr uint64_t kMaxIntervals = uint64_t(1) << 26;

struct TimedEvent {
  uint64_t t = 0;
  uint32_t tsmsb_offset = 0;
};

/// Modality-agnostic time scanner: the word types alone determine when events
/// occur and which TS MSB governs them. Words before the first TS MSB or
/// EVENT Y cannot carry a valid time and are skipped, matching what a lenient
/// decode drops. Stops after max_events emissions.
Result<std::vector<TimedEvent>> scan_event_times(
    std::span<const uint32_t> words, size_t max_events) {
  std::vector<TimedEvent> events;
  std::optional<uint32_t> msb;
  std::optional<uint32_t> tsmsb_offset;
  uint8_t lsb = 0;
  bool have_row = false;

  for (size_t i = 0; i < words.size() && events.size() < max_events; ++i) {
    const uint32_t w = words[i];
    const uint8_t c = uint8_t(w >> 24);
    if (!is_valid_code(c)) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "unknown code 0x%02X at byte %zu",
                    unsigned(c), 4 * i);
      return Error{Errc::UndecodablePayload, buf};
    }
    const bool contextual = msb && have_row && tsmsb_offset;
    switch (c) {
      case code::kTsMsb:
        msb = w & 0xFFFFFF;
        tsmsb_offset = uint32_t(4 * i);
        have_row = false;
        break;
      case code::kEventY:
        lsb = uint8_t(w & 0xFF);
        have_row = true;
        break;
      case code::kEventXOn:
      case code::kEventXOff:
        if (contextual)
          events.push_back({assemble_timestamp(*msb, lsb, uint8_t(w & 0xFF)),
                            *tsmsb_offset});
        break;
      case code::kMixedXOnMsb:
      case code::kMixedXOffMsb:
      case code::kVecXOnMsb:
      case code::kVecXOffMsb:
      case code::kVecXLsb:
        // All emit at the chain/pair timestamp with a zero trailing byte.
        if (contextual)
          events.push_back({assemble_timestamp(*msb, lsb, 0), *tsmsb_offset});
        break;
      default:
        break;  // intensity words carry no new event time
    }
  }
  return events;
}

}  // namespace

Result<PointerTable> build_pointer_table(std::span<const uint32_t> words,
                                         uint32_t increment_us) {
  if (increment_us == 0)
    return Error{Errc::BadParams, "pointer increment must be >= 1"};
  auto scan = scan_event_times(words, SIZE_MAX);
  if (!scan) return scan.error();
  const auto& events = scan.value();

  PointerTable table;
  table.increment_us = increment_us;
  if (events.empty()) return table;

  const uint64_t t0 = events.front().t;
  uint64_t t_last = t0;
  for (const TimedEvent& e : events) t_last = std::max(t_last, e.t);
  const uint64_t intervals = (t_last - t0) / increment_us + 1;
  if (intervals > kMaxIntervals)
    return Error{Errc::BadParams,
                 "pointer table would need " + std::to_string(intervals) +
                     " intervals; increase the increment"};
  table.offsets.assign(size_t(intervals), kPointerSentinel);
  for (const TimedEvent& e : events) {
    if (e.t < t0) continue;  // unreachable from any interval start
    const size_t k = size_t((e.t - t0) / increment_us);
    if (table.offsets[k] == kPointerSentinel)
      table.offsets[k] = e.tsmsb_offset;  // first event of the interval wins
  }
  return table;
}

Result<SeekResult> seek(const PointerTable& table,
                        std::span<const uint32_t> words, uint64_t t_us) {
  if (table.increment_us == 0)
    return Error{Errc::BadParams, "pointer table has no increment"};
  if (table.offsets.empty())
    return Error{Errc::SentinelInterval, "empty pointer table"};
  auto scan = scan_event_times(words, 1);  // only t0 is needed
  if (!scan) return scan.error();
  if (scan.value().empty())
    return Error{Errc::SentinelInterval, "payload has no events"};
  const uint64_t t0 = scan.value().front().t;

  size_t idx = 0;
  if (t_us > t0) {
    idx = size_t(std::min<uint64_t>((t_us - t0) / table.increment_us,
                                    uint64_t(table.offsets.size()) - 1));
  }
  if (table.offsets[idx] == kPointerSentinel) {
    return Error{Errc::SentinelInterval,
                 "no data in interval " + std::to_string(idx)};
  }
  SeekResult out;
  out.byte_offset = table.offsets[idx];
  out.interval_start_us = t0 + uint64_t(idx) * table.increment_us;
  return out;
}

}  // namespace evtp
