#pragma once

#include <cstdint>
#include <optional>

#include "evtp/wire.hpp"

namespace evtp {

/// Payload data modalities. Values 1..3 are frame-shaped modalities the
/// header can signal but this codec carries no datum types for; 4..7 are the
/// event transmission modes.
enum class DataModality : uint8_t {
  FramesIntensity = 1,
  EventIntegration = 2,
  EventDt = 3,
  Event = 4,            // serialized address events, full 40-bit timestamp
  Mixed = 5,            // serialized events, each with a 32-bit intensity
  Vectorized = 6,       // one-hot column vectors per row and polarity
  MixedVectorized = 7,  // vectors followed by per-column intensity pairs
};

inline bool is_event_modality(uint8_t m) { return m >= 4 && m <= 7; }

inline bool modality_carries_intensity(DataModality m) {
  return m == DataModality::Mixed || m == DataModality::MixedVectorized;
}

/// One logical sensor event. Timestamps are microseconds, 40 bits of range.
/// intensity is present exactly when the segment's modality is Mixed or
/// MixedVectorized.
struct EventRecord {
  uint64_t t_us = 0;
  uint16_t x = 0;
  uint16_t y = 0;
  Polarity polarity = Polarity::On;
  std::optional<uint32_t> intensity;

  bool operator==(const EventRecord&) const = default;
};

inline constexpr uint64_t kMaxTimestampUs = (uint64_t(1) << 40) - 1;

}  // namespace evtp
