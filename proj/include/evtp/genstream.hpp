#pragma once

#include <cstdint>
#include <vector>

#include "evtp/event.hpp"
#include "evtp/result.hpp"

namespace evtp {

enum class Scenario : uint8_t {
  MovingEdge,      // vertical ON edge with a trailing OFF edge sweeping the FoV
  UniformPoisson,  // i.i.d. pixels at a mean rate — the serial-friendly case
  RowBurst,        // dense runs of consecutive columns — the vector-friendly case
};

struct GenParams {
  Scenario scenario = Scenario::UniformPoisson;
  uint16_t rows = 480;
  uint16_t cols = 640;
  uint64_t duration_us = 1'000'000;
  double rate_hz = 10'000.0;        // poisson: events/s; row-burst: bursts/s
  double speed_px_per_s = 1'000.0;  // moving-edge sweep speed
  uint32_t run_len = 32;            // row-burst run length
  uint64_t seed = 1;
  /// Fill each event's intensity with the ramp (x + y + t_us) mod 2^32 so
  /// mixed-mode round trips are checkable without an imaging model.
  bool with_intensity = false;
};

/// Deterministic synthetic event streams, sorted by (t_us, y, x, polarity).
/// duration_us = 0 yields an empty stream.
/// Errors: BadParams.
Result<std::vector<EventRecord>> generate(const GenParams& params);

}  // namespace evtp
