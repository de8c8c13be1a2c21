#pragma once

#include <cstdint>
#include <span>

#include "evtp/decoder.hpp"
#include "evtp/header.hpp"
#include "evtp/result.hpp"

namespace evtp {

/// Builds the pointer-to-timestamps table for a payload. Interval k starts at
/// t0 + k * increment_us, where t0 is the first event's timestamp; its entry
/// is the byte offset of the TS MSB word governing the first event inside the
/// interval (decoding there is self-contained and reaches every event of the
/// interval), or the sentinel when the interval holds no events. The table
/// spans [t0, t_last].
/// Errors: BadParams (increment 0 or table absurdly large);
/// UndecodablePayload (unknown datum code).
Result<PointerTable> build_pointer_table(std::span<const uint32_t> words,
                                         uint32_t increment_us);

struct SeekResult {
  uint32_t byte_offset = 0;      // into the payload, multiple of 4
  uint64_t interval_start_us = 0;
  DecoderState state;            // fresh; decoding from byte_offset is cold
};

/// Resolves t_us to its interval (clamped to the table bounds) and returns
/// where to start decoding. Decoding from the returned offset and keeping
/// events with t >= interval_start_us yields exactly the events a full decode
/// would give past that point.
/// Errors: SentinelInterval when the clamped interval holds no events (the
/// caller may scan forward to the next non-sentinel interval).
Result<SeekResult> seek(const PointerTable& table,
                        std::span<const uint32_t> words, uint64_t t_us);

}  // namespace evtp
