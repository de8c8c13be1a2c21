#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "evtp/decoder.hpp"
#include "evtp/header.hpp"
#include "evtp/result.hpp"

namespace evtp {

/// One header plus its payload words. A recording concatenates segments; a
/// new segment captures a runtime reconfiguration.
struct Segment {
  HeaderRecord header;
  std::vector<uint32_t> words;
  /// Byte offset of the first payload word within the recording. Filled by
  /// read_recording; ignored on write.
  uint64_t payload_offset = 0;
};

/// Serializes segments back-to-back: encoded header, then payload words
/// big-endian. Each segment's pointer table is rebuilt from its payload using
/// the increment already set in its header (increment 0 writes an empty
/// table). num_datum must equal the word count, except that the final segment
/// may use 0 (read to end of input).
/// Errors: CountMismatch; header/index errors pass through.
Result<std::vector<uint8_t>> write_recording(std::span<const Segment> segments);

struct ReadRecordingResult {
  std::vector<Segment> segments;
  std::vector<Diagnostic> diagnostics;  // offsets are absolute byte positions
  bool ok = true;
};

/// Parses a recording. num_datum = 0 reads words to end of input. Lenient
/// mode salvages what it can and reports the rest as diagnostics.
/// Errors (strict): BadHeaderId, Truncated, ReservedNonzero, TrailingGarbage.
ReadRecordingResult read_recording(std::span<const uint8_t> bytes,
                                   Strictness strictness = Strictness::Strict);

/// Decodes one segment's payload against its header: runs the payload state
/// machine for event modalities (4..7) and, in strict mode, checks every
/// event against the header's rows/cols. Frame-shaped modalities (1..3) carry
/// no datum types; a non-empty payload claiming one is rejected.
DecodeResult decode_segment(const Segment& segment,
                            Strictness strictness = Strictness::Strict);

}  // namespace evtp
