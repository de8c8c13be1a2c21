#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "evtp/costmodel.hpp"
#include "evtp/event.hpp"
#include "evtp/result.hpp"
#include "evtp/wire.hpp"

namespace evtp {

enum class VectorPolicy : uint8_t { AlwaysSerial, AlwaysVector, Adaptive };

struct EncodeConfig {
  DataModality modality = DataModality::Event;
  /// Ignored for the serialized modalities (4, 5).
  VectorPolicy vector_policy = VectorPolicy::Adaptive;
  /// Vectorization binning window; events closer than this may share a
  /// vector. Groups never cross a 256 us timestamp quantum, so the encoded
  /// time keeps bits 39..8 of every event exactly. Must be >= 1 for
  /// modalities 6 and 7.
  uint32_t bin_us = 256;
  VectorCostParams cost;
};

/// One partitioned run of columns within a row, tagged with how it will be
/// emitted. Vectorized groups are anchored at root (their first column).
struct ColumnGroup {
  uint16_t root = 0;
  bool vectorized = false;
  std::vector<uint16_t> columns;
};

/// Greedy ascending partition of one row's columns (single polarity) into
/// groups whose span never exceeds the chain maximum (56), tagged serial or
/// vectorized per policy. Columns must be strictly ascending; groups cover
/// the input exactly once, in order.
std::vector<ColumnGroup> partition_row(std::span<const uint16_t> columns,
                                       VectorPolicy policy,
                                       const VectorCostParams& params = {});

/// Transforms a time-sorted event list into a datum word stream.
/// Requirements: events sorted by (t_us, y, x); t_us < 2^40; intensity
/// present on every event iff the modality is Mixed or MixedVectorized.
/// Errors: UnsortedInput, MissingIntensity, FieldOverflow, BadParams.
Result<std::vector<uint32_t>> encode_payload(std::span<const EventRecord> events,
                                             const EncodeConfig& config);

}  // namespace evtp
