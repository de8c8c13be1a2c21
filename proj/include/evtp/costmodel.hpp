#pragma once

#include <cstdint>
#include <span>

#include "evtp/result.hpp"

namespace evtp {

/// Bit-accounting constants for the vectorization tradeoff. Defaults are the
/// wire values: 16-bit serialized addresses, 24-bit chained one-hot words,
/// and 8 columns carried free in the vector MSB word.
struct VectorCostParams {
  uint32_t nbits_root = 16;
  uint32_t nbits_offst = 24;
  uint32_t msb_free_span = 8;

  /// Widest column span one chain can cover (MSB word + two LSB words: 56).
  uint32_t max_span() const { return msb_free_span + 2 * nbits_offst; }
};

/// Address bits for sending n events serialized: nbits_root per event.
uint64_t serial_cost_bits(uint64_t n_events,
                          const VectorCostParams& params = {});

/// Address bits for sending the columns xs as one vector anchored at root:
/// nbits_root if the span fits the MSB word, plus nbits_offst per chained
/// word otherwise. Independent of how many columns are asserted.
/// Errors: SpanTooLarge if the span exceeds max_span(); BadParams if xs is
/// empty or min(xs) < root.
Result<uint32_t> vector_cost_bits(uint16_t root, std::span<const uint16_t> xs,
                                  const VectorCostParams& params = {});

/// 32-bit words needed to vectorize a span: 1 MSB word plus chained LSBs.
/// Errors: SpanTooLarge.
Result<uint32_t> vector_cost_words(uint32_t span,
                                   const VectorCostParams& params = {});

/// Word-level crossover decision: vectorize iff the chain takes strictly
/// fewer words than one serialized word per event. Ties stay serial, which
/// keeps the trailing timestamp byte. xs must be ascending.
/// Errors: SpanTooLarge; BadParams for empty xs.
Result<bool> should_vectorize(std::span<const uint16_t> xs,
                              const VectorCostParams& params = {});

}  // namespace evtp
