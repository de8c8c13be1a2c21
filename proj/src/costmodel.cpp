#include "evtp/costmodel.hpp"

#include <cstdio>

namespace evtp {

namespace {

Error span_too_large(uint32_t span, uint32_t cap) {
  char buf[72];
  std::snprintf(buf, sizeof(buf), "span %u exceeds chain maximum %u", span,
                cap);
  return Error{Errc::SpanTooLarge, buf};
}

uint32_t ceil_div(uint32_t a, uint32_t b) { return (a + b - 1) / b; }

}  // namespace

uint64_t serial_cost_bits(uint64_t n_events, const VectorCostParams& params) {
  return uint64_t(params.nbits_root) * n_events;
}

Result<uint32_t> vector_cost_bits(uint16_t root, std::span<const uint16_t> xs,
                                  const VectorCostParams& params) {
  if (xs.empty()) return Error{Errc::BadParams, "empty column set"};
  uint16_t max_x = xs.front();
  for (uint16_t x : xs) {
    if (x < root) return Error{Errc::BadParams, "column below root"};
    if (x > max_x) max_x = x;
  }
  const uint32_t span = uint32_t(max_x) - root + 1;
  if (span > params.max_span()) return span_too_large(span, params.max_span());
  if (span <= params.msb_free_span) return params.nbits_root;
  return params.nbits_root +
         params.nbits_offst *
             ceil_div(span - params.msb_free_span, params.nbits_offst);
}

Result<uint32_t> vector_cost_words(uint32_t span,
                                   const VectorCostParams& params) {
  if (span == 0) return Error{Errc::BadParams, "zero span"};
  if (span > params.max_span()) return span_too_large(span, params.max_span());
  if (span <= params.msb_free_span) return 1u;
  return 1u + ceil_div(span - params.msb_free_span, params.nbits_offst);
}

Result<bool> should_vectorize(std::span<const uint16_t> xs,
                              const VectorCostParams& params) {
  if (xs.empty()) return Error{Errc::BadParams, "empty column set"};
  uint16_t min_x = xs.front(), max_x = xs.front();
  for (uint16_t x : xs) {
    if (x < min_x) min_x = x;
    if (x > max_x) max_x = x;
  }
  const uint32_t span = uint32_t(max_x) - min_x + 1;
  auto words = vector_cost_words(span, params);
  if (!words) return words.error();
  return uint64_t(words.value()) < uint64_t(xs.size());
}

}  // namespace evtp
