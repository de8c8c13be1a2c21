#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evtp/event.hpp"
#include "evtp/result.hpp"
#include "evtp/wire.hpp"

namespace evtp {

/// One decode finding: byte offset within the payload, error code, text.
struct Diagnostic {
  uint64_t offset = 0;
  Errc code = Errc::BadParams;
  std::string detail;
};

/// Mutable decode context. One instance per stream; streams never share.
struct DecoderState {
  struct VectorCtx {
    uint16_t root_x = 0;
    Polarity polarity = Polarity::On;
    uint32_t lsb_word_count = 0;
  };
  struct PendingMixed {
    uint16_t x = 0;
    Polarity polarity = Polarity::On;
    uint8_t intensity_msb = 0;
  };
  struct PendingColumn {
    uint16_t x = 0;
    Polarity polarity = Polarity::On;
  };

  std::optional<uint32_t> ts_msb;
  std::optional<uint16_t> current_y;
  uint8_t ts_lsb = 0;
  std::optional<VectorCtx> vector_ctx;
  std::optional<PendingMixed> pending_mixed;
  std::deque<PendingColumn> pending_columns;  // awaiting intensity pairs
  std::optional<uint32_t> pending_intensity_msb;
};

struct DecodeResult {
  std::vector<EventRecord> events;
  std::vector<Diagnostic> diagnostics;
  /// Strict: true iff no error was hit. Lenient: always true; the decode
  /// terminated and diagnostics describe whatever was tolerated.
  bool ok = true;
};

/// t = (ts_msb << 16) | (ts_lsb << 8) | ts_llsb. ts_msb is masked to 24 bits.
uint64_t assemble_timestamp(uint32_t ts_msb, uint8_t ts_lsb, uint8_t ts_llsb);

/// Maps one-hot occupancy to absolute columns, ascending. Bit i of onehot8 is
/// column root_x + i; bit j of the k-th chained word (masked to 24 bits) is
/// column root_x + 8 + 24k + j.
/// Errors: ColumnOverflow if a column exceeds 16 bits.
Result<std::vector<uint16_t>> expand_vector(uint16_t root_x, uint8_t onehot8,
                                            std::span<const uint32_t> lsb_words);

/// Incremental payload decoder. Feed words with push(), then finish() once at
/// end of segment. Lenient mode turns every error into a diagnostic and
/// resynchronizes at the next TS MSB or EVENT Y word; strict mode halts at the
/// first error.
class PayloadDecoder {
 public:
  PayloadDecoder(DataModality modality, Strictness strictness);

  void push(uint32_t word);
  void finish();

  DecodeResult take();
  const DecoderState& state() const { return state_; }

 private:
  bool require_timestamp(uint64_t offset);
  bool require_row(uint64_t offset);
  void diagnose(uint64_t offset, Errc code, std::string detail);
  /// Diagnose and either halt (strict) or drop volatile state and skip words
  /// until the next TS MSB / EVENT Y (lenient).
  void fail(uint64_t offset, Errc code, std::string detail);
  void emit(uint16_t x, Polarity polarity, uint8_t ts_llsb,
            std::optional<uint32_t> intensity);
  uint64_t current_offset() const { return 4 * word_index_; }

  DataModality modality_;
  Strictness strictness_;
  DecoderState state_;
  DecodeResult result_;
  uint64_t word_index_ = 0;
  bool resyncing_ = false;
  bool halted_ = false;
  bool finished_ = false;
};

/// Decodes a whole payload in one call.
/// Only event modalities (4..7) are decodable.
DecodeResult decode_payload(std::span<const uint32_t> words,
                            DataModality modality,
                            Strictness strictness = Strictness::Strict);

}  // namespace evtp
