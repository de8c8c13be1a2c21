#include "evtp/decoder.hpp"

#include <cstdio>

namespace evtp {

namespace {

bool allowed_in(DataModality m, uint8_t code) {
  switch (code) {
    case code::kTsMsb:
    case code::kEventY:
      return true;
    case code::kEventXOn:
    case code::kEventXOff:
      // Serial fallback groups keep EVENT X legal in vectorized mode; in the
      // mixed modes an EVENT X would produce an event without intensity.
      return m == DataModality::Event || m == DataModality::Vectorized;
    case code::kMixedXOnMsb:
    case code::kMixedXOffMsb:
    case code::kMixedXLsb:
      return m == DataModality::Mixed || m == DataModality::MixedVectorized;
    case code::kVecXOnMsb:
    case code::kVecXOffMsb:
    case code::kVecXLsb:
      return m == DataModality::Vectorized ||
             m == DataModality::MixedVectorized;
    case code::kVecIntensityMsb:
    case code::kVecIntensityLsb:
      return m == DataModality::MixedVectorized;
    default:
      return false;
  }
}

std::string describe_word(uint8_t code) {
  return std::string(datum_code_name(code));
}

}  // namespace

uint64_t assemble_timestamp(uint32_t ts_msb, uint8_t ts_lsb, uint8_t ts_llsb) {
  return (uint64_t(ts_msb & 0xFFFFFF) << 16) | (uint64_t(ts_lsb) << 8) |
         uint64_t(ts_llsb);
}

Result<std::vector<uint16_t>> expand_vector(
    uint16_t root_x, uint8_t onehot8, std::span<const uint32_t> lsb_words) {
  std::vector<uint16_t> columns;
  auto push = [&columns](uint32_t column) -> bool {
    if (column > 0xFFFF) return false;
    columns.push_back(uint16_t(column));
    return true;
  };
  for (uint32_t i = 0; i < 8; ++i) {
    if ((onehot8 >> i) & 1) {
      if (!push(uint32_t(root_x) + i)) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "column %u exceeds 16 bits",
                      unsigned(root_x) + i);
        return Error{Errc::ColumnOverflow, buf};
      }
    }
  }
  for (size_t k = 0; k < lsb_words.size(); ++k) {
    const uint32_t base = uint32_t(root_x) + 8 + 24 * uint32_t(k);
    const uint32_t bits = lsb_words[k] & 0xFFFFFF;
    for (uint32_t j = 0; j < 24; ++j) {
      if ((bits >> j) & 1) {
        if (!push(base + j)) {
          char buf[64];
          std::snprintf(buf, sizeof(buf), "column %u exceeds 16 bits",
                        base + j);
          return Error{Errc::ColumnOverflow, buf};
        }
      }
    }
  }
  return columns;
}

PayloadDecoder::PayloadDecoder(DataModality modality, Strictness strictness)
    : modality_(modality), strictness_(strictness) {}

bool PayloadDecoder::require_timestamp(uint64_t offset) {
  if (state_.ts_msb) return true;
  fail(offset, Errc::MissingTimestamp, "event word before any TS_MSB");
  return false;
}

bool PayloadDecoder::require_row(uint64_t offset) {
  if (state_.current_y) return true;
  fail(offset, Errc::MissingRow, "X-type word before any EVENT_Y");
  return false;
}

void PayloadDecoder::diagnose(uint64_t offset, Errc code, std::string detail) {
  result_.diagnostics.push_back(Diagnostic{offset, code, std::move(detail)});
}

void PayloadDecoder::fail(uint64_t offset, Errc code, std::string detail) {
  diagnose(offset, code, std::move(detail));
  state_.pending_mixed.reset();
  state_.vector_ctx.reset();
  state_.pending_columns.clear();
  state_.pending_intensity_msb.reset();
  if (strictness_ == Strictness::Strict) {
    halted_ = true;
    result_.ok = false;
  } else {
    resyncing_ = true;
  }
}

void PayloadDecoder::emit(uint16_t x, Polarity polarity, uint8_t ts_llsb,
                          std::optional<uint32_t> intensity) {
  EventRecord e;
  e.x = x;
  e.y = *state_.current_y;
  e.polarity = polarity;
  e.t_us = assemble_timestamp(*state_.ts_msb, state_.ts_lsb, ts_llsb);
  e.intensity = intensity;
  result_.events.push_back(e);
}

void PayloadDecoder::push(uint32_t word) {
  if (halted_) return;
  const uint64_t offset = current_offset();
  ++word_index_;

  auto decoded = decode_word(word, strictness_);
  if (!decoded) {
    fail(offset, decoded.error().code, decoded.error().detail);
    return;
  }
  const Datum& datum = decoded.value();
  const uint8_t c = datum_code(datum);

  if (resyncing_) {
    if (c != code::kTsMsb && c != code::kEventY) return;
    resyncing_ = false;
  }

  if (!allowed_in(modality_, c)) {
    fail(offset, Errc::ModalityViolation,
         describe_word(c) + " illegal in data modality " +
             std::to_string(int(modality_)));
    return;
  }

  // A MIXED X MSB must be followed immediately by its LSB.
  if (state_.pending_mixed && c != code::kMixedXLsb) {
    fail(offset, Errc::DanglingMixedMsb,
         "MIXED_X_MSB not followed by MIXED_X_LSB (got " + describe_word(c) +
             ")");
    // The offending word may itself restore enough context to continue.
    if (halted_ || (c != code::kTsMsb && c != code::kEventY)) return;
    resyncing_ = false;
  }

  // In mixed-vectorized mode a chain's intensity pairs must complete before
  // anything other than a chain extension arrives.
  if (!state_.pending_columns.empty()) {
    const bool chain_word =
        (c == code::kVecXLsb && state_.vector_ctx.has_value()) ||
        c == code::kVecIntensityMsb || c == code::kVecIntensityLsb;
    if (!chain_word) {
      const size_t missing = state_.pending_columns.size();
      fail(offset, Errc::IntensityUnderrun,
           std::to_string(missing) +
               " vectorized column(s) left without intensity");
      if (halted_ || (c != code::kTsMsb && c != code::kEventY)) return;
      resyncing_ = false;
    }
  }

  switch (c) {
    case code::kTsMsb: {
      state_.ts_msb = std::get<TsMsb>(datum).ts_msb;
      state_.current_y.reset();
      state_.vector_ctx.reset();
      break;
    }
    case code::kEventY: {
      const auto& d = std::get<EventY>(datum);
      state_.current_y = d.y;
      state_.ts_lsb = d.ts_lsb;
      state_.vector_ctx.reset();
      break;
    }
    case code::kEventXOn:
    case code::kEventXOff: {
      if (!require_timestamp(offset) || !require_row(offset)) return;
      const auto& d = std::get<EventX>(datum);
      state_.vector_ctx.reset();
      emit(d.x, d.polarity, d.ts_llsb, std::nullopt);
      break;
    }
    case code::kMixedXOnMsb:
    case code::kMixedXOffMsb: {
      if (!require_timestamp(offset) || !require_row(offset)) return;
      const auto& d = std::get<MixedXMsb>(datum);
      state_.vector_ctx.reset();
      state_.pending_mixed =
          DecoderState::PendingMixed{d.x, d.polarity, d.intensity_msb};
      break;
    }
    case code::kMixedXLsb: {
      if (!state_.pending_mixed) {
        fail(offset, Errc::OrphanIntensity,
             "MIXED_X_LSB without preceding MIXED_X_MSB");
        return;
      }
      const auto pm = *state_.pending_mixed;
      state_.pending_mixed.reset();
      const uint32_t intensity =
          (uint32_t(pm.intensity_msb) << 24) |
          std::get<MixedXLsb>(datum).intensity_lsb24;
      emit(pm.x, pm.polarity, 0, intensity);
      break;
    }
    case code::kVecXOnMsb:
    case code::kVecXOffMsb: {
      if (!require_timestamp(offset) || !require_row(offset)) return;
      const auto& d = std::get<VecXMsb>(datum);
      state_.vector_ctx = DecoderState::VectorCtx{d.root_x, d.polarity, 0};
      auto cols = expand_vector(d.root_x, d.onehot8, {});
      if (!cols) {
        fail(offset, cols.error().code, cols.error().detail);
        return;
      }
      for (uint16_t x : cols.value()) {
        if (modality_ == DataModality::Vectorized)
          emit(x, d.polarity, 0, std::nullopt);
        else
          state_.pending_columns.push_back(
              DecoderState::PendingColumn{x, d.polarity});
      }
      break;
    }
    case code::kVecXLsb: {
      if (!state_.vector_ctx) {
        fail(offset, Errc::OrphanVectorLsb, "VEC_X_LSB with no open vector");
        return;
      }
      auto& ctx = *state_.vector_ctx;
      const uint32_t base =
          uint32_t(ctx.root_x) + 8 + 24 * ctx.lsb_word_count;
      const uint32_t bits = std::get<VecXLsb>(datum).onehot24;
      ctx.lsb_word_count += 1;
      for (uint32_t j = 0; j < 24; ++j) {
        if (!((bits >> j) & 1)) continue;
        const uint32_t column = base + j;
        if (column > 0xFFFF) {
          char buf[64];
          std::snprintf(buf, sizeof(buf), "column %u exceeds 16 bits", column);
          fail(offset, Errc::ColumnOverflow, buf);
          return;
        }
        if (modality_ == DataModality::Vectorized)
          emit(uint16_t(column), ctx.polarity, 0, std::nullopt);
        else
          state_.pending_columns.push_back(
              DecoderState::PendingColumn{uint16_t(column), ctx.polarity});
      }
      break;
    }
    case code::kVecIntensityMsb: {
      if (state_.pending_columns.empty()) {
        fail(offset, Errc::OrphanIntensity,
             "VEC_X_INTENSITY_MSB with no pending vectorized column");
        return;
      }
      state_.vector_ctx.reset();  // chain closed once intensities begin
      state_.pending_intensity_msb =
          std::get<VecIntensityMsb>(datum).intensity_msb24;
      break;
    }
    case code::kVecIntensityLsb: {
      if (state_.pending_columns.empty()) {
        fail(offset, Errc::OrphanIntensity,
             "VEC_X_INTENSITY_LSB with no pending vectorized column");
        return;
      }
      if (!state_.pending_intensity_msb) {
        fail(offset, Errc::OrphanIntensity,
             "VEC_X_INTENSITY_LSB without preceding MSB");
        return;
      }
      const auto col = state_.pending_columns.front();
      state_.pending_columns.pop_front();
      const uint32_t intensity =
          (*state_.pending_intensity_msb << 8) |
          std::get<VecIntensityLsb>(datum).intensity_lsb8;
      state_.pending_intensity_msb.reset();
      emit(col.x, col.polarity, 0, intensity);
      break;
    }
    default:
      break;  // unreachable: decode_word rejects unknown codes
  }
}

void PayloadDecoder::finish() {
  if (finished_ || halted_) {
    finished_ = true;
    return;
  }
  finished_ = true;
  const uint64_t offset = current_offset();
  if (state_.pending_mixed) {
    fail(offset, Errc::DanglingMixedMsb,
         "segment ended between MIXED_X_MSB and MIXED_X_LSB");
  }
  if (!state_.pending_columns.empty()) {
    fail(offset, Errc::IntensityUnderrun,
         std::to_string(state_.pending_columns.size()) +
             " vectorized column(s) without intensity at segment end");
  }
}

DecodeResult PayloadDecoder::take() { return std::move(result_); }

DecodeResult decode_payload(std::span<const uint32_t> words,
                            DataModality modality, Strictness strictness) {
  PayloadDecoder dec(modality, strictness);
  for (uint32_t w : words) dec.push(w);
  dec.finish();
  return dec.take();
}

}  // namespace evtp
