#include "evtp/encoder.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <optional>
#include <tuple>
#include <utility>

namespace evtp {

namespace {

struct ColEntry {
  uint16_t x = 0;
  uint32_t intensity = 0;
};

/// Tracks the shared timestamp/row context so TS MSB and EVENT Y words are
/// only re-sent when their bits change. A fresh TS MSB always forces the next
/// EVENT Y out, since it invalidates the decoder's row.
struct WordEmitter {
  std::vector<uint32_t> words;
  std::optional<uint32_t> last_msb;
  std::optional<std::pair<uint16_t, uint8_t>> last_row;
  uint8_t current_lsb = 0;

  void push(const Datum& d) { words.push_back(encode_word(d).value()); }

  void set_time(uint64_t t_hi32) {  // timestamp bits 39..8
    const uint32_t msb = uint32_t(t_hi32 >> 8);
    current_lsb = uint8_t(t_hi32 & 0xFF);
    if (!last_msb || *last_msb != msb) {
      push(TsMsb{msb});
      last_msb = msb;
      last_row.reset();
    }
  }

  void ensure_row(uint16_t y) {
    const std::pair<uint16_t, uint8_t> key{y, current_lsb};
    if (!last_row || *last_row != key) {
      push(EventY{y, current_lsb});
      last_row = key;
    }
  }
};

void emit_serial_column(const ColEntry& e, Polarity pol, DataModality m,
                        WordEmitter& em) {
  if (m == DataModality::Vectorized) {
    em.push(EventX{pol, e.x, 0});
  } else {  // MixedVectorized serial fallback carries the intensity pair
    em.push(MixedXMsb{pol, e.x, uint8_t(e.intensity >> 24)});
    em.push(MixedXLsb{e.intensity & 0xFFFFFF});
  }
}

void emit_group(const ColumnGroup& g, std::span<const ColEntry> entries,
                Polarity pol, DataModality m, WordEmitter& em) {
  if (!g.vectorized) {
    for (const ColEntry& e : entries) emit_serial_column(e, pol, m, em);
    return;
  }
  const uint32_t span = uint32_t(g.columns.back()) - g.root + 1;
  const uint32_t nlsb = span <= 8 ? 0 : (span - 8 + 23) / 24;
  uint8_t onehot8 = 0;
  std::vector<uint32_t> lsbs(nlsb, 0);
  for (uint16_t x : g.columns) {
    const uint32_t off = uint32_t(x) - g.root;
    if (off < 8)
      onehot8 |= uint8_t(1u << off);
    else
      lsbs[(off - 8) / 24] |= 1u << ((off - 8) % 24);
  }
  em.push(VecXMsb{pol, g.root, onehot8});
  for (uint32_t bits : lsbs) em.push(VecXLsb{bits});
  if (m == DataModality::MixedVectorized) {
    for (const ColEntry& e : entries) {
      em.push(VecIntensityMsb{e.intensity >> 8});
      em.push(VecIntensityLsb{uint8_t(e.intensity & 0xFF)});
    }
  }
}

// Event-per-event emission in input order. Baseline mode keeps the trailing
// timestamp byte; every other mode repurposes or zeroes it.
void encode_serial(std::span<const EventRecord> events, DataModality m,
                   WordEmitter& em) {
  const bool with_intensity = modality_carries_intensity(m);
  for (const EventRecord& e : events) {
    em.set_time(e.t_us >> 8);
    em.ensure_row(e.y);
    if (with_intensity) {
      const uint32_t intensity = e.intensity.value();
      em.push(MixedXMsb{e.polarity, e.x, uint8_t(intensity >> 24)});
      em.push(MixedXLsb{intensity & 0xFFFFFF});
    } else {
      const uint8_t llsb =
          m == DataModality::Event ? uint8_t(e.t_us & 0xFF) : 0;
      em.push(EventX{e.polarity, e.x, llsb});
    }
  }
}

void encode_columns(std::vector<ColEntry>& entries, Polarity pol,
                    const EncodeConfig& cfg, WordEmitter& em) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const ColEntry& a, const ColEntry& b) { return a.x < b.x; });
  // Duplicate columns cannot share a one-hot chain; peel them off into
  // successive rounds so every occurrence is preserved.
  std::vector<ColEntry> current = std::move(entries);
  std::vector<uint16_t> xs;
  while (!current.empty()) {
    std::vector<ColEntry> round, carried;
    uint32_t last_x = UINT32_MAX;
    for (const ColEntry& e : current) {
      if (e.x != last_x) {
        round.push_back(e);
        last_x = e.x;
      } else {
        carried.push_back(e);
      }
    }
    xs.clear();
    xs.reserve(round.size());
    for (const ColEntry& e : round) xs.push_back(e.x);
    const auto groups = partition_row(xs, cfg.vector_policy, cfg.cost);
    size_t idx = 0;
    for (const ColumnGroup& g : groups) {
      emit_group(g, std::span<const ColEntry>(round).subspan(idx, g.columns.size()),
                 pol, cfg.modality, em);
      idx += g.columns.size();
    }
    current = std::move(carried);
  }
}

void encode_binned(std::span<const EventRecord> events, const EncodeConfig& cfg,
                   WordEmitter& em) {
  size_t i = 0;
  while (i < events.size()) {
    const uint64_t hi = events[i].t_us >> 8;
    const uint64_t bin = events[i].t_us / cfg.bin_us;
    size_t j = i;
    while (j < events.size() && (events[j].t_us >> 8) == hi &&
           events[j].t_us / cfg.bin_us == bin)
      ++j;

    // Per row, ON columns then OFF columns.
    std::map<uint16_t, std::array<std::vector<ColEntry>, 2>> rows;
    for (size_t k = i; k < j; ++k) {
      const EventRecord& e = events[k];
      const size_t side = e.polarity == Polarity::On ? 0 : 1;
      rows[e.y][side].push_back(ColEntry{e.x, e.intensity.value_or(0)});
    }
    em.set_time(hi);
    for (auto& [y, sides] : rows) {
      em.ensure_row(y);
      if (!sides[0].empty()) encode_columns(sides[0], Polarity::On, cfg, em);
      if (!sides[1].empty()) encode_columns(sides[1], Polarity::Off, cfg, em);
    }
    i = j;
  }
}

}  // namespace

std::vector<ColumnGroup> partition_row(std::span<const uint16_t> columns,
                                       VectorPolicy policy,
                                       const VectorCostParams& params) {
  std::vector<ColumnGroup> groups;
  const uint32_t cap = params.max_span();
  size_t i = 0;
  while (i < columns.size()) {
    const uint16_t root = columns[i];
    size_t j = i + 1;
    while (j < columns.size() && uint32_t(columns[j]) - root + 1 <= cap) ++j;
    ColumnGroup g;
    g.root = root;
    g.columns.assign(columns.begin() + i, columns.begin() + j);
    switch (policy) {
      case VectorPolicy::AlwaysSerial:
        g.vectorized = false;
        break;
      case VectorPolicy::AlwaysVector:
        g.vectorized = true;
        break;
      case VectorPolicy::Adaptive:
        g.vectorized = should_vectorize(g.columns, params).value();
        break;
    }
    groups.push_back(std::move(g));
    i = j;
  }
  return groups;
}

Result<std::vector<uint32_t>> encode_payload(std::span<const EventRecord> events,
                                             const EncodeConfig& config) {
  const DataModality m = config.modality;
  if (!is_event_modality(uint8_t(m)))
    return Error{Errc::BadParams,
                 "data modality " + std::to_string(int(m)) +
                     " is not an event transmission mode"};
  const bool binned =
      m == DataModality::Vectorized || m == DataModality::MixedVectorized;
  if (binned && config.bin_us == 0)
    return Error{Errc::BadParams, "bin_us must be >= 1"};
  const bool wants_intensity = modality_carries_intensity(m);

  for (size_t i = 0; i < events.size(); ++i) {
    const EventRecord& e = events[i];
    if (e.t_us > kMaxTimestampUs) {
      char buf[72];
      std::snprintf(buf, sizeof(buf), "event %zu: t_us exceeds 40 bits", i);
      return Error{Errc::FieldOverflow, buf};
    }
    if (i > 0) {
      const EventRecord& p = events[i - 1];
      if (std::tie(p.t_us, p.y, p.x) > std::tie(e.t_us, e.y, e.x)) {
        char buf[72];
        std::snprintf(buf, sizeof(buf), "event %zu out of (t, y, x) order", i);
        return Error{Errc::UnsortedInput, buf};
      }
    }
    if (wants_intensity && !e.intensity) {
      char buf[72];
      std::snprintf(buf, sizeof(buf), "event %zu lacks intensity", i);
      return Error{Errc::MissingIntensity, buf};
    }
  }

  WordEmitter em;
  // always-serial degenerates the vectorized modes to their serialized
  // counterparts' word structure, so it skips binning altogether.
  if (binned && config.vector_policy != VectorPolicy::AlwaysSerial)
    encode_binned(events, config, em);
  else
    encode_serial(events, m, em);
  return std::move(em.words);
}

}  // namespace evtp
