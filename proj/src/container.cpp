#include "evtp/container.hpp"

#include <cstdio>

#include "evtp/index.hpp"

namespace evtp {

Result<std::vector<uint8_t>> write_recording(
    std::span<const Segment> segments) {
  std::vector<uint8_t> out;
  for (size_t si = 0; si < segments.size(); ++si) {
    const Segment& seg = segments[si];
    const bool final_segment = si + 1 == segments.size();
    if (seg.header.num_datum == 0) {
      if (!final_segment)
        return Error{Errc::CountMismatch,
                     "segment " + std::to_string(si) +
                         ": num_datum = 0 is only valid on the final segment"};
    } else if (seg.header.num_datum != seg.words.size()) {
      char buf[96];
      std::snprintf(buf, sizeof(buf),
                    "segment %zu: num_datum %u != %zu payload words", si,
                    seg.header.num_datum, seg.words.size());
      return Error{Errc::CountMismatch, buf};
    }

    HeaderRecord h = seg.header;
    if (h.pointer_table.increment_us > 0) {
      auto table = build_pointer_table(seg.words, h.pointer_table.increment_us);
      if (!table) return table.error();
      h.pointer_table = std::move(table.value());
    } else {
      h.pointer_table.offsets.clear();
    }
    auto bytes = encode_header(h);
    if (!bytes) return bytes.error();
    out.insert(out.end(), bytes.value().begin(), bytes.value().end());
    for (uint32_t w : seg.words) append_word_be(out, w);
  }
  return out;
}

ReadRecordingResult read_recording(std::span<const uint8_t> bytes,
                                   Strictness strictness) {
  ReadRecordingResult out;
  size_t pos = 0;
  auto report = [&](uint64_t offset, Errc code, std::string detail) {
    out.diagnostics.push_back(Diagnostic{offset, code, std::move(detail)});
    if (strictness == Strictness::Strict) out.ok = false;
  };

  while (pos < bytes.size()) {
    const size_t remaining = bytes.size() - pos;
    if (remaining < kMinHeaderBytes) {
      report(pos, Errc::TrailingGarbage,
             std::to_string(remaining) + " byte(s) after the last segment");
      break;
    }
    auto decoded = decode_header(bytes.subspan(pos), strictness);
    if (!decoded) {
      report(pos, decoded.error().code, decoded.error().detail);
      break;
    }
    Segment seg;
    seg.header = std::move(decoded.value().record);
    pos += decoded.value().consumed;
    seg.payload_offset = pos;

    if (seg.header.num_datum == 0) {
      const size_t whole = (bytes.size() - pos) / 4;
      seg.words = bytes_to_words(bytes.subspan(pos, whole * 4));
      pos += whole * 4;
      if (pos < bytes.size()) {
        report(pos, Errc::TrailingGarbage,
               std::to_string(bytes.size() - pos) +
                   " byte(s) do not form a whole word");
        pos = bytes.size();
      }
      out.segments.push_back(std::move(seg));
      break;  // read-to-end always terminates the recording
    }

    const size_t want = size_t(seg.header.num_datum) * 4;
    if (bytes.size() - pos < want) {
      const size_t whole = (bytes.size() - pos) / 4;
      report(pos, Errc::Truncated,
             "payload declares " + std::to_string(seg.header.num_datum) +
                 " words but only " + std::to_string(whole) + " remain");
      seg.words = bytes_to_words(bytes.subspan(pos, whole * 4));
      out.segments.push_back(std::move(seg));
      break;
    }
    seg.words = bytes_to_words(bytes.subspan(pos, want));
    pos += want;
    out.segments.push_back(std::move(seg));
  }
  return out;
}

DecodeResult decode_segment(const Segment& segment, Strictness strictness) {
  const HeaderRecord& h = segment.header;
  if (!is_event_modality(h.data_modality)) {
    DecodeResult out;
    if (!segment.words.empty()) {
      out.diagnostics.push_back(Diagnostic{
          0, Errc::ModalityViolation,
          "data modality " + std::to_string(int(h.data_modality)) +
              " defines no datum types; payload of " +
              std::to_string(segment.words.size()) + " words rejected"});
      out.ok = strictness == Strictness::Lenient;
    }
    return out;
  }

  DecodeResult out = decode_payload(segment.words, DataModality(h.data_modality),
                                    strictness);
  if (strictness == Strictness::Strict && out.ok) {
    for (size_t i = 0; i < out.events.size(); ++i) {
      const EventRecord& e = out.events[i];
      if (e.x >= h.cols || e.y >= h.rows) {
        char buf[96];
        std::snprintf(buf, sizeof(buf),
                      "event %zu at (x=%u, y=%u) outside %ux%u array", i,
                      unsigned(e.x), unsigned(e.y), unsigned(h.cols),
                      unsigned(h.rows));
        out.diagnostics.push_back(Diagnostic{0, Errc::FieldOverflow, buf});
        out.events.resize(i);
        out.ok = false;
        break;
      }
    }
  }
  return out;
}

}  // namespace evtp
