// evtp — encode, decode, inspect, seek, and generate EVT+ recordings.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evtp/container.hpp"
#include "evtp/csv.hpp"
#include "evtp/encoder.hpp"
#include "evtp/genstream.hpp"
#include "evtp/index.hpp"

namespace {

using namespace evtp;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

void print_diagnostic(uint64_t offset, Errc code, const std::string& detail) {
  std::cerr << "offset=" << offset << " code=" << errc_name(code)
            << " detail=" << detail << "\n";
}

void print_diagnostics(const std::vector<Diagnostic>& diags, uint64_t base) {
  for (const Diagnostic& d : diags)
    print_diagnostic(base + d.offset, d.code, d.detail);
}

bool read_file(const std::string& path, std::vector<uint8_t>& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  out.assign(std::istreambuf_iterator<char>(in),
             std::istreambuf_iterator<char>());
  return !in.bad();
}

bool read_text_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return !in.bad();
}

bool write_file(const std::string& path, const void* data, size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out.write(static_cast<const char*>(data), std::streamsize(size));
  return bool(out);
}

const char* modality_label(uint8_t m) {
  switch (m) {
    case 1: return "frames of intensity";
    case 2: return "event integration images";
    case 3: return "event dt images";
    case 4: return "baseline event";
    case 5: return "mixed event";
    case 6: return "vectorized event";
    case 7: return "mixed vectorized";
    default: return "reserved";
  }
}

struct EncodeOpts {
  std::string input, output;
  std::string mode = "baseline";
  std::string policy = "adaptive";
  uint32_t bin_us = 256;
  uint32_t rows = 0, cols = 0;  // 0 = derive from events
  std::string sensor_model = "evtp synthetic";
  uint32_t ptr_increment_us = 1000;
};

DataModality mode_from_name(const std::string& name) {
  if (name == "mixed") return DataModality::Mixed;
  if (name == "vectorized") return DataModality::Vectorized;
  if (name == "mixed-vectorized") return DataModality::MixedVectorized;
  return DataModality::Event;
}

VectorPolicy policy_from_name(const std::string& name) {
  if (name == "serial") return VectorPolicy::AlwaysSerial;
  if (name == "vector") return VectorPolicy::AlwaysVector;
  return VectorPolicy::Adaptive;
}

int cmd_encode(const EncodeOpts& o) {
  std::string text;
  if (!read_text_file(o.input, text)) {
    std::cerr << "cannot read " << o.input << "\n";
    return kExitFailure;
  }
  auto parsed = events_from_csv(text);
  if (!parsed) {
    print_diagnostic(0, parsed.error().code, parsed.error().detail);
    return kExitFailure;
  }
  const std::vector<EventRecord>& events = parsed.value();

  uint32_t rows = o.rows, cols = o.cols;
  if (rows == 0 || cols == 0) {
    uint32_t max_x = 0, max_y = 0;
    for (const EventRecord& e : events) {
      max_x = std::max<uint32_t>(max_x, e.x);
      max_y = std::max<uint32_t>(max_y, e.y);
    }
    if (rows == 0) rows = max_y + 1;
    if (cols == 0) cols = max_x + 1;
  } else {
    for (size_t i = 0; i < events.size(); ++i) {
      if (events[i].x >= cols || events[i].y >= rows) {
        print_diagnostic(0, Errc::FieldOverflow,
                         "event " + std::to_string(i) +
                             " outside the given --rows/--cols array");
        return kExitFailure;
      }
    }
  }

  EncodeConfig cfg;
  cfg.modality = mode_from_name(o.mode);
  cfg.vector_policy = policy_from_name(o.policy);
  cfg.bin_us = o.bin_us;
  auto words = encode_payload(events, cfg);
  if (!words) {
    print_diagnostic(0, words.error().code, words.error().detail);
    return kExitFailure;
  }

  Segment seg;
  seg.header.data_modality = uint8_t(cfg.modality);
  seg.header.rows = uint16_t(std::min<uint32_t>(rows, 0xFFFF));
  seg.header.cols = uint16_t(std::min<uint32_t>(cols, 0xFFFF));
  seg.header.sensor_model = make_sensor_model(o.sensor_model);
  seg.header.num_datum =
      words.value().size() < (1u << 18) ? uint32_t(words.value().size()) : 0;
  seg.header.pointer_table.increment_us = o.ptr_increment_us;
  seg.words = std::move(words.value());

  auto bytes = write_recording(std::span<const Segment>(&seg, 1));
  if (!bytes) {
    print_diagnostic(0, bytes.error().code, bytes.error().detail);
    return kExitFailure;
  }
  if (!write_file(o.output, bytes.value().data(), bytes.value().size())) {
    std::cerr << "cannot write " << o.output << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

struct DecodeOpts {
  std::string input, output;
  bool lenient = false;
  std::optional<uint64_t> from_us, to_us;
};

int cmd_decode(const DecodeOpts& o) {
  std::vector<uint8_t> bytes;
  if (!read_file(o.input, bytes)) {
    std::cerr << "cannot read " << o.input << "\n";
    return kExitFailure;
  }
  const Strictness strictness =
      o.lenient ? Strictness::Lenient : Strictness::Strict;
  ReadRecordingResult rec = read_recording(bytes, strictness);
  print_diagnostics(rec.diagnostics, 0);
  if (!rec.ok) return kExitFailure;

  const uint64_t from = o.from_us.value_or(0);
  const uint64_t to = o.to_us.value_or(kMaxTimestampUs + 1);
  std::vector<EventRecord> all;
  for (const Segment& seg : rec.segments) {
    DecodeResult dec;
    uint64_t diag_base = seg.payload_offset;
    const PointerTable& table = seg.header.pointer_table;
    if (from > 0 && table.increment_us > 0 && !table.offsets.empty() &&
        is_event_modality(seg.header.data_modality)) {
      auto s = seek(table, seg.words, from);
      if (s) {
        // Decode only from the resolved word onward; the pointer guarantees
        // every event at or after the interval start is reachable.
        Segment sub;
        sub.header = seg.header;
        sub.words.assign(seg.words.begin() + s.value().byte_offset / 4,
                         seg.words.end());
        dec = decode_segment(sub, strictness);
        diag_base += s.value().byte_offset;
      } else if (s.error().code == Errc::SentinelInterval) {
        dec = decode_segment(seg, strictness);
      } else {
        print_diagnostic(seg.payload_offset, s.error().code, s.error().detail);
        return kExitFailure;
      }
    } else {
      dec = decode_segment(seg, strictness);
    }
    print_diagnostics(dec.diagnostics, diag_base);
    if (!dec.ok) return kExitFailure;
    for (const EventRecord& e : dec.events) {
      if (e.t_us >= from && e.t_us < to) all.push_back(e);
    }
  }
  // segments are independent recordings; keep the CSV globally time-sorted
  std::stable_sort(all.begin(), all.end(),
                   [](const EventRecord& a, const EventRecord& b) {
                     return a.t_us < b.t_us;
                   });
  const std::string csv = events_to_csv(all);
  if (!write_file(o.output, csv.data(), csv.size())) {
    std::cerr << "cannot write " << o.output << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_inspect(const std::string& input) {
  std::vector<uint8_t> bytes;
  if (!read_file(input, bytes)) {
    std::cerr << "cannot read " << input << "\n";
    return kExitFailure;
  }
  ReadRecordingResult rec = read_recording(bytes, Strictness::Lenient);
  print_diagnostics(rec.diagnostics, 0);
  char buf[128];
  for (size_t i = 0; i < rec.segments.size(); ++i) {
    const Segment& seg = rec.segments[i];
    const HeaderRecord& h = seg.header;
    std::printf("segment %zu\n", i);
    std::printf("  header_id        0x%02X\n", unsigned(h.header_id));
    std::printf("  epoch_ts         %llu\n", (unsigned long long)h.epoch_ts);
    std::printf("  global_ts        %u\n", h.global_ts);
    std::printf("  sensor_modality  %u\n", unsigned(h.sensor_modality));
    std::printf("  data_modality    %u (%s)\n", unsigned(h.data_modality),
                modality_label(h.data_modality));
    std::printf("  num_datum        %u%s\n", h.num_datum,
                h.num_datum == 0 ? " (read to end)" : "");
    std::printf("  rows             %u\n", unsigned(h.rows));
    std::printf("  cols             %u\n", unsigned(h.cols));
    std::printf("  sensor_model     \"%s\"\n", h.sensor_model.c_str());
    std::printf("  user_words       %zu\n", h.user_words.size());
    for (size_t k = 0; k < h.user_words.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "    user[%zu]", k);
      std::printf("%-19s0x%08X\n", buf, h.user_words[k]);
    }
    std::printf("  pointer_table    count=%zu increment_us=%u\n",
                h.pointer_table.offsets.size(), h.pointer_table.increment_us);
    for (size_t k = 0; k < h.pointer_table.offsets.size(); ++k) {
      const uint32_t off = h.pointer_table.offsets[k];
      std::snprintf(buf, sizeof(buf), "    ptr[%zu]", k);
      if (off == kPointerSentinel)
        std::printf("%-19s(sentinel)\n", buf);
      else
        std::printf("%-19s%u\n", buf, off);
    }
    std::printf("  payload_words    %zu\n", seg.words.size());
  }
  return kExitOk;
}

int cmd_stats(const std::string& input) {
  std::vector<uint8_t> bytes;
  if (!read_file(input, bytes)) {
    std::cerr << "cannot read " << input << "\n";
    return kExitFailure;
  }
  ReadRecordingResult rec = read_recording(bytes, Strictness::Lenient);
  print_diagnostics(rec.diagnostics, 0);

  uint64_t histogram[256] = {};
  uint64_t total_words = 0, x_words = 0;
  std::vector<EventRecord> events;
  for (const Segment& seg : rec.segments) {
    total_words += seg.words.size();
    for (uint32_t w : seg.words) {
      const uint8_t c = uint8_t(w >> 24);
      histogram[c] += 1;
      if (is_address_word(c)) ++x_words;
    }
    DecodeResult dec = decode_segment(seg, Strictness::Lenient);
    print_diagnostics(dec.diagnostics, seg.payload_offset);
    for (EventRecord& e : dec.events) events.push_back(std::move(e));
  }

  // Re-encode as baseline events to get the serialized X-word floor.
  uint64_t baseline_x = 0;
  std::vector<EventRecord> plain = events;
  std::sort(plain.begin(), plain.end(),
            [](const EventRecord& a, const EventRecord& b) {
              return std::tie(a.t_us, a.y, a.x) < std::tie(b.t_us, b.y, b.x);
            });
  for (EventRecord& e : plain) e.intensity.reset();
  EncodeConfig baseline;
  baseline.modality = DataModality::Event;
  if (auto re = encode_payload(plain, baseline)) {
    for (uint32_t w : re.value())
      if (is_address_word(uint8_t(w >> 24))) ++baseline_x;
  }

  std::printf("segments          %zu\n", rec.segments.size());
  std::printf("total_words       %llu\n", (unsigned long long)total_words);
  std::printf("events            %zu\n", events.size());
  std::printf("bits_per_event    %.2f\n",
              events.empty() ? 0.0
                             : double(total_words) * 32.0 / double(events.size()));
  std::printf("datum_histogram\n");
  uint64_t unknown = 0;
  for (uint32_t c = 0; c < 256; ++c) {
    if (histogram[c] == 0) continue;
    if (!is_valid_code(uint8_t(c))) {
      unknown += histogram[c];
      continue;
    }
    std::printf("  %-22s%llu\n", std::string(datum_code_name(uint8_t(c))).c_str(),
                (unsigned long long)histogram[c]);
  }
  if (unknown)
    std::printf("  %-22s%llu\n", "UNKNOWN", (unsigned long long)unknown);
  std::printf("x_words           %llu\n", (unsigned long long)x_words);
  std::printf("baseline_x_words  %llu\n", (unsigned long long)baseline_x);
  std::printf("x_word_ratio      %.2f\n",
              x_words == 0 ? 0.0 : double(baseline_x) / double(x_words));
  return kExitOk;
}

int cmd_seek(const std::string& input, uint64_t at_us) {
  std::vector<uint8_t> bytes;
  if (!read_file(input, bytes)) {
    std::cerr << "cannot read " << input << "\n";
    return kExitFailure;
  }
  ReadRecordingResult rec = read_recording(bytes, Strictness::Lenient);
  print_diagnostics(rec.diagnostics, 0);

  for (size_t i = 0; i < rec.segments.size(); ++i) {
    const Segment& seg = rec.segments[i];
    if (!is_event_modality(seg.header.data_modality)) continue;
    const PointerTable& table = seg.header.pointer_table;
    if (table.increment_us == 0 || table.offsets.empty()) continue;

    auto resolve = [&](uint64_t t) { return seek(table, seg.words, t); };
    auto s = resolve(at_us);
    // An empty interval means "no events here"; scan forward through the
    // table until one has data.
    uint64_t probe = at_us;
    while (!s && s.error().code == Errc::SentinelInterval &&
           probe + table.increment_us > probe) {
      probe += table.increment_us;
      const uint64_t limit =
          uint64_t(table.offsets.size()) * table.increment_us;
      if (probe > limit + at_us) break;
      s = resolve(probe);
    }
    if (!s) continue;

    std::span<const uint32_t> tail(seg.words);
    tail = tail.subspan(s.value().byte_offset / 4);
    DecodeResult dec = decode_payload(
        tail, DataModality(seg.header.data_modality), Strictness::Lenient);
    for (const EventRecord& e : dec.events) {
      if (e.t_us < at_us) continue;
      std::printf("segment=%zu interval_start_us=%llu payload_offset=%u "
                  "file_offset=%llu\n",
                  i, (unsigned long long)s.value().interval_start_us,
                  s.value().byte_offset,
                  (unsigned long long)(seg.payload_offset +
                                       s.value().byte_offset));
      std::printf("event t_us=%llu x=%u y=%u p=%u intensity=%s\n",
                  (unsigned long long)e.t_us, unsigned(e.x), unsigned(e.y),
                  unsigned(e.polarity),
                  e.intensity ? std::to_string(*e.intensity).c_str() : "");
      return kExitOk;
    }
  }
  std::printf("no events at or after t_us=%llu\n", (unsigned long long)at_us);
  return kExitOk;
}

struct GenOpts {
  std::string scenario = "uniform-poisson";
  std::string output;
  uint64_t seed = 1;
  uint32_t rows = 480, cols = 640;
  uint64_t duration_us = 1'000'000;
  double rate_hz = 10'000.0;
  double speed_px_per_s = 1'000.0;
  uint32_t run_len = 32;
  bool with_intensity = false;
};

int cmd_gen(const GenOpts& o) {
  GenParams p;
  if (o.scenario == "moving-edge") p.scenario = Scenario::MovingEdge;
  else if (o.scenario == "row-burst") p.scenario = Scenario::RowBurst;
  else p.scenario = Scenario::UniformPoisson;
  p.rows = uint16_t(o.rows);
  p.cols = uint16_t(o.cols);
  p.duration_us = o.duration_us;
  p.rate_hz = o.rate_hz;
  p.speed_px_per_s = o.speed_px_per_s;
  p.run_len = o.run_len;
  p.seed = o.seed;
  p.with_intensity = o.with_intensity;
  auto events = generate(p);
  if (!events) {
    print_diagnostic(0, events.error().code, events.error().detail);
    return kExitFailure;
  }
  const std::string csv = events_to_csv(events.value());
  if (!write_file(o.output, csv.data(), csv.size())) {
    std::cerr << "cannot write " << o.output << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EVT+ event-stream codec"};
  app.require_subcommand(1);

  EncodeOpts enc;
  CLI::App* encode = app.add_subcommand("encode", "encode a CSV event list");
  encode->add_option("--input", enc.input, "input .csv")->required();
  encode->add_option("--output", enc.output, "output .evtp")->required();
  encode->add_option("--mode", enc.mode, "transmission mode")
      ->check(CLI::IsMember(
          {"baseline", "mixed", "vectorized", "mixed-vectorized"}));
  encode->add_option("--vector-policy", enc.policy, "vectorization policy")
      ->check(CLI::IsMember({"adaptive", "serial", "vector"}));
  encode->add_option("--bin-us", enc.bin_us, "vectorization bin window (us)");
  encode->add_option("--rows", enc.rows, "array rows (default: derived)")
      ->check(CLI::Range(0, 65535));
  encode->add_option("--cols", enc.cols, "array cols (default: derived)")
      ->check(CLI::Range(0, 65535));
  encode->add_option("--sensor-model", enc.sensor_model, "32-char model label");
  encode->add_option("--ptr-increment-us", enc.ptr_increment_us,
                     "pointer table increment; 0 disables the index");

  DecodeOpts dec;
  bool strict_flag = false;
  CLI::App* decode = app.add_subcommand("decode", "decode a recording to CSV");
  decode->add_option("--input", dec.input, "input .evtp")->required();
  decode->add_option("--output", dec.output, "output .csv")->required();
  CLI::Option* opt_strict = decode->add_flag("--strict", strict_flag,
                                             "fail on malformed input (default)");
  decode->add_flag("--lenient", dec.lenient, "tolerate, diagnose, resync")
      ->excludes(opt_strict);
  uint64_t from_us = 0, to_us = 0;
  CLI::Option* opt_from =
      decode->add_option("--from-us", from_us, "window start (uses the index)");
  CLI::Option* opt_to = decode->add_option("--to-us", to_us, "window end, exclusive");

  std::string inspect_input;
  CLI::App* inspect = app.add_subcommand("inspect", "print header fields");
  inspect->add_option("--input", inspect_input, "input .evtp")->required();

  std::string stats_input;
  CLI::App* stats = app.add_subcommand("stats", "payload statistics");
  stats->add_option("--input", stats_input, "input .evtp")->required();

  std::string seek_input;
  uint64_t at_us = 0;
  CLI::App* seekcmd = app.add_subcommand("seek", "resolve a time to an offset");
  seekcmd->add_option("--input", seek_input, "input .evtp")->required();
  seekcmd->add_option("--at-us", at_us, "target time")->required();

  GenOpts gen;
  CLI::App* gencmd = app.add_subcommand("gen", "generate a synthetic stream");
  gencmd->add_option("--scenario", gen.scenario, "stream shape")
      ->check(CLI::IsMember({"moving-edge", "uniform-poisson", "row-burst"}));
  gencmd->add_option("--output", gen.output, "output .csv")->required();
  gencmd->add_option("--seed", gen.seed, "rng seed");
  gencmd->add_option("--rows", gen.rows, "array rows")
      ->check(CLI::Range(1, 65535));
  gencmd->add_option("--cols", gen.cols, "array cols")
      ->check(CLI::Range(1, 65535));
  gencmd->add_option("--duration-us", gen.duration_us, "stream length");
  gencmd->add_option("--rate-hz", gen.rate_hz, "event or burst rate");
  gencmd->add_option("--speed", gen.speed_px_per_s, "edge speed, px/s");
  gencmd->add_option("--run-len", gen.run_len, "burst run length");
  gencmd->add_flag("--intensity", gen.with_intensity,
                   "fill the intensity column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << "\n";
    return kExitUsage;
  }

  if (*encode) return cmd_encode(enc);
  if (*decode) {
    if (*opt_from) dec.from_us = from_us;
    if (*opt_to) dec.to_us = to_us;
    return cmd_decode(dec);
  }
  if (*inspect) return cmd_inspect(inspect_input);
  if (*stats) return cmd_stats(stats_input);
  if (*seekcmd) return cmd_seek(seek_input, at_us);
  if (*gencmd) return cmd_gen(gen);
  return kExitUsage;
}
