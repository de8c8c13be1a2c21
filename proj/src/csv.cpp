#include "evtp/csv.hpp"

#include <charconv>
#include <cstdio>

namespace evtp {

namespace {

Error line_error(size_t line_no, const std::string& what) {
  return Error{Errc::BadParams,
               "line " + std::to_string(line_no) + ": " + what};
}

bool parse_u64(std::string_view field, uint64_t& out) {
  if (field.empty()) return false;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc{} && ptr == field.data() + field.size();
}

}  // namespace

std::string events_to_csv(std::span<const EventRecord> events) {
  std::string out(kCsvHeader);
  out += '\n';
  char buf[96];
  for (const EventRecord& e : events) {
    int n;
    if (e.intensity) {
      n = std::snprintf(buf, sizeof(buf), "%llu,%u,%u,%u,%u\n",
                        (unsigned long long)e.t_us, unsigned(e.x),
                        unsigned(e.y), unsigned(e.polarity), *e.intensity);
    } else {
      n = std::snprintf(buf, sizeof(buf), "%llu,%u,%u,%u,\n",
                        (unsigned long long)e.t_us, unsigned(e.x),
                        unsigned(e.y), unsigned(e.polarity));
    }
    out.append(buf, size_t(n));
  }
  return out;
}

Result<std::vector<EventRecord>> events_from_csv(std::string_view text) {
  if (text.empty()) return line_error(1, "missing header line");
  std::vector<EventRecord> events;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      if (pos > text.size()) break;
      if (line_no == 1) return line_error(1, "missing header line");
      continue;
    }
    if (line_no == 1) {
      if (line != kCsvHeader)
        return line_error(1, "header must be '" + std::string(kCsvHeader) + "'");
      continue;
    }

    std::string_view fields[5];
    size_t nfields = 0, start = 0;
    for (size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        if (nfields >= 5) return line_error(line_no, "too many fields");
        fields[nfields++] = line.substr(start, i - start);
        start = i + 1;
      }
    }
    if (nfields != 5) return line_error(line_no, "expected 5 fields");

    EventRecord e;
    uint64_t v = 0;
    if (!parse_u64(fields[0], v) || v > kMaxTimestampUs)
      return line_error(line_no, "bad t_us");
    e.t_us = v;
    if (!parse_u64(fields[1], v) || v > 0xFFFF)
      return line_error(line_no, "bad x");
    e.x = uint16_t(v);
    if (!parse_u64(fields[2], v) || v > 0xFFFF)
      return line_error(line_no, "bad y");
    e.y = uint16_t(v);
    if (!parse_u64(fields[3], v) || v > 1)
      return line_error(line_no, "p must be 0 or 1");
    e.polarity = v ? Polarity::On : Polarity::Off;
    if (!fields[4].empty()) {
      if (!parse_u64(fields[4], v) || v > 0xFFFFFFFF)
        return line_error(line_no, "bad intensity");
      e.intensity = uint32_t(v);
    }
    events.push_back(e);
  }
  return events;
}

}  // namespace evtp
