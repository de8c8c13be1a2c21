#include "evtp/genstream.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>

namespace evtp {

namespace {

// mt19937_64 with hand-rolled draws keeps streams identical across standard
// library implementations.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(uint64_t seed) : engine(seed) {}

  uint64_t next() { return engine(); }
  uint32_t below(uint32_t n) { return uint32_t(next() % n); }
  double unit() { return double(next() >> 11) * 0x1.0p-53; }  // [0, 1)
  double exponential(double mean) { return -std::log(1.0 - unit()) * mean; }
  Polarity polarity() { return (next() & 1) ? Polarity::On : Polarity::Off; }
};

uint32_t ramp_intensity(uint16_t x, uint16_t y, uint64_t t_us) {
  return uint32_t(uint64_t(x) + uint64_t(y) + t_us);
}

void finalize(std::vector<EventRecord>& events, bool with_intensity) {
  std::sort(events.begin(), events.end(),
            [](const EventRecord& a, const EventRecord& b) {
              return std::tie(a.t_us, a.y, a.x, a.polarity) <
                     std::tie(b.t_us, b.y, b.x, b.polarity);
            });
  if (with_intensity) {
    for (EventRecord& e : events)
      e.intensity = ramp_intensity(e.x, e.y, e.t_us);
  }
}

std::vector<EventRecord> gen_moving_edge(const GenParams& p) {
  std::vector<EventRecord> events;
  const double step_us = 1e6 / p.speed_px_per_s;  // one column per step
  for (uint64_t k = 0;; ++k) {
    const double tau = double(k) * step_us;
    if (tau >= double(p.duration_us)) break;
    const uint64_t t = uint64_t(tau);
    const uint16_t lead = uint16_t(k % p.cols);
    const uint16_t trail = uint16_t((lead + p.cols - 1) % p.cols);
    for (uint16_t y = 0; y < p.rows; ++y) {
      events.push_back({t, lead, y, Polarity::On, std::nullopt});
      events.push_back({t, trail, y, Polarity::Off, std::nullopt});
    }
  }
  return events;
}

std::vector<EventRecord> gen_uniform_poisson(const GenParams& p, Rng& rng) {
  std::vector<EventRecord> events;
  const double mean_gap_us = 1e6 / p.rate_hz;
  double tau = rng.exponential(mean_gap_us);
  while (tau < double(p.duration_us)) {
    EventRecord e;
    e.t_us = uint64_t(tau);
    e.x = uint16_t(rng.below(p.cols));
    e.y = uint16_t(rng.below(p.rows));
    e.polarity = rng.polarity();
    events.push_back(e);
    tau += rng.exponential(mean_gap_us);
  }
  return events;
}

std::vector<EventRecord> gen_row_burst(const GenParams& p, Rng& rng) {
  std::vector<EventRecord> events;
  const double mean_gap_us = 1e6 / p.rate_hz;
  double tau = rng.exponential(mean_gap_us);
  while (tau < double(p.duration_us)) {
    const uint64_t t = uint64_t(tau);
    const uint16_t y = uint16_t(rng.below(p.rows));
    const uint16_t start = uint16_t(rng.below(p.cols - p.run_len + 1));
    const Polarity pol = rng.polarity();
    for (uint32_t i = 0; i < p.run_len; ++i)
      events.push_back({t, uint16_t(start + i), y, pol, std::nullopt});
    tau += rng.exponential(mean_gap_us);
  }
  return events;
}

}  // namespace

Result<std::vector<EventRecord>> generate(const GenParams& p) {
  if (p.rows == 0 || p.cols == 0)
    return Error{Errc::BadParams, "rows and cols must be positive"};
  if (p.duration_us > kMaxTimestampUs)
    return Error{Errc::BadParams, "duration exceeds 40-bit timestamp range"};
  if (p.duration_us == 0) return std::vector<EventRecord>{};

  std::vector<EventRecord> events;
  Rng rng(p.seed);
  switch (p.scenario) {
    case Scenario::MovingEdge:
      if (!(p.speed_px_per_s > 0))
        return Error{Errc::BadParams, "speed must be positive"};
      events = gen_moving_edge(p);
      break;
    case Scenario::UniformPoisson:
      if (!(p.rate_hz > 0))
        return Error{Errc::BadParams, "rate must be positive"};
      events = gen_uniform_poisson(p, rng);
      break;
    case Scenario::RowBurst:
      if (!(p.rate_hz > 0))
        return Error{Errc::BadParams, "rate must be positive"};
      if (p.run_len == 0 || p.run_len > p.cols)
        return Error{Errc::BadParams, "run_len must be in 1..cols"};
      events = gen_row_burst(p, rng);
      break;
    default:
      return Error{Errc::BadParams, "unknown scenario"};
  }
  finalize(events, p.with_intensity);
  return events;
}

}  // namespace evtp
