#include <random>
#include <vector>

#include "doctest.h"
#include "evtp/decoder.hpp"
#include "evtp/encoder.hpp"
#include "helpers.hpp"

using namespace evtp;
using namespace evtp::testing;

namespace {

EncodeConfig config(DataModality m,
                    VectorPolicy policy = VectorPolicy::Adaptive,
                    uint32_t bin_us = 256) {
  EncodeConfig cfg;
  cfg.modality = m;
  cfg.vector_policy = policy;
  cfg.bin_us = bin_us;
  return cfg;
}

size_t count_x_words(const std::vector<uint32_t>& words) {
  size_t n = 0;
  for (uint32_t w : words)
    if (is_address_word(uint8_t(w >> 24))) ++n;
  return n;
}

}  // namespace

TEST_CASE("empty input encodes to an empty payload") {
  CHECK(encode_payload({}, config(DataModality::Event)).value().empty());
  CHECK(encode_payload({}, config(DataModality::MixedVectorized)).value().empty());
}

TEST_CASE("one event in baseline mode takes exactly three words") {
  const std::vector<EventRecord> events = {
      {0x123456789A, 7, 3, Polarity::Off, {}}};
  const auto words = encode_payload(events, config(DataModality::Event)).value();
  REQUIRE(words.size() == 3);
  CHECK(decode_word(words[0]).value() == Datum{TsMsb{0x123456}});
  CHECK(decode_word(words[1]).value() == Datum{EventY{3, 0x78}});
  CHECK(decode_word(words[2]).value() == Datum{EventX{Polarity::Off, 7, 0x9A}});
}

TEST_CASE("four events at columns 32/34/36/38 vectorize into a single word") {
  std::vector<EventRecord> events;
  for (uint16_t x : {32, 34, 36, 38})
    events.push_back({1000, x, 5, Polarity::On, {}});
  const auto words =
      encode_payload(events,
                     config(DataModality::Vectorized, VectorPolicy::AlwaysVector))
          .value();
  REQUIRE(words.size() == 3);  // TS MSB, EVENT Y, VEC X MSB
  CHECK(decode_word(words[2]).value() ==
        Datum{VecXMsb{Polarity::On, 32, 0b01010101}});
}

TEST_CASE("ts msb is only re-sent when bits 39..16 change") {
  std::vector<EventRecord> events = {
      {100, 1, 0, Polarity::On, {}},
      {200, 2, 0, Polarity::On, {}},   // same msb, same lsb
      {300, 3, 0, Polarity::On, {}},   // same msb, lsb changes: new EVENT Y
      {0x10000, 4, 0, Polarity::On, {}},  // msb tick
  };
  const auto words = encode_payload(events, config(DataModality::Event)).value();
  std::vector<uint8_t> codes;
  for (uint32_t w : words) codes.push_back(uint8_t(w >> 24));
  CHECK(codes == std::vector<uint8_t>{
                     code::kTsMsb, code::kEventY, code::kEventXOn,
                     code::kEventXOn, code::kEventY, code::kEventXOn,
                     code::kTsMsb, code::kEventY, code::kEventXOn});
}

TEST_CASE("a row spanning a ts tick re-sends EVENT Y even if (y, lsb) match") {
  // bits 15..8 identical on both sides of the msb tick
  std::vector<EventRecord> events = {
      {0x00FF00, 1, 9, Polarity::On, {}},
      {0x01FF00, 2, 9, Polarity::On, {}},
  };
  const auto words = encode_payload(events, config(DataModality::Event)).value();
  const DecodeResult r = decode_payload(words, DataModality::Event);
  REQUIRE(r.ok);
  CHECK(r.events.size() == 2);  // without the re-send this would be MissingRow
}

TEST_CASE("partition_row") {
  SUBCASE("singleton stays serial under adaptive") {
    const std::vector<uint16_t> cols = {10};
    const auto groups = partition_row(cols, VectorPolicy::Adaptive);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].root == 10);
    CHECK_FALSE(groups[0].vectorized);
  }
  SUBCASE("eight consecutive columns fold into one vector word") {
    const std::vector<uint16_t> cols = {0, 1, 2, 3, 4, 5, 6, 7};
    const auto groups = partition_row(cols, VectorPolicy::Adaptive);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].vectorized);
    CHECK(groups[0].root == 0);
  }
  SUBCASE("columns farther apart than one chain split into serial groups") {
    const std::vector<uint16_t> cols = {0, 100};
    const auto groups = partition_row(cols, VectorPolicy::Adaptive);
    REQUIRE(groups.size() == 2);
    CHECK_FALSE(groups[0].vectorized);
    CHECK_FALSE(groups[1].vectorized);
    CHECK(groups[1].root == 100);
  }
  SUBCASE("groups cover the input exactly once, span capped at 56") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<uint16_t> cols;
      uint16_t x = 0;
      for (int i = 0; i < 40; ++i) {
        x = uint16_t(x + 1 + rng() % 12);
        cols.push_back(x);
      }
      const auto groups = partition_row(cols, VectorPolicy::Adaptive);
      std::vector<uint16_t> flat;
      for (const auto& g : groups) {
        CHECK(g.root == g.columns.front());
        CHECK(uint32_t(g.columns.back()) - g.root + 1 <= 56);
        flat.insert(flat.end(), g.columns.begin(), g.columns.end());
      }
      CHECK(flat == cols);
    }
  }
}

TEST_CASE("always-serial vectorized mode mirrors baseline structure with "
          "zeroed trailing bytes") {
  std::mt19937_64 rng(31337);
  const auto events = random_events(rng, 400, 16, 300, 1 << 20, false);
  const auto base = encode_payload(events, config(DataModality::Event)).value();
  const auto serial6 =
      encode_payload(events,
                     config(DataModality::Vectorized, VectorPolicy::AlwaysSerial))
          .value();
  REQUIRE(base.size() == serial6.size());
  for (size_t i = 0; i < base.size(); ++i) {
    const uint8_t c = uint8_t(base[i] >> 24);
    CHECK(c == uint8_t(serial6[i] >> 24));
    if (c == code::kEventXOn || c == code::kEventXOff) {
      CHECK((serial6[i] & 0xFF) == 0);
      CHECK((base[i] & 0xFFFFFF00) == (serial6[i] & 0xFFFFFF00));
    } else {
      CHECK(base[i] == serial6[i]);
    }
  }
}

TEST_CASE("32 consecutive columns cost 2 X-words instead of 32") {
  std::vector<EventRecord> events;
  for (uint16_t i = 0; i < 32; ++i)
    events.push_back({500, uint16_t(64 + i), 2, Polarity::On, {}});
  const auto vec =
      encode_payload(events, config(DataModality::Vectorized)).value();
  const auto base = encode_payload(events, config(DataModality::Event)).value();
  CHECK(count_x_words(vec) == 2);
  CHECK(count_x_words(base) == 32);
  CHECK(count_x_words(base) == 16 * count_x_words(vec));
}

TEST_CASE("input validation") {
  SUBCASE("unsorted input") {
    const std::vector<EventRecord> events = {
        {100, 0, 0, Polarity::On, {}},
        {50, 0, 0, Polarity::On, {}},
    };
    CHECK(encode_payload(events, config(DataModality::Event)).error().code ==
          Errc::UnsortedInput);
    // (t, y, x) ordering also covers same-t row order
    const std::vector<EventRecord> rows = {
        {100, 0, 5, Polarity::On, {}},
        {100, 0, 2, Polarity::On, {}},
    };
    CHECK(encode_payload(rows, config(DataModality::Event)).error().code ==
          Errc::UnsortedInput);
  }
  SUBCASE("missing intensity in mixed modes") {
    const std::vector<EventRecord> events = {{0, 0, 0, Polarity::On, {}}};
    CHECK(encode_payload(events, config(DataModality::Mixed)).error().code ==
          Errc::MissingIntensity);
    CHECK(encode_payload(events, config(DataModality::MixedVectorized))
              .error()
              .code == Errc::MissingIntensity);
  }
  SUBCASE("timestamp beyond 40 bits") {
    const std::vector<EventRecord> events = {
        {uint64_t(1) << 40, 0, 0, Polarity::On, {}}};
    CHECK(encode_payload(events, config(DataModality::Event)).error().code ==
          Errc::FieldOverflow);
  }
  SUBCASE("non-event modality") {
    CHECK(encode_payload({}, config(DataModality::FramesIntensity))
              .error()
              .code == Errc::BadParams);
  }
  SUBCASE("zero bin") {
    CHECK(encode_payload({}, config(DataModality::Vectorized,
                                    VectorPolicy::Adaptive, 0))
              .error()
              .code == Errc::BadParams);
  }
}

TEST_CASE("round trip at modality resolution across all modes") {
  std::mt19937_64 rng(0xD0D0);
  const DataModality modalities[] = {
      DataModality::Event, DataModality::Mixed, DataModality::Vectorized,
      DataModality::MixedVectorized};
  const VectorPolicy policies[] = {VectorPolicy::AlwaysSerial,
                                   VectorPolicy::AlwaysVector,
                                   VectorPolicy::Adaptive};
  for (int trial = 0; trial < 96; ++trial) {
    const DataModality m = modalities[trial % 4];
    const EncodeConfig cfg =
        config(m, policies[(trial / 4) % 3], 1 + uint32_t(rng() % 400));
    const auto events = random_events(rng, rng() % 400, 12, 200, 1 << 19,
                                      modality_carries_intensity(m));
    const auto words = encode_payload(events, cfg).value();
    const DecodeResult r = decode_payload(words, m, Strictness::Strict);
    REQUIRE(r.ok);
    CHECK(r.diagnostics.empty());

    auto want = at_modality_resolution(events, m);
    auto got = r.events;
    canonical_sort(want);
    canonical_sort(got);
    REQUIRE(got.size() == want.size());
    CHECK(got == want);
  }
}

TEST_CASE("duplicate events survive vectorized round trips") {
  // same (t, y, x, p) twice cannot share a one-hot bit
  std::vector<EventRecord> events = {
      {1000, 10, 4, Polarity::On, 111},
      {1000, 10, 4, Polarity::On, 222},
      {1000, 11, 4, Polarity::On, 333},
  };
  for (auto m : {DataModality::Vectorized, DataModality::MixedVectorized}) {
    auto input = events;
    if (!modality_carries_intensity(m))
      for (auto& e : input) e.intensity.reset();
    const auto words = encode_payload(input, config(m)).value();
    const DecodeResult r = decode_payload(words, m, Strictness::Strict);
    REQUIRE(r.ok);
    auto want = at_modality_resolution(input, m);
    auto got = r.events;
    canonical_sort(want);
    canonical_sort(got);
    CHECK(got == want);
  }
}

TEST_CASE("binning never merges events across a 256 us quantum") {
  // with a huge bin, bits 39..8 must still survive the round trip
  std::vector<EventRecord> events;
  for (uint64_t t = 0; t < 4096; t += 37)
    events.push_back({t, uint16_t(t % 50), 1, Polarity::On, {}});
  const auto words =
      encode_payload(events, config(DataModality::Vectorized,
                                    VectorPolicy::Adaptive, 1'000'000))
          .value();
  const DecodeResult r = decode_payload(words, DataModality::Vectorized);
  REQUIRE(r.ok);
  auto want = at_modality_resolution(events, DataModality::Vectorized);
  auto got = r.events;
  canonical_sort(want);
  canonical_sort(got);
  CHECK(got == want);
}

TEST_CASE("mixed serialized splits intensity 8/24, vectorized splits 24/8") {
  const std::vector<EventRecord> events = {
      {0, 3, 0, Polarity::On, 0xAABBCCDD}};

  const auto mixed = encode_payload(events, config(DataModality::Mixed)).value();
  REQUIRE(mixed.size() == 4);
  CHECK((mixed[2] & 0xFF) == 0xAA);        // MSB word trailing byte
  CHECK((mixed[3] & 0xFFFFFF) == 0xBBCCDD);  // LSB word payload

  const auto vec = encode_payload(events, config(DataModality::MixedVectorized,
                                                 VectorPolicy::AlwaysVector))
                       .value();
  REQUIRE(vec.size() == 5);  // TS, Y, VEC MSB, INT MSB, INT LSB
  CHECK((vec[3] & 0xFFFFFF) == 0xAABBCC);
  CHECK(((vec[4] >> 16) & 0xFF) == 0xDD);
}
