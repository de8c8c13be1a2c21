#include <random>
#include <vector>

#include "doctest.h"
#include "evtp/header.hpp"

using namespace evtp;

namespace {

HeaderRecord random_header(std::mt19937_64& rng) {
  const auto r = [&rng](uint64_t bound) { return rng() % bound; };
  HeaderRecord h;
  h.epoch_ts = rng();
  h.global_ts = uint32_t(r(1u << 24));
  h.sensor_modality = uint8_t(r(8));
  h.data_modality = uint8_t(r(8));
  h.num_datum = uint32_t(r(1u << 18));
  h.rows = uint16_t(r(1u << 16));
  h.cols = uint16_t(r(1u << 16));
  std::string model;
  for (int i = 0; i < 32; ++i) model.push_back(char(0x20 + r(0x5F)));
  h.sensor_model = model;
  const size_t n_user = size_t(r(8));
  for (size_t i = 0; i < n_user; ++i) h.user_words.push_back(uint32_t(rng()));
  h.pointer_table.increment_us = uint32_t(rng());
  const size_t n_ptr = size_t(r(6));
  uint32_t off = 0;
  for (size_t i = 0; i < n_ptr; ++i) {
    if (r(4) == 0) {
      h.pointer_table.offsets.push_back(kPointerSentinel);
    } else {
      h.pointer_table.offsets.push_back(off);
      off += 4 * uint32_t(1 + r(100));
    }
  }
  return h;
}

}  // namespace

TEST_CASE("minimal header is 69 bytes with a 59-byte required region") {
  HeaderRecord h;  // defaults: no user words, no pointers, blank model
  const auto bytes = encode_header(h);
  REQUIRE(bytes.ok());
  CHECK(bytes.value().size() == 69);  // 59 + 2 + 4 + 4
  CHECK(kRequiredHeaderBytes == 59);
  CHECK(bytes.value()[0] == kHeaderId);

  // user word count sits right at the end of the required region
  CHECK(bytes.value()[59] == 0);
  CHECK(bytes.value()[60] == 0);

  auto back = decode_header(bytes.value());
  REQUIRE(back.ok());
  CHECK(back.value().record == h);
  CHECK(back.value().consumed == 69);
}

TEST_CASE("freshly constructed headers leave epoch_ts zeroed") {
  CHECK(HeaderRecord{}.epoch_ts == 0);
}

TEST_CASE("num_datum maximum 262143 round-trips") {
  HeaderRecord h;
  h.num_datum = 262143;
  auto bytes = encode_header(h);
  REQUIRE(bytes.ok());
  auto back = decode_header(bytes.value());
  REQUIRE(back.ok());
  CHECK(back.value().record.num_datum == 262143);

  h.num_datum = 1u << 18;
  CHECK(encode_header(h).error().code == Errc::FieldOverflow);
}

TEST_CASE("max array dimensions 65535x65535 are representable") {
  HeaderRecord h;
  h.rows = 65535;
  h.cols = 65535;
  auto bytes = encode_header(h);
  REQUIRE(bytes.ok());
  auto back = decode_header(bytes.value());
  REQUIRE(back.ok());
  CHECK(back.value().record.rows == 65535);
  CHECK(back.value().record.cols == 65535);
}

TEST_CASE("modality subfields pack into the 3-byte group") {
  HeaderRecord h;
  h.sensor_modality = 0b101;
  h.data_modality = 0b011;
  h.num_datum = 0x2ABCD;
  auto bytes = encode_header(h);
  REQUIRE(bytes.ok());
  // bytes 12..14: [sensor(3) | data(3) | num_datum(18)]
  const uint32_t packed = (uint32_t(bytes.value()[12]) << 16) |
                          (uint32_t(bytes.value()[13]) << 8) |
                          uint32_t(bytes.value()[14]);
  CHECK((packed >> 21) == 0b101);
  CHECK(((packed >> 18) & 0x7) == 0b011);
  CHECK((packed & 0x3FFFF) == 0x2ABCD);
}

TEST_CASE("header round trip over randomized records") {
  std::mt19937_64 rng(0x4EAD);
  for (int i = 0; i < 3000; ++i) {
    const HeaderRecord h = random_header(rng);
    auto bytes = encode_header(h);
    REQUIRE(bytes.ok());
    auto back = decode_header(bytes.value());
    REQUIRE(back.ok());
    CHECK(back.value().record == h);
    CHECK(back.value().consumed == bytes.value().size());
  }
}

TEST_CASE("a TS MSB word is not a header") {
  // 0x01 is a datum code, deliberately disjoint from the header id.
  std::vector<uint8_t> bytes(69, 0);
  bytes[0] = 0x01;
  auto r = decode_header(bytes);
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().code == Errc::BadHeaderId);
}

TEST_CASE("declared sizes beyond the buffer are truncation errors") {
  HeaderRecord h;
  h.user_words = {1, 2, 3};
  auto bytes = encode_header(h).value();

  SUBCASE("missing user words") {
    // keep the declared count of 3 but drop one word
    std::vector<uint8_t> cut(bytes.begin(), bytes.end() - 4 - 8);
    auto r = decode_header(cut);
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().code == Errc::Truncated);
  }
  SUBCASE("required region cut short") {
    std::vector<uint8_t> cut(bytes.begin(), bytes.begin() + 30);
    CHECK(decode_header(cut).error().code == Errc::Truncated);
  }
  SUBCASE("empty input") {
    CHECK(decode_header({}).error().code == Errc::Truncated);
  }
  SUBCASE("pointer count promises more than available") {
    HeaderRecord hp;
    hp.pointer_table.offsets = {0, 4, 8};
    auto pb = encode_header(hp).value();
    std::vector<uint8_t> cut(pb.begin(), pb.end() - 8);
    CHECK(decode_header(cut).error().code == Errc::Truncated);
  }
  SUBCASE("absurd pointer count cannot trigger a giant allocation") {
    HeaderRecord hp;
    auto pb = encode_header(hp).value();
    // pointer count field sits right after the user word count
    pb[61] = 0xFF;
    pb[62] = 0xFF;
    pb[63] = 0xFF;
    pb[64] = 0xFF;
    CHECK(decode_header(pb).error().code == Errc::Truncated);
  }
}

TEST_CASE("reserved bits must be zero in strict mode") {
  HeaderRecord h;
  auto bytes = encode_header(h).value();
  bytes[20] = 0x40;  // inside the 8-byte reserved region (bytes 19..26)
  CHECK(decode_header(bytes, Strictness::Strict).error().code ==
        Errc::ReservedNonzero);
  auto lenient = decode_header(bytes, Strictness::Lenient);
  REQUIRE(lenient.ok());
  CHECK(lenient.value().record == h);
}

TEST_CASE("non-ascii model bytes rejected by strict encode only") {
  HeaderRecord h;
  h.sensor_model = make_sensor_model("ok");
  h.sensor_model[5] = char(0xC3);
  CHECK(encode_header(h, Strictness::Strict).error().code ==
        Errc::NonAsciiModel);
  CHECK(encode_header(h, Strictness::Lenient).ok());
}

TEST_CASE("make_sensor_model pads and truncates to 32 bytes") {
  CHECK(make_sensor_model("abc").size() == 32);
  CHECK(make_sensor_model("abc") == "abc" + std::string(29, ' '));
  const std::string big(40, 'x');
  CHECK(make_sensor_model(big) == std::string(32, 'x'));

  HeaderRecord h;
  h.sensor_model = "short";
  CHECK(encode_header(h).error().code == Errc::FieldOverflow);
}
