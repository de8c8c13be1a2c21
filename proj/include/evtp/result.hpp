#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>

namespace evtp {

/// Failure codes shared by every layer of the codec.
enum class Errc : uint8_t {
  FieldOverflow,
  UnknownDatumCode,
  NonzeroPadding,
  NonAsciiModel,
  BadHeaderId,
  Truncated,
  ReservedNonzero,
  MissingTimestamp,
  MissingRow,
  OrphanVectorLsb,
  OrphanIntensity,
  DanglingMixedMsb,
  IntensityUnderrun,
  ModalityViolation,
  ColumnOverflow,
  UnsortedInput,
  MissingIntensity,
  SpanTooLarge,
  UndecodablePayload,
  SentinelInterval,
  CountMismatch,
  TrailingGarbage,
  BadParams,
};

/// Stable name used in diagnostics and CLI output (`code=<name>`).
const char* errc_name(Errc code);

struct Error {
  Errc code;
  std::string detail;
};

/// strict: malformed input is an error. lenient: tolerate, diagnose, resync.
enum class Strictness : uint8_t { Strict, Lenient };

/// Minimal value-or-error carrier; decode paths are total functions and
/// report via this instead of throwing.
template <typename T>
class Result {
 public:
  Result(T value) : v_(std::move(value)) {}
  Result(Error error) : v_(std::move(error)) {}

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    assert(ok());
    return std::get<T>(v_);
  }
  T& value() & {
    assert(ok());
    return std::get<T>(v_);
  }
  T&& value() && {
    assert(ok());
    return std::get<T>(std::move(v_));
  }
  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

  const Error& error() const {
    assert(!ok());
    return std::get<Error>(v_);
  }

 private:
  std::variant<T, Error> v_;
};

}  // namespace evtp
