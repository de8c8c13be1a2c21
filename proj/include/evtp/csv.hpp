#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evtp/event.hpp"
#include "evtp/result.hpp"

namespace evtp {

inline constexpr std::string_view kCsvHeader = "t_us,x,y,p,intensity";

/// Interchange format: header line `t_us,x,y,p,intensity`, one event per
/// row, p in {0, 1} (1 = ON), intensity left empty when absent.
std::string events_to_csv(std::span<const EventRecord> events);

/// Errors: BadParams with the offending line number.
Result<std::vector<EventRecord>> events_from_csv(std::string_view text);

}  // namespace evtp
