#pragma once

#include <functional>
#include <string>

namespace sqzres::log {

using Sink = std::function<void(const std::string&)>;

// Advisory messages (truncation, regime). Default sink writes to stderr.
void warn(const std::string& message);

// Replaces the sink; returns the previous one. Pass an empty function to mute.
Sink set_sink(Sink sink);

}  // namespace sqzres::log
