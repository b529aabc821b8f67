#pragma once

#include <string>

namespace regimekit::log {

enum class Level { Off = 0, Info = 1, Debug = 2 };

// Verbosity comes from the REGIMEKIT_LOG environment variable
// ("off" default, "info", "debug"). Messages go to stderr.
Level level();
void info(const std::string& message);
void debug(const std::string& message);

}  // namespace regimekit::log
