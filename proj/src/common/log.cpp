#include "regimekit/common/log.h"

#include <cstdlib>
#include <iostream>

namespace regimekit::log {

Level level() {
    static Level cached = [] {
        const char* env = std::getenv("REGIMEKIT_LOG");
        if (env == nullptr) {
            return Level::Off;
        }
        std::string value(env);
        if (value == "debug") {
            return Level::Debug;
        }
        if (value == "info") {
            return Level::Info;
        }
        return Level::Off;
    }();
    return cached;
}

void info(const std::string& message) {
    if (level() >= Level::Info) {
        std::cerr << "[regimekit] " << message << "\n";
    }
}

void debug(const std::string& message) {
    if (level() >= Level::Debug) {
        std::cerr << "[regimekit] " << message << "\n";
    }
}

}  // namespace regimekit::log
