#include "util/logging.hpp"

#include <cstdio>

namespace chainsent {

void log_info(const std::string &msg) {
    std::fprintf(stderr, "chainsent: %s\n", msg.c_str());
}

void log_warn(const std::string &msg) {
    std::fprintf(stderr, "chainsent: warning: %s\n", msg.c_str());
}

void log_error(const std::string &msg) {
    std::fprintf(stderr, "chainsent: error: %s\n", msg.c_str());
}

} // namespace chainsent
