#pragma once

#include <string>

namespace chainsent {

// All diagnostics go to stderr; stdout and output files carry data only.
void log_info(const std::string &msg);
void log_warn(const std::string &msg);
void log_error(const std::string &msg);

} // namespace chainsent
