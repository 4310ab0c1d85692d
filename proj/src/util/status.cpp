#include "util/status.hpp"

namespace chainsent {

void fail_config(const std::string &msg) { throw Error(ErrorKind::Config, msg); }
void fail_io(const std::string &msg) { throw Error(ErrorKind::Io, msg); }
void fail_input(const std::string &msg) { throw Error(ErrorKind::Input, msg); }
void fail_internal(const std::string &msg) { throw Error(ErrorKind::Internal, msg); }

} // namespace chainsent
