#pragma once

#include <spdlog/spdlog.h>

namespace iota::log {

// Applies IOTA_RL_LOG (trace|debug|info|warn|error|off) to the default
// logger. Safe to call more than once.
void init_from_env();

}  // namespace iota::log
