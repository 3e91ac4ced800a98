#include "iota/common/log.hpp"

#include <spdlog/sinks/stdout_sinks.h>

#include <cstdlib>
#include <mutex>
#include <string>

namespace iota::log {

void init_from_env() {
  static std::once_flag once;
  std::call_once(once, [] {
    // Diagnostics go to stderr so stdout stays clean for dumps and tables.
    spdlog::set_default_logger(spdlog::stderr_logger_mt("iota-rl"));
  });
  const char* raw = std::getenv("IOTA_RL_LOG");
  if (raw == nullptr || *raw == '\0') {
    spdlog::set_level(spdlog::level::warn);
    return;
  }
  spdlog::set_level(spdlog::level::from_str(std::string(raw)));
}

}  // namespace iota::log
