#pragma once

#include <iosfwd>
#include <string>

#include "iota/nn/network.hpp"

namespace iota::nn {

// Binary layout, all integers little-endian:
//   "IOTANN\0\0" | u32 version | u32 head | u32 inputs | u32 n_actions |
//   u32 hidden | u32 stream_hidden | u32 n_slots |
//   n_slots x (u32 name_len | name | u32 in | u32 out) |
//   u64 n_params | n_params x f32
inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(const Network& net, std::ostream& out);
void save_checkpoint(const Network& net, const std::string& path);
// Parameters come back rounded to float32. Throws ConfigError on a bad
// magic, version or manifest.
Network load_checkpoint(std::istream& in);
Network load_checkpoint(const std::string& path);

}  // namespace iota::nn
