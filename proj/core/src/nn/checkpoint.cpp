#include "iota/nn/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "iota/common/error.hpp"

namespace iota::nn {

namespace {

constexpr std::array<char, 8> kMagic = {'I', 'O', 'T', 'A', 'N', 'N', '\0', '\0'};

template <typename T>
void put(std::ostream& out, T value) {
  static_assert(std::is_integral_v<T>);
  unsigned char bytes[sizeof(T)];
  auto u = static_cast<std::make_unsigned_t<T>>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<unsigned char>(u & 0xFFu);
    u = static_cast<decltype(u)>(u >> 8);
  }
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw ConfigError("checkpoint is truncated");
  std::make_unsigned_t<T> u = 0;
  for (std::size_t i = sizeof(T); i-- > 0;) u = static_cast<decltype(u)>((u << 8) | bytes[i]);
  return static_cast<T>(u);
}

}  // namespace

void save_checkpoint(const Network& net, std::ostream& out) {
  const auto& a = net.arch();
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kCheckpointVersion);
  put<std::uint32_t>(out, a.head == Head::single ? 0 : 1);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(a.inputs));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(a.n_actions));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(a.hidden));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(a.stream_hidden));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(net.slots().size()));
  for (const auto& s : net.slots()) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(s.name.size()));
    out.write(s.name.data(), static_cast<std::streamsize>(s.name.size()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(s.in));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(s.out));
  }
  put<std::uint64_t>(out, static_cast<std::uint64_t>(net.size()));
  for (Eigen::Index i = 0; i < net.size(); ++i) {
    put<std::uint32_t>(out, std::bit_cast<std::uint32_t>(static_cast<float>(net.params()[i])));
  }
  if (!out) throw std::runtime_error("failed writing checkpoint");
}

void save_checkpoint(const Network& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  save_checkpoint(net, out);
}

Network load_checkpoint(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw ConfigError("not a checkpoint (bad magic)");
  const auto version = get<std::uint32_t>(in);
  if (version != kCheckpointVersion) {
    throw ConfigError("unsupported checkpoint version " + std::to_string(version));
  }
  Architecture a;
  const auto head = get<std::uint32_t>(in);
  if (head > 1) throw ConfigError("checkpoint has an unknown head type");
  a.head = head == 0 ? Head::single : Head::dueling;
  a.inputs = static_cast<int>(get<std::uint32_t>(in));
  a.n_actions = static_cast<int>(get<std::uint32_t>(in));
  a.hidden = static_cast<int>(get<std::uint32_t>(in));
  a.stream_hidden = static_cast<int>(get<std::uint32_t>(in));
  Network net = Network::zeros(a);

  const auto n_slots = get<std::uint32_t>(in);
  if (n_slots != net.slots().size()) throw ConfigError("checkpoint layer manifest does not match its architecture");
  for (const auto& s : net.slots()) {
    const auto len = get<std::uint32_t>(in);
    if (len > 256) throw ConfigError("checkpoint layer name too long");
    std::string name(len, '\0');
    if (!in.read(name.data(), len)) throw ConfigError("checkpoint is truncated");
    const auto n_in = get<std::uint32_t>(in);
    const auto n_out = get<std::uint32_t>(in);
    if (name != s.name || static_cast<int>(n_in) != s.in || static_cast<int>(n_out) != s.out) {
      throw ConfigError("checkpoint layer '" + name + "' does not match expected '" + s.name + "'");
    }
  }
  const auto n = get<std::uint64_t>(in);
  if (n != static_cast<std::uint64_t>(net.size())) throw ConfigError("checkpoint parameter count mismatch");
  for (Eigen::Index i = 0; i < net.size(); ++i) {
    net.params()[i] = std::bit_cast<float>(get<std::uint32_t>(in));
  }
  return net;
}

Network load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open checkpoint '" + path + "'");
  return load_checkpoint(in);
}

}  // namespace iota::nn
