#include "iota/ckf/token.hpp"

#include <cmath>
#include <string>
#include <tuple>
#include <utility>

#include "iota/common/error.hpp"

namespace iota::ckf {

int direction_code(Direction d) { return static_cast<int>(d); }

Direction direction_from_code(int code) {
  if (code < 0 || code > 8) throw DomainError("direction code out of range: " + std::to_string(code));
  return static_cast<Direction>(code);
}

Direction direction_from_delta(double dx, double dy) {
  const int sx = (dx > 0) - (dx < 0);
  const int sy = (dy > 0) - (dy < 0);
  // Indexed by (sy + 1) * 3 + (sx + 1).
  static constexpr Direction table[9] = {
      Direction::south_west, Direction::south, Direction::south_east,
      Direction::west,       Direction::none,  Direction::east,
      Direction::north_west, Direction::north, Direction::north_east,
  };
  return table[(sy + 1) * 3 + (sx + 1)];
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::none: return "none";
    case Direction::east: return "E";
    case Direction::north_east: return "NE";
    case Direction::north: return "N";
    case Direction::north_west: return "NW";
    case Direction::west: return "W";
    case Direction::south_west: return "SW";
    case Direction::south: return "S";
    case Direction::south_east: return "SE";
  }
  return "?";
}

int compute_mu(int n_elements) {
  if (n_elements < 1 || n_elements >= 100) {
    throw DomainError("element count must be in [1, 100), got " + std::to_string(n_elements));
  }
  return n_elements <= 9 ? 10 : 100;
}

double element_key(int index, int mu) {
  if (mu != 10 && mu != 100) throw DomainError("mu must be 10 or 100");
  if (index < 1 || index >= mu) {
    throw DomainError("element index " + std::to_string(index) + " does not fit mu=" +
                      std::to_string(mu));
  }
  return static_cast<double>(index) / mu;
}

TokenParams TokenParams::make(int n_elements, double screen_w, double screen_h, double ref_w,
                              double ref_h) {
  if (!(screen_w > 0 && screen_h > 0)) throw DomainError("screen size must be positive");
  if (!(ref_w > 0 && ref_h > 0)) throw DomainError("reference element size must be positive");
  TokenParams p;
  p.mu = compute_mu(n_elements);
  p.n_elements = n_elements;
  p.screen_w = screen_w;
  p.screen_h = screen_h;
  p.ref_w = ref_w;
  p.ref_h = ref_h;
  return p;
}

int TokenParams::rows() const { return static_cast<int>(std::ceil(screen_h / ref_h)); }
int TokenParams::cols() const { return static_cast<int>(std::ceil(screen_w / ref_w)); }

namespace {

// floor(10 * frac(ratio)) together with floor(ratio).
std::pair<int, int> split_cell(double ratio) {
  const double whole = std::floor(ratio);
  int digit = static_cast<int>(std::floor(10.0 * (ratio - whole)));
  if (digit > 9) digit = 9;
  return {static_cast<int>(whole), digit};
}

}  // namespace

GridPosition grid_position(double x, double y, const TokenParams& params) {
  if (!(x >= 0 && x <= params.screen_w) || !(y >= 0 && y <= params.screen_h)) {
    throw DomainError("position (" + std::to_string(x) + ", " + std::to_string(y) +
                      ") is outside the screen");
  }
  GridPosition g;
  std::tie(g.u, g.a_digit) = split_cell(x / params.ref_w);
  std::tie(g.v, g.b_digit) = split_cell(y / params.ref_h);
  g.a = static_cast<double>(g.a_digit) / (10.0 * params.mu);
  g.b = static_cast<double>(g.b_digit) / (100.0 * params.mu);
  return g;
}

double direction_value(Direction d, int mu) {
  return static_cast<double>(direction_code(d)) / (1000.0 * mu);
}

CellSpan relative_size(int index, double w, double h, const TokenParams& params) {
  if (!(w > 0 && h > 0)) throw DomainError("element size must be positive");
  if (index == 1) return {1, 1};
  return {static_cast<int>(std::ceil(w / params.ref_w)),
          static_cast<int>(std::ceil(h / params.ref_h))};
}

Token Token::pack(int key_index, int a_digit, int b_digit, int direction_code, int mu) {
  if (mu != 10 && mu != 100) throw DomainError("mu must be 10 or 100");
  if (key_index < 1 || key_index >= mu) throw DomainError("key index out of range");
  if (a_digit < 0 || a_digit > 9 || b_digit < 0 || b_digit > 9) {
    throw DomainError("position digit out of range");
  }
  if (direction_code < 0 || direction_code > 8) throw DomainError("direction code out of range");
  return Token(key_index * kKeyUnit + a_digit * kAUnit + b_digit * kBUnit + direction_code * kDUnit,
               mu);
}

std::int64_t token_scale(int mu) { return std::int64_t{10000} * mu; }

double Token::value() const {
  return static_cast<double>(units_) / static_cast<double>(token_scale(mu_));
}

double Token::key() const { return static_cast<double>(key_index()) / mu_; }

Token token_from_value(double value, int mu) {
  if (!(value >= 0 && value < 1)) throw DomainError("token value must lie in [0, 1)");
  const auto units = static_cast<std::int32_t>(std::llround(value * static_cast<double>(token_scale(mu))));
  return Token(units, mu);
}

double decode_key(const Token& t) { return t.key(); }

}  // namespace iota::ckf
