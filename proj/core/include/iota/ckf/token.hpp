#pragma once

#include <cstdint>
#include <string>

namespace iota::ckf {

// Movement direction of an element. The numeric codes 1..8 follow the
// compass order east, north-east, north, ..., south-east; stationary
// elements carry no direction digit.
enum class Direction : std::uint8_t {
  none = 0,
  east,
  north_east,
  north,
  north_west,
  west,
  south_west,
  south,
  south_east,
};

int direction_code(Direction d);
Direction direction_from_code(int code);
// Compass direction of a displacement; (0, 0) is none. dy > 0 is north.
Direction direction_from_delta(double dx, double dy);
std::string to_string(Direction d);

// Token range value mu = 10^tau, the smallest power of ten above the number
// of element types (tau in {1, 2}). Throws DomainError unless
// 1 <= n_elements < 100.
int compute_mu(int n_elements);

// Key k = index / mu of an element type. Throws DomainError unless
// 1 <= index < mu.
double element_key(int index, int mu);

// Geometry and range for tokenizing the frames of one environment.
struct TokenParams {
  int mu = 10;
  int n_elements = 1;
  double screen_w = 0;
  double screen_h = 0;
  double ref_w = 0;  // width of the main element, one grid cell
  double ref_h = 0;

  // Validates the invariants and derives mu from n_elements.
  static TokenParams make(int n_elements, double screen_w, double screen_h, double ref_w,
                          double ref_h);

  int rows() const;  // ceil(screen_h / ref_h)
  int cols() const;  // ceil(screen_w / ref_w)
};

// Cell indices plus the sub-cell digits that feed the a and b bands.
struct GridPosition {
  int u = 0;        // column
  int v = 0;        // row
  int a_digit = 0;  // tenth of the horizontal position inside the cell
  int b_digit = 0;  // tenth of the vertical position inside the cell
  double a = 0;     // a_digit / (10 mu)
  double b = 0;     // b_digit / (100 mu)
};

GridPosition grid_position(double x, double y, const TokenParams& params);

// n / (1000 mu) for the n-th compass direction, 0 for none.
double direction_value(Direction d, int mu);

// Element size in grid cells; the main element is always 1x1.
struct CellSpan {
  int w = 1;
  int h = 1;
};

CellSpan relative_size(int index, double w, double h, const TokenParams& params);

// A digit-packed token. Stored as an exact integer so that band decoding
// never suffers from binary rounding:
//
//   units = key_index * 10^4 + a * 10^3 + b * 10^2 + d * 10
//
// and the real value is units / (10^4 mu). For mu = 10 the key sits in the
// first decimal and a, b, d in the next three; for mu = 100 every band
// shifts one decimal to the right.
class Token {
 public:
  static constexpr std::int32_t kKeyUnit = 10000;
  static constexpr std::int32_t kAUnit = 1000;
  static constexpr std::int32_t kBUnit = 100;
  static constexpr std::int32_t kDUnit = 10;

  constexpr Token() = default;
  constexpr Token(std::int32_t units, int mu) : units_(units), mu_(mu) {}

  // Throws DomainError when a band value is out of range.
  static Token pack(int key_index, int a_digit, int b_digit, int direction_code, int mu);

  std::int32_t units() const { return units_; }
  int mu() const { return mu_; }
  bool empty() const { return units_ == 0; }

  int key_index() const { return units_ / kKeyUnit; }
  int a_digit() const { return (units_ / kAUnit) % 10; }
  int b_digit() const { return (units_ / kBUnit) % 10; }
  int direction_code() const { return (units_ / kDUnit) % 10; }

  double value() const;
  double key() const;  // floor(value * mu) / mu

  friend bool operator==(const Token&, const Token&) = default;

 private:
  std::int32_t units_ = 0;
  int mu_ = 10;
};

// Scale between units and the real value: 10^4 * mu.
std::int64_t token_scale(int mu);

// Inverse of Token::value for values produced by tokenization. Rounds to the
// nearest unit.
Token token_from_value(double value, int mu);

// Key band only: floor(t * mu) / mu.
double decode_key(const Token& t);

}  // namespace iota::ckf
