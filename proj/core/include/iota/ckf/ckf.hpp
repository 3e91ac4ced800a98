#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iota/ckf/token.hpp"

namespace iota::ckf {

// One visible element of a frame. Positions and sizes are in pixels; (x, y)
// is the corner nearest the grid origin.
struct SemanticElement {
  int index = 1;  // element type; 1 is the agent-controlled main element
  std::string name;
  double x = 0;
  double y = 0;
  double w = 0;
  double h = 0;
  Direction direction = Direction::none;

  friend bool operator==(const SemanticElement&, const SemanticElement&) = default;
};

using SemanticSet = std::vector<SemanticElement>;

Token tokenize_element(const SemanticElement& e, const TokenParams& params);

struct CellIndex {
  int row = 0;
  int col = 0;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

// Contextual key frame: a rows x cols grid of tokens, row-major.
class Ckf {
 public:
  Ckf() = default;
  Ckf(int rows, int cols, int mu);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int mu() const { return mu_; }
  std::size_t size() const { return units_.size(); }

  bool contains(int row, int col) const {
    return row >= 0 && row < rows_ && col >= 0 && col < cols_;
  }
  Token at(int row, int col) const;
  void set(int row, int col, Token t);
  int key_at(int row, int col) const { return units_[offset(row, col)] / Token::kKeyUnit; }

  std::span<const std::int32_t> units() const { return units_; }

  // Token values in row-major order; the network input.
  void flatten_into(std::span<double> out) const;
  std::vector<double> flatten() const;

  // First cell (row-major) whose key band equals key_index.
  std::optional<CellIndex> find_key(int key_index) const;

  friend bool operator==(const Ckf&, const Ckf&) = default;

 private:
  std::size_t offset(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(col);
  }

  int rows_ = 0;
  int cols_ = 0;
  int mu_ = 10;
  std::vector<std::int32_t> units_;
};

// Rasterizes a frame. Elements are written in ascending index order with the
// main element last, each over ceil(w/w1) x ceil(h/h1) cells starting at its
// own cell; spans are clipped at the grid edges. Throws DomainError if the
// frame is empty or does not hold exactly one main element.
Ckf build_ckf(const SemanticSet& frame, const TokenParams& params);

// Same grid without the main element: what lies underneath the agent.
Ckf build_underlay(const SemanticSet& frame, const TokenParams& params);

// Fixed-width text: one row per line, cells separated by one space, five
// decimals for mu = 10 and six for mu = 100.
std::string dump(const Ckf& ckf);

}  // namespace iota::ckf
