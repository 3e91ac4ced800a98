#include "iota/ckf/ckf.hpp"

#include <algorithm>
#include <cstdio>

#include "iota/common/error.hpp"

namespace iota::ckf {

Token tokenize_element(const SemanticElement& e, const TokenParams& params) {
  const GridPosition pos = grid_position(e.x, e.y, params);
  return Token::pack(e.index, pos.a_digit, pos.b_digit, direction_code(e.direction), params.mu);
}

Ckf::Ckf(int rows, int cols, int mu) : rows_(rows), cols_(cols), mu_(mu) {
  if (rows <= 0 || cols <= 0) throw DomainError("CKF dimensions must be positive");
  units_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
}

Token Ckf::at(int row, int col) const {
  if (!contains(row, col)) throw DomainError("CKF cell out of range");
  return Token(units_[offset(row, col)], mu_);
}

void Ckf::set(int row, int col, Token t) {
  if (!contains(row, col)) throw DomainError("CKF cell out of range");
  units_[offset(row, col)] = t.units();
}

void Ckf::flatten_into(std::span<double> out) const {
  if (out.size() != units_.size()) throw DomainError("flatten target has the wrong size");
  const double scale = static_cast<double>(token_scale(mu_));
  for (std::size_t i = 0; i < units_.size(); ++i) out[i] = units_[i] / scale;
}

std::vector<double> Ckf::flatten() const {
  std::vector<double> out(units_.size());
  flatten_into(out);
  return out;
}

std::optional<CellIndex> Ckf::find_key(int key_index) const {
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      if (key_at(r, c) == key_index) return CellIndex{r, c};
    }
  }
  return std::nullopt;
}

namespace {

void paint(Ckf& grid, const SemanticElement& e, const TokenParams& params) {
  const Token token = tokenize_element(e, params);
  const GridPosition pos = grid_position(e.x, e.y, params);
  const CellSpan span = relative_size(e.index, e.w, e.h, params);
  const int row_end = std::min(pos.v + span.h, grid.rows());
  const int col_end = std::min(pos.u + span.w, grid.cols());
  for (int r = pos.v; r < row_end; ++r) {
    for (int c = pos.u; c < col_end; ++c) grid.set(r, c, token);
  }
}

Ckf rasterize(const SemanticSet& frame, const TokenParams& params, bool with_main) {
  if (frame.empty()) throw DomainError("frame has no elements");
  const auto mains = std::count_if(frame.begin(), frame.end(),
                                   [](const SemanticElement& e) { return e.index == 1; });
  if (mains != 1) {
    throw DomainError("frame must contain exactly one main element, found " +
                      std::to_string(mains));
  }

  std::vector<const SemanticElement*> order;
  order.reserve(frame.size());
  for (const auto& e : frame) {
    if (e.index != 1) order.push_back(&e);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const SemanticElement* a, const SemanticElement* b) { return a->index < b->index; });

  Ckf grid(params.rows(), params.cols(), params.mu);
  for (const SemanticElement* e : order) paint(grid, *e, params);
  const auto main = std::find_if(frame.begin(), frame.end(),
                                 [](const SemanticElement& e) { return e.index == 1; });
  if (with_main) {
    paint(grid, *main, params);
  } else {
    // Still validate the main element so both grids fail on the same frames.
    tokenize_element(*main, params);
  }
  return grid;
}

}  // namespace

Ckf build_ckf(const SemanticSet& frame, const TokenParams& params) {
  return rasterize(frame, params, true);
}

Ckf build_underlay(const SemanticSet& frame, const TokenParams& params) {
  return rasterize(frame, params, false);
}

std::string dump(const Ckf& ckf) {
  const int digits = ckf.mu() == 10 ? 5 : 6;
  std::string out;
  char cell[16];
  for (int r = 0; r < ckf.rows(); ++r) {
    for (int c = 0; c < ckf.cols(); ++c) {
      std::snprintf(cell, sizeof cell, "0.%0*d", digits, static_cast<int>(ckf.at(r, c).units()));
      if (c > 0) out += ' ';
      out += cell;
    }
    out += '\n';
  }
  return out;
}

}  // namespace iota::ckf
