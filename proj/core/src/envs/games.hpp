#pragma once

#include <memory>

#include "iota/envs/environment.hpp"

namespace iota::envs::detail {

std::unique_ptr<Environment> make_mario(const Layout& layout);
std::unique_ptr<Environment> make_pacman(const Layout& layout);
std::unique_ptr<Environment> make_flappybirds(const Layout& layout);
std::unique_ptr<Environment> make_taxidriver(const Layout& layout);
std::unique_ptr<Environment> make_scararobot(const Layout& layout);

// Shortest first move from `from` to any cell satisfying `goal` over cells
// satisfying `open`, 4-connected. Returns the move index into
// {right, left, up, down} in grid terms (+col, -col, +up, -up), or -1.
template <typename Open, typename Goal>
int bfs_first_move(int rows, int cols, ckf::CellIndex from, int up, Open open, Goal goal);

}  // namespace iota::envs::detail

#include <deque>
#include <vector>

namespace iota::envs::detail {

template <typename Open, typename Goal>
int bfs_first_move(int rows, int cols, ckf::CellIndex from, int up, Open open, Goal goal) {
  const int dr[4] = {0, 0, up, -up};
  const int dc[4] = {1, -1, 0, 0};
  std::vector<int> first(static_cast<std::size_t>(rows * cols), -2);
  std::deque<ckf::CellIndex> queue;
  first[static_cast<std::size_t>(from.row * cols + from.col)] = -1;
  queue.push_back(from);
  while (!queue.empty()) {
    const auto cur = queue.front();
    queue.pop_front();
    const int cur_first = first[static_cast<std::size_t>(cur.row * cols + cur.col)];
    if (!(cur == from) && goal(cur)) return cur_first;
    for (int m = 0; m < 4; ++m) {
      const ckf::CellIndex next{cur.row + dr[m], cur.col + dc[m]};
      if (next.row < 0 || next.row >= rows || next.col < 0 || next.col >= cols) continue;
      auto& slot = first[static_cast<std::size_t>(next.row * cols + next.col)];
      if (slot != -2 || !open(next)) continue;
      slot = cur_first == -1 ? m : cur_first;
      queue.push_back(next);
    }
  }
  return -1;
}

}  // namespace iota::envs::detail
