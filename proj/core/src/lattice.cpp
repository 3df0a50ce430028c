#include "flatknot/lattice.hpp"

#include <string>
#include <unordered_map>

#include "flatknot/cycles.hpp"
#include "flatknot/errors.hpp"

namespace flatknot {

namespace {

void check_range(int n, int lo, int hi) {
  if (n < lo || n > hi) {
    throw Error(ErrorCode::kDomain, "n = " + std::to_string(n) + " outside supported range [" + std::to_string(lo) +
                                        ", " + std::to_string(hi) + "]");
  }
}

// Frontier states pack one 2-bit plug per position: 0 empty, 1 opens, 2 closes.
using State = std::uint64_t;

int plug(State s, int k) { return static_cast<int>((s >> (2 * k)) & 3u); }
State with_plug(State s, int k, int v) {
  return (s & ~(State{3} << (2 * k))) | (static_cast<State>(v) << (2 * k));
}

int matching(State s, int k, int width) {
  int depth = 0;
  if (plug(s, k) == 1) {
    for (int q = k; q < width; ++q) {
      const int p = plug(s, q);
      depth += p == 1 ? 1 : p == 2 ? -1 : 0;
      if (depth == 0) return q;
    }
  } else {
    for (int q = k; q >= 0; --q) {
      const int p = plug(s, q);
      depth += p == 2 ? 1 : p == 1 ? -1 : 0;
      if (depth == 0) return q;
    }
  }
  throw std::logic_error("unbalanced frontier state");
}

}  // namespace

CycleGraph grid_graph(int n) {
  if (n < 1) throw Error(ErrorCode::kDomain, "grid size must be positive");
  const int w = n + 1;
  CycleGraph g;
  for (int i = 0; i < w; ++i) {
    for (int j = 0; j < w; ++j) g.add_vertex(Vec2{static_cast<double>(j), static_cast<double>(i)});
  }
  for (int i = 0; i < w; ++i) {
    for (int j = 0; j < w; ++j) {
      const int v = i * w + j;
      const Vec2 p = g.vertices[static_cast<std::size_t>(v)].position;
      if (j + 1 < w) g.add_edge(v, 1, v + 1, 0, {p, p + Vec2{1.0, 0.0}});
      if (i + 1 < w) g.add_edge(v, 3, v + w, 2, {p, p + Vec2{0.0, 1.0}});
    }
  }
  return g;
}

CycleGraph gstar_graph(int n) {
  CycleGraph g = grid_graph(n);
  const int w = n + 1;
  for (int v = 0; v < w * w; ++v) {
    const bool horizontal_over = ((v / w) + (v % w)) % 2 == 0;
    auto& slots = g.vertices[static_cast<std::size_t>(v)].slots;
    slots[0].over = slots[1].over = horizontal_over;
    slots[2].over = slots[3].over = !horizontal_over;
  }
  return g;
}

std::uint64_t grid_cycle_count_backtracking(int n) {
  check_range(n, 1, 6);
  return count_cycles(grid_graph(n));
}

std::uint64_t grid_cycle_count_transfer(int n) {
  check_range(n, 1, 6);
  const int rows = n + 1;
  const int cols = n + 1;
  const int width = cols + 1;
  std::unordered_map<State, std::uint64_t> cur{{0, 1}};
  std::uint64_t cycles = 0;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      std::unordered_map<State, std::uint64_t> next;
      const bool can_down = i + 1 < rows;
      const bool can_right = j + 1 < cols;
      for (const auto& [s, ways] : cur) {
        const int left = plug(s, j);
        const int up = plug(s, j + 1);
        auto put = [&](int down, int right, State base) {
          next[with_plug(with_plug(base, j, down), j + 1, right)] += ways;
        };
        if (left == 0 && up == 0) {
          put(0, 0, s);
          if (can_down && can_right) put(1, 2, s);
        } else if (left == 0 || up == 0) {
          const int x = left + up;
          if (can_down) put(x, 0, s);
          if (can_right) put(0, x, s);
        } else if (left == 1 && up == 1) {
          put(0, 0, with_plug(s, matching(s, j + 1, width), 1));
        } else if (left == 2 && up == 2) {
          put(0, 0, with_plug(s, matching(s, j, width), 2));
        } else if (left == 2 && up == 1) {
          put(0, 0, s);
        } else if (with_plug(with_plug(s, j, 0), j + 1, 0) == 0) {
          cycles += ways;  // left opens, up closes: the loop is complete
        }
      }
      cur = std::move(next);
    }
    // Drop the (empty) right plug and shift for the next row.
    std::unordered_map<State, std::uint64_t> shifted;
    for (const auto& [s, ways] : cur) {
      if (plug(s, cols) == 0) shifted[s << 2] += ways;
    }
    cur = std::move(shifted);
  }
  return cycles;
}

std::uint64_t grid_cycle_count(int n) {
  check_range(n, 1, 6);
  return n <= 4 ? grid_cycle_count_backtracking(n) : grid_cycle_count_transfer(n);
}

std::uint64_t gstar_alternated_count(int n) {
  check_range(n, 1, 4);
  CycleOptions opt;
  opt.alternated_only = true;
  return count_cycles(gstar_graph(n), opt);
}

std::vector<std::vector<int>> young_boundaries(int n) {
  check_range(n, 1, 12);
  const int w = n + 1;
  auto id = [w](int x, int y) { return y * w + x; };
  std::vector<std::vector<int>> out;
  // Row lengths lambda_0 >= lambda_1 >= ... >= lambda_{n-1}, rows stacked upward from y = 0.
  std::vector<int> lambda(static_cast<std::size_t>(n), 0);
  for (;;) {
    // Advance to the next nonincreasing sequence (odometer with constraint).
    int k = n - 1;
    while (k >= 0) {
      const int cap = k == 0 ? n : lambda[static_cast<std::size_t>(k - 1)];
      if (lambda[static_cast<std::size_t>(k)] < cap) break;
      --k;
    }
    if (k < 0) break;
    ++lambda[static_cast<std::size_t>(k)];
    for (int q = k + 1; q < n; ++q) lambda[static_cast<std::size_t>(q)] = 0;

    int rows = 0;
    while (rows < n && lambda[static_cast<std::size_t>(rows)] > 0) ++rows;
    std::vector<int> loop;
    for (int x = 0; x < lambda[0]; ++x) loop.push_back(id(x, 0));
    // Staircase up the right side.
    for (int y = 0; y < rows; ++y) {
      const int len = lambda[static_cast<std::size_t>(y)];
      const int above = y + 1 < rows ? lambda[static_cast<std::size_t>(y + 1)] : 0;
      loop.push_back(id(len, y));
      for (int x = len; x > above; --x) loop.push_back(id(x, y + 1));
    }
    for (int y = rows; y > 0; --y) loop.push_back(id(0, y));
    out.push_back(std::move(loop));
  }
  return out;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace flatknot
