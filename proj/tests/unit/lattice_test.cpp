#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "flatknot/cycles.hpp"
#include "flatknot/errors.hpp"
#include "flatknot/lattice.hpp"

using namespace flatknot;

namespace {

// Oracle: cycles of the (n+1) x (n+1) grid, as a plain graph, by DFS from the
// smallest vertex of each cycle. With `alternated`, each turn-to-turn arc must
// start and end on strands of different over/under type, with the horizontal
// strand over at (i, j) iff i + j is even.
std::uint64_t oracle_cycles(int n, bool alternated) {
  const int m = n + 1;
  auto id = [m](int i, int j) { return i * m + j; };
  std::vector<std::vector<std::pair<int, bool>>> adj(static_cast<std::size_t>(m * m));  // (neighbor, horizontal)
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (j + 1 < m) {
        adj[id(i, j)].push_back({id(i, j + 1), true});
        adj[id(i, j + 1)].push_back({id(i, j), true});
      }
      if (i + 1 < m) {
        adj[id(i, j)].push_back({id(i + 1, j), false});
        adj[id(i + 1, j)].push_back({id(i, j), false});
      }
    }
  }
  auto over = [m](int v, bool horizontal) { return (((v / m) + (v % m)) % 2 == 0) == horizontal; };
  std::uint64_t count = 0;
  std::vector<int> path;
  std::vector<bool> dir;  // direction (horizontal?) of the step leaving path[k]
  std::vector<bool> on(static_cast<std::size_t>(m * m), false);
  auto check = [&]() {
    if (!alternated) return true;
    const std::size_t L = path.size();
    // Vertex k is a turn when the steps into and out of it differ in direction.
    std::vector<std::size_t> turns;
    for (std::size_t k = 0; k < L; ++k) {
      if (dir[(k + L - 1) % L] != dir[k]) turns.push_back(k);
    }
    for (std::size_t t = 0; t < turns.size(); ++t) {
      const std::size_t a = turns[t], b = turns[(t + 1) % turns.size()];
      const bool start = over(path[a], dir[a]);
      const bool end = over(path[b], dir[(b + L - 1) % L]);
      if (start == end) return false;
    }
    return true;
  };
  std::function<void(int, int)> dfs = [&](int start, int v) {
    for (const auto& [w, h] : adj[static_cast<std::size_t>(v)]) {
      if (w == start && path.size() >= 4) {
        dir.push_back(h);
        // Each cycle is found in both directions; keep the one whose second vertex is smaller than its last.
        if (path[1] < path.back() && check()) ++count;
        dir.pop_back();
        continue;
      }
      if (w <= start || on[static_cast<std::size_t>(w)]) continue;
      on[static_cast<std::size_t>(w)] = true;
      path.push_back(w);
      dir.push_back(h);
      dfs(start, w);
      dir.pop_back();
      path.pop_back();
      on[static_cast<std::size_t>(w)] = false;
    }
  };
  for (int s = 0; s < m * m; ++s) {
    on[static_cast<std::size_t>(s)] = true;
    path = {s};
    dir.clear();
    dfs(s, s);
    on[static_cast<std::size_t>(s)] = false;
  }
  return count;
}

}  // namespace

TEST(Lattice, GridCountsAgainstOracle) {
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(grid_cycle_count(n), oracle_cycles(n, false)) << "n = " << n;
}

TEST(Lattice, GridRoutesAgree) {
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(grid_cycle_count_backtracking(n), grid_cycle_count_transfer(n));
}

TEST(Lattice, GridTable) {
  EXPECT_EQ(grid_cycle_count(1), 1u);
  EXPECT_EQ(grid_cycle_count(2), 13u);
  EXPECT_EQ(grid_cycle_count(3), 213u);
  EXPECT_EQ(grid_cycle_count(4), 9349u);
  EXPECT_EQ(grid_cycle_count(5), 1222363u);
  EXPECT_THROW(grid_cycle_count(0), Error);
  EXPECT_THROW(grid_cycle_count(7), Error);
}

TEST(Lattice, GridGraphShape) {
  const CycleGraph g = grid_graph(3);
  EXPECT_EQ(g.vertices.size(), 16u);
  EXPECT_EQ(g.edges.size(), 24u);
  EXPECT_EQ(g.vertices[5].position.x, 1.0);
  EXPECT_EQ(g.vertices[5].position.y, 1.0);
}

TEST(Lattice, WovenGrid) {
  const CycleGraph g = gstar_graph(3);
  EXPECT_EQ(g.vertices.size(), 16u);
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) {
      const GraphVertex& v = g.vertices[static_cast<std::size_t>(i * 4 + j)];
      for (int s = 0; s < 4; ++s) {
        if (!v.slots[static_cast<std::size_t>(s)].used()) continue;
        const bool horizontal = strand_of(s) == 0;
        EXPECT_EQ(v.slots[static_cast<std::size_t>(s)].over, ((i + j) % 2 == 0) == horizontal);
      }
    }
  }
}

TEST(Lattice, WovenAlternatedCounts) {
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(gstar_alternated_count(n), oracle_cycles(n, true)) << "n = " << n;
  EXPECT_EQ(gstar_alternated_count(1), 1u);
  EXPECT_EQ(gstar_alternated_count(2), 4u);
  EXPECT_EQ(gstar_alternated_count(3), 35u);
  EXPECT_EQ(gstar_alternated_count(4), 308u);
}

TEST(Lattice, WovenLowerBound) {
  for (int n = 2; n <= 4; ++n) {
    EXPECT_GE(gstar_alternated_count(n), binomial(static_cast<unsigned>(n), static_cast<unsigned>(n / 2)) - 1);
  }
}

TEST(Lattice, YoungBoundaries) {
  for (int n = 1; n <= 4; ++n) {
    const auto bs = young_boundaries(n);
    EXPECT_EQ(bs.size(), binomial(2u * static_cast<unsigned>(n), static_cast<unsigned>(n)) - 1);
    const int m = n + 1;
    std::set<std::vector<int>> distinct;
    for (const auto& b : bs) {
      std::set<int> seen(b.begin(), b.end());
      EXPECT_EQ(seen.size(), b.size());
      for (std::size_t k = 0; k < b.size(); ++k) {
        const int u = b[k], v = b[(k + 1) % b.size()];
        const int di = std::abs(u / m - v / m), dj = std::abs(u % m - v % m);
        EXPECT_EQ(di + dj, 1) << "not a grid edge";
      }
      distinct.insert(b);
    }
    EXPECT_EQ(distinct.size(), bs.size());
  }
}

TEST(Lattice, Binomial) {
  EXPECT_EQ(binomial(4, 2), 6u);
  EXPECT_EQ(binomial(8, 4), 70u);
  EXPECT_EQ(binomial(3, 5), 0u);
}
