#pragma once

#include <cstdint>
#include <vector>

#include "flatknot/graph.hpp"

namespace flatknot {

// G(n): the (n+1) x (n+1) grid of crossings with unit spacing. Vertex
// (row i, column j) has id i*(n+1)+j and sits at (j, i). Slots: 0 west,
// 1 east (horizontal strand), 2 south, 3 north (vertical strand).
CycleGraph grid_graph(int n);

// G*(n): the grid woven as an alternating diagram; the horizontal strand is
// over at (i, j) iff i + j is even.
CycleGraph gstar_graph(int n);

// Number of vertex-simple cycles of G(n), 1 <= n <= 6.
std::uint64_t grid_cycle_count(int n);
// Individual routes: depth-first enumeration and a frontier transfer matrix.
std::uint64_t grid_cycle_count_backtracking(int n);
std::uint64_t grid_cycle_count_transfer(int n);

// Alternated cycles of G*(n), 1 <= n <= 4.
std::uint64_t gstar_alternated_count(int n);

// Boundaries of the nonempty Young-diagram disks of G(n) anchored at the
// origin corner, as closed vertex sequences (counterclockwise, no repeat).
std::vector<std::vector<int>> young_boundaries(int n);

std::uint64_t binomial(unsigned n, unsigned k);

}  // namespace flatknot
