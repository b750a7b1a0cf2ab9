#pragma once

#include <cstddef>
#include <vector>

namespace regcert {

/// Square adjacency pattern; entry [i][j] true means an edge i -> j.
using BoolMatrix = std::vector<std::vector<bool>>;

/// True iff every ordered pair (i, j), i != j, is joined by a directed path. Self-loops are
/// ignored; the empty and single-vertex graphs are strongly connected.
bool strongly_connected(const BoolMatrix& adjacency);

}  // namespace regcert
