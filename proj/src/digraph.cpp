#include "regcert/digraph.hpp"

#include <stdexcept>

namespace regcert {

namespace {

std::size_t reachable_count(const BoolMatrix& adj, bool reversed) {
    const std::size_t n = adj.size();
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < n; ++v) {
            if (v == u || seen[v]) continue;
            if (reversed ? adj[v][u] : adj[u][v]) {
                seen[v] = true;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count;
}

}  // namespace

bool strongly_connected(const BoolMatrix& adjacency) {
    const std::size_t n = adjacency.size();
    for (const auto& row : adjacency) {
        if (row.size() != n) throw std::invalid_argument("strongly_connected: adjacency not square");
    }
    if (n <= 1) return true;
    return reachable_count(adjacency, false) == n && reachable_count(adjacency, true) == n;
}

}  // namespace regcert
