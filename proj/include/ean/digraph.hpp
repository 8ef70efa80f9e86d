#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "ean/error.hpp"
#include "ean/matrix.hpp"

namespace ean {

// Directed graph on vertices 1..n, loops allowed, no multi-arcs. Paper-style
// families with 0-based hubs keep their original labels in labels().
class Digraph {
public:
    explicit Digraph(std::uint32_t n) : n_(n), adj_(std::size_t(n) * n, 0) {
        require(n >= 1, errc::bad_params, "graph needs at least one vertex");
        labels_.resize(n);
        for (std::uint32_t v = 0; v < n; ++v) labels_[v] = std::int64_t(v) + 1;
    }

    std::uint32_t n() const { return n_; }

    void add_arc(std::uint32_t u, std::uint32_t v) {
        check_vertex(u);
        check_vertex(v);
        adj_[idx(u, v)] = 1;
    }

    bool has_arc(std::uint32_t u, std::uint32_t v) const {
        check_vertex(u);
        check_vertex(v);
        return adj_[idx(u, v)] != 0;
    }

    std::uint64_t arc_count() const {
        std::uint64_t c = 0;
        for (auto b : adj_) c += b;
        return c;
    }

    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs() const {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
        for (std::uint32_t u = 1; u <= n_; ++u)
            for (std::uint32_t v = 1; v <= n_; ++v)
                if (adj_[idx(u, v)]) out.emplace_back(u, v);
        return out;
    }

    std::vector<std::uint32_t> out_neighbors(std::uint32_t u) const {
        check_vertex(u);
        std::vector<std::uint32_t> out;
        for (std::uint32_t v = 1; v <= n_; ++v)
            if (adj_[idx(u, v)]) out.push_back(v);
        return out;
    }

    std::vector<std::uint32_t> in_neighbors(std::uint32_t v) const {
        check_vertex(v);
        std::vector<std::uint32_t> out;
        for (std::uint32_t u = 1; u <= n_; ++u)
            if (adj_[idx(u, v)]) out.push_back(u);
        return out;
    }

    // Every vertex reaches every other vertex. One forward and one backward
    // sweep from vertex 1 suffice.
    bool is_strong() const {
        return reaches_all(false) && reaches_all(true);
    }

    // Maximum number of pairwise independent arcs = maximum matching in the
    // bipartite split graph (tails left, heads right).
    std::uint32_t term_rank() const { return std::uint32_t(matching().second); }

    bool is_coverable() const { return matching().second == n_; }

    // Vertex-disjoint cycles partitioning V, from the perfect matching seen
    // as the successor permutation. Cycles start at their smallest vertex and
    // are sorted by it.
    std::optional<std::vector<std::vector<std::uint32_t>>> cycle_decomposition() const {
        auto [match, size] = matching();
        if (size != n_) return std::nullopt;
        std::vector<std::vector<std::uint32_t>> cycles;
        std::vector<bool> seen(n_ + 1, false);
        for (std::uint32_t s = 1; s <= n_; ++s) {
            if (seen[s]) continue;
            std::vector<std::uint32_t> cycle;
            std::uint32_t v = s;
            while (!seen[v]) {
                seen[v] = true;
                cycle.push_back(v);
                v = match[v];
            }
            cycles.push_back(std::move(cycle));
        }
        return cycles;
    }

    Matrix adjacency_matrix(const Ring& ring) const {
        Matrix m(n_, n_, ring);
        for (std::uint32_t u = 1; u <= n_; ++u)
            for (std::uint32_t v = 1; v <= n_; ++v)
                if (adj_[idx(u, v)]) m(u - 1, v - 1) = 1;
        return m;
    }

    const std::vector<std::int64_t>& labels() const { return labels_; }
    void set_labels(std::vector<std::int64_t> labels) {
        require(labels.size() == n_, errc::bad_params, "label count mismatch");
        labels_ = std::move(labels);
    }

    friend bool operator==(const Digraph& a, const Digraph& b) {
        return a.n_ == b.n_ && a.adj_ == b.adj_;
    }

private:
    std::size_t idx(std::uint32_t u, std::uint32_t v) const {
        return std::size_t(u - 1) * n_ + (v - 1);
    }

    void check_vertex(std::uint32_t v) const {
        require(v >= 1 && v <= n_, errc::bad_params, "vertex out of range");
    }

    bool reaches_all(bool reversed) const {
        std::vector<bool> seen(n_ + 1, false);
        std::vector<std::uint32_t> stack{1};
        seen[1] = true;
        std::uint32_t count = 1;
        while (!stack.empty()) {
            const std::uint32_t u = stack.back();
            stack.pop_back();
            for (std::uint32_t v = 1; v <= n_; ++v) {
                const bool arc = reversed ? adj_[idx(v, u)] : adj_[idx(u, v)];
                if (arc && !seen[v]) {
                    seen[v] = true;
                    ++count;
                    stack.push_back(v);
                }
            }
        }
        return count == n_;
    }

    // Kuhn augmenting-path matching; graphs are tiny.
    std::pair<std::vector<std::uint32_t>, std::uint32_t> matching() const {
        std::vector<std::uint32_t> match_left(n_ + 1, 0);   // tail -> head
        std::vector<std::uint32_t> match_right(n_ + 1, 0);  // head -> tail
        std::uint32_t size = 0;
        std::vector<bool> visited(n_ + 1);

        auto augment = [&](auto&& self, std::uint32_t u) -> bool {
            for (std::uint32_t v = 1; v <= n_; ++v) {
                if (!adj_[idx(u, v)] || visited[v]) continue;
                visited[v] = true;
                if (match_right[v] == 0 || self(self, match_right[v])) {
                    match_left[u] = v;
                    match_right[v] = u;
                    return true;
                }
            }
            return false;
        };

        for (std::uint32_t u = 1; u <= n_; ++u) {
            std::fill(visited.begin(), visited.end(), false);
            if (augment(augment, u)) ++size;
        }
        return {std::move(match_left), size};
    }

    std::uint32_t n_;
    std::vector<std::uint8_t> adj_;
    std::vector<std::int64_t> labels_;
};

// --- named families ---

// Hub 0 joined both ways with n looped leaves, loop on the hub too
// (3n + 1 arcs). The nonexistence witnesses live on these.
inline Digraph looped_star(std::uint32_t n) {
    require(n >= 1, errc::bad_params, "looped_star needs at least one leaf");
    Digraph d(n + 1);
    std::vector<std::int64_t> labels(n + 1);
    for (std::uint32_t i = 0; i <= n; ++i) {
        labels[i] = i;  // paper labels 0..n, hub = 0 = internal vertex 1
        d.add_arc(1, i + 1);
        d.add_arc(i + 1, 1);
        d.add_arc(i + 1, i + 1);
    }
    d.set_labels(std::move(labels));
    return d;
}

// Directed n-cycle 1 -> 2 -> ... -> n -> 1 plus a loop on every vertex of S.
inline Digraph cycle_with_loops(std::uint32_t n, const std::set<std::uint32_t>& loops) {
    Digraph d(n);
    for (std::uint32_t i = 1; i <= n; ++i) d.add_arc(i, i % n + 1);
    for (std::uint32_t s : loops) {
        require(s >= 1 && s <= n, errc::bad_params, "loop vertex out of range");
        d.add_arc(s, s);
    }
    return d;
}

inline Digraph complete_graph(std::uint32_t n) {
    Digraph d(n);
    for (std::uint32_t u = 1; u <= n; ++u)
        for (std::uint32_t v = 1; v <= n; ++v) d.add_arc(u, v);
    return d;
}

// Vertices Z/nZ with an arc between i and j iff their cyclic distance is at
// most r; the interaction graph of a radius-r cellular automaton restricted
// to period n. Loops included (distance 0).
inline Digraph circulant_graph(std::uint32_t n, std::uint32_t r) {
    Digraph d(n);
    std::vector<std::int64_t> labels(n);
    for (std::uint32_t i = 0; i < n; ++i) labels[i] = i;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            const std::uint32_t fwd = (j + n - i) % n;
            const std::uint32_t bwd = (i + n - j) % n;
            if (std::min(fwd, bwd) <= r) d.add_arc(i + 1, j + 1);
        }
    d.set_labels(std::move(labels));
    return d;
}

// Star on three leaves with bidirectional spokes and loops on exactly two
// leaves; admits expansive networks on every alphabet but abelian ones only
// for q not congruent to 2 mod 4.
inline Digraph two_loop_star() {
    Digraph d(4);
    d.set_labels({0, 1, 2, 3});
    for (std::uint32_t leaf = 2; leaf <= 4; ++leaf) {
        d.add_arc(1, leaf);
        d.add_arc(leaf, 1);
    }
    d.add_arc(2, 2);
    d.add_arc(3, 3);
    return d;
}

// Disjoint cycles C_1..C_k, with a link arc from the out-link vertex of C_i
// to the in-link vertex of C_{i+1} (cyclically). Link positions are 1-based
// indices along each cycle. A single part with no links is a plain cycle.
struct CycleOfCycles {
    struct Part {
        std::uint32_t length = 0;
        std::uint32_t out_link = 1;  // u_i
        std::uint32_t in_link = 1;   // v_i
    };
    std::vector<Part> parts;

    void validate() const {
        require(!parts.empty(), errc::not_cycle_of_cycles, "no cycles given");
        for (const auto& p : parts) {
            require(p.length >= 1, errc::not_cycle_of_cycles, "cycle length must be positive");
            require(p.out_link >= 1 && p.out_link <= p.length, errc::not_cycle_of_cycles,
                    "out-link vertex not on its cycle");
            require(p.in_link >= 1 && p.in_link <= p.length, errc::not_cycle_of_cycles,
                    "in-link vertex not on its cycle");
        }
    }

    std::uint32_t total_vertices() const {
        std::uint32_t n = 0;
        for (const auto& p : parts) n += p.length;
        return n;
    }

    // Global vertex number of position pos (1-based) along cycle i (0-based).
    std::uint32_t global_vertex(std::size_t i, std::uint32_t pos) const {
        std::uint32_t offset = 0;
        for (std::size_t j = 0; j < i; ++j) offset += parts[j].length;
        return offset + pos;
    }

    // Improper iff every in-link is the cycle successor of its out-link, so
    // that each link arc u_i v_{i+1} shadows an existing-arc pattern u_i v_i.
    bool is_proper() const {
        if (parts.size() == 1) return true;
        for (const auto& p : parts) {
            const std::uint32_t succ = p.out_link % p.length + 1;
            if (p.in_link != succ) return true;
        }
        return false;
    }

    Digraph build() const {
        validate();
        Digraph d(total_vertices());
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::uint32_t pos = 1; pos <= parts[i].length; ++pos)
                d.add_arc(global_vertex(i, pos), global_vertex(i, pos % parts[i].length + 1));
        if (parts.size() >= 2)
            for (std::size_t i = 0; i < parts.size(); ++i) {
                const std::size_t next = (i + 1) % parts.size();
                d.add_arc(global_vertex(i, parts[i].out_link), global_vertex(next, parts[next].in_link));
            }
        return d;
    }
};

}  // namespace ean
