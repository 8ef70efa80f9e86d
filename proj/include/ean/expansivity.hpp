#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ean/error.hpp"
#include "ean/matrix.hpp"
#include "ean/network.hpp"
#include "ean/rational.hpp"

namespace ean {

// What an observer reads out per time step during partition refinement.
enum class ObservedOutput {
    trace_from_one,          // f_v^t(x) for t >= 1: expansivity proper
    trace_from_zero,         // f_v^t(x) for t >= 0: weak expansivity
    neighborhood_from_zero,  // f_{N_in(v)}^t(x) for t >= 0: quasi-expansivity
};

// Moore-style refinement outcome for one vertex. Round t is the kernel of
// the first t observations; each round refines the previous one, and the
// sequence stabilizes after at most q^n rounds.
struct RefinementReport {
    std::uint32_t vertex = 0;
    ObservedOutput kind = ObservedOutput::trace_from_one;
    bool separated = false;
    std::optional<std::uint64_t> depth;  // least round with a discrete partition
    std::vector<std::uint64_t> class_counts;
    std::vector<std::uint32_t> final_partition;
    // Two configurations the observer never tells apart (when !separated),
    // or a pair separated only at the final round (when separated).
    std::optional<std::pair<std::uint64_t, std::uint64_t>> merged_pair;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> deepest_pair;
    std::vector<std::vector<std::uint32_t>> rounds;  // populated only on request
};

namespace detail {

inline std::vector<std::uint64_t> materialize(const Network& f, const Caps& caps) {
    require(f.state_count() <= caps.max_states, errc::cap_exceeded,
            "exhaustive scan exceeds the state cap");
    std::vector<std::uint64_t> fx(f.state_count());
    for (std::uint64_t x = 0; x < fx.size(); ++x) fx[x] = f.apply_index(x);
    return fx;
}

inline std::optional<std::pair<std::uint64_t, std::uint64_t>> pair_in_same_class(
    const std::vector<std::uint32_t>& cls) {
    std::unordered_map<std::uint32_t, std::uint64_t> first;
    first.reserve(cls.size());
    for (std::uint64_t x = 0; x < cls.size(); ++x) {
        auto [it, inserted] = first.try_emplace(cls[x], x);
        if (!inserted) return std::make_pair(it->second, x);
    }
    return std::nullopt;
}

inline RefinementReport refine(const Network& f, std::uint32_t v, ObservedOutput kind,
                               const std::vector<std::uint64_t>& fx,
                               const std::vector<std::uint32_t>& in_neigh, bool keep_rounds) {
    const std::uint64_t states = f.state_count();
    RefinementReport report;
    report.vertex = v;
    report.kind = kind;

    // Seed: kernel of the first observation.
    std::vector<std::uint32_t> cls(states);
    {
        std::unordered_map<std::uint64_t, std::uint32_t> ids;
        ids.reserve(64);
        for (std::uint64_t x = 0; x < states; ++x) {
            std::uint64_t key = 0;
            switch (kind) {
                case ObservedOutput::trace_from_one:
                    key = f.digit_of(fx[x], v);
                    break;
                case ObservedOutput::trace_from_zero:
                    key = f.digit_of(x, v);
                    break;
                case ObservedOutput::neighborhood_from_zero:
                    for (std::uint32_t u : in_neigh) key = key * f.q() + f.digit_of(x, u);
                    break;
            }
            auto [it, _] = ids.try_emplace(key, std::uint32_t(ids.size()));
            cls[x] = it->second;
        }
        report.class_counts.push_back(ids.size());
    }

    std::vector<std::uint32_t> prev;
    std::vector<std::uint32_t> next(states);
    std::uint64_t round = 1;
    while (true) {
        if (keep_rounds) report.rounds.push_back(cls);
        const std::uint64_t count = report.class_counts.back();
        if (count == states) {
            report.separated = true;
            report.depth = round;
            report.deepest_pair =
                prev.empty() ? std::make_pair(std::uint64_t(0), std::uint64_t(1))
                             : *pair_in_same_class(prev);
            break;
        }
        // next round: split by (current class, current class of the successor)
        std::unordered_map<std::uint64_t, std::uint32_t> ids;
        ids.reserve(count * 2);
        for (std::uint64_t x = 0; x < states; ++x) {
            const std::uint64_t key = (std::uint64_t(cls[x]) << 32) | cls[fx[x]];
            auto [it, _] = ids.try_emplace(key, std::uint32_t(ids.size()));
            next[x] = it->second;
        }
        if (ids.size() == count) {  // stable and not discrete: merged forever
            report.separated = false;
            report.merged_pair = pair_in_same_class(cls);
            break;
        }
        prev = cls;
        cls = next;
        report.class_counts.push_back(ids.size());
        ++round;
        require(round <= states + 1, errc::bad_params, "refinement failed to stabilize");
    }
    report.final_partition = std::move(cls);
    return report;
}

}  // namespace detail

inline RefinementReport observability_partition(const Network& f, std::uint32_t v,
                                                ObservedOutput kind, const Caps& caps = {},
                                                bool keep_rounds = false) {
    require(v >= 1 && v <= f.n(), errc::bad_params, "vertex out of range");
    const auto fx = detail::materialize(f, caps);
    std::vector<std::uint32_t> in_neigh;
    if (kind == ObservedOutput::neighborhood_from_zero)
        in_neigh = f.interaction_graph(caps).in_neighbors(v);
    return detail::refine(f, v, kind, fx, in_neigh, keep_rounds);
}

// Aggregated verdict across all vertices, with the full per-vertex depth
// table and a merged-pair witness when some vertex never separates.
struct ExpansivityReport {
    bool holds = false;
    ObservedOutput kind = ObservedOutput::trace_from_one;
    std::vector<std::optional<std::uint64_t>> vertex_depth;  // index v-1
    std::optional<std::uint32_t> witness_vertex;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> merged_pair;
};

inline ExpansivityReport check_expansive(const Network& f, ObservedOutput kind,
                                         const Caps& caps = {}) {
    const auto fx = detail::materialize(f, caps);
    std::optional<Digraph> ig;
    if (kind == ObservedOutput::neighborhood_from_zero) ig.emplace(f.interaction_graph(caps));

    ExpansivityReport report;
    report.kind = kind;
    report.holds = true;
    report.vertex_depth.resize(f.n());
    for (std::uint32_t v = 1; v <= f.n(); ++v) {
        std::vector<std::uint32_t> in_neigh;
        if (ig) in_neigh = ig->in_neighbors(v);
        auto r = detail::refine(f, v, kind, fx, in_neigh, false);
        report.vertex_depth[v - 1] = r.depth;
        if (!r.separated && report.holds) {
            report.holds = false;
            report.witness_vertex = v;
            report.merged_pair = r.merged_pair;
        }
    }
    return report;
}

inline bool is_expansive(const Network& f, const Caps& caps = {}) {
    return check_expansive(f, ObservedOutput::trace_from_one, caps).holds;
}

inline bool is_weakly_expansive(const Network& f, const Caps& caps = {}) {
    return check_expansive(f, ObservedOutput::trace_from_zero, caps).holds;
}

inline bool is_quasi_expansive(const Network& f, const Caps& caps = {}) {
    return check_expansive(f, ObservedOutput::neighborhood_from_zero, caps).holds;
}

// --- algebraic criterion for field linear networks ---

// Column u of each power M^0 .. M^{n-1}, side by side.
inline Matrix observability_matrix(const Matrix& m, std::uint32_t u) {
    require(m.is_square(), errc::non_square, "observability matrix of a non-square matrix");
    std::vector<std::vector<elem>> cols;
    Matrix power = Matrix::identity(m.rows(), m.ring());
    for (std::uint32_t t = 0; t < m.rows(); ++t) {
        cols.push_back(power.column(u - 1));
        power = power * m;
    }
    return Matrix::from_columns(m.ring(), cols);
}

struct LinearExpansivityReport {
    bool holds = false;
    elem det_m = 0;
    std::vector<elem> det_n;  // det of the per-vertex observability matrix, u = 1..n
};

// f(x) = xM is expansive iff M and every per-vertex observability matrix are
// nonsingular. Stated for fields; modular rings with composite q are routed
// to the brute-force checker instead.
inline LinearExpansivityReport check_expansive_linear(const Matrix& m) {
    require(m.ring().is_math_field(), errc::not_a_field,
            "the algebraic criterion needs a field alphabet");
    require(m.is_square(), errc::non_square, "linear network matrix must be square");
    LinearExpansivityReport report;
    report.det_m = m.det();
    report.holds = report.det_m != 0;
    for (std::uint32_t u = 1; u <= m.rows(); ++u) {
        const elem d = observability_matrix(m, u).det();
        report.det_n.push_back(d);
        if (d == 0) report.holds = false;
    }
    return report;
}

inline bool is_expansive_linear(const Matrix& m) { return check_expansive_linear(m).holds; }

// --- pairwise separation time and expansion time ---

// First t >= 1 at which the traces of x and y at v differ; nullopt when the
// pair stays merged forever (detected by revisiting a pair state).
inline std::optional<std::uint64_t> tau_pair(const Network& f, std::uint64_t x, std::uint64_t y,
                                             std::uint32_t v, const Caps& caps = {}) {
    require(x != y, errc::bad_params, "tau is defined for distinct configurations");
    require(f.state_count() <= caps.max_states, errc::cap_exceeded,
            "pair walk exceeds the state cap");
    std::unordered_set<std::uint64_t> seen;
    std::uint64_t cx = x, cy = y;
    std::uint64_t t = 0;
    while (true) {
        seen.insert(cx * f.state_count() + cy);
        cx = f.apply_index(cx);
        cy = f.apply_index(cy);
        ++t;
        if (f.digit_of(cx, v) != f.digit_of(cy, v)) return t;
        if (cx == cy) return std::nullopt;
        if (seen.count(cx * f.state_count() + cy)) return std::nullopt;
    }
}

inline std::optional<std::uint64_t> tau_pair(const Network& f, const Configuration& x,
                                             const Configuration& y, std::uint32_t v,
                                             const Caps& caps = {}) {
    return tau_pair(f, x.index(), y.index(), v, caps);
}

struct ExpansionTimeReport {
    std::uint64_t time = 0;
    // worst pair: separated at `time` and no earlier, observed at `vertex`
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::uint32_t vertex = 0;
};

inline ExpansionTimeReport expansion_time_report(const Network& f, const Caps& caps = {}) {
    const auto fx = detail::materialize(f, caps);
    ExpansionTimeReport out;
    for (std::uint32_t v = 1; v <= f.n(); ++v) {
        auto r = detail::refine(f, v, ObservedOutput::trace_from_one, fx, {}, false);
        require(r.separated, errc::not_expansive,
                "expansion time is defined only for expansive networks");
        if (*r.depth > out.time) {
            out.time = *r.depth;
            out.vertex = v;
            out.x = r.deepest_pair->first;
            out.y = r.deepest_pair->second;
        }
    }
    return out;
}

inline std::uint64_t expansion_time(const Network& f, const Caps& caps = {}) {
    return expansion_time_report(f, caps).time;
}

inline bool is_strongly_expansive(const Network& f, const Caps& caps = {}) {
    if (!is_expansive(f, caps)) return false;
    return expansion_time(f, caps) == f.n();
}

// --- expansion frequency ---

namespace detail {

inline void require_bijective(const std::vector<std::uint64_t>& fx) {
    std::vector<bool> hit(fx.size(), false);
    for (std::uint64_t y : fx) {
        if (hit[y]) fail(errc::not_bijective, "frequency metrics need a bijective network");
        hit[y] = true;
    }
}

// Orbit length of every state of a permutation.
inline std::vector<std::uint64_t> cycle_lengths(const std::vector<std::uint64_t>& fx) {
    std::vector<std::uint64_t> len(fx.size(), 0);
    for (std::uint64_t s = 0; s < fx.size(); ++s) {
        if (len[s]) continue;
        std::uint64_t l = 1, x = fx[s];
        while (x != s) {
            x = fx[x];
            ++l;
        }
        x = s;
        do {
            len[x] = l;
            x = fx[x];
        } while (x != s);
    }
    return len;
}

}  // namespace detail

// Fraction of positions where the traces of x and y at v differ, over one
// full common period. Computed over lcm(l_x, l_y), which equals the value
// over the l_x * l_y horizon.
inline Rational phi_pair(const Network& f, std::uint64_t x, std::uint64_t y, std::uint32_t v,
                         const Caps& caps = {}) {
    require(x != y, errc::bad_params, "phi is defined for distinct configurations");
    const auto fx = detail::materialize(f, caps);
    detail::require_bijective(fx);
    const auto len = detail::cycle_lengths(fx);
    const std::uint64_t horizon = std::lcm(len[x], len[y]);
    std::uint64_t cx = x, cy = y, diff = 0;
    for (std::uint64_t t = 0; t < horizon; ++t) {
        cx = fx[cx];
        cy = fx[cy];
        if (f.digit_of(cx, v) != f.digit_of(cy, v)) ++diff;
    }
    return Rational(std::int64_t(diff), std::int64_t(horizon));
}

struct FrequencyReport {
    Rational phi;
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::uint32_t vertex = 0;
};

inline FrequencyReport expansion_frequency_report(const Network& f, const Caps& caps = {}) {
    const auto fx = detail::materialize(f, caps);
    detail::require_bijective(fx);
    require(is_expansive(f, caps), errc::not_expansive,
            "expansion frequency is exposed only for expansive networks");
    const auto len = detail::cycle_lengths(fx);
    const std::uint64_t states = fx.size();
    const std::uint32_t n = f.n();

    FrequencyReport best;
    bool have = false;
    std::vector<std::uint64_t> diff(n);
    for (std::uint64_t x = 0; x < states; ++x)
        for (std::uint64_t y = x + 1; y < states; ++y) {
            const std::uint64_t horizon = std::lcm(len[x], len[y]);
            std::fill(diff.begin(), diff.end(), 0);
            std::uint64_t cx = x, cy = y;
            for (std::uint64_t t = 0; t < horizon; ++t) {
                cx = fx[cx];
                cy = fx[cy];
                for (std::uint32_t v = 1; v <= n; ++v)
                    if (f.digit_of(cx, v) != f.digit_of(cy, v)) ++diff[v - 1];
            }
            for (std::uint32_t v = 1; v <= n; ++v) {
                const Rational phi(std::int64_t(diff[v - 1]), std::int64_t(horizon));
                if (!have || phi < best.phi) {
                    best = {phi, x, y, v};
                    have = true;
                }
            }
        }
    return best;
}

inline Rational expansion_frequency(const Network& f, const Caps& caps = {}) {
    return expansion_frequency_report(f, caps).phi;
}

// --- super-expansivity ---

namespace detail {

// Visit every n-subset of the n^2 observation cells. Injectivity of an
// observation is invariant under reordering, so subsets suffice.
template <typename Fn>
bool for_each_cell_subset(std::uint32_t n, const Caps& caps, Fn&& fn) {
    const std::uint32_t total = n * n;
    // C(n^2, n) against the observation cap
    std::uint64_t combos = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        combos = combos * (total - i) / (i + 1);
        require(combos <= caps.max_observations, errc::cap_exceeded,
                "observation subset count exceeds the cap");
    }
    std::vector<std::uint32_t> pick(n);
    for (std::uint32_t i = 0; i < n; ++i) pick[i] = i;
    while (true) {
        if (!fn(pick)) return false;
        std::uint32_t i = n;
        while (i-- > 0) {
            if (pick[i] != total - n + i) {
                ++pick[i];
                for (std::uint32_t j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
                break;
            }
            if (i == 0) return true;
        }
    }
}

inline Observation observation_from_cells(const std::vector<std::uint32_t>& cells, std::uint32_t n) {
    Observation omega;
    for (std::uint32_t c : cells) omega.cells.emplace_back(c % n + 1, c / n + 1);
    return omega;
}

}  // namespace detail

struct SuperExpansivityReport {
    bool holds = false;
    std::string gate;  // nonempty when a necessary condition already fails
    std::optional<Observation> failing;
};

// Brute force: every n-cell observation within the first n steps must
// determine the initial configuration. Necessary gates (complete
// interaction graph, alphabet above the Bush bound) run first.
inline SuperExpansivityReport check_super_expansive(const Network& f, const Caps& caps = {}) {
    SuperExpansivityReport report;
    const std::uint32_t n = f.n();
    if (std::uint64_t(f.q()) <= std::uint64_t(n) * n - n) {
        report.gate = "alphabet within the Bush bound (q <= n^2 - n)";
        return report;
    }
    if (f.interaction_graph(caps).arc_count() != std::uint64_t(n) * n) {
        report.gate = "interaction graph is not complete";
        return report;
    }
    const auto fx = detail::materialize(f, caps);
    const std::uint64_t states = fx.size();

    // trace matrix rows: cell (v, t) at index (t-1)*n + (v-1)
    std::vector<elem> tm(states * n * n);
    for (std::uint64_t x = 0; x < states; ++x) {
        std::uint64_t cur = x;
        for (std::uint32_t t = 0; t < n; ++t) {
            cur = fx[cur];
            for (std::uint32_t v = 0; v < n; ++v) tm[(x * n + t) * n + v] = f.digit_of(cur, v + 1);
        }
    }

    std::vector<bool> seen(states);
    std::vector<std::uint64_t> touched;
    touched.reserve(states);
    const bool all_injective =
        detail::for_each_cell_subset(n, caps, [&](const std::vector<std::uint32_t>& pick) {
            for (std::uint64_t s : touched) seen[s] = false;
            touched.clear();
            for (std::uint64_t x = 0; x < states; ++x) {
                std::uint64_t key = 0;
                for (std::uint32_t c : pick) key = key * f.q() + tm[x * n * n + c];
                if (seen[key]) {
                    report.failing = detail::observation_from_cells(pick, n);
                    return false;
                }
                seen[key] = true;
                touched.push_back(key);
            }
            return true;
        });
    report.holds = all_injective;
    return report;
}

inline bool is_super_expansive(const Network& f, const Caps& caps = {}) {
    return check_super_expansive(f, caps).holds;
}

struct SuperLinearReport {
    bool holds = false;
    std::string gate;
    std::optional<Observation> failing;  // first observation with a singular matrix
};

// Linear route: the observation matrix built from column v_i of M^{t_i} must
// be nonsingular for every cell subset.
inline SuperLinearReport check_super_expansive_linear(const Matrix& m, const Caps& caps = {}) {
    require(m.ring().is_math_field(), errc::not_a_field,
            "the algebraic criterion needs a field alphabet");
    require(m.is_square(), errc::non_square, "linear network matrix must be square");
    SuperLinearReport report;
    const std::uint32_t n = m.rows();
    if (std::uint64_t(m.ring().q()) <= std::uint64_t(n) * n - n) {
        report.gate = "alphabet within the Bush bound (q <= n^2 - n)";
        return report;
    }
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
            if (m(i, j) == 0) {
                report.gate = "interaction graph is not complete";
                return report;
            }

    std::vector<Matrix> powers;  // powers[t] = M^(t+1)
    powers.push_back(m);
    for (std::uint32_t t = 1; t < n; ++t) powers.push_back(powers.back() * m);

    const bool all_nonsingular =
        detail::for_each_cell_subset(n, caps, [&](const std::vector<std::uint32_t>& pick) {
            std::vector<std::vector<elem>> cols;
            cols.reserve(n);
            for (std::uint32_t c : pick) cols.push_back(powers[c / n].column(c % n));
            if (Matrix::from_columns(m.ring(), cols).det() == 0) {
                report.failing = detail::observation_from_cells(pick, n);
                return false;
            }
            return true;
        });
    report.holds = all_nonsingular;
    return report;
}

inline bool is_super_expansive_linear(const Matrix& m, const Caps& caps = {}) {
    return check_super_expansive_linear(m, caps).holds;
}

// Universal separation time: for a strongly expansive network, every vertex
// and every configuration admit a partner separated exactly at step n.
inline bool universal_time_holds(const Network& f, const Caps& caps = {}) {
    const auto fx = detail::materialize(f, caps);
    const std::uint32_t n = f.n();
    const std::uint64_t states = fx.size();
    for (std::uint32_t v = 1; v <= n; ++v) {
        // group configurations by their (n-1)-step trace prefix at v
        std::unordered_map<std::uint64_t, std::uint64_t> group_size;
        std::vector<std::uint64_t> key_of(states);
        for (std::uint64_t x = 0; x < states; ++x) {
            std::uint64_t key = 0, cur = x;
            for (std::uint32_t t = 1; t < n; ++t) {
                cur = fx[cur];
                key = key * f.q() + f.digit_of(cur, v);
            }
            key_of[x] = key;
            ++group_size[key];
        }
        for (std::uint64_t x = 0; x < states; ++x)
            if (group_size[key_of[x]] < 2) return false;
    }
    return true;
}

}  // namespace ean
