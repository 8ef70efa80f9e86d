#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ean/digraph.hpp"
#include "ean/error.hpp"
#include "ean/expansivity.hpp"
#include "ean/matrix.hpp"
#include "ean/network.hpp"
#include "ean/ring.hpp"
#include "ean/rng.hpp"

namespace ean {

// A constructed network together with the predicates it is built to satisfy.
// Claims are names the claim verifier understands, so a report can always be
// re-checked independently of the construction that produced it.
struct ConstructionClaim {
    std::string predicate;
    bool expected = true;
};

struct ConstructionReport {
    Network network;
    std::string name;
    std::string params;
    std::optional<std::uint64_t> seed;
    std::vector<ConstructionClaim> claims;
    std::vector<std::string> notes;

    ConstructionReport(Network f, std::string name_, std::string params_)
        : network(std::move(f)), name(std::move(name_)), params(std::move(params_)) {}
};

// --- alphabet thresholds ---

inline std::uint64_t binomial(std::uint64_t m, std::uint64_t k) {
    if (k > m) return 0;
    unsigned __int128 out = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        out = out * (m - i) / (i + 1);
        require(out <= ~std::uint64_t(0), errc::cap_exceeded, "binomial overflow");
    }
    return std::uint64_t(out);
}

// Least prime power q >= (n^3 + n^2 + 4) / 2; above it every strong and
// coverable graph on n vertices admits an expansive field linear network.
inline std::uint64_t linear_field_threshold(std::uint32_t n) {
    require(n >= 1, errc::bad_params, "n must be positive");
    const std::uint64_t bound = (std::uint64_t(n) * n * n + std::uint64_t(n) * n + 4) / 2;
    std::uint64_t q = bound;
    while (!is_prime_power(q)) ++q;
    return q;
}

// Least prime power strictly above n^2 * C(n^2, n); above it a
// super-expansive linear network on n nodes exists.
inline std::uint64_t super_threshold(std::uint32_t n) {
    require(n >= 1, errc::bad_params, "n must be positive");
    std::uint64_t q = std::uint64_t(n) * n * binomial(std::uint64_t(n) * n, n) + 1;
    while (!is_prime_power(q)) ++q;
    return q;
}

// Bush bound on orthogonal arrays: no super-expansive network exists when
// q <= n^2 - n.
inline bool bush_gate(std::uint32_t n, std::uint64_t q) {
    return q > std::uint64_t(n) * n - n;
}

// --- nonsingular matrices with a prescribed interaction graph ---

namespace detail {

// Inductive construction on a loop-full graph: a matrix supported exactly on
// the arcs with determinant 1 in Z_q.
inline Matrix loopfull_unit_matrix(const Digraph& d, const Ring& ring) {
    const std::uint32_t n = d.n();
    if (n == 1) {
        Matrix m(1, 1, ring);
        m(0, 0) = 1;
        return m;
    }
    Digraph sub(n - 1);
    for (std::uint32_t u = 1; u < n; ++u)
        for (std::uint32_t v = 1; v < n; ++v)
            if (d.has_arc(u, v)) sub.add_arc(u, v);
    const Matrix prev = loopfull_unit_matrix(sub, ring);

    Matrix a(n, n, ring);
    for (std::uint32_t i = 0; i + 1 < n; ++i)
        for (std::uint32_t j = 0; j + 1 < n; ++j) a(i, j) = prev(i, j);
    for (std::uint32_t j = 0; j + 1 < n; ++j)
        if (d.has_arc(n, j + 1)) a(n - 1, j) = 1;
    for (std::uint32_t i = 0; i + 1 < n; ++i)
        if (d.has_arc(i + 1, n)) a(i, n - 1) = 1;
    a(n - 1, n - 1) = 1;

    const elem det_a = a.det();
    Matrix m(n, n, ring);
    if (det_a != ring.from_int(2)) {
        m = a;
        m(n - 1, n - 1) = ring.sub(ring.from_int(2), det_a);
    } else {
        // negate everything but the last column, put -2 in the corner; the
        // result has determinant (-1)^n, so flip one row when n is odd
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j)
                m(i, j) = (j + 1 == n && i + 1 < n) ? a(i, j) : ring.neg(a(i, j));
        m(n - 1, n - 1) = ring.from_int(-2);
        if (m.det() == ring.from_int(-1))
            for (std::uint32_t j = 0; j < n; ++j) m(0, j) = ring.neg(m(0, j));
    }
    require(m.det() == 1, errc::bad_params, "loop-full construction lost the unit determinant");
    return m;
}

}  // namespace detail

// A matrix over Z_q supported exactly on the arcs of a coverable graph, with
// determinant 1. Reduces to the loop-full case through the successor
// permutation of a cycle decomposition.
inline Matrix nonsingular_matrix_for_graph(const Digraph& d, std::uint32_t q) {
    require(q >= 3, errc::alphabet_too_small, "the nonsingular construction needs q >= 3");
    const auto decomp = d.cycle_decomposition();
    require(decomp.has_value(), errc::not_coverable, "graph has no cycle decomposition");
    const Ring ring = Ring::modular(q);
    const std::uint32_t n = d.n();

    std::vector<std::uint32_t> pi(n + 1);
    for (const auto& cycle : *decomp)
        for (std::size_t i = 0; i < cycle.size(); ++i) pi[cycle[i]] = cycle[(i + 1) % cycle.size()];

    // sign of pi: (-1)^(n - #cycles)
    const bool odd = (n - decomp->size()) % 2 == 1;

    Digraph shifted(n);  // arc (i, j) iff (pi^{-1}(i), j) in d, i.e. loop-full
    std::vector<std::uint32_t> pi_inv(n + 1);
    for (std::uint32_t v = 1; v <= n; ++v) pi_inv[pi[v]] = v;
    for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = 1; j <= n; ++j)
            if (d.has_arc(pi_inv[i], j)) shifted.add_arc(i, j);

    Matrix base = detail::loopfull_unit_matrix(shifted, ring);
    if (odd)  // flip one row so det(base) = sign(pi)
        for (std::uint32_t j = 0; j < n; ++j) base(n - 1, j) = ring.neg(base(n - 1, j));

    Matrix m(n, n, ring);  // m = P * base, i.e. row i of m = row pi(i) of base
    for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) m(i - 1, j) = base(pi[i] - 1, j);
    require(m.det() == 1, errc::bad_params, "permuted construction lost the unit determinant");
    return m;
}

// --- randomized strategies ---

// One matrix with independent uniform nonzero entries, masked by the
// adjacency of D. The same seed draws the same underlying matrix whatever
// the graph.
inline ConstructionReport random_linear_strategy(const Digraph& d, std::uint32_t q,
                                                 std::uint64_t seed) {
    const Ring ring = Ring::field(q);
    SplitMix64 rng(seed);
    Matrix m(d.n(), d.n(), ring);
    for (std::uint32_t i = 0; i < d.n(); ++i)
        for (std::uint32_t j = 0; j < d.n(); ++j) {
            const elem value = elem(1 + rng.below(q - 1));
            if (d.has_arc(i + 1, j + 1)) m(i, j) = value;
        }
    ConstructionReport report(Network::linear(std::move(m)), "random-linear",
                              "n=" + std::to_string(d.n()) + " q=" + std::to_string(q));
    report.seed = seed;
    const bool admissible = d.is_strong() && d.is_coverable();
    report.claims.push_back({"expansive", admissible});
    if (admissible)
        report.notes.push_back("claim is probabilistic; retry with another seed on failure");
    return report;
}

// --- explicit families ---

// Linear network on the n-cycle with loops on S, over Z_q. Proper cycles use
// the adjacency matrix itself; the all-loops case needs tuned coefficients
// and has no linear solution at q = 2.
inline Matrix cycle_with_loops_network(std::uint32_t n, const std::set<std::uint32_t>& loops,
                                       std::uint32_t q, const Caps& caps = {}) {
    require(q >= 2, errc::bad_params, "alphabet size must be at least 2");
    const Ring ring = Ring::modular(q);
    const Digraph d = cycle_with_loops(n, loops);
    const bool improper = loops.size() == n;
    if (!improper || n == 1) return d.adjacency_matrix(ring);

    require(q != 2, errc::no_linear_solution,
            "the all-loops cycle has two cycle decompositions; the XOR network is not bijective");

    auto build = [&](elem a, elem b) {
        Matrix m(n, n, ring);
        m(0, 0) = b;
        m(0, 1) = a;
        for (std::uint32_t i = 1; i + 1 < n; ++i) {
            m(i, i) = 1;
            m(i, i + 1) = 1;
        }
        m(n - 1, 0) = 1;
        m(n - 1, n - 1) = 1;
        return m;
    };

    // a = least invertible element outside {0,1}; b chosen by the parity rule
    elem a = 0;
    for (elem c = 2; c < q; ++c)
        if (ring.is_unit(c)) {
            a = c;
            break;
        }
    require(a != 0, errc::no_linear_solution, "no invertible coefficient outside {0,1}");
    const elem b = (n % 2 == 1) ? ring.sub(1, a) : ring.add(a, 1);
    if (b != 0) return build(a, b);

    // Degenerate corner (q in {3,4} with even n): the parity rule lands on
    // b = 0, killing the loop on vertex 1. Search the coefficient pairs for
    // one that keeps the support and verifies expansive.
    for (elem aa = 2; aa < q; ++aa) {
        if (!ring.is_unit(aa)) continue;
        for (elem bb = 1; bb < q; ++bb) {
            const Matrix m = build(aa, bb);
            if (!ring.is_unit(m.det())) continue;
            const bool ok = ring.is_math_field() ? is_expansive_linear(m)
                                                 : is_expansive(Network::linear(m), caps);
            if (ok) return m;
        }
    }
    fail(errc::no_linear_solution, "no expansive coefficient pair found");
}

// Linear network on a cycle of cycles: the XOR network when q = 2 (proper
// shapes only), a unit-determinant matrix otherwise. Any linear bijective
// network on such a graph is expansive.
inline ConstructionReport cycle_of_cycles_network(const CycleOfCycles& shape, std::uint32_t q) {
    shape.validate();
    require(q >= 2, errc::bad_params, "alphabet size must be at least 2");
    const Digraph d = shape.build();
    if (q == 2) {
        require(shape.is_proper(), errc::no_linear_solution,
                "improper cycles of cycles have a non-bijective XOR network");
        Matrix m = d.adjacency_matrix(Ring::modular(2));
        ConstructionReport report(Network::linear(std::move(m)), "cycle-of-cycles",
                                  "q=2 n=" + std::to_string(d.n()));
        report.claims.push_back({"bijective", true});
        report.claims.push_back({"expansive", true});
        return report;
    }
    Matrix m = nonsingular_matrix_for_graph(d, q);
    ConstructionReport report(Network::linear(std::move(m)), "cycle-of-cycles",
                              "q=" + std::to_string(q) + " n=" + std::to_string(d.n()));
    report.claims.push_back({"bijective", true});
    report.claims.push_back({"expansive", true});
    return report;
}

// Successor function of the twisted lexicographic enumeration of (q)^n; a
// single q^n-cycle whose expansion time is at least q^n - q - 1.
inline ConstructionReport twisted_lex_network(std::uint32_t n, std::uint32_t q,
                                              const Caps& caps = {}) {
    const std::uint64_t states = checked_power(q, n);
    require(states <= caps.max_states, errc::cap_exceeded, "state space exceeds the cap");

    // digits of a, least significant first: a = a_1 + a_2 q + ... + a_n q^(n-1)
    auto enumerate = [&](std::uint64_t a) {
        std::vector<elem> ad(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            ad[i] = elem(a % q);
            a /= q;
        }
        std::vector<elem> x(n);
        x[n - 1] = ad[n - 1];
        bool suffix_maxed = true;  // a_{i+1} = ... = a_n = q - 1
        for (std::uint32_t i = n - 1; i-- > 0;) {
            suffix_maxed = suffix_maxed && ad[i + 1] == q - 1;
            if (suffix_maxed && ad[i] == q - 1)
                x[i] = elem(q - 2);
            else if (suffix_maxed && ad[i] == q - 2)
                x[i] = elem(q - 1);
            else
                x[i] = ad[i];
        }
        // vertex i holds x_i; vertex 1 is the leftmost (most significant) digit
        std::uint64_t index = 0;
        for (std::uint32_t i = 0; i < n; ++i) index = index * q + x[i];
        return index;
    };

    std::vector<std::uint64_t> map(states);
    for (std::uint64_t a = 0; a < states; ++a)
        map[enumerate(a)] = enumerate((a + 1) % states);

    ConstructionReport report(Network::table(n, q, std::move(map)), "twisted-lex",
                              "n=" + std::to_string(n) + " q=" + std::to_string(q));
    report.claims.push_back({"single-cycle", true});
    report.claims.push_back({"expansive", true});
    return report;
}

// Multiplication by a root of the least primitive degree-n polynomial over
// GF(q), written in the polynomial basis: the companion matrix. All nonzero
// configurations sit on one orbit of length q^n - 1, which meets the
// expansion frequency bound with equality.
inline ConstructionReport primitive_mult_network(std::uint32_t n, std::uint32_t q) {
    const Ring ring = Ring::field(q);
    const Poly pi = least_primitive_poly(ring, n);
    Matrix m(n, n, ring);
    for (std::uint32_t i = 0; i + 1 < n; ++i) m(i, i + 1) = 1;
    for (std::uint32_t j = 0; j < n; ++j) m(n - 1, j) = ring.neg(pi[j]);
    ConstructionReport report(Network::linear(std::move(m)), "primitive-mult",
                              "n=" + std::to_string(n) + " q=" + std::to_string(q));
    report.claims.push_back({"expansive", true});
    report.claims.push_back({"nonzero-single-cycle", true});
    return report;
}

inline std::vector<std::uint32_t> prime_power_factors(std::uint32_t q) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 2; std::uint64_t(p) * p <= q || q > 1; ++p) {
        if (q % p != 0) continue;
        std::uint32_t pk = 1;
        while (q % p == 0) {
            pk *= p;
            q /= p;
        }
        out.push_back(pk);
    }
    return out;
}

// Expansive network on the two-loop star for any q >= 2: the explicit
// alpha-matrix over GF(q) for prime powers above 2, a nonlinear table at
// q = 2, cartesian products of the prime-power parts otherwise.
inline ConstructionReport star_two_loops_network(std::uint32_t q, const Caps& caps = {});

namespace detail {

inline Network star_two_loops_table_q2() {
    // f_0 = x_1 x_2 + x_3 + 1, f_1 = x_0 + x_1, f_2 = x_0 + x_2 + 1, f_3 = x_0
    // on paper labels 0..3 = vertices 1..4
    std::vector<std::uint64_t> map(16);
    for (std::uint64_t x = 0; x < 16; ++x) {
        const auto d = Configuration::from_index(x, 4, 2).digits();
        std::vector<elem> y(4);
        y[0] = (d[1] & d[2]) ^ d[3] ^ 1u;
        y[1] = d[0] ^ d[1];
        y[2] = d[0] ^ d[2] ^ 1u;
        y[3] = d[0];
        map[x] = Configuration(2, y).index();
    }
    return Network::table(4, 2, std::move(map));
}

inline Network star_two_loops_field(std::uint32_t q) {
    const Ring ring = Ring::field(q);
    const elem alpha = 2;  // least element outside {0, 1}
    Matrix m = Matrix::from_rows(ring, {{0, 1, 1, 1}, {1, 1, 0, 0}, {1, 0, 0, 0}, {1, 0, 0, 0}});
    m(2, 2) = alpha;
    return Network::linear(std::move(m));
}

}  // namespace detail

inline ConstructionReport star_two_loops_network(std::uint32_t q, const Caps& caps) {
    require(q >= 2, errc::bad_params, "alphabet size must be at least 2");
    if (q == 2) {
        ConstructionReport report(detail::star_two_loops_table_q2(), "star-two-loops", "q=2");
        report.claims.push_back({"expansive", true});
        return report;
    }
    if (is_prime_power(q)) {
        ConstructionReport report(detail::star_two_loops_field(q), "star-two-loops",
                                  "q=" + std::to_string(q));
        report.claims.push_back({"expansive", true});
        report.claims.push_back({"strongly-expansive", true});
        return report;
    }
    const auto parts = prime_power_factors(q);
    ConstructionReport part0 = star_two_loops_network(parts[0], caps);
    Network product = part0.network;
    for (std::size_t i = 1; i < parts.size(); ++i)
        product = cartesian_product(product, star_two_loops_network(parts[i], caps).network, caps);
    ConstructionReport report(std::move(product), "star-two-loops", "q=" + std::to_string(q));
    report.claims.push_back({"expansive", true});
    report.notes.push_back("cartesian product of the prime power parts");
    return report;
}

// Rejection sampling over all-nonzero matrices until one passes the linear
// super-expansivity certificate; nullopt when the budget runs out (which
// claims nothing about nonexistence).
inline std::optional<Matrix> super_expansive_search(std::uint32_t n, std::uint32_t q,
                                                    std::uint64_t seed, std::uint32_t budget,
                                                    const Caps& caps = {}) {
    require(bush_gate(n, q), errc::bush_bound_violated,
            "no super-expansive network exists for q <= n^2 - n");
    const Ring ring = Ring::field(q);
    SplitMix64 rng(seed);
    for (std::uint32_t attempt = 0; attempt < budget; ++attempt) {
        Matrix m(n, n, ring);
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j) m(i, j) = elem(1 + rng.below(q - 1));
        if (check_super_expansive_linear(m, caps).holds) return m;
    }
    return std::nullopt;
}

// --- claim verification ---

inline bool network_is_bijective(const Network& f, const Caps& caps = {}) {
    if (f.is_linear()) {
        const Matrix& m = f.matrix();
        return m.ring().is_unit(m.det());
    }
    require(f.state_count() <= caps.max_states, errc::cap_exceeded,
            "bijectivity scan exceeds the state cap");
    std::vector<bool> hit(f.state_count(), false);
    for (std::uint64_t y : f.table()) {
        if (hit[y]) return false;
        hit[y] = true;
    }
    return true;
}

// Re-check a construction claim with an independent checker: the algebraic
// certificate for field linear bodies, brute force otherwise.
inline bool verify_claim(const Network& f, const std::string& predicate, const Caps& caps = {}) {
    const bool field_linear = f.is_linear() && f.matrix().ring().is_math_field();
    if (predicate == "expansive")
        return field_linear ? is_expansive_linear(f.matrix()) : is_expansive(f, caps);
    if (predicate == "weakly-expansive") return is_weakly_expansive(f, caps);
    if (predicate == "quasi-expansive") return is_quasi_expansive(f, caps);
    if (predicate == "strongly-expansive")
        return field_linear ? is_expansive_linear(f.matrix()) : is_strongly_expansive(f, caps);
    if (predicate == "super-expansive")
        return field_linear ? is_super_expansive_linear(f.matrix(), caps)
                            : is_super_expansive(f, caps);
    if (predicate == "bijective") return network_is_bijective(f, caps);
    if (predicate == "single-cycle") {
        const auto info = f.orbit(std::uint64_t(0));
        return info.tail == 0 && info.period == f.state_count();
    }
    if (predicate == "nonzero-single-cycle") {
        if (f.apply_index(0) != 0) return false;
        const auto info = f.orbit(std::uint64_t(1));
        return info.tail == 0 && info.period == f.state_count() - 1;
    }
    fail(errc::bad_params, "unknown claim predicate '" + predicate + "'");
}

}  // namespace ean
