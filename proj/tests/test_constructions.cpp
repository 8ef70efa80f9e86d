#include <catch2/catch_amalgamated.hpp>

#include "ean/constructions.hpp"
#include "ean/io.hpp"

using namespace ean;

namespace {

bool supports_exactly(const Matrix& m, const Digraph& d) {
    if (m.rows() != d.n() || m.cols() != d.n()) return false;
    for (std::uint32_t u = 1; u <= d.n(); ++u)
        for (std::uint32_t v = 1; v <= d.n(); ++v)
            if ((m(u - 1, v - 1) != 0) != d.has_arc(u, v)) return false;
    return true;
}

Digraph random_coverable_graph(std::uint32_t n, SplitMix64& rng) {
    while (true) {
        Digraph d(n);
        for (std::uint32_t u = 1; u <= n; ++u)
            for (std::uint32_t v = 1; v <= n; ++v)
                if (rng.below(100) < 45) d.add_arc(u, v);
        if (d.is_coverable()) return d;
    }
}

}  // namespace

TEST_CASE("alphabet thresholds") {
    CHECK(linear_field_threshold(1) == 3);
    CHECK(linear_field_threshold(2) == 8);    // (8 + 4 + 4) / 2 = 8 = 2^3
    CHECK(linear_field_threshold(3) == 23);   // bound 20, next prime power 23
    CHECK(linear_field_threshold(4) == 43);   // bound 42, next prime power 43

    CHECK_FALSE(bush_gate(2, 2));
    CHECK(bush_gate(2, 3));
    CHECK(bush_gate(1, 2));
    CHECK_FALSE(bush_gate(3, 6));

    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(9, 3) == 84);
    CHECK(super_threshold(2) == 25);  // least prime power above 4 * C(4,2) = 24
}

TEST_CASE("unit-determinant matrix for a prescribed graph") {
    Digraph loop(1);
    loop.add_arc(1, 1);
    const Matrix single = nonsingular_matrix_for_graph(loop, 3);
    CHECK(single(0, 0) == 1);

    const Digraph cycle = cycle_with_loops(3, {});
    const Matrix m = nonsingular_matrix_for_graph(cycle, 3);
    CHECK(m.det() == 1);
    CHECK(supports_exactly(m, cycle));

    const Digraph star = looped_star(2);
    const Matrix s = nonsingular_matrix_for_graph(star, 3);
    CHECK(s.det() == 1);
    CHECK(supports_exactly(s, star));

    Digraph path(2);
    path.add_arc(1, 2);
    CHECK_THROWS_MATCHES(nonsingular_matrix_for_graph(path, 3), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == errc::not_coverable; }));
    CHECK_THROWS_MATCHES(nonsingular_matrix_for_graph(cycle, 2), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == errc::alphabet_too_small; }));
}

TEST_CASE("unit-determinant construction over random coverable graphs") {
    SplitMix64 rng(41);
    for (const std::uint32_t q : {3u, 4u, 5u, 6u})
        for (std::uint32_t n = 2; n <= 5; ++n)
            for (int trial = 0; trial < 5; ++trial) {
                const Digraph d = random_coverable_graph(n, rng);
                const Matrix m = nonsingular_matrix_for_graph(d, q);
                CHECK(m.det() == 1);
                CHECK(supports_exactly(m, d));
            }
}

TEST_CASE("random linear strategy") {
    const Digraph cycle = cycle_with_loops(3, {});
    const auto report = random_linear_strategy(cycle, 8, 1);
    CHECK(report.seed == 1);
    CHECK(report.network.is_linear());
    CHECK(supports_exactly(report.network.matrix(), cycle));
    REQUIRE(report.claims.size() == 1);
    CHECK(report.claims[0].predicate == "expansive");
    CHECK(report.claims[0].expected);
    CHECK(verify_claim(report.network, "expansive"));

    // the same seed reproduces the same matrix
    CHECK(random_linear_strategy(cycle, 8, 1).network.matrix() == report.network.matrix());

    // a graph that is not strong never yields an expansive network
    Digraph two_loops(2);
    two_loops.add_arc(1, 1);
    two_loops.add_arc(2, 2);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto r = random_linear_strategy(two_loops, 3, seed);
        CHECK_FALSE(r.claims[0].expected);
        CHECK_FALSE(verify_claim(r.network, "expansive"));
    }
}

TEST_CASE("cycle with loops networks: proper case") {
    const Matrix m = cycle_with_loops_network(4, {1, 3}, 2);
    CHECK(m == cycle_with_loops(4, {1, 3}).adjacency_matrix(Ring::modular(2)));
    CHECK(is_expansive(Network::linear(m)));

    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        const Matrix a = cycle_with_loops_network(5, {2, 4}, q);
        CHECK(is_expansive(Network::linear(a)));
    }
}

TEST_CASE("cycle with loops networks: improper case") {
    CHECK_THROWS_MATCHES(cycle_with_loops_network(3, {1, 2, 3}, 2), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == errc::no_linear_solution; }));

    // odd n over Z_3: the parity-rule coefficients a = 2, b = 2
    const Matrix odd = cycle_with_loops_network(3, {1, 2, 3}, 3);
    CHECK(odd(0, 0) == 2);
    CHECK(odd(0, 1) == 2);
    CHECK(supports_exactly(odd, cycle_with_loops(3, {1, 2, 3})));
    const auto cert = check_expansive_linear(odd);
    CHECK(cert.holds);
    for (elem d : cert.det_n) CHECK(d != 0);
    CHECK(is_expansive(Network::linear(odd)));

    // even n over Z_3 and Z_4 falls into the degenerate corner; the searched
    // coefficients still realize the graph and stay expansive
    for (std::uint32_t q : {3u, 4u}) {
        for (std::uint32_t n : {2u, 4u}) {
            std::set<std::uint32_t> all;
            for (std::uint32_t v = 1; v <= n; ++v) all.insert(v);
            const Matrix m = cycle_with_loops_network(n, all, q);
            CHECK(supports_exactly(m, cycle_with_loops(n, all)));
            CHECK(is_expansive(Network::linear(m)));
        }
    }
}

TEST_CASE("cycle of cycles networks") {
    // a plain cycle at q = 2: the rotation XOR network
    const auto plain = cycle_of_cycles_network(CycleOfCycles{{{4, 1, 1}}}, 2);
    CHECK(plain.network.is_linear());
    CHECK(verify_claim(plain.network, "bijective"));
    CHECK(verify_claim(plain.network, "expansive"));

    // two 2-cycles linked properly at q = 2
    const CycleOfCycles linked{{{2, 1, 1}, {2, 1, 1}}};
    const auto xor_net = cycle_of_cycles_network(linked, 2);
    CHECK(is_expansive(xor_net.network));

    // improper at q = 2 has no linear solution
    const CycleOfCycles improper{{{2, 1, 2}, {2, 1, 2}}};
    CHECK_THROWS_MATCHES(cycle_of_cycles_network(improper, 2), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == errc::no_linear_solution; }));

    // the same improper shape works at q = 3, and the proper one too
    for (const auto& shape : {improper, linked}) {
        const auto r = cycle_of_cycles_network(shape, 3);
        CHECK(verify_claim(r.network, "expansive"));
    }
}

TEST_CASE("twisted lexicographic successor") {
    const auto r = twisted_lex_network(2, 2);
    const Network& f = r.network;
    // the enumeration visits 00, 10, 11, 01 and wraps
    CHECK(f.apply(Configuration(2, {0, 0})) == Configuration(2, {1, 0}));
    CHECK(f.apply(Configuration(2, {1, 0})) == Configuration(2, {1, 1}));
    CHECK(f.apply(Configuration(2, {1, 1})) == Configuration(2, {0, 1}));
    CHECK(f.apply(Configuration(2, {0, 1})) == Configuration(2, {0, 0}));

    const auto o = f.orbit(std::uint64_t(0));
    CHECK(o.tail == 0);
    CHECK(o.period == 4);

    CHECK(verify_claim(f, "single-cycle"));
    CHECK(verify_claim(f, "expansive"));
    CHECK(expansion_time(f) == 2);

    // observation example: f(00) = 10, f^2(00) = 11
    const Observation omega{{{1, 2}, {2, 1}}};
    CHECK(f.observe(std::uint64_t(0), omega) == std::vector<elem>{1, 0});
}

TEST_CASE("twisted lex time bounds at small sizes") {
    for (const auto [n, q] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {2, 2}, {2, 3}, {3, 2}, {2, 4}}) {
        const auto r = twisted_lex_network(n, q);
        CHECK(verify_claim(r.network, "single-cycle"));
        REQUIRE(is_expansive(r.network));
        const std::uint64_t states = r.network.state_count();
        const std::uint64_t time = expansion_time(r.network);
        CHECK(time >= states - q - 1);
        CHECK(time <= states - 2);
    }
}

TEST_CASE("primitive multiplication networks") {
    const auto r22 = primitive_mult_network(2, 2);
    CHECK(r22.network.matrix() == Matrix::from_rows(Ring::field(2), {{0, 1}, {1, 1}}));
    CHECK(verify_claim(r22.network, "expansive"));
    CHECK(verify_claim(r22.network, "nonzero-single-cycle"));
    CHECK(expansion_frequency(r22.network) == Rational(2, 3));

    const auto r32 = primitive_mult_network(3, 2);
    CHECK(verify_claim(r32.network, "nonzero-single-cycle"));
    CHECK(expansion_frequency(r32.network) == Rational(4, 7));

    const auto r23 = primitive_mult_network(2, 3);
    CHECK(verify_claim(r23.network, "nonzero-single-cycle"));
    CHECK(expansion_frequency(r23.network) == Rational(3, 4));  // 6/8 reduced

    // also over a proper extension field as the base alphabet
    const auto r24 = primitive_mult_network(2, 4);
    CHECK(verify_claim(r24.network, "expansive"));
    CHECK(verify_claim(r24.network, "nonzero-single-cycle"));
}

TEST_CASE("two-loop star networks across alphabets") {
    const auto q3 = star_two_loops_network(3);
    CHECK(q3.network.is_linear());
    CHECK(verify_claim(q3.network, "expansive"));
    CHECK(verify_claim(q3.network, "strongly-expansive"));
    CHECK(expansion_time(q3.network) == 4);

    const auto q2 = star_two_loops_network(2);
    CHECK(q2.network.is_table());
    CHECK(q2.network.interaction_graph() == two_loop_star());
    CHECK(verify_claim(q2.network, "expansive"));
    // spot check the defining formulas: x = (0,0,0,0) maps to (1,0,1,0)
    CHECK(q2.network.apply(Configuration(2, {0, 0, 0, 0})) == Configuration(2, {1, 0, 1, 0}));

    const auto q4 = star_two_loops_network(4);
    CHECK(q4.network.is_linear());
    CHECK(verify_claim(q4.network, "expansive"));

    const auto q6 = star_two_loops_network(6);
    CHECK(q6.network.is_table());
    CHECK(q6.network.q() == 6);
    CHECK(is_expansive(q6.network));
}

TEST_CASE("super-expansive search") {
    const auto found = super_expansive_search(2, 3, 1, 100);
    REQUIRE(found.has_value());
    CHECK(check_super_expansive_linear(*found).holds);
    CHECK(check_super_expansive(Network::linear(*found)).holds);

    CHECK_THROWS_MATCHES(super_expansive_search(2, 2, 1, 100), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == errc::bush_bound_violated; }));

    CHECK_FALSE(super_expansive_search(2, 3, 1, 0).has_value());
}

TEST_CASE("claim verifier") {
    const auto r = twisted_lex_network(2, 2);
    CHECK(verify_claim(r.network, "bijective"));
    CHECK_THROWS_AS(verify_claim(r.network, "no-such-claim"), Error);

    // claims attached by constructions all verify
    for (const auto& claim : r.claims) CHECK(verify_claim(r.network, claim.predicate) == claim.expected);
    const auto pm = primitive_mult_network(2, 3);
    for (const auto& claim : pm.claims) CHECK(verify_claim(pm.network, claim.predicate) == claim.expected);
}
