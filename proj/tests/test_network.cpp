#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "ean/io.hpp"
#include "ean/network.hpp"

using namespace ean;

namespace {

Network load_example() {
    std::ifstream in(std::string(EAN_DATA_DIR) + "/example_n3_q2.net");
    REQUIRE(in.good());
    return parse_network(in);
}

Network identity_network(std::uint32_t n, std::uint32_t q) {
    std::vector<std::uint64_t> map(checked_power(q, n));
    for (std::uint64_t x = 0; x < map.size(); ++x) map[x] = x;
    return Network::table(n, q, std::move(map));
}

std::uint64_t index_of(std::uint32_t q, const std::vector<elem>& digits) {
    return Configuration(q, digits).index();
}

}  // namespace

TEST_CASE("configuration encoding") {
    // vertex 1 is the leftmost digit and the most significant in the index
    const Configuration c(2, {0, 0, 1});
    CHECK(c.index() == 1);
    CHECK(c.at(3) == 1);
    CHECK(c.str() == "001");
    CHECK(Configuration(2, {1, 0, 0}).index() == 4);

    for (std::uint32_t q : {2u, 3u, 5u})
        for (std::uint32_t n = 1; n <= 4; ++n)
            for (std::uint64_t x = 0; x < checked_power(q, n); ++x)
                CHECK(Configuration::from_index(x, n, q).index() == x);

    CHECK_THROWS_AS(Configuration(2, {0, 2, 0}), Error);
}

TEST_CASE("table application follows the fixture") {
    const Network f = load_example();
    CHECK(f.apply(Configuration(2, {0, 0, 0})) == Configuration(2, {0, 0, 1}));
    CHECK(f.apply(Configuration(2, {1, 1, 0})) == Configuration(2, {0, 0, 0}));
    CHECK(f.apply(Configuration(2, {1, 1, 1})) == Configuration(2, {1, 0, 0}));

    const Network id = identity_network(2, 3);
    const Configuration x(3, {2, 1});
    CHECK(id.iterate(x, 17) == x);
}

TEST_CASE("orbits") {
    const Network f = load_example();
    // 000 -> 001 -> 110 -> 000
    const auto o = f.orbit(Configuration(2, {0, 0, 0}));
    CHECK(o.tail == 0);
    CHECK(o.period == 3);
    // 010 <-> 101
    CHECK(f.orbit(index_of(2, {0, 1, 0})).period == 2);

    // non-bijective map: 0 -> 1 -> 2 -> 1 has tail 1, period 2
    const Network chain = Network::table(1, 4, {1, 2, 1, 0});
    const auto c = chain.orbit(std::uint64_t(0));
    CHECK(c.tail == 1);
    CHECK(c.period == 2);
}

TEST_CASE("traces match the fixture table") {
    const Network f = load_example();
    const std::vector<std::pair<std::vector<elem>, std::vector<elem>>> expected{
        {{0, 0, 0}, {0, 1, 0, 0}}, {{0, 0, 1}, {1, 0, 0, 1}}, {{0, 1, 0}, {1, 0, 1, 0}},
        {{0, 1, 1}, {1, 1, 0, 1}}, {{1, 0, 0}, {0, 1, 1, 0}}, {{1, 0, 1}, {0, 1, 0, 1}},
        {{1, 1, 0}, {0, 0, 1, 0}}, {{1, 1, 1}, {1, 0, 1, 1}}};
    for (const auto& [start, values] : expected) {
        const TraceView t = f.trace(Configuration(2, start), 1, 4);
        CHECK(t.values == values);
    }

    const Network id = identity_network(3, 2);
    for (std::uint64_t x = 0; x < 8; ++x)
        for (std::uint32_t v = 1; v <= 3; ++v) {
            const auto t = id.trace(x, v, 5);
            for (elem value : t.values) CHECK(value == id.digit_of(x, v));
        }
}

TEST_CASE("observations") {
    const Network f = load_example();
    // observing every vertex at time 1 reads out f(x)
    const Observation all_at_one{{{1, 1}, {2, 1}, {3, 1}}};
    for (std::uint64_t x = 0; x < 8; ++x) {
        const auto obs = f.observe(x, all_at_one);
        const std::uint64_t fx = f.apply_index(x);
        CHECK(obs == std::vector<elem>{f.digit_of(fx, 1), f.digit_of(fx, 2), f.digit_of(fx, 3)});
    }

    // first column of the trace table, x = 000 -> (0, 1, 0)
    const Observation first_vertex{{{1, 1}, {1, 2}, {1, 3}}};
    CHECK(f.observe(std::uint64_t(0), first_vertex) == std::vector<elem>{0, 1, 0});

    Observation repeated{{{1, 1}, {1, 1}, {2, 1}}};
    CHECK_THROWS_AS(f.observe(std::uint64_t(0), repeated), Error);
    Observation too_late{{{1, 1}, {2, 5}, {3, 1}}};
    CHECK_THROWS_AS(f.observe(std::uint64_t(0), too_late), Error);
}

TEST_CASE("interaction graphs") {
    // constant network: no essential dependencies
    const Network constant = Network::table(2, 2, {0, 0, 0, 0});
    CHECK(constant.interaction_graph().arc_count() == 0);

    // XOR network on a graph D has interaction graph D, via both bodies
    Digraph d(3);
    d.add_arc(1, 2);
    d.add_arc(2, 3);
    d.add_arc(3, 1);
    d.add_arc(1, 1);
    const Network xor_net = Network::linear(d.adjacency_matrix(Ring::field(2)));
    CHECK(xor_net.interaction_graph() == d);
    CHECK(xor_net.to_table().interaction_graph() == d);

    // alpha-matrix over GF(3) lives exactly on the two-loop star
    const Ring f3 = Ring::field(3);
    const Matrix m =
        Matrix::from_rows(f3, {{0, 1, 1, 1}, {1, 1, 0, 0}, {1, 0, 2, 0}, {1, 0, 0, 0}});
    CHECK(Network::linear(m).interaction_graph() == two_loop_star());
    CHECK(Network::linear(m).to_table().interaction_graph() == two_loop_star());
}

TEST_CASE("linear and table bodies agree") {
    const Ring f5 = Ring::field(5);
    const Matrix m = Matrix::from_rows(f5, {{1, 2}, {3, 4}});
    const Network lin = Network::linear(m);
    const Network tab = lin.to_table();
    for (std::uint64_t x = 0; x < 25; ++x) {
        CHECK(lin.apply_index(x) == tab.apply_index(x));
        CHECK(lin.orbit(x).period == tab.orbit(x).period);
    }
}

TEST_CASE("cartesian product") {
    const Network id2 = identity_network(2, 2);
    const Network id3 = identity_network(2, 3);
    const Network prod = cartesian_product(id2, id3);
    CHECK(prod.q() == 6);
    CHECK(prod.n() == 2);
    for (std::uint64_t x = 0; x < prod.state_count(); ++x) CHECK(prod.apply_index(x) == x);

    // digit pairing a = a1 * r + a2 respected on a nontrivial pair
    const Network f = Network::table(1, 2, {1, 0});     // negation on (2)
    const Network g = Network::table(1, 3, {1, 2, 0});  // +1 on (3)
    const Network h = cartesian_product(f, g);
    for (elem a1 = 0; a1 < 2; ++a1)
        for (elem a2 = 0; a2 < 3; ++a2) {
            const std::uint64_t in = a1 * 3 + a2;
            const std::uint64_t out = h.apply_index(in);
            CHECK(out / 3 == (a1 ^ 1u));
            CHECK(out % 3 == (a2 + 1u) % 3);
        }

    CHECK_THROWS_AS(cartesian_product(identity_network(1, 2), identity_network(2, 2)), Error);
}

TEST_CASE("cellular automaton restriction") {
    // shift rule F(x)_z = x_{z+1}: the window is (x_{z-1}, x_z, x_{z+1})
    const auto shift = [](const std::vector<elem>& w) { return w[2]; };
    const Network s3 = network_from_ca_rule(2, 1, 3, shift);
    CHECK(s3.apply(Configuration(2, {1, 0, 0})) == Configuration(2, {0, 0, 1}));
    CHECK(s3.apply(Configuration(2, {0, 1, 1})) == Configuration(2, {1, 1, 0}));

    const auto zero = [](const std::vector<elem>&) { return elem(0); };
    const Network z = network_from_ca_rule(2, 1, 3, zero);
    for (std::uint64_t x = 0; x < 8; ++x) CHECK(z.apply_index(x) == 0);

    // rule x_{z-1} + x_{z+1} mod 2 equals the linear network whose matrix is
    // the loopless circulant adjacency
    const auto fredkin = [](const std::vector<elem>& w) { return elem((w[0] + w[2]) % 2); };
    const Network ca = network_from_ca_rule(2, 1, 4, fredkin);
    Matrix adj(4, 4, Ring::field(2));
    for (std::uint32_t z = 0; z < 4; ++z) {
        adj((z + 1) % 4, z) = 1;  // f_z depends on x_{z-1} and x_{z+1}
        adj((z + 3) % 4, z) = 1;
    }
    const Network lin = Network::linear(adj);
    for (std::uint64_t x = 0; x < 16; ++x) CHECK(ca.apply_index(x) == lin.apply_index(x));
}

TEST_CASE("state cap") {
    CHECK_THROWS_MATCHES(
        Network::linear(Matrix::identity(11, Ring::field(4))).to_table(Caps{1 << 20, 1000}), Error,
        Catch::Matchers::Predicate<Error>(
            [](const Error& e) { return e.code() == errc::cap_exceeded; }));
}
