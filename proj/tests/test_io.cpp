#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "ean/constructions.hpp"
#include "ean/io.hpp"

using namespace ean;

namespace {

template <typename T, typename Format, typename Parse>
void roundtrip(const T& value, Format format, Parse parse) {
    const std::string text = format(value);
    std::istringstream in(text);
    const T back = parse(in);
    CHECK(back == value);
    // emitting again gives the identical text
    CHECK(format(back) == text);
}

}  // namespace

TEST_CASE("matrix format round-trips") {
    const auto fmt = [](const Matrix& m) { return format_matrix(m); };
    const auto parse = [](std::istream& in) { return parse_matrix(in); };

    roundtrip(Matrix::from_rows(Ring::field(3), {{0, 1}, {2, 2}}), fmt, parse);
    roundtrip(Matrix::from_rows(Ring::modular(6), {{5, 0, 3}, {1, 1, 4}}), fmt, parse);
    roundtrip(Matrix::from_rows(Ring::field(8), {{7, 6}, {1, 0}}), fmt, parse);

    const Matrix m = Matrix::from_rows(Ring::field(2), {{0, 1}, {1, 1}});
    CHECK(format_matrix(m) == "2 2 2 field\n0 1\n1 1\n");

    std::istringstream bad("2 2 9 weird\n0 1\n1 1\n");
    CHECK_THROWS_MATCHES(parse_matrix(bad), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == errc::parse_error; }));
}

TEST_CASE("graph format round-trips") {
    const auto fmt = [](const Digraph& d) { return format_graph(d); };
    const auto parse = [](std::istream& in) { return parse_graph(in); };

    roundtrip(looped_star(3), fmt, parse);
    roundtrip(two_loop_star(), fmt, parse);
    roundtrip(cycle_with_loops(5, {2, 3}), fmt, parse);

    // comments and blank lines are ignored
    std::istringstream commented("# a cycle\n3\n1 2\n\n# middle\n2 3\n3 1\n");
    CHECK(parse_graph(commented) == cycle_with_loops(3, {}));

    std::istringstream out_of_range("2\n1 3\n");
    CHECK_THROWS_AS(parse_graph(out_of_range), Error);
}

TEST_CASE("network format round-trips") {
    const auto fmt = [](const Network& f) { return format_network(f); };
    const auto parse = [](std::istream& in) { return parse_network(in); };

    const auto eq = [](const Network& a, const Network& b) {
        REQUIRE(a.n() == b.n());
        REQUIRE(a.q() == b.q());
        REQUIRE(a.is_linear() == b.is_linear());
        if (a.is_linear()) {
            CHECK(a.matrix() == b.matrix());
        } else {
            CHECK(a.table() == b.table());
        }
    };

    // table body
    const Network twisted = twisted_lex_network(2, 3).network;
    const std::string text = fmt(twisted);
    std::istringstream in(text);
    eq(parse(in), twisted);

    // linear bodies over both ring kinds
    for (const Network& f :
         {Network::linear(Matrix::from_rows(Ring::field(4), {{2, 1}, {3, 0}})),
          Network::linear(Matrix::from_rows(Ring::modular(6), {{1, 2}, {3, 5}}))}) {
        const std::string t = fmt(f);
        std::istringstream lin_in(t);
        eq(parse(lin_in), f);
        CHECK(fmt(f) == t);
    }

    // the shipped fixture parses and re-emits byte-identically
    std::ifstream fixture(std::string(EAN_DATA_DIR) + "/example_n3_q2.net");
    REQUIRE(fixture.good());
    std::stringstream buffer;
    buffer << fixture.rdbuf();
    std::istringstream fixture_in(buffer.str());
    const Network example = parse(fixture_in);
    CHECK(fmt(example) == buffer.str());

    // out-of-order table lines are rejected
    std::istringstream disorder("kind: table\nn: 1\nq: 2\n1 -> 0\n0 -> 1\n");
    CHECK_THROWS_AS(parse_network(disorder), Error);
}

TEST_CASE("code format round-trips") {
    const Matrix witness = Matrix::from_rows(Ring::field(3), {{1, 1}, {1, 2}});
    const Code c = code_from_array(orbit_array(Network::linear(witness)));
    const Matrix g = generator_matrix(witness);

    const std::string with_generator = format_code(c, g);
    CHECK(with_generator.rfind("N=4 q=3 |C|=9 d=3 MDS=yes\n", 0) == 0);
    std::istringstream in(with_generator);
    const ParsedCode back = parse_code(in);
    CHECK(back.code.words() == c.words());
    REQUIRE(back.generator.has_value());
    CHECK(*back.generator == g);

    const std::string bare = format_code(c);
    std::istringstream bare_in(bare);
    CHECK_FALSE(parse_code(bare_in).generator.has_value());
}
