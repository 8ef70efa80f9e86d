#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <set>

#include "ean/coding.hpp"
#include "ean/constructions.hpp"
#include "ean/io.hpp"

using namespace ean;

namespace {

Network load_example() {
    std::ifstream in(std::string(EAN_DATA_DIR) + "/example_n3_q2.net");
    REQUIRE(in.good());
    return parse_network(in);
}

Matrix super_witness() {
    return Matrix::from_rows(Ring::field(3), {{1, 1}, {1, 2}});
}

}  // namespace

TEST_CASE("orbit arrays") {
    // n = 1 bijective: the q x 1 array of f values has strength 1
    const Network inc = Network::table(1, 3, {1, 2, 0});
    const auto a1 = orbit_array(inc);
    CHECK(a1.rows.size() == 3);
    CHECK(a1.word_length() == 1);
    CHECK(check_oa(a1, 1));

    // the worked example: 8 rows of length 9, cells laid out time-major
    const auto a = orbit_array(load_example());
    CHECK(a.rows.size() == 8);
    CHECK(a.word_length() == 9);
    // row of 000: f = 001, f^2 = 110, f^3 = 000
    CHECK(a.rows[0] == std::vector<elem>{0, 0, 1, 1, 1, 0, 0, 0, 0});
    // its interaction graph is not complete, so no strength claim: not super
    CHECK_FALSE(check_super_expansive(load_example()).holds);

    const auto s = orbit_array(Network::linear(super_witness()));
    CHECK(s.rows.size() == 9);
    CHECK(s.word_length() == 4);
}

TEST_CASE("orthogonal array strength checks") {
    auto a = orbit_array(Network::linear(super_witness()));
    CHECK(check_oa(a, 2));
    CHECK(check_oa(a, 1) == false);  // 9 rows cannot be distinct on one ternary column

    // corrupting one cell breaks strength 2
    auto corrupted = a;
    corrupted.rows[0][0] = (corrupted.rows[0][0] + 1) % 3;
    CHECK_FALSE(check_oa(corrupted, 2));
}

TEST_CASE("strength n at index 1 iff super-expansive") {
    const auto super = orbit_array(Network::linear(super_witness()));
    CHECK(check_oa(super, 2) == check_super_expansive(Network::linear(super_witness())).holds);

    const Network example = load_example();
    CHECK(check_oa(orbit_array(example), 3) == check_super_expansive(example).holds);
}

TEST_CASE("codes and distances") {
    // ternary repetition code of length 4
    Code repetition(3, {{0, 0, 0, 0}, {1, 1, 1, 1}, {2, 2, 2, 2}});
    CHECK(repetition.min_distance() == 4);
    CHECK(repetition.is_mds());

    // the orbit code of the super-expansive 2x2 witness over GF(3)
    const Code c = code_from_array(orbit_array(Network::linear(super_witness())));
    CHECK(c.length() == 4);
    CHECK(c.size() == 9);
    CHECK(c.min_distance() == 3);  // n^2 - n + 1
    CHECK(c.is_mds());

    // two close words: d = 1 and far from the Singleton equality
    Code tiny(2, {{0, 0}, {0, 1}});
    CHECK(tiny.min_distance() == 1);
    CHECK_FALSE(tiny.is_mds());

    // the full cube is MDS with d = 1
    Code cube(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(cube.min_distance() == 1);
    CHECK(cube.is_mds());

    Code lonely(2, {{0, 0}});
    CHECK_THROWS_MATCHES(lonely.min_distance(), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code() == errc::too_few_words; }));
}

TEST_CASE("generator matrices") {
    // n = 1: G = (a)
    const Matrix unit = Matrix::from_rows(Ring::field(3), {{2}});
    const Matrix g1 = generator_matrix(unit);
    CHECK(g1.rows() == 1);
    CHECK(g1.cols() == 1);
    CHECK(g1(0, 0) == 2);

    // n = 2 over GF(3): G = (M | M^2) with M^2 = 2I
    const Matrix m = super_witness();
    const Matrix g = generator_matrix(m);
    CHECK(g == Matrix::from_rows(Ring::field(3), {{1, 1, 2, 0}, {1, 2, 0, 2}}));

    // row space of G is exactly the orbit array row set
    const auto words = row_space(g);
    const auto array = orbit_array(Network::linear(m));
    CHECK(words == array.rows);  // same order: row x = L_x

    CHECK_THROWS_MATCHES(generator_matrix(Matrix::identity(2, Ring::field(5))), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == errc::not_super_expansive;
                         }));
}

TEST_CASE("no strength-n array below the Bush bound") {
    // all 24 bijections on (2)^2: none gives an OA of strength 2 with 4 rows
    std::vector<std::uint64_t> perm{0, 1, 2, 3};
    do {
        const Network f = Network::table(2, 2, perm);
        CHECK_FALSE(check_oa(orbit_array(f), 2));
    } while (std::next_permutation(perm.begin(), perm.end()));
}
