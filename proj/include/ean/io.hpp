#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ean/coding.hpp"
#include "ean/digraph.hpp"
#include "ean/error.hpp"
#include "ean/matrix.hpp"
#include "ean/network.hpp"
#include "ean/ring.hpp"

namespace ean {

namespace detail {

inline std::string next_content_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        const auto end = line.find_last_not_of(" \t\r");
        return line.substr(start, end - start + 1);
    }
    return {};
}

inline std::vector<elem> parse_digits(const std::string& text, std::uint32_t n, std::uint32_t q) {
    std::vector<elem> out;
    if (q <= 10) {
        for (char c : text) {
            require(c >= '0' && c <= '9', errc::parse_error, "bad digit '" + std::string(1, c) + "'");
            out.push_back(elem(c - '0'));
        }
    } else {
        std::stringstream ss(text);
        std::string part;
        while (std::getline(ss, part, ',')) out.push_back(elem(std::stoul(part)));
    }
    require(out.size() == n, errc::parse_error, "expected " + std::to_string(n) + " digits");
    for (elem d : out) require(d < q, errc::parse_error, "digit out of alphabet");
    return out;
}

}  // namespace detail

// --- matrix format: "rows cols q kind" then one line per row ---

inline std::string format_matrix(const Matrix& m) {
    std::ostringstream out;
    out << m.rows() << ' ' << m.cols() << ' ' << m.ring().q() << ' '
        << (m.ring().kind() == RingKind::field ? "field" : "modular") << '\n';
    for (std::uint32_t i = 0; i < m.rows(); ++i) {
        for (std::uint32_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << m(i, j);
        }
        out << '\n';
    }
    return out.str();
}

inline Matrix parse_matrix(std::istream& in) {
    std::istringstream header(detail::next_content_line(in));
    std::uint32_t rows = 0, cols = 0, q = 0;
    std::string kind;
    header >> rows >> cols >> q >> kind;
    require(rows >= 1 && cols >= 1 && q >= 2, errc::parse_error, "bad matrix header");
    require(kind == "field" || kind == "modular", errc::parse_error,
            "matrix kind must be 'field' or 'modular'");
    const Ring ring = make_ring(q, kind == "field" ? RingKind::field : RingKind::modular);
    Matrix m(rows, cols, ring);
    for (std::uint32_t i = 0; i < rows; ++i) {
        std::istringstream line(detail::next_content_line(in));
        for (std::uint32_t j = 0; j < cols; ++j) {
            std::int64_t value = -1;
            line >> value;
            require(value >= 0 && value < q, errc::parse_error, "matrix entry out of range");
            m(i, j) = elem(value);
        }
    }
    return m;
}

// --- graph format: "n" then one "u v" arc per line, 1-based, '#' comments ---

inline std::string format_graph(const Digraph& d) {
    std::ostringstream out;
    out << d.n() << '\n';
    for (auto [u, v] : d.arcs()) out << u << ' ' << v << '\n';
    return out.str();
}

inline Digraph parse_graph(std::istream& in) {
    const std::string header = detail::next_content_line(in);
    require(!header.empty(), errc::parse_error, "missing vertex count");
    std::uint32_t n = 0;
    try {
        n = std::uint32_t(std::stoul(header));
    } catch (const std::exception&) {
        fail(errc::parse_error, "bad vertex count '" + header + "'");
    }
    require(n >= 1, errc::parse_error, "graph needs at least one vertex");
    Digraph d(n);
    std::string line;
    while (!(line = detail::next_content_line(in)).empty()) {
        std::istringstream arc(line);
        std::uint32_t u = 0, v = 0;
        arc >> u >> v;
        require(u >= 1 && u <= n && v >= 1 && v <= n, errc::parse_error,
                "arc endpoint out of range in '" + line + "'");
        d.add_arc(u, v);
    }
    return d;
}

// --- network format ---
//   kind: table|linear
//   n: <int>
//   q: <int>
//   ring: modular|field            (linear only)
// then the matrix block (matrix format) or q^n lines "digits -> digits" in
// increasing index order.

inline std::string format_network(const Network& f) {
    std::ostringstream out;
    out << "kind: " << (f.is_linear() ? "linear" : "table") << '\n';
    out << "n: " << f.n() << '\n';
    out << "q: " << f.q() << '\n';
    if (f.is_linear()) {
        out << "ring: " << (f.matrix().ring().kind() == RingKind::field ? "field" : "modular")
            << '\n';
        out << format_matrix(f.matrix());
    } else {
        for (std::uint64_t x = 0; x < f.state_count(); ++x)
            out << Configuration::from_index(x, f.n(), f.q()).str() << " -> "
                << Configuration::from_index(f.table()[x], f.n(), f.q()).str() << '\n';
    }
    return out.str();
}

inline Network parse_network(std::istream& in) {
    std::string kind, ring_kind;
    std::uint32_t n = 0, q = 0;
    for (int i = 0; i < 3; ++i) {
        const std::string line = detail::next_content_line(in);
        const auto colon = line.find(':');
        require(colon != std::string::npos, errc::parse_error, "bad network header '" + line + "'");
        const std::string key = line.substr(0, colon);
        std::string value = line.substr(colon + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        if (key == "kind")
            kind = value;
        else if (key == "n")
            n = std::uint32_t(std::stoul(value));
        else if (key == "q")
            q = std::uint32_t(std::stoul(value));
        else
            fail(errc::parse_error, "unexpected header key '" + key + "'");
    }
    require(kind == "table" || kind == "linear", errc::parse_error,
            "network kind must be 'table' or 'linear'");
    require(n >= 1 && q >= 2, errc::parse_error, "bad network dimensions");

    if (kind == "linear") {
        const std::string line = detail::next_content_line(in);
        require(line.rfind("ring:", 0) == 0, errc::parse_error, "linear network needs a ring header");
        std::string value = line.substr(5);
        value.erase(0, value.find_first_not_of(" \t"));
        require(value == "modular" || value == "field", errc::parse_error,
                "ring must be 'modular' or 'field'");
        Matrix m = parse_matrix(in);
        require(m.rows() == n && m.cols() == n, errc::parse_error,
                "matrix block does not match the declared n");
        require(m.ring().q() == q, errc::parse_error, "matrix block does not match the declared q");
        require((m.ring().kind() == RingKind::field) == (value == "field"), errc::parse_error,
                "matrix block does not match the declared ring");
        return Network::linear(std::move(m));
    }

    const std::uint64_t states = checked_power(q, n);
    std::vector<std::uint64_t> map(states);
    for (std::uint64_t x = 0; x < states; ++x) {
        const std::string line = detail::next_content_line(in);
        const auto arrow = line.find("->");
        require(arrow != std::string::npos, errc::parse_error, "table line needs '->'");
        std::string lhs = line.substr(0, arrow);
        std::string rhs = line.substr(arrow + 2);
        lhs.erase(lhs.find_last_not_of(" \t") + 1);
        rhs.erase(0, rhs.find_first_not_of(" \t"));
        const auto from = detail::parse_digits(lhs, n, q);
        const auto to = detail::parse_digits(rhs, n, q);
        require(Configuration(q, from).index() == x, errc::parse_error,
                "table lines must come in increasing index order");
        map[x] = Configuration(q, to).index();
    }
    return Network::table(n, q, std::move(map));
}

// --- code export format ---
//   N=<len> q=<q> |C|=<words> d=<dmin> MDS=<yes|no>
// then one word per line, then an optional "generator" section holding a
// matrix block.

inline std::string format_code(const Code& c, const std::optional<Matrix>& generator = {}) {
    std::ostringstream out;
    out << "N=" << c.length() << " q=" << c.q() << " |C|=" << c.size() << " d=" << c.min_distance()
        << " MDS=" << (c.is_mds() ? "yes" : "no") << '\n';
    for (const auto& w : c.words()) {
        if (c.q() <= 10)
            for (elem d : w) out << char('0' + d);
        else
            for (std::size_t i = 0; i < w.size(); ++i) out << (i ? "," : "") << w[i];
        out << '\n';
    }
    if (generator) {
        out << "generator\n";
        out << format_matrix(*generator);
    }
    return out.str();
}

struct ParsedCode {
    Code code;
    std::optional<Matrix> generator;
};

inline ParsedCode parse_code(std::istream& in) {
    const std::string header = detail::next_content_line(in);
    std::uint32_t length = 0, q = 0;
    std::uint64_t size = 0;
    {
        std::istringstream hs(header);
        std::string tok;
        while (hs >> tok) {
            const auto eq = tok.find('=');
            require(eq != std::string::npos, errc::parse_error, "bad code header token '" + tok + "'");
            const std::string key = tok.substr(0, eq);
            const std::string value = tok.substr(eq + 1);
            if (key == "N") length = std::uint32_t(std::stoul(value));
            else if (key == "q") q = std::uint32_t(std::stoul(value));
            else if (key == "|C|") size = std::stoull(value);
        }
    }
    require(length >= 1 && q >= 2 && size >= 1, errc::parse_error, "bad code header");
    std::vector<std::vector<elem>> words;
    words.reserve(size);
    for (std::uint64_t i = 0; i < size; ++i)
        words.push_back(detail::parse_digits(detail::next_content_line(in), length, q));
    std::optional<Matrix> generator;
    const std::string marker = detail::next_content_line(in);
    if (marker == "generator") generator.emplace(parse_matrix(in));
    return ParsedCode{Code(q, std::move(words)), std::move(generator)};
}

// --- file helpers ---

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), errc::parse_error, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), errc::parse_error, "cannot write '" + path + "'");
    out << content;
}

}  // namespace ean
