#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ean/digraph.hpp"
#include "ean/error.hpp"
#include "ean/matrix.hpp"
#include "ean/ring.hpp"

namespace ean {

// q^n, failing loudly instead of wrapping.
inline std::uint64_t checked_power(std::uint64_t base, std::uint32_t exp) {
    std::uint64_t out = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        require(out <= (std::uint64_t(1) << 62) / base, errc::cap_exceeded,
                "state space does not fit in 64 bits");
        out *= base;
    }
    return out;
}

// A point of (q)^n. Vertex 1 owns the leftmost digit in every
// serialization; the index is the base-q value of the digit string read left
// to right (vertex 1 most significant).
class Configuration {
public:
    Configuration(std::uint32_t q, std::vector<elem> digits) : q_(q), digits_(std::move(digits)) {
        require(q >= 2, errc::bad_params, "alphabet size must be at least 2");
        require(!digits_.empty(), errc::bad_params, "empty configuration");
        for (elem d : digits_) require(d < q, errc::bad_params, "digit out of alphabet");
    }

    static Configuration from_index(std::uint64_t index, std::uint32_t n, std::uint32_t q) {
        require(index < checked_power(q, n), errc::bad_params, "configuration index out of range");
        std::vector<elem> digits(n);
        for (std::uint32_t i = n; i-- > 0;) {
            digits[i] = elem(index % q);
            index /= q;
        }
        return Configuration(q, std::move(digits));
    }

    std::uint32_t n() const { return std::uint32_t(digits_.size()); }
    std::uint32_t q() const { return q_; }

    std::uint64_t index() const {
        std::uint64_t out = 0;
        for (elem d : digits_) out = out * q_ + d;
        return out;
    }

    elem at(std::uint32_t v) const {
        require(v >= 1 && v <= digits_.size(), errc::bad_params, "vertex out of range");
        return digits_[v - 1];
    }

    const std::vector<elem>& digits() const { return digits_; }

    // Compact digit string for q <= 10, comma-separated otherwise.
    std::string str() const {
        std::string out;
        if (q_ <= 10) {
            for (elem d : digits_) out.push_back(char('0' + d));
        } else {
            for (std::size_t i = 0; i < digits_.size(); ++i) {
                if (i) out.push_back(',');
                out += std::to_string(digits_[i]);
            }
        }
        return out;
    }

    friend bool operator==(const Configuration& a, const Configuration& b) = default;

private:
    std::uint32_t q_;
    std::vector<elem> digits_;
};

// A selection of n cells (vertex, time) from the n x n time-vertex matrix of
// a trajectory; pairs are distinct so the induced map can be injective.
struct Observation {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cells;  // (v, t), both 1-based

    void validate(std::uint32_t n) const {
        require(cells.size() == n, errc::dimension_mismatch, "observation needs exactly n cells");
        for (auto [v, t] : cells) {
            require(v >= 1 && v <= n, errc::bad_params, "observed vertex out of range");
            require(t >= 1 && t <= n, errc::bad_params, "observed time out of range");
        }
        auto sorted = cells;
        std::sort(sorted.begin(), sorted.end());
        require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), errc::bad_params,
                "observation cells must be distinct");
    }
};

struct TraceView {
    std::uint32_t vertex = 0;
    std::vector<elem> values;  // values[t-1] = state of vertex at time t; starts at t = 1
};

struct OrbitInfo {
    std::uint64_t tail = 0;    // steps before entering the cycle
    std::uint64_t period = 0;  // cycle length l_x
};

// A synchronous map f : (q)^n -> (q)^n, stored either as an explicit lookup
// table on configuration indices or as a matrix acting by x -> xM.
class Network {
public:
    static Network table(std::uint32_t n, std::uint32_t q, std::vector<std::uint64_t> map) {
        Network f(n, q);
        const std::uint64_t states = f.state_count();
        require(map.size() == states, errc::dimension_mismatch, "table size must be q^n");
        for (std::uint64_t y : map) require(y < states, errc::bad_params, "table entry out of range");
        f.table_ = std::move(map);
        return f;
    }

    static Network linear(Matrix m) {
        require(m.is_square(), errc::non_square, "linear network needs a square matrix");
        Network f(m.rows(), m.ring().q());
        f.matrix_.emplace(std::move(m));
        return f;
    }

    std::uint32_t n() const { return n_; }
    std::uint32_t q() const { return q_; }
    std::uint64_t state_count() const { return states_; }

    bool is_linear() const { return matrix_.has_value(); }
    bool is_table() const { return !matrix_.has_value(); }

    const Matrix& matrix() const {
        require(is_linear(), errc::bad_params, "not a linear network");
        return *matrix_;
    }

    const std::vector<std::uint64_t>& table() const {
        require(is_table(), errc::bad_params, "not a table network");
        return table_;
    }

    elem digit_of(std::uint64_t index, std::uint32_t v) const { return elem(index / place_[v - 1] % q_); }

    std::uint64_t apply_index(std::uint64_t x) const {
        require(x < states_, errc::dimension_mismatch, "configuration index out of range");
        if (is_table()) return table_[x];
        const Matrix& m = *matrix_;
        const Ring& ring = m.ring();
        std::uint64_t out = 0;
        for (std::uint32_t j = 0; j < n_; ++j) {
            elem acc = 0;
            for (std::uint32_t i = 0; i < n_; ++i) {
                const elem xi = elem(x / place_[i] % q_);
                if (xi) acc = ring.add(acc, ring.mul(xi, m(i, j)));
            }
            out += std::uint64_t(acc) * place_[j];
        }
        return out;
    }

    Configuration apply(const Configuration& x) const {
        check_config(x);
        return Configuration::from_index(apply_index(x.index()), n_, q_);
    }

    std::uint64_t iterate_index(std::uint64_t x, std::uint64_t t) const {
        for (std::uint64_t i = 0; i < t; ++i) x = apply_index(x);
        return x;
    }

    Configuration iterate(const Configuration& x, std::uint64_t t) const {
        check_config(x);
        return Configuration::from_index(iterate_index(x.index(), t), n_, q_);
    }

    // Brent cycle detection; bijective maps always report tail = 0.
    OrbitInfo orbit(std::uint64_t x) const {
        std::uint64_t power = 1, period = 1;
        std::uint64_t tortoise = x, hare = apply_index(x);
        while (tortoise != hare) {
            if (power == period) {
                tortoise = hare;
                power *= 2;
                period = 0;
            }
            hare = apply_index(hare);
            ++period;
        }
        std::uint64_t tail = 0;
        tortoise = x;
        hare = iterate_index(x, period);
        while (tortoise != hare) {
            tortoise = apply_index(tortoise);
            hare = apply_index(hare);
            ++tail;
        }
        return {tail, period};
    }

    OrbitInfo orbit(const Configuration& x) const {
        check_config(x);
        return orbit(x.index());
    }

    TraceView trace(std::uint64_t x, std::uint32_t v, std::uint64_t horizon) const {
        require(v >= 1 && v <= n_, errc::bad_params, "trace vertex out of range");
        require(horizon >= 1, errc::bad_params, "trace horizon must be at least 1");
        TraceView out;
        out.vertex = v;
        out.values.reserve(horizon);
        std::uint64_t cur = x;
        for (std::uint64_t t = 0; t < horizon; ++t) {
            cur = apply_index(cur);
            out.values.push_back(digit_of(cur, v));
        }
        return out;
    }

    TraceView trace(const Configuration& x, std::uint32_t v, std::uint64_t horizon) const {
        check_config(x);
        return trace(x.index(), v, horizon);
    }

    std::vector<elem> observe(std::uint64_t x, const Observation& omega) const {
        omega.validate(n_);
        std::uint32_t max_t = 0;
        for (auto [v, t] : omega.cells) max_t = std::max(max_t, t);
        std::vector<std::uint64_t> at_time(max_t + 1);
        at_time[0] = x;
        for (std::uint32_t t = 1; t <= max_t; ++t) at_time[t] = apply_index(at_time[t - 1]);
        std::vector<elem> out;
        out.reserve(omega.cells.size());
        for (auto [v, t] : omega.cells) out.push_back(digit_of(at_time[t], v));
        return out;
    }

    std::vector<elem> observe(const Configuration& x, const Observation& omega) const {
        check_config(x);
        return observe(x.index(), omega);
    }

    Network to_table(const Caps& caps = {}) const {
        if (is_table()) return *this;
        require(states_ <= caps.max_states, errc::cap_exceeded, "table would exceed the state cap");
        std::vector<std::uint64_t> map(states_);
        for (std::uint64_t x = 0; x < states_; ++x) map[x] = apply_index(x);
        return table(n_, q_, std::move(map));
    }

    // Arc u -> v iff f_v depends essentially on coordinate u. Linear bodies
    // read it off the matrix support; table bodies test exhaustively.
    Digraph interaction_graph(const Caps& caps = {}) const {
        Digraph d(n_);
        if (is_linear()) {
            const Matrix& m = *matrix_;
            for (std::uint32_t u = 1; u <= n_; ++u)
                for (std::uint32_t v = 1; v <= n_; ++v)
                    if (m(u - 1, v - 1) != 0) d.add_arc(u, v);
            return d;
        }
        require(states_ <= caps.max_states, errc::cap_exceeded,
                "interaction graph scan exceeds the state cap");
        for (std::uint32_t u = 1; u <= n_; ++u) {
            const std::uint64_t place = place_[u - 1];
            std::vector<bool> arc(n_ + 1, false);
            for (std::uint64_t x = 0; x < states_; ++x) {
                if (digit_of(x, u) != 0) continue;
                const std::uint64_t base = table_[x];
                for (elem c = 1; c < q_; ++c) {
                    const std::uint64_t other = table_[x + place * c];
                    if (other == base) continue;
                    for (std::uint32_t v = 1; v <= n_; ++v)
                        if (!arc[v] && digit_of(other, v) != digit_of(base, v)) arc[v] = true;
                }
            }
            for (std::uint32_t v = 1; v <= n_; ++v)
                if (arc[v]) d.add_arc(u, v);
        }
        return d;
    }

private:
    Network(std::uint32_t n, std::uint32_t q) : n_(n), q_(q) {
        require(n >= 1, errc::bad_params, "network needs at least one vertex");
        require(q >= 2, errc::bad_params, "alphabet size must be at least 2");
        states_ = checked_power(q, n);
        place_.resize(n);
        std::uint64_t p = 1;
        for (std::uint32_t i = n; i-- > 0;) {
            place_[i] = p;
            p *= q;
        }
    }

    void check_config(const Configuration& x) const {
        require(x.n() == n_ && x.q() == q_, errc::dimension_mismatch,
                "configuration does not match the network's (n, q)");
    }

    std::uint32_t n_;
    std::uint32_t q_;
    std::uint64_t states_;
    std::vector<std::uint64_t> place_;  // place_[i] = q^(n-1-i), vertex i+1
    std::optional<Matrix> matrix_;
    std::vector<std::uint64_t> table_;
};

// h(x1, x2) = (f(x1), g(x2)) on the paired alphabet a = a1 * r + a2. The
// result is materialized as a table, so the combined state space must fit
// the cap.
inline Network cartesian_product(const Network& f, const Network& g, const Caps& caps = {}) {
    require(f.n() == g.n(), errc::dimension_mismatch, "cartesian product needs equal n");
    const std::uint32_t n = f.n();
    const std::uint64_t q = f.q(), r = g.q();
    require(q * r <= 0xffffffffULL, errc::cap_exceeded, "product alphabet too large");
    const std::uint64_t states = checked_power(q * r, n);
    require(states <= caps.max_states, errc::cap_exceeded, "product state space exceeds the cap");

    std::vector<std::uint64_t> map(states);
    std::vector<elem> a(n), b(n);
    for (std::uint64_t x = 0; x < states; ++x) {
        std::uint64_t rest = x;
        for (std::uint32_t i = n; i-- > 0;) {
            const elem digit = elem(rest % (q * r));
            rest /= q * r;
            a[i] = digit / elem(r);
            b[i] = digit % elem(r);
        }
        const std::uint64_t fa = f.apply(Configuration(std::uint32_t(q), a)).index();
        const std::uint64_t gb = g.apply(Configuration(std::uint32_t(r), b)).index();
        const auto da = Configuration::from_index(fa, n, std::uint32_t(q));
        const auto db = Configuration::from_index(gb, n, std::uint32_t(r));
        std::uint64_t y = 0;
        for (std::uint32_t i = 0; i < n; ++i)
            y = y * (q * r) + (std::uint64_t(da.digits()[i]) * r + db.digits()[i]);
        map[x] = y;
    }
    return Network::table(n, std::uint32_t(q * r), std::move(map));
}

// Restriction of a radius-r cellular automaton to configurations of period
// n: cell z updates from the cyclic window x_{z-r} .. x_{z+r}.
inline Network network_from_ca_rule(std::uint32_t q, std::uint32_t radius, std::uint32_t period,
                                    const std::function<elem(const std::vector<elem>&)>& rule,
                                    const Caps& caps = {}) {
    require(period >= 1, errc::bad_params, "period must be positive");
    const std::uint64_t states = checked_power(q, period);
    require(states <= caps.max_states, errc::cap_exceeded, "CA restriction exceeds the state cap");

    const std::uint32_t width = 2 * radius + 1;
    std::vector<std::uint64_t> map(states);
    std::vector<elem> window(width);
    for (std::uint64_t x = 0; x < states; ++x) {
        const auto digits = Configuration::from_index(x, period, q).digits();
        std::uint64_t y = 0;
        for (std::uint32_t z = 0; z < period; ++z) {
            for (std::uint32_t j = 0; j < width; ++j) {
                const std::int64_t pos = std::int64_t(z) - radius + j;
                window[j] = digits[std::size_t(((pos % period) + period) % period)];
            }
            const elem out = rule(window);
            require(out < q, errc::bad_params, "rule output outside the alphabet");
            y = y * q + out;
        }
        map[x] = y;
    }
    return Network::table(period, q, std::move(map));
}

}  // namespace ean
