#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ean/error.hpp"
#include "ean/expansivity.hpp"
#include "ean/matrix.hpp"
#include "ean/network.hpp"

namespace ean {

// The q^n x n^2 array of length-n^2 orbit words: row x holds
// (f(x)_1 .. f(x)_n, f^2(x)_1 .. f^2(x)_n, ..., f^n(x)_1 .. f^n(x)_n),
// in configuration-index order. Cell (v, t) sits at column (t-1)n + (v-1).
struct OrthogonalArray {
    std::uint32_t q = 0;
    std::uint32_t n = 0;
    std::vector<std::vector<elem>> rows;

    std::uint32_t word_length() const { return n * n; }
};

inline OrthogonalArray orbit_array(const Network& f, const Caps& caps = {}) {
    require(f.state_count() <= caps.max_states, errc::cap_exceeded,
            "orbit array exceeds the state cap");
    OrthogonalArray a;
    a.q = f.q();
    a.n = f.n();
    a.rows.reserve(f.state_count());
    for (std::uint64_t x = 0; x < f.state_count(); ++x) {
        std::vector<elem> row(a.word_length());
        std::uint64_t cur = x;
        for (std::uint32_t t = 0; t < a.n; ++t) {
            cur = f.apply_index(cur);
            for (std::uint32_t v = 0; v < a.n; ++v) row[t * a.n + v] = f.digit_of(cur, v + 1);
        }
        a.rows.push_back(std::move(row));
    }
    return a;
}

// Strength s at index 1: every s-column projection is injective on the rows.
inline bool check_oa(const OrthogonalArray& a, std::uint32_t s, const Caps& caps = {}) {
    require(s >= 1 && s <= a.word_length(), errc::bad_params,
            "strength must lie between 1 and the word length");
    std::uint64_t key_space = 1;
    for (std::uint32_t i = 0; i < s; ++i) {
        require(key_space <= (std::uint64_t(1) << 62) / a.q, errc::cap_exceeded,
                "projection key space too large");
        key_space *= a.q;
    }
    std::uint64_t combos = 1;
    for (std::uint32_t i = 0; i < s; ++i) {
        combos = combos * (a.word_length() - i) / (i + 1);
        require(combos <= caps.max_observations, errc::cap_exceeded,
                "column subset count exceeds the cap");
    }

    std::vector<std::uint32_t> pick(s);
    for (std::uint32_t i = 0; i < s; ++i) pick[i] = i;
    std::vector<std::uint64_t> keys;
    keys.reserve(a.rows.size());
    while (true) {
        keys.clear();
        for (const auto& row : a.rows) {
            std::uint64_t key = 0;
            for (std::uint32_t c : pick) key = key * a.q + row[c];
            keys.push_back(key);
        }
        std::sort(keys.begin(), keys.end());
        if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) return false;
        std::uint32_t i = s;
        while (i-- > 0) {
            if (pick[i] != a.word_length() - s + i) {
                ++pick[i];
                for (std::uint32_t j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
                break;
            }
            if (i == 0) return true;
        }
    }
}

// A set of equal-length words over (q); minimum distance computed exactly by
// an all-pairs scan with early exit.
class Code {
public:
    Code(std::uint32_t q, std::vector<std::vector<elem>> words) : q_(q), words_(std::move(words)) {
        require(!words_.empty(), errc::bad_params, "empty code");
        length_ = std::uint32_t(words_[0].size());
        for (const auto& w : words_) {
            require(w.size() == length_, errc::bad_params, "code words must share one length");
            for (elem d : w) require(d < q_, errc::bad_params, "code symbol out of alphabet");
        }
        std::sort(words_.begin(), words_.end());
        words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
    }

    std::uint32_t q() const { return q_; }
    std::uint32_t length() const { return length_; }
    std::uint64_t size() const { return words_.size(); }
    const std::vector<std::vector<elem>>& words() const { return words_; }

    std::uint32_t min_distance() const {
        require(words_.size() >= 2, errc::too_few_words,
                "minimum distance needs at least two words");
        std::uint32_t best = length_;
        for (std::size_t i = 0; i < words_.size() && best > 1; ++i)
            for (std::size_t j = i + 1; j < words_.size() && best > 1; ++j) {
                std::uint32_t d = 0;
                for (std::uint32_t c = 0; c < length_ && d < best; ++c)
                    if (words_[i][c] != words_[j][c]) ++d;
                best = std::min(best, d);
            }
        return best;
    }

    // Singleton equality |C| = q^(N - d + 1).
    bool is_mds() const {
        const std::uint32_t d = min_distance();
        unsigned __int128 bound = 1;
        for (std::uint32_t i = 0; i < length_ - d + 1; ++i) {
            bound *= q_;
            if (bound > words_.size()) return false;
        }
        return bound == words_.size();
    }

private:
    std::uint32_t q_;
    std::uint32_t length_;
    std::vector<std::vector<elem>> words_;
};

inline Code code_from_array(const OrthogonalArray& a) { return Code(a.q, a.rows); }

// Generator of the orbit code of a super-expansive linear network: the block
// row (M | M^2 | ... | M^n), so that x G = L_x for every configuration x.
inline Matrix generator_matrix(const Matrix& m, const Caps& caps = {}) {
    require(check_super_expansive_linear(m, caps).holds, errc::not_super_expansive,
            "generator matrix is defined for super-expansive linear networks");
    const std::uint32_t n = m.rows();
    Matrix g(n, n * n, m.ring());
    Matrix power = Matrix::identity(n, m.ring());
    for (std::uint32_t t = 0; t < n; ++t) {
        power = power * m;
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t v = 0; v < n; ++v) g(i, t * n + v) = power(i, v);
    }
    return g;
}

// All words x G for x over GF(q)^n, in configuration-index order.
inline std::vector<std::vector<elem>> row_space(const Matrix& g, const Caps& caps = {}) {
    const Ring& ring = g.ring();
    const std::uint64_t states = checked_power(ring.q(), g.rows());
    require(states <= caps.max_states, errc::cap_exceeded, "row space exceeds the state cap");
    std::vector<std::vector<elem>> out;
    out.reserve(states);
    for (std::uint64_t x = 0; x < states; ++x) {
        const auto digits = Configuration::from_index(x, g.rows(), ring.q()).digits();
        std::vector<elem> word(g.cols(), 0);
        for (std::uint32_t i = 0; i < g.rows(); ++i) {
            if (!digits[i]) continue;
            for (std::uint32_t j = 0; j < g.cols(); ++j)
                word[j] = ring.add(word[j], ring.mul(digits[i], g(i, j)));
        }
        out.push_back(std::move(word));
    }
    return out;
}

}  // namespace ean
