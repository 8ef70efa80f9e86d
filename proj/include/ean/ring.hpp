#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ean/error.hpp"

namespace ean {

// Canonical element encoding: an integer in [0, q). For extension fields
// GF(p^k) the base-p digits of the integer are the coefficient vector of the
// element in the polynomial basis, low degree first. All serialization and
// all "least element" choices use this encoding.
using elem = std::uint32_t;

inline bool is_prime(std::uint64_t m) {
    if (m < 2) return false;
    for (std::uint64_t d = 2; d * d <= m; ++d)
        if (m % d == 0) return false;
    return true;
}

struct PrimePower {
    std::uint64_t p;
    std::uint32_t k;
};

inline std::optional<PrimePower> prime_power_decompose(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    std::uint64_t p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    std::uint32_t k = 0;
    std::uint64_t m = q;
    while (m % p == 0) {
        m /= p;
        ++k;
    }
    if (m != 1) return std::nullopt;
    return PrimePower{p, k};
}

inline bool is_prime_power(std::uint64_t q) { return prime_power_decompose(q).has_value(); }

enum class RingKind { modular, field };

// Arithmetic context for Z_q or GF(q). Immutable after construction; all
// operations are pure.
class Ring {
public:
    static Ring modular(std::uint32_t q) {
        require(q >= 2, errc::bad_params, "alphabet size must be at least 2");
        Ring r;
        r.q_ = q;
        r.kind_ = RingKind::modular;
        r.p_ = q;
        r.k_ = 1;
        return r;
    }

    // GF(q) with the least monic irreducible modulus (by the canonical
    // polynomial encoding) when q is a proper prime power.
    static Ring field(std::uint32_t q);

    static Ring field_with_modulus(std::uint32_t p, std::vector<elem> modulus);

    std::uint32_t q() const { return q_; }
    RingKind kind() const { return kind_; }
    std::uint32_t characteristic() const { return p_; }
    std::uint32_t extension_degree() const { return k_; }
    const std::vector<elem>& modulus() const { return modulus_; }

    // Z_p is a field whatever the declared kind; Lemma-style criteria accept
    // either representation.
    bool is_math_field() const { return kind_ == RingKind::field || is_prime(q_); }

    friend bool operator==(const Ring& a, const Ring& b) = default;

    elem zero() const { return 0; }
    elem one() const { return 1; }

    elem add(elem a, elem b) const {
        if (k_ == 1) {
            std::uint64_t s = std::uint64_t(a) + b;
            return elem(s >= q_ ? s - q_ : s);
        }
        elem out = 0;
        std::uint32_t mult = 1;
        while (a || b) {
            std::uint32_t d = (a % p_ + b % p_) % p_;
            out += d * mult;
            a /= p_;
            b /= p_;
            mult *= p_;
        }
        return out;
    }

    elem neg(elem a) const {
        if (k_ == 1) return a == 0 ? 0 : q_ - a;
        elem out = 0;
        std::uint32_t mult = 1;
        while (a) {
            std::uint32_t d = a % p_;
            out += (d == 0 ? 0 : p_ - d) * mult;
            a /= p_;
            mult *= p_;
        }
        return out;
    }

    elem sub(elem a, elem b) const { return add(a, neg(b)); }

    elem mul(elem a, elem b) const {
        if (k_ == 1) return elem((std::uint64_t(a) * b) % q_);
        std::array<std::uint32_t, kMaxDeg> da{}, db{};
        std::array<std::uint64_t, 2 * kMaxDeg> prod{};
        decode_into(a, da);
        decode_into(b, db);
        for (std::uint32_t i = 0; i < k_; ++i) {
            if (!da[i]) continue;
            for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] += std::uint64_t(da[i]) * db[j];
        }
        // reduce modulo the monic modulus
        for (std::uint32_t i = 2 * k_ - 2; i >= k_; --i) {
            std::uint64_t c = prod[i] % p_;
            if (c) {
                for (std::uint32_t j = 0; j < k_; ++j) {
                    std::uint64_t s = std::uint64_t(modulus_[j]) * c % p_;
                    prod[i - k_ + j] += std::uint64_t(p_) - s;
                }
            }
            prod[i] = 0;
            if (i == k_) break;
        }
        elem out = 0;
        std::uint32_t mult = 1;
        for (std::uint32_t i = 0; i < k_; ++i) {
            out += elem(prod[i] % p_) * mult;
            mult *= p_;
        }
        return out;
    }

    elem pow(elem a, std::uint64_t e) const {
        elem acc = 1;
        elem base = a;
        while (e) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    bool is_unit(elem a) const {
        if (a == 0) return false;
        if (k_ > 1) return true;
        return std::gcd(std::uint64_t(a), std::uint64_t(q_)) == 1;
    }

    elem inv(elem a) const {
        require(is_unit(a), errc::bad_params, "element " + std::to_string(a) + " is not invertible");
        if (k_ > 1) return pow(a, q_ - 2);
        // extended Euclid on integer lifts
        std::int64_t t = 0, new_t = 1, r = q_, new_r = a;
        while (new_r != 0) {
            std::int64_t quot = r / new_r;
            std::int64_t tmp = t - quot * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - quot * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (t < 0) t += q_;
        return elem(t);
    }

    std::uint64_t mult_order(elem a) const {
        require(is_unit(a), errc::bad_params, "multiplicative order of a non-unit");
        elem acc = a;
        std::uint64_t ord = 1;
        while (acc != 1) {
            acc = mul(acc, a);
            ++ord;
            require(ord <= q_, errc::bad_params, "order computation exceeded group size");
        }
        return ord;
    }

    // Reduce a (possibly negative) integer into the ring; for extension
    // fields the result lies in the prime subfield.
    elem from_int(std::int64_t v) const {
        std::int64_t m = (k_ == 1) ? q_ : p_;
        std::int64_t r = v % m;
        if (r < 0) r += m;
        return elem(r);
    }

    std::vector<elem> decode(elem a) const {
        std::vector<elem> digits(k_);
        for (std::uint32_t i = 0; i < k_; ++i) {
            digits[i] = a % p_;
            a /= p_;
        }
        return digits;
    }

    elem encode(const std::vector<elem>& digits) const {
        elem out = 0;
        std::uint32_t mult = 1;
        for (std::uint32_t i = 0; i < k_ && i < digits.size(); ++i) {
            out += digits[i] % p_ * mult;
            mult *= p_;
        }
        return out;
    }

    std::string describe() const {
        if (kind_ == RingKind::modular) return "Z_" + std::to_string(q_);
        return "GF(" + std::to_string(q_) + ")";
    }

private:
    static constexpr std::uint32_t kMaxDeg = 32;

    Ring() = default;

    void decode_into(elem a, std::array<std::uint32_t, kMaxDeg>& out) const {
        for (std::uint32_t i = 0; i < k_; ++i) {
            out[i] = a % p_;
            a /= p_;
        }
    }

    std::uint32_t q_ = 2;
    RingKind kind_ = RingKind::modular;
    std::uint32_t p_ = 2;
    std::uint32_t k_ = 1;
    std::vector<elem> modulus_;  // length k+1, monic, low degree first; empty when k == 1
};

// --- polynomials over a field ring, coefficients low degree first ---

using Poly = std::vector<elem>;

inline Poly poly_trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

inline Poly poly_mul(const Ring& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    }
    return out;
}

// Remainder of a modulo monic m.
inline Poly poly_mod(const Ring& F, Poly a, const Poly& m) {
    const std::size_t dm = m.size() - 1;
    a = poly_trim(std::move(a));
    while (a.size() > dm) {
        const elem c = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        if (c != 0)
            for (std::size_t j = 0; j < m.size(); ++j)
                a[shift + j] = F.sub(a[shift + j], F.mul(c, m[j]));
        a.pop_back();
        a = poly_trim(std::move(a));
    }
    return a;
}

inline Poly poly_mulmod(const Ring& F, const Poly& a, const Poly& b, const Poly& m) {
    return poly_mod(F, poly_mul(F, a, b), m);
}

inline Poly poly_powmod(const Ring& F, Poly base, std::uint64_t e, const Poly& m) {
    Poly acc{1};
    base = poly_mod(F, std::move(base), m);
    while (e) {
        if (e & 1) acc = poly_mulmod(F, acc, base, m);
        base = poly_mulmod(F, base, base, m);
        e >>= 1;
    }
    return acc;
}

// Decode index c into the monic degree-n polynomial whose lower coefficients
// are the base-q digits of c. Candidate order for every "least polynomial"
// search.
inline Poly poly_from_index(std::uint64_t c, std::uint32_t n, std::uint32_t q) {
    Poly f(n + 1, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        f[i] = elem(c % q);
        c /= q;
    }
    f[n] = 1;
    return f;
}

inline bool poly_is_irreducible(const Ring& F, const Poly& f) {
    require(!f.empty() && f.back() == 1, errc::bad_params, "irreducibility test needs a monic polynomial");
    const std::uint32_t n = std::uint32_t(f.size() - 1);
    if (n == 0) return false;
    if (n == 1) return true;
    const std::uint32_t q = F.q();
    // exhaustive trial division by monic polynomials of degree <= n/2
    for (std::uint32_t d = 1; 2 * d <= n; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) count *= q;
        for (std::uint64_t c = 0; c < count; ++c) {
            Poly g = poly_from_index(c, d, q);
            if (poly_mod(F, f, g).empty()) return false;
        }
    }
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            out.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

// f is primitive iff it is irreducible and x generates the multiplicative
// group of F[x]/(f), i.e. x has order q^n - 1.
inline bool poly_is_primitive(const Ring& F, const Poly& f) {
    if (!poly_is_irreducible(F, f)) return false;
    const std::uint32_t n = std::uint32_t(f.size() - 1);
    std::uint64_t group = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        require(group <= (std::uint64_t(1) << 62) / F.q(), errc::cap_exceeded, "field order too large");
        group *= F.q();
    }
    group -= 1;
    const Poly x{0, 1};
    if (poly_powmod(F, x, group, f) != Poly{1}) return false;
    for (std::uint64_t d : prime_factors(group))
        if (poly_powmod(F, x, group / d, f) == Poly{1}) return false;
    return true;
}

inline Poly least_irreducible_poly(const Ring& F, std::uint32_t n) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        require(count < (std::uint64_t(1) << 40), errc::cap_exceeded, "polynomial search space too large");
        count *= F.q();
    }
    for (std::uint64_t c = 0; c < count; ++c) {
        Poly f = poly_from_index(c, n, F.q());
        if (poly_is_irreducible(F, f)) return f;
    }
    fail(errc::bad_params, "no irreducible polynomial found");
}

inline Poly least_primitive_poly(const Ring& F, std::uint32_t n) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        require(count < (std::uint64_t(1) << 40), errc::cap_exceeded, "polynomial search space too large");
        count *= F.q();
    }
    for (std::uint64_t c = 0; c < count; ++c) {
        Poly f = poly_from_index(c, n, F.q());
        if (poly_is_primitive(F, f)) return f;
    }
    fail(errc::bad_params, "no primitive polynomial found");
}

inline Ring Ring::field(std::uint32_t q) {
    auto pp = prime_power_decompose(q);
    require(pp.has_value(), errc::not_prime_power,
            std::to_string(q) + " is not a prime power, GF(" + std::to_string(q) + ") does not exist");
    if (pp->k == 1) {
        Ring r;
        r.q_ = q;
        r.kind_ = RingKind::field;
        r.p_ = q;
        r.k_ = 1;
        return r;
    }
    Ring prime_field = Ring::field(std::uint32_t(pp->p));
    std::vector<elem> modulus = least_irreducible_poly(prime_field, pp->k);
    return field_with_modulus(std::uint32_t(pp->p), std::move(modulus));
}

inline Ring Ring::field_with_modulus(std::uint32_t p, std::vector<elem> modulus) {
    require(is_prime(p), errc::not_prime_power, "characteristic must be prime");
    require(modulus.size() >= 3 && modulus.back() == 1, errc::bad_params,
            "modulus must be monic of degree >= 2");
    const std::uint32_t k = std::uint32_t(modulus.size() - 1);
    require(k < kMaxDeg, errc::bad_params, "extension degree too large");
    for (elem c : modulus) require(c < p, errc::bad_params, "modulus coefficients must be reduced mod p");
    require(poly_is_irreducible(Ring::field(p), modulus), errc::bad_params,
            "modulus polynomial is reducible");
    Ring r;
    r.kind_ = RingKind::field;
    r.p_ = p;
    r.k_ = k;
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) q *= p;
    require(q <= 0xffffffffULL, errc::bad_params, "field too large for the element encoding");
    r.q_ = std::uint32_t(q);
    r.modulus_ = std::move(modulus);
    return r;
}

// Factory matching the two alphabet structures used throughout: plain
// modular arithmetic, or a finite field when q is a prime power.
inline Ring make_ring(std::uint32_t q, RingKind kind) {
    return kind == RingKind::field ? Ring::field(q) : Ring::modular(q);
}

// Least monic primitive polynomial of degree k over GF(p).
inline Poly primitive_polynomial(std::uint32_t p, std::uint32_t k) {
    require(is_prime(p), errc::bad_params, "characteristic must be prime");
    require(k >= 1, errc::bad_params, "degree must be positive");
    return least_primitive_poly(Ring::field(p), k);
}

// Least field element of multiplicative order q - 1.
inline elem primitive_element(const Ring& F) {
    require(F.is_math_field(), errc::not_a_field, "primitive elements live in fields");
    for (elem a = 1; a < F.q(); ++a)
        if (F.mult_order(a) == std::uint64_t(F.q()) - 1) return a;
    fail(errc::bad_params, "no primitive element found");
}

}  // namespace ean
