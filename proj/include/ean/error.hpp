#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ean {

enum class errc {
    not_prime_power,
    non_square,
    rank_over_non_field,
    bad_params,
    dimension_mismatch,
    cap_exceeded,
    not_a_field,
    not_expansive,
    not_bijective,
    not_coverable,
    alphabet_too_small,
    no_linear_solution,
    not_cycle_of_cycles,
    bush_bound_violated,
    too_few_words,
    not_super_expansive,
    parse_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::not_prime_power: return "NotPrimePower";
        case errc::non_square: return "NonSquare";
        case errc::rank_over_non_field: return "RankOverNonField";
        case errc::bad_params: return "BadParams";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::cap_exceeded: return "CapExceeded";
        case errc::not_a_field: return "NotAField";
        case errc::not_expansive: return "NotExpansive";
        case errc::not_bijective: return "NotBijective";
        case errc::not_coverable: return "NotCoverable";
        case errc::alphabet_too_small: return "AlphabetTooSmall";
        case errc::no_linear_solution: return "NoLinearSolution";
        case errc::not_cycle_of_cycles: return "NotCycleOfCycles";
        case errc::bush_bound_violated: return "BushBoundViolated";
        case errc::too_few_words: return "TooFewWords";
        case errc::not_super_expansive: return "NotSuperExpansive";
        case errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

// Resource limits for exhaustive scans. Operations that would walk more
// states or column subsets than allowed fail with cap_exceeded instead of
// thrashing.
struct Caps {
    std::uint64_t max_states = std::uint64_t(1) << 20;
    std::uint64_t max_observations = 1'000'000;
};

}  // namespace ean
