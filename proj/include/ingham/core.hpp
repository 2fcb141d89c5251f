#ifndef INGHAM_CORE_HPP
#define INGHAM_CORE_HPP

// Shared plumbing for the toolkit: the error taxonomy (mapped to CLI exit
// codes), row-major multi-index arithmetic, and a deterministic RNG wrapper.
// Everything downstream is a pure function of its inputs; nothing here owns
// global state.

#include <cstdint>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ingham {

// ── Error taxonomy ──────────────────────────────────────────────────────────
//
// Three coarse kinds drive process exit codes; the concrete classes keep the
// finer diagnosis in the type. "input" covers malformed or out-of-contract
// arguments and resource refusals, "contract" covers mathematically valid
// inputs that violate an operation's documented precondition, "numeric"
// covers failures of the floating-point computation itself.

enum class error_kind { input, contract, numeric };

class toolkit_error : public std::runtime_error {
public:
    toolkit_error(error_kind kind, std::string what)
        : std::runtime_error(std::move(what)), kind_(kind) {}
    error_kind kind() const noexcept { return kind_; }

private:
    error_kind kind_;
};

struct input_error : toolkit_error {
    explicit input_error(const std::string& w) : toolkit_error(error_kind::input, w) {}
};
/// Algebra/file contents fail structural validation (named identity in `what`).
struct validation_error : input_error {
    using input_error::input_error;
};
/// Grid too coarse for the requested operation.
struct resolution_error : input_error {
    using input_error::input_error;
};
/// Requested sizes exceed the configured memory/sample budget.
struct capacity_error : input_error {
    using input_error::input_error;
};
/// Operation outside the implemented range (e.g. nilpotency step too high).
struct unsupported_error : input_error {
    using input_error::input_error;
};

struct contract_error : toolkit_error {
    explicit contract_error(const std::string& w) : toolkit_error(error_kind::contract, w) {}
};

struct numeric_error : toolkit_error {
    explicit numeric_error(const std::string& w) : toolkit_error(error_kind::numeric, w) {}
};
/// Evaluation at a point where the object degenerates (e.g. non-generic
/// functional handed to the Pfaffian).
struct domain_error : numeric_error {
    using numeric_error::numeric_error;
};

// ── Budgets and global thresholds ──────────────────────────────────────────

/// Hard cap on samples a single gridded object may hold (2^24 complex values
/// ≈ 256 MiB); exceeding it raises capacity_error rather than thrashing.
inline constexpr std::size_t max_grid_samples = std::size_t{1} << 24;

/// Relative singular-value cutoff for every rank decision in the toolkit.
inline constexpr double rank_rel_threshold = 1e-10;

/// Relative magnitude below which a sample counts as "zero support".
inline constexpr double support_rel_threshold = 1e-12;

/// Default seed for genericity sampling and test generators.
inline constexpr std::uint64_t default_seed = 0xDECA1;

// ── Multi-index helpers (row-major, last axis contiguous) ──────────────────

inline std::size_t element_count(const std::vector<std::size_t>& extent) {
    std::size_t n = 1;
    for (std::size_t e : extent) {
        if (e == 0) throw input_error("grid extent contains a zero axis");
        if (n > max_grid_samples / e) throw capacity_error("grid extent overflows the sample budget");
        n *= e;
    }
    return n;
}

/// Stride of `axis` in a row-major layout.
inline std::size_t axis_stride(const std::vector<std::size_t>& extent, std::size_t axis) {
    std::size_t s = 1;
    for (std::size_t a = extent.size(); a-- > axis + 1;) s *= extent[a];
    return s;
}

inline std::size_t flatten(const std::vector<std::size_t>& idx, const std::vector<std::size_t>& extent) {
    std::size_t lin = 0;
    for (std::size_t a = 0; a < extent.size(); ++a) lin = lin * extent[a] + idx[a];
    return lin;
}

/// Advances `idx` odometer-style; returns false after the last index.
inline bool next_index(std::vector<std::size_t>& idx, const std::vector<std::size_t>& extent) {
    for (std::size_t a = extent.size(); a-- > 0;) {
        if (++idx[a] < extent[a]) return true;
        idx[a] = 0;
    }
    return false;
}

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// ── Deterministic RNG ───────────────────────────────────────────────────────
//
// std::uniform_real_distribution is implementation-defined; reports must be
// byte-identical across runs, so uniforms are derived from raw engine bits.

class rng {
public:
    explicit rng(std::uint64_t seed = default_seed) : eng_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t bits() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

} // namespace ingham

#endif // INGHAM_CORE_HPP
