#pragma once

#include "mflab/admissible.hpp"
#include "mflab/arith.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mflab {

// Product mu^{i_0}(n + a_0) ... mu^{i_r}(n + a_r) with a_0 = 0 < a_1 < ... and
// exponents in {1, 2}. All-2 exponents describe a density, not a Chowla
// correlation; they are accepted and flagged.
class CorrelationSpec {
public:
    CorrelationSpec(std::vector<std::uint64_t> shifts, std::vector<unsigned> exponents);

    std::span<const std::uint64_t> shifts() const noexcept { return shifts_; }
    std::span<const unsigned> exponents() const noexcept { return exponents_; }
    std::uint64_t max_shift() const noexcept { return shifts_.back(); }
    bool density_mode() const noexcept;

private:
    std::vector<std::uint64_t> shifts_;
    std::vector<unsigned> exponents_;
};

enum class Averaging : std::uint8_t { Cesaro, Logarithmic };
// LogN divides by log N; EllN by the harmonic number l_N = sum_{n<=N} 1/n.
enum class Normalizer : std::uint8_t { LogN, EllN };

struct AveragingMode {
    Averaging averaging = Averaging::Cesaro;
    Normalizer normalizer = Normalizer::LogN;
};

std::string_view to_string(Averaging a) noexcept;
std::string_view to_string(Normalizer n) noexcept;

struct CorrelationResult {
    double value = 0.0;
    bool density_mode = false;
};

// Cesaro: (1/N) sum_{n=1}^N prod; logarithmic: (1/norm) sum prod / n.
// Sums run in ascending n with compensated accumulation.
CorrelationResult chowla_sum(const ArithTable& table, const CorrelationSpec& spec, std::uint64_t n,
                             AveragingMode mode);

double harmonic_number(std::uint64_t n);

double log_density(const std::function<bool(std::uint64_t)>& indicator, std::uint64_t n,
                   Normalizer normalizer);

// Fraction of starts 1..n whose window of `x` equals `pattern`. x[0] is the
// sequence value at position 1.
double empirical_measure_cylinder(std::span<const std::int8_t> x, const Block& pattern, std::uint64_t n);

struct OrbitCoverage {
    std::uint64_t seen = 0;
    std::uint64_t admissible_total = 0;
    double ratio = 0.0;
    std::vector<Block> missing; // at most kMissingSample, lexicographic
};

inline constexpr std::size_t kMissingSample = 20;

// Admissible signed blocks of length `len` that occur among the windows of
// mu starting at 1..n.
OrbitCoverage orbit_block_coverage(std::size_t len, std::uint64_t n,
                                   std::size_t cap = kDefaultEnumerationCap);
OrbitCoverage orbit_block_coverage(std::size_t len, std::uint64_t n, const ArithTable& mobius,
                                   std::size_t cap = kDefaultEnumerationCap);

} // namespace mflab
