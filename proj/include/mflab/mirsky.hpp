#pragma once

#include "mflab/admissible.hpp"
#include "mflab/arith.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mflab {

// A density truncated to primes <= cutoff, with a certified bound on the
// distance to the untruncated value.
struct TruncatedDensity {
    double value = 0.0;
    std::uint64_t cutoff = 0;
    double error_bound = 0.0;
};

inline constexpr std::size_t kInclusionExclusionCap = 20;

// Euler-product evaluator for the Mirsky measure with a fixed prime cutoff.
//
// d_P(A) = prod_{p <= P} (1 - t(p,A)/p^2) is the probability, under the Haar
// measure of prod_{p <= P} Z/p^2Z, that every position of A is squarefree
// with respect to the primes up to P. The tail sum_{p > P} p^-2 < 1/P gives
// |d(A) - d_P(A)| <= |A|/P.
class MirskyMeasure {
public:
    explicit MirskyMeasure(std::uint64_t cutoff);

    std::uint64_t cutoff() const noexcept { return cutoff_; }
    std::span<const std::uint64_t> primes() const noexcept { return primes_; }

    TruncatedDensity pattern_density(const SupportSet& a) const;

    // nu_M of the cylinder fixed by a Binary block, by inclusion-exclusion over
    // the zero positions. Inadmissible blocks give exactly 0.
    TruncatedDensity cylinder(const Block& block, std::size_t ie_cap = kInclusionExclusionCap) const;

    // All 2^n level-n cylinders at once. Index bit i set <=> position i+1 is 1.
    std::vector<TruncatedDensity> level(std::size_t n) const;

private:
    std::uint64_t cutoff_;
    std::vector<std::uint64_t> primes_;
};

TruncatedDensity squarefree_pattern_density(const SupportSet& a, std::uint64_t cutoff);
TruncatedDensity mirsky_cylinder(const Block& block, std::uint64_t cutoff);

// Frequency of `block` among the windows of mu^2 starting at 1..n.
double mirsky_empirical(const Block& block, std::uint64_t n);
double mirsky_empirical(const Block& block, std::uint64_t n, const ArithTable& squarefree);

} // namespace mflab
