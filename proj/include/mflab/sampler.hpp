#pragma once

#include "mflab/admissible.hpp"
#include "mflab/chowla.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace mflab {

// A point of the truncated group prod_{p <= P} Z/p^2 Z.
struct GroupPoint {
    std::vector<std::uint64_t> primes;
    std::vector<std::uint64_t> residues; // residues[i] in [0, primes[i]^2)
};

// phi(g) restricted to positions 1..len: x_n = 0 iff g_p + n = 0 mod p^2 for
// some tracked prime p.
Block mirsky_window(const GroupPoint& g, std::size_t len);

struct SampleConfig {
    std::uint64_t cutoff = 0; // primes <= cutoff
    std::uint64_t length = 0; // output window length N
    std::uint64_t seed = 0;
};

// Heuristic default cutoff: 10^5 * N.
std::uint64_t default_cutoff(std::uint64_t length) noexcept;

// Total-variation distance to the untruncated measure on the window, < N/P.
double truncation_bound(const SampleConfig& cfg) noexcept;

// Engine for sample `index` under `seed`: mt19937_64 seeded with
// splitmix64(seed ^ splitmix64(index)).
std::mt19937_64 sample_engine(std::uint64_t seed, std::uint64_t index);

std::string_view sampler_algorithm() noexcept;

// Draws from Pi(nu_M^P x Bernoulli(1/2)) where nu_M^P is the image of Haar
// measure on the truncated group.
//
// Residues of primes with p^2 <= N are drawn explicitly. For larger primes
// only whether g_p lands in the N residues that hit the window matters; that
// happens with probability N/p^2, at a uniform position, independently per
// prime. Those events are drawn by geometric skipping over primes grouped in
// dyadic ranges plus thinning, which is exact and costs O(sum N/p^2) per
// sample instead of O(pi(P)).
class ChowlaSampler {
public:
    explicit ChowlaSampler(const SampleConfig& cfg);

    const SampleConfig& config() const noexcept { return cfg_; }

    Block mirsky_sample(std::uint64_t index) const;
    Block chowla_sample(std::uint64_t index) const;

private:
    struct Bucket {
        std::size_t begin;
        std::size_t end;
        double q_max;
    };

    std::vector<std::int8_t> zero_pattern(std::mt19937_64& rng) const;

    SampleConfig cfg_;
    std::vector<std::uint64_t> small_;
    std::vector<std::uint64_t> large_;
    std::vector<Bucket> buckets_;
};

Block mirsky_sample(const SampleConfig& cfg);
Block chowla_sample(const SampleConfig& cfg);

struct McEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    std::uint64_t samples = 0;
};

// Mean and standard error of F_{A,B} over independent Chowla samples with
// indices 0..samples-1.
McEstimate mc_integral_fab(const FAB& f, std::uint64_t samples, const SampleConfig& cfg);

} // namespace mflab
