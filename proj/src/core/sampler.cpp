#include "mflab/sampler.hpp"

#include "mflab/arith.hpp"
#include "mflab/error.hpp"
#include "mflab/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace mflab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

Block mirsky_window(const GroupPoint& g, std::size_t len) {
    if (g.primes.size() != g.residues.size())
        throw Error(ErrorCode::InvalidArgument, "group point needs one residue per prime");
    std::vector<std::int8_t> x(len, 1);
    for (std::size_t i = 0; i < g.primes.size(); ++i) {
        const std::uint64_t sq = g.primes[i] * g.primes[i];
        if (g.residues[i] >= sq) throw Error(ErrorCode::InvalidArgument, "residue out of range");
        // First n >= 1 with g + n = 0 mod p^2.
        std::uint64_t n = sq - g.residues[i];
        for (; n <= len; n += sq) x[n - 1] = 0;
    }
    return Block(std::move(x), Alphabet::Binary);
}

std::uint64_t default_cutoff(std::uint64_t length) noexcept {
    const std::uint64_t n = std::max<std::uint64_t>(length, 1);
    if (n > std::numeric_limits<std::uint64_t>::max() / 100000) return std::numeric_limits<std::uint64_t>::max();
    return 100000 * n;
}

double truncation_bound(const SampleConfig& cfg) noexcept {
    return static_cast<double>(cfg.length) / static_cast<double>(cfg.cutoff);
}

std::mt19937_64 sample_engine(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(index)));
}

std::string_view sampler_algorithm() noexcept {
    return "mt19937_64/splitmix64(seed^splitmix64(index)); dyadic-bucket geometric thinning";
}

ChowlaSampler::ChowlaSampler(const SampleConfig& cfg) : cfg_(cfg) {
    if (cfg.cutoff < 2) throw Error(ErrorCode::InvalidArgument, "prime cutoff must be >= 2");
    if (cfg.length == 0) throw Error(ErrorCode::InvalidArgument, "sample length must be >= 1");

    for (auto p : primes_up_to(cfg.cutoff)) {
        if (p * p <= cfg.length) small_.push_back(p);
        else large_.push_back(p);
    }
    const double len = static_cast<double>(cfg.length);
    std::size_t i = 0;
    while (i < large_.size()) {
        const std::uint64_t top = std::bit_floor(large_[i]) * 2;
        std::size_t j = i;
        while (j < large_.size() && large_[j] < top) ++j;
        const double p = static_cast<double>(large_[i]);
        buckets_.push_back({i, j, len / (p * p)});
        i = j;
    }
}

std::vector<std::int8_t> ChowlaSampler::zero_pattern(std::mt19937_64& rng) const {
    const std::uint64_t len = cfg_.length;
    std::vector<std::int8_t> x(len, 1);

    for (auto p : small_) {
        const std::uint64_t sq = p * p;
        const std::uint64_t g = std::uniform_int_distribution<std::uint64_t>(0, sq - 1)(rng);
        for (std::uint64_t n = sq - g; n <= len; n += sq) x[n - 1] = 0;
    }

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::uint64_t> position(1, len);
    for (const auto& b : buckets_) {
        std::geometric_distribution<std::uint64_t> skip(b.q_max);
        std::size_t idx = b.begin;
        for (;;) {
            const std::uint64_t s = skip(rng);
            if (s >= b.end - idx) break;
            idx += static_cast<std::size_t>(s);
            const double p = static_cast<double>(large_[idx]);
            const double q = static_cast<double>(len) / (p * p);
            if (unit(rng) * b.q_max < q) x[position(rng) - 1] = 0;
            ++idx;
        }
    }
    return x;
}

Block ChowlaSampler::mirsky_sample(std::uint64_t index) const {
    auto rng = sample_engine(cfg_.seed, index);
    return Block(zero_pattern(rng), Alphabet::Binary);
}

Block ChowlaSampler::chowla_sample(std::uint64_t index) const {
    auto rng = sample_engine(cfg_.seed, index);
    auto x = zero_pattern(rng);
    // Signs only at nonzero positions, in position order.
    for (auto& s : x)
        if (s != 0 && (rng() >> 63)) s = -1;
    return Block(std::move(x), Alphabet::Signed);
}

Block mirsky_sample(const SampleConfig& cfg) { return ChowlaSampler(cfg).mirsky_sample(0); }
Block chowla_sample(const SampleConfig& cfg) { return ChowlaSampler(cfg).chowla_sample(0); }

McEstimate mc_integral_fab(const FAB& f, std::uint64_t samples, const SampleConfig& cfg) {
    if (f.max_position() > cfg.length)
        throw Error(ErrorCode::InvalidArgument, "F_{A,B} reaches beyond the sample length");
    if (samples == 0) throw Error(ErrorCode::InvalidArgument, "need at least one sample");

    const ChowlaSampler sampler(cfg);
    constexpr std::uint64_t kChunk = 4096;
    const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<std::int64_t> sums(chunks, 0);
    std::vector<std::int64_t> squares(chunks, 0);
    parallel_chunks(chunks, [&](std::size_t c) {
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min(samples, lo + kChunk);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const int v = eval_fab(f, sampler.chowla_sample(i));
            sums[c] += v;
            squares[c] += v * v;
        }
    });

    std::int64_t sum = 0;
    std::int64_t sq = 0;
    for (std::uint64_t c = 0; c < chunks; ++c) {
        sum += sums[c];
        sq += squares[c];
    }
    const double m = static_cast<double>(samples);
    McEstimate out;
    out.samples = samples;
    out.mean = static_cast<double>(sum) / m;
    if (samples > 1) {
        const double var = (static_cast<double>(sq) - m * out.mean * out.mean) / (m - 1.0);
        out.standard_error = std::sqrt(std::max(0.0, var) / m);
    }
    return out;
}

} // namespace mflab
