#include "mflab/mirsky.hpp"

#include "mflab/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace mflab {

namespace {

constexpr double kLogSwitch = 1e-300;

// Product of factors that switches to log space before underflow.
class ProductAccumulator {
public:
    void mul(double factor) {
        if (zero_) return;
        if (factor <= 0.0) {
            zero_ = true;
            return;
        }
        if (in_log_) {
            log_ += std::log(factor);
            return;
        }
        value_ *= factor;
        if (value_ < kLogSwitch) {
            in_log_ = true;
            log_ = std::log(value_);
        }
    }
    double value() const {
        if (zero_) return 0.0;
        return in_log_ ? std::exp(log_) : value_;
    }

private:
    double value_ = 1.0;
    double log_ = 0.0;
    bool in_log_ = false;
    bool zero_ = false;
};

} // namespace

MirskyMeasure::MirskyMeasure(std::uint64_t cutoff) : cutoff_(cutoff), primes_(primes_up_to(cutoff)) {
    if (cutoff < 2) throw Error(ErrorCode::InvalidArgument, "prime cutoff must be >= 2");
}

TruncatedDensity MirskyMeasure::pattern_density(const SupportSet& a) const {
    if (a.empty()) return {1.0, cutoff_, 0.0};
    const std::uint64_t span = a.max() - a.positions().front() + 1;
    const auto k = static_cast<double>(a.size());

    ProductAccumulator prod;
    for (auto p : primes_) {
        const std::uint64_t sq = p * p;
        // Residues of A are distinct once p^2 >= span.
        const double t = sq >= span ? k : static_cast<double>(residue_count(p, a));
        prod.mul(1.0 - t / static_cast<double>(sq));
    }
    return {prod.value(), cutoff_, k / static_cast<double>(cutoff_)};
}

TruncatedDensity MirskyMeasure::cylinder(const Block& block, std::size_t ie_cap) const {
    if (block.alphabet() != Alphabet::Binary)
        throw Error(ErrorCode::InvalidArgument, "Mirsky cylinders take a binary block");
    if (block.empty()) return {1.0, cutoff_, 0.0};

    const SupportSet ones = block.support();
    if (!is_admissible_support(ones)) return {0.0, cutoff_, 0.0};

    std::vector<std::uint64_t> zeros;
    for (std::size_t i = 1; i <= block.size(); ++i)
        if (block[i] == 0) zeros.push_back(i);
    if (zeros.size() > ie_cap)
        throw Error(ErrorCode::CapExceeded, "IE cap exceeded: " + std::to_string(zeros.size()) +
                                                " zero positions (cap " + std::to_string(ie_cap) + ")");

    TruncatedDensity out{0.0, cutoff_, 0.0};
    const std::uint64_t terms = std::uint64_t{1} << zeros.size();
    for (std::uint64_t mask = 0; mask < terms; ++mask) {
        std::vector<std::uint64_t> pos(ones.positions().begin(), ones.positions().end());
        for (std::size_t j = 0; j < zeros.size(); ++j)
            if (mask >> j & 1) pos.push_back(zeros[j]);
        const auto term = pattern_density(SupportSet(std::move(pos)));
        out.value += (std::popcount(mask) % 2 ? -1.0 : 1.0) * term.value;
        out.error_bound += term.error_bound;
    }
    return out;
}

std::vector<TruncatedDensity> MirskyMeasure::level(std::size_t n) const {
    if (n > kInclusionExclusionCap)
        throw Error(ErrorCode::CapExceeded, "IE cap exceeded: level " + std::to_string(n));
    const std::size_t count = std::size_t{1} << n;

    // Primes with p^2 >= n see distinct residues for every subset of [1, n],
    // so their factor depends only on the subset size.
    std::vector<std::uint64_t> small;
    std::vector<ProductAccumulator> tail(n + 1);
    for (auto p : primes_) {
        const std::uint64_t sq = p * p;
        if (sq < n) {
            small.push_back(p);
            continue;
        }
        for (std::size_t k = 0; k <= n; ++k)
            tail[k].mul(1.0 - static_cast<double>(k) / static_cast<double>(sq));
    }

    std::vector<double> value(count);
    std::vector<double> bound(count);
    std::vector<std::uint32_t> residues;
    for (std::size_t mask = 0; mask < count; ++mask) {
        const int k = std::popcount(mask);
        ProductAccumulator prod;
        for (auto p : small) {
            const std::uint64_t sq = p * p;
            residues.assign(sq, 0);
            std::uint64_t t = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1 && residues[(i + 1) % sq]++ == 0) ++t;
            prod.mul(1.0 - static_cast<double>(t) / static_cast<double>(sq));
        }
        value[mask] = prod.value() * tail[k].value();
        bound[mask] = static_cast<double>(k) / static_cast<double>(cutoff_);
    }

    // Superset inclusion-exclusion turns "ones at least on mask" into
    // "ones exactly on mask".
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t mask = 0; mask < count; ++mask) {
            if (mask & bit) continue;
            value[mask] -= value[mask | bit];
            bound[mask] += bound[mask | bit];
        }
    }

    // Inadmissible patterns are exactly null, whatever the cutoff; this also
    // clears the rounding left by the cancellation above.
    std::vector<TruncatedDensity> out(count);
    std::vector<std::uint64_t> ones;
    for (std::size_t mask = 0; mask < count; ++mask) {
        ones.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) ones.push_back(i + 1);
        if (is_admissible_support(SupportSet(ones))) out[mask] = {value[mask], cutoff_, bound[mask]};
        else out[mask] = {0.0, cutoff_, 0.0};
    }
    return out;
}

TruncatedDensity squarefree_pattern_density(const SupportSet& a, std::uint64_t cutoff) {
    return MirskyMeasure(cutoff).pattern_density(a);
}

TruncatedDensity mirsky_cylinder(const Block& block, std::uint64_t cutoff) {
    return MirskyMeasure(cutoff).cylinder(block);
}

double mirsky_empirical(const Block& block, std::uint64_t n, const ArithTable& squarefree) {
    if (block.alphabet() != Alphabet::Binary)
        throw Error(ErrorCode::InvalidArgument, "Mirsky cylinders take a binary block");
    if (squarefree.function() != ArithFunction::SquareFree)
        throw Error(ErrorCode::InvalidArgument, "mirsky_empirical needs a squarefree table");
    if (n == 0 || n < block.size())
        throw Error(ErrorCode::InvalidArgument, "window count must be >= block length");
    const std::uint64_t len = block.size();
    if (n + len - 1 > squarefree.max_n()) throw Error(ErrorCode::Range, "range overflow");

    const auto values = squarefree.values();
    const auto word = block.symbols();
    std::uint64_t hits = 0;
    for (std::uint64_t start = 0; start < n; ++start) {
        bool match = true;
        for (std::uint64_t j = 0; j < len && match; ++j) match = values[start + j] == word[j];
        hits += match;
    }
    return static_cast<double>(hits) / static_cast<double>(n);
}

double mirsky_empirical(const Block& block, std::uint64_t n) {
    const std::uint64_t len = std::max<std::uint64_t>(block.size(), 1);
    if (n == 0 || n < block.size())
        throw Error(ErrorCode::InvalidArgument, "window count must be >= block length");
    return mirsky_empirical(block, n, sieve(ArithFunction::SquareFree, n + len - 1));
}

} // namespace mflab
