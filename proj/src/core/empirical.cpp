#include "mflab/empirical.hpp"

#include "mflab/error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace mflab {

namespace {

// Kahan-Babuska (Neumaier) compensated sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
        else comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double normalizer_value(Normalizer normalizer, std::uint64_t n) {
    if (normalizer == Normalizer::EllN) return harmonic_number(n);
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "log N normalizer needs N >= 2");
    return std::log(static_cast<double>(n));
}

std::uint32_t digit_of(std::int8_t s) { return s == 0 ? 0u : (s > 0 ? 1u : 2u); }

} // namespace

CorrelationSpec::CorrelationSpec(std::vector<std::uint64_t> shifts, std::vector<unsigned> exponents)
    : shifts_(std::move(shifts)), exponents_(std::move(exponents)) {
    if (shifts_.empty()) throw Error(ErrorCode::InvalidArgument, "correlation needs at least one shift");
    if (shifts_.size() != exponents_.size())
        throw Error(ErrorCode::InvalidArgument, "shifts and exponents differ in length");
    if (shifts_.front() != 0) throw Error(ErrorCode::InvalidArgument, "first shift must be 0");
    for (std::size_t i = 1; i < shifts_.size(); ++i)
        if (shifts_[i] <= shifts_[i - 1])
            throw Error(ErrorCode::InvalidArgument, "shifts must be strictly ascending");
    for (auto e : exponents_)
        if (e != 1 && e != 2) throw Error(ErrorCode::InvalidArgument, "exponents must be 1 or 2");
}

bool CorrelationSpec::density_mode() const noexcept {
    return std::all_of(exponents_.begin(), exponents_.end(), [](unsigned e) { return e == 2; });
}

std::string_view to_string(Averaging a) noexcept { return a == Averaging::Cesaro ? "cesaro" : "log"; }
std::string_view to_string(Normalizer n) noexcept { return n == Normalizer::LogN ? "logN" : "ellN"; }

double harmonic_number(std::uint64_t n) {
    CompensatedSum s;
    for (std::uint64_t k = 1; k <= n; ++k) s.add(1.0 / static_cast<double>(k));
    return s.value();
}

CorrelationResult chowla_sum(const ArithTable& table, const CorrelationSpec& spec, std::uint64_t n,
                             AveragingMode mode) {
    if (table.function() == ArithFunction::SquareFree)
        throw Error(ErrorCode::InvalidArgument, "correlations take a Mobius or Liouville table");
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty range");
    if (n + spec.max_shift() > table.max_n())
        throw Error(ErrorCode::Range, "range overflow: N + max shift = " + std::to_string(n + spec.max_shift()) +
                                          " exceeds table size " + std::to_string(table.max_n()));

    const auto values = table.values();
    const auto shifts = spec.shifts();
    const auto exps = spec.exponents();
    auto product = [&](std::uint64_t i) {
        int p = 1;
        for (std::size_t s = 0; s < shifts.size() && p != 0; ++s) {
            const int v = values[i - 1 + shifts[s]];
            p *= exps[s] == 2 ? v * v : v;
        }
        return p;
    };

    CorrelationResult out;
    out.density_mode = spec.density_mode();
    if (mode.averaging == Averaging::Cesaro) {
        std::int64_t total = 0;
        for (std::uint64_t i = 1; i <= n; ++i) total += product(i);
        out.value = static_cast<double>(total) / static_cast<double>(n);
        return out;
    }
    CompensatedSum s;
    for (std::uint64_t i = 1; i <= n; ++i) {
        const int p = product(i);
        if (p != 0) s.add(p / static_cast<double>(i));
    }
    out.value = s.value() / normalizer_value(mode.normalizer, n);
    return out;
}

double log_density(const std::function<bool(std::uint64_t)>& indicator, std::uint64_t n,
                   Normalizer normalizer) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "log density needs N >= 2");
    CompensatedSum s;
    for (std::uint64_t k = 1; k <= n; ++k)
        if (indicator(k)) s.add(1.0 / static_cast<double>(k));
    return s.value() / normalizer_value(normalizer, n);
}

double empirical_measure_cylinder(std::span<const std::int8_t> x, const Block& pattern, std::uint64_t n) {
    const std::uint64_t len = pattern.size();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "need at least one window");
    if (len == 0) return 1.0;
    if (n + len - 1 > x.size())
        throw Error(ErrorCode::Range, "range overflow: windows run past the sequence");
    const auto word = pattern.symbols();
    std::uint64_t hits = 0;
    for (std::uint64_t start = 0; start < n; ++start) {
        bool match = true;
        for (std::uint64_t j = 0; j < len && match; ++j) match = x[start + j] == word[j];
        hits += match;
    }
    return static_cast<double>(hits) / static_cast<double>(n);
}

OrbitCoverage orbit_block_coverage(std::size_t len, std::uint64_t n, const ArithTable& mobius,
                                   std::size_t cap) {
    if (mobius.function() != ArithFunction::Mobius)
        throw Error(ErrorCode::InvalidArgument, "orbit coverage scans the Mobius table");
    if (len == 0 || n == 0) throw Error(ErrorCode::InvalidArgument, "need positive length and range");
    const auto blocks = enumerate_admissible_blocks(len, Alphabet::Signed, cap);
    if (n + len - 1 > mobius.max_n()) throw Error(ErrorCode::Range, "range overflow");

    std::uint64_t modulus = 1;
    for (std::size_t i = 0; i < len; ++i) modulus *= 3;
    const auto values = mobius.values();

    // Rolling base-3 window code, position 1 of the window most significant.
    const bool dense = modulus <= (std::uint64_t{1} << 30);
    std::vector<bool> seen_dense(dense ? modulus : 0, false);
    std::unordered_set<std::uint64_t> seen_sparse;
    std::uint64_t code = 0;
    for (std::uint64_t i = 0; i < n + len - 1; ++i) {
        code = (code * 3 + digit_of(values[i])) % modulus;
        if (i + 1 < len) continue;
        if (dense) seen_dense[code] = true;
        else seen_sparse.insert(code);
    }

    OrbitCoverage out;
    out.admissible_total = blocks.size();
    for (const auto& b : blocks) {
        std::uint64_t c = 0;
        for (auto s : b.symbols()) c = c * 3 + digit_of(s);
        const bool hit = dense ? static_cast<bool>(seen_dense[c]) : seen_sparse.count(c) > 0;
        if (hit) ++out.seen;
        else if (out.missing.size() < kMissingSample) out.missing.push_back(b);
    }
    out.ratio = out.admissible_total ? static_cast<double>(out.seen) / static_cast<double>(out.admissible_total) : 0.0;
    return out;
}

OrbitCoverage orbit_block_coverage(std::size_t len, std::uint64_t n, std::size_t cap) {
    if (len > cap)
        throw Error(ErrorCode::CapExceeded, "enumeration cap: length " + std::to_string(len));
    if (len == 0 || n == 0) throw Error(ErrorCode::InvalidArgument, "need positive length and range");
    return orbit_block_coverage(len, n, sieve(ArithFunction::Mobius, n + len - 1), cap);
}

} // namespace mflab
