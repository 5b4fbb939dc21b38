#include "mflab/report.hpp"

#include "mflab/admissible.hpp"
#include "mflab/arith.hpp"
#include "mflab/chowla.hpp"
#include "mflab/empirical.hpp"
#include "mflab/mirsky.hpp"
#include "mflab/sampler.hpp"
#include "mflab/walsh.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace mflab {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

std::vector<Block> binary_blocks(std::size_t len) {
    std::vector<Block> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << len); ++mask) {
        std::vector<std::int8_t> w(len);
        for (std::size_t i = 0; i < len; ++i) w[i] = static_cast<std::int8_t>(mask >> (len - 1 - i) & 1);
        out.emplace_back(std::move(w), Alphabet::Binary);
    }
    return out;
}

// Window counts of a {0,1} sequence, indexed by the block read as a binary
// number with position 1 most significant.
std::vector<std::uint64_t> window_counts(std::span<const std::int8_t> x, std::size_t len, std::uint64_t starts) {
    std::vector<std::uint64_t> counts(std::size_t{1} << len, 0);
    const std::size_t mask = counts.size() - 1;
    std::size_t code = 0;
    for (std::uint64_t i = 0; i < starts + len - 1; ++i) {
        code = ((code << 1) | static_cast<std::size_t>(x[i] != 0)) & mask;
        if (i + 1 >= len) ++counts[code];
    }
    return counts;
}

CriterionResult sieve_correctness() {
    CriterionResult r{"AC1", "sieve correctness", false, false, 0, 0, ""};
    const auto table = sieve(ArithFunction::Mobius, 100000);
    std::uint64_t mismatches = 0;
    for (std::uint64_t n = 1; n <= table.max_n(); ++n)
        if (table[n] != mobius_direct(n)) ++mismatches;

    std::uint64_t identity_failures = 0;
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        long s = 0;
        for (std::uint64_t d = 1; d <= n; ++d)
            if (n % d == 0) s += table[d];
        if (s != (n == 1 ? 1 : 0)) ++identity_failures;
    }
    r.value = static_cast<double>(mismatches + identity_failures);
    r.passed = mismatches == 0 && identity_failures == 0;
    r.detail = std::to_string(mismatches) + " sieve/oracle mismatches on [1,1e5]; " +
               std::to_string(identity_failures) + " divisor-sum failures on [1,1e4]";
    return r;
}

CriterionResult mirsky_genericity(std::uint64_t n) {
    CriterionResult r{"AC2", "Mirsky genericity", false, false, 0, 0, ""};
    const MirskyMeasure mirsky(100000);
    const auto sf = sieve(ArithFunction::SquareFree, n + 3);
    double worst_excess = -1.0;
    std::uint64_t failures = 0;
    for (std::size_t len = 1; len <= 4; ++len) {
        const auto counts = window_counts(sf.values(), len, n);
        for (const auto& block : binary_blocks(len)) {
            std::size_t code = 0;
            for (auto s : block.symbols()) code = (code << 1) | static_cast<std::size_t>(s);
            const double emp = static_cast<double>(counts[code]) / static_cast<double>(n);
            if (!is_admissible_block(block)) {
                if (counts[code] != 0) ++failures;
                continue;
            }
            const auto d = mirsky.cylinder(block);
            const double excess = std::abs(emp - d.value) - (d.error_bound + 5e-3);
            worst_excess = std::max(worst_excess, excess);
            if (excess > 0) ++failures;
        }
    }
    r.value = worst_excess + 5e-3;
    r.threshold = 5e-3;
    r.passed = failures == 0;
    r.detail = "N=" + std::to_string(n) + ", P=1e5; worst |emp-nu|-bound = " + fmt(worst_excess + 5e-3) +
               "; " + std::to_string(failures) + " failures";
    return r;
}

CriterionResult zeta_anchor() {
    CriterionResult r{"AC3", "zeta(2) anchor", false, false, 0, 2e-6, ""};
    const auto d = squarefree_pattern_density(SupportSet{1}, 1000000);
    r.value = std::abs(d.value - 6.0 / (std::numbers::pi * std::numbers::pi));
    r.passed = r.value <= 2e-6;
    std::ostringstream os;
    os.precision(12);
    os << "d({1}) = " << d.value << ", |d - 6/pi^2| = " << r.value;
    r.detail = os.str();
    return r;
}

CriterionResult walsh_system() {
    CriterionResult r{"AC4", "Walsh determinant and uniform system", false, false, 0, 1e-12, ""};
    bool ok = true;
    std::string why;
    try {
        for (unsigned n = 1; n <= 4; ++n) {
            const auto d = walsh_det_log2(n);
            if (d.log2_abs != (static_cast<std::uint64_t>(n) << (n - 1))) ok = false;
            if (n == 1 && d.sign != -1) ok = false;
        }
    } catch (const std::exception& e) {
        ok = false;
        why = e.what();
    }
    double worst = 0.0;
    for (unsigned n = 1; n <= 10; ++n) {
        for (double a : {1.0, 0.6079271, 8.0}) {
            const auto nu = solve_uniform_system(n, a);
            worst = std::max(worst, uniform_system_residual(nu, a));
            for (double v : nu) worst = std::max(worst, std::abs(v - a / std::ldexp(1.0, static_cast<int>(n))));
        }
    }
    r.value = worst;
    r.passed = ok && worst <= 1e-12;
    r.detail = why.empty() ? "det(n=1) = -2; |det| = 2^(n 2^(n-1)) exact for n<=4; max residual " + fmt(worst)
                           : why;
    return r;
}

CriterionResult chowla_identities() {
    CriterionResult r{"AC5", "Chowla-measure identities", false, false, 0, 1e-12, ""};
    const MirskyMeasure mirsky(100000);
    double sum_dev = 0.0;
    for (std::size_t len = 1; len <= 4; ++len) {
        for (const auto& base : binary_blocks(len)) {
            const auto nu = mirsky.cylinder(base);
            double s = 0.0;
            for (const auto& sv : uniqueness_solve(base, 1.0))
                s += chowla_cylinder(SignedCylinder(sv.word), mirsky).value;
            sum_dev = std::max(sum_dev, std::abs(s - nu.value));
        }
    }
    bool levels_ok = true;
    for (std::size_t n = 1; n <= 4; ++n)
        levels_ok = levels_ok && verify_admissible_level(AdmissibleMeasureLevel::chowla(n, mirsky), mirsky).passed();

    const auto level4 = AdmissibleMeasureLevel::chowla(4, mirsky);
    double fab_dev = 0.0;
    for (std::size_t a = 1; a < 16; ++a) {
        for (std::size_t b = 0; b < 16; ++b) {
            if (a & b) continue;
            std::vector<std::uint64_t> av, bv;
            for (std::size_t i = 0; i < 4; ++i) {
                if (a >> i & 1) av.push_back(i + 1);
                if (b >> i & 1) bv.push_back(i + 1);
            }
            fab_dev = std::max(fab_dev, std::abs(integral_fab(FAB(SupportSet(av), SupportSet(bv)), level4)));
        }
    }
    r.value = std::max(sum_dev, fab_dev);
    r.passed = sum_dev <= 1e-12 && fab_dev <= 1e-12 && levels_ok;
    r.detail = "sign-sum dev " + fmt(sum_dev) + "; F_{A,B} dev " + fmt(fab_dev) +
               "; levels 1-4 " + (levels_ok ? "pass" : "FAIL");
    return r;
}

CriterionResult sampler_consistency(std::uint64_t samples, std::uint64_t seed) {
    CriterionResult r{"AC6", "sampler consistency", false, false, 0, 0, ""};
    const SampleConfig cfg{1000000, 32, seed};
    const ChowlaSampler sampler(cfg);
    const MirskyMeasure mirsky(cfg.cutoff);

    std::vector<std::uint64_t> counts(8, 0);
    for (std::uint64_t i = 0; i < samples; ++i) {
        const auto x = sampler.chowla_sample(i);
        std::size_t code = 0;
        for (std::size_t j = 1; j <= 3; ++j) code = (code << 1) | static_cast<std::size_t>(x[j] != 0);
        ++counts[code];
    }
    const double m = static_cast<double>(samples);
    double worst = -1.0;
    for (const auto& block : binary_blocks(3)) {
        std::size_t code = 0;
        for (auto s : block.symbols()) code = (code << 1) | static_cast<std::size_t>(s);
        const double v = mirsky.cylinder(block).value;
        const double allowed = 4.0 * std::sqrt(v * (1 - v) / m) + truncation_bound(cfg);
        worst = std::max(worst, std::abs(static_cast<double>(counts[code]) / m - v) - allowed);
    }
    const auto f1 = mc_integral_fab(FAB(SupportSet{1}, {}), samples, cfg);
    const auto f12 = mc_integral_fab(FAB(SupportSet{1, 2}, {}), samples, cfg);
    const bool fab_ok = std::abs(f1.mean) <= 3 * f1.standard_error && std::abs(f12.mean) <= 3 * f12.standard_error;
    r.value = worst;
    r.passed = worst <= 0.0 && fab_ok;
    std::ostringstream os;
    os.precision(6);
    os << "M=" << samples << ", worst excess over 4sigma+N/P " << worst << "; F_{1} " << f1.mean << " +- "
       << f1.standard_error << "; F_{1,2} " << f12.mean << " +- " << f12.standard_error;
    r.detail = os.str();
    return r;
}

CriterionResult barker_lengths() {
    CriterionResult r{"AC7", "Barker search", false, false, 0, 0, ""};
    const auto found = barker_search(16);
    std::set<std::size_t> lengths;
    for (const auto& [len, seqs] : found)
        if (!seqs.empty()) lengths.insert(len);
    const std::set<std::size_t> expected{1, 2, 3, 4, 5, 7, 11, 13};
    r.passed = lengths == expected;
    r.value = static_cast<double>(lengths.size());
    r.detail = "lengths:";
    for (auto l : lengths) r.detail += " " + std::to_string(l);
    return r;
}

std::vector<CriterionResult> diagnostics(std::uint64_t n) {
    const auto mu = sieve(ArithFunction::Mobius, n + 1);
    const auto lambda = sieve(ArithFunction::Liouville, n + 1);
    CriterionResult mertens{"AC8a", "Cesaro mean of mu (diagnostic)", false, true, 0, 0.01, ""};
    mertens.value = std::abs(chowla_sum(mu, CorrelationSpec({0}, {1}), n, {Averaging::Cesaro, Normalizer::LogN}).value);
    mertens.passed = mertens.value < 0.01;
    mertens.detail = "N=" + std::to_string(n);

    CriterionResult two_point{"AC8b", "log two-point Liouville correlation (diagnostic)", false, true, 0, 0.02, ""};
    two_point.value =
        std::abs(chowla_sum(lambda, CorrelationSpec({0, 1}, {1, 1}), n, {Averaging::Logarithmic, Normalizer::LogN}).value);
    two_point.passed = two_point.value < 0.02;
    two_point.detail = "N=" + std::to_string(n) + ", shifts (0,1), log N normalizer";
    return {mertens, two_point};
}

CriterionResult determinism(std::uint64_t seed) {
    CriterionResult r{"AC9", "determinism", false, false, 0, 0, ""};
    const SampleConfig cfg{1000000, 32, seed};
    auto run = [&] {
        const ChowlaSampler sampler(cfg);
        std::string out;
        for (std::uint64_t i = 0; i < 2000; ++i) out += sampler.chowla_sample(i).str() + "\n";
        const auto est = mc_integral_fab(FAB(SupportSet{1}, SupportSet{2}), 20000, cfg);
        std::ostringstream os;
        os.precision(17);
        os << est.mean << ' ' << est.standard_error;
        return out + os.str();
    };
    const auto first = run();
    const auto second = run();
    r.passed = first == second;
    r.value = r.passed ? 0.0 : 1.0;
    r.detail = "2000 samples + one MC estimate, repeated with seed " + std::to_string(seed);
    return r;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const ReportOptions& opts) {
    const std::uint64_t big_n = opts.quick ? 1000000 : 10000000;
    const std::uint64_t samples = opts.quick ? 20000 : 100000;

    std::vector<CriterionResult> out;
    out.push_back(sieve_correctness());
    out.push_back(mirsky_genericity(big_n));
    out.push_back(zeta_anchor());
    out.push_back(walsh_system());
    out.push_back(chowla_identities());
    out.push_back(sampler_consistency(samples, opts.seed));
    out.push_back(barker_lengths());
    for (auto& d : diagnostics(big_n)) out.push_back(std::move(d));
    out.push_back(determinism(opts.seed));
    return out;
}

bool all_passed(const std::vector<CriterionResult>& results) noexcept {
    for (const auto& r : results)
        if (!r.diagnostic && !r.passed) return false;
    return true;
}

} // namespace mflab
