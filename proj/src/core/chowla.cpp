#include "mflab/chowla.hpp"

#include "mflab/error.hpp"
#include "mflab/walsh.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace mflab {

namespace {

std::uint32_t pow3(std::size_t k) {
    std::uint32_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r *= 3;
    return r;
}

std::uint32_t digit_of(std::int8_t s) { return s == 0 ? 0u : (s > 0 ? 1u : 2u); }

void check_level(std::size_t level) {
    if (level == 0) throw Error(ErrorCode::InvalidArgument, "level must be >= 1");
    if (level > kLevelCap)
        throw Error(ErrorCode::CapExceeded, "cap exceeded: level " + std::to_string(level) +
                                                " above " + std::to_string(kLevelCap));
}

} // namespace

SignedCylinder::SignedCylinder(Block word) : word_(std::move(word)) {
    if (word_.alphabet() != Alphabet::Signed) word_ = Block({word_.symbols().begin(), word_.symbols().end()}, Alphabet::Signed);
}

SignedCylinder::SignedCylinder(const Block& base, std::string_view signs) {
    if (base.alphabet() != Alphabet::Binary)
        throw Error(ErrorCode::InvalidArgument, "signed cylinder base must be a binary block");
    std::vector<std::int8_t> word(base.symbols().begin(), base.symbols().end());
    std::size_t next = 0;
    for (auto& s : word) {
        if (s == 0) continue;
        while (next < signs.size() && (signs[next] == ' ' || signs[next] == ',')) ++next;
        if (next == signs.size())
            throw Error(ErrorCode::InvalidArgument, "fewer signs than support positions");
        const char c = signs[next++];
        if (c == '-') s = -1;
        else if (c != '+') throw Error(ErrorCode::InvalidArgument, std::string("bad sign '") + c + "'");
    }
    while (next < signs.size() && (signs[next] == ' ' || signs[next] == ',')) ++next;
    if (next != signs.size()) throw Error(ErrorCode::InvalidArgument, "more signs than support positions");
    word_ = Block(std::move(word), Alphabet::Signed);
}

SupportSet SignedCylinder::minus_positions() const {
    std::vector<std::uint64_t> pos;
    for (std::size_t i = 1; i <= word_.size(); ++i)
        if (word_[i] < 0) pos.push_back(i);
    return SupportSet(std::move(pos));
}

FAB::FAB(SupportSet odd_, SupportSet squared_)
    : odd(std::move(odd_)), squared(squared_.minus(odd)) {}

int eval_fab(const FAB& f, const Block& word) {
    if (f.max_position() > word.size())
        throw Error(ErrorCode::Range, "F_{A,B} position " + std::to_string(f.max_position()) +
                                          " beyond block length " + std::to_string(word.size()));
    int value = 1;
    for (auto a : f.odd.positions()) value *= word[a];
    for (auto b : f.squared.positions()) value *= word[b] * word[b];
    return value;
}

TruncatedDensity chowla_cylinder(const SignedCylinder& sc, const MirskyMeasure& mirsky) {
    auto d = mirsky.cylinder(sc.base());
    const int k = static_cast<int>(sc.word().support().size());
    d.value = std::ldexp(d.value, -k);
    d.error_bound = std::ldexp(d.error_bound, -k);
    return d;
}

TruncatedDensity chowla_cylinder(const SignedCylinder& sc, std::uint64_t cutoff) {
    return chowla_cylinder(sc, MirskyMeasure(cutoff));
}

AdmissibleMeasureLevel::AdmissibleMeasureLevel(std::size_t level) : level_(level) { check_level(level); }

AdmissibleMeasureLevel AdmissibleMeasureLevel::chowla(std::size_t level, const MirskyMeasure& mirsky) {
    AdmissibleMeasureLevel out(level);
    const auto nu = mirsky.level(level);
    const std::size_t masks = std::size_t{1} << level;

    std::vector<std::pair<std::uint32_t, double>> entries;
    for (std::size_t mask = 0; mask < masks; ++mask) {
        std::vector<std::uint64_t> ones;
        for (std::size_t i = 0; i < level; ++i)
            if (mask >> i & 1) ones.push_back(i + 1);
        if (!is_admissible_support(SupportSet(ones))) continue;

        const int k = static_cast<int>(ones.size());
        const double v = std::ldexp(nu[mask].value, -k);
        for (std::uint64_t minus = 0; minus < (std::uint64_t{1} << k); ++minus) {
            std::uint32_t code = 0;
            for (int j = 0; j < k; ++j)
                code += ((minus >> j & 1) ? 2u : 1u) * pow3(level - ones[static_cast<std::size_t>(j)]);
            entries.emplace_back(code, v);
        }
    }
    std::sort(entries.begin(), entries.end());
    out.codes_.reserve(entries.size());
    out.values_.reserve(entries.size());
    for (auto& [c, v] : entries) {
        out.codes_.push_back(c);
        out.values_.push_back(v);
    }
    return out;
}

std::uint32_t AdmissibleMeasureLevel::encode(const Block& word) const {
    if (word.size() != level_) throw Error(ErrorCode::InvalidArgument, "word length does not match level");
    std::uint32_t code = 0;
    for (auto s : word.symbols()) code = code * 3 + digit_of(s);
    return code;
}

Block AdmissibleMeasureLevel::decode(std::uint32_t code) const {
    std::vector<std::int8_t> word(level_);
    for (std::size_t i = level_; i-- > 0;) {
        const auto d = code % 3;
        word[i] = d == 0 ? 0 : (d == 1 ? 1 : -1);
        code /= 3;
    }
    return Block(std::move(word), Alphabet::Signed);
}

Block AdmissibleMeasureLevel::word(std::size_t i) const { return decode(codes_.at(i)); }

void AdmissibleMeasureLevel::set(const Block& word, double value) {
    const auto code = encode(word);
    auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    const auto idx = static_cast<std::size_t>(it - codes_.begin());
    if (it != codes_.end() && *it == code) {
        values_[idx] = value;
        return;
    }
    codes_.insert(it, code);
    values_.insert(values_.begin() + static_cast<std::ptrdiff_t>(idx), value);
}

double AdmissibleMeasureLevel::value_of(const Block& word) const {
    const auto code = encode(word);
    auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    if (it == codes_.end() || *it != code) return 0.0;
    return values_[static_cast<std::size_t>(it - codes_.begin())];
}

double AdmissibleMeasureLevel::total_mass() const {
    double s = 0.0;
    for (auto v : values_) s += v;
    return s;
}

double integral_fab(const FAB& f, const AdmissibleMeasureLevel& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const int e = eval_fab(f, m.word(i));
        if (e != 0) s += e * m.value(i);
    }
    return s;
}

double integral_fab_level(const FAB& f, std::size_t level, std::uint64_t cutoff) {
    if (f.max_position() > level)
        throw Error(ErrorCode::InvalidArgument, "F_{A,B} reaches beyond the level");
    return integral_fab(f, AdmissibleMeasureLevel::chowla(level, MirskyMeasure(cutoff)));
}

std::vector<SignedValue> uniqueness_solve(const Block& base, double nu) {
    if (base.alphabet() != Alphabet::Binary)
        throw Error(ErrorCode::InvalidArgument, "base must be a binary block");
    if (nu < 0.0) throw Error(ErrorCode::InvalidArgument, "nu must be nonnegative");
    const SupportSet supp = base.support();
    const auto k = static_cast<unsigned>(supp.size());

    const auto solved = solve_uniform_system(k, nu);
    const double closed_form = std::ldexp(nu, -static_cast<int>(k));
    for (double v : solved)
        if (std::abs(v - closed_form) > 1e-12 * std::max(1.0, nu))
            throw std::logic_error("Walsh solve disagrees with nu / 2^|supp|");

    std::vector<SignedValue> out;
    out.reserve(solved.size());
    for (std::uint64_t minus = 0; minus < solved.size(); ++minus) {
        std::vector<std::int8_t> word(base.symbols().begin(), base.symbols().end());
        for (unsigned j = 0; j < k; ++j)
            if (minus >> j & 1) word[supp.positions()[j] - 1] = -1;
        out.push_back({Block(std::move(word), Alphabet::Signed), solved[minus]});
    }
    return out;
}

LevelReport verify_admissible_level(const AdmissibleMeasureLevel& m, const MirskyMeasure& mirsky, double tol) {
    const std::size_t n = m.level();
    const std::uint32_t full = pow3(n);
    const std::uint32_t lower = pow3(n - 1);

    LevelReport report;
    report.level = n;
    report.cutoff = mirsky.cutoff();
    report.tol = tol;
    report.total_mass = m.total_mass();

    // Dense view: code -> value.
    std::vector<double> dense(full, 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) dense[m.code(i)] += m.value(i);

    // (a) marginal of coordinates 1..n-1 versus 2..n.
    {
        std::vector<double> left(lower, 0.0);
        std::vector<double> right(lower, 0.0);
        for (std::uint32_t c = 0; c < full; ++c) {
            if (dense[c] == 0.0) continue;
            left[c / 3] += dense[c];
            right[c % lower] += dense[c];
        }
        double dev = 0.0;
        for (std::uint32_t c = 0; c < lower; ++c) dev = std::max(dev, std::abs(left[c] - right[c]));
        report.checks[0] = {"shift_consistency", dev <= tol, dev, tol};
    }

    // (b) pushforward under squaring equals nu_M.
    {
        const std::size_t masks = std::size_t{1} << n;
        std::vector<double> pushed(masks, 0.0);
        for (std::uint32_t c = 0; c < full; ++c) {
            if (dense[c] == 0.0) continue;
            std::size_t mask = 0;
            std::uint32_t rest = c;
            for (std::size_t i = n; i-- > 0;) {
                if (rest % 3 != 0) mask |= std::size_t{1} << i;
                rest /= 3;
            }
            pushed[mask] += dense[c];
        }
        const auto nu = mirsky.level(n);
        double dev = 0.0;
        double worst_excess = -1.0;
        double threshold = tol;
        for (std::size_t mask = 0; mask < masks; ++mask) {
            const double d = std::abs(pushed[mask] - nu[mask].value);
            const double allowed = tol + nu[mask].error_bound;
            if (d - allowed > worst_excess) {
                worst_excess = d - allowed;
                threshold = allowed;
            }
            dev = std::max(dev, d);
        }
        report.checks[1] = {"squared_marginal", worst_excess <= 0.0, dev, threshold};
    }

    // (c) F_{A,B} integrals for A nonempty. Group words by support T; the
    // Walsh transform over the sign patterns of T gives
    // h(A,T) = sum_{z: supp z = T} (-1)^{|A & neg z|} m(z) for all A within T,
    // stored at the ternary code with digit 2 on A and 1 on T \ A. Then
    // integral F_{A,B} = sum over T containing A and B of h(A,T).
    {
        std::vector<double> h(full, 0.0);
        const std::size_t masks = std::size_t{1} << n;
        std::vector<std::uint32_t> weight(n);
        for (std::size_t i = 0; i < n; ++i) weight[i] = pow3(n - 1 - i);

        for (std::size_t t = 0; t < masks; ++t) {
            std::vector<std::size_t> bits;
            for (std::size_t i = 0; i < n; ++i)
                if (t >> i & 1) bits.push_back(i);
            const std::size_t k = bits.size();
            std::vector<double> signs(std::size_t{1} << k);
            std::vector<std::uint32_t> codes(signs.size());
            for (std::size_t u = 0; u < signs.size(); ++u) {
                std::uint32_t code = 0;
                for (std::size_t j = 0; j < k; ++j) code += ((u >> j & 1) ? 2u : 1u) * weight[bits[j]];
                codes[u] = code;
                signs[u] = dense[code];
            }
            fwht_inplace(signs);
            for (std::size_t u = 0; u < signs.size(); ++u) h[codes[u]] = signs[u];
        }

        double dev = 0.0;
        for (std::size_t a = 1; a < masks; ++a) {
            std::vector<std::size_t> free;
            std::uint32_t a_code = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (a >> i & 1) a_code += 2 * weight[i];
                else free.push_back(i);
            }
            const std::size_t f = free.size();
            std::vector<double> acc(std::size_t{1} << f);
            for (std::size_t u = 0; u < acc.size(); ++u) {
                std::uint32_t code = a_code;
                for (std::size_t j = 0; j < f; ++j)
                    if (u >> j & 1) code += weight[free[j]];
                acc[u] = h[code];
            }
            // Superset sums over the positions outside A.
            for (std::size_t j = 0; j < f; ++j)
                for (std::size_t u = 0; u < acc.size(); ++u)
                    if (!(u >> j & 1)) acc[u] += acc[u | (std::size_t{1} << j)];
            for (double v : acc) dev = std::max(dev, std::abs(v));
        }
        report.checks[2] = {"vanishing_integrals", dev <= tol, dev, tol};
    }
    return report;
}

} // namespace mflab
