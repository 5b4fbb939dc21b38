#pragma once

#include "mflab/admissible.hpp"
#include "mflab/mirsky.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mflab {

// Level-n cylinder of X_3: a squared pattern plus a sign on each of its
// nonzero positions. Stored as the signed word itself.
class SignedCylinder {
public:
    explicit SignedCylinder(Block word);
    // `signs` lists one '+'/'-' per support position of `base`, in order.
    SignedCylinder(const Block& base, std::string_view signs);

    const Block& word() const noexcept { return word_; }
    Block base() const { return word_.squared(); }
    // Positions carrying -1.
    SupportSet minus_positions() const;
    std::size_t level() const noexcept { return word_.size(); }

private:
    Block word_;
};

// F_{A,B}(x) = prod_{a in A} x_a * prod_{b in B} x_b^2. Positions in both
// sets are dropped from B, since x * x^2 = x on {0,+-1}.
struct FAB {
    FAB() = default;
    FAB(SupportSet odd, SupportSet squared);

    SupportSet odd;
    SupportSet squared;

    std::uint64_t max_position() const noexcept { return std::max(odd.max(), squared.max()); }
};

int eval_fab(const FAB& f, const Block& word);

// nu_M(base) / 2^|supp(base)|, with the error bound scaled the same way.
TruncatedDensity chowla_cylinder(const SignedCylinder& sc, const MirskyMeasure& mirsky);
TruncatedDensity chowla_cylinder(const SignedCylinder& sc, std::uint64_t cutoff);

inline constexpr std::size_t kLevelCap = 16;

// A measure given on the level-n signed cylinders. Words are keyed by their
// base-3 code (0 -> 0, + -> 1, - -> 2, position 1 most significant), so the
// natural order is lexicographic with 0 < + < -.
class AdmissibleMeasureLevel {
public:
    explicit AdmissibleMeasureLevel(std::size_t level);

    // The table of the Chowla measure on every admissible signed word.
    static AdmissibleMeasureLevel chowla(std::size_t level, const MirskyMeasure& mirsky);

    std::size_t level() const noexcept { return level_; }
    std::size_t size() const noexcept { return codes_.size(); }
    Block word(std::size_t i) const;
    double value(std::size_t i) const { return values_.at(i); }
    std::uint32_t code(std::size_t i) const { return codes_.at(i); }

    void set(const Block& word, double value);
    double value_of(const Block& word) const;
    double total_mass() const;

    std::uint32_t encode(const Block& word) const;
    Block decode(std::uint32_t code) const;

private:
    std::size_t level_;
    std::vector<std::uint32_t> codes_;
    std::vector<double> values_;
};

// Exact finite sum of F_{A,B} against the level-n Chowla table.
double integral_fab(const FAB& f, const AdmissibleMeasureLevel& m);
double integral_fab_level(const FAB& f, std::size_t level, std::uint64_t cutoff);

struct SignedValue {
    Block word;
    double value = 0.0;
};

// Solves the sign system over `base` with right-hand side nu * delta_empty
// through the Walsh transform and checks it against nu / 2^|supp| to 1e-12.
// Patterns are ordered by the mask of -1 positions (bit j <-> j-th support
// position).
std::vector<SignedValue> uniqueness_solve(const Block& base, double nu);

struct LevelCheck {
    std::string name;
    bool passed = false;
    double max_deviation = 0.0;
    double threshold = 0.0;
};

struct LevelReport {
    std::size_t level = 0;
    std::uint64_t cutoff = 0;
    double tol = 0.0;
    double total_mass = 0.0;
    std::array<LevelCheck, 3> checks;

    bool passed() const noexcept {
        return checks[0].passed && checks[1].passed && checks[2].passed;
    }
};

inline constexpr double kDefaultLevelTol = 1e-9;

// (a) shift consistency of the two (n-1)-marginals, (b) squared marginal
// against nu_M within tol plus the Euler-product bound, (c) every F_{A,B}
// with A nonempty integrates to 0 within tol.
LevelReport verify_admissible_level(const AdmissibleMeasureLevel& m, const MirskyMeasure& mirsky,
                                    double tol = kDefaultLevelTol);

} // namespace mflab
