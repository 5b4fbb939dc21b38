#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mflab {

// Subsets of {1..n} are n-bit masks with bit i <-> element i+1; the Walsh
// matrix is indexed by masks in ascending order, C(A,B) = (-1)^|A & B|.
inline int walsh_entry(std::uint64_t a, std::uint64_t b) noexcept {
    return (std::popcount(a & b) & 1) ? -1 : 1;
}

Eigen::MatrixXi walsh_matrix(unsigned n);

struct DetLog2 {
    int sign = 1;
    std::uint64_t log2_abs = 0;
};

// det C = sign * 2^log2_abs. For n <= 4 the closed form is cross-checked
// against an exact integer determinant of the materialized matrix.
DetLog2 walsh_det_log2(unsigned n);

// Fraction-free (Bareiss) determinant in arbitrary precision.
boost::multiprecision::cpp_int exact_determinant(const Eigen::MatrixXi& m);

// In-place C*v, O(n 2^n). Length must be a power of two.
void fwht_inplace(std::span<double> v);
std::vector<double> fwht(std::vector<double> v);

// Unique nu with C*nu = a*delta_empty, via nu = C(a*delta)/2^n.
std::vector<double> solve_uniform_system(unsigned n, double a);

// sup-norm of C*nu - a*delta_empty.
double uniform_system_residual(std::span<const double> nu, double a);

// Throws on entries other than +-1.
bool is_hadamard(const Eigen::MatrixXi& m);

struct DetBoundCheck {
    double det_abs = 0.0;
    double bound = 0.0;
    bool tight = false;
};

// |det M| against n^(n/2) for entries in [-1,1]; tight means equality within
// 1e-9 relative, which only Hadamard matrices reach.
DetBoundCheck hadamard_det_bound_check(const Eigen::MatrixXd& m);

using SignSequence = std::vector<std::int8_t>;

// "+-+" or "1,-1,1"
SignSequence parse_sign_sequence(std::string_view text);
std::string to_string(const SignSequence& x);

// Aperiodic autocorrelations c_1..c_{N-1}; c_k = c_{-k} for real sequences.
std::vector<std::int64_t> autocorrelations(std::span<const std::int8_t> x);
bool is_barker(std::span<const std::int8_t> x);

inline constexpr std::size_t kBarkerSearchCap = 32;

// Exhaustive search for Barker sequences of every length 1..max_len, with the
// first entry fixed to +1. Each list is sorted lexicographically (+ before -).
std::map<std::size_t, std::vector<SignSequence>> barker_search(std::size_t max_len,
                                                               std::size_t cap = kBarkerSearchCap);

Eigen::MatrixXi circulant_from_row(std::span<const std::int8_t> row);

} // namespace mflab
