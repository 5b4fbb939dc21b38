#include "mflab/walsh.hpp"

#include "mflab/error.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace mflab {

namespace bmp = boost::multiprecision;

Eigen::MatrixXi walsh_matrix(unsigned n) {
    if (n > 14) throw Error(ErrorCode::CapExceeded, "materialized Walsh matrix limited to n <= 14");
    const Eigen::Index size = Eigen::Index{1} << n;
    Eigen::MatrixXi m(size, size);
    for (Eigen::Index a = 0; a < size; ++a)
        for (Eigen::Index b = 0; b < size; ++b)
            m(a, b) = walsh_entry(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    return m;
}

bmp::cpp_int exact_determinant(const Eigen::MatrixXi& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "matrix must be square");
    const Eigen::Index n = m.rows();
    if (n == 0) return 1;

    std::vector<std::vector<bmp::cpp_int>> a(n, std::vector<bmp::cpp_int>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a[i][j] = m(i, j);

    int sign = 1;
    bmp::cpp_int prev = 1;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            Eigen::Index swap = k + 1;
            while (swap < n && a[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            for (Eigen::Index j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

DetLog2 walsh_det_log2(unsigned n) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "ground set must be nonempty");
    if (n > 57) throw Error(ErrorCode::Range, "log2 |det| overflows 64 bits beyond n = 57");

    DetLog2 out{n == 1 ? -1 : 1, static_cast<std::uint64_t>(n) << (n - 1)};
    if (n <= 4) {
        const bmp::cpp_int expected = out.sign * (bmp::cpp_int{1} << out.log2_abs);
        if (exact_determinant(walsh_matrix(n)) != expected)
            throw std::logic_error("Walsh determinant disagrees with exact evaluation");
    }
    return out;
}

void fwht_inplace(std::span<double> v) {
    const std::size_t len = v.size();
    if (len == 0 || !std::has_single_bit(len))
        throw Error(ErrorCode::InvalidArgument, "length " + std::to_string(len) + " is not a power of two");
    for (std::size_t h = 1; h < len; h *= 2) {
        for (std::size_t i = 0; i < len; i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double x = v[j];
                const double y = v[j + h];
                v[j] = x + y;
                v[j + h] = x - y;
            }
        }
    }
}

std::vector<double> fwht(std::vector<double> v) {
    fwht_inplace(v);
    return v;
}

double uniform_system_residual(std::span<const double> nu, double a) {
    std::vector<double> image(nu.begin(), nu.end());
    fwht_inplace(image);
    double worst = 0.0;
    for (std::size_t i = 0; i < image.size(); ++i)
        worst = std::max(worst, std::abs(image[i] - (i == 0 ? a : 0.0)));
    return worst;
}

std::vector<double> solve_uniform_system(unsigned n, double a) {
    if (n > 30) throw Error(ErrorCode::CapExceeded, "Walsh system limited to n <= 30");
    const std::size_t size = std::size_t{1} << n;
    std::vector<double> nu(size, 0.0);
    nu[0] = a;
    // C^2 = 2^n I, so C^{-1} = C / 2^n.
    fwht_inplace(nu);
    const double scale = std::ldexp(1.0, -static_cast<int>(n));
    for (auto& x : nu) x *= scale;

    if (uniform_system_residual(nu, a) > 1e-12 * std::max(1.0, std::abs(a)))
        throw std::logic_error("Walsh system solution fails back-substitution");
    return nu;
}

bool is_hadamard(const Eigen::MatrixXi& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "matrix must be square");
    if ((m.array().abs() != 1).any())
        throw Error(ErrorCode::InvalidArgument, "Hadamard check needs +-1 entries");
    const Eigen::MatrixXi gram = m * m.transpose();
    return gram == static_cast<int>(m.rows()) * Eigen::MatrixXi::Identity(m.rows(), m.rows());
}

DetBoundCheck hadamard_det_bound_check(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "matrix must be square");
    if ((m.array().abs() > 1.0).any())
        throw Error(ErrorCode::InvalidArgument, "entries must lie in [-1, 1]");

    const auto n = static_cast<double>(m.rows());
    DetBoundCheck out;
    out.det_abs = m.rows() == 0 ? 1.0 : std::abs(m.partialPivLu().determinant());
    out.bound = std::pow(n, n / 2.0);
    out.tight = std::abs(out.det_abs - out.bound) <= 1e-9 * out.bound;

    if (out.tight && m.rows() > 0) {
        const Eigen::MatrixXd gram = m * m.transpose();
        const bool pm_one = ((m.array().abs() - 1.0).abs() <= 1e-9).all();
        const bool orthogonal = (gram - n * Eigen::MatrixXd::Identity(m.rows(), m.rows()))
                                    .cwiseAbs()
                                    .maxCoeff() <= 1e-9 * n;
        if (!pm_one || !orthogonal)
            throw std::logic_error("determinant meets the Hadamard bound for a non-Hadamard matrix");
    }
    return out;
}

SignSequence parse_sign_sequence(std::string_view text) {
    SignSequence out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') continue;
        if (c == '+') {
            out.push_back(1);
        } else if (c == '-') {
            if (i + 1 < text.size() && text[i + 1] == '1') ++i;
            out.push_back(-1);
        } else if (c == '1') {
            out.push_back(1);
        } else {
            throw Error(ErrorCode::InvalidArgument, std::string("unexpected sign symbol '") + c + "'");
        }
    }
    return out;
}

std::string to_string(const SignSequence& x) {
    std::string out;
    out.reserve(x.size());
    for (auto s : x) out.push_back(s > 0 ? '+' : '-');
    return out;
}

std::vector<std::int64_t> autocorrelations(std::span<const std::int8_t> x) {
    for (auto s : x)
        if (s != 1 && s != -1) throw Error(ErrorCode::InvalidArgument, "sign sequences take +-1 entries");
    const std::size_t n = x.size();
    std::vector<std::int64_t> c(n > 0 ? n - 1 : 0, 0);
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t j = 0; j + k < n; ++j) c[k - 1] += x[j] * x[j + k];
    return c;
}

bool is_barker(std::span<const std::int8_t> x) {
    const auto c = autocorrelations(x);
    return std::all_of(c.begin(), c.end(), [](std::int64_t v) { return v >= -1 && v <= 1; });
}

namespace {

// Fills positions from both ends: 0, L-1, 1, L-2, ... so the long-lag
// correlations become fully determined early. For each lag the known partial
// sum must stay within reach of [-1, 1] given the still-unknown terms.
class BarkerSearch {
public:
    explicit BarkerSearch(std::size_t len)
        : len_(len), x_(len, 0), sum_(len, 0), unknown_(len, 0) {
        for (std::size_t i = 0; i < len; ++i) order_.push_back(i % 2 == 0 ? i / 2 : len - 1 - i / 2);
        for (std::size_t k = 1; k < len; ++k) unknown_[k] = static_cast<int>(len - k);
    }

    std::vector<SignSequence> run() {
        assign(0, 1);
        if (feasible()) visit(1);
        return std::move(found_);
    }

private:
    void assign(std::size_t pos, std::int8_t s) {
        x_[pos] = s;
        for (std::size_t k = 1; k < len_; ++k) {
            if (pos >= k && x_[pos - k] != 0) {
                sum_[k] += s * x_[pos - k];
                --unknown_[k];
            }
            if (pos + k < len_ && x_[pos + k] != 0) {
                sum_[k] += s * x_[pos + k];
                --unknown_[k];
            }
        }
    }

    void unassign(std::size_t pos) {
        const std::int8_t s = x_[pos];
        for (std::size_t k = 1; k < len_; ++k) {
            if (pos >= k && x_[pos - k] != 0) {
                sum_[k] -= s * x_[pos - k];
                ++unknown_[k];
            }
            if (pos + k < len_ && x_[pos + k] != 0) {
                sum_[k] -= s * x_[pos + k];
                ++unknown_[k];
            }
        }
        x_[pos] = 0;
    }

    bool feasible() const {
        for (std::size_t k = 1; k < len_; ++k)
            if (std::abs(sum_[k]) - unknown_[k] > 1) return false;
        return true;
    }

    void visit(std::size_t depth) {
        if (depth == len_) {
            found_.push_back(x_);
            return;
        }
        const std::size_t pos = order_[depth];
        for (std::int8_t s : {std::int8_t{1}, std::int8_t{-1}}) {
            assign(pos, s);
            if (feasible()) visit(depth + 1);
            unassign(pos);
        }
    }

    std::size_t len_;
    std::vector<std::size_t> order_;
    SignSequence x_;
    std::vector<int> sum_;
    std::vector<int> unknown_;
    std::vector<SignSequence> found_;
};

} // namespace

std::map<std::size_t, std::vector<SignSequence>> barker_search(std::size_t max_len, std::size_t cap) {
    if (max_len > cap)
        throw Error(ErrorCode::CapExceeded,
                    "cap exceeded: Barker search limited to length " + std::to_string(cap));
    std::map<std::size_t, std::vector<SignSequence>> out;
    for (std::size_t len = 1; len <= max_len; ++len) {
        auto found = BarkerSearch(len).run();
        // '+' sorts before '-' in ASCII, so compare the rendered strings.
        std::sort(found.begin(), found.end(),
                  [](const SignSequence& a, const SignSequence& b) { return to_string(a) < to_string(b); });
        out.emplace(len, std::move(found));
    }
    return out;
}

Eigen::MatrixXi circulant_from_row(std::span<const std::int8_t> row) {
    const auto m = static_cast<Eigen::Index>(row.size());
    Eigen::MatrixXi out(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) out(i, j) = row[static_cast<std::size_t>((j - i + m) % m)];
    return out;
}

} // namespace mflab
