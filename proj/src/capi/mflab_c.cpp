#include "mflab/mflab.h"

#include "mflab/admissible.hpp"
#include "mflab/arith.hpp"
#include "mflab/chowla.hpp"
#include "mflab/empirical.hpp"
#include "mflab/error.hpp"
#include "mflab/mirsky.hpp"
#include "mflab/parallel.hpp"
#include "mflab/report.hpp"
#include "mflab/sampler.hpp"
#include "mflab/walsh.hpp"

#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <vector>

struct mflab_table {
    mflab::ArithTable table;
};

struct mflab_strings {
    std::vector<std::string> items;
};

struct mflab_level {
    mflab::AdmissibleMeasureLevel level;
};

struct mflab_sampler {
    mflab::ChowlaSampler sampler;
};

struct mflab_report {
    std::vector<mflab::CriterionResult> results;
};

namespace {

thread_local std::string g_last_error;

mflab_status fail(mflab_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

template <class F>
mflab_status guarded(F&& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const mflab::Error& e) {
        return fail(static_cast<mflab_status>(static_cast<int>(e.code())), e.what());
    } catch (const std::bad_alloc&) {
        return fail(MFLAB_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(MFLAB_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(MFLAB_ERR_INTERNAL, "unknown error");
    }
}

#define MFLAB_REQUIRE(cond)                                                                \
    do {                                                                                   \
        if (!(cond)) return fail(MFLAB_ERR_INVALID_ARGUMENT, "null or invalid argument: " #cond); \
    } while (0)

template <class T>
mflab_status copy_out(const std::vector<T>& src, T* out, std::size_t capacity, std::size_t* count) {
    if (count) *count = src.size();
    if (out == nullptr || capacity < src.size()) {
        if (out == nullptr && count != nullptr) return MFLAB_OK;
        return fail(MFLAB_ERR_BUFFER_TOO_SMALL,
                    "buffer holds " + std::to_string(capacity) + ", need " + std::to_string(src.size()));
    }
    std::copy(src.begin(), src.end(), out);
    return MFLAB_OK;
}

mflab::SupportSet support_of(const uint64_t* positions, std::size_t n) {
    if (n > 0 && positions == nullptr) throw mflab::Error(mflab::ErrorCode::InvalidArgument, "null positions");
    return mflab::SupportSet(std::vector<std::uint64_t>(positions, positions + n));
}

mflab::FAB fab_of(const uint64_t* odd, std::size_t n_odd, const uint64_t* squared, std::size_t n_squared) {
    return mflab::FAB(support_of(odd, n_odd), support_of(squared, n_squared));
}

mflab::Block binary_block(const char* text) {
    if (text == nullptr) throw mflab::Error(mflab::ErrorCode::InvalidArgument, "null block");
    return mflab::Block::parse(text, mflab::Alphabet::Binary);
}

mflab::SampleConfig sample_config(const mflab_sample_config* cfg) {
    if (cfg == nullptr) throw mflab::Error(mflab::ErrorCode::InvalidArgument, "null sample config");
    return {cfg->cutoff, cfg->length, cfg->seed};
}

void to_c(const mflab::TruncatedDensity& d, mflab_density* out) {
    out->value = d.value;
    out->cutoff = d.cutoff;
    out->error_bound = d.error_bound;
}

mflab::SignSequence signs_of(const int8_t* x, std::size_t len) {
    if (len > 0 && x == nullptr) throw mflab::Error(mflab::ErrorCode::InvalidArgument, "null sequence");
    return mflab::SignSequence(x, x + len);
}

mflab_strings* to_strings(std::vector<std::string> items) { return new mflab_strings{std::move(items)}; }

} // namespace

extern "C" {

const char* mflab_version(void) { return "1.0.0"; }

const char* mflab_last_error(void) { return g_last_error.c_str(); }

const char* mflab_status_string(mflab_status status) {
    switch (status) {
    case MFLAB_OK: return "ok";
    case MFLAB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MFLAB_ERR_RANGE: return "range error";
    case MFLAB_ERR_CAP_EXCEEDED: return "cap exceeded";
    case MFLAB_ERR_IO: return "i/o error";
    case MFLAB_ERR_FORMAT: return "format error";
    case MFLAB_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case MFLAB_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void mflab_set_threads(unsigned threads) { mflab::set_thread_count(threads); }

size_t mflab_strings_count(const mflab_strings* list) { return list ? list->items.size() : 0; }

const char* mflab_strings_get(const mflab_strings* list, size_t i) {
    if (list == nullptr || i >= list->items.size()) return nullptr;
    return list->items[i].c_str();
}

void mflab_strings_free(mflab_strings* list) { delete list; }

/* arithmetic tables */

mflab_status mflab_table_sieve(mflab_function function, uint64_t max_n, mflab_table** out) {
    MFLAB_REQUIRE(out);
    MFLAB_REQUIRE(function >= MFLAB_MOBIUS && function <= MFLAB_SQUAREFREE);
    return guarded([&] {
        *out = new mflab_table{mflab::sieve(static_cast<mflab::ArithFunction>(function), max_n)};
        return MFLAB_OK;
    });
}

mflab_status mflab_table_load(const char* path, mflab_table** out) {
    MFLAB_REQUIRE(path && out);
    return guarded([&] {
        *out = new mflab_table{mflab::load_table(path)};
        return MFLAB_OK;
    });
}

mflab_status mflab_table_save(const mflab_table* table, const char* path) {
    MFLAB_REQUIRE(table && path);
    return guarded([&] {
        mflab::save_table(path, table->table);
        return MFLAB_OK;
    });
}

void mflab_table_free(mflab_table* table) { delete table; }

mflab_function mflab_table_function(const mflab_table* table) {
    return static_cast<mflab_function>(table->table.function());
}

uint64_t mflab_table_max_n(const mflab_table* table) { return table ? table->table.max_n() : 0; }

const int8_t* mflab_table_values(const mflab_table* table) {
    return table ? table->table.values().data() : nullptr;
}

mflab_status mflab_primes_up_to(uint64_t bound, uint64_t* out, size_t capacity, size_t* count) {
    return guarded([&] { return copy_out(mflab::primes_up_to(bound), out, capacity, count); });
}

mflab_status mflab_mobius_direct(uint64_t n, int* out) {
    MFLAB_REQUIRE(out);
    return guarded([&] {
        *out = mflab::mobius_direct(n);
        return MFLAB_OK;
    });
}

/* admissibility */

mflab_status mflab_residue_count(uint64_t p, const uint64_t* positions, size_t n, uint64_t* out) {
    MFLAB_REQUIRE(out);
    return guarded([&] {
        *out = mflab::residue_count(p, support_of(positions, n));
        return MFLAB_OK;
    });
}

mflab_status mflab_is_admissible_support(const uint64_t* positions, size_t n, int* out) {
    MFLAB_REQUIRE(out);
    return guarded([&] {
        *out = mflab::is_admissible_support(support_of(positions, n)) ? 1 : 0;
        return MFLAB_OK;
    });
}

mflab_status mflab_checked_primes(const uint64_t* positions, size_t n, uint64_t* out, size_t capacity,
                                  size_t* count) {
    return guarded([&] { return copy_out(mflab::checked_primes(support_of(positions, n)), out, capacity, count); });
}

mflab_status mflab_block_support(const char* block, uint64_t* out, size_t capacity, size_t* count) {
    MFLAB_REQUIRE(block);
    return guarded([&] {
        const auto s = mflab::Block::parse_auto(block).support();
        return copy_out(std::vector<std::uint64_t>(s.positions().begin(), s.positions().end()), out, capacity, count);
    });
}

mflab_status mflab_is_admissible_block(const char* block, int* out) {
    MFLAB_REQUIRE(block && out);
    return guarded([&] {
        *out = mflab::is_admissible_block(mflab::Block::parse_auto(block)) ? 1 : 0;
        return MFLAB_OK;
    });
}

mflab_status mflab_enumerate_admissible_blocks(size_t length, int alphabet, size_t cap, mflab_strings** out) {
    MFLAB_REQUIRE(out);
    MFLAB_REQUIRE(alphabet == 2 || alphabet == 3);
    return guarded([&] {
        const auto blocks = mflab::enumerate_admissible_blocks(
            length, alphabet == 2 ? mflab::Alphabet::Binary : mflab::Alphabet::Signed,
            cap == 0 ? mflab::kDefaultEnumerationCap : cap);
        std::vector<std::string> items;
        items.reserve(blocks.size());
        for (const auto& b : blocks) items.push_back(b.str());
        *out = to_strings(std::move(items));
        return MFLAB_OK;
    });
}

/* Mirsky measure */

mflab_status mflab_squarefree_pattern_density(const uint64_t* positions, size_t n, uint64_t cutoff,
                                              mflab_density* out) {
    MFLAB_REQUIRE(out);
    return guarded([&] {
        to_c(mflab::squarefree_pattern_density(support_of(positions, n), cutoff), out);
        return MFLAB_OK;
    });
}

mflab_status mflab_mirsky_cylinder(const char* block, uint64_t cutoff, mflab_density* out) {
    MFLAB_REQUIRE(out);
    return guarded([&] {
        to_c(mflab::mirsky_cylinder(binary_block(block), cutoff), out);
        return MFLAB_OK;
    });
}

mflab_status mflab_mirsky_empirical(const char* block, uint64_t windows, double* out) {
    MFLAB_REQUIRE(out);
    return guarded([&] {
        *out = mflab::mirsky_empirical(binary_block(block), windows);
        return MFLAB_OK;
    });
}

/* Chowla measure */

mflab_status mflab_chowla_cylinder(const char* base, const char* signs, uint64_t cutoff, mflab_density* out) {
    MFLAB_REQUIRE(out);
    return guarded([&] {
        const mflab::SignedCylinder sc(binary_block(base), signs ? signs : "");
        to_c(mflab::chowla_cylinder(sc, cutoff), out);
        return MFLAB_OK;
    });
}

mflab_status mflab_eval_fab(const uint64_t* odd, size_t n_odd, const uint64_t* squared, size_t n_squared,
                            const char* word, int* out) {
    MFLAB_REQUIRE(word && out);
    return guarded([&] {
        *out = mflab::eval_fab(fab_of(odd, n_odd, squared, n_squared),
                               mflab::Block::parse(word, mflab::Alphabet::Signed));
        return MFLAB_OK;
    });
}

mflab_status mflab_integral_fab_level(const uint64_t* odd, size_t n_odd, const uint64_t* squared, size_t n_squared,
                                      size_t level, uint64_t cutoff, double* out) {
    MFLAB_REQUIRE(out);
    return guarded([&] {
        *out = mflab::integral_fab_level(fab_of(odd, n_odd, squared, n_squared), level, cutoff);
        return MFLAB_OK;
    });
}

mflab_status mflab_uniqueness_solve(const char* base, double nu, double* out, size_t capacity, size_t* count) {
    return guarded([&] {
        std::vector<double> values;
        for (const auto& sv : mflab::uniqueness_solve(binary_block(base), nu)) values.push_back(sv.value);
        return copy_out(values, out, capacity, count);
    });
}

mflab_status mflab_level_chowla(size_t level, uint64_t cutoff, mflab_level** out) {
    MFLAB_REQUIRE(out);
    return guarded([&] {
        *out = new mflab_level{mflab::AdmissibleMeasureLevel::chowla(level, mflab::MirskyMeasure(cutoff))};
        return MFLAB_OK;
    });
}

void mflab_level_free(mflab_level* level) { delete level; }

size_t mflab_level_size(const mflab_level* level) { return level ? level->level.size() : 0; }

mflab_status mflab_level_entry(const mflab_level* level, size_t i, char* word_buf, size_t buf_len, double* value) {
    MFLAB_REQUIRE(level);
    return guarded([&] {
        if (i >= level->level.size()) return fail(MFLAB_ERR_RANGE, "entry index out of range");
        if (word_buf) {
            const auto w = level->level.word(i).str();
            if (buf_len < w.size() + 1) return fail(MFLAB_ERR_BUFFER_TOO_SMALL, "word buffer too small");
            std::memcpy(word_buf, w.c_str(), w.size() + 1);
        }
        if (value) *value = level->level.value(i);
        return MFLAB_OK;
    });
}

mflab_status mflab_level_set(mflab_level* level, const char* word, double value) {
    MFLAB_REQUIRE(level && word);
    return guarded([&] {
        level->level.set(mflab::Block::parse(word, mflab::Alphabet::Signed), value);
        return MFLAB_OK;
    });
}

mflab_status mflab_level_verify(const mflab_level* level, uint64_t cutoff, double tol, mflab_level_report* out) {
    MFLAB_REQUIRE(level && out);
    return guarded([&] {
        const auto r = mflab::verify_admissible_level(level->level, mflab::MirskyMeasure(cutoff), tol);
        static const char* const kNames[3] = {"shift_consistency", "squared_marginal", "vanishing_integrals"};
        out->level = r.level;
        out->cutoff = r.cutoff;
        out->tol = r.tol;
        out->total_mass = r.total_mass;
        for (int c = 0; c < 3; ++c) {
            out->checks[c].name = kNames[c];
            out->checks[c].passed = r.checks[static_cast<std::size_t>(c)].passed ? 1 : 0;
            out->checks[c].max_deviation = r.checks[static_cast<std::size_t>(c)].max_deviation;
            out->checks[c].threshold = r.checks[static_cast<std::size_t>(c)].threshold;
        }
        out->passed = r.passed() ? 1 : 0;
        return MFLAB_OK;
    });
}

/* Walsh-Hadamard and Barker */

int mflab_walsh_entry(uint64_t a, uint64_t b) { return mflab::walsh_entry(a, b); }

mflab_status mflab_walsh_det_log2(unsigned n, int* sign, uint64_t* log2_abs) {
    MFLAB_REQUIRE(sign && log2_abs);
    return guarded([&] {
        const auto d = mflab::walsh_det_log2(n);
        *sign = d.sign;
        *log2_abs = d.log2_abs;
        return MFLAB_OK;
    });
}

mflab_status mflab_walsh_det_exact(unsigned n, char* buf, size_t buf_len) {
    MFLAB_REQUIRE(buf);
    return guarded([&] {
        if (n == 0 || n > 6) return fail(MFLAB_ERR_CAP_EXCEEDED, "exact Walsh determinant limited to 1 <= n <= 6");
        const auto text = mflab::exact_determinant(mflab::walsh_matrix(n)).str();
        if (buf_len < text.size() + 1) return fail(MFLAB_ERR_BUFFER_TOO_SMALL, "determinant text buffer too small");
        std::memcpy(buf, text.c_str(), text.size() + 1);
        return MFLAB_OK;
    });
}

mflab_status mflab_fwht(double* v, size_t len) {
    MFLAB_REQUIRE(v);
    return guarded([&] {
        mflab::fwht_inplace(std::span<double>(v, len));
        return MFLAB_OK;
    });
}

mflab_status mflab_solve_uniform_system(unsigned n, double a, double* out, size_t capacity, size_t* count) {
    return guarded([&] { return copy_out(mflab::solve_uniform_system(n, a), out, capacity, count); });
}

mflab_status mflab_uniform_system_residual(const double* nu, size_t len, double a, double* out) {
    MFLAB_REQUIRE(nu && out);
    return guarded([&] {
        *out = mflab::uniform_system_residual(std::span<const double>(nu, len), a);
        return MFLAB_OK;
    });
}

mflab_status mflab_is_hadamard(const int* m, size_t order, int* out) {
    MFLAB_REQUIRE(m && out);
    return guarded([&] {
        const auto k = static_cast<Eigen::Index>(order);
        Eigen::MatrixXi mat(k, k);
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = 0; j < k; ++j) mat(i, j) = m[i * k + j];
        *out = mflab::is_hadamard(mat) ? 1 : 0;
        return MFLAB_OK;
    });
}

mflab_status mflab_hadamard_det_bound_check(const double* m, size_t order, double* det_abs, double* bound,
                                            int* tight) {
    MFLAB_REQUIRE(m && det_abs && bound && tight);
    return guarded([&] {
        const auto k = static_cast<Eigen::Index>(order);
        Eigen::MatrixXd mat(k, k);
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = 0; j < k; ++j) mat(i, j) = m[i * k + j];
        const auto r = mflab::hadamard_det_bound_check(mat);
        *det_abs = r.det_abs;
        *bound = r.bound;
        *tight = r.tight ? 1 : 0;
        return MFLAB_OK;
    });
}

mflab_status mflab_autocorrelations(const int8_t* x, size_t len, int64_t* out, size_t capacity, size_t* count) {
    return guarded([&] {
        const auto c = mflab::autocorrelations(signs_of(x, len));
        return copy_out(std::vector<int64_t>(c.begin(), c.end()), out, capacity, count);
    });
}

mflab_status mflab_is_barker(const int8_t* x, size_t len, int* out) {
    MFLAB_REQUIRE(out);
    return guarded([&] {
        *out = mflab::is_barker(signs_of(x, len)) ? 1 : 0;
        return MFLAB_OK;
    });
}

mflab_status mflab_barker_search(size_t max_len, mflab_strings** out) {
    MFLAB_REQUIRE(out);
    return guarded([&] {
        std::vector<std::string> items;
        for (const auto& [len, seqs] : mflab::barker_search(max_len))
            for (const auto& s : seqs) items.push_back(mflab::to_string(s));
        *out = to_strings(std::move(items));
        return MFLAB_OK;
    });
}

mflab_status mflab_circulant_from_row(const int8_t* row, size_t order, int* out, size_t capacity) {
    MFLAB_REQUIRE(row && out);
    return guarded([&] {
        if (capacity < order * order) return fail(MFLAB_ERR_BUFFER_TOO_SMALL, "circulant buffer too small");
        const auto m = mflab::circulant_from_row(std::span<const std::int8_t>(row, order));
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
        return MFLAB_OK;
    });
}

/* empirical statistics */

mflab_status mflab_chowla_sum(const mflab_table* table, const uint64_t* shifts, const unsigned* exponents,
                              size_t count, uint64_t n, mflab_averaging averaging, mflab_normalizer normalizer,
                              double* value, int* density_mode) {
    MFLAB_REQUIRE(table && shifts && exponents && value);
    return guarded([&] {
        const mflab::CorrelationSpec spec(std::vector<std::uint64_t>(shifts, shifts + count),
                                          std::vector<unsigned>(exponents, exponents + count));
        const mflab::AveragingMode mode{
            averaging == MFLAB_LOGARITHMIC ? mflab::Averaging::Logarithmic : mflab::Averaging::Cesaro,
            normalizer == MFLAB_ELL_N ? mflab::Normalizer::EllN : mflab::Normalizer::LogN};
        const auto r = mflab::chowla_sum(table->table, spec, n, mode);
        *value = r.value;
        if (density_mode) *density_mode = r.density_mode ? 1 : 0;
        return MFLAB_OK;
    });
}

mflab_status mflab_log_density(mflab_indicator indicator, void* user, uint64_t n, mflab_normalizer normalizer,
                               double* out) {
    MFLAB_REQUIRE(indicator && out);
    return guarded([&] {
        *out = mflab::log_density([&](std::uint64_t k) { return indicator(k, user) != 0; }, n,
                                  normalizer == MFLAB_ELL_N ? mflab::Normalizer::EllN : mflab::Normalizer::LogN);
        return MFLAB_OK;
    });
}

mflab_status mflab_empirical_measure_cylinder(const int8_t* x, size_t len, const char* pattern, uint64_t windows,
                                              double* out) {
    MFLAB_REQUIRE(pattern && out);
    MFLAB_REQUIRE(x || len == 0);
    return guarded([&] {
        *out = mflab::empirical_measure_cylinder(std::span<const std::int8_t>(x, len),
                                                 mflab::Block::parse_auto(pattern), windows);
        return MFLAB_OK;
    });
}

mflab_status mflab_orbit_block_coverage(size_t length, uint64_t n, const mflab_table* mobius,
                                        mflab_orbit_coverage* out, mflab_strings** missing) {
    MFLAB_REQUIRE(out);
    return guarded([&] {
        const auto r = mobius ? mflab::orbit_block_coverage(length, n, mobius->table)
                              : mflab::orbit_block_coverage(length, n);
        out->seen = r.seen;
        out->admissible_total = r.admissible_total;
        out->ratio = r.ratio;
        if (missing) {
            std::vector<std::string> items;
            for (const auto& b : r.missing) items.push_back(b.str());
            *missing = to_strings(std::move(items));
        }
        return MFLAB_OK;
    });
}

/* sampler */

uint64_t mflab_default_cutoff(uint64_t length) { return mflab::default_cutoff(length); }

const char* mflab_sampler_algorithm(void) { return mflab::sampler_algorithm().data(); }

mflab_status mflab_sampler_new(const mflab_sample_config* cfg, mflab_sampler** out) {
    MFLAB_REQUIRE(out);
    return guarded([&] {
        *out = new mflab_sampler{mflab::ChowlaSampler(sample_config(cfg))};
        return MFLAB_OK;
    });
}

void mflab_sampler_free(mflab_sampler* sampler) { delete sampler; }

namespace {
mflab_status emit_sample(const mflab::Block& b, int8_t* out, size_t capacity) {
    if (capacity < b.size()) return fail(MFLAB_ERR_BUFFER_TOO_SMALL, "sample buffer too small");
    std::copy(b.symbols().begin(), b.symbols().end(), out);
    return MFLAB_OK;
}
} // namespace

mflab_status mflab_sampler_mirsky(const mflab_sampler* sampler, uint64_t index, int8_t* out, size_t capacity) {
    MFLAB_REQUIRE(sampler && out);
    return guarded([&] { return emit_sample(sampler->sampler.mirsky_sample(index), out, capacity); });
}

mflab_status mflab_sampler_chowla(const mflab_sampler* sampler, uint64_t index, int8_t* out, size_t capacity) {
    MFLAB_REQUIRE(sampler && out);
    return guarded([&] { return emit_sample(sampler->sampler.chowla_sample(index), out, capacity); });
}

mflab_status mflab_mirsky_window(const uint64_t* primes, const uint64_t* residues, size_t count, size_t length,
                                 int8_t* out) {
    MFLAB_REQUIRE((primes && residues) || count == 0);
    MFLAB_REQUIRE(out || length == 0);
    return guarded([&] {
        mflab::GroupPoint g{std::vector<std::uint64_t>(primes, primes + count),
                            std::vector<std::uint64_t>(residues, residues + count)};
        return emit_sample(mflab::mirsky_window(g, length), out, length);
    });
}

mflab_status mflab_mc_integral_fab(const uint64_t* odd, size_t n_odd, const uint64_t* squared, size_t n_squared,
                                   uint64_t samples, const mflab_sample_config* cfg, double* mean,
                                   double* standard_error) {
    MFLAB_REQUIRE(mean && standard_error);
    return guarded([&] {
        const auto r = mflab::mc_integral_fab(fab_of(odd, n_odd, squared, n_squared), samples, sample_config(cfg));
        *mean = r.mean;
        *standard_error = r.standard_error;
        return MFLAB_OK;
    });
}

/* acceptance report */

mflab_status mflab_report_run(int quick, uint64_t seed, mflab_report** out) {
    MFLAB_REQUIRE(out);
    return guarded([&] {
        *out = new mflab_report{mflab::run_acceptance({quick != 0, seed})};
        return MFLAB_OK;
    });
}

void mflab_report_free(mflab_report* report) { delete report; }

size_t mflab_report_count(const mflab_report* report) { return report ? report->results.size() : 0; }

mflab_status mflab_report_item(const mflab_report* report, size_t i, mflab_criterion* out) {
    MFLAB_REQUIRE(report && out);
    if (i >= report->results.size()) return fail(MFLAB_ERR_RANGE, "criterion index out of range");
    const auto& r = report->results[i];
    out->id = r.id.c_str();
    out->name = r.name.c_str();
    out->passed = r.passed ? 1 : 0;
    out->diagnostic = r.diagnostic ? 1 : 0;
    out->value = r.value;
    out->threshold = r.threshold;
    out->detail = r.detail.c_str();
    return MFLAB_OK;
}

int mflab_report_passed(const mflab_report* report) {
    return report && mflab::all_passed(report->results) ? 1 : 0;
}

} // extern "C"
