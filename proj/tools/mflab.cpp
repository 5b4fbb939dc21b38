// mflab command-line front end. Talks to the library only through mflab.h.
#include <mflab/mflab.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssert = 1;
constexpr int kExitUsage = 2;

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(mflab_status s) {
    if (s != MFLAB_OK) throw Failure(mflab_last_error());
}

// 12 significant digits, so the text round-trips without hiding regressions.
ordered_json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using Table = std::unique_ptr<mflab_table, Deleter<mflab_table, mflab_table_free>>;
using Strings = std::unique_ptr<mflab_strings, Deleter<mflab_strings, mflab_strings_free>>;
using Level = std::unique_ptr<mflab_level, Deleter<mflab_level, mflab_level_free>>;
using Sampler = std::unique_ptr<mflab_sampler, Deleter<mflab_sampler, mflab_sampler_free>>;
using Report = std::unique_ptr<mflab_report, Deleter<mflab_report, mflab_report_free>>;

std::vector<std::string> to_vector(const mflab_strings* list) {
    std::vector<std::string> out;
    for (size_t i = 0; i < mflab_strings_count(list); ++i) out.emplace_back(mflab_strings_get(list, i));
    return out;
}

template <class T, class F>
std::vector<T> two_call(F&& fill) {
    size_t count = 0;
    check(fill(nullptr, 0, &count));
    std::vector<T> out(count);
    if (count > 0) check(fill(out.data(), out.size(), &count));
    return out;
}

mflab_function parse_function(const std::string& name) {
    if (name == "mobius" || name == "mu") return MFLAB_MOBIUS;
    if (name == "liouville" || name == "lambda") return MFLAB_LIOUVILLE;
    if (name == "squarefree" || name == "mu2") return MFLAB_SQUAREFREE;
    throw CLI::ValidationError("--function", "expected mobius, liouville or squarefree");
}

const char* function_name(mflab_function f) {
    switch (f) {
    case MFLAB_MOBIUS: return "mobius";
    case MFLAB_LIOUVILLE: return "liouville";
    case MFLAB_SQUAREFREE: return "squarefree";
    }
    return "unknown";
}

ordered_json density_json(const mflab_density& d) {
    return {{"value", num(d.value)}, {"error_bound", num(d.error_bound)}, {"P", d.cutoff}};
}

void emit(const ordered_json& j) { std::cout << j.dump() << '\n'; }

ordered_json envelope(const std::string& sub, ordered_json params) {
    ordered_json j;
    j["subcommand"] = sub;
    j["parameters"] = std::move(params);
    return j;
}

std::string sample_line(const std::vector<int8_t>& x) {
    std::string s(x.size(), '0');
    for (size_t i = 0; i < x.size(); ++i) s[i] = x[i] > 0 ? '+' : (x[i] < 0 ? '-' : '0');
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mobius flow laboratory: admissible sets, Mirsky and Chowla measures, Walsh systems"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(mflab_version()));

    unsigned threads = 0;
    bool timing = false;
    app.add_option("--threads", threads, "Worker cap (0: all cores)")->envname("MFLAB_THREADS");
    app.add_flag("--timing", timing, "Add wall_time to the output (breaks byte-identical reruns)");

    int exit_code = kExitOk;
    ordered_json out;
    // Run after parsing so --threads is applied before any work starts.
    std::vector<std::pair<CLI::App*, std::function<void()>>> actions;

    // sieve
    auto* sieve = app.add_subcommand("sieve", "Sieve an arithmetic function into a binary table");
    std::string sieve_fn = "mobius";
    uint64_t sieve_n = 0;
    std::string sieve_out;
    bool sieve_values = false;
    sieve->add_option("--function", sieve_fn, "mobius | liouville | squarefree");
    sieve->add_option("--max-n", sieve_n, "Table covers 1..max-n")->required();
    sieve->add_option("--out", sieve_out, "Write the MFL1 binary table here");
    sieve->add_flag("--values", sieve_values, "Echo the values (max-n <= 10000)");
    actions.emplace_back(sieve, [&] {
        const auto fn = parse_function(sieve_fn);
        mflab_table* raw = nullptr;
        check(mflab_table_sieve(fn, sieve_n, &raw));
        Table t(raw);
        out = envelope("sieve", {{"function", function_name(fn)}, {"max_n", sieve_n}});
        const int8_t* v = mflab_table_values(t.get());
        int64_t sum = 0;
        uint64_t nonzero = 0;
        for (uint64_t i = 0; i < sieve_n; ++i) {
            sum += v[i];
            nonzero += v[i] != 0;
        }
        out["sum"] = sum;
        out["nonzero"] = nonzero;
        if (!sieve_out.empty()) {
            check(mflab_table_save(t.get(), sieve_out.c_str()));
            out["path"] = sieve_out;
        }
        if (sieve_values) {
            if (sieve_n > 10000) throw CLI::ValidationError("--values", "only for max-n <= 10000");
            out["values"] = std::vector<int>(v, v + sieve_n);
        }
    });

    // admissible
    auto* adm = app.add_subcommand("admissible", "Admissibility of a block or support; enumeration");
    std::string adm_block;
    std::vector<uint64_t> adm_support;
    size_t adm_enum = 0;
    int adm_alphabet = 3;
    adm->add_option("--block", adm_block, "Block over 01 or 0+-");
    adm->add_option("--support", adm_support, "Comma-separated positions")->delimiter(',');
    adm->add_option("--enumerate", adm_enum, "List all admissible blocks of this length");
    adm->add_option("--alphabet", adm_alphabet, "2 or 3 (with --enumerate)")->check(CLI::IsMember({2, 3}));
    actions.emplace_back(adm, [&] {
        const int modes = !adm_block.empty() + !adm_support.empty() + (adm_enum > 0);
        if (modes != 1) throw CLI::ValidationError("admissible", "give exactly one of --block, --support, --enumerate");
        if (adm_enum > 0) {
            mflab_strings* raw = nullptr;
            check(mflab_enumerate_admissible_blocks(adm_enum, adm_alphabet, 0, &raw));
            Strings list(raw);
            out = envelope("admissible", {{"enumerate", adm_enum}, {"alphabet", adm_alphabet}});
            const auto blocks = to_vector(list.get());
            out["count"] = blocks.size();
            out["blocks"] = blocks;
            return;
        }
        std::vector<uint64_t> support = adm_support;
        int ok = 0;
        if (!adm_block.empty()) {
            out = envelope("admissible", {{"block", adm_block}});
            support = two_call<uint64_t>(
                [&](uint64_t* b, size_t c, size_t* n) { return mflab_block_support(adm_block.c_str(), b, c, n); });
            check(mflab_is_admissible_block(adm_block.c_str(), &ok));
        } else {
            out = envelope("admissible", {{"support", adm_support}});
            check(mflab_is_admissible_support(support.data(), support.size(), &ok));
        }
        const auto primes = two_call<uint64_t>([&](uint64_t* b, size_t c, size_t* n) {
            return mflab_checked_primes(support.data(), support.size(), b, c, n);
        });
        ordered_json residues = ordered_json::array();
        for (auto p : primes) {
            uint64_t t = 0;
            check(mflab_residue_count(p, support.data(), support.size(), &t));
            residues.push_back({{"p", p}, {"t", t}});
        }
        out["admissible"] = ok != 0;
        out["support"] = support;
        out["checked_primes"] = primes;
        out["residue_counts"] = residues;
    });

    // mirsky
    auto* mir = app.add_subcommand("mirsky", "Mirsky cylinder value or pattern density");
    std::string mir_block;
    std::vector<uint64_t> mir_support;
    uint64_t mir_cutoff = 100000;
    uint64_t mir_empirical = 0;
    mir->add_option("--block", mir_block, "Binary block");
    mir->add_option("--support", mir_support, "Pattern density of a support instead")->delimiter(',');
    mir->add_option("--cutoff", mir_cutoff, "Prime cutoff P");
    mir->add_option("--empirical", mir_empirical, "Also report the sieve frequency over N windows");
    actions.emplace_back(mir, [&] {
        if (mir_block.empty() == mir_support.empty())
            throw CLI::ValidationError("mirsky", "give exactly one of --block, --support");
        mflab_density d{};
        ordered_json params;
        if (!mir_block.empty()) {
            params["block"] = mir_block;
            check(mflab_mirsky_cylinder(mir_block.c_str(), mir_cutoff, &d));
        } else {
            params["support"] = mir_support;
            check(mflab_squarefree_pattern_density(mir_support.data(), mir_support.size(), mir_cutoff, &d));
        }
        params["cutoff"] = mir_cutoff;
        if (mir_empirical) params["empirical"] = mir_empirical;
        out = envelope("mirsky", params);
        out.update(density_json(d));
        if (mir_empirical) {
            if (mir_block.empty()) throw CLI::ValidationError("--empirical", "needs --block");
            double f = 0;
            check(mflab_mirsky_empirical(mir_block.c_str(), mir_empirical, &f));
            out["empirical"] = num(f);
            out["N"] = mir_empirical;
        }
    });

    // chowla
    auto* cho = app.add_subcommand("chowla", "Chowla measure of a signed cylinder");
    std::string cho_base;
    std::string cho_signs;
    uint64_t cho_cutoff = 100000;
    cho->add_option("--base", cho_base, "Binary base block")->required();
    cho->add_option("--signs", cho_signs, "One + or - per 1 of the base");
    cho->add_option("--cutoff", cho_cutoff, "Prime cutoff P");
    actions.emplace_back(cho, [&] {
        mflab_density d{};
        check(mflab_chowla_cylinder(cho_base.c_str(), cho_signs.c_str(), cho_cutoff, &d));
        mflab_density base{};
        check(mflab_mirsky_cylinder(cho_base.c_str(), cho_cutoff, &base));
        out = envelope("chowla", {{"base", cho_base}, {"signs", cho_signs}, {"cutoff", cho_cutoff}});
        out.update(density_json(d));
        out["mirsky_base"] = num(base.value);
    });

    // verify-admissible
    auto* ver = app.add_subcommand("verify-admissible", "Check the level-n Chowla table is admissible");
    size_t ver_level = 4;
    uint64_t ver_cutoff = 100000;
    double ver_tol = 1e-9;
    ver->add_option("--level", ver_level, "Level n (<= 16)");
    ver->add_option("--cutoff", ver_cutoff, "Prime cutoff P");
    ver->add_option("--tol", ver_tol, "Tolerance")->check(CLI::NonNegativeNumber);
    actions.emplace_back(ver, [&] {
        mflab_level* raw = nullptr;
        check(mflab_level_chowla(ver_level, ver_cutoff, &raw));
        Level lv(raw);
        mflab_level_report r{};
        check(mflab_level_verify(lv.get(), ver_cutoff, ver_tol, &r));
        out = envelope("verify-admissible", {{"level", ver_level}, {"cutoff", ver_cutoff}, {"tol", num(ver_tol)}});
        out["words"] = mflab_level_size(lv.get());
        out["total_mass"] = num(r.total_mass);
        ordered_json checks = ordered_json::array();
        for (const auto& c : r.checks)
            checks.push_back({{"name", c.name},
                              {"passed", c.passed != 0},
                              {"max_deviation", num(c.max_deviation)},
                              {"threshold", num(c.threshold)}});
        out["checks"] = checks;
        out["passed"] = r.passed != 0;
        if (!r.passed) exit_code = kExitAssert;
    });

    // hadamard
    auto* had = app.add_subcommand("hadamard", "Walsh determinants and Hadamard checks");
    unsigned had_det = 0;
    std::string had_circ_text;
    had->add_option("--det", had_det, "Determinant of the 2^n Walsh matrix");
    had->add_option("--circulant", had_circ_text, "First row of a +-1 circulant: \"+++-\" or \"1,1,1,-1\"");
    actions.emplace_back(had, [&] {
        if ((had_det > 0) == !had_circ_text.empty())
            throw CLI::ValidationError("hadamard", "give exactly one of --det, --circulant");
        if (had_det > 0) {
            int sign = 0;
            uint64_t lg = 0;
            check(mflab_walsh_det_log2(had_det, &sign, &lg));
            out = envelope("hadamard", {{"det", had_det}});
            out["sign"] = sign;
            out["log2_abs"] = lg;
            if (had_det <= 6) {
                char buf[2048];
                check(mflab_walsh_det_exact(had_det, buf, sizeof buf));
                out["exact"] = std::string(buf);
            }
            return;
        }
        std::vector<int> had_circ;
        if (had_circ_text.find_first_not_of("+-") == std::string::npos) {
            for (char c : had_circ_text) had_circ.push_back(c == '+' ? 1 : -1);
        } else {
            std::istringstream in(had_circ_text);
            std::string tok;
            while (std::getline(in, tok, ',')) {
                if (tok != "1" && tok != "-1" && tok != "+1")
                    throw CLI::ValidationError("--circulant", "entries must be +1 or -1, got '" + tok + "'");
                had_circ.push_back(tok == "-1" ? -1 : 1);
            }
        }
        const size_t m = had_circ.size();
        std::vector<int8_t> row(had_circ.begin(), had_circ.end());
        std::vector<int> mat(m * m);
        check(mflab_circulant_from_row(row.data(), m, mat.data(), mat.size()));
        int is = 0;
        check(mflab_is_hadamard(mat.data(), m, &is));
        std::vector<double> md(mat.begin(), mat.end());
        double det = 0, bound = 0;
        int tight = 0;
        check(mflab_hadamard_det_bound_check(md.data(), m, &det, &bound, &tight));
        out = envelope("hadamard", {{"circulant", had_circ}});
        out["is_hadamard"] = is != 0;
        out["det_abs"] = num(det);
        out["bound"] = num(bound);
        out["tight"] = tight != 0;
    });

    // walsh-solve
    auto* ws = app.add_subcommand("walsh-solve", "Solve C nu = a delta_empty");
    unsigned ws_n = 1;
    double ws_a = 1.0;
    ws->add_option("--n", ws_n, "Ground set size")->required();
    ws->add_option("--a", ws_a, "Right-hand side a")->required();
    actions.emplace_back(ws, [&] {
        const auto nu = two_call<double>(
            [&](double* b, size_t c, size_t* n) { return mflab_solve_uniform_system(ws_n, ws_a, b, c, n); });
        double res = 0;
        check(mflab_uniform_system_residual(nu.data(), nu.size(), ws_a, &res));
        ordered_json arr = ordered_json::array();
        for (double v : nu) arr.push_back(num(v));
        out = ordered_json{{"nu", arr}};
        out["subcommand"] = "walsh-solve";
        out["parameters"] = {{"n", ws_n}, {"a", num(ws_a)}};
        out["residual"] = num(res);
    });

    // barker
    auto* bar = app.add_subcommand("barker", "Exhaustive Barker sequence search");
    size_t bar_max = 13;
    bool bar_json = false;
    bar->add_option("--max-len", bar_max, "Search lengths 1..max-len (<= 32)");
    bar->add_flag("--json", bar_json, "JSON output (the default)");
    actions.emplace_back(bar, [&] {
        mflab_strings* raw = nullptr;
        check(mflab_barker_search(bar_max, &raw));
        Strings list(raw);
        std::vector<std::vector<std::string>> by_len(bar_max + 1);
        for (const auto& s : to_vector(list.get())) by_len[s.size()].push_back(s);
        out = envelope("barker", {{"max_len", bar_max}});
        ordered_json seqs = ordered_json::object();
        std::vector<size_t> lengths;
        for (size_t len = 1; len <= bar_max; ++len) {
            seqs[std::to_string(len)] = by_len[len];
            if (!by_len[len].empty()) lengths.push_back(len);
        }
        out["lengths"] = lengths;
        out["sequences"] = seqs;
    });

    // correlate
    auto* cor = app.add_subcommand("correlate", "Chowla-type correlation sums");
    std::string cor_fn = "mobius";
    std::vector<uint64_t> cor_shifts{0};
    std::vector<unsigned> cor_exps{1};
    std::vector<uint64_t> cor_n;
    std::string cor_mode = "cesaro";
    std::string cor_norm = "logN";
    std::string cor_out;
    cor->add_option("--function", cor_fn, "mobius | liouville");
    cor->add_option("--shifts", cor_shifts, "0 = a_0 < a_1 < ...")->delimiter(',');
    cor->add_option("--exponents", cor_exps, "1 or 2 per shift")->delimiter(',');
    cor->add_option("--N", cor_n, "Range(s), comma-separated")->delimiter(',')->required();
    cor->add_option("--mode", cor_mode, "cesaro | log")->check(CLI::IsMember({"cesaro", "log"}));
    cor->add_option("--normalizer", cor_norm, "logN | ellN (log mode)")->check(CLI::IsMember({"logN", "ellN"}));
    cor->add_option("--out", cor_out, "csv for CSV output")->check(CLI::IsMember({"csv", "json"}));
    actions.emplace_back(cor, [&] {
        const auto fn = parse_function(cor_fn);
        if (cor_shifts.size() != cor_exps.size())
            throw CLI::ValidationError("--exponents", "one exponent per shift");
        uint64_t top = 0;
        for (auto n : cor_n) top = std::max(top, n);
        mflab_table* raw = nullptr;
        check(mflab_table_sieve(fn, top + cor_shifts.back(), &raw));
        Table t(raw);
        const auto avg = cor_mode == "log" ? MFLAB_LOGARITHMIC : MFLAB_CESARO;
        const auto norm = cor_norm == "ellN" ? MFLAB_ELL_N : MFLAB_LOG_N;
        const std::string norm_label = avg == MFLAB_CESARO ? "none" : cor_norm;

        std::ostringstream csv;
        csv << "N,mode,normalizer,value\n";
        ordered_json rows = ordered_json::array();
        int density = 0;
        for (auto n : cor_n) {
            double v = 0;
            check(mflab_chowla_sum(t.get(), cor_shifts.data(), cor_exps.data(), cor_shifts.size(), n, avg, norm, &v,
                                   &density));
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.12g", v);
            csv << n << ',' << cor_mode << ',' << norm_label << ',' << buf << '\n';
            rows.push_back({{"N", n}, {"value", num(v)}});
        }
        if (cor_out == "csv") {
            std::cout << csv.str();
            out = nullptr;
            return;
        }
        out = envelope("correlate", {{"function", function_name(fn)},
                                     {"shifts", cor_shifts},
                                     {"exponents", cor_exps},
                                     {"mode", cor_mode},
                                     {"normalizer", norm_label}});
        out["density_mode"] = density != 0;
        out["results"] = rows;
    });

    // orbit-coverage
    auto* orb = app.add_subcommand("orbit-coverage", "Admissible blocks seen along the Mobius orbit");
    size_t orb_len = 4;
    uint64_t orb_n = 0;
    orb->add_option("--len", orb_len, "Block length");
    orb->add_option("--N", orb_n, "Windows starting at 1..N")->required();
    actions.emplace_back(orb, [&] {
        mflab_orbit_coverage cov{};
        mflab_strings* raw = nullptr;
        check(mflab_orbit_block_coverage(orb_len, orb_n, nullptr, &cov, &raw));
        Strings missing(raw);
        out = envelope("orbit-coverage", {{"len", orb_len}, {"N", orb_n}});
        out["seen"] = cov.seen;
        out["admissible_total"] = cov.admissible_total;
        out["ratio"] = num(cov.ratio);
        out["missing_sample"] = to_vector(missing.get());
    });

    // sample
    auto* smp = app.add_subcommand("sample", "Samples of the truncated Chowla (or Mirsky) measure");
    uint64_t smp_len = 0;
    uint64_t smp_cutoff = 0;
    uint64_t smp_seed = 0;
    uint64_t smp_count = 1;
    std::string smp_out;
    std::string smp_kind = "chowla";
    smp->add_option("--len", smp_len, "Window length N")->required();
    smp->add_option("--cutoff", smp_cutoff, "Prime cutoff P (default 1e5 * N)");
    smp->add_option("--seed", smp_seed, "Seed")->required();
    smp->add_option("--count", smp_count, "Number of samples");
    smp->add_option("--out", smp_out, "Write one line per sample (+, -, 0) to this file");
    smp->add_option("--kind", smp_kind, "chowla | mirsky")->check(CLI::IsMember({"chowla", "mirsky"}));
    actions.emplace_back(smp, [&] {
        if (smp_cutoff == 0) smp_cutoff = mflab_default_cutoff(smp_len);
        const mflab_sample_config cfg{smp_cutoff, smp_len, smp_seed};
        mflab_sampler* raw = nullptr;
        check(mflab_sampler_new(&cfg, &raw));
        Sampler s(raw);
        std::vector<int8_t> x(smp_len);
        std::vector<std::string> lines;
        std::ofstream file;
        if (!smp_out.empty()) {
            file.open(smp_out);
            if (!file) throw Failure("cannot open '" + smp_out + "' for writing");
        }
        for (uint64_t i = 0; i < smp_count; ++i) {
            check(smp_kind == "mirsky" ? mflab_sampler_mirsky(s.get(), i, x.data(), x.size())
                                       : mflab_sampler_chowla(s.get(), i, x.data(), x.size()));
            if (file.is_open()) file << sample_line(x) << '\n';
            else lines.push_back(sample_line(x));
        }
        if (file.is_open() && !file.flush()) throw Failure("write to '" + smp_out + "' failed");
        out = envelope("sample", {{"len", smp_len}, {"cutoff", smp_cutoff}, {"count", smp_count}, {"kind", smp_kind}});
        out["seed"] = smp_seed;
        out["truncation_bound"] = num(double(smp_len) / double(smp_cutoff));
        out["algorithm"] = mflab_sampler_algorithm();
        if (file.is_open()) out["path"] = smp_out;
        else out["samples"] = lines;
    });

    // report
    auto* rep = app.add_subcommand("report", "Run the acceptance suite");
    bool rep_quick = false;
    uint64_t rep_seed = 42;
    rep->add_flag("--quick", rep_quick, "Smaller ranges and sample counts, same tolerances");
    rep->add_option("--seed", rep_seed, "Seed for the stochastic criteria");
    actions.emplace_back(rep, [&] {
        mflab_report* raw = nullptr;
        check(mflab_report_run(rep_quick ? 1 : 0, rep_seed, &raw));
        Report r(raw);
        out = envelope("report", {{"quick", rep_quick}});
        out["seed"] = rep_seed;
        ordered_json items = ordered_json::array();
        for (size_t i = 0; i < mflab_report_count(r.get()); ++i) {
            mflab_criterion c{};
            check(mflab_report_item(r.get(), i, &c));
            items.push_back({{"id", c.id},
                             {"name", c.name},
                             {"status", c.diagnostic ? "diagnostic" : (c.passed ? "pass" : "fail")},
                             {"passed", c.passed != 0},
                             {"value", num(c.value)},
                             {"threshold", num(c.threshold)},
                             {"detail", c.detail}});
        }
        out["criteria"] = items;
        const bool ok = mflab_report_passed(r.get()) != 0;
        out["passed"] = ok;
        if (!ok) exit_code = kExitAssert;
    });

    const auto start = std::chrono::steady_clock::now();
    try {
        app.parse(argc, argv);
        mflab_set_threads(threads);
        for (auto& [sub, action] : actions)
            if (sub->parsed()) action();
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const Failure& e) {
        std::cerr << "mflab: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "mflab: " << e.what() << '\n';
        return kExitUsage;
    }

    if (!out.is_null()) {
        if (timing)
            out["wall_time"] = num(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        emit(out);
    }
    return exit_code;
}
