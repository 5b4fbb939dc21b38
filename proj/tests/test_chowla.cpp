#include <mflab/admissible.hpp>
#include <mflab/chowla.hpp>
#include <mflab/error.hpp>
#include <mflab/mirsky.hpp>

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mflab;

namespace {

Block bin(const char* s) { return Block::parse(s, Alphabet::Binary); }
Block sgn(const char* s) { return Block::parse(s, Alphabet::Signed); }

// Every signed word of length n, as symbol vectors.
std::vector<std::vector<std::int8_t>> all_words(std::size_t n) {
    std::vector<std::vector<std::int8_t>> out{{}};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::vector<std::int8_t>> next;
        for (const auto& w : out)
            for (std::int8_t s : {0, 1, -1}) {
                auto v = w;
                v.push_back(s);
                next.push_back(v);
            }
        out = std::move(next);
    }
    return out;
}

// F_{A,B} straight from the definition.
int fab_direct(std::uint64_t a_mask, std::uint64_t b_mask, const std::vector<std::int8_t>& w) {
    int v = 1;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (a_mask >> i & 1) v *= w[i];
        else if (b_mask >> i & 1) v *= w[i] * w[i];
    }
    return v;
}

} // namespace

TEST_CASE("signed cylinders") {
    SignedCylinder sc(bin("1011"), "+ - +");
    CHECK(sc.word().str() == "+0-+");
    CHECK(sc.base().str() == "1011");
    CHECK(sc.level() == 4);
    CHECK(sc.minus_positions() == SupportSet{3});
    CHECK(SignedCylinder(bin("11"), "+,-").word().str() == "+-");
    CHECK(SignedCylinder(sgn("0-")).base().str() == "01");
    CHECK_THROWS_AS(SignedCylinder(bin("11"), "+"), Error);
    CHECK_THROWS_AS(SignedCylinder(bin("1"), "+-"), Error);
    CHECK_THROWS_AS(SignedCylinder(bin("1"), "x"), Error);
    CHECK_THROWS_AS(SignedCylinder(sgn("+"), "+"), Error);
}

TEST_CASE("chowla cylinder values") {
    CHECK(chowla_cylinder(SignedCylinder(bin("1"), "+"), 10000).value == doctest::Approx(0.303964).epsilon(1e-4));
    const auto zero = chowla_cylinder(SignedCylinder(bin("0"), ""), 10000);
    CHECK(zero.value == doctest::Approx(0.392073).epsilon(1e-4));
    const auto pm = chowla_cylinder(SignedCylinder(bin("11"), "+-"), 10000);
    CHECK(pm.value == doctest::Approx(0.3226 / 4).epsilon(1e-3));
    CHECK(pm.error_bound == doctest::Approx(mirsky_cylinder(bin("11"), 10000).error_bound / 4));
    CHECK(chowla_cylinder(SignedCylinder(sgn("+-+-")), 1000).value == 0.0);
}

TEST_CASE("sign sums reproduce the Mirsky cylinder") {
    MirskyMeasure m(5000);
    for (std::size_t n = 1; n <= 6; ++n)
        for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
            std::string base;
            for (std::size_t i = 0; i < n; ++i) base.push_back(mask >> i & 1 ? '1' : '0');
            const auto b = bin(base.c_str());
            const auto k = b.support().size();
            const auto target = m.cylinder(b).value;
            double sum = 0;
            double first = -1;
            for (std::uint64_t minus = 0; minus < (1ull << k); ++minus) {
                std::string signs;
                for (std::size_t j = 0; j < k; ++j) signs.push_back(minus >> j & 1 ? '-' : '+');
                const double v = chowla_cylinder(SignedCylinder(b, signs), m).value;
                if (first < 0) first = v;
                CHECK(v == first); // one value across all sign patterns
                sum += v;
            }
            CAPTURE(base);
            CHECK(std::abs(sum - target) <= 1e-12);
        }
}

TEST_CASE("fab evaluation") {
    CHECK(eval_fab(FAB({1}, {}), sgn("+0")) == 1);
    CHECK(eval_fab(FAB({1}, {2}), sgn("-+")) == -1);
    CHECK(eval_fab(FAB({2}, {}), sgn("+0")) == 0);
    CHECK(eval_fab(FAB({}, {}), sgn("00")) == 1);
    CHECK(eval_fab(FAB({1}, {1}), sgn("-")) == -1); // overlap counts once
    CHECK(FAB({1, 2}, {2, 3}).squared == SupportSet{3});
    CHECK_THROWS_AS(eval_fab(FAB({3}, {}), sgn("++")), Error);
}

TEST_CASE("fab integrals at a level") {
    CHECK(std::abs(integral_fab_level(FAB({1}, {}), 1, 10000)) <= 1e-15);
    CHECK(integral_fab_level(FAB({}, {1}), 1, 10000) == doctest::Approx(0.6079).epsilon(1e-3));
    CHECK(std::abs(integral_fab_level(FAB({1}, {2}), 2, 10000)) <= 1e-15);
    CHECK(integral_fab_level(FAB({}, {}), 3, 1000) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(integral_fab_level(FAB({5}, {}), 4, 100), Error);
}

TEST_CASE("level tables: encoding, mass and consistency") {
    MirskyMeasure m(2000);
    CHECK_THROWS_AS(AdmissibleMeasureLevel(0), Error);
    CHECK_THROWS_AS(AdmissibleMeasureLevel(17), Error);

    for (std::size_t n = 1; n <= 6; ++n) {
        const auto lv = AdmissibleMeasureLevel::chowla(n, m);
        CHECK(lv.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
        // sorted codes, lexicographic words with 0 < + < -
        for (std::size_t i = 1; i < lv.size(); ++i) CHECK(lv.code(i - 1) < lv.code(i));
        for (std::size_t i = 0; i < lv.size(); ++i) {
            CHECK(lv.encode(lv.word(i)) == lv.code(i));
            CHECK(is_admissible_block(lv.word(i)));
            CHECK(lv.value_of(lv.word(i)) == lv.value(i));
            const auto c = chowla_cylinder(SignedCylinder(lv.word(i)), m).value;
            CHECK(lv.value(i) == doctest::Approx(c).epsilon(1e-9).scale(1.0));
        }
        // count equals sum over admissible supports of 2^|S|
        std::size_t expect = 0;
        for (const auto& b : enumerate_admissible_blocks(n, Alphabet::Binary))
            expect += std::size_t{1} << b.support().size();
        CHECK(lv.size() == expect);

        if (n < 6) {
            const auto up = AdmissibleMeasureLevel::chowla(n + 1, m);
            for (std::size_t i = 0; i < lv.size(); ++i) {
                const auto word = lv.word(i);
                const auto w = word.symbols();
                double s = 0;
                for (std::int8_t last : {0, 1, -1}) {
                    std::vector<std::int8_t> ext(w.begin(), w.end());
                    ext.push_back(last);
                    s += up.value_of(Block(ext, Alphabet::Signed));
                }
                CHECK(std::abs(s - lv.value(i)) <= 1e-12);
            }
        }
    }
    const auto lv3 = AdmissibleMeasureLevel::chowla(3, m);
    CHECK(lv3.word(0).str() == "000");
    CHECK(lv3.decode(lv3.encode(sgn("+0-"))).str() == "+0-");
    CHECK(lv3.encode(sgn("+0-")) == 1 * 9 + 0 * 3 + 2);
    CHECK(lv3.value_of(sgn("+++")) > 0.0);
    CHECK_THROWS_AS(lv3.encode(sgn("++")), Error);
}

TEST_CASE("integrals of F_{A,B} vanish against a brute-force sum") {
    MirskyMeasure m(1000);
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto lv = AdmissibleMeasureLevel::chowla(n, m);
        const auto words = all_words(n);
        for (std::uint64_t a = 0; a < (1ull << n); ++a)
            for (std::uint64_t b = 0; b < (1ull << n); ++b) {
                double s = 0;
                for (const auto& w : words) s += fab_direct(a, b, w) * lv.value_of(Block(w, Alphabet::Signed));
                std::vector<std::uint64_t> av, bv;
                for (std::size_t i = 0; i < n; ++i) {
                    if (a >> i & 1) av.push_back(i + 1);
                    if (b >> i & 1) bv.push_back(i + 1);
                }
                const double lib = integral_fab(FAB(SupportSet(av), SupportSet(bv)), lv);
                CHECK(lib == doctest::Approx(s).epsilon(1e-12).scale(1.0));
                if (a != 0) CHECK(std::abs(s) <= 1e-12);
                else {
                    // F_{0,B} integrates to the Mirsky density of "ones on B"
                    CHECK(s == doctest::Approx(m.pattern_density(SupportSet(bv)).value).epsilon(1e-9));
                }
            }
    }
}

TEST_CASE("uniqueness solve") {
    const auto one = uniqueness_solve(bin("1"), 0.6);
    REQUIRE(one.size() == 2);
    CHECK(one[0].word.str() == "+");
    CHECK(one[1].word.str() == "-");
    CHECK(one[0].value == doctest::Approx(0.3));
    CHECK(one[1].value == doctest::Approx(0.3));

    const auto zz = uniqueness_solve(bin("00"), 0.39);
    REQUIRE(zz.size() == 1);
    CHECK(zz[0].value == doctest::Approx(0.39));

    const auto two = uniqueness_solve(bin("11"), 0.32);
    REQUIRE(two.size() == 4);
    for (const auto& sv : two) CHECK(sv.value == doctest::Approx(0.08));
    CHECK(two[1].word.str() == "-+");
    CHECK(two[2].word.str() == "+-");
    CHECK_THROWS_AS(uniqueness_solve(bin("1"), -1.0), Error);
    CHECK_THROWS_AS(uniqueness_solve(sgn("+"), 1.0), Error);
}

TEST_CASE("verify the Chowla table") {
    MirskyMeasure m(10000);
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto r = verify_admissible_level(AdmissibleMeasureLevel::chowla(n, m), m);
        CAPTURE(n);
        CHECK(r.passed());
        CHECK(r.level == n);
        CHECK(r.cutoff == 10000);
        CHECK(r.total_mass == doctest::Approx(1.0));
        CHECK(r.checks[0].name == "shift_consistency");
        CHECK(r.checks[1].name == "squared_marginal");
        CHECK(r.checks[2].name == "vanishing_integrals");
        for (const auto& c : r.checks) CHECK(c.max_deviation <= 1e-12);
    }
}

TEST_CASE("verify rejects perturbed tables") {
    MirskyMeasure m(10000);
    SUBCASE("one sign pattern moved by 0.01") {
        auto lv = AdmissibleMeasureLevel::chowla(3, m);
        const auto w = sgn("+0+");
        lv.set(w, lv.value_of(w) + 0.01);
        const auto r = verify_admissible_level(lv, m);
        CHECK_FALSE(r.passed());
        CHECK_FALSE(r.checks[2].passed);
        CHECK(r.checks[2].max_deviation >= 0.01 - 1e-12);
    }
    SUBCASE("mass moved between sign patterns keeps the marginals") {
        auto lv = AdmissibleMeasureLevel::chowla(2, m);
        lv.set(sgn("+0"), lv.value_of(sgn("+0")) + 0.01);
        lv.set(sgn("-0"), lv.value_of(sgn("-0")) - 0.01);
        lv.set(sgn("0+"), lv.value_of(sgn("0+")) + 0.01);
        lv.set(sgn("0-"), lv.value_of(sgn("0-")) - 0.01);
        const auto r = verify_admissible_level(lv, m);
        CHECK(r.checks[0].passed);
        CHECK(r.checks[1].passed);
        CHECK_FALSE(r.checks[2].passed);
        CHECK(r.checks[2].max_deviation == doctest::Approx(0.02));
    }
    SUBCASE("uniform on three symbols") {
        AdmissibleMeasureLevel lv(1);
        lv.set(sgn("0"), 1.0 / 3);
        lv.set(sgn("+"), 1.0 / 3);
        lv.set(sgn("-"), 1.0 / 3);
        const auto r = verify_admissible_level(lv, m);
        CHECK_FALSE(r.checks[1].passed);
        CHECK(r.checks[1].max_deviation == doctest::Approx(2.0 / 3 - 0.6079).epsilon(1e-3));
        CHECK(r.checks[2].passed);
    }
    SUBCASE("level shift broken") {
        auto lv = AdmissibleMeasureLevel::chowla(2, m);
        lv.set(sgn("00"), lv.value_of(sgn("00")) + 0.05);
        lv.set(sgn("++"), lv.value_of(sgn("++")) - 0.05);
        const auto r = verify_admissible_level(lv, m);
        CHECK(r.checks[0].passed); // symmetric in both coordinates
        CHECK_FALSE(r.checks[1].passed);
        lv.set(sgn("0+"), lv.value_of(sgn("0+")) + 0.05);
        lv.set(sgn("00"), lv.value_of(sgn("00")) - 0.05);
        CHECK_FALSE(verify_admissible_level(lv, m).checks[0].passed);
    }
}

TEST_CASE("verify at a random perturbation scale") {
    MirskyMeasure m(3000);
    std::mt19937_64 rng(5);
    auto lv = AdmissibleMeasureLevel::chowla(4, m);
    const auto i = 1 + rng() % (lv.size() - 1); // index 0 is the zero word
    const auto w = lv.word(i);
    lv.set(w, lv.value(i) + 1e-6);
    const auto r = verify_admissible_level(lv, m);
    CHECK_FALSE(r.passed());
    // tol is respected: a 1e-12 move passes
    auto ok = AdmissibleMeasureLevel::chowla(4, m);
    ok.set(w, ok.value_of(w) + 1e-12);
    CHECK(verify_admissible_level(ok, m).passed());
}
