#include <doctest.h>

#include <algorithm>
#include <random>

#include "thermonet/error.hpp"
#include "thermonet/preprocess.hpp"

using namespace thermonet;

namespace {

TimeSeries raw(std::vector<double> v, double dt = 0.5, std::string label = "s") {
    return TimeSeries(std::move(v), dt, std::move(label), Stage::RawMean);
}

TimeSeries detrended(std::vector<double> v, double dt = 0.5) {
    return detrend_linear(raw(std::move(v), dt)).first;
}

// Normal equations from raw moments in extended precision; independent of
// the centred two-pass formulation used by the library.
struct LineFit {
    long double slope, intercept;
};
LineFit normal_equations(const std::vector<double>& y) {
    long double n = y.size(), st = 0, stt = 0, sy = 0, sty = 0;
    for (std::size_t t = 0; t < y.size(); ++t) {
        st += t;
        stt += static_cast<long double>(t) * t;
        sy += y[t];
        sty += t * static_cast<long double>(y[t]);
    }
    const long double slope = (n * sty - st * sy) / (n * stt - st * st);
    return {slope, (sy - slope * st) / n};
}

std::vector<double> random_walk(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> step(0.0, 3.0);
    std::vector<double> v(n);
    double x = 1000.0 * std::uniform_real_distribution<double>(-1, 1)(rng);
    for (auto& e : v) e = (x += step(rng)) + 0.05 * static_cast<double>(&e - v.data());
    return v;
}

std::string error_tag(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.tag();
    }
    return "";
}

}  // namespace

TEST_CASE("baseline") {
    CHECK(baseline(raw({10, 12, 11})).values() == std::vector<double>{0, 2, 1});
    CHECK(baseline(raw({4, 4, 4})).values() == std::vector<double>{0, 0, 0});
    const TimeSeries one = baseline(raw({5}));
    CHECK(one.values() == std::vector<double>{0});
    CHECK(one.stage() == Stage::Baselined);
    CHECK(error_tag([] { baseline(baseline(raw({1, 2}))); }) == "wrong-stage");
}

TEST_CASE("detrend_linear examples") {
    SUBCASE("exact line") {
        const auto [r, fit] = detrend_linear(raw({1, 3, 5, 7}));
        CHECK(fit.slope == doctest::Approx(2.0));
        CHECK(fit.intercept == doctest::Approx(1.0));
        for (double v : r.values()) CHECK(std::fabs(v) <= 1e-12);
        CHECK(r.stage() == Stage::Detrended);
    }
    SUBCASE("least-squares fit against the normal-equation oracle") {
        const std::vector<double> y{0, 2, 1, 3};
        const LineFit oracle = normal_equations(y);
        CHECK(static_cast<double>(oracle.slope) == doctest::Approx(0.8));
        CHECK(static_cast<double>(oracle.intercept) == doctest::Approx(0.3));
        const auto [r, fit] = detrend_linear(raw(y));
        CHECK(fit.slope == doctest::Approx(0.8).epsilon(1e-14));
        CHECK(fit.intercept == doctest::Approx(0.3).epsilon(1e-14));
        const std::vector<double> expected{-0.3, 0.9, -0.9, 0.3};
        for (std::size_t i = 0; i < 4; ++i) CHECK(r.values()[i] == doctest::Approx(expected[i]).epsilon(1e-14));
    }
    SUBCASE("constant series") {
        const auto [r, fit] = detrend_linear(raw({6, 6, 6, 6, 6}));
        CHECK(fit.slope == 0.0);
        CHECK(fit.intercept == doctest::Approx(6.0));
        for (double v : r.values()) CHECK(v == 0.0);
    }
    SUBCASE("too short") { CHECK(error_tag([] { detrend_linear(raw({1})); }) == "too-short"); }
}

TEST_CASE("detrend_linear properties on random series") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng() % 500;
        const auto y = random_walk(rng, n);
        const auto [r, fit] = detrend_linear(raw(y));
        const LineFit oracle = normal_equations(y);
        const double scale = std::fabs(static_cast<double>(oracle.slope)) + 1.0;
        CHECK(fit.slope == doctest::Approx(static_cast<double>(oracle.slope)).epsilon(1e-9).scale(scale));

        double max_abs = 0;
        for (double v : y) max_abs = std::max(max_abs, std::fabs(v));
        long double sum = 0, moment = 0;
        for (std::size_t t = 0; t < n; ++t) {
            sum += r.values()[t];
            moment += t * static_cast<long double>(r.values()[t]);
        }
        const double bound = 1e-9 * static_cast<double>(n) * max_abs;
        CHECK(std::fabs(static_cast<double>(sum)) <= bound);
        CHECK(std::fabs(static_cast<double>(moment)) <= bound * static_cast<double>(n));
        CHECK(std::fabs(fit.residual_mean) <= 1e-9 * (max_abs + 1.0));

        // Idempotent.
        const TimeSeries again = TimeSeries(r.values(), r.dt(), r.label(), Stage::RawMean);
        const auto fit2 = detrend_linear(again).second;
        CHECK(std::fabs(fit2.slope) <= 1e-9 * (max_abs + 1.0));
        CHECK(std::fabs(fit2.intercept) <= 1e-9 * (max_abs + 1.0) * static_cast<double>(n));

        // Baseline shift is absorbed in the intercept.
        const auto via_baseline = detrend_linear(baseline(raw(y))).first;
        for (std::size_t t = 0; t < n; ++t) {
            CHECK(via_baseline.values()[t] == doctest::Approx(r.values()[t]).epsilon(1e-9).scale(max_abs + 1.0));
        }
    }
}

TEST_CASE("normalize") {
    CHECK(normalize(detrended({0, 0, 0}), 4.0).values() == std::vector<double>{0, 0, 0});
    const TimeSeries r = detrended({-1, 1, -1, 1});
    const TimeSeries half = normalize(r, 2.0);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(half.values()[i] == r.values()[i] / 2.0);
    CHECK(half.stage() == Stage::Normalized);
    CHECK(error_tag([&] { normalize(r, 0.0); }) == "bad-scale");
    CHECK(error_tag([&] { normalize(r, -1.0); }) == "bad-scale");
    CHECK(error_tag([&] { normalize(r, std::numeric_limits<double>::infinity()); }) == "bad-scale");
    CHECK(error_tag([] { normalize(raw({1, 2}), 1.0); }) == "wrong-stage");
}

TEST_CASE("normalize of a two-sample residual") {
    // Residual pair built directly so the scale division is the only step.
    const TimeSeries residual = TimeSeries({-1.0, 1.0}, 1.0, "r", Stage::RawMean).advance({-1.0, 1.0}, Stage::Detrended);
    CHECK(normalize(residual, 2.0).values() == std::vector<double>{-0.5, 0.5});
}

TEST_CASE("amplitude_scale falls back in order") {
    const TimeSeries b = baseline(raw({10, 12, 8, 10}));
    const TimeSeries r = detrend_linear(b).first;
    CHECK(amplitude_scale(b, r) == doctest::Approx((0.0 + 2 + 2 + 0) / 4.0));

    const TimeSeries flat = baseline(raw({3, 3, 3}));
    const TimeSeries flat_r = detrend_linear(flat).first;
    CHECK(amplitude_scale(flat, flat_r) == 1.0);
}

TEST_CASE("pool") {
    const TimeSeries a = normalize(detrended({1, 5, 2}), 1.0);
    const TimeSeries b = normalize(detrended({0, 3, 1, 9}), 1.0);
    const std::vector<TimeSeries> both{a, b};
    const TimeSeries p = pool(both);
    CHECK(p.size() == 7);
    CHECK(std::equal(a.values().begin(), a.values().end(), p.values().begin()));
    CHECK(std::equal(b.values().begin(), b.values().end(), p.values().begin() + 3));
    CHECK(p.stage() == Stage::Pooled);
    CHECK(p.label() == "s+s");

    const std::vector<TimeSeries> single{a};
    CHECK(pool(single).values() == a.values());

    const std::vector<TimeSeries> mixed{a, normalize(detrended({1, 2, 4}, 0.25), 1.0)};
    CHECK(error_tag([&] { pool(mixed); }) == "mixed-dt");
    CHECK(error_tag([] { pool(std::span<const TimeSeries>{}); }) == "empty-pool");
    const std::vector<TimeSeries> wrong{detrended({1, 2, 4})};
    CHECK(error_tag([&] { pool(wrong); }) == "wrong-stage");
}

TEST_CASE("pool preserves the multiset of values") {
    std::mt19937_64 rng(4);
    std::vector<TimeSeries> parts;
    std::vector<double> all;
    for (int i = 0; i < 6; ++i) {
        const TimeSeries s = prepare_for_pooling(raw(random_walk(rng, 3 + rng() % 40)));
        all.insert(all.end(), s.values().begin(), s.values().end());
        parts.push_back(s);
    }
    auto pooled = pool(parts).values();
    std::sort(all.begin(), all.end());
    std::sort(pooled.begin(), pooled.end());
    CHECK(pooled == all);
}

TEST_CASE("stage transitions only move forward") {
    const TimeSeries s = raw({1, 2, 3});
    CHECK_THROWS_AS(s.advance({1}, Stage::RawMean), Error);
    const TimeSeries p = s.advance({1}, Stage::Pooled);
    CHECK_THROWS_AS(p.advance({1}, Stage::Detrended), Error);
    CHECK_THROWS_AS(TimeSeries({}, 1.0, "x", Stage::RawMean), Error);
    CHECK_THROWS_AS(TimeSeries({1.0}, 0.0, "x", Stage::RawMean), Error);
}
