#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "coreloss/rng.hpp"
#include "coreloss/steinmetz.hpp"
#include "coreloss/waveform.hpp"

using namespace coreloss;

namespace {

/// Independent oracle for Eq.-3's angular integral:
/// integral_0^{2pi} |cos t|^a dt = 2*sqrt(pi)*Gamma((a+1)/2)/Gamma(a/2+1).
double cos_power_integral_closed_form(double a) {
    return 2.0 * std::sqrt(kPi) *
           std::exp(std::lgamma((a + 1.0) / 2.0) - std::lgamma(a / 2.0 + 1.0));
}

double ki_closed_form(const SteinmetzCoeffs& c) {
    return c.k / (std::pow(2.0 * kPi, c.a - 1.0) * std::pow(2.0, c.b - c.a) *
                  cos_power_integral_closed_form(c.a));
}

std::vector<LossPoint> planted_grid(const SteinmetzCoeffs& c, double noise_sigma,
                                    std::uint64_t seed) {
    Rng rng(seed);
    std::vector<LossPoint> pts;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const double f = 50e3 * std::pow(10.0, i / 4.0);
            const double b = 0.01 * std::pow(30.0, j / 4.0);
            double p = se_predict(c, f, b);
            if (noise_sigma > 0.0) p *= std::exp(rng.normal(0.0, noise_sigma));
            pts.push_back({f, b, p});
        }
    }
    return pts;
}

}  // namespace

TEST_CASE("se_predict evaluates the power law") {
    CHECK(se_predict({1.0, 1.0, 1.0, ""}, 2.0, 3.0) == 6.0);

    // High-precision direct evaluation with the 3C94 coefficients.
    const SteinmetzCoeffs c{1.500, 1.430, 2.471, "3C94"};
    Rng rng(11);
    for (int t = 0; t < 25; ++t) {
        const double f = rng.uniform(50e3, 500e3);
        const double b = rng.uniform(0.01, 0.3);
        const long double expected = 1.500L * std::pow((long double)f, 1.430L) *
                                     std::pow((long double)b, 2.471L);
        CHECK(se_predict(c, f, b) ==
              Catch::Approx(static_cast<double>(expected)).epsilon(1e-12));
    }
}

TEST_CASE("se_predict power-law homogeneity in frequency") {
    const SteinmetzCoeffs c{0.4, 1.578, 2.453, "N87"};
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        const double f = rng.uniform(1e4, 1e6);
        const double b = rng.uniform(0.01, 0.3);
        CHECK(se_predict(c, 2.0 * f, b) ==
              Catch::Approx(std::pow(2.0, c.a) * se_predict(c, f, b)).epsilon(1e-12));
    }
}

TEST_CASE("se_predict rejects non-positive inputs") {
    const SteinmetzCoeffs c{1.0, 1.5, 2.5, ""};
    CHECK_THROWS_AS(se_predict(c, 0.0, 0.1), NumericError);
    CHECK_THROWS_AS(se_predict(c, 1e5, -0.1), NumericError);
    CHECK_THROWS_AS(se_predict({0.0, 1.5, 2.5, ""}, 1e5, 0.1), NumericError);
}

TEST_CASE("ki quadrature matches the Gamma closed form") {
    // Hand cases first: a=2 gives integral pi, a=1 gives 4.
    CHECK(ki_compute({1.0, 2.0, 2.0, ""}) ==
          Catch::Approx(1.0 / (2.0 * kPi * kPi)).epsilon(1e-10));
    CHECK(ki_compute({1.0, 1.0, 1.0, ""}) == Catch::Approx(0.25).epsilon(1e-10));

    Rng rng(17);
    for (int t = 0; t < 200; ++t) {
        const SteinmetzCoeffs c{rng.uniform(0.1, 2.0), rng.uniform(1.0, 2.0),
                                rng.uniform(2.0, 3.0), ""};
        const double quad = ki_compute(c);
        const double closed = ki_closed_form(c);
        CHECK(std::fabs(quad - closed) <= 1e-8 * closed);
    }
}

TEST_CASE("ki is linear in k") {
    const SteinmetzCoeffs c{0.7, 1.4, 2.6, ""};
    const double base = ki_compute(c);
    for (double lambda : {0.5, 2.0, 7.25}) {
        SteinmetzCoeffs scaled = c;
        scaled.k *= lambda;
        CHECK(ki_compute(scaled) == Catch::Approx(lambda * base).epsilon(1e-12));
    }
}

TEST_CASE("iGSE reproduces SE on ideal sinusoids") {
    Rng rng(23);
    for (int t = 0; t < 100; ++t) {
        const SteinmetzCoeffs c{rng.uniform(0.1, 2.0), rng.uniform(1.0, 2.0),
                                rng.uniform(2.0, 3.0), ""};
        const double f = rng.uniform(50e3, 500e3);
        const double amp = rng.uniform(0.01, 0.3);
        const IgseModel m = IgseModel::from_coeffs(c);
        const double igse = igse_predict(m, synth_waveform(WaveClass::kSine, amp, f));
        const double se = se_predict(c, f, amp);
        CHECK(std::fabs(igse - se) <= 0.005 * se);
    }
}

TEST_CASE("iGSE closed form on the symmetric triangle") {
    // |dB/dt| = 2*f*dB everywhere, so P = ki * 2^a * f^a * dB^b. The two apex
    // samples of the central-difference derivative shave ~2/1024 off the
    // discrete time average.
    Rng rng(29);
    for (int t = 0; t < 20; ++t) {
        const SteinmetzCoeffs c{rng.uniform(0.1, 2.0), rng.uniform(1.0, 2.0),
                                rng.uniform(2.0, 3.0), ""};
        const double f = rng.uniform(50e3, 500e3);
        const double amp = rng.uniform(0.01, 0.3);
        const IgseModel m = IgseModel::from_coeffs(c);
        const double pred =
            igse_predict(m, synth_waveform(WaveClass::kTriangular, amp, f, {.duty = 0.5}));
        const double closed =
            m.ki * std::pow(2.0, c.a) * std::pow(f, c.a) * std::pow(2.0 * amp, c.b);
        CHECK(std::fabs(pred - closed) <= 0.003 * closed);
    }
}

TEST_CASE("iGSE of a constant waveform is zero and flagged") {
    const IgseModel m = IgseModel::from_coeffs({1.0, 1.5, 2.5, ""});
    FluxWaveform w{std::vector<double>(kWaveformLength, 0.3), 1e5};
    bool degenerate = false;
    CHECK(igse_predict(m, w, &degenerate) == 0.0);
    CHECK(degenerate);
}

TEST_CASE("predictions increase with k, f and amplitude") {
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        const SteinmetzCoeffs c{rng.uniform(0.1, 2.0), rng.uniform(1.0, 2.0),
                                rng.uniform(2.0, 3.0), ""};
        const double f = rng.uniform(50e3, 400e3);
        const double amp = rng.uniform(0.01, 0.2);
        const double base = se_predict(c, f, amp);
        CHECK(se_predict(c, f * 1.3, amp) > base);
        CHECK(se_predict(c, f, amp * 1.3) > base);
        SteinmetzCoeffs bigger = c;
        bigger.k *= 1.3;
        CHECK(se_predict(bigger, f, amp) > base);

        const IgseModel m = IgseModel::from_coeffs(c);
        const FluxWaveform w = synth_waveform(WaveClass::kSine, amp, f);
        const FluxWaveform w_big = synth_waveform(WaveClass::kSine, amp * 1.3, f);
        CHECK(igse_predict(m, w_big) > igse_predict(m, w));
    }
}

TEST_CASE("se_fit recovers planted coefficients exactly on noise-free data") {
    const SteinmetzCoeffs planted{0.400, 1.578, 2.453, "N87"};
    const SeFit fit = se_fit(planted_grid(planted, 0.0, 1));
    CHECK(std::fabs(fit.coeffs.k - planted.k) <= 1e-9 * planted.k);
    CHECK(std::fabs(fit.coeffs.a - planted.a) <= 1e-9 * planted.a);
    CHECK(std::fabs(fit.coeffs.b - planted.b) <= 1e-9 * planted.b);
    CHECK_FALSE(fit.exponent_warning);
}

TEST_CASE("se_fit tolerates multiplicative noise") {
    const SteinmetzCoeffs planted{1.500, 1.430, 2.471, "3C94"};
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const SeFit fit = se_fit(planted_grid(planted, 0.05, seed));
        CHECK(std::fabs(fit.coeffs.a - planted.a) <= 0.05);
        CHECK(std::fabs(fit.coeffs.b - planted.b) <= 0.05);
    }
}

TEST_CASE("se_fit rejects underdetermined designs") {
    const SteinmetzCoeffs c{1.0, 1.5, 2.5, ""};
    std::vector<LossPoint> two = {{1e5, 0.1, se_predict(c, 1e5, 0.1)},
                                  {2e5, 0.2, se_predict(c, 2e5, 0.2)},
                                  {2e5, 0.2, se_predict(c, 2e5, 0.2)}};
    CHECK_THROWS_AS(se_fit(two), DataError);

    std::vector<LossPoint> fixed_f, fixed_b;
    for (double x : {0.05, 0.1, 0.2, 0.3}) {
        fixed_f.push_back({1e5, x, se_predict(c, 1e5, x)});
        fixed_b.push_back({x * 1e6, 0.1, se_predict(c, x * 1e6, 0.1)});
    }
    CHECK_THROWS_WITH(se_fit(fixed_f), Catch::Matchers::ContainsSubstring("frequencies"));
    CHECK_THROWS_WITH(se_fit(fixed_b), Catch::Matchers::ContainsSubstring("B_max"));
}

TEST_CASE("se_fit flags exponents outside the physical range") {
    const SeFit fit = se_fit(planted_grid({1.0, 0.5, 3.5, ""}, 0.0, 1));
    CHECK(fit.exponent_warning);
}

TEST_CASE("igse_fit recovers coefficients planted with its own predictor") {
    const SteinmetzCoeffs planted{0.971, 1.490, 2.390, "N27"};
    const IgseModel m = IgseModel::from_coeffs(planted);

    Rng rng(37);
    std::vector<WaveformLossPoint> pts;
    for (int i = 0; i < 30; ++i) {
        const double f = rng.log_uniform(50e3, 500e3);
        const double amp = rng.log_uniform(0.01, 0.3);
        const WaveClass cls =
            std::array{WaveClass::kSine, WaveClass::kTriangular, WaveClass::kTrapezoidal}
                [rng.uniform_index(3)];
        WaveShape shape;
        shape.duty = rng.uniform(0.25, 0.75);
        shape.rise = rng.uniform(0.15, 0.4);
        shape.flat = rng.uniform(0.05, 0.25);
        const FluxWaveform w = synth_waveform(cls, amp, f, shape);
        pts.push_back({w, igse_predict(m, w)});
    }

    const IgseFit fit = igse_fit(pts);
    CHECK(fit.converged);
    CHECK_FALSE(fit.degenerate);
    CHECK(std::fabs(fit.model.coeffs.k - planted.k) <= 1e-3 * planted.k);
    CHECK(std::fabs(fit.model.coeffs.a - planted.a) <= 1e-3 * planted.a);
    CHECK(std::fabs(fit.model.coeffs.b - planted.b) <= 1e-3 * planted.b);
}

TEST_CASE("igse_fit on sine-only data agrees with the SE fit") {
    const SteinmetzCoeffs planted{0.561, 1.513, 2.321, "77"};
    Rng rng(41);
    std::vector<WaveformLossPoint> wave_pts;
    std::vector<LossPoint> se_pts;
    for (int i = 0; i < 25; ++i) {
        const double f = rng.log_uniform(50e3, 500e3);
        const double amp = rng.log_uniform(0.02, 0.25);
        const FluxWaveform w = synth_waveform(WaveClass::kSine, amp, f);
        const double p = se_predict(planted, f, amp);
        wave_pts.push_back({w, p});
        se_pts.push_back({f, amp, p});
    }
    const IgseFit igse = igse_fit(wave_pts);
    const SeFit se = se_fit(se_pts);

    Rng probe(43);
    for (int i = 0; i < 20; ++i) {
        const double f = probe.uniform(60e3, 450e3);
        const double amp = probe.uniform(0.03, 0.2);
        const double p_igse =
            igse_predict(igse.model, synth_waveform(WaveClass::kSine, amp, f));
        const double p_se = se_predict(se.coeffs, f, amp);
        CHECK(std::fabs(p_igse - p_se) <= 0.01 * p_se);
    }
}

TEST_CASE("igse_fit flags a degenerate single-point design") {
    const IgseModel m = IgseModel::from_coeffs({1.0, 1.5, 2.5, ""});
    const FluxWaveform w = synth_waveform(WaveClass::kSine, 0.1, 1e5);
    const std::vector<WaveformLossPoint> pts(8, {w, igse_predict(m, w)});
    const IgseFit fit = igse_fit(pts);
    CHECK(fit.degenerate);
}
