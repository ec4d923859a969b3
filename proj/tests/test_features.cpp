#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "coreloss/features.hpp"
#include "coreloss/rng.hpp"

using namespace coreloss;

namespace {

std::map<std::string, double> named(const SequenceFeatures& f) {
    std::map<std::string, double> m;
    const auto& names = sequence_feature_names();
    for (std::size_t i = 0; i < names.size(); ++i) m[names[i]] = f[i];
    return m;
}

FluxWaveform harmonic(std::size_t k, double amplitude, double frequency = 1e5) {
    FluxWaveform w;
    w.frequency = frequency;
    w.values.resize(kWaveformLength);
    for (std::size_t i = 0; i < kWaveformLength; ++i)
        w.values[i] = amplitude * std::sin(2.0 * kPi * static_cast<double>(k * i) / 1024.0);
    return w;
}

FluxWaveform random_waveform(Rng& rng) {
    // Band-limited random periodic signal: a few random harmonics.
    FluxWaveform w;
    w.frequency = rng.uniform(5e4, 5e5);
    w.values.assign(kWaveformLength, 0.0);
    const int n_harm = 1 + static_cast<int>(rng.uniform_index(5));
    for (int h = 0; h < n_harm; ++h) {
        const double amp = rng.uniform(0.01, 0.2);
        const double phase = rng.uniform(0.0, 2.0 * kPi);
        const std::size_t k = 1 + rng.uniform_index(10);
        for (std::size_t i = 0; i < kWaveformLength; ++i)
            w.values[i] +=
                amp * std::sin(2.0 * kPi * static_cast<double>(k * i) / 1024.0 + phase);
    }
    return w;
}

}  // namespace

TEST_CASE("feature list shape and names") {
    CHECK(sequence_feature_names().size() == kSequenceFeatureCount);
    CHECK(feature_vector_names().size() == kFeatureVectorWidth);
    // Checksum is stable across calls (part of the model-file contract).
    CHECK(feature_order_checksum() == feature_order_checksum());
}

TEST_CASE("pure sine features") {
    const double amp = 0.1;
    const auto f = named(extract_features(harmonic(1, amp)));
    CHECK(std::fabs(f.at("b_mean")) < 1e-12);
    CHECK(f.at("b_peak_to_peak") == Catch::Approx(2.0 * amp).margin(1e-12));
    CHECK(f.at("spec_thd") < 1e-9);
    CHECK(f.at("b_zero_crossings") == 2.0);
    CHECK(f.at("spec_fundamental") == Catch::Approx(amp).epsilon(1e-9));
    CHECK(f.at("spec_centroid") == Catch::Approx(1.0).margin(1e-6));
    CHECK(std::fabs(f.at("spec_entropy")) < 1e-9);
    // RMS of a sine is A/sqrt(2); crest factor sqrt(2).
    CHECK(f.at("b_rms") == Catch::Approx(amp / std::sqrt(2.0)).epsilon(1e-6));
    CHECK(f.at("b_crest_factor") == Catch::Approx(std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("constant waveform falls back gracefully") {
    const FluxWaveform w{std::vector<double>(kWaveformLength, 0.4), 1e5};
    const auto f = named(extract_features(w));
    CHECK(f.at("b_std") == 0.0);
    CHECK(f.at("b_crest_factor") == 0.0);
    CHECK(f.at("b_skewness") == 0.0);
    CHECK(f.at("b_kurtosis") == 0.0);
    CHECK(f.at("spec_entropy") == 0.0);
    CHECK(f.at("b_zero_crossings") == 0.0);
    CHECK(f.at("db_zero_crossings") == 0.0);
    for (double v : f) {
        (void)v;
    }
    for (const auto& [k, v] : f) CHECK(std::isfinite(v));
}

TEST_CASE("scaling doubles covariant features and fixes invariant ones") {
    Rng rng(71);
    const std::vector<std::string> covariant = {"b_mean", "b_std", "b_min", "b_max",
                                                "b_peak_to_peak", "b_rms", "b_mean_abs",
                                                "b_iqr", "spec_fundamental"};
    const std::vector<std::string> invariant = {
        "b_skewness", "b_kurtosis", "b_crest_factor", "b_form_factor", "b_zero_crossings",
        "spec_h2_ratio", "spec_h3_ratio", "spec_h4_ratio", "spec_h5_ratio", "spec_h6_ratio",
        "spec_h7_ratio", "spec_thd", "spec_centroid", "spec_entropy"};
    for (int trial = 0; trial < 10; ++trial) {
        const FluxWaveform w = random_waveform(rng);
        FluxWaveform scaled = w;
        for (double& v : scaled.values) v *= 2.0;
        const auto a = named(extract_features(w));
        const auto b = named(extract_features(scaled));
        for (const auto& name : covariant) {
            const double expect = 2.0 * a.at(name);
            CHECK(std::fabs(b.at(name) - expect) <=
                  1e-9 * std::max(1.0, std::fabs(expect)));
        }
        for (const auto& name : invariant) {
            CHECK(std::fabs(b.at(name) - a.at(name)) <=
                  1e-9 * std::max(1.0, std::fabs(a.at(name))));
        }
    }
}

TEST_CASE("time reversal preserves order statistics exactly") {
    Rng rng(73);
    const std::vector<std::string> order_stats = {"b_mean", "b_std",  "b_min", "b_max",
                                                  "b_peak_to_peak", "b_rms", "b_iqr"};
    for (int trial = 0; trial < 10; ++trial) {
        const FluxWaveform w = random_waveform(rng);
        FluxWaveform rev = w;
        std::reverse(rev.values.begin(), rev.values.end());
        const auto a = named(extract_features(w));
        const auto b = named(extract_features(rev));
        for (const auto& name : order_stats) CHECK(a.at(name) == b.at(name));
    }
}

TEST_CASE("harmonic ratios isolate a pure k-th harmonic") {
    for (std::size_t k = 1; k <= 7; ++k) {
        const auto f = named(extract_features(harmonic(k, 0.1)));
        for (std::size_t j = 2; j <= 7; ++j) {
            const double r = f.at("spec_h" + std::to_string(j) + "_ratio");
            if (j == k) {
                CHECK(r == Catch::Approx(1.0).epsilon(1e-9));
            } else {
                CHECK(r <= 1e-6);
            }
        }
        CHECK(f.at("spec_centroid") == Catch::Approx(static_cast<double>(k)).margin(1e-6));
    }
}

TEST_CASE("features are finite for random non-constant waveforms") {
    Rng rng(79);
    for (int trial = 0; trial < 25; ++trial) {
        const SequenceFeatures f = extract_features(random_waveform(rng));
        for (double v : f) CHECK(std::isfinite(v));
    }
}

TEST_CASE("features are deterministic") {
    Rng rng(83);
    const FluxWaveform w = random_waveform(rng);
    CHECK(extract_features(w) == extract_features(w));
}
