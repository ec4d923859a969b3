#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coreloss/waveform.hpp"

namespace coreloss {

inline constexpr std::size_t kSequenceFeatureCount = 33;
inline constexpr std::size_t kFeatureVectorWidth = 37;

using SequenceFeatures = std::array<double, kSequenceFeatureCount>;

/// Names and order are part of the model-file contract; never reorder.
inline const std::vector<std::string>& sequence_feature_names() {
    static const std::vector<std::string> names = {
        // flux-density statistics
        "b_mean", "b_std", "b_min", "b_max", "b_peak_to_peak", "b_rms", "b_mean_abs",
        "b_skewness", "b_kurtosis", "b_crest_factor", "b_form_factor", "b_zero_crossings",
        "b_iqr",
        // dB/dt statistics
        "db_mean", "db_std", "db_min", "db_max", "db_peak_to_peak", "db_rms", "db_mean_abs",
        "db_skewness", "db_kurtosis", "db_zero_crossings",
        // spectral
        "spec_fundamental", "spec_h2_ratio", "spec_h3_ratio", "spec_h4_ratio", "spec_h5_ratio",
        "spec_h6_ratio", "spec_h7_ratio", "spec_thd", "spec_centroid", "spec_entropy"};
    return names;
}

inline const std::vector<std::string>& feature_vector_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v = sequence_feature_names();
        v.insert(v.end(), {"temperature_z", "frequency_z", "material_index", "waveform_index"});
        return v;
    }();
    return names;
}

/// FNV-1a over the comma-joined feature names; guards model/file compatibility.
inline std::uint64_t feature_order_checksum() {
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= static_cast<unsigned char>(',');
        h *= 1099511628211ull;
    };
    for (const auto& n : feature_vector_names()) mix(n);
    return h;
}

namespace detail {

struct Moments {
    double mean = 0, stddev = 0, skewness = 0, kurtosis = 0;
};

inline Moments moments(std::span<const double> v) {
    Moments m;
    const double n = static_cast<double>(v.size());
    for (double x : v) m.mean += x;
    m.mean /= n;
    double m2 = 0, m3 = 0, m4 = 0;
    for (double x : v) {
        const double d = x - m.mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    m.stddev = std::sqrt(m2);
    // Degenerate fallback: higher moments of a constant signal are 0.
    if (m2 > 0.0) {
        m.skewness = m3 / (m.stddev * m2);
        m.kurtosis = m4 / (m2 * m2) - 3.0;
    }
    return m;
}

/// Circular count of sign changes, ignoring exact zeros.
inline double zero_crossings(std::span<const double> v) {
    int first_sign = 0, prev_sign = 0;
    std::size_t crossings = 0;
    for (double x : v) {
        const int s = (x > 0.0) ? 1 : (x < 0.0 ? -1 : 0);
        if (s == 0) continue;
        if (prev_sign != 0 && s != prev_sign) ++crossings;
        if (first_sign == 0) first_sign = s;
        prev_sign = s;
    }
    if (first_sign != 0 && prev_sign != first_sign) ++crossings;  // wrap-around
    return static_cast<double>(crossings);
}

/// Linear-interpolation quantile over a sorted copy.
inline double quantile(std::vector<double> sorted, double p) {
    const double h = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

/// Magnitudes of DFT bins 1..max_bin (bin 0 excluded), scaled by 2/N so a pure
/// sine of amplitude A yields A at its bin.
inline std::vector<double> harmonic_magnitudes(std::span<const double> v, std::size_t max_bin) {
    const std::size_t n = v.size();
    std::vector<double> cos_tab(n), sin_tab(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double ang = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(n);
        cos_tab[m] = std::cos(ang);
        sin_tab[m] = std::sin(ang);
    }
    std::vector<double> mags(max_bin + 1, 0.0);
    for (std::size_t k = 1; k <= max_bin; ++k) {
        double re = 0.0, im = 0.0;
        std::size_t idx = 0;
        for (std::size_t t = 0; t < n; ++t) {
            re += v[t] * cos_tab[idx];
            im -= v[t] * sin_tab[idx];
            idx += k;
            if (idx >= n) idx -= n;
        }
        mags[k] = 2.0 * std::hypot(re, im) / static_cast<double>(n);
    }
    return mags;
}

}  // namespace detail

/// The 33 sequence features, in the order of sequence_feature_names().
/// Degenerate waveforms fall back to 0 wherever a defining denominator vanishes.
inline SequenceFeatures extract_features(const FluxWaveform& w) {
    w.validate();
    SequenceFeatures out{};
    std::size_t at = 0;
    const auto& b = w.values;

    const auto bm = detail::moments(b);
    const auto [b_lo_it, b_hi_it] = std::minmax_element(b.begin(), b.end());
    double b_rms = 0, b_mean_abs = 0;
    for (double x : b) {
        b_rms += x * x;
        b_mean_abs += std::fabs(x);
    }
    b_rms = std::sqrt(b_rms / static_cast<double>(b.size()));
    b_mean_abs /= static_cast<double>(b.size());
    const double b_abs_peak = std::max(std::fabs(*b_lo_it), std::fabs(*b_hi_it));

    std::vector<double> centered(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) centered[i] = b[i] - bm.mean;
    std::vector<double> sorted(b.begin(), b.end());
    std::sort(sorted.begin(), sorted.end());

    out[at++] = bm.mean;
    out[at++] = bm.stddev;
    out[at++] = *b_lo_it;
    out[at++] = *b_hi_it;
    out[at++] = *b_hi_it - *b_lo_it;
    out[at++] = b_rms;
    out[at++] = b_mean_abs;
    out[at++] = bm.skewness;
    out[at++] = bm.kurtosis;
    out[at++] = b_rms > 0.0 ? b_abs_peak / b_rms : 0.0;
    out[at++] = b_mean_abs > 0.0 ? b_rms / b_mean_abs : 0.0;
    out[at++] = detail::zero_crossings(centered);
    out[at++] = detail::quantile(sorted, 0.75) - detail::quantile(sorted, 0.25);

    const std::vector<double> d = derivative(w);
    const auto dm = detail::moments(d);
    const auto [d_lo_it, d_hi_it] = std::minmax_element(d.begin(), d.end());
    double d_rms = 0, d_mean_abs = 0;
    for (double x : d) {
        d_rms += x * x;
        d_mean_abs += std::fabs(x);
    }
    d_rms = std::sqrt(d_rms / static_cast<double>(d.size()));
    d_mean_abs /= static_cast<double>(d.size());

    out[at++] = dm.mean;
    out[at++] = dm.stddev;
    out[at++] = *d_lo_it;
    out[at++] = *d_hi_it;
    out[at++] = *d_hi_it - *d_lo_it;
    out[at++] = d_rms;
    out[at++] = d_mean_abs;
    out[at++] = dm.skewness;
    out[at++] = dm.kurtosis;
    out[at++] = detail::zero_crossings(d);

    // Spectral block. Ratios and THD are normalized by |X1|; when the
    // fundamental is degenerate (pure higher harmonic) the dominant bin
    // takes its place so the ratios stay bounded.
    const std::size_t max_bin = 64;
    const std::vector<double> mags = detail::harmonic_magnitudes(b, max_bin);
    const double dominant = *std::max_element(mags.begin() + 1, mags.end());
    const double fundamental = mags[1];
    const double ratio_base =
        (fundamental > 1e-9 * dominant) ? fundamental : dominant;

    out[at++] = fundamental;
    for (std::size_t k = 2; k <= 7; ++k)
        out[at++] = ratio_base > 0.0 ? mags[k] / ratio_base : 0.0;

    double harm_sq = 0.0;
    for (std::size_t k = 2; k <= 20; ++k) harm_sq += mags[k] * mags[k];
    out[at++] = ratio_base > 0.0 ? std::sqrt(harm_sq) / ratio_base : 0.0;

    double mag_sum = 0.0, weighted = 0.0, power_sum = 0.0;
    for (std::size_t k = 1; k <= max_bin; ++k) {
        mag_sum += mags[k];
        weighted += static_cast<double>(k) * mags[k];
        power_sum += mags[k] * mags[k];
    }
    out[at++] = mag_sum > 0.0 ? weighted / mag_sum : 0.0;

    double entropy = 0.0;
    if (power_sum > 0.0) {
        for (std::size_t k = 1; k <= max_bin; ++k) {
            const double p = mags[k] * mags[k] / power_sum;
            if (p > 0.0) entropy -= p * std::log(p);
        }
        entropy /= std::log(static_cast<double>(max_bin));
    }
    out[at++] = entropy;

    return out;
}

}  // namespace coreloss
