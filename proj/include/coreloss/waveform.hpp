#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "coreloss/errors.hpp"

namespace coreloss {

inline constexpr std::size_t kWaveformLength = 1024;
inline constexpr double kPi = 3.14159265358979323846;

enum class WaveClass { kSine, kTriangular, kTrapezoidal };

inline const char* to_string(WaveClass c) {
    switch (c) {
        case WaveClass::kSine: return "sine";
        case WaveClass::kTriangular: return "triangular";
        case WaveClass::kTrapezoidal: return "trapezoidal";
    }
    return "?";
}

inline WaveClass wave_class_from_string(const std::string& s) {
    if (s == "sine") return WaveClass::kSine;
    if (s == "triangular") return WaveClass::kTriangular;
    if (s == "trapezoidal") return WaveClass::kTrapezoidal;
    throw DataError("unknown waveform class '" + s + "' (expected sine|triangular|trapezoidal)");
}

/// One period of flux density, uniformly sampled at 1024 points.
struct FluxWaveform {
    std::vector<double> values;  // Tesla
    double frequency = 0.0;      // Hz

    double dt() const { return 1.0 / (frequency * static_cast<double>(values.size())); }

    void validate() const {
        if (values.size() != kWaveformLength)
            throw DataError("flux waveform must have exactly 1024 samples, got " +
                            std::to_string(values.size()));
        if (!(frequency > 0.0)) throw NumericError("waveform frequency must be positive");
        for (double v : values)
            if (!std::isfinite(v)) throw NumericError("waveform contains a non-finite sample");
    }
};

/// Extra shape parameters for the non-sine classes.
struct WaveShape {
    double duty = 0.5;       // triangular: fraction of the period spent rising
    double rise = 0.25;      // trapezoidal: rise (and fall uses what remains)
    double flat = 0.25;      // trapezoidal: each flat plateau; rise + 2*flat < 1
};

namespace detail {

inline double trapezoid_value(double t, double amplitude, double rise, double flat) {
    // Segments: rise (-A -> A), flat top, fall (A -> -A), flat bottom.
    const double fall = 1.0 - rise - 2.0 * flat;
    if (t < rise) return -amplitude + 2.0 * amplitude * t / rise;
    t -= rise;
    if (t < flat) return amplitude;
    t -= flat;
    if (t < fall) return amplitude - 2.0 * amplitude * t / fall;
    return -amplitude;
}

}  // namespace detail

/// Samples one zero-mean period with peak value `amplitude`.
inline FluxWaveform synth_waveform(WaveClass cls, double amplitude, double frequency,
                                   const WaveShape& shape = {}) {
    if (!(amplitude > 0.0)) throw NumericError("waveform amplitude must be positive");
    if (!(frequency > 0.0)) throw NumericError("waveform frequency must be positive");

    FluxWaveform w;
    w.frequency = frequency;
    w.values.resize(kWaveformLength);
    const double n = static_cast<double>(kWaveformLength);

    switch (cls) {
        case WaveClass::kSine:
            for (std::size_t i = 0; i < kWaveformLength; ++i)
                w.values[i] = amplitude * std::sin(2.0 * kPi * static_cast<double>(i) / n);
            break;
        case WaveClass::kTriangular: {
            if (!(shape.duty > 0.0 && shape.duty < 1.0))
                throw NumericError("triangular duty must lie in (0, 1)");
            // Degenerate trapezoid with zero plateaus: rise `duty`, fall the rest.
            for (std::size_t i = 0; i < kWaveformLength; ++i)
                w.values[i] = detail::trapezoid_value(static_cast<double>(i) / n, amplitude,
                                                      shape.duty, 0.0);
            break;
        }
        case WaveClass::kTrapezoidal: {
            if (!(shape.rise > 0.0) || shape.flat < 0.0 || !(shape.rise + 2.0 * shape.flat < 1.0))
                throw NumericError("trapezoidal fractions must satisfy rise > 0, flat >= 0, "
                                   "rise + 2*flat < 1");
            for (std::size_t i = 0; i < kWaveformLength; ++i)
                w.values[i] = detail::trapezoid_value(static_cast<double>(i) / n, amplitude,
                                                      shape.rise, shape.flat);
            break;
        }
    }
    return w;
}

/// Peak value of the (zero-mean) waveform: max(B).
inline double b_max(const FluxWaveform& w) {
    return *std::max_element(w.values.begin(), w.values.end());
}

/// Peak-to-peak flux density over one cycle: max(B) - min(B).
inline double delta_b(const FluxWaveform& w) {
    const auto [lo, hi] = std::minmax_element(w.values.begin(), w.values.end());
    return *hi - *lo;
}

/// dB/dt by central differences with periodic wrap-around, in T/s.
/// The waveform spans exactly one period, so the wrap is the faithful boundary.
inline std::vector<double> derivative(const FluxWaveform& w) {
    const std::size_t n = w.values.size();
    const double scale = 1.0 / (2.0 * w.dt());
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double next = w.values[(i + 1) % n];
        const double prev = w.values[(i + n - 1) % n];
        d[i] = (next - prev) * scale;
    }
    return d;
}

}  // namespace coreloss
