#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "coreloss/errors.hpp"
#include "coreloss/waveform.hpp"

namespace coreloss {

inline constexpr double kMinTemperatureC = -60.0;
inline constexpr double kMaxTemperatureC = 200.0;

/// One labeled observation: operating conditions plus one period of flux
/// density and the measured loss.
struct Sample {
    std::string material;       // open set, e.g. 3C94 / 77 / N27 / N87
    WaveClass waveform = WaveClass::kSine;
    double temperature_c = 25.0;
    double frequency_hz = 0.0;
    std::vector<double> flux;   // 1024 samples, Tesla
    double loss_w_m3 = 0.0;     // target, W/m^3

    FluxWaveform flux_waveform() const { return FluxWaveform{flux, frequency_hz}; }

    void validate() const {
        if (flux.size() != kWaveformLength)
            throw DataError("sample flux length must be 1024, got " +
                            std::to_string(flux.size()));
        if (!(frequency_hz > 0.0)) throw DataError("sample frequency must be positive");
        if (!(loss_w_m3 > 0.0)) throw DataError("sample loss must be positive");
        if (temperature_c < kMinTemperatureC || temperature_c > kMaxTemperatureC)
            throw DataError("sample temperature outside admissible range [-60, 200] C");
        for (double v : flux)
            if (!std::isfinite(v)) throw DataError("sample flux contains a non-finite value");
    }
};

enum class Provenance { kIngested, kSynthetic };

struct Dataset {
    std::vector<Sample> samples;
    Provenance provenance = Provenance::kIngested;
    std::uint64_t rng_seed = 0;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }

    /// Materials in first-appearance order; stable under CSV round-trips.
    std::vector<std::string> material_vocabulary() const {
        std::vector<std::string> vocab;
        for (const auto& s : samples)
            if (std::find(vocab.begin(), vocab.end(), s.material) == vocab.end())
                vocab.push_back(s.material);
        return vocab;
    }

    /// Waveform classes present, in first-appearance order.
    std::vector<std::string> waveform_vocabulary() const {
        std::vector<std::string> vocab;
        for (const auto& s : samples) {
            const std::string name = to_string(s.waveform);
            if (std::find(vocab.begin(), vocab.end(), name) == vocab.end())
                vocab.push_back(name);
        }
        return vocab;
    }

    void validate() const {
        for (std::size_t i = 0; i < samples.size(); ++i) {
            try {
                samples[i].validate();
            } catch (const DataError& e) {
                throw DataError("sample " + std::to_string(i) + ": " + e.what());
            }
        }
    }
};

/// Index of `value` in `vocab`, or a DataError naming the vocabulary.
inline std::size_t vocabulary_index(const std::vector<std::string>& vocab,
                                    const std::string& value, const char* what) {
    const auto it = std::find(vocab.begin(), vocab.end(), value);
    if (it == vocab.end())
        throw DataError(std::string(what) + " '" + value + "' not in the training vocabulary");
    return static_cast<std::size_t>(it - vocab.begin());
}

}  // namespace coreloss
