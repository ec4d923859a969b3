#pragma once

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coreloss/errors.hpp"

namespace coreloss {

struct ChannelStats {
    double mean = 0.0;
    double stddev = 1.0;
    bool constant = false;  // sigma was 0 and has been replaced by 1
};

/// Z-score transform per named scalar channel. Statistics are population
/// moments and are meant to be fit on the training split only.
class Standardizer {
public:
    void fit(const std::string& channel, std::span<const double> values) {
        if (values.empty()) throw DataError("standardizer: cannot fit channel '" + channel +
                                            "' on no data");
        ChannelStats cs;
        const double n = static_cast<double>(values.size());
        for (double v : values) cs.mean += v;
        cs.mean /= n;
        double var = 0.0;
        for (double v : values) var += (v - cs.mean) * (v - cs.mean);
        var /= n;
        cs.stddev = std::sqrt(var);
        // Constant channel: keep z finite, flag it.
        if (cs.stddev == 0.0 || cs.stddev < 1e-12 * std::max(1.0, std::fabs(cs.mean))) {
            cs.stddev = 1.0;
            cs.constant = true;
        }
        set(channel, cs);
    }

    void set(const std::string& channel, const ChannelStats& cs) {
        for (auto& [name, stats] : channels_) {
            if (name == channel) {
                stats = cs;
                return;
            }
        }
        channels_.emplace_back(channel, cs);
    }

    bool has(const std::string& channel) const {
        for (const auto& [name, stats] : channels_)
            if (name == channel) return true;
        return false;
    }

    const ChannelStats& stats(const std::string& channel) const {
        for (const auto& [name, stats] : channels_)
            if (name == channel) return stats;
        throw DataError("standardizer: unknown channel '" + channel + "'");
    }

    double apply(const std::string& channel, double x) const {
        const ChannelStats& cs = stats(channel);
        return (x - cs.mean) / cs.stddev;
    }

    double invert(const std::string& channel, double z) const {
        const ChannelStats& cs = stats(channel);
        return z * cs.stddev + cs.mean;
    }

    /// Insertion-ordered view, for stable serialization.
    const std::vector<std::pair<std::string, ChannelStats>>& channels() const {
        return channels_;
    }

private:
    std::vector<std::pair<std::string, ChannelStats>> channels_;
};

}  // namespace coreloss
