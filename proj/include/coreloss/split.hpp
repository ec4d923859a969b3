#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "coreloss/errors.hpp"
#include "coreloss/rng.hpp"
#include "coreloss/sample.hpp"
#include "coreloss/version.hpp"

namespace coreloss {

struct SplitSpec {
    double train_fraction = 0.70;
    double validation_fraction = 0.15;
    double test_fraction = 0.15;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(train_fraction > 0.0 && validation_fraction > 0.0 && test_fraction > 0.0))
            throw DataError("split fractions must all be positive");
        if (std::fabs(train_fraction + validation_fraction + test_fraction - 1.0) > 1e-12)
            throw DataError("split fractions must sum to 1");
    }
};

struct SplitIndices {
    std::vector<std::size_t> train, validation, test;
    SplitSpec spec;
};

/// Deterministic shuffled partition. Validation/test sizes are
/// floor(n * fraction); the remainder goes to the training split.
inline SplitIndices split_indices(std::size_t n, const SplitSpec& spec) {
    spec.validate();
    if (n == 0) throw DataError("cannot split an empty dataset");

    // The epsilon absorbs representation error in n * fraction (e.g. 12400 * 0.15).
    const auto sized = [n](double f) {
        return static_cast<std::size_t>(std::floor(static_cast<double>(n) * f + 1e-9));
    };
    const std::size_t n_val = sized(spec.validation_fraction);
    const std::size_t n_test = sized(spec.test_fraction);
    if (n_val + n_test > n) throw DataError("split fractions leave no training data");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(spec.seed);
    rng.shuffle(order);

    SplitIndices out;
    out.spec = spec;
    const std::size_t n_train = n - n_val - n_test;
    out.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    out.validation.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train),
                          order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
    out.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), order.end());
    return out;
}

inline Dataset subset(const Dataset& ds, const std::vector<std::size_t>& indices) {
    Dataset out;
    out.provenance = ds.provenance;
    out.rng_seed = ds.rng_seed;
    out.samples.reserve(indices.size());
    for (std::size_t i : indices) out.samples.push_back(ds.samples.at(i));
    return out;
}

struct SplitDatasets {
    Dataset train, validation, test;
};

inline SplitDatasets split(const Dataset& ds, const SplitSpec& spec) {
    const SplitIndices idx = split_indices(ds.size(), spec);
    return {subset(ds, idx.train), subset(ds, idx.validation), subset(ds, idx.test)};
}

// ---------------------------------------------------------------------------
// Sidecar serialization (versioned structured text)
// ---------------------------------------------------------------------------

inline std::string to_split_text(const SplitIndices& s) {
    std::ostringstream out;
    out.precision(17);
    out << "coreloss-split v" << kSplitFormatVersion << "\n";
    out << "seed " << s.spec.seed << "\n";
    out << "fractions " << s.spec.train_fraction << " " << s.spec.validation_fraction << " "
        << s.spec.test_fraction << "\n";
    const auto emit = [&out](const char* name, const std::vector<std::size_t>& v) {
        out << name << " " << v.size();
        for (std::size_t i : v) out << " " << i;
        out << "\n";
    };
    emit("train", s.train);
    emit("validation", s.validation);
    emit("test", s.test);
    return out.str();
}

inline SplitIndices parse_split_text(std::istream& in, const std::string& origin) {
    std::string magic;
    std::string version;
    if (!(in >> magic >> version) || magic != "coreloss-split")
        throw DataError(origin + ": not a coreloss split file");
    if (version != "v" + std::to_string(kSplitFormatVersion))
        throw DataError(origin + ": unsupported split format version " + version);

    SplitIndices s;
    std::string key;
    while (in >> key) {
        if (key == "seed") {
            in >> s.spec.seed;
        } else if (key == "fractions") {
            in >> s.spec.train_fraction >> s.spec.validation_fraction >> s.spec.test_fraction;
        } else if (key == "train" || key == "validation" || key == "test") {
            std::size_t count = 0;
            in >> count;
            std::vector<std::size_t>& dst =
                key == "train" ? s.train : (key == "validation" ? s.validation : s.test);
            dst.resize(count);
            for (std::size_t i = 0; i < count; ++i) in >> dst[i];
        } else {
            throw DataError(origin + ": unknown split-file key '" + key + "'");
        }
        if (!in && !in.eof()) throw DataError(origin + ": malformed split file");
    }
    return s;
}

inline SplitIndices load_split_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open split file: " + path);
    return parse_split_text(in, path);
}

}  // namespace coreloss
