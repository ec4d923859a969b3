#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "coreloss/errors.hpp"
#include "coreloss/sample.hpp"

namespace coreloss {

// Schema: material,waveform,temperature_C,frequency_Hz,core_loss_W_per_m3,b_0000..b_1023
// Comma-separated, UTF-8, '.' decimal, header required.

inline constexpr std::size_t kCsvColumnCount = 5 + kWaveformLength;

inline std::string csv_header() {
    std::string h = "material,waveform,temperature_C,frequency_Hz,core_loss_W_per_m3";
    char buf[16];
    for (std::size_t i = 0; i < kWaveformLength; ++i) {
        std::snprintf(buf, sizeof(buf), ",b_%04zu", i);
        h += buf;
    }
    return h;
}

namespace detail {

inline void split_line(const std::string& line, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.emplace_back(line.data() + start, line.size() - start);
            return;
        }
        out.emplace_back(line.data() + start, comma - start);
        start = comma + 1;
    }
}

inline double parse_double(std::string_view cell, std::size_t row, const std::string& column) {
    double value = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
        throw DataError("row " + std::to_string(row) + ", column " + column +
                        ": non-numeric cell '" + std::string(cell) + "'");
    return value;
}

/// 17 significant digits: round-trips every finite double exactly.
inline void append_double(std::string& out, double v) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
    out.append(buf, static_cast<std::size_t>(len));
}

inline std::string column_name(std::size_t index) {
    static const char* fixed[] = {"material", "waveform", "temperature_C", "frequency_Hz",
                                  "core_loss_W_per_m3"};
    if (index < 5) return fixed[index];
    char buf[16];
    std::snprintf(buf, sizeof(buf), "b_%04zu", index - 5);
    return buf;
}

}  // namespace detail

/// Loads a conformant CSV into a Dataset, preserving row order.
/// Rows are validated as parsed; errors name the offending row and column.
inline Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file, header required");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != csv_header())
        throw DataError(path + ": header does not match the dataset schema");

    Dataset ds;
    ds.provenance = Provenance::kIngested;
    std::vector<std::string_view> cells;
    std::size_t row = 0;  // data-row number, 1-based
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row;
        detail::split_line(line, cells);
        if (cells.size() != kCsvColumnCount)
            throw DataError("row " + std::to_string(row) + ": expected " +
                            std::to_string(kCsvColumnCount) + " columns (1024 flux values), got " +
                            std::to_string(cells.size()));
        Sample s;
        s.material = std::string(cells[0]);
        if (s.material.empty())
            throw DataError("row " + std::to_string(row) + ", column material: empty cell");
        try {
            s.waveform = wave_class_from_string(std::string(cells[1]));
        } catch (const DataError& e) {
            throw DataError("row " + std::to_string(row) + ", column waveform: " + e.what());
        }
        s.temperature_c = detail::parse_double(cells[2], row, "temperature_C");
        s.frequency_hz = detail::parse_double(cells[3], row, "frequency_Hz");
        s.loss_w_m3 = detail::parse_double(cells[4], row, "core_loss_W_per_m3");
        s.flux.resize(kWaveformLength);
        for (std::size_t i = 0; i < kWaveformLength; ++i)
            s.flux[i] = detail::parse_double(cells[5 + i], row, detail::column_name(5 + i));
        try {
            s.validate();
        } catch (const DataError& e) {
            throw DataError("row " + std::to_string(row) + ": " + e.what());
        }
        ds.samples.push_back(std::move(s));
    }
    return ds;
}

inline std::string to_csv(const Dataset& ds) {
    std::string out = csv_header();
    out += '\n';
    for (const auto& s : ds.samples) {
        out += s.material;
        out += ',';
        out += to_string(s.waveform);
        out += ',';
        detail::append_double(out, s.temperature_c);
        out += ',';
        detail::append_double(out, s.frequency_hz);
        out += ',';
        detail::append_double(out, s.loss_w_m3);
        for (double v : s.flux) {
            out += ',';
            detail::append_double(out, v);
        }
        out += '\n';
    }
    return out;
}

}  // namespace coreloss
