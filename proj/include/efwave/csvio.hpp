#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "efwave/analytic.hpp"
#include "efwave/errors.hpp"

namespace efwave {

namespace detail {

inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

/// Serialize a field result as CSV: header row "t,r=<coord>,..." then one row
/// per sample. Values use %.17g so a write/read round trip is exact.
inline std::string to_csv(const FieldResult& result) {
    std::ostringstream os;
    os << "t";
    for (double r : result.geometry.receivers) os << ",r=" << detail::fmt_g17(r);
    os << "\n";
    if (result.per_receiver.empty()) return os.str();
    const std::size_t n = result.per_receiver.front().size();
    for (const auto& tr : result.per_receiver)
        if (tr.size() != n) throw ValidationError("csv: traces differ in length");
    for (std::size_t i = 0; i < n; ++i) {
        os << detail::fmt_g17(result.per_receiver.front().time_at(i));
        for (const auto& tr : result.per_receiver) os << "," << detail::fmt_g17(tr.samples[i]);
        os << "\n";
    }
    return os.str();
}

/// Parse a CSV produced by to_csv back into a field result.  Geometry beyond
/// the receiver coordinates and the diagnostics are not represented in CSV and
/// come back default; fs and t0 are reconstructed from the time column.
inline FieldResult from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    FieldResult res;
    res.geometry.dim = 1;
    std::istringstream header(line);
    std::string cell;
    if (!std::getline(header, cell, ',') || cell != "t")
        throw ParseError("csv: first header column must be 't'");
    while (std::getline(header, cell, ',')) {
        if (cell.rfind("r=", 0) != 0)
            throw ParseError("csv: receiver column must look like 'r=<coord>': " + cell);
        try {
            res.geometry.receivers.push_back(std::stod(cell.substr(2)));
        } catch (const std::exception&) {
            throw ParseError("csv: bad receiver coordinate: " + cell);
        }
    }
    const std::size_t nr = res.geometry.receivers.size();
    if (nr == 0) throw ParseError("csv: no receiver columns");

    std::vector<double> times;
    std::vector<std::vector<double>> cols(nr);
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<double> vals;
        while (std::getline(ls, cell, ',')) {
            try {
                vals.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ParseError("csv: bad number '" + cell + "' at row " + std::to_string(row));
            }
        }
        if (vals.size() != nr + 1)
            throw ParseError("csv: wrong column count at row " + std::to_string(row));
        times.push_back(vals[0]);
        for (std::size_t c = 0; c < nr; ++c) cols[c].push_back(vals[c + 1]);
    }
    if (times.size() < 2) throw ParseError("csv: need at least two sample rows");
    const double dt = times[1] - times[0];
    if (!(dt > 0.0)) throw ParseError("csv: time column is not increasing");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (std::abs(times[i] - times[i - 1] - dt) > 1e-9 * dt + 1e-15)
            throw ParseError("csv: time column is not uniformly spaced at row " +
                             std::to_string(i + 1));
    for (auto& c : cols) res.per_receiver.emplace_back(1.0 / dt, times[0], std::move(c));
    return res;
}

inline void write_csv_file(const std::string& path, const FieldResult& result) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("csv: cannot open for writing: " + path);
    f << to_csv(result);
    if (!f) throw ValidationError("csv: write failed: " + path);
}

inline FieldResult read_csv_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("csv: cannot open for reading: " + path);
    return from_csv(f);
}

} // namespace efwave
