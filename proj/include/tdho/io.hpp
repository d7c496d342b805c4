#pragma once

// Deterministic CSV serialization for tables, fields, and scan reports.
//
// All numeric formatting goes through one shortest-round-trip printer
// ("%.17g" trimmed), so equal inputs produce byte-identical files on one
// platform -- the reproducibility contract of the CLI rests on this.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdho/dispersive.hpp"
#include "tdho/grid.hpp"

namespace tdho {

inline std::string fmt_double(double v) {
    char buf[40];
    // try successively longer precisions; stop at the first that round-trips
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        double back = 0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) break;
    }
    return buf;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> r) {
        if (r.size() != header.size())
            throw std::invalid_argument("CsvTable: row width does not match header");
        rows.push_back(std::move(r));
    }

    std::string to_string() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < header.size(); ++i)
            os << (i ? "," : "") << header[i];
        os << "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
            os << "\n";
        }
        return os.str();
    }
};

inline CsvTable scan_to_csv(const ScanReport& rep) {
    CsvTable t;
    t.header = {"t", "s", "x", "value", "label"};
    for (const auto& p : rep.points)
        t.add_row({fmt_double(p.t), fmt_double(p.s), fmt_double(p.x), fmt_double(p.value), p.label});
    return t;
}

// One row per grid point: coordinates, then re/im.
inline CsvTable field_to_csv(const WaveField& f) {
    CsvTable t;
    t.header.assign({"x1", "x2", "x3"});
    t.header.resize(static_cast<std::size_t>(f.grid.dim));
    t.header.push_back("re");
    t.header.push_back("im");
    CsvTable* tp = &t;
    f.for_each([tp, &f](std::size_t idx, const std::array<double, 3>& x) {
        std::vector<std::string> row;
        for (int a = 0; a < f.grid.dim; ++a) row.push_back(fmt_double(x[a]));
        row.push_back(fmt_double(f.samples[idx].real()));
        row.push_back(fmt_double(f.samples[idx].imag()));
        tp->add_row(std::move(row));
    });
    return t;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << content;
    if (!os) throw std::runtime_error("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace tdho
