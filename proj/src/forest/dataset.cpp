// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/forest/dataset.hpp"

#include <fstream>
#include <sstream>

#include "forestveil/lhe/encoding.hpp"

namespace forestveil::forest {

namespace {

std::vector<double> parse_numeric_line(const std::string& line, bool* ok) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string cell;
    *ok = true;
    while (std::getline(ss, cell, ',')) {
        try {
            size_t pos = 0;
            double v = std::stod(cell, &pos);
            while (pos < cell.size() && std::isspace(uint8_t(cell[pos]))) ++pos;
            if (pos != cell.size()) {
                *ok = false;
                return out;
            }
            out.push_back(v);
        } catch (...) {
            *ok = false;
            return out;
        }
    }
    return out;
}

}  // namespace

std::vector<Milli> Dataset::milli_row(Eigen::Index r) const {
    std::vector<Milli> out(static_cast<size_t>(cols()));
    for (Eigen::Index c = 0; c < cols(); ++c) out[size_t(c)] = lhe::to_milli(features(r, c));
    return out;
}

Dataset Dataset::subset(const std::vector<Eigen::Index>& idx) const {
    Dataset out;
    out.features.resize(Eigen::Index(idx.size()), cols());
    out.labels.resize(idx.size());
    for (size_t i = 0; i < idx.size(); ++i) {
        out.features.row(Eigen::Index(i)) = features.row(idx[i]);
        out.labels[i] = labels[size_t(idx[i])];
    }
    return out;
}

Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ForestError("cannot open dataset file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ForestError("empty dataset file: " + path);

    std::vector<std::vector<double>> rows;
    size_t width = 0;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        bool ok = false;
        std::vector<double> vals = parse_numeric_line(line, &ok);
        if (!ok) throw ForestError("non-numeric cell at line " + std::to_string(line_no));
        if (width == 0) width = vals.size();
        if (vals.size() != width || width < 2)
            throw ForestError("inconsistent column count at line " + std::to_string(line_no));
        rows.push_back(std::move(vals));
    }
    if (rows.empty()) throw ForestError("dataset has no data rows: " + path);

    Dataset ds;
    Eigen::Index n = Eigen::Index(width - 1);
    ds.features.resize(Eigen::Index(rows.size()), n);
    ds.labels.resize(rows.size());
    for (size_t r = 0; r < rows.size(); ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            double v = rows[r][size_t(c)];
            // canonical grid value; throws when off-grid
            ds.features(Eigen::Index(r), c) = lhe::from_milli(lhe::to_milli(v));
        }
        double y = rows[r].back();
        if (y != 0.0 && y != 1.0) throw ForestError("labels must be 0 or 1");
        ds.labels[r] = int8_t(y);
    }
    return ds;
}

std::vector<double> load_feature_row(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ForestError("cannot open input file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        bool ok = false;
        std::vector<double> vals = parse_numeric_line(line, &ok);
        if (ok && !vals.empty()) return vals;
    }
    throw ForestError("no numeric row found in " + path);
}

std::vector<Milli> to_milli(const std::vector<double>& values) {
    std::vector<Milli> out(values.size());
    for (size_t i = 0; i < values.size(); ++i) out[i] = lhe::to_milli(values[i]);
    return out;
}

}  // namespace forestveil::forest
