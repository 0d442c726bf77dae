#pragma once

// Loader for tests/testdata/reference_values.txt. Every fixture used by the
// tests resolves against this one file, which guards the values against
// drifting apart between suites.

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ossfem::testdata {

struct TableRow {
    double size = 0.0;
    double lambda = 0.0;
    double rel_error = 0.0;
    bool has_rel_error = false;
};

struct ReferenceData {
    std::map<std::string, double> scalars;
    std::map<std::string, std::vector<TableRow>> tables;

    double scalar(const std::string& name) const {
        auto it = scalars.find(name);
        if (it == scalars.end()) throw std::runtime_error("reference data: no scalar " + name);
        return it->second;
    }
    const std::vector<TableRow>& table(const std::string& name) const {
        auto it = tables.find(name);
        if (it == tables.end()) throw std::runtime_error("reference data: no table " + name);
        return it->second;
    }
};

inline ReferenceData load_reference_data(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open reference data: " + path);
    ReferenceData data;
    std::string line;
    std::string current_table;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "scalar") {
            std::string name;
            double value = 0.0;
            if (!(ls >> name >> value)) throw std::runtime_error("reference data: bad scalar line");
            data.scalars[name] = value;
        } else if (first == "table") {
            if (!(ls >> current_table)) throw std::runtime_error("reference data: bad table header");
            data.tables[current_table];
        } else if (first == "end") {
            current_table.clear();
        } else {
            if (current_table.empty()) throw std::runtime_error("reference data: row outside table");
            TableRow row;
            row.size = std::stod(first);
            if (!(ls >> row.lambda)) throw std::runtime_error("reference data: bad table row");
            if (ls >> row.rel_error) row.has_rel_error = true;
            data.tables[current_table].push_back(row);
        }
    }
    return data;
}

inline const ReferenceData& reference_data() {
    static const ReferenceData data = load_reference_data(OSSFEM_TESTDATA_DIR "/reference_values.txt");
    return data;
}

}  // namespace ossfem::testdata
