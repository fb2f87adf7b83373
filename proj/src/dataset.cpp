#include "vqcb/dataset.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "vqcb/errors.hpp"

namespace vqcb {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

double parse_double_cell(const std::string& cell, const std::string& column, long line_no) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw DataError("line " + std::to_string(line_no) + ": non-numeric value '" + cell +
                        "' in column " + column);
    }
    return value;
}

long parse_long_cell(const std::string& cell, const std::string& column, long line_no) {
    long value = 0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw DataError("line " + std::to_string(line_no) + ": non-numeric value '" + cell +
                        "' in column " + column);
    }
    return value;
}

bool is_feature_column(const std::string& name) {
    return name.rfind("DER_", 0) == 0 || name.rfind("PRI_", 0) == 0;
}

}  // namespace

const std::array<std::string, kNumFeatures>& atlas_feature_names() {
    static const std::array<std::string, kNumFeatures> names = {
        "DER_mass_MMC",
        "DER_mass_transverse_met_lep",
        "DER_mass_vis",
        "DER_pt_h",
        "DER_deltaeta_jet_jet",
        "DER_mass_jet_jet",
        "DER_prodeta_jet_jet",
        "DER_deltar_tau_lep",
        "DER_pt_tot",
        "DER_sum_pt",
        "DER_pt_ratio_lep_tau",
        "DER_met_phi_centrality",
        "DER_lep_eta_centrality",
        "PRI_tau_pt",
        "PRI_tau_eta",
        "PRI_tau_phi",
        "PRI_lep_pt",
        "PRI_lep_eta",
        "PRI_lep_phi",
        "PRI_met",
        "PRI_met_phi",
        "PRI_met_sumet",
        "PRI_jet_num",
        "PRI_jet_leading_pt",
        "PRI_jet_leading_eta",
        "PRI_jet_leading_phi",
        "PRI_jet_subleading_pt",
        "PRI_jet_subleading_eta",
        "PRI_jet_subleading_phi",
        "PRI_jet_all_pt",
    };
    return names;
}

std::vector<EventRecord> load_atlas_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw DataError("cannot open " + path);

    std::string line;
    if (!std::getline(file, line)) throw DataError(path + ": missing header row");
    strip_cr(line);
    const std::vector<std::string> header = split_csv_line(line);

    int id_col = -1;
    int weight_col = -1;
    int label_col = -1;
    std::vector<int> feature_cols;  // header order
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string& name = header[i];
        if (name == "EventId") {
            id_col = static_cast<int>(i);
        } else if (name == "Weight") {
            weight_col = static_cast<int>(i);
        } else if (name == "Label") {
            label_col = static_cast<int>(i);
        } else if (is_feature_column(name)) {
            feature_cols.push_back(static_cast<int>(i));
        }
        // Anything else (KaggleSet, KaggleWeight, ...) is ignored.
    }

    if (id_col < 0) throw DataError(path + ": missing required column EventId");
    if (weight_col < 0) throw DataError(path + ": missing required column Weight");
    if (label_col < 0) throw DataError(path + ": missing required column Label");
    if (feature_cols.size() != static_cast<std::size_t>(kNumFeatures)) {
        for (const std::string& name : atlas_feature_names()) {
            bool found = false;
            for (int col : feature_cols) {
                if (header[col] == name) {
                    found = true;
                    break;
                }
            }
            if (!found) throw DataError(path + ": missing required column " + name);
        }
        throw DataError(path + ": expected " + std::to_string(kNumFeatures) +
                        " feature columns, found " + std::to_string(feature_cols.size()));
    }

    std::vector<EventRecord> records;
    long line_no = 1;  // header was line 1
    while (std::getline(file, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw DataError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " fields, found " +
                            std::to_string(fields.size()));
        }

        EventRecord rec;
        rec.event_id = parse_long_cell(fields[id_col], "EventId", line_no);
        for (int j = 0; j < kNumFeatures; ++j) {
            const int col = feature_cols[j];
            rec.features[j] = parse_double_cell(fields[col], header[col], line_no);
        }
        rec.weight = parse_double_cell(fields[weight_col], "Weight", line_no);

        const std::string& label = fields[label_col];
        if (label == "s") {
            rec.label = 1;
        } else if (label == "b") {
            rec.label = 0;
        } else {
            throw DataError("line " + std::to_string(line_no) + ": label must be 's' or 'b', got '" +
                            label + "'");
        }
        records.push_back(rec);
    }
    return records;
}

}  // namespace vqcb
