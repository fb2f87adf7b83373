#pragma once

#include <array>
#include <string>
#include <vector>

#include "vqcb/preprocess.hpp"

namespace vqcb {

// Canonical names of the 30 physics feature columns, used to report which
// one a malformed file is missing.
const std::array<std::string, kNumFeatures>& atlas_feature_names();

// Reads an ATLAS Higgs challenge CSV. Accepts both the 33-column Kaggle
// layout and the 35-column open-data layout (KaggleSet/KaggleWeight are
// ignored); columns are located by header name, and the 30 DER_*/PRI_*
// features are kept in header order. Labels map 's' -> 1 and 'b' -> 0.
// -999.0 cells pass through untouched for downstream imputation.
std::vector<EventRecord> load_atlas_csv(const std::string& path);

}  // namespace vqcb
