#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace calp {

/// Histogram feature of one image: one or more concatenated L1-normalized
/// histogram segments. For the cascaded descriptor segment_length is 64 and
/// there is one segment per ring distance; the baselines are single-segment.
struct FeatureVector {
    std::string name;
    std::size_t segment_length = 0;
    std::vector<double> bins;

    std::size_t size() const { return bins.size(); }
};

} // namespace calp
