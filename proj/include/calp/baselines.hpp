#pragma once

#include "calp/feature.hpp"
#include "calp/image.hpp"

namespace calp {

/// Classical 3x3 local binary pattern; 256-bin histogram.
/// Each of the 8 neighbors is compared against the center with >= (ties
/// count as 1); neighbors are weighted 2^0..2^7 clockwise from top-left.
/// Throws DimensionError for images smaller than 3x3.
FeatureVector lbp_feature(const GrayImage& image);

/// Center-symmetric LBP over the four opposite pairs of the 3x3
/// neighborhood; bit p set when g_p > g_{p+4} + threshold. 16-bin histogram.
/// Throws DimensionError for images smaller than 3x3 and ParameterError for
/// a negative threshold.
FeatureVector cslbp_feature(const GrayImage& image, int threshold = 0);

/// Center-symmetric local ternary pattern over the two diagonal pairs of
/// the 3x3 neighborhood; each difference maps to {-1, 0, +1} with a dead
/// zone of +-threshold and the two ternary digits combine to a code in
/// [0, 8]. 9-bin histogram.
/// Throws DimensionError for images smaller than 3x3 and ParameterError for
/// a negative threshold.
FeatureVector csltp_feature(const GrayImage& image, int threshold = 1);

} // namespace calp
