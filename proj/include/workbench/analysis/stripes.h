#pragma once

#include <vector>

#include "workbench/image.h"

namespace wb::analysis {

std::vector<double> row_means(const RawImage& raw);
std::vector<double> row_means(const RgbImage& img);

// Normalised autocorrelation of the mean-removed series at `lag`; 0 for a flat series.
double autocorrelation(const std::vector<double>& series, int lag);

// Period of horizontal banding: the peak of the first positive lobe of the
// row-mean autocorrelation after it first goes negative, refined with a
// parabola. Returns 0 when no banding is found.
double band_period(const std::vector<double>& row_means);

}  // namespace wb::analysis
