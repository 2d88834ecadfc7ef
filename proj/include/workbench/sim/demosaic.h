#pragma once

#include "workbench/image.h"
#include "workbench/sim/config.h"

namespace wb::sim {

// Linear RGB in raw DN. Missing colours come from the same-colour lattice;
// borders mirror onto that lattice (x = -1 reads x = 1). RCCB derives green
// from clear, RCCC and Mono give grey with RCCC's red from the red sites.
// Needs width and height >= 2 for any pattern with a 2x2 cell.
LinearImage demosaic(const RawImage& raw, DemosaicMethod method);

}  // namespace wb::sim
