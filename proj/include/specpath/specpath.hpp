#pragma once

// Umbrella header: spectral shortest paths via the pinned Laplacian ground
// state, plus the benchmark harness that compares them against exact BFS.

#include "specpath/bench.hpp"
#include "specpath/errors.hpp"
#include "specpath/graph.hpp"
#include "specpath/jacobi.hpp"
#include "specpath/parallel.hpp"
#include "specpath/pathfinder.hpp"
#include "specpath/report.hpp"
#include "specpath/rng.hpp"
#include "specpath/spectral.hpp"
