#pragma once

// Random polygon generators for campaigns and the CLI.

#include "prony2d/geometry.hpp"
#include "prony2d/random.hpp"

namespace prony2d {

/// Boundary of a random simply connected polyomino grown by cell accretion
/// on a grid x grid board, with 4 <= n <= max_vertices vertices. Board corner
/// k maps to (k + 1) / (grid + 2), so every vertex lies in (0, 1)^2.
Polygon random_rectilinear_polygon(CounterRng& rng, int max_vertices, int grid = 16);

/// n vertices at sorted random angles and random radii about (1/2, 1/2).
Polygon random_star_polygon(CounterRng& rng, int n);

}  // namespace prony2d
