#pragma once

#include <cstdint>

#include "tracklay/plane_graph.hpp"

namespace tracklay {

// ─────────────────────────────────────────────────────────────────────────────
// Instance generators
//
// All generators produce validated embeddings with clockwise rotations and the
// outer face traced clockwise. Randomized ones consume a seeded mt19937_64
// through raw outputs only, so the result is identical on every platform.
// ─────────────────────────────────────────────────────────────────────────────

/// The triangle on vertices {0,1,2}.
embedded_graph gen_triangle();

/// Cycle 0–1–…–(k-1)–0, outer face in index order. k ≥ 3.
embedded_graph gen_cycle(int k);

/// Wheel: hub 0 plus a rim 1..rim, every rim vertex tied to the hub. rim ≥ 3.
embedded_graph gen_wheel(int rim);

/// rows × cols grid with quadrilateral inner faces. rows, cols ≥ 2.
embedded_graph gen_grid(int rows, int cols);

/// Random maximal plane graph on n ≥ 3 vertices built by repeatedly dropping
/// a new vertex into a uniformly chosen inner face and joining its corners.
/// Every inner face is a triangle; the outer face stays the original triangle.
embedded_graph gen_stacked_triangulation(int n, std::uint64_t seed);

/// Portable uniform draw in [0, bound) from raw mt19937_64 words.
std::uint64_t rng_below(std::uint64_t raw, std::uint64_t bound);

} // namespace tracklay
