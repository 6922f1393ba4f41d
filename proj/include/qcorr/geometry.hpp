#pragma once

// Level surfaces of the Bell-diagonal measures inside the physical
// tetrahedron, and parameter sweeps over the Werner and Bell-diagonal
// families under phase-flip noise.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcorr/channels.hpp"

namespace qcorr {

struct SurfaceRequest {
  MeasureKind kind = MeasureKind::Discord;
  double target = 0.15;  // bits
  WeakStrength x = WeakStrength::projective();
  int resolution = 64;  // grid cells per axis over [-1, 1]
  double tolerance = 1e-6;
  // Fraction of emitted points re-evaluated with the numeric oracle.
  double oracle_fraction = 0.01;

  void validate() const;
};

// Grid edge a crossing was found on: lower vertex (i, j, k) and the axis
// (0, 1, 2) the edge runs along.
struct GridEdge {
  std::int32_t i, j, k, axis;
};

struct SurfacePoint {
  BellDiagonalParams c;
  double residual;  // |measure(c) - target|
  GridEdge edge;
};

struct SurfaceDiagnostics {
  std::size_t physical_vertices = 0;
  std::size_t sign_changes = 0;
  std::size_t unconverged = 0;  // crossings dropped after 60 bisections
  std::size_t oracle_checks = 0;
  double max_oracle_deviation = 0.0;
};

struct SurfacePointCloud {
  std::vector<SurfacePoint> points;
  SurfaceDiagnostics diagnostics;
};

// Throws DomainError for target <= 1e-4 or resolution outside [16, 512].
SurfacePointCloud level_surface(const SurfaceRequest& req);

// Closed-form measure of a Bell-diagonal point without clamping; the
// function every surface residual is measured with.
double bell_measure_raw(MeasureKind kind, const BellDiagonalParams& c, const WeakStrength& x);

// Largest r with r·d inside the tetrahedron, for unit d.
double tetrahedron_radius(const Vec3& direction);

// Smallest r > 0 where the measure along r·d reaches `target`, refined to
// 1e-12 in r; empty when the ray leaves the tetrahedron first.
std::optional<double> crossing_radius(MeasureKind kind, const WeakStrength& x, const Vec3& direction,
                                      double target);

enum class Family { Werner, BellDiagonal };

struct SweepSpec {
  Family family = Family::Werner;
  std::vector<MeasureKind> kinds;
  std::vector<double> z_values;  // Werner only
  BellDiagonalParams c;          // BellDiagonal only
  std::vector<WeakStrength> x_values;
  std::vector<double> p_values{0.0};
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Rows are row-major over (z, x, p) for Werner and (x, p) for
// Bell-diagonal. Projective x is written as +inf. An empty axis yields a
// header-only table.
Table sweep(const SweepSpec& spec);

// Inclusive arithmetic grid start, start+step, ..., up to stop (with a
// half-step slack against round-off).
std::vector<double> arithmetic_grid(double start, double stop, double step);

}  // namespace qcorr
