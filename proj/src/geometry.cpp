#include "qcorr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qcorr/error.hpp"
#include "qcorr/kernels.hpp"
#include "qcorr/parallel.hpp"

namespace qcorr {

void SurfaceRequest::validate() const {
  if (!(target > 1e-4)) {
    std::ostringstream os;
    os << "surface target must exceed 1e-4 bits, got " << target;
    throw DomainError(os.str());
  }
  if (resolution < 16 || resolution > 512) throw DomainError("surface resolution must be in [16, 512]");
  if (!(tolerance > 0.0)) throw DomainError("surface tolerance must be positive");
  if (!(oracle_fraction >= 0.0 && oracle_fraction <= 1.0)) throw DomainError("oracle fraction must be in [0, 1]");
}

double bell_measure_raw(MeasureKind kind, const BellDiagonalParams& c, const WeakStrength& x) {
  const WeakStrength eff = is_weak(kind) ? x : WeakStrength::projective();
  return is_deficit(kind) ? closed_form::bell_deficit_like(c, eff.sech())
                          : closed_form::bell_discord_like(c, eff.tanh());
}

namespace {

constexpr int kMaxBisections = 60;

// Sign pattern of each Bell weight: λ = (1 + s·c)/4.
constexpr std::array<Vec3, 4> kWeightSigns{{{-1, -1, -1}, {-1, 1, 1}, {1, -1, 1}, {1, 1, -1}}};

struct Grid {
  int res;
  std::size_t side;
  double h;

  double coord(int i) const { return -1.0 + h * i; }
  std::size_t index(int i, int j, int k) const { return (static_cast<std::size_t>(i) * side + j) * side + k; }
};

}  // namespace

SurfacePointCloud level_surface(const SurfaceRequest& req) {
  req.validate();
  const Grid g{req.resolution, static_cast<std::size_t>(req.resolution) + 1, 2.0 / req.resolution};
  const std::size_t nv = g.side * g.side * g.side;

  std::vector<double> c1(nv), c2(nv), c3(nv), value(nv);
  std::vector<std::uint8_t> physical(nv);
  for (int i = 0; i <= g.res; ++i)
    for (int j = 0; j <= g.res; ++j)
      for (int k = 0; k <= g.res; ++k) {
        const std::size_t v = g.index(i, j, k);
        c1[v] = g.coord(i);
        c2[v] = g.coord(j);
        c3[v] = g.coord(k);
        physical[v] = BellDiagonalParams{{c1[v], c2[v], c3[v]}}.physical();
        // Unphysical vertices are parked at the origin so the kernel only
        // sees valid inputs; they are masked out below.
        if (!physical[v]) c1[v] = c2[v] = c3[v] = 0.0;
      }

  // Vertex values, one slab of constant i per task.
  const std::size_t slab = g.side * g.side;
  parallel_for(g.side, [&](std::size_t i) {
    const std::size_t off = i * slab;
    bell_measure_batch(req.kind, req.x, std::span(c1).subspan(off, slab), std::span(c2).subspan(off, slab),
                       std::span(c3).subspan(off, slab), std::span(value).subspan(off, slab));
  });

  SurfacePointCloud cloud;
  cloud.diagnostics.physical_vertices =
      static_cast<std::size_t>(std::count(physical.begin(), physical.end(), std::uint8_t{1}));

  struct SlabOut {
    std::vector<SurfacePoint> points;
    std::size_t sign_changes = 0;
    std::size_t unconverged = 0;
  };
  std::vector<SlabOut> slabs(g.side);

  parallel_for(g.side, [&](std::size_t si) {
    const int i = static_cast<int>(si);
    SlabOut& out = slabs[si];
    for (int j = 0; j <= g.res; ++j) {
      for (int k = 0; k <= g.res; ++k) {
        const std::size_t v0 = g.index(i, j, k);
        if (!physical[v0]) continue;
        const double f0 = value[v0] - req.target;
        for (int axis = 0; axis < 3; ++axis) {
          const int ni = i + (axis == 0), nj = j + (axis == 1), nk = k + (axis == 2);
          if (ni > g.res || nj > g.res || nk > g.res) continue;
          const std::size_t v1 = g.index(ni, nj, nk);
          if (!physical[v1]) continue;
          const double f1 = value[v1] - req.target;
          if ((f0 >= 0.0) == (f1 >= 0.0)) continue;
          ++out.sign_changes;

          const Vec3 a{g.coord(i), g.coord(j), g.coord(k)};
          auto point_at = [&](double s) {
            BellDiagonalParams c{a};
            c.c[axis] += s * g.h;
            return c;
          };
          // Linear interpolation first, then bisection on the bracket.
          double lo = 0.0, hi = 1.0;
          const bool lo_negative = f0 < 0.0;
          double s = f0 / (f0 - f1);
          bool done = false;
          BellDiagonalParams c;
          double residual = 0.0;
          for (int it = 0; it <= kMaxBisections; ++it) {
            c = point_at(s);
            const double r = bell_measure_raw(req.kind, c, req.x) - req.target;
            residual = std::abs(r);
            if (residual <= req.tolerance) {
              done = true;
              break;
            }
            if ((r < 0.0) == lo_negative)
              lo = s;
            else
              hi = s;
            s = 0.5 * (lo + hi);
          }
          if (!done) {
            ++out.unconverged;
            continue;
          }
          out.points.push_back({c, residual, {i, j, k, axis}});
        }
      }
    }
  });

  for (SlabOut& s : slabs) {
    cloud.diagnostics.sign_changes += s.sign_changes;
    cloud.diagnostics.unconverged += s.unconverged;
    cloud.points.insert(cloud.points.end(), s.points.begin(), s.points.end());
  }

  // Oracle spot checks on an evenly strided subset.
  if (req.oracle_fraction > 0.0 && !cloud.points.empty()) {
    const auto stride = static_cast<std::size_t>(std::max(1.0, std::round(1.0 / req.oracle_fraction)));
    OptimizerOptions coarse;
    coarse.n_theta = 16;
    coarse.n_phi = 16;
    coarse.refine_tolerance = 1e-12;
    double worst = 0.0;
    std::size_t checks = 0;
    for (std::size_t n = 0; n < cloud.points.size(); n += stride) {
      const SurfacePoint& pt = cloud.points[n];
      const auto numeric = measure_numeric(req.kind, bell_diagonal(pt.c), req.x, coarse);
      worst = std::max(worst, std::abs(numeric.value - bell_measure_raw(req.kind, pt.c, req.x)));
      ++checks;
    }
    cloud.diagnostics.oracle_checks = checks;
    cloud.diagnostics.max_oracle_deviation = worst;
  }
  return cloud;
}

double tetrahedron_radius(const Vec3& d) {
  double r = std::numeric_limits<double>::infinity();
  for (const Vec3& s : kWeightSigns) {
    const double dot = s[0] * d[0] + s[1] * d[1] + s[2] * d[2];
    if (dot < 0.0) r = std::min(r, -1.0 / dot);
  }
  return r;
}

std::optional<double> crossing_radius(MeasureKind kind, const WeakStrength& x, const Vec3& d, double target) {
  const double rmax = tetrahedron_radius(d);
  auto f = [&](double r) {
    return bell_measure_raw(kind, BellDiagonalParams{{r * d[0], r * d[1], r * d[2]}}, x) - target;
  };
  constexpr int kSteps = 400;
  double prev_r = 0.0;
  if (f(0.0) >= 0.0) return 0.0;
  for (int n = 1; n <= kSteps; ++n) {
    const double r = rmax * n / kSteps;
    const double fr = f(r);
    if (fr >= 0.0) {
      double lo = prev_r, hi = r;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) >= 0.0 ? hi : lo) = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev_r = r;
  }
  return std::nullopt;
}

std::vector<double> arithmetic_grid(double start, double stop, double step) {
  std::vector<double> out;
  if (!(step > 0.0)) throw DomainError("grid step must be positive");
  if (stop < start) return out;
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5));
  out.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out.push_back(start + step * static_cast<double>(i));
  return out;
}

Table sweep(const SweepSpec& spec) {
  Table t;
  if (spec.family == Family::Werner) {
    t.header = {"z", "x", "p"};
  } else {
    t.header = {"c1", "c2", "c3", "x", "p"};
  }
  for (MeasureKind k : spec.kinds) t.header.emplace_back(to_string(k));

  auto x_column = [](const WeakStrength& x) {
    return x.is_projective() ? std::numeric_limits<double>::infinity() : x.value();
  };
  std::vector<PhaseFlipParams> ps;
  for (double p : spec.p_values) ps.push_back(PhaseFlipParams::from_probability(p));

  if (spec.family == Family::Werner) {
    for (double z : spec.z_values) {
      (void)werner(WernerParams{z});
      for (const WeakStrength& x : spec.x_values) {
        for (const PhaseFlipParams& p : ps) {
          std::vector<double> row{z, x_column(x), p.p};
          for (MeasureKind k : spec.kinds) row.push_back(channel_measure_werner(k, WernerParams{z}, x, p).value);
          t.rows.push_back(std::move(row));
        }
      }
    }
    return t;
  }

  (void)bell_diagonal(spec.c);
  // Evolved coefficients per p, evaluated in one batch per (x, kind).
  std::vector<double> e1, e2, e3;
  for (const PhaseFlipParams& p : ps) {
    const BellDiagonalParams ev = evolve_bell(spec.c, p);
    e1.push_back(ev.c[0]);
    e2.push_back(ev.c[1]);
    e3.push_back(ev.c[2]);
  }
  std::vector<double> values(ps.size());
  for (const WeakStrength& x : spec.x_values) {
    const std::size_t first = t.rows.size();
    for (const PhaseFlipParams& p : ps)
      t.rows.push_back({spec.c.c[0], spec.c.c[1], spec.c.c[2], x_column(x), p.p});
    for (MeasureKind k : spec.kinds) {
      bell_measure_batch(k, x, e1, e2, e3, values);
      for (std::size_t n = 0; n < ps.size(); ++n) {
        MeasureResult r;
        r.kind = k;
        detail::finalize_value(r, values[n]);
        t.rows[first + n].push_back(r.value);
      }
    }
  }
  return t;
}

}  // namespace qcorr
