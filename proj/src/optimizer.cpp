#include "qcorr/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "qcorr/error.hpp"
#include "qcorr/parallel.hpp"

namespace qcorr {

void OptimizerOptions::validate() const {
  if (n_theta < 16 || n_phi < 8) throw DomainError("optimizer grid must be at least 16 x 8");
  if (!(refine_tolerance > 0.0)) throw DomainError("optimizer tolerance must be positive");
  if (max_refine_iters < 0) throw DomainError("optimizer iteration cap must be non-negative");
}

namespace {

struct Vertex {
  double theta;
  double phi;
  double f;
};

}  // namespace

SphereMinimum minimize_on_sphere(const std::function<double(const MeasurementBasis&)>& f,
                                 const OptimizerOptions& opts) {
  opts.validate();
  using std::numbers::pi;

  const int nt = opts.n_theta;
  const int np = opts.n_phi;
  const double dtheta = (pi / 2) / (nt - 1);
  const double dphi = 2 * pi / np;

  std::vector<double> grid(static_cast<std::size_t>(nt) * np);
  parallel_for(grid.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k) / np;
    const int j = static_cast<int>(k) % np;
    grid[k] = f(MeasurementBasis::from_angles(i * dtheta, j * dphi));
  });

  std::size_t best = 0;
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (grid[k] < grid[best]) best = k;

  SphereMinimum out;
  out.trace.grid_evaluations = static_cast<int>(grid.size());

  auto eval = [&f](double theta, double phi) { return f(MeasurementBasis::from_angles(theta, phi)); };

  const double t0 = static_cast<int>(best) / np * dtheta;
  const double p0 = static_cast<int>(best) % np * dphi;
  std::array<Vertex, 3> s{Vertex{t0, p0, grid[best]}, Vertex{t0 + dtheta, p0, eval(t0 + dtheta, p0)},
                          Vertex{t0, p0 + dphi, eval(t0, p0 + dphi)}};

  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  int iter = 0;
  double spread = 0.0;
  for (; iter < opts.max_refine_iters; ++iter) {
    std::sort(s.begin(), s.end(), by_value);
    spread = s[2].f - s[0].f;
    const double size = std::max(std::hypot(s[1].theta - s[0].theta, s[1].phi - s[0].phi),
                                 std::hypot(s[2].theta - s[0].theta, s[2].phi - s[0].phi));
    if (spread <= opts.refine_tolerance && size <= 1e-7) {
      out.trace.converged = true;
      break;
    }

    const double ct = 0.5 * (s[0].theta + s[1].theta);
    const double cp = 0.5 * (s[0].phi + s[1].phi);
    auto along = [&](double a) {
      const double t = ct + a * (s[2].theta - ct);
      const double p = cp + a * (s[2].phi - cp);
      return Vertex{t, p, eval(t, p)};
    };

    const Vertex r = along(-1.0);
    if (r.f < s[0].f) {
      const Vertex e = along(-2.0);
      s[2] = e.f < r.f ? e : r;
    } else if (r.f < s[1].f) {
      s[2] = r;
    } else {
      const Vertex c = r.f < s[2].f ? along(-0.5) : along(0.5);
      if (c.f < std::min(r.f, s[2].f)) {
        s[2] = c;
      } else {
        for (int k = 1; k < 3; ++k) {
          const double t = 0.5 * (s[0].theta + s[k].theta);
          const double p = 0.5 * (s[0].phi + s[k].phi);
          s[k] = Vertex{t, p, eval(t, p)};
        }
      }
    }
  }
  std::sort(s.begin(), s.end(), by_value);
  out.trace.iterations = iter;
  out.trace.final_tolerance = s[2].f - s[0].f;

  if (s[0].f < grid[best]) {
    out.value = s[0].f;
    out.argmin = MeasurementBasis::from_angles(s[0].theta, s[0].phi);
  } else {
    out.value = grid[best];
    out.argmin = MeasurementBasis::from_angles(t0, p0);
  }
  return out;
}

}  // namespace qcorr
