// Classify two 5x5 reciprocal matrices and compare with ellipse fits of the
// sampled curve branches.

#include "kipp/classify.hpp"
#include "kipp/curve.hpp"

#include <cstdio>
#include <vector>

int main() {
  for (std::vector<double> b : {std::vector<double>{1.5, 2, 2.5, 1.5}, std::vector<double>{1.5, 2, 2, 3}}) {
    const auto m = kipp::build_reciprocal(std::span<const double>(b));
    const auto c = kipp::classify(kipp::a_params(m));
    std::printf("b = (%g, %g, %g, %g): %s\n", b[0], b[1], b[2], b[3], kipp::to_string(c.kind));
    for (const auto& e : c.components)
      std::printf("  factor zeta - (%g tau + %.6f), semi-axes %.6f %.6f\n", e.x, e.z, e.semi_u(), e.semi_v());

    const auto samples = kipp::sample_curve(m);
    for (std::size_t br = 0; br < 2; ++br) {
      const auto f = kipp::fit_ellipse_axis_aligned(kipp::branch_samples(samples, br));
      std::printf("  branch %zu fit: %.6f %.6f, max radial deviation %.2e\n", br, f.semi_u, f.semi_v,
                  f.max_radial_deviation);
    }
  }
}
