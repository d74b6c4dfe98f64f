// Find 6x6 parameter sets whose curve splits into three ellipses, with A1 and
// A5 fixed, and check one of them against the sampled curve.

#include "kipp/curve.hpp"
#include "kipp/manifold.hpp"

#include <cstdio>

int main() {
  const auto rep = kipp::solve_m6({kipp::FixedParam{1, 20.0}, kipp::FixedParam{5, 40.0}});
  for (const auto& s : rep.solutions)
    std::printf("A = (%.10g, %.10g, %.10g, %.10g, %.10g)%s\n", s.A[0], s.A[1], s.A[2], s.A[3], s.A[4],
                s.realizable ? "" : "  [not realizable]");

  const auto& first = rep.solutions.front();
  const auto m = kipp::realize(first);
  const auto c = kipp::three_ellipses6(kipp::a_params(m));
  const auto samples = kipp::sample_curve(m);
  for (std::size_t k = 0; k < c.components.size(); ++k) {
    const auto f = kipp::fit_ellipse_axis_aligned(kipp::branch_samples(samples, k));
    std::printf("component %zu: predicted %.8f x %.8f, fitted %.8f x %.8f\n", k, c.components[k].semi_u(),
                c.components[k].semi_v(), f.semi_u, f.semi_v);
  }
}
