#include <cstdio>

#include "mrdepth/mrdepth.hpp"

int main() {
  using namespace mrdepth;

  const DataSet data = generate_scenario({ScenarioTag::Skewed, 500, 11});
  const CenterEstimate center = radial_center(data);
  const CenterEstimate gm = geometric_median(data);
  std::printf("radial center     (%.4f, %.4f)  G = %.4f\n", center.location(0), center.location(1),
              center.g_at_center);
  std::printf("geometric median  (%.4f, %.4f)  G = %.4f\n", gm.location(0), gm.location(1),
              g_multivariate(data, gm.location));

  const MrdDepth mrd(data, center);
  const MahalanobisDepth maha(data);
  for (const Vector& v : {center.location, make_point({1.0, 1.0}), make_point({0.0, 4.0})}) {
    std::printf("v = (%6.3f, %6.3f)  mrd %.4f  mahalanobis %.4f  tukey %.4f\n", v(0), v(1), mrd(v), maha(v),
                tukey_depth_2d(data, v));
  }

  const Sample1D sample({-1.2, -0.4, 0.1, 0.3, 0.9, 2.5});
  const Subgradient sg = subgradient(sample, 0.0);
  std::printf("univariate G(0) = %.3f, subgradient [%.3f, %.3f]\n", g_univariate(sample, 0.0), sg.d_minus(),
              sg.d_plus());
  return 0;
}
