#include "netsim/math.hpp"

#include <algorithm>
#include <utility>

namespace netsim {

SymEigen3 sym_eigen3(const Mat3& a) {
  // Work on a copy; accumulate rotations in v.
  double q[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) q[i][j] = 0.5 * (a(i, j) + a(j, i));
  double v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = std::abs(q[0][1]) + std::abs(q[0][2]) + std::abs(q[1][2]);
    if (off < 1e-15 * (std::abs(q[0][0]) + std::abs(q[1][1]) + std::abs(q[2][2]) + 1e-300))
      break;
    for (int p = 0; p < 2; ++p) {
      for (int r = p + 1; r < 3; ++r) {
        if (q[p][r] == 0.0) continue;
        const double theta = (q[r][r] - q[p][p]) / (2.0 * q[p][r]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double qpk = q[p][k];
          const double qrk = q[r][k];
          q[p][k] = c * qpk - s * qrk;
          q[r][k] = s * qpk + c * qrk;
        }
        for (int k = 0; k < 3; ++k) {
          const double qkp = q[k][p];
          const double qkr = q[k][r];
          q[k][p] = c * qkp - s * qkr;
          q[k][r] = s * qkp + c * qkr;
          const double vkp = v[k][p];
          const double vkr = v[k][r];
          v[k][p] = c * vkp - s * vkr;
          v[k][r] = s * vkp + c * vkr;
        }
      }
    }
  }

  int order[3] = {0, 1, 2};
  std::sort(order, order + 3, [&](int i, int j) { return q[i][i] < q[j][j]; });

  SymEigen3 out;
  for (int i = 0; i < 3; ++i) {
    const int k = order[i];
    out.values[i] = q[k][k];
    out.vectors[i] = normalized(Vec3{v[0][k], v[1][k], v[2][k]});
  }
  return out;
}

}  // namespace netsim
