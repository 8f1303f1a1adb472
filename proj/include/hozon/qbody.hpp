#pragma once

#include <vector>

#include "hozon/common.hpp"
#include "hozon/kernels.hpp"

namespace hozon {

// Convex body Q in the row space M[1,m] containing the origin, evaluated only
// through its support function. All built-ins are closed-form.
struct QBody {
  kernels::QKind kind = kernels::QKind::kSegment;
  int m = 1;
  bool strictly_convex = false;

  double h(const Eigen::RowVectorXd& w) const {
    return kernels::hq_scalar(kind, m, w.data());
  }
  double h_flat(const double* w) const { return kernels::hq_scalar(kind, m, w); }

  // Vertices of the polytopal kinds (used by the L^infinity centroid body).
  std::vector<Eigen::RowVectorXd> vertices() const {
    std::vector<Eigen::RowVectorXd> out;
    using kernels::QKind;
    switch (kind) {
      case QKind::kSegment:
        out.push_back(Eigen::RowVectorXd::Constant(1, -1.0));
        out.push_back(Eigen::RowVectorXd::Constant(1, 1.0));
        break;
      case QKind::kCube:
        for (int c = 0; c < (1 << m); ++c) {
          Eigen::RowVectorXd v(m);
          for (int i = 0; i < m; ++i) v[i] = (c >> i) & 1 ? 1.0 : -1.0;
          out.push_back(v);
        }
        break;
      case QKind::kSimplex:
      case QKind::kNegSimplex: {
        const double s = kind == QKind::kSimplex ? 1.0 : -1.0;
        out.push_back(Eigen::RowVectorXd::Zero(m));
        for (int i = 0; i < m; ++i) {
          Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(m);
          v[i] = s;
          out.push_back(v);
        }
        break;
      }
      case QKind::kBall:
        break;  // not polytopal
    }
    return out;
  }
};

inline QBody make_q_segment() { return QBody{kernels::QKind::kSegment, 1, false}; }
inline QBody make_q_cube(int m) {
  if (m == 1) return make_q_segment();
  return QBody{kernels::QKind::kCube, m, false};
}
inline QBody make_q_simplex(int m) { return QBody{kernels::QKind::kSimplex, m, false}; }
inline QBody make_q_neg_simplex(int m) {
  return QBody{kernels::QKind::kNegSimplex, m, false};
}
inline QBody make_q_ball(int m) { return QBody{kernels::QKind::kBall, m, true}; }

}  // namespace hozon
