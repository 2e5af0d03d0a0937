#pragma once

#include "qimet/correspondence.hpp"

namespace qimet::interp {

/// The deformation family R_t over a correspondence's point set:
/// |(x,y),(x',y')|_t = (1-t)|x,x'| + t|y,y'|. A continuous path from X to Y
/// whose length is bounded by e^{2r} - e^r with r = q-dis R.
struct InterpolationFamily {
  Correspondence R;
  FiniteMetricSpace X;
  FiniteMetricSpace Y;
  double r;  // q-dis of R between X and Y

  static InterpolationFamily make(Correspondence R, FiniteMetricSpace X,
                                  FiniteMetricSpace Y);
};

/// The interpolated distances on the un-quotiented point set R.
PseudoMetricSpace sample_raw(const InterpolationFamily& fam, double t);

/// The interpolated space at t in [0,1]. At the endpoints the pseudometric
/// is quotiented by zero distances, reproducing X and Y up to relabeling.
FiniteMetricSpace sample(const InterpolationFamily& fam, double t);

/// q-dis of the identity correspondence between R_t and R_s, computed on
/// the un-quotiented point set.
double step_distortion(const InterpolationFamily& fam, double t, double s);

/// The proof's bound on step_distortion: max(D1, D2) with
/// e^{D1} = 1 + delta(e^r - 1) and e^{2 D2} - e^{D2} = delta(e^{2r} - e^r),
/// delta = |t - s|.
double step_bound(double r, double delta);

/// Sum of step distortions over a uniform partition of [0,1]; an upper
/// bound on the path length that never exceeds e^{2r} - e^r and grows
/// weakly under refinement.
double path_length_estimate(const InterpolationFamily& fam, std::size_t partitions);

}  // namespace qimet::interp
