#pragma once

#include <vector>

#include "pgz/ratfunc.hpp"

namespace pgz {

// Automorphism of the coefficient field Q(params), given by the images of the
// parameter variables under the map and under its inverse.
class FieldAutomorphism {
public:
  FieldAutomorphism() = default;
  FieldAutomorphism(VarTablePtr params, std::vector<RatFunc> forward, std::vector<RatFunc> inverse);

  static FieldAutomorphism identity(const VarTablePtr& params);

  const VarTablePtr& params() const { return params_; }
  const std::vector<RatFunc>& forward() const { return forward_; }
  const std::vector<RatFunc>& backward() const { return inverse_; }

  RatFunc apply(const RatFunc& f) const;
  RatFunc apply_inverse(const RatFunc& f) const;
  KPoly apply(const KPoly& p) const;  // on coefficients
  KPoly apply_inverse(const KPoly& p) const;

  FieldAutomorphism inverted() const { return FieldAutomorphism(params_, inverse_, forward_); }
  bool is_identity() const;

  // forward(inverse(v)) == v and inverse(forward(v)) == v for every parameter.
  bool round_trip_ok() const;

private:
  static RatFunc image(const RatFunc& f, const VarTablePtr& params, const std::vector<RatFunc>& imgs);

  VarTablePtr params_;
  std::vector<RatFunc> forward_;
  std::vector<RatFunc> inverse_;
};

}  // namespace pgz
