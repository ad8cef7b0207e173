#include "pgz/automorphism.hpp"

#include "pgz/error.hpp"

namespace pgz {

FieldAutomorphism::FieldAutomorphism(VarTablePtr params, std::vector<RatFunc> forward, std::vector<RatFunc> inverse)
    : params_(std::move(params)), forward_(std::move(forward)), inverse_(std::move(inverse)) {
  std::size_t n = params_ ? params_->size() : 0;
  if (forward_.size() != n || inverse_.size() != n) throw StructuralError("automorphism image count mismatch");
  for (auto& f : forward_) f = f.rebase(params_);
  for (auto& f : inverse_) f = f.rebase(params_);
}

FieldAutomorphism FieldAutomorphism::identity(const VarTablePtr& params) {
  std::vector<RatFunc> id;
  for (std::size_t i = 0; params && i < params->size(); ++i) id.emplace_back(QPoly::variable(params, i));
  return FieldAutomorphism(params, id, id);
}

RatFunc FieldAutomorphism::image(const RatFunc& f, const VarTablePtr& params, const std::vector<RatFunc>& imgs) {
  if (f.is_constant() || imgs.empty()) return f;
  RatFunc g = f.rebase(params);
  std::vector<std::optional<RatFunc>> images(imgs.begin(), imgs.end());
  return substitute(g, images, params);
}

RatFunc FieldAutomorphism::apply(const RatFunc& f) const { return image(f, params_, forward_); }
RatFunc FieldAutomorphism::apply_inverse(const RatFunc& f) const { return image(f, params_, inverse_); }

KPoly FieldAutomorphism::apply(const KPoly& p) const {
  return p.map_coefficients<RatFunc>([&](const RatFunc& c) { return apply(c); });
}

KPoly FieldAutomorphism::apply_inverse(const KPoly& p) const {
  return p.map_coefficients<RatFunc>([&](const RatFunc& c) { return apply_inverse(c); });
}

bool FieldAutomorphism::is_identity() const {
  for (std::size_t i = 0; i < forward_.size(); ++i)
    if (forward_[i] != RatFunc(QPoly::variable(params_, i))) return false;
  return true;
}

bool FieldAutomorphism::round_trip_ok() const {
  for (std::size_t i = 0; i < forward_.size(); ++i) {
    RatFunc v(QPoly::variable(params_, i));
    if (apply(apply_inverse(v)) != v) return false;
    if (apply_inverse(apply(v)) != v) return false;
  }
  return true;
}

}  // namespace pgz
