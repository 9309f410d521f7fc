#include "bumpfn/partition.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include <json.hpp>

#include "bumpfn/derivatives.hpp"
#include "bumpfn/errors.hpp"
#include "bumpfn/format.hpp"

namespace bumpfn {

namespace {

void check_order(int order) {
  if (order < 0 || order > kMaxJetOrder) {
    throw DomainError("jet order must be in [0, " + std::to_string(kMaxJetOrder) + "], got " +
                      std::to_string(order));
  }
}

// Jet of s -> f(1 - s) at s = t.
Jet reflected_jet_of_f(double t, int order) {
  Jet j = jet_of_f(1.0 - t, order);
  return compose_affine(j, -1.0, t);
}

}  // namespace

Jet jet_of_f(double t, int order) {
  check_order(order);
  if (t <= kEdgeCutoff) return Jet(t, order);
  const EvalResult f0 = eval_derivative(FunctionId::F, 0, t);
  if (f0.log_form->log_magnitude < kLogUnderflowCutoff) return Jet(t, order);

  std::vector<double> c(static_cast<std::size_t>(order) + 1);
  double factorial = 1.0;
  for (int i = 0; i <= order; ++i) {
    if (i > 1) factorial *= i;
    const EvalResult r = eval_derivative(FunctionId::F, i, t);
    c[static_cast<std::size_t>(i)] =
        r.status == EvalStatus::finite
            ? r.value / factorial
            : r.log_form->sign * std::exp(r.log_form->log_magnitude - std::lgamma(i + 1.0));
  }
  return Jet(t, std::move(c));
}

Jet smooth_step(double t, int order) {
  check_order(order);
  if (t <= 0.0) return Jet(t, order);
  if (t >= 1.0) return Jet::constant(t, order, 1.0);
  const Jet rising = jet_of_f(t, order);
  if (rising.is_zero()) return Jet(t, order);
  const Jet falling = reflected_jet_of_f(t, order);
  if (falling.is_zero()) return Jet::constant(t, order, 1.0);
  const Jet denominator = rising + falling;
  // t and 1 - t cannot both be <= 0, so f(t) + f(1 - t) > 0.
  if (!(denominator.value() > 0.0)) {
    throw InconsistencyError("smooth step denominator vanished at t=" + format_double(t));
  }
  return rising / denominator;
}

void Patch::validate() const {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !std::isfinite(ramp)) {
    throw DomainError("patch bounds and ramp must be finite");
  }
  if (!(lower < upper)) {
    throw DomainError("patch lower " + format_double(lower) + " must be below upper " +
                      format_double(upper));
  }
  if (!(ramp > 0.0) || ramp > (upper - lower) / 2.0) {
    throw DomainError("patch ramp " + format_double(ramp) + " must lie in (0, " +
                      format_double((upper - lower) / 2.0) + "]");
  }
}

Jet bump(const Patch& patch, double x, int order) {
  check_order(order);
  patch.validate();
  if (x <= patch.lower || x >= patch.upper) return Jet(x, order);
  const double inv_ramp = 1.0 / patch.ramp;
  const Jet rise =
      compose_affine(smooth_step((x - patch.lower) * inv_ramp, order), inv_ramp, x);
  const Jet fall =
      compose_affine(smooth_step((patch.upper - x) * inv_ramp, order), -inv_ramp, x);
  return rise * fall;
}

void validate_cover(const Cover& cover) {
  if (!std::isfinite(cover.domain_lower) || !std::isfinite(cover.domain_upper) ||
      !(cover.domain_lower <= cover.domain_upper)) {
    throw DomainError("cover domain must be a finite interval [A, B] with A <= B");
  }
  if (cover.patches.empty()) throw DomainError("cover has no patches");
  for (const auto& p : cover.patches) p.validate();

  // Sweep: x is covered iff some patch has lower < x < upper.
  double x = cover.domain_lower;
  while (true) {
    double reach = x;
    for (const auto& p : cover.patches) {
      if (p.lower < x && p.upper > reach) reach = p.upper;
    }
    if (reach <= x) {
      throw CoverageError(x, "cover leaves x=" + format_double(x) + " uncovered");
    }
    if (reach > cover.domain_upper) return;
    x = reach;
  }
}

Cover parse_cover_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("cover JSON: ") + e.what());
  }
  try {
    const auto& domain = doc.at("domain");
    if (!domain.is_array() || domain.size() != 2) throw ParseError("cover JSON: domain must be [A, B]");
    Cover cover{domain.at(0).get<double>(), domain.at(1).get<double>(), {}};
    for (const auto& p : doc.at("patches")) {
      cover.patches.push_back(
          {p.at("lower").get<double>(), p.at("upper").get<double>(), p.at("ramp").get<double>()});
    }
    return cover;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("cover JSON: ") + e.what());
  }
}

PartitionOfUnity::PartitionOfUnity(Cover cover) : cover_(std::move(cover)) {
  validate_cover(cover_);
}

std::vector<Jet> PartitionOfUnity::weights(double x, int order) const {
  check_order(order);
  if (!(x >= cover_.domain_lower && x <= cover_.domain_upper)) {
    throw DomainError("x=" + format_double(x) + " lies outside the cover domain");
  }
  std::vector<Jet> bumps;
  bumps.reserve(size());
  Jet total(x, order);
  for (const auto& p : cover_.patches) {
    bumps.push_back(bump(p, x, order));
    total += bumps.back();
  }
  if (!(total.value() > 0.0)) {
    throw CoverageError(x, "every bump vanishes numerically at x=" + format_double(x));
  }
  for (Jet& b : bumps) {
    if (!b.is_zero()) b /= total;
  }
  return bumps;
}

std::vector<WeightSample> pou_over_cover(const Cover& cover, std::span<const double> points,
                                         int order) {
  const PartitionOfUnity pou(cover);
  std::vector<WeightSample> out;
  out.reserve(points.size());
  for (double x : points) out.push_back({x, pou.weights(x, order)});
  return out;
}

void write_weights_csv(std::ostream& os, std::span<const WeightSample> samples, int order) {
  os << "x,patch_index,weight";
  for (int m = 1; m <= order; ++m) os << ",d" << m;
  os << '\n';
  for (const auto& s : samples) {
    for (std::size_t j = 0; j < s.weights.size(); ++j) {
      os << format_double(s.x) << ',' << j << ',' << format_double(s.weights[j].value());
      for (int m = 1; m <= order; ++m) os << ',' << format_double(s.weights[j].derivative(m));
      os << '\n';
    }
  }
}

}  // namespace bumpfn
