#include "bumpfn/monotonicity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "bumpfn/coefficients.hpp"
#include "bumpfn/derivatives.hpp"
#include "bumpfn/errors.hpp"
#include "bumpfn/format.hpp"

namespace bumpfn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTruncLow = 1e-3;
constexpr double kTruncHigh = 1e3;

double parse_bound(std::string_view text) {
  if (text == "inf" || text == "+inf") return kInf;
  if (text == "-inf") return -kInf;
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty() || !std::isfinite(value)) {
    throw ParseError("bad interval bound '" + std::string(text) + "'");
  }
  return value;
}

// Log-spaced grid over the positive interval (lower, upper), lower >= 0.
std::vector<double> positive_grid(double lower, double upper, int samples) {
  const double hi = std::isinf(upper) ? std::max(kTruncHigh, kTruncHigh * lower) : upper;
  const double lo = lower > 0.0 ? lower : std::min(kTruncLow, hi * 1e-6);
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(samples));
  if (samples == 1) {
    grid.push_back(std::sqrt(lo * hi));
    return grid;
  }
  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  for (int j = 0; j < samples; ++j) {
    double t = (j == 0) ? lo
               : (j == samples - 1)
                   ? hi
                   : std::exp(log_lo + (log_hi - log_lo) * j / (samples - 1));
    if (t <= lower) t = std::nextafter(lower, kInf);
    if (t >= upper) t = std::nextafter(upper, 0.0);
    grid.push_back(t);
  }
  return grid;
}

std::vector<double> mirrored(std::vector<double> grid) {
  std::reverse(grid.begin(), grid.end());
  for (double& t : grid) t = -t;
  return grid;
}

void check_common(const IntervalSpec& interval, int max_order, int samples) {
  if (!(interval.lower < interval.upper)) throw DomainError("empty interval " + interval.to_string());
  if (max_order < 0) throw DomainError("max_order must be >= 0");
  if (samples < 1) throw DomainError("samples must be >= 1");
}

void check_defined_on(FunctionId fn, const IntervalSpec& interval) {
  if (fn != FunctionId::F && interval.contains(0.0)) {
    throw DomainError(std::string(to_string(fn)) + " is undefined at 0, which lies in " +
                      interval.to_string());
  }
}

bool coefficients_positive(int max_order) {
  for (int i = 1; i <= max_order; ++i) {
    for (const auto& a : coefficient_row(i).entries()) {
      if (a <= 0) return false;
    }
  }
  return true;
}

Verdict finish(MonotonicityReport& report, bool exact) {
  if (exact && !report.witnesses.empty()) {
    throw InconsistencyError("sampling contradicts the exact proof for " + report.subject.name() +
                             " on " + report.interval.to_string());
  }
  if (exact) return Verdict::proved_exact;
  return report.witnesses.empty() ? Verdict::verified_sampled : Verdict::violated;
}

// CM and AM differ only in the required sign of q^(n): (-1)^n or +1.
MonotonicityReport check_derivative_signs(MonotonicityKind kind, FunctionId fn,
                                          const IntervalSpec& interval, int max_order,
                                          int samples) {
  check_common(interval, max_order, samples);
  check_defined_on(fn, interval);

  bool exact = false;
  if (fn == FunctionId::F && interval.within_nonpositive()) {
    exact = true;  // f vanishes identically there
  } else if (kind == MonotonicityKind::CM && fn == FunctionId::H && interval.within_nonnegative()) {
    // every term of exp(1/t) t^-2i sum a(i,k) t^k is positive for t > 0
    exact = coefficients_positive(max_order);
  } else if (kind == MonotonicityKind::AM && fn == FunctionId::G && interval.within_nonpositive()) {
    // (-1)^k a(i,k) t^k = a(i,k) |t|^k > 0 for t < 0
    exact = coefficients_positive(max_order);
  }

  MonotonicityReport report{kind, Subject{fn}, interval, max_order, Verdict::verified_sampled, {}, samples};
  const auto grid = sample_grid(interval, samples);
  const double log_tolerance = std::log(kSampleTolerance);
  for (int n = 0; n <= max_order; ++n) {
    const int required = (kind == MonotonicityKind::CM && n % 2 == 1) ? -1 : 1;
    bool witnessed = false;
    for (double t : grid) {
      ++report.sampled_checks;
      const EvalResult r = eval_derivative(fn, n, t);
      if (!r.log_form || required * r.log_form->sign >= 0) continue;
      const auto scale = log_magnitude_scale(fn, n, t);
      if (scale && r.log_form->log_magnitude - *scale < log_tolerance) {
        ++report.tolerance_forgiven;
        continue;
      }
      if (!witnessed) {
        report.witnesses.push_back({n, t, required * r.value});
        witnessed = true;
      }
    }
  }
  report.verdict = finish(report, exact);
  return report;
}

}  // namespace

IntervalSpec IntervalSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || text.find(':', colon + 1) != std::string::npos) {
    throw ParseError("interval must look like a:b, got '" + text + "'");
  }
  IntervalSpec spec{parse_bound(std::string_view(text).substr(0, colon)),
                    parse_bound(std::string_view(text).substr(colon + 1))};
  if (!(spec.lower < spec.upper)) throw ParseError("interval '" + text + "' is empty");
  return spec;
}

IntervalSpec IntervalSpec::positive_half_line() { return {0.0, kInf}; }
IntervalSpec IntervalSpec::negative_half_line() { return {-kInf, 0.0}; }

bool IntervalSpec::contains(double t) const {
  const bool above = open_lower ? t > lower : t >= lower;
  const bool below = open_upper ? t < upper : t <= upper;
  return above && below;
}

std::string IntervalSpec::to_string() const {
  return format_double(lower) + ":" + format_double(upper);
}

std::vector<double> sample_grid(const IntervalSpec& interval, int samples) {
  if (samples < 1) throw DomainError("samples must be >= 1");
  if (interval.within_nonnegative()) return positive_grid(interval.lower, interval.upper, samples);
  if (interval.within_nonpositive()) {
    return mirrored(positive_grid(-interval.upper, -interval.lower, samples));
  }
  const int negative = samples / 2;
  std::vector<double> grid;
  if (negative > 0) grid = mirrored(positive_grid(0.0, -interval.lower, negative));
  const auto pos = positive_grid(0.0, interval.upper, samples - negative);
  grid.insert(grid.end(), pos.begin(), pos.end());
  return grid;
}

std::string_view to_string(MonotonicityKind kind) {
  switch (kind) {
    case MonotonicityKind::CM: return "cm";
    case MonotonicityKind::AM: return "am";
    case MonotonicityKind::LCM: return "lcm";
  }
  return "?";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::proved_exact: return "proved_exact";
    case Verdict::verified_sampled: return "verified_sampled";
    case Verdict::violated: return "violated";
  }
  return "?";
}

std::string Subject::name() const {
  return (reciprocal ? "1/" : "") + std::string(bumpfn::to_string(function));
}

Subject Subject::parse(const std::string& text) {
  std::string_view rest = text;
  const bool reciprocal = rest.starts_with("1/");
  if (reciprocal) rest.remove_prefix(2);
  const auto fn = parse_function_id(rest);
  if (!fn) throw ParseError("unknown function '" + text + "'");
  return Subject{*fn, reciprocal};
}

MonotonicityReport check_cm(FunctionId fn, const IntervalSpec& interval, int max_order, int samples) {
  return check_derivative_signs(MonotonicityKind::CM, fn, interval, max_order, samples);
}

MonotonicityReport check_am(FunctionId fn, const IntervalSpec& interval, int max_order, int samples) {
  return check_derivative_signs(MonotonicityKind::AM, fn, interval, max_order, samples);
}

double log_derivative_one_over_t(int k, double t, int sign) {
  if (t == 0.0) throw DomainError("1/t has no derivatives at 0");
  if (k < 0) throw DomainError("derivative order must be >= 0");
  double r = (k % 2 == 0) ? sign : -sign;
  for (int j = 2; j <= k; ++j) r *= j;
  for (int j = 0; j <= k; ++j) r /= t;
  return r;
}

MonotonicityReport check_lcm(Subject subject, const IntervalSpec& interval, int max_order,
                             int samples) {
  check_common(interval, max_order, samples);
  check_defined_on(subject.function, interval);
  if (subject.function == FunctionId::F && !interval.within_nonnegative()) {
    throw DomainError(subject.name() + " is not positive on " + interval.to_string());
  }

  // ln h = 1/t; ln g = ln f = -1/t on their positive sets.
  int log_sign = subject.function == FunctionId::H ? 1 : -1;
  if (subject.reciprocal) log_sign = -log_sign;

  // (-1)^k [s/t]^(k) = s k! t^-(k+1): positive for all k iff s = +1 and t > 0.
  const bool exact = log_sign == 1 && interval.within_nonnegative();

  MonotonicityReport report{MonotonicityKind::LCM, subject, interval, max_order,
                            Verdict::verified_sampled, {}, samples};
  const auto grid = sample_grid(interval, samples);
  for (int k = 1; k <= max_order; ++k) {
    bool witnessed = false;
    for (double t : grid) {
      ++report.sampled_checks;
      const double v = ((k % 2 == 0) ? 1.0 : -1.0) * log_derivative_one_over_t(k, t, log_sign);
      if (v < 0.0 && !witnessed) {
        report.witnesses.push_back({k, t, v});
        witnessed = true;
      }
    }
  }
  report.verdict = finish(report, exact);
  return report;
}

bool cm_am_reflection_equivalence(int max_order, int samples) {
  constexpr double tolerance = 1e-12;
  const auto grid = sample_grid(IntervalSpec::positive_half_line(), samples);
  for (int n = 0; n <= max_order; ++n) {
    const int flip = (n % 2 == 0) ? 1 : -1;
    for (double t : grid) {
      const EvalResult h = eval_derivative(FunctionId::H, n, t);
      const EvalResult g = eval_derivative(FunctionId::G, n, -t);
      if (h.status == EvalStatus::finite && g.status == EvalStatus::finite) {
        const double lhs = flip * h.value;
        if (std::fabs(lhs - g.value) > tolerance * std::max(std::fabs(lhs), std::fabs(g.value))) {
          return false;
        }
        continue;
      }
      if (!h.log_form || !g.log_form) return false;
      if (flip * h.log_form->sign != g.log_form->sign) return false;
      if (std::fabs(h.log_form->log_magnitude - g.log_form->log_magnitude) > tolerance) return false;
    }
  }
  return true;
}

nlohmann::json report_to_json(const MonotonicityReport& report) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& w : report.witnesses) {
    nlohmann::json value = std::isfinite(w.value) ? nlohmann::json(w.value)
                                                  : nlohmann::json(format_double(w.value));
    witnesses.push_back({{"order", w.order}, {"t", w.t}, {"value", std::move(value)}});
  }
  return {
      {"kind", to_string(report.kind)},
      {"function", report.subject.name()},
      {"interval", report.interval.to_string()},
      {"max_order", report.max_order},
      {"verdict", to_string(report.verdict)},
      {"witnesses", std::move(witnesses)},
      {"samples_per_order", report.samples_per_order},
  };
}

}  // namespace bumpfn
