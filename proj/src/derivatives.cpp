#include "bumpfn/derivatives.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <string>

#include "bumpfn/errors.hpp"
#include "bumpfn/format.hpp"

namespace bumpfn {

namespace {

// mant * 2^exp2 with |mant| in [0.5, 1), or mant == 0.
struct Scaled {
  double mant = 0.0;
  long exp2 = 0;
};

Scaled normalize(double x, long exp2 = 0) {
  if (x == 0.0) return {0.0, 0};
  int e = 0;
  const double m = std::frexp(x, &e);
  return {m, exp2 + e};
}

Scaled operator*(Scaled a, Scaled b) { return normalize(a.mant * b.mant, a.exp2 + b.exp2); }

double log_abs(Scaled s) {
  return std::log(std::fabs(s.mant)) + static_cast<double>(s.exp2) * std::numbers::ln2;
}

int sign_of(double x) { return (x > 0) - (x < 0); }

// GCC 11 reports a spurious memcpy overflow inside cpp_int's shift.
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wstringop-overflow"
#pragma GCC diagnostic ignored "-Wstringop-overread"
[[gnu::noinline]] Scaled from_big(const BigCoeff& a) {
  const auto bits = static_cast<long>(boost::multiprecision::msb(a)) + 1;
  if (bits <= 960) return normalize(a.convert_to<double>());
  const long shift = bits - 64;
  const BigCoeff top = a >> shift;
  return normalize(top.convert_to<double>(), shift);
}
#pragma GCC diagnostic pop

// m^n for |m| in [0.5, 1) without leaving the double range.
Scaled scaled_pow(double m, long n) {
  if (n > -1000 && n < 1000) return normalize(std::pow(m, static_cast<double>(n)));
  Scaled base = n < 0 ? normalize(1.0 / m) : normalize(m);
  unsigned long k = static_cast<unsigned long>(n < 0 ? -n : n);
  Scaled result = normalize(1.0);
  while (k != 0) {
    if (k & 1UL) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

Scaled scaled_exp(double x) {
  if (std::fabs(x) < 700.0) return normalize(std::exp(x));
  constexpr double ln2_hi = 6.93147180369123816490e-01;
  constexpr double ln2_lo = 1.90821492927058770002e-10;
  const double q = std::nearbyint(x / std::numbers::ln2);
  const double r = (x - q * ln2_hi) - q * ln2_lo;
  return normalize(std::exp(r), static_cast<long>(q));
}

struct CachedRow {
  std::vector<Scaled> scaled;
  std::vector<double> plain;  // only filled when every entry fits a double
};

const CachedRow& cached_row(int i) {
  static std::mutex mutex;
  static std::deque<CachedRow> cache;
  std::lock_guard lock(mutex);
  while (static_cast<int>(cache.size()) < i) {
    const auto& row = coefficient_row(static_cast<int>(cache.size()) + 1);
    CachedRow converted;
    bool fits = true;
    for (const auto& a : row.entries()) {
      converted.scaled.push_back(from_big(a));
      fits = fits && converted.scaled.back().exp2 < 1000;
    }
    if (fits) {
      for (const auto& s : converted.scaled) converted.plain.push_back(std::ldexp(s.mant, static_cast<int>(s.exp2)));
    }
    cache.push_back(std::move(converted));
  }
  return cache[static_cast<std::size_t>(i - 1)];
}

constexpr int kHornerMaxOrder = 25;

// sum_k s_k a(i,k) x^k, s_k = (-1)^k when alternating.
Scaled polynomial_part(int i, double x, bool alternating) {
  const CachedRow& row = cached_row(i);
  if (i <= kHornerMaxOrder && !row.plain.empty()) {
    auto coeff = [&](int k) {
      const double a = row.plain[static_cast<std::size_t>(k)];
      return (alternating && (k % 2 == 1)) ? -a : a;
    };
    double s = coeff(i - 1);
    for (int k = i - 2; k >= 0; --k) s = s * x + coeff(k);
    if (std::isfinite(s)) return normalize(s);
  }

  // Scaled terms, summed relative to the largest with Neumaier compensation.
  const Scaled base = normalize(x);
  std::vector<Scaled> terms(static_cast<std::size_t>(i));
  Scaled power = normalize(1.0);
  long emax = std::numeric_limits<long>::min();
  for (int k = 0; k < i; ++k) {
    Scaled term = row.scaled[static_cast<std::size_t>(k)] * power;
    if (alternating && (k % 2 == 1)) term.mant = -term.mant;
    terms[static_cast<std::size_t>(k)] = term;
    if (term.mant != 0.0) emax = std::max(emax, term.exp2);
    power = power * base;
  }
  if (emax == std::numeric_limits<long>::min()) return {};
  double sum = 0.0;
  double compensation = 0.0;
  for (const Scaled& term : terms) {
    const long shift = term.exp2 - emax;
    if (term.mant == 0.0 || shift < -1100) continue;
    const double v = std::ldexp(term.mant, static_cast<int>(shift));
    const double s = sum + v;
    compensation += (std::fabs(sum) >= std::fabs(v)) ? (sum - s) + v : (v - s) + sum;
    sum = s;
  }
  return normalize(sum + compensation, emax);
}

struct Prepared {
  int overall_sign;
  double exponent;  // argument of exp()
  int power;        // 2i
  Scaled poly;
};

EvalResult assemble(const Prepared& p, double t) {
  if (p.poly.mant == 0.0) return {0.0, EvalStatus::finite, LogForm{0, -std::numeric_limits<double>::infinity()}};
  const int sign = p.overall_sign * sign_of(p.poly.mant);
  const double abs_t = std::fabs(t);
  const double log_magnitude = p.exponent - p.power * std::log(abs_t) + log_abs(p.poly);
  const LogForm log_form{sign, log_magnitude};

  if (std::fabs(p.exponent) > 0x1p60) {
    // exp() factor alone is far beyond any representable range.
    if (log_magnitude > 0) return {sign * std::numeric_limits<double>::infinity(), EvalStatus::overflow_inf, log_form};
    return {sign * 0.0, EvalStatus::underflow_zero, log_form};
  }

  const Scaled t_scaled = normalize(abs_t);
  Scaled t_power = scaled_pow(t_scaled.mant, -p.power);
  t_power.exp2 -= static_cast<long>(p.power) * t_scaled.exp2;
  Scaled product = scaled_exp(p.exponent) * t_power * p.poly;

  // Normal doubles are 0.5 * 2^exp2 with exp2 in [-1021, 1024].
  if (product.exp2 > 1024) {
    return {sign * std::numeric_limits<double>::infinity(), EvalStatus::overflow_inf, log_form};
  }
  if (product.exp2 < -1021) return {sign * 0.0, EvalStatus::underflow_zero, log_form};
  const double value = std::fabs(std::ldexp(product.mant, static_cast<int>(product.exp2)));
  return {sign * value, EvalStatus::finite, log_form};
}

void check_arguments(int i, double t) {
  if (i < 0) throw DomainError("derivative order must be >= 0, got " + std::to_string(i));
  if (!std::isfinite(t)) throw DomainError("evaluation point must be finite");
}

}  // namespace

DerivativeForm derivative_form(FunctionId fn, int order) {
  if (order < 1) throw DomainError("derivative form needs order >= 1, got " + std::to_string(order));
  const bool is_h = fn == FunctionId::H;
  return DerivativeForm{
      .function = fn,
      .order = order,
      .sign_factor = is_h ? ((order % 2 == 0) ? 1 : -1) : 1,
      .exponent_sign = is_h ? 1 : -1,
      .power = 2 * order,
      .row = coefficient_row(order),
      .alternating = !is_h,
      .zero_for_nonpositive = fn == FunctionId::F,
  };
}

std::string_view to_string(EvalStatus status) {
  switch (status) {
    case EvalStatus::finite: return "finite";
    case EvalStatus::underflow_zero: return "underflow_zero";
    case EvalStatus::overflow_inf: return "overflow_inf";
    case EvalStatus::undefined_at_zero: return "undefined_at_zero";
  }
  return "?";
}

EvalResult eval_derivative(FunctionId fn, int i, double t) {
  check_arguments(i, t);
  if (fn == FunctionId::F && t <= 0.0) {
    return {0.0, EvalStatus::finite, LogForm{0, -std::numeric_limits<double>::infinity()}};
  }
  if (t == 0.0) {
    return {std::numeric_limits<double>::quiet_NaN(), EvalStatus::undefined_at_zero, std::nullopt};
  }
  const bool is_h = fn == FunctionId::H;
  Prepared p{
      .overall_sign = (is_h && i % 2 == 1) ? -1 : 1,
      .exponent = is_h ? 1.0 / t : -1.0 / t,
      .power = 2 * i,
      .poly = i == 0 ? normalize(1.0) : polynomial_part(i, t, !is_h),
  };
  return assemble(p, t);
}

std::optional<double> log_magnitude_scale(FunctionId fn, int i, double t) {
  check_arguments(i, t);
  if (t == 0.0 || (fn == FunctionId::F && t < 0.0)) return std::nullopt;
  const double exponent = fn == FunctionId::H ? 1.0 / t : -1.0 / t;
  if (i == 0) return exponent;
  const double abs_t = std::fabs(t);
  return exponent - 2.0 * i * std::log(abs_t) + log_abs(polynomial_part(i, abs_t, false));
}

std::string_view to_string(Side side) {
  return side == Side::left_of_zero ? "left_of_zero" : "right_of_zero";
}

std::string_view to_string(LimitKind kind) {
  return kind == LimitKind::zero ? "zero" : "plus_infinity";
}

LimitClassification limit_at_zero(FunctionId fn, Side side) {
  if (fn == FunctionId::F) {
    throw DomainError("f is continuous at 0; one-sided limits are both 0");
  }
  const double direction = side == Side::right_of_zero ? 1.0 : -1.0;
  LimitClassification out{fn, side, LimitKind::zero, {}};
  for (int j = 0; j <= 16; ++j) {
    const double t = direction * std::pow(10.0, -0.5 * j);
    const EvalResult r = eval_derivative(fn, 0, t);
    out.evidence.push_back({t, r.value, r.log_form->log_magnitude});
  }

  const auto& ev = out.evidence;
  bool decreasing = true;
  bool increasing = true;
  for (std::size_t n = 1; n < ev.size(); ++n) {
    decreasing = decreasing && ev[n].log_magnitude < ev[n - 1].log_magnitude;
    increasing = increasing && ev[n].log_magnitude > ev[n - 1].log_magnitude;
  }
  const double last = ev.back().log_magnitude;
  if (decreasing && last < -700.0) {
    out.limit = LimitKind::zero;
  } else if (increasing && last > 700.0) {
    out.limit = LimitKind::plus_infinity;
  } else {
    throw InconsistencyError("approach to 0 is not monotone for " + std::string(to_string(fn)));
  }

  // exp(1/t) blows up from the right; exp(-1/t) from the left.
  const bool blows_up = (fn == FunctionId::H) == (side == Side::right_of_zero);
  const LimitKind expected = blows_up ? LimitKind::plus_infinity : LimitKind::zero;
  if (out.limit != expected) {
    throw InconsistencyError("sampled limit of " + std::string(to_string(fn)) + " at " +
                             std::string(to_string(side)) + " disagrees with the analytic limit");
  }
  return out;
}

ReflectionResidual reflection_residual(int i, double t) {
  if (t == 0.0) throw DomainError("reflection residual needs t != 0");
  const EvalResult g = eval_derivative(FunctionId::G, i, t);
  const EvalResult h = eval_derivative(FunctionId::H, i, -t);
  if (g.status != EvalStatus::finite) return {g.status, std::nullopt};
  if (h.status != EvalStatus::finite) return {h.status, std::nullopt};
  const double reflected = (i % 2 == 0) ? h.value : -h.value;
  return {EvalStatus::finite, std::fabs(g.value - reflected) / std::max(1.0, std::fabs(g.value))};
}

void write_eval_trace_csv(std::ostream& os, std::span<const EvalTraceRow> rows) {
  os << "fn,i,t,value,status,sign,log_magnitude\n";
  for (const auto& row : rows) {
    os << to_string(row.function) << ',' << row.order << ',' << format_double(row.t) << ','
       << format_double(row.result.value) << ',' << to_string(row.result.status) << ',';
    if (row.result.log_form) {
      os << row.result.log_form->sign << ',' << format_double(row.result.log_form->log_magnitude);
    } else {
      os << ',';
    }
    os << '\n';
  }
}

}  // namespace bumpfn
