#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bumpfn/coefficients.hpp"
#include "bumpfn/function_id.hpp"

namespace bumpfn {

// Symbolic closed form of the i-th derivative (i >= 1):
//
//   sign_factor * exp(exponent_sign / t) * t^(-power) * sum_k s_k a(i,k) t^k
//
// with s_k = (-1)^k when `alternating`, else 1. For F the form only
// applies on t > 0 and the derivative is identically zero on t <= 0.
struct DerivativeForm {
  FunctionId function;
  int order;
  int sign_factor;
  int exponent_sign;
  int power;
  CoefficientRow row;
  bool alternating;
  bool zero_for_nonpositive;
};

DerivativeForm derivative_form(FunctionId fn, int order);

enum class EvalStatus { finite, underflow_zero, overflow_inf, undefined_at_zero };

std::string_view to_string(EvalStatus status);

// value == sign * exp(log_magnitude); sign == 0 encodes an exact zero.
struct LogForm {
  int sign;
  double log_magnitude;
};

struct EvalResult {
  double value;
  EvalStatus status;
  std::optional<LogForm> log_form;
};

// i-th derivative of fn at t (i == 0 is the function itself).
//
// Results below the normal double range are reported as underflow_zero with
// a signed zero value, results above it as overflow_inf with a signed
// infinity. In both cases, and for every finite nonzero result, log_form
// carries the sign and natural log of the magnitude. G and H at t == 0 give
// undefined_at_zero with a NaN value. Throws DomainError for i < 0 or
// non-finite t.
EvalResult eval_derivative(FunctionId fn, int i, double t);

// Natural log of exp(+-1/t) |t|^(-2i) sum_k a(i,k) |t|^k, the magnitude the
// derivative would have without any cancellation in its polynomial part.
// Used as the roundoff scale for near-zero derivative values. nullopt where
// the function is undefined or identically zero.
std::optional<double> log_magnitude_scale(FunctionId fn, int i, double t);

enum class Side { left_of_zero, right_of_zero };
enum class LimitKind { zero, plus_infinity };

std::string_view to_string(Side side);
std::string_view to_string(LimitKind kind);

struct LimitSample {
  double t;
  double value;
  double log_magnitude;
};

struct LimitClassification {
  FunctionId function;
  Side side;
  LimitKind limit;
  // Function values at t = +-10^(-j/2), j = 0..16, approaching zero.
  std::vector<LimitSample> evidence;
};

// One-sided limit of G or H at 0. The classification comes from the sampled
// approach and is cross-checked against the analytic table
//   H: 0- -> 0, 0+ -> +inf;  G: 0- -> +inf, 0+ -> 0.
// Throws DomainError for F (continuous at 0) and InconsistencyError if the
// samples are not monotone or disagree with the table.
LimitClassification limit_at_zero(FunctionId fn, Side side);

struct ReflectionResidual {
  // finite when both sides evaluated finitely; otherwise the first
  // non-finite status and no residual.
  EvalStatus status;
  std::optional<double> residual;
};

// |g^(i)(t) - (-1)^i h^(i)(-t)| / max(1, |g^(i)(t)|). Throws DomainError at t == 0.
ReflectionResidual reflection_residual(int i, double t);

struct EvalTraceRow {
  FunctionId function;
  int order;
  double t;
  EvalResult result;
};

// CSV columns: fn,i,t,value,status,sign,log_magnitude. Missing log forms
// leave sign and log_magnitude empty.
void write_eval_trace_csv(std::ostream& os, std::span<const EvalTraceRow> rows);

}  // namespace bumpfn
