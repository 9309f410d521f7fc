#pragma once

// Executable checks of complete (CM), absolute (AM) and logarithmically
// complete (LCM) monotonicity for f, g, h and the reciprocals 1/g, 1/h.
//
//   CM:  (-1)^n q^(n)(t) >= 0,        n >= 0
//   AM:  q^(n)(t) >= 0,               n >= 0
//   LCM: (-1)^k [ln q]^(k)(t) >= 0,   k >= 1, q > 0
//
// Where a sign argument over exact coefficients settles the question the
// verdict is proved_exact; otherwise the inequality is sampled on a
// deterministic log-spaced grid.

#include <string>
#include <vector>

#include <json.hpp>

#include "bumpfn/function_id.hpp"

namespace bumpfn {

// Open interval (lower, upper); bounds may be infinite.
struct IntervalSpec {
  double lower;
  double upper;
  bool open_lower = true;
  bool open_upper = true;

  // "a:b" with decimal bounds or inf / -inf / +inf. Throws ParseError.
  static IntervalSpec parse(const std::string& text);
  static IntervalSpec positive_half_line();
  static IntervalSpec negative_half_line();

  bool contains(double t) const;
  bool within_nonnegative() const { return lower >= 0.0; }
  bool within_nonpositive() const { return upper <= 0.0; }
  std::string to_string() const;
};

// Sample points used by the checks. Infinite ends are truncated to
// 1e-3 .. 1e3 in magnitude; grids are reproducible bit-for-bit.
std::vector<double> sample_grid(const IntervalSpec& interval, int samples);

enum class MonotonicityKind { CM, AM, LCM };
enum class Verdict { proved_exact, verified_sampled, violated };

std::string_view to_string(MonotonicityKind kind);
std::string_view to_string(Verdict verdict);

// A function from the family, optionally inverted (1/g, 1/h).
struct Subject {
  FunctionId function;
  bool reciprocal = false;

  std::string name() const;
  static Subject parse(const std::string& text);  // "g", "1/h", ...
};

struct Witness {
  int order;
  double t;
  double value;  // the quantity required to be >= 0
};

struct MonotonicityReport {
  MonotonicityKind kind;
  Subject subject;
  IntervalSpec interval;
  int max_order;
  Verdict verdict;
  std::vector<Witness> witnesses;  // first violating sample per order
  int samples_per_order;
  // Sampled-path bookkeeping.
  int sampled_checks = 0;
  int tolerance_forgiven = 0;
};

// Relative roundoff band below zero that sampled checks treat as zero.
inline constexpr double kSampleTolerance = 1e-14;

// Throw DomainError if the interval leaves the function's domain.
MonotonicityReport check_cm(FunctionId fn, const IntervalSpec& interval, int max_order, int samples);
MonotonicityReport check_am(FunctionId fn, const IntervalSpec& interval, int max_order, int samples);

// k-th derivative of sign/t: sign (-1)^k k! t^-(k+1).
double log_derivative_one_over_t(int k, double t, int sign);

// ln q = s/t for every subject on its positive set, s = +-1.
MonotonicityReport check_lcm(Subject subject, const IntervalSpec& interval, int max_order,
                             int samples = 200);
inline MonotonicityReport check_lcm(FunctionId fn, const IntervalSpec& interval, int max_order,
                                    int samples = 200) {
  return check_lcm(Subject{fn}, interval, max_order, samples);
}

// (-1)^n h^(n)(t) == g^(n)(-t) for sampled t > 0 and n <= max_order, to
// relative 1e-12 (compared in log form where values leave double range).
bool cm_am_reflection_equivalence(int max_order, int samples);

nlohmann::json report_to_json(const MonotonicityReport& report);

}  // namespace bumpfn
