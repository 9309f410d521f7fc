#include "bumpfn/symbolic_oracle.hpp"

#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "bumpfn/errors.hpp"

namespace bumpfn {

namespace {

using Rational = boost::multiprecision::cpp_rational;
// exponent m -> coefficient of t^m exp(1/t)
using Expression = std::map<int, Rational>;

Expression differentiate(const Expression& expr) {
  Expression out;
  for (const auto& [m, c] : expr) {
    if (m != 0) out[m - 1] += c * m;
    out[m - 2] -= c;
  }
  std::erase_if(out, [](const auto& term) { return term.second == 0; });
  return out;
}

}  // namespace

CoefficientRow symbolic_diff_oracle(int i) {
  if (i < 1) throw DomainError("oracle order must be >= 1, got " + std::to_string(i));
  Expression expr{{0, Rational(1)}};
  for (int n = 0; n < i; ++n) expr = differentiate(expr);

  // Normalize to (-1)^i exp(1/t) t^(-2i) sum_k a_k t^k:
  // the t^(k-2i) coefficient is (-1)^i a_k.
  const int sign = (i % 2 == 0) ? 1 : -1;
  std::vector<BigCoeff> entries;
  entries.reserve(static_cast<std::size_t>(i));
  for (int k = 0; k < i; ++k) {
    const auto it = expr.find(k - 2 * i);
    Rational a = (it == expr.end()) ? Rational(0) : it->second * sign;
    if (boost::multiprecision::denominator(a) != 1) {
      throw InconsistencyError("non-integer coefficient at k=" + std::to_string(k));
    }
    entries.push_back(boost::multiprecision::numerator(a));
    if (it != expr.end()) expr.erase(it);
  }
  if (!expr.empty()) {
    throw InconsistencyError("derivative of order " + std::to_string(i) +
                             " has a term t^" + std::to_string(expr.begin()->first) +
                             " outside the expected shape");
  }
  return CoefficientRow(i, std::move(entries));
}

}  // namespace bumpfn
