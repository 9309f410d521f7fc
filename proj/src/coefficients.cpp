#include "bumpfn/coefficients.hpp"

#include <deque>
#include <mutex>
#include <ostream>
#include <string>

#include "bumpfn/errors.hpp"

namespace bumpfn {

CoefficientRow::CoefficientRow(int order, std::vector<BigCoeff> entries)
    : order_(order), entries_(std::move(entries)) {
  if (order_ < 1) {
    throw DomainError("coefficient row order must be >= 1, got " + std::to_string(order_));
  }
  if (entries_.size() != static_cast<std::size_t>(order_)) {
    throw DomainError("coefficient row of order " + std::to_string(order_) + " has " +
                      std::to_string(entries_.size()) + " entries");
  }
}

CoefficientTriangle::CoefficientTriangle(std::vector<CoefficientRow> rows)
    : rows_(std::move(rows)) {
  for (std::size_t n = 0; n < rows_.size(); ++n) {
    if (rows_[n].order() != static_cast<int>(n) + 1) {
      throw DomainError("triangle row " + std::to_string(n + 1) + " has order " +
                        std::to_string(rows_[n].order()));
    }
  }
}

const CoefficientRow& CoefficientTriangle::row(int i) const {
  if (i < 1 || i > max_order()) {
    throw DomainError("triangle has no row i=" + std::to_string(i));
  }
  return rows_[static_cast<std::size_t>(i - 1)];
}

BigCoeff binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigCoeff c = 1;
  for (int j = 1; j <= k; ++j) {
    c *= n - k + j;
    c /= j;
  }
  return c;
}

BigCoeff factorial(int n) {
  BigCoeff f = 1;
  for (int j = 2; j <= n; ++j) f *= j;
  return f;
}

BigCoeff coeff_closed_form(int i, int k) {
  if (i < 1) throw DomainError("coefficient index i=" + std::to_string(i) + " must be >= 1");
  if (k < 0 || k > i - 1) {
    throw DomainError("coefficient index k=" + std::to_string(k) + " outside [0, " +
                      std::to_string(i - 1) + "] for i=" + std::to_string(i));
  }
  return binomial(i, k) * binomial(i - 1, k) * factorial(k);
}

CoefficientRow closed_form_row(int i) {
  if (i < 1) throw DomainError("coefficient index i=" + std::to_string(i) + " must be >= 1");
  std::vector<BigCoeff> entries;
  entries.reserve(static_cast<std::size_t>(i));
  for (int k = 0; k < i; ++k) entries.push_back(coeff_closed_form(i, k));
  return CoefficientRow(i, std::move(entries));
}

CoefficientRow coeff_row_recurrence(const CoefficientRow& row) {
  const int i = row.order();
  std::vector<BigCoeff> next(static_cast<std::size_t>(i + 1));
  next[0] = row[0];
  for (int k = 1; k <= i - 1; ++k) {
    next[static_cast<std::size_t>(k)] = row[k] + BigCoeff(2 * i - k + 1) * row[k - 1];
  }
  next[static_cast<std::size_t>(i)] = BigCoeff(i + 1) * row[i - 1];
  return CoefficientRow(i + 1, std::move(next));
}

namespace {

void verify_against_closed_form(const CoefficientRow& row) {
  const int i = row.order();
  for (int k = 0; k < i; ++k) {
    if (row[k] != coeff_closed_form(i, k)) {
      throw InconsistencyError("recurrence and closed form disagree at (i,k)=(" +
                               std::to_string(i) + "," + std::to_string(k) + ")");
    }
  }
}

}  // namespace

CoefficientTriangle coeff_triangle(int max_order) {
  if (max_order < 1) {
    throw DomainError("max_order must be >= 1, got " + std::to_string(max_order));
  }
  std::vector<CoefficientRow> rows;
  rows.reserve(static_cast<std::size_t>(max_order));
  rows.emplace_back(1, std::vector<BigCoeff>{1});
  verify_against_closed_form(rows.back());
  for (int i = 2; i <= max_order; ++i) {
    rows.push_back(coeff_row_recurrence(rows.back()));
    verify_against_closed_form(rows.back());
  }
  return CoefficientTriangle(std::move(rows));
}

const CoefficientRow& coefficient_row(int i) {
  if (i < 1) throw DomainError("coefficient index i=" + std::to_string(i) + " must be >= 1");
  static std::mutex mutex;
  // deque: references survive push_back.
  static std::deque<CoefficientRow> cache = [] {
    auto triangle = coeff_triangle(kDefaultPrecomputedOrder);
    return std::deque<CoefficientRow>(triangle.rows().begin(), triangle.rows().end());
  }();
  std::lock_guard lock(mutex);
  while (static_cast<int>(cache.size()) < i) {
    cache.push_back(coeff_row_recurrence(cache.back()));
    verify_against_closed_form(cache.back());
  }
  return cache[static_cast<std::size_t>(i - 1)];
}

void write_triangle_csv(std::ostream& os, const CoefficientTriangle& triangle) {
  os << "i,k,a_ik\n";
  for (const auto& row : triangle.rows()) {
    for (int k = 0; k < row.order(); ++k) {
      os << row.order() << ',' << k << ',' << row[k].str() << '\n';
    }
  }
}

nlohmann::json triangle_to_json(const CoefficientTriangle& triangle) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : triangle.rows()) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& a : row.entries()) entries.push_back(a.str());
    rows.push_back(std::move(entries));
  }
  return {{"max_order", triangle.max_order()}, {"rows", std::move(rows)}};
}

}  // namespace bumpfn
