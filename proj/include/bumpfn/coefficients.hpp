#pragma once

// Exact coefficient triangle of the derivatives of exp(1/t):
//
//   h^(i)(t) = (-1)^i exp(1/t) t^(-2i) sum_{k=0}^{i-1} a(i,k) t^k,
//   a(i,k)   = C(i,k) C(i-1,k) k!,   0 <= k <= i-1.
//
// Rows are produced by the recurrence obtained from differentiating the
// closed form once more, and every row is checked against the closed form
// before it is handed out.

#include <iosfwd>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace bumpfn {

using BigCoeff = boost::multiprecision::cpp_int;

// One row a(i,0..i-1) of the triangle.
class CoefficientRow {
 public:
  // Throws DomainError unless order >= 1 and entries.size() == order.
  CoefficientRow(int order, std::vector<BigCoeff> entries);

  int order() const noexcept { return order_; }
  const std::vector<BigCoeff>& entries() const noexcept { return entries_; }
  const BigCoeff& operator[](int k) const { return entries_[static_cast<std::size_t>(k)]; }

  friend bool operator==(const CoefficientRow&, const CoefficientRow&) = default;

 private:
  int order_;
  std::vector<BigCoeff> entries_;
};

class CoefficientTriangle {
 public:
  explicit CoefficientTriangle(std::vector<CoefficientRow> rows);

  int max_order() const noexcept { return static_cast<int>(rows_.size()); }
  // 1-based: row(i) has order i.
  const CoefficientRow& row(int i) const;
  const std::vector<CoefficientRow>& rows() const noexcept { return rows_; }

 private:
  std::vector<CoefficientRow> rows_;
};

// Exact binomial coefficient C(n, k); zero when k < 0 or k > n.
BigCoeff binomial(int n, int k);
BigCoeff factorial(int n);

// a(i,k) = C(i,k) C(i-1,k) k!. Throws DomainError naming the bad index.
BigCoeff coeff_closed_form(int i, int k);
CoefficientRow closed_form_row(int i);

// Order i -> order i+1:
//   b_0 = a_0,  b_k = a_k + (2i-k+1) a_{k-1} (1 <= k <= i-1),  b_i = (i+1) a_{i-1}.
CoefficientRow coeff_row_recurrence(const CoefficientRow& row);

// Rows 1..max_order via the recurrence, each verified against the closed
// form. Throws InconsistencyError at the first disagreeing (i,k).
CoefficientTriangle coeff_triangle(int max_order);

// Shared memoized rows. The first call precomputes kDefaultPrecomputedOrder
// rows; later orders are appended on demand. Safe to call concurrently;
// returned references stay valid for the program lifetime.
inline constexpr int kDefaultPrecomputedOrder = 64;
const CoefficientRow& coefficient_row(int i);

// CSV with header "i,k,a_ik"; coefficients as decimal strings.
void write_triangle_csv(std::ostream& os, const CoefficientTriangle& triangle);
// {"max_order": N, "rows": [["1"], ["1","2"], ...]}
nlohmann::json triangle_to_json(const CoefficientTriangle& triangle);

}  // namespace bumpfn
