#pragma once

// Smooth steps, bumps and partitions of unity on the line, built from
// f(t) = exp(-1/t) [t > 0]. Derivatives travel through jets seeded with
// the exact derivative formulas of f.

#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "bumpfn/jet.hpp"

namespace bumpfn {

inline constexpr int kDefaultJetOrder = 6;
inline constexpr int kMaxJetOrder = 16;

// Arguments this close to 0, or where ln f < -700, give the exact zero jet.
inline constexpr double kEdgeCutoff = 1e-8;
inline constexpr double kLogUnderflowCutoff = -700.0;

// c_i = f^(i)(t) / i!; identically zero for t <= 0.
Jet jet_of_f(double t, int order);

// sigma(t) = f(t) / (f(t) + f(1 - t)): 0 for t <= 0, 1 for t >= 1.
Jet smooth_step(double t, int order);

struct Patch {
  double lower;
  double upper;
  double ramp;

  // Throws DomainError unless lower < upper and 0 < ramp <= (upper - lower) / 2.
  void validate() const;
};

// Rises over [lower, lower + ramp], equals 1 in between, falls over
// [upper - ramp, upper]; zero outside (lower, upper).
Jet bump(const Patch& patch, double x, int order);

struct Cover {
  double domain_lower;
  double domain_upper;
  std::vector<Patch> patches;
};

// Throws CoverageError naming the first x in [A, B] that no open patch
// (lower, upper) contains; DomainError for malformed patches or domain.
void validate_cover(const Cover& cover);

// {"domain": [A, B], "patches": [{"lower": .., "upper": .., "ramp": ..}, ...]}
// Throws ParseError on malformed JSON or missing fields.
Cover parse_cover_json(std::string_view text);

class PartitionOfUnity {
 public:
  // Validates the cover.
  explicit PartitionOfUnity(Cover cover);

  const Cover& cover() const noexcept { return cover_; }
  std::size_t size() const noexcept { return cover_.patches.size(); }

  // weight_j = bump_j / sum_k bump_k, as jets at x. Throws DomainError for
  // x outside [A, B], CoverageError if every bump vanishes at x.
  std::vector<Jet> weights(double x, int order = kDefaultJetOrder) const;

 private:
  Cover cover_;
};

struct WeightSample {
  double x;
  std::vector<Jet> weights;  // one per patch
};

std::vector<WeightSample> pou_over_cover(const Cover& cover, std::span<const double> points,
                                         int order = kDefaultJetOrder);

// CSV columns: x,patch_index,weight,d1..dm (derivatives, not Taylor coefficients).
void write_weights_csv(std::ostream& os, std::span<const WeightSample> samples, int order);

}  // namespace bumpfn
