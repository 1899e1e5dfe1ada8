#pragma once

#include "exchstruct/rational.hpp"
#include "exchstruct/rng.hpp"

#include "json.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace exchstruct {

// Half-open interval [lo, hi); lo may be -infinity, hi may be +infinity.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const Interval&) const = default;
  bool empty() const { return !(lo < hi); }
  bool contains(double x) const { return lo <= x && x < hi; }
  static Interval whole_line();
};

struct IntervalUnion {
  std::vector<Interval> intervals;  // pairwise disjoint, increasing

  bool operator==(const IntervalUnion&) const = default;
  void validate() const;
  bool contains(double x) const;
  static IntervalUnion whole_line();
  static IntervalUnion single(double lo, double hi);
};

IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b);

// Finite partition of the line into interval unions, with positive masses
// summing to one. Masses are exact rationals; float input within 1e-12 of
// a unit sum is renormalized exactly.
struct Weight {
  std::vector<IntervalUnion> parts;
  std::vector<Rational> masses;

  void validate() const;
  static Weight trivial();
  static Weight two_sided(double cut, const Rational& left_mass);  // parts (-inf,cut), [cut,inf)
};

Weight weight_from_json(const nlohmann::json& j);
nlohmann::json weight_to_json(const Weight& w);

inline constexpr int kMaxIntervalsPerPart = 64;

class Measure {
 public:
  virtual ~Measure() = default;
  virtual double cdf(double x) const = 0;
  virtual double sample(Rng& rng) const = 0;
  virtual std::string describe() const = 0;
  // Inverse CDF; default is bisection, refined implementations override.
  virtual double quantile(double p) const;

  double interval_prob(const Interval& iv) const;
  double interval_prob(const IntervalUnion& u) const;
};

using MeasurePtr = std::shared_ptr<const Measure>;

MeasurePtr std_normal();
MeasurePtr uniform01();
MeasurePtr measure_from_name(const std::string& name);  // "normal" | "uniform01"

// m^W: interval_prob(B) = sum_I u(I) * m(B & I) / m(I). Every part must
// carry positive m-mass.
MeasurePtr reweight(MeasurePtr m, Weight w);

// m restricted to I, normalized; inverse-CDF within the component intervals.
double conditional_sample(const Measure& m, const IntervalUnion& i, Rng& rng);

double product_prob(const Measure& m, std::span<const IntervalUnion> boxes);

double normal_cdf(double x);
double normal_quantile(double p);

}  // namespace exchstruct
