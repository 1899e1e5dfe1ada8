#include "exchstruct/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace exchstruct {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Interval Interval::whole_line() { return {-kInf, kInf}; }

void IntervalUnion::validate() const {
  for (const auto& iv : intervals) {
    if (std::isnan(iv.lo) || std::isnan(iv.hi)) throw std::invalid_argument("NaN interval endpoint");
    if (iv.empty()) throw std::invalid_argument("empty interval in union");
  }
  for (size_t i = 1; i < intervals.size(); ++i)
    if (!(intervals[i - 1].hi <= intervals[i].lo))
      throw std::invalid_argument("interval union not disjoint/increasing");
}

bool IntervalUnion::contains(double x) const {
  for (const auto& iv : intervals)
    if (iv.contains(x)) return true;
  return false;
}

IntervalUnion IntervalUnion::whole_line() { return {{Interval::whole_line()}}; }

IntervalUnion IntervalUnion::single(double lo, double hi) { return {{Interval{lo, hi}}}; }

IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b) {
  IntervalUnion out;
  for (const auto& x : a.intervals) {
    for (const auto& y : b.intervals) {
      Interval iv{std::max(x.lo, y.lo), std::min(x.hi, y.hi)};
      if (!iv.empty()) out.intervals.push_back(iv);
    }
  }
  std::sort(out.intervals.begin(), out.intervals.end(),
            [](const Interval& u, const Interval& v) { return u.lo < v.lo; });
  return out;
}

void Weight::validate() const {
  if (parts.empty()) throw std::invalid_argument("weight has no parts");
  if (parts.size() != masses.size())
    throw std::invalid_argument("weight parts/masses length mismatch");
  std::vector<Interval> all;
  for (const auto& part : parts) {
    part.validate();
    if (part.intervals.empty()) throw std::invalid_argument("weight part is empty");
    if (static_cast<int>(part.intervals.size()) > kMaxIntervalsPerPart)
      throw std::invalid_argument("weight part exceeds the cap of 64 intervals");
    all.insert(all.end(), part.intervals.begin(), part.intervals.end());
  }
  std::sort(all.begin(), all.end(),
            [](const Interval& u, const Interval& v) { return u.lo < v.lo; });
  if (all.front().lo != -kInf || all.back().hi != kInf)
    throw std::invalid_argument("weight parts do not cover the line");
  for (size_t i = 1; i < all.size(); ++i) {
    if (all[i - 1].hi > all[i].lo) throw std::invalid_argument("weight parts overlap");
    if (all[i - 1].hi < all[i].lo) throw std::invalid_argument("weight parts leave a gap");
  }
  Rational sum = 0;
  for (const auto& mass : masses) {
    if (mass <= 0) throw std::invalid_argument("weight masses must be strictly positive");
    sum += mass;
  }
  if (sum != 1) throw std::invalid_argument("weight masses must sum to 1, got " +
                                            rational_to_string(sum));
}

Weight Weight::trivial() {
  Weight w;
  w.parts = {IntervalUnion::whole_line()};
  w.masses = {Rational(1)};
  return w;
}

Weight Weight::two_sided(double cut, const Rational& left_mass) {
  Weight w;
  w.parts = {IntervalUnion::single(-kInf, cut), IntervalUnion::single(cut, kInf)};
  w.masses = {left_mass, Rational(1) - left_mass};
  w.validate();
  return w;
}

namespace {

double endpoint_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "-inf") return -kInf;
    if (s == "inf" || s == "+inf") return kInf;
    throw std::invalid_argument("bad interval endpoint: " + s);
  }
  return j.get<double>();
}

nlohmann::json endpoint_to_json(double x) {
  if (x == -kInf) return "-inf";
  if (x == kInf) return "inf";
  return x;
}

}  // namespace

Weight weight_from_json(const nlohmann::json& j) {
  Weight w;
  for (const auto& part : j.at("parts")) {
    IntervalUnion u;
    for (const auto& iv : part)
      u.intervals.push_back({endpoint_from_json(iv.at(0)), endpoint_from_json(iv.at(1))});
    w.parts.push_back(std::move(u));
  }
  Rational sum = 0;
  for (const auto& mass : j.at("masses")) {
    Rational r = mass.is_string() ? parse_rational(mass.get<std::string>())
                                  : rational_from_double(mass.get<double>());
    w.masses.push_back(r);
    sum += r;
  }
  if (sum != 1) {
    // float masses: renormalize exactly if the defect is within tolerance
    if (sum <= 0 || std::abs(to_double(sum - 1)) > 1e-12)
      throw std::invalid_argument("weight masses must sum to 1 (tolerance 1e-12)");
    for (auto& mass : w.masses) mass /= sum;
  }
  w.validate();
  return w;
}

nlohmann::json weight_to_json(const Weight& w) {
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& part : w.parts) {
    nlohmann::json ivs = nlohmann::json::array();
    for (const auto& iv : part.intervals)
      ivs.push_back({endpoint_to_json(iv.lo), endpoint_to_json(iv.hi)});
    parts.push_back(ivs);
  }
  nlohmann::json masses = nlohmann::json::array();
  for (const auto& mass : w.masses) masses.push_back(rational_to_string(mass));
  return {{"parts", parts}, {"masses", masses}};
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Acklam's rational approximation, refined with two Halley steps.
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile needs p in (0,1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= 1 - plow) {
    double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    double q = std::sqrt(-2 * std::log(1 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  for (int i = 0; i < 2; ++i) {
    double e = normal_cdf(x) - p;
    double u = e * std::sqrt(2 * std::numbers::pi) * std::exp(x * x / 2);
    x = x - u / (1 + x * u / 2);
  }
  return x;
}

double Measure::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile needs p in (0,1)");
  double lo = -1.0, hi = 1.0;
  while (cdf(lo) > p) lo *= 2;
  while (cdf(hi) < p) hi *= 2;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++i) {
    double mid = 0.5 * (lo + hi);
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double Measure::interval_prob(const Interval& iv) const {
  if (iv.empty()) return 0.0;
  double hi = iv.hi == kInf ? 1.0 : cdf(iv.hi);
  double lo = iv.lo == -kInf ? 0.0 : cdf(iv.lo);
  return std::max(0.0, hi - lo);
}

double Measure::interval_prob(const IntervalUnion& u) const {
  u.validate();
  double total = 0.0;
  for (const auto& iv : u.intervals) total += interval_prob(iv);
  return std::min(total, 1.0);
}

namespace {

class StdNormal final : public Measure {
 public:
  double cdf(double x) const override { return normal_cdf(x); }
  double sample(Rng& rng) const override { return rng.normal(); }
  double quantile(double p) const override { return normal_quantile(p); }
  std::string describe() const override { return "normal"; }
};

class Uniform01 final : public Measure {
 public:
  double cdf(double x) const override { return std::clamp(x, 0.0, 1.0); }
  double sample(Rng& rng) const override { return rng.uniform01(); }
  double quantile(double p) const override { return p; }
  std::string describe() const override { return "uniform01"; }
};

class Reweighted final : public Measure {
 public:
  Reweighted(MeasurePtr base, Weight w) : base_(std::move(base)), weight_(std::move(w)) {
    weight_.validate();
    for (size_t i = 0; i < weight_.parts.size(); ++i) {
      double mass = base_->interval_prob(weight_.parts[i]);
      if (mass <= 0.0) {
        std::ostringstream os;
        os << "reweight: part " << i << " has base-measure mass 0";
        throw std::invalid_argument(os.str());
      }
      part_mass_.push_back(mass);
      cum_.push_back((cum_.empty() ? 0.0 : cum_.back()) + to_double(weight_.masses[i]));
    }
  }

  double cdf(double x) const override {
    IntervalUnion below{{Interval{-kInf, x}}};
    double total = 0.0;
    for (size_t i = 0; i < weight_.parts.size(); ++i) {
      double inter = base_->interval_prob(intersect(below, weight_.parts[i]));
      total += to_double(weight_.masses[i]) * inter / part_mass_[i];
    }
    return total;
  }

  double sample(Rng& rng) const override {
    double u = rng.uniform01();
    size_t part = std::lower_bound(cum_.begin(), cum_.end(), u) - cum_.begin();
    if (part >= weight_.parts.size()) part = weight_.parts.size() - 1;
    return conditional_sample(*base_, weight_.parts[part], rng);
  }

  std::string describe() const override {
    return "reweighted(" + base_->describe() + "," + weight_to_json(weight_).dump() + ")";
  }

 private:
  MeasurePtr base_;
  Weight weight_;
  std::vector<double> part_mass_;
  std::vector<double> cum_;
};

}  // namespace

MeasurePtr std_normal() {
  static const auto instance = std::make_shared<const StdNormal>();
  return instance;
}

MeasurePtr uniform01() {
  static const auto instance = std::make_shared<const Uniform01>();
  return instance;
}

MeasurePtr measure_from_name(const std::string& name) {
  if (name == "normal") return std_normal();
  if (name == "uniform01") return uniform01();
  throw std::invalid_argument("unknown measure: " + name);
}

MeasurePtr reweight(MeasurePtr m, Weight w) {
  return std::make_shared<const Reweighted>(std::move(m), std::move(w));
}

double conditional_sample(const Measure& m, const IntervalUnion& i, Rng& rng) {
  i.validate();
  std::vector<double> probs;
  double total = 0.0;
  for (const auto& iv : i.intervals) {
    probs.push_back(m.interval_prob(iv));
    total += probs.back();
  }
  if (total <= 0.0) throw std::invalid_argument("conditional_sample: zero-mass interval union");
  double u = rng.uniform01() * total;
  size_t pick = 0;
  for (; pick + 1 < probs.size(); ++pick) {
    if (u < probs[pick]) break;
    u -= probs[pick];
  }
  const Interval& iv = i.intervals[pick];
  double lo_cdf = iv.lo == -kInf ? 0.0 : m.cdf(iv.lo);
  double hi_cdf = iv.hi == kInf ? 1.0 : m.cdf(iv.hi);
  double v = rng.uniform_open01();
  double p = lo_cdf + v * (hi_cdf - lo_cdf);
  if (p > 0.0 && p < 1.0) {
    double x = m.quantile(p);
    if (i.contains(x)) return x;
  }
  // Numerical fallback: reject from the base measure.
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    double x = m.sample(rng);
    if (i.contains(x)) return x;
  }
  throw std::runtime_error("conditional_sample: rejection cap exceeded");
}

double product_prob(const Measure& m, std::span<const IntervalUnion> boxes) {
  double p = 1.0;
  for (const auto& box : boxes) p *= m.interval_prob(box);
  return p;
}

}  // namespace exchstruct
