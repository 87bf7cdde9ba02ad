#include "sumtrans/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sumtrans {

namespace {

constexpr double kConcavityTol = 1e-12;

double segment_slope(const Knot& a, const Knot& b) { return (b.value - a.value) / (b.t - a.t); }

void sort_and_check(std::vector<Knot>& knots, bool negative, const char* side) {
  if (knots.empty()) {
    throw std::invalid_argument(std::string("insufficient knots on ") + side + " half-axis");
  }
  for (const auto& k : knots) {
    if (!std::isfinite(k.t) || !std::isfinite(k.value)) {
      throw std::invalid_argument(std::string("non-finite knot on ") + side + " half-axis");
    }
    if (negative ? !(k.t < 0) : !(k.t > 0)) {
      throw std::invalid_argument(std::string("knot on wrong side of 0 in ") + side + " list");
    }
  }
  std::sort(knots.begin(), knots.end(), [](const Knot& a, const Knot& b) { return a.t < b.t; });
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (knots[i].t == knots[i - 1].t) {
      throw std::invalid_argument(std::string("duplicate knot abscissa on ") + side + " half-axis");
    }
  }
}

// Non-increasing check along increasing t.
void check_non_increasing(const std::vector<double>& slopes, const char* side) {
  for (std::size_t i = 1; i < slopes.size(); ++i) {
    if (slopes[i] > slopes[i - 1] + kConcavityTol) {
      throw std::invalid_argument(std::string("table kernel not concave on ") + side + " half-axis");
    }
  }
}

// Piecewise-linear interpolation on sorted knots; t must lie within
// [front.t, back.t].
double interpolate(const std::vector<Knot>& knots, double t) {
  auto it = std::upper_bound(knots.begin(), knots.end(), t,
                             [](double v, const Knot& k) { return v < k.t; });
  if (it == knots.begin()) return knots.front().value;
  if (it == knots.end()) return knots.back().value;
  const Knot& b = *it;
  const Knot& a = *(it - 1);
  return a.value + segment_slope(a, b) * (t - a.t);
}

}  // namespace

Kernel Kernel::log_abs(double weight) {
  if (!(weight > 0) || !std::isfinite(weight)) {
    throw std::invalid_argument("log kernel weight must be positive");
  }
  Kernel k;
  k.kind_ = Kind::kLogAbs;
  k.weight_ = weight;
  return k;
}

Kernel Kernel::log_abs_plus_linear(double weight, double slope) {
  if (!(weight > 0) || !std::isfinite(weight)) {
    throw std::invalid_argument("log kernel weight must be positive");
  }
  if (!std::isfinite(slope)) throw std::invalid_argument("linear slope must be finite");
  Kernel k;
  k.kind_ = Kind::kLogAbsPlusLinear;
  k.weight_ = weight;
  k.slope_ = slope;
  return k;
}

Kernel Kernel::table(TableKernelSpec spec) {
  sort_and_check(spec.neg_knots, true, "negative");
  sort_and_check(spec.pos_knots, false, "positive");
  const auto& neg = spec.neg_knots;
  const auto& pos = spec.pos_knots;

  Kernel k;
  k.kind_ = Kind::kTable;

  if (spec.end_slopes) {
    k.left_end_slope_ = spec.end_slopes->first;
    k.right_end_slope_ = spec.end_slopes->second;
    if (!std::isfinite(k.left_end_slope_) || !std::isfinite(k.right_end_slope_)) {
      throw std::invalid_argument("end slopes must be finite");
    }
  } else {
    if (neg.size() < 2 || pos.size() < 2) {
      throw std::invalid_argument("insufficient knots: need 2 per half-axis without end_slopes");
    }
    k.left_end_slope_ = segment_slope(neg[0], neg[1]);
    k.right_end_slope_ = segment_slope(pos[pos.size() - 2], pos.back());
  }

  // Slope of the innermost segment (or the end slope when a side has a
  // single knot) seeds the gap continuation.
  k.neg_gap_slope_ =
      neg.size() >= 2 ? segment_slope(neg[neg.size() - 2], neg.back()) : k.left_end_slope_;
  k.pos_gap_slope_ = pos.size() >= 2 ? segment_slope(pos[0], pos[1]) : k.right_end_slope_;

  std::vector<double> neg_slopes{k.left_end_slope_};
  for (std::size_t i = 1; i < neg.size(); ++i) neg_slopes.push_back(segment_slope(neg[i - 1], neg[i]));
  std::vector<double> pos_slopes;
  for (std::size_t i = 1; i < pos.size(); ++i) pos_slopes.push_back(segment_slope(pos[i - 1], pos[i]));
  pos_slopes.push_back(k.right_end_slope_);

  switch (spec.zero) {
    case ZeroBehavior::kFinite: {
      if (!std::isfinite(spec.zero_value)) throw std::invalid_argument("zero value must be finite");
      neg_slopes.push_back((spec.zero_value - neg.back().value) / (0.0 - neg.back().t));
      pos_slopes.insert(pos_slopes.begin(), (pos.front().value - spec.zero_value) / pos.front().t);
      break;
    }
    case ZeroBehavior::kSingular: {
      if (!(k.neg_gap_slope_ < 0) || !(k.pos_gap_slope_ > 0)) {
        throw std::invalid_argument("singular table kernel must rise toward 0 from both sides");
      }
      break;
    }
    case ZeroBehavior::kExtrapolate: {
      const double left_limit = neg.back().value - k.neg_gap_slope_ * neg.back().t;
      const double right_limit = pos.front().value - k.pos_gap_slope_ * pos.front().t;
      if (std::abs(left_limit - right_limit) > 1e-9 * std::max(1.0, std::abs(left_limit))) {
        throw std::invalid_argument("one-sided limits at 0 differ");
      }
      break;
    }
  }
  check_non_increasing(neg_slopes, "negative");
  check_non_increasing(pos_slopes, "positive");

  k.table_ = std::move(spec);
  return k;
}

bool Kernel::singular() const {
  return kind_ != Kind::kTable || table_.zero == ZeroBehavior::kSingular;
}

bool Kernel::strictly_concave_claimed() const {
  return kind_ != Kind::kTable || table_.strictly_concave;
}

double Kernel::operator()(double t) const {
  switch (kind_) {
    case Kind::kLogAbs:
      return t == 0.0 ? kNegInf : weight_ * std::log(std::abs(t));
    case Kind::kLogAbsPlusLinear:
      return t == 0.0 ? kNegInf : weight_ * std::log(std::abs(t)) + slope_ * t;
    case Kind::kTable:
      return table_eval(t);
  }
  return kNegInf;
}

double Kernel::table_eval(double t) const {
  const auto& neg = table_.neg_knots;
  const auto& pos = table_.pos_knots;
  if (t == 0.0) {
    switch (table_.zero) {
      case ZeroBehavior::kSingular:
        return kNegInf;
      case ZeroBehavior::kFinite:
        return table_.zero_value;
      case ZeroBehavior::kExtrapolate:
        throw std::domain_error("kernel undefined at 0");
    }
  }
  if (t < 0) {
    if (t <= neg.front().t) return neg.front().value + left_end_slope_ * (t - neg.front().t);
    if (t <= neg.back().t) return interpolate(neg, t);
    const Knot& inner = neg.back();
    switch (table_.zero) {
      case ZeroBehavior::kFinite:
        return inner.value + (table_.zero_value - inner.value) * (t - inner.t) / (0.0 - inner.t);
      case ZeroBehavior::kExtrapolate:
        return inner.value + neg_gap_slope_ * (t - inner.t);
      case ZeroBehavior::kSingular:
        return inner.value + neg_gap_slope_ * inner.t * std::log(t / inner.t);
    }
  }
  if (t >= pos.back().t) return pos.back().value + right_end_slope_ * (t - pos.back().t);
  if (t >= pos.front().t) return interpolate(pos, t);
  const Knot& inner = pos.front();
  switch (table_.zero) {
    case ZeroBehavior::kFinite:
      return table_.zero_value + (inner.value - table_.zero_value) * t / inner.t;
    case ZeroBehavior::kExtrapolate:
      return inner.value + pos_gap_slope_ * (t - inner.t);
    case ZeroBehavior::kSingular:
      return inner.value + pos_gap_slope_ * inner.t * std::log(t / inner.t);
  }
  return kNegInf;
}

SlopeLimits Kernel::slope_limits() const {
  SlopeLimits s;
  switch (kind_) {
    case Kind::kLogAbs:
      s.at_minus_infinity = 0.0;
      s.at_plus_infinity = 0.0;
      break;
    case Kind::kLogAbsPlusLinear:
      s.at_minus_infinity = slope_;
      s.at_plus_infinity = slope_;
      break;
    case Kind::kTable:
      s.at_minus_infinity = left_end_slope_;
      s.at_plus_infinity = right_end_slope_;
      break;
  }
  s.gm_holds = s.at_minus_infinity <= s.at_plus_infinity;
  return s;
}

ExtendedReal eval_kernel(const Kernel& k, double t) { return k.evaluate(t); }

SlopeLimits slope_limits(const Kernel& k) { return k.slope_limits(); }

}  // namespace sumtrans
