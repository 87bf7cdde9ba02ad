#include "sumtrans/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sumtrans {

namespace {

void check_positive_scale(double a) {
  if (!(a > 0) || !std::isfinite(a)) throw std::invalid_argument("field scale must be positive");
}

}  // namespace

Field Field::neg_abs(double scale, double center) {
  check_positive_scale(scale);
  if (!std::isfinite(center)) throw std::invalid_argument("field center must be finite");
  Field f;
  f.kind_ = Kind::kNegAbs;
  f.scale_ = scale;
  f.center_ = center;
  return f;
}

Field Field::neg_square(double scale, double center) {
  check_positive_scale(scale);
  if (!std::isfinite(center)) throw std::invalid_argument("field center must be finite");
  Field f;
  f.kind_ = Kind::kNegSquare;
  f.scale_ = scale;
  f.center_ = center;
  return f;
}

Field Field::log_weight_table(std::vector<FieldPoint> knots, double left_slope, double right_slope) {
  if (knots.empty()) throw std::invalid_argument("table field needs at least one knot");
  for (const auto& k : knots) {
    if (!std::isfinite(k.x) || !std::isfinite(k.value)) {
      throw std::invalid_argument("table field knots must be finite");
    }
  }
  std::sort(knots.begin(), knots.end(), [](const FieldPoint& a, const FieldPoint& b) { return a.x < b.x; });
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (knots[i].x == knots[i - 1].x) throw std::invalid_argument("duplicate table field abscissa");
  }
  if (!(left_slope >= 0) || !(right_slope <= 0)) {
    throw std::invalid_argument("table field must be bounded above: need left slope >= 0 >= right slope");
  }
  Field f;
  f.kind_ = Kind::kLogWeightTable;
  f.points_ = std::move(knots);
  f.left_slope_ = left_slope;
  f.right_slope_ = right_slope;
  return f;
}

Field Field::discrete(std::vector<FieldPoint> points) {
  for (const auto& p : points) {
    if (!std::isfinite(p.x)) throw std::invalid_argument("discrete field abscissae must be finite");
    if (std::isnan(p.value) || p.value == std::numeric_limits<double>::infinity()) {
      throw std::invalid_argument("discrete field values must be finite or -inf");
    }
  }
  std::sort(points.begin(), points.end(), [](const FieldPoint& a, const FieldPoint& b) { return a.x < b.x; });
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].x == points[i - 1].x) throw std::invalid_argument("duplicate discrete field abscissa");
  }
  Field f;
  f.kind_ = Kind::kDiscrete;
  f.points_ = std::move(points);
  return f;
}

Field Field::restrict_semiaxis(Field inner) {
  Field f;
  f.kind_ = Kind::kNegInfinityBelowZero;
  f.center_ = 0.0;
  f.inner_ = std::make_shared<const Field>(std::move(inner));
  return f;
}

double Field::operator()(double t) const {
  switch (kind_) {
    case Kind::kNegAbs:
      return -scale_ * std::abs(t - center_);
    case Kind::kNegSquare: {
      const double u = t - center_;
      return -scale_ * u * u;
    }
    case Kind::kLogWeightTable: {
      if (t <= points_.front().x) return points_.front().value + left_slope_ * (t - points_.front().x);
      if (t >= points_.back().x) return points_.back().value + right_slope_ * (t - points_.back().x);
      auto it = std::upper_bound(points_.begin(), points_.end(), t,
                                 [](double v, const FieldPoint& p) { return v < p.x; });
      const FieldPoint& b = *it;
      const FieldPoint& a = *(it - 1);
      return a.value + (b.value - a.value) * (t - a.x) / (b.x - a.x);
    }
    case Kind::kDiscrete: {
      auto it = std::lower_bound(points_.begin(), points_.end(), t,
                                 [](const FieldPoint& p, double v) { return p.x < v; });
      if (it != points_.end() && it->x == t) return it->value;
      return kNegInf;
    }
    case Kind::kNegInfinityBelowZero:
      return t < center_ ? kNegInf : (*inner_)(t);
  }
  return kNegInf;
}

double Field::upper_bound() const {
  switch (kind_) {
    case Kind::kNegAbs:
    case Kind::kNegSquare:
      return 0.0;
    case Kind::kLogWeightTable: {
      double m = points_.front().value;
      for (const auto& p : points_) m = std::max(m, p.value);
      return m;
    }
    case Kind::kDiscrete: {
      double m = kNegInf;
      for (const auto& p : points_) m = std::max(m, p.value);
      return m;
    }
    case Kind::kNegInfinityBelowZero:
      return inner_->upper_bound();
  }
  return 0.0;
}

std::size_t Field::finite_support_count() const {
  if (!is_discrete()) return kInfiniteSupport;
  return support().size();
}

bool Field::is_discrete() const {
  if (kind_ == Kind::kDiscrete) return true;
  if (kind_ == Kind::kNegInfinityBelowZero) return inner_->is_discrete();
  return false;
}

std::vector<double> Field::support() const {
  std::vector<double> out;
  if (kind_ == Kind::kDiscrete) {
    for (const auto& p : points_) {
      if (p.value != kNegInf) out.push_back(p.x);
    }
  } else if (kind_ == Kind::kNegInfinityBelowZero && inner_->is_discrete()) {
    for (double x : inner_->support()) {
      if (x >= center_) out.push_back(x);
    }
  }
  return out;
}

std::vector<double> Field::breakpoints() const {
  std::vector<double> out;
  switch (kind_) {
    case Kind::kNegAbs:
      out.push_back(center_);
      break;
    case Kind::kNegSquare:
      break;
    case Kind::kLogWeightTable:
      for (const auto& p : points_) out.push_back(p.x);
      break;
    case Kind::kDiscrete:
      for (double x : support()) out.push_back(x);
      break;
    case Kind::kNegInfinityBelowZero:
      out.push_back(center_);
      for (double x : inner_->breakpoints()) {
        if (x > center_) out.push_back(x);
      }
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Field Field::shifted(double c) const {
  Field f = *this;
  switch (kind_) {
    case Kind::kNegAbs:
    case Kind::kNegSquare:
      f.center_ += c;
      break;
    case Kind::kLogWeightTable:
    case Kind::kDiscrete:
      for (auto& p : f.points_) p.x += c;
      break;
    case Kind::kNegInfinityBelowZero:
      f.center_ += c;
      f.inner_ = std::make_shared<const Field>(inner_->shifted(c));
      break;
  }
  return f;
}

}  // namespace sumtrans
