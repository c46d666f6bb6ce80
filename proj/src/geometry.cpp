#include "coarsekit/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace coarsekit {

bool Box::disjoint(const Box& o) const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (hi[i] <= o.lo[i] || o.hi[i] <= lo[i]) return true;
  return false;
}

std::optional<Box> Box::intersect(const Box& o) const {
  Box r;
  r.lo.resize(dim());
  r.hi.resize(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    r.lo[i] = std::max(lo[i], o.lo[i]);
    r.hi[i] = std::min(hi[i], o.hi[i]);
    if (r.lo[i] >= r.hi[i]) return std::nullopt;
  }
  return r;
}

FrequencyPoint Box::center() const {
  FrequencyPoint c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
  return c;
}

double Box::max_extent() const {
  double m = 0;
  for (std::size_t i = 0; i < dim(); ++i) m = std::max(m, hi[i] - lo[i]);
  return m;
}

BaseSet BaseSet::make_box(std::vector<Rational> center, std::vector<Rational> half) {
  BaseSet b;
  b.kind = Kind::box;
  b.center = std::move(center);
  b.half = std::move(half);
  for (const auto& h : b.half)
    if (h <= 0) throw std::invalid_argument("base box needs positive half-widths");
  if (b.half.size() != b.center.size())
    throw std::invalid_argument("base box center/half dimension mismatch");
  return b;
}

BaseSet BaseSet::make_ball(std::vector<Rational> center, Rational radius) {
  BaseSet b;
  b.kind = Kind::ball;
  b.center = std::move(center);
  b.radius = std::move(radius);
  if (b.radius <= 0) throw std::invalid_argument("base ball needs positive radius");
  return b;
}

bool BaseSet::contains(const std::vector<double>& y) const {
  if (y.size() != dim()) throw std::invalid_argument("dimension mismatch in membership test");
  if (kind == Kind::box) {
    for (std::size_t i = 0; i < dim(); ++i) {
      double c = to_double(center[i]), h = to_double(half[i]);
      if (!(std::fabs(y[i] - c) < h)) return false;
    }
    return true;
  }
  double r2 = 0, rad = to_double(radius);
  for (std::size_t i = 0; i < dim(); ++i) {
    double d = y[i] - to_double(center[i]);
    r2 += d * d;
  }
  return r2 < rad * rad;
}

bool BaseSet::box_may_intersect(const std::vector<double>& lo,
                                const std::vector<double>& hi) const {
  if (kind == Kind::box) {
    for (std::size_t i = 0; i < dim(); ++i) {
      double c = to_double(center[i]), h = to_double(half[i]);
      if (hi[i] <= c - h || lo[i] >= c + h) return false;
    }
    return true;
  }
  double d2 = 0, rad = to_double(radius);
  for (std::size_t i = 0; i < dim(); ++i) {
    double c = to_double(center[i]);
    double d = 0;
    if (c < lo[i]) d = lo[i] - c;
    else if (c > hi[i]) d = c - hi[i];
    d2 += d * d;
  }
  return d2 < rad * rad;
}

Rational BaseSet::volume_coeff() const {
  if (kind == Kind::box) {
    Rational v = 1;
    for (const auto& h : half) v *= 2 * h;
    return v;
  }
  Rational v = 1;
  for (std::size_t i = 0; i < dim(); ++i) v *= radius;
  return v;  // times the unit-ball constant, tracked in Volume::unit
}

namespace {

double unit_ball_volume(std::size_t d) {
  // pi^{d/2} / Gamma(d/2 + 1)
  double v = 1.0;
  // recurrence V_d = V_{d-2} * 2*pi/d, V_0 = 1, V_1 = 2
  if (d == 0) return 1.0;
  double prev2 = 1.0, prev1 = 2.0;
  if (d == 1) return 2.0;
  for (std::size_t k = 2; k <= d; ++k) {
    v = prev2 * 2.0 * 3.14159265358979323846 / static_cast<double>(k);
    prev2 = prev1;
    prev1 = v;
  }
  return v;
}

}  // namespace

double Volume::value() const {
  double u = unit == BaseSet::Kind::ball ? unit_ball_volume(dim) : 1.0;
  return coeff.eval() * u;
}

double Volume::log_value() const {
  double u = unit == BaseSet::Kind::ball ? unit_ball_volume(dim) : 1.0;
  return coeff.log_abs_eval() + std::log(u);
}

Rational Volume::exact_ratio(const Volume& a, const Volume& b) {
  if (a.unit != b.unit || a.dim != b.dim)
    throw std::invalid_argument("volume ratio across different units is not exact");
  ExpSum r = a.coeff.div_mono(b.coeff);
  return r.rational_value();
}

Box bounding_box_of_linear_image(const DMatrix& map, const std::vector<double>& shift,
                                 const BaseSet& base) {
  std::size_t d = base.dim();
  Box out;
  out.lo.resize(d);
  out.hi.resize(d);
  std::vector<double> c(d);
  for (std::size_t i = 0; i < d; ++i) c[i] = to_double(base.center[i]);
  for (std::size_t i = 0; i < d; ++i) {
    double mid = shift.empty() ? 0.0 : shift[i];
    for (std::size_t j = 0; j < d; ++j) mid += map(i, j) * c[j];
    double ext = 0;
    if (base.kind == BaseSet::Kind::box) {
      for (std::size_t j = 0; j < d; ++j) ext += std::fabs(map(i, j)) * to_double(base.half[j]);
    } else {
      double n2 = 0;
      for (std::size_t j = 0; j < d; ++j) n2 += map(i, j) * map(i, j);
      ext = to_double(base.radius) * std::sqrt(n2);
    }
    out.lo[i] = mid - ext;
    out.hi[i] = mid + ext;
  }
  return out;
}

CoveringSet CoveringSet::affine_image(RatMatrix T, std::vector<Rational> shift, BaseSet base) {
  CoveringSet s;
  s.rep_ = Rep::affine;
  s.base_ = std::move(base);
  s.T_ = std::move(T);
  s.b_ = std::move(shift);
  if (s.T_.rows() != s.base_.dim() || s.T_.cols() != s.base_.dim() ||
      s.b_.size() != s.base_.dim())
    throw std::invalid_argument("affine image shape mismatch");
  s.T_inv_ = inverse(s.T_);
  s.finish();
  return s;
}

CoveringSet CoveringSet::pullback(ExpMatrix mem, ExpMatrix img, ExpSum absdet_g, BaseSet base) {
  CoveringSet s;
  s.rep_ = Rep::pullback;
  s.base_ = std::move(base);
  s.mem_ = std::move(mem);
  s.img_ = std::move(img);
  s.absdet_ = std::move(absdet_g);
  if (s.mem_.rows() != s.base_.dim()) throw std::invalid_argument("pullback shape mismatch");
  // sanity: img must invert mem
  ExpMatrix prod = s.mem_ * s.img_;
  if (prod != to_expsum(RatMatrix::identity(s.base_.dim())))
    throw std::invalid_argument("pullback image map is not the inverse of the membership map");
  s.finish();
  return s;
}

void CoveringSet::finish() {
  std::size_t d = base_.dim();
  if (rep_ == Rep::affine) {
    DMatrix Td(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) Td(i, j) = to_double(T_(i, j));
    DMatrix Tinvd(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) Tinvd(i, j) = to_double(T_inv_(i, j));
    b_d_.resize(d);
    for (std::size_t i = 0; i < d; ++i) b_d_[i] = to_double(b_[i]);
    mem_d_ = Tinvd;  // membership: T^{-1}(x - b) in base
    img_d_ = Td;
    bbox_ = bounding_box_of_linear_image(img_d_, b_d_, base_);
  } else {
    mem_d_ = eval(mem_);
    img_d_ = eval(img_);
    b_d_.assign(d, 0.0);
    bbox_ = bounding_box_of_linear_image(img_d_, b_d_, base_);
  }
}

bool CoveringSet::contains(const FrequencyPoint& x) const {
  if (x.size() != dim()) throw std::invalid_argument("dimension mismatch in contains");
  std::size_t d = dim();
  std::vector<double> y(d, 0.0);
  if (rep_ == Rep::affine) {
    for (std::size_t i = 0; i < d; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < d; ++j) s += mem_d_(i, j) * (x[j] - b_d_[j]);
      y[i] = s;
    }
  } else {
    for (std::size_t i = 0; i < d; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < d; ++j) s += mem_d_(i, j) * x[j];
      y[i] = s;
    }
  }
  return base_.contains(y);
}

bool CoveringSet::cell_may_intersect(const Box& cell) const {
  std::size_t d = dim();
  // interval image of the cell under the membership map
  std::vector<double> lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    double mid = 0, ext = 0;
    for (std::size_t j = 0; j < d; ++j) {
      double cmid = 0.5 * (cell.lo[j] + cell.hi[j]);
      double chalf = 0.5 * (cell.hi[j] - cell.lo[j]);
      double m = mem_d_(i, j);
      mid += m * (rep_ == Rep::affine ? cmid - b_d_[j] : cmid);
      ext += std::fabs(m) * chalf;
    }
    lo[i] = mid - ext;
    hi[i] = mid + ext;
  }
  return base_.box_may_intersect(lo, hi);
}

FrequencyPoint CoveringSet::anchor() const {
  std::size_t d = dim();
  FrequencyPoint p(d, 0.0);
  std::vector<double> c(d);
  for (std::size_t i = 0; i < d; ++i) c[i] = to_double(base_.center[i]);
  for (std::size_t i = 0; i < d; ++i) {
    double s = rep_ == Rep::affine ? b_d_[i] : 0.0;
    for (std::size_t j = 0; j < d; ++j) s += img_d_(i, j) * c[j];
    p[i] = s;
  }
  return p;
}

Volume CoveringSet::volume() const {
  Volume v;
  v.unit = base_.kind;
  v.dim = dim();
  if (rep_ == Rep::affine) {
    Rational det = determinant(T_);
    if (det < 0) det = -det;
    v.coeff = ExpSum(det * base_.volume_coeff());
  } else {
    // |det g|^{-1} * vol(base)
    v.coeff = ExpSum(base_.volume_coeff()).div_mono(absdet_);
  }
  return v;
}

std::optional<std::pair<Rational, Rational>> CoveringSet::exact_interval() const {
  if (rep_ != Rep::affine || dim() != 1) return std::nullopt;
  Rational h = base_.kind == BaseSet::Kind::box ? base_.half[0] : base_.radius;
  Rational t = T_(0, 0);
  if (t < 0) t = -t;
  Rational c = T_(0, 0) * base_.center[0] + b_[0];
  return std::make_pair(c - t * h, c + t * h);
}

const RatMatrix& CoveringSet::affine_T() const {
  if (rep_ != Rep::affine) throw std::logic_error("not an affine covering set");
  return T_;
}

const std::vector<Rational>& CoveringSet::affine_shift() const {
  if (rep_ != Rep::affine) throw std::logic_error("not an affine covering set");
  return b_;
}

}  // namespace coarsekit
