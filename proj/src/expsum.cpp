#include "coarsekit/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace coarsekit {

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rational(num, den);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(BigInt(s));
  std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
  bool neg = !head.empty() && head[0] == '-';
  if (head == "-" || head.empty()) head = "0";
  BigInt ip(head);
  BigInt frac = tail.empty() ? BigInt(0) : BigInt(tail);
  BigInt den = 1;
  for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
  Rational v = Rational(ip < 0 ? -ip : ip) + Rational(frac, den);
  if (neg || ip < 0) v = -v;
  return v;
}

std::string format_rational(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << '/' << denominator(q);
  return os.str();
}

Rational rational_reconstruct(double x, long long max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot reconstruct non-finite value");
  bool neg = x < 0;
  double v = std::fabs(x);
  // continued fraction expansion with denominator cap
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (fl > 9e17) break;
    long long a = static_cast<long long>(fl);
    long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-15 * std::max(1.0, v)) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return Rational(0);
  Rational r(p1, q1);
  return neg ? -r : r;
}

ExpSum ExpSum::exp_term(const Rational& c, const Rational& x) {
  ExpSum e;
  if (c != 0) e.terms_.push_back({x, c});
  return e;
}

void ExpSum::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Rational, Rational>> out;
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
      if (out.back().second == 0) out.pop_back();
    } else if (t.second != 0) {
      out.push_back(t);
    }
  }
  terms_ = std::move(out);
}

bool ExpSum::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
}

Rational ExpSum::rational_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_rational()) throw std::logic_error("ExpSum is not rational: " + str());
  return terms_[0].second;
}

const Rational& ExpSum::mono_exponent() const {
  if (!is_monomial()) throw std::logic_error("ExpSum is not a monomial: " + str());
  return terms_[0].first;
}

const Rational& ExpSum::mono_coefficient() const {
  if (!is_monomial()) throw std::logic_error("ExpSum is not a monomial: " + str());
  return terms_[0].second;
}

ExpSum ExpSum::operator-() const {
  ExpSum r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

ExpSum& ExpSum::operator+=(const ExpSum& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

ExpSum& ExpSum::operator-=(const ExpSum& o) { return *this += -o; }

ExpSum operator*(const ExpSum& a, const ExpSum& b) {
  ExpSum r;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_)
      r.terms_.push_back({ta.first + tb.first, ta.second * tb.second});
  r.normalize();
  return r;
}

ExpSum ExpSum::div_mono(const ExpSum& m) const {
  if (!m.is_monomial()) throw std::logic_error("division by non-monomial ExpSum");
  ExpSum r = *this;
  for (auto& t : r.terms_) {
    t.first -= m.terms_[0].first;
    t.second /= m.terms_[0].second;
  }
  return r;
}

double ExpSum::eval() const {
  double s = 0;
  for (const auto& t : terms_) s += to_double(t.second) * std::exp(to_double(t.first));
  return s;
}

double ExpSum::log_abs_eval() const {
  if (terms_.empty()) return -std::numeric_limits<double>::infinity();
  // factor out the dominant exponent to stay in range
  double xmax = to_double(terms_.back().first);
  double s = 0;
  for (const auto& t : terms_)
    s += to_double(t.second) * std::exp(to_double(t.first) - xmax);
  if (s == 0) return -std::numeric_limits<double>::infinity();
  return xmax + std::log(std::fabs(s));
}

int ExpSum::sign() const {
  if (terms_.empty()) return 0;
  if (is_rational() || is_monomial())
    return terms_[0].second > 0 ? 1 : -1;
  bool all_pos = true, all_neg = true;
  for (const auto& t : terms_) {
    if (t.second > 0) all_neg = false;
    if (t.second < 0) all_pos = false;
  }
  if (all_pos) return 1;
  if (all_neg) return -1;
  double xmax = to_double(terms_.back().first);
  double s = 0, mag = 0;
  for (const auto& t : terms_) {
    double v = to_double(t.second) * std::exp(to_double(t.first) - xmax);
    s += v;
    mag += std::fabs(v);
  }
  if (std::fabs(s) < 1e-11 * std::max(1.0, mag))
    throw std::runtime_error("ExpSum sign numerically ambiguous: " + str());
  return s > 0 ? 1 : -1;
}

std::string ExpSum::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << format_rational(t.second);
    if (t.first != 0) os << "*e^(" << format_rational(t.first) << ")";
  }
  return os.str();
}

}  // namespace coarsekit
