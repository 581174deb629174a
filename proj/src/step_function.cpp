#include "lacuna/step_function.hpp"

#include <algorithm>

namespace lacuna {

StepFunction::StepFunction(std::vector<Rational> breakpoints,
                           std::vector<Rational> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() < 2)
    throw Error("step function: need at least two breakpoints");
  if (values_.size() + 1 != breakpoints_.size())
    throw Error("step function: piece count must be breakpoint count - 1");
  if (!breakpoints_.front().is_zero())
    throw Error("step function: domain must start at 0");
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1]))
      throw Error("step function: breakpoints must be strictly increasing");
  }
}

StepFunction StepFunction::constant(const Rational& value,
                                    const Rational& length) {
  return StepFunction({Rational(0), length}, {value});
}

StepFunction StepFunction::rademacher(int r_index, const Rational& length) {
  if (r_index < 1 || r_index > 25)
    throw Error("step function: rademacher index out of range");
  const long long cells = 1LL << r_index;
  Rational width = length / Rational(cells);
  std::vector<Rational> bp, val;
  bp.reserve(cells + 1);
  val.reserve(cells);
  for (long long c = 0; c <= cells; ++c) bp.push_back(width * Rational(c));
  for (long long c = 0; c < cells; ++c) val.push_back((c & 1) ? -1 : 1);
  return StepFunction(std::move(bp), std::move(val));
}

Rational StepFunction::value_at(const Rational& x) const {
  if (x < Rational(0) || x > domain_length())
    throw Error("step function: point outside domain");
  // Last piece is closed on the right.
  std::size_t lo = 0, hi = values_.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (breakpoints_[mid] <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  return values_[lo];
}

double StepFunction::eval(double x) const {
  return value_at(Rational::from_double(x)).to_double();
}

Rational StepFunction::integral() const {
  Rational acc(0);
  for (std::size_t k = 0; k < values_.size(); ++k)
    acc += values_[k] * (breakpoints_[k + 1] - breakpoints_[k]);
  return acc;
}

Rational StepFunction::mean() const { return integral() / domain_length(); }

Rational StepFunction::max_abs() const {
  Rational m(0);
  for (const auto& v : values_) m = max(m, abs(v));
  return m;
}

bool StepFunction::is_everywhere_zero() const {
  for (const auto& v : values_)
    if (!v.is_zero()) return false;
  return true;
}

StepFunction StepFunction::scaled(const Rational& c) const {
  std::vector<Rational> vals = values_;
  for (auto& v : vals) v *= c;
  return StepFunction(breakpoints_, std::move(vals));
}

StepFunction StepFunction::combine(
    const StepFunction& a, const StepFunction& b,
    const std::function<Rational(const Rational&, const Rational&)>& op) {
  if (a.domain_length() != b.domain_length())
    throw Error("step function: domain mismatch");
  std::vector<Rational> bp;
  bp.reserve(a.breakpoints_.size() + b.breakpoints_.size());
  std::size_t i = 0, j = 0;
  while (i < a.breakpoints_.size() || j < b.breakpoints_.size()) {
    if (j >= b.breakpoints_.size())
      bp.push_back(a.breakpoints_[i++]);
    else if (i >= a.breakpoints_.size())
      bp.push_back(b.breakpoints_[j++]);
    else if (a.breakpoints_[i] < b.breakpoints_[j])
      bp.push_back(a.breakpoints_[i++]);
    else if (b.breakpoints_[j] < a.breakpoints_[i])
      bp.push_back(b.breakpoints_[j++]);
    else {
      bp.push_back(a.breakpoints_[i++]);
      ++j;
    }
  }
  std::vector<Rational> vals;
  vals.reserve(bp.size() - 1);
  std::size_t pa = 0, pb = 0;
  for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
    while (pa + 1 < a.values_.size() && a.breakpoints_[pa + 1] <= bp[k]) ++pa;
    while (pb + 1 < b.values_.size() && b.breakpoints_[pb + 1] <= bp[k]) ++pb;
    vals.push_back(op(a.values_[pa], b.values_[pb]));
  }
  return StepFunction(std::move(bp), std::move(vals));
}

StepFunction StepFunction::product(const std::vector<const StepFunction*>& fs) {
  if (fs.empty()) throw Error("step function: empty product");
  StepFunction acc = *fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i)
    acc = combine(acc, *fs[i],
                  [](const Rational& x, const Rational& y) { return x * y; });
  return acc;
}

StepFunction StepFunction::squared() const {
  std::vector<Rational> vals = values_;
  for (auto& v : vals) v *= v;
  return StepFunction(breakpoints_, std::move(vals));
}

StepFunction StepFunction::restrict(const Rational& lo,
                                    const Rational& hi) const {
  if (!(lo < hi) || lo < Rational(0) || domain_length() < hi)
    throw Error("step function: bad restriction window");
  std::vector<Rational> bp, vals;
  bp.push_back(Rational(0));
  for (std::size_t k = 0; k < values_.size(); ++k) {
    Rational a = max(breakpoints_[k], lo);
    Rational b = min(breakpoints_[k + 1], hi);
    if (!(a < b)) continue;
    vals.push_back(values_[k]);
    bp.push_back(b - lo);
  }
  return StepFunction(std::move(bp), std::move(vals));
}

StepFunction StepFunction::concat(const StepFunction& next) const {
  std::vector<Rational> bp = breakpoints_;
  std::vector<Rational> vals = values_;
  Rational offset = domain_length();
  for (std::size_t k = 1; k < next.breakpoints_.size(); ++k)
    bp.push_back(next.breakpoints_[k] + offset);
  vals.insert(vals.end(), next.values_.begin(), next.values_.end());
  return StepFunction(std::move(bp), std::move(vals));
}

Rational StepFunction::tail_measure(const Rational& z) const {
  Rational acc(0);
  for (std::size_t k = 0; k < values_.size(); ++k)
    if (abs(values_[k]) > z) acc += breakpoints_[k + 1] - breakpoints_[k];
  return acc;
}

Rational StepFunction::level_measure_ge(const Rational& z) const {
  Rational acc(0);
  for (std::size_t k = 0; k < values_.size(); ++k)
    if (abs(values_[k]) >= z) acc += breakpoints_[k + 1] - breakpoints_[k];
  return acc;
}

std::vector<std::pair<Rational, Rational>> StepFunction::abs_distribution()
    const {
  std::vector<std::pair<Rational, Rational>> items;
  items.reserve(values_.size());
  for (std::size_t k = 0; k < values_.size(); ++k)
    items.emplace_back(abs(values_[k]), breakpoints_[k + 1] - breakpoints_[k]);
  std::sort(items.begin(), items.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<Rational, Rational>> out;
  for (auto& it : items) {
    if (!out.empty() && out.back().first == it.first)
      out.back().second += it.second;
    else
      out.push_back(it);
  }
  return out;
}

StepFunction StepFunction::compressed() const {
  std::vector<Rational> bp{breakpoints_.front()};
  std::vector<Rational> vals;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!vals.empty() && vals.back() == values_[k]) {
      bp.back() = breakpoints_[k + 1];
    } else {
      vals.push_back(values_[k]);
      bp.push_back(breakpoints_[k + 1]);
    }
  }
  return StepFunction(std::move(bp), std::move(vals));
}

}  // namespace lacuna
