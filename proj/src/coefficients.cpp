#include "lacuna/coefficients.hpp"

#include <algorithm>
#include <cmath>

namespace lacuna {

CoefficientVector::CoefficientVector(std::vector<double> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty())
    throw Error("coefficient vector: at least one entry required");
  for (double v : entries_) {
    if (!std::isfinite(v))
      throw Error("coefficient vector: entries must be finite");
  }
  rearranged_.reserve(entries_.size());
  for (double v : entries_) rearranged_.push_back(std::fabs(v));
  std::sort(rearranged_.begin(), rearranged_.end(), std::greater<double>());
  long double s1 = 0.0L, s2 = 0.0L;
  for (double v : rearranged_) {
    s1 += v;
    s2 += static_cast<long double>(v) * v;
  }
  l1_ = static_cast<double>(s1);
  l2_ = static_cast<double>(std::sqrt(s2));
}

}  // namespace lacuna
