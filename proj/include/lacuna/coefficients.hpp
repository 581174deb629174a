#ifndef LACUNA_COEFFICIENTS_HPP
#define LACUNA_COEFFICIENTS_HPP

#include <cstddef>
#include <vector>

#include "lacuna/errors.hpp"

namespace lacuna {

// Finite real coefficient sequence with its decreasing rearrangement cached.
class CoefficientVector {
 public:
  explicit CoefficientVector(std::vector<double> entries);

  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<double>& entries() const { return entries_; }

  // |a_i| sorted nonincreasing.
  const std::vector<double>& rearranged() const { return rearranged_; }

  double l1() const { return l1_; }
  double l2() const { return l2_; }
  double max_abs() const { return rearranged_.front(); }
  bool is_zero() const { return rearranged_.front() == 0.0; }

 private:
  std::vector<double> entries_;
  std::vector<double> rearranged_;
  double l1_ = 0.0;
  double l2_ = 0.0;
};

}  // namespace lacuna

#endif
