#ifndef LACUNA_EQUIVALENCE_HPP
#define LACUNA_EQUIVALENCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lacuna/coefficients.hpp"
#include "lacuna/selection.hpp"
#include "lacuna/systems.hpp"

namespace lacuna {

struct EquivalenceWitness {
  std::size_t family_index = 0;
  double z = 0.0;
  std::string side;  // "lower" or "upper"
};

struct EquivalenceReport {
  double c_hat = 1.0;       // smallest feasible C over the tested family/grid
  bool unbounded = false;   // no C <= 1e6 works
  std::size_t family_size = 0;
  std::size_t z_grid_size = 0;
  std::vector<EquivalenceWitness> witnesses;  // binding pairs near C_hat
};

// Smallest C >= 1 such that for every tested (a, z)
//   C^-1 P{|sum a f|>Cz} <= P{|sum a g|>z} <= C P{|sum a f|>z/C}.
// Exact tails for step kinds, rigorous brackets for trig; bisection to 1e-6
// with bracket [1, 1e6]. Only ever a lower bound for the true constant.
EquivalenceReport distribution_compare(const SystemSpec& sys_f,
                                       const std::vector<int>& indices_f,
                                       const SystemSpec& sys_g,
                                       const std::vector<int>& indices_g,
                                       const std::vector<CoefficientVector>& family,
                                       const std::vector<double>& z_grid);

struct MomentCriterion {
  MomentBand band;
  double beta = 0.0;
};

// Theorem-2.1-style criterion: the measured moment band against kappa.
MomentCriterion moment_criterion(const SystemSpec& system,
                                 const std::vector<int>& indices,
                                 const std::vector<CoefficientVector>& family,
                                 const std::vector<double>& t_grid);

struct StrongMultCriterion {
  bool is_strong = false;
  double d_witness = 0.0;  // uniform bound
  double d2_witness = 0.0; // minimal second moment
  StrongMultReport detail;
};

StrongMultCriterion strong_mult_criterion(const SystemSpec& system,
                                          const std::vector<int>& indices);

// max over the family of ||a||_1 / ||P||_inf; a lower bound for the Sidon
// constant. Zero polynomials are excluded from the max.
double sidon_constant(const SystemSpec& system, const std::vector<int>& indices,
                      const std::vector<CoefficientVector>& family);

struct WitnessSet {
  double measure = 0.0;
  bool threshold_holds = false;
};

// Exact measure of {|T| >= alpha2 ||T||_inf} for a step-kind polynomial and
// the comparison against alpha1 * 2^-m.
WitnessSet witness_set(const Polynomial& poly, double alpha2,
                       double alpha1 = 1.0);

// Deterministic seeded mixture of sparse, flat, geometric-decay and uniform
// coefficient vectors (never all-zero).
std::vector<CoefficientVector> make_family(std::uint64_t seed, std::size_t count,
                                           std::size_t n);

// z grid from the exact quantile points of a reference step polynomial plus
// midpoints, capped to `max_points`.
std::vector<double> quantile_z_grid(const Polynomial& reference,
                                    std::size_t max_points);

}  // namespace lacuna

#endif
