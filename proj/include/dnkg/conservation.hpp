#pragma once

#include <cstdint>
#include <optional>

#include "dnkg/lattice.hpp"
#include "dnkg/potential.hpp"
#include "dnkg/stepper.hpp"

namespace dnkg {

struct Diagnostics {
  std::int64_t t = 0;
  double energy = 0.0;
  std::optional<double> charge;  // only under the exact grid ratio
  double l2_sq = 0.0;            // eps^n |psi^t|^2
  std::optional<double> apriori_rhs;  // nullopt when the bound does not apply
};

struct EnergyTerms {
  double difference = 0.0;  // (1/tau^2 - n/eps^2) |psi^{t+1} - psi^t|^2 / 2
  double gradient = 0.0;
  double mass = 0.0;
  double nonlinear = 0.0;
  double total() const { return difference + gradient + mass + nonlinear; }
};

// Sums run over the whole box with out-of-box values taken as zero. With the
// frozen ring this is the infinite-lattice energy of the Dirichlet system and
// is conserved exactly, provided the initial data vanish on the ring.
EnergyTerms energy_terms(const FieldState& state, const GridParams& grid, const PolynomialPotential& W,
                         ModelKind model);
double energy(const FieldState& state, const GridParams& grid, const PolynomialPotential& W,
              ModelKind model);

// RatioMismatch unless grid.ratio_exact().
double charge(const FieldState& state, const GridParams& grid);

double l2_norm_sq(const Field& u, const GridParams& grid);

// eps^n |psi^t|^2 <= rhs for every t, given the conserved energy E0.
std::optional<double> apriori_rhs(double E0, const GridParams& grid, const PolynomialPotential& W,
                                  ModelKind model);
bool apriori_check(const Diagnostics& diag);

Diagnostics diagnostics(const FieldState& state, const GridParams& grid, const PolynomialPotential& W,
                        ModelKind model, double E0);

// (|psi^t|_{-s} + |psi^{t+1}|_{-s})^{1/2} with weights (1+|X|^2)^{-s}.
double weighted_norm(const FieldState& state, double s);

}  // namespace dnkg
