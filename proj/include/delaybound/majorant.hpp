#pragma once

// Scalar dominance functions: build L(t, zeta_1, ..., zeta_{m+1}) that
// upper-bounds |f(t, x, x_delayed...)| when every vector argument is replaced
// by its Euclidean norm, and linearize it on a validity ball of radius
// zeta_bar. Slot 1 is the undelayed state; slot j+1 is the j-th delay channel.

#include <Eigen/Core>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "delaybound/expr.hpp"

namespace delaybound {

struct MonomialFactor {
  int slot = 1;       // 1-based argument slot (1 = undelayed)
  int component = 1;  // 1-based state component
  int exponent = 1;   // positive integer
};

struct MonomialTerm {
  int target = 1;  // 1-based target component of f
  TimeExpr coefficient;
  std::vector<MonomialFactor> factors;
};

/// Linear matrix block scale(t) * M(t) * x(slot argument).
struct LinearBlockTerm {
  int slot = 1;
  TimeExpr scale;
  TimeVaryingMatrix matrix;
};

/// Vector field f assembled from monomial terms and linear matrix blocks.
/// Every monomial term must have total degree >= 1, so f(t, 0) = 0.
struct VectorField {
  int dim = 0;
  int slots = 1;  // m + 1
  std::vector<MonomialTerm> monomials;
  std::vector<LinearBlockTerm> blocks;

  bool empty() const { return monomials.empty() && blocks.empty(); }

  /// args[j] is the slot-(j+1) vector argument; args.size() == slots.
  Eigen::VectorXd eval(double t, const std::vector<Eigen::VectorXd>& args) const;
  void eval_into(double t, const std::vector<Eigen::VectorXd>& args,
                 Eigen::VectorXd& out) const;
};

/// One additive term of L: a nonnegative coefficient envelope times a product
/// of slot norms raised to aggregate exponents.
struct MajorantTerm {
  enum class Kind { ExprAbs, BlockNorm, Constant };
  Kind kind = Kind::Constant;
  double constant = 0.0;                     // Constant
  TimeExpr coefficient;                      // ExprAbs / BlockNorm scale
  std::optional<TimeVaryingMatrix> matrix;   // BlockNorm
  std::vector<int> exponents;                // per slot, size = slots

  double coefficient_at(double t) const;
  int degree() const;
};

/// L(t, zeta) = sum over terms. Componentwise nondecreasing in each zeta_j
/// and L(t, 0) = 0.
struct Majorant {
  int slots = 1;
  std::vector<MajorantTerm> terms;

  double eval(double t, const std::vector<double>& zeta) const;
};

/// Appendix-style chain: Euclidean norm bounded through the 1-norm, each
/// component power replaced by the argument-norm power, exponents aggregated
/// per slot; linear blocks contribute |scale(t)| * ||M(t)|| * zeta_slot.
/// Throws if any monomial term has total degree 0.
Majorant build_majorant(const VectorField& f);

double eval_majorant(const Majorant& L, double t, const std::vector<double>& zeta);

struct DominanceSample {
  double t = 0.0;
  std::vector<Eigen::VectorXd> args;
};

struct DominanceReport {
  double max_deficit = -std::numeric_limits<double>::infinity();  // |f| - L, must be <= 0
  DominanceSample worst;
  int samples = 0;
  bool ok() const { return max_deficit <= 0.0; }
};

/// Seeded random sampling of argument tuples with ||arg_j|| <= radius and
/// uniform t on [t0, t_end]; reports the worst deficit found. A positive
/// deficit is a reported failure, not an exception.
DominanceReport verify_dominance(const VectorField& f, const Majorant& L, int sample_count,
                                 double radius, double t0, double t_end, std::uint64_t seed);

/// Slope coefficients mu_j(t) with L(t, zeta) <= sum_j mu_j(t) zeta_j valid
/// whenever every zeta_j <= zeta_bar.
struct LinearizedMajorant {
  struct ScaledTerm {
    MajorantTerm term;   // evaluated for its coefficient envelope only
    double multiplier;   // zeta_bar^(degree - 1)
  };
  double zeta_bar = 0.0;
  int slots = 1;
  std::vector<std::vector<ScaledTerm>> per_slot;  // size = slots

  double mu(int slot, double t) const;  // 1-based slot
};

/// Each term's linear factor is attributed to the slot with the largest
/// exponent (ties: lowest slot index). Throws if zeta_bar <= 0.
LinearizedMajorant linearize(const Majorant& L, double zeta_bar);

}  // namespace delaybound
