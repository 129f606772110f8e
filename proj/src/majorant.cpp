#include "delaybound/majorant.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <random>
#include <stdexcept>

namespace delaybound {

namespace {

double ipow(double base, int exponent) {
  double out = 1.0;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

}  // namespace

Eigen::VectorXd VectorField::eval(double t, const std::vector<Eigen::VectorXd>& args) const {
  Eigen::VectorXd out;
  eval_into(t, args, out);
  return out;
}

void VectorField::eval_into(double t, const std::vector<Eigen::VectorXd>& args,
                            Eigen::VectorXd& out) const {
  if (static_cast<int>(args.size()) != slots) {
    throw std::invalid_argument("VectorField: argument slot count mismatch");
  }
  out.setZero(dim);
  for (const auto& term : monomials) {
    double value = term.coefficient.eval(t);
    for (const auto& factor : term.factors) {
      value *= ipow(args[factor.slot - 1](factor.component - 1), factor.exponent);
    }
    out(term.target - 1) += value;
  }
  for (const auto& block : blocks) {
    out.noalias() += block.scale.eval(t) * (block.matrix.eval(t) * args[block.slot - 1]);
  }
}

double MajorantTerm::coefficient_at(double t) const {
  switch (kind) {
    case Kind::Constant:
      return constant;
    case Kind::ExprAbs:
      return std::abs(coefficient.eval(t));
    case Kind::BlockNorm:
      return std::abs(coefficient.eval(t)) * matrix->norm_at(t);
  }
  throw std::logic_error("corrupt majorant term kind");
}

int MajorantTerm::degree() const {
  int d = 0;
  for (int e : exponents) d += e;
  return d;
}

double Majorant::eval(double t, const std::vector<double>& zeta) const {
  if (static_cast<int>(zeta.size()) != slots) {
    throw std::invalid_argument("Majorant: zeta length must equal slot count");
  }
  for (double z : zeta) {
    if (z < 0.0) throw std::invalid_argument("Majorant: negative zeta entry");
  }
  double sum = 0.0;
  for (const auto& term : terms) {
    double value = term.coefficient_at(t);
    for (int j = 0; j < slots; ++j) {
      if (term.exponents[j] > 0) value *= ipow(zeta[j], term.exponents[j]);
    }
    sum += value;
  }
  return sum;
}

Majorant build_majorant(const VectorField& f) {
  Majorant L;
  L.slots = f.slots;
  for (const auto& term : f.monomials) {
    MajorantTerm mt;
    mt.kind = MajorantTerm::Kind::ExprAbs;
    mt.coefficient = term.coefficient;
    mt.exponents.assign(f.slots, 0);
    for (const auto& factor : term.factors) {
      mt.exponents[factor.slot - 1] += factor.exponent;
    }
    if (mt.degree() == 0) {
      throw std::invalid_argument("build_majorant: monomial term with total degree 0");
    }
    L.terms.push_back(std::move(mt));
  }
  for (const auto& block : f.blocks) {
    MajorantTerm mt;
    mt.kind = MajorantTerm::Kind::BlockNorm;
    mt.coefficient = block.scale;
    mt.matrix = block.matrix;
    mt.exponents.assign(f.slots, 0);
    mt.exponents[block.slot - 1] = 1;
    L.terms.push_back(std::move(mt));
  }
  return L;
}

double eval_majorant(const Majorant& L, double t, const std::vector<double>& zeta) {
  return L.eval(t, zeta);
}

DominanceReport verify_dominance(const VectorField& f, const Majorant& L, int sample_count,
                                 double radius, double t0, double t_end, std::uint64_t seed) {
  if (sample_count < 1) throw std::invalid_argument("verify_dominance: sample_count >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  DominanceReport report;
  report.samples = sample_count;
  std::vector<Eigen::VectorXd> args(f.slots);
  std::vector<double> zeta(f.slots);

  for (int s = 0; s < sample_count; ++s) {
    const double t = t0 + (t_end - t0) * unit(rng);
    for (int j = 0; j < f.slots; ++j) {
      Eigen::VectorXd v(f.dim);
      for (int i = 0; i < f.dim; ++i) v(i) = gauss(rng);
      const double norm = v.norm();
      const double r = radius * std::pow(unit(rng), 1.0 / f.dim);
      args[j] = (norm > 0.0) ? Eigen::VectorXd((r / norm) * v)
                             : Eigen::VectorXd(Eigen::VectorXd::Zero(f.dim));
      zeta[j] = args[j].norm();
    }
    const double deficit = f.eval(t, args).norm() - L.eval(t, zeta);
    if (deficit > report.max_deficit) {
      report.max_deficit = deficit;
      report.worst.t = t;
      report.worst.args = args;
    }
  }
  return report;
}

double LinearizedMajorant::mu(int slot, double t) const {
  double sum = 0.0;
  for (const auto& st : per_slot[slot - 1]) {
    sum += st.term.coefficient_at(t) * st.multiplier;
  }
  return sum;
}

LinearizedMajorant linearize(const Majorant& L, double zeta_bar) {
  if (!(zeta_bar > 0.0)) throw std::invalid_argument("linearize: zeta_bar must be positive");
  LinearizedMajorant lm;
  lm.zeta_bar = zeta_bar;
  lm.slots = L.slots;
  lm.per_slot.resize(L.slots);
  for (const auto& term : L.terms) {
    int best_slot = 0;
    for (int j = 1; j < L.slots; ++j) {
      if (term.exponents[j] > term.exponents[best_slot]) best_slot = j;
    }
    const int d = term.degree();
    lm.per_slot[best_slot].push_back({term, ipow(zeta_bar, d - 1)});
  }
  return lm;
}

}  // namespace delaybound
