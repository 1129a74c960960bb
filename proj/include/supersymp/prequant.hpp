#pragma once

#include "supersymp/symplectic.hpp"

#include <string>
#include <vector>

namespace ssp {

/// Trivializing chart of the prequantum bundle: base chart times a 1|1 fiber
/// with even coordinate t (mod d) and odd coordinate tau.
/// alpha-bar = (pi*theta_0 + dt) c0 + (pi*theta_1 + dtau) c1.
struct PrequantChart {
  KForm omega;
  KForm theta;
  Rational d{1};
  ChartPtr base;
  ChartPtr total;
  std::vector<std::size_t> embed;  // base coordinate -> total coordinate
  std::size_t t = 0, tau = 0;
  CKForm alpha;

  static PrequantChart create(const KForm& omega, const KForm& theta, const Rational& d = Rational(1)) {
    if (omega.degree() != 2 || theta.degree() != 1) throw FormError("expected a 2-form omega and a 1-form theta");
    require_same_chart(omega.chart(), theta.chart());
    if (!(ext_d(theta) == omega)) throw FormError("d(theta) differs from omega");
    PrequantChart pc;
    pc.omega = omega;
    pc.theta = theta;
    pc.d = d;
    pc.base = omega.chart();
    const Chart& b = *pc.base;
    auto fresh = [&](std::string n) {
      while (b.index_of(n) || b.index_of("d" + n)) n += "_";
      return n;
    };
    std::vector<std::string> even = b.even, odd = b.odd;
    even.push_back(fresh("t"));
    odd.push_back(fresh("tau"));
    pc.total = make_chart(b.name + "_total", even, odd, b.generators);
    for (std::size_t z = 0; z < b.dim(); ++z) pc.embed.push_back(z < b.p() ? z : z + 1);
    pc.t = b.p();
    pc.tau = pc.total->dim() - 1;
    pc.alpha = {pc.lift(theta.part(0)) + KForm::differential(pc.total, pc.t),
                pc.lift(theta.part(1)) + KForm::differential(pc.total, pc.tau)};
    return pc;
  }

  [[nodiscard]] SuperFunction lift(const SuperFunction& f) const {
    if (!f.chart()) return SuperFunction(total);
    std::vector<SuperFunction> images;
    for (std::size_t z = 0; z < base->dim(); ++z) images.push_back(SuperFunction::coordinate(total, embed[z]));
    return f.substitute(total, images);
  }
  [[nodiscard]] CFunction lift(const CFunction& f) const { return {lift(f.f0), lift(f.f1)}; }
  [[nodiscard]] KForm lift(const KForm& w) const {
    KForm r(total, w.degree());
    for (const auto& [word, g] : w.terms()) {
      Word nw;
      for (int z : word) nw.push_back(static_cast<int>(embed[static_cast<std::size_t>(z)]));
      r.add_term(nw, lift(g));
    }
    return r;
  }
  [[nodiscard]] VectorField lift(const VectorField& x) const {
    VectorField r(total);
    for (std::size_t z = 0; z < base->dim(); ++z) r[embed[z]] = lift(x[z]);
    return r;
  }
  /// Drops the fiber components.
  [[nodiscard]] VectorField project(const VectorField& x) const {
    require_same_chart(x.chart(), total);
    VectorField r(base);
    std::vector<SuperFunction> images;
    for (std::size_t z = 0; z < total->dim(); ++z)
      images.push_back(z == t || z == tau ? SuperFunction(base)
                                          : SuperFunction::coordinate(base, z < t ? z : z - 1));
    for (std::size_t z = 0; z < base->dim(); ++z) r[z] = x[embed[z]].substitute(base, images);
    return r;
  }

  /// <X, theta_alpha> as a base function.
  [[nodiscard]] SuperFunction theta_pairing(const VectorField& x, int alpha) const {
    return contract(x, theta.part(alpha)).as_function();
  }
};

/// eta_f = X_f - (f0 + <X_f, theta_0>) d/dt - (f1 + <X_f, theta_1>) d/dtau.
inline VectorField eta_field(const CFunction& f, const PrequantChart& pc, int ansatz_degree = -1) {
  const VectorField x = require_hamiltonian(f, pc.omega, ansatz_degree);
  VectorField eta = pc.lift(x);
  eta[pc.t] = -pc.lift(f.f0 + pc.theta_pairing(x, 0));
  eta[pc.tau] = -pc.lift(f.f1 + pc.theta_pairing(x, 1));
  return eta;
}

/// L(Z) alpha-bar = 0.
inline bool symmetry_check(const VectorField& z, const PrequantChart& pc) {
  const CKForm l = lie_derivative(z, pc.alpha);
  return l.is_zero();
}

/// Q(f)s = -i X_f s + (<X_f, theta_0> + f0) s, with hbar = 1.
inline SuperFunction quantum_op(const CFunction& f, const SuperFunction& s, const PrequantChart& pc,
                                int ansatz_degree = -1) {
  require_same_chart(s.chart(), pc.base);
  const VectorField x = require_hamiltonian(f, pc.omega, ansatz_degree);
  const SuperFunction mult = pc.theta_pairing(x, 0) + f.f0;
  return -Gauss::imag_unit() * x.apply(s) + mult * s;
}

struct RepCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

/// [Q(f), Q(g)] s = -i Q({f, g}) s with the graded commutator, on each sample.
inline RepCheck rep_check(const CFunction& f, const CFunction& g, const PrequantChart& pc,
                          const std::vector<SuperFunction>& sections) {
  RepCheck r;
  const CFunction fg = poisson_bracket(f, g, pc.omega);
  for (const auto& s : sections) {
    SuperFunction lhs(pc.base);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const CFunction fa = f.part(a), gb = g.part(b);
        if (fa.is_zero() || gb.is_zero()) continue;
        const SuperFunction one = quantum_op(fa, quantum_op(gb, s, pc), pc);
        const SuperFunction two = quantum_op(gb, quantum_op(fa, s, pc), pc);
        lhs += one;
        lhs -= (a & b) ? -two : two;
      }
    const SuperFunction rhs = -Gauss::imag_unit() * quantum_op(fg, s, pc);
    if (!(lhs == rhs)) {
      r.ok = false;
      r.failures.push_back("section " + s.to_string() + ": " + lhs.to_string() + " != " + rhs.to_string());
    }
  }
  return r;
}

}  // namespace ssp
