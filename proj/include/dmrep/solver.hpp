#pragma once

// Solving case systems: dimension, numeric enumeration of zero-dimensional
// systems, exact reconstruction over cyclotomic fields, verification.

#include "dmrep/numeric.hpp"
#include "dmrep/repfamily.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dmrep {

struct SolverOptions {
  mpfr_prec_t precision = 256;
  Integer denom_bound = 10000;
  std::vector<int> conductors = {1, 3, 4, 9, 12, 15, 18, 36, 45, 10, 5, 6};
  std::size_t budget = 5'000'000;
  mpfr_prec_t max_precision = 2048;
  unsigned seed = 1;
};

// ---------------------------------------------------------------------------
// Verification

struct Certificate {
  bool valid = false;
  std::vector<CycloNum> lambdas;         ///< relator scalars when valid
  std::vector<bool> relator_scalar;      ///< per relator: residual w - lambda Id is zero
  int failing_relator = 0;               ///< 1-based, 0 if none
  std::string message;
};

/// Exact relator check of a pair of matrices.
inline Certificate verify(const Presentation& pres, const KMatrix& J, const KMatrix& R) {
  Certificate c;
  int n = 1;
  for (const auto& e : J.data()) n = std::lcm(n, e.conductor());
  for (const auto& e : R.data()) n = std::lcm(n, e.conductor());
  KMatrix Je = embed_matrix(J, n), Re = embed_matrix(R, n);
  c.valid = true;
  for (std::size_t i = 0; i < pres.relators.size(); ++i) {
    KMatrix m = evaluate_word(pres.relators[i], Je, Re);
    auto s = m.scalar_value();
    bool ok = s && !s->is_zero();
    c.relator_scalar.push_back(ok);
    if (ok) {
      c.lambdas.push_back(s->canonical());
    } else if (c.valid) {
      c.valid = false;
      c.failing_relator = static_cast<int>(i) + 1;
      c.message = "relator " + std::to_string(i + 1) + " (" + pres.relator_names[i] + ") is not scalar";
    }
  }
  if (!c.valid) c.lambdas.clear();
  return c;
}

inline Certificate verify(const RepPoint& pt) { return verify(make_presentation(pt.p, pt.k), pt.J, pt.R); }

/// Verify parameter values of a family (side conditions included).
inline Certificate verify(const Family& fam, const std::vector<CycloNum>& values) {
  try {
    RepPoint pt = instantiate(fam, values);
    return verify(pt);
  } catch (const NotARepresentation& e) {
    Certificate c;
    c.failing_relator = e.relator();
    c.message = e.what();
    return c;
  }
}

// ---------------------------------------------------------------------------
// Reconstruction

namespace detail {

inline Real eps_bits(long bits, mpfr_prec_t prec) { return Real::pow2(-bits, prec); }

/// Field representatives in trial order: Q(zeta_n) = Q(zeta_2n) for odd n.
inline std::vector<int> conductor_order(std::vector<int> ns) {
  for (auto& n : ns)
    if (n % 4 == 2) n /= 2;
  std::sort(ns.begin(), ns.end(), [](int a, int b) {
    int pa = euler_phi(a), pb = euler_phi(b);
    return pa != pb ? pa < pb : a < b;
  });
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  return ns;
}

}  // namespace detail

/// Element of Q(zeta_n) within 2^{-prec/2} of z with denominators at most D,
/// if one is found.
inline std::optional<CycloNum> reconstruct_number(const Complex& z, int n, const Integer& D, mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 32;
  const Real tol = detail::eps_bits(prec / 2, wp);
  auto close = [&](const CycloNum& c) {
    Complex w = c.to_complex(wp);
    return abs(w - z) <= tol;
  };
  const int phi = euler_phi(n);
  if (phi == 1) {
    if (!(abs(z.im) <= tol)) return std::nullopt;
    CycloNum c(best_rational(z.re.to_rational(), D));
    if (close(c)) return c;
    return std::nullopt;
  }
  if (phi == 2) {
    // z = a + b zeta_n with a, b rational
    Complex zn = Complex::root_of_unity(1, n, wp);
    Real b = z.im / zn.im;
    Real a = z.re - b * zn.re;
    Rational qa = best_rational(a.to_rational(), D), qb = best_rational(b.to_rational(), D);
    CycloNum c = CycloNum(qa).embed(n) + CycloNum::zeta(n).scaled(qb);
    if (close(c)) return c.canonical();
    return std::nullopt;
  }
  // integer relation a0 z + a1 + a2 zeta + ... = 0
  std::vector<Complex> x;
  x.push_back(z);
  for (int j = 0; j < phi; ++j) x.push_back(Complex::root_of_unity(j, n, wp));
  auto rels = integer_relations(x, static_cast<long>(prec) - 24);
  for (const auto& r : rels) {
    if (r[0] == 0) continue;
    if (abs(r[0]) > D) continue;
    std::vector<Rational> c(static_cast<std::size_t>(phi));
    for (int j = 0; j < phi; ++j) {
      c[static_cast<std::size_t>(j)] = Rational(-r[static_cast<std::size_t>(j) + 1], r[0]);
      c[static_cast<std::size_t>(j)].canonicalize();
    }
    CycloNum cand = CycloNum::from_coeffs(n, c);
    if (close(cand)) return cand.canonical();
  }
  return std::nullopt;
}

/// Exact point of a family near the numeric coordinates (given in ring
/// variable order), certified by instantiate().
inline std::optional<RepPoint> reconstruct(const Family& fam, const std::vector<Complex>& coords, const SolverOptions& opt,
                                           mpfr_prec_t prec) {
  std::vector<int> ns = opt.conductors;
  ns.push_back(fam.conductor());
  ns.push_back(std::lcm(3, fam.p));
  for (int n : detail::conductor_order(ns)) {
    std::vector<CycloNum> vals;
    bool ok = true;
    for (const auto& z : coords) {
      auto v = reconstruct_number(z, n, opt.denom_bound, prec);
      if (!v) {
        ok = false;
        break;
      }
      vals.push_back(*v);
    }
    if (!ok) continue;
    try {
      return instantiate(fam, vals);
    } catch (const NotARepresentation&) {
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Numeric enumeration

struct NumericSolutions {
  std::vector<std::vector<Complex>> points;
  bool separated = true;  ///< all root discs used were pairwise disjoint
};

namespace detail {

template <class F>
std::vector<RootApprox> upoly_roots(const UPoly<F>& f, mpfr_prec_t prec, bool& separated) {
  std::vector<Complex> c;
  for (const auto& a : f) c.push_back(CoeffTraits<F>::to_complex(a, prec + 64));
  auto rs = polynomial_roots(c, prec);
  separated = separated && rs.separated;
  return rs.roots;
}

inline Real poly_residual_scale(std::size_t terms, const std::vector<Complex>& pt, unsigned deg, mpfr_prec_t prec) {
  Real m(1.0, prec);
  for (const auto& z : pt)
    if (m < abs(z)) m = abs(z);
  Real s(static_cast<double>(terms + 1), prec);
  for (unsigned i = 0; i < deg; ++i) s = s * m;
  return s;
}

}  // namespace detail

/// All points of a zero-dimensional ideal, numerically. Coordinates follow
/// the ring's variable order. Prefix tuples (a_1..a_j) are linked through the
/// minimal polynomials of w_j = v_1 + l_2 v_2 + ... + l_j v_j and the final
/// tuples are filtered by the residual of the Groebner basis.
template <class F>
NumericSolutions numeric_solutions(const GroebnerBasis<F>& gb, mpfr_prec_t prec, unsigned seed = 1) {
  NumericSolutions out;
  if (gb.is_unit()) return out;
  const RingPtr& ring = gb.ring;
  const std::size_t nv = ring->vars().size();
  if (nv == 0) {
    out.points.push_back({});
    return out;
  }
  const mpfr_prec_t wp = prec + 32;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(2, 97);
  using P = MultiPoly<F>;

  std::vector<std::vector<RootApprox>> var_roots(nv);
  for (std::size_t i = 0; i < nv; ++i)
    var_roots[i] = detail::upoly_roots(squarefree_part(minimal_polynomial(P::variable(ring, i), gb)), prec, out.separated);

  const Real slack = detail::eps_bits(prec / 2, wp);
  std::vector<std::vector<Complex>> tuples;
  for (const auto& r : var_roots[0]) tuples.push_back({r.value});
  P w = P::variable(ring, 0);
  std::vector<long> lam = {1};
  for (std::size_t j = 1; j < nv; ++j) {
    long l = dist(rng);
    lam.push_back(l);
    w = w + P::variable(ring, j).scaled(F(Rational(l)));
    auto wr = detail::upoly_roots(squarefree_part(minimal_polynomial(w, gb)), prec, out.separated);
    std::vector<std::vector<Complex>> next;
    for (const auto& t : tuples) {
      for (const auto& r : var_roots[j]) {
        Complex s = r.value;
        s = Real(static_cast<double>(l), wp) * s;
        for (std::size_t i = 0; i < t.size(); ++i) s += Real(static_cast<double>(lam[i]), wp) * t[i];
        for (const auto& q : wr) {
          Real bound = q.radius + slack * (abs(s) + Real(1.0, wp));
          if (abs(s - q.value) <= bound) {
            auto u = t;
            u.push_back(r.value);
            next.push_back(std::move(u));
            break;
          }
        }
      }
    }
    tuples = std::move(next);
  }

  // residual filter and de-duplication
  for (auto& t : tuples) {
    bool ok = true;
    for (const auto& g : gb.basis) {
      Complex v = g.evaluate_numeric(t, wp);
      Real scale = detail::poly_residual_scale(g.size(), t, g.total_degree(), wp);
      if (!(abs(v) <= slack * scale)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    bool dup = false;
    for (const auto& s : out.points) {
      Real d(0.0, wp);
      for (std::size_t i = 0; i < nv; ++i) d += abs(s[i] - t[i]);
      if (d <= slack) {
        dup = true;
        break;
      }
    }
    if (!dup) out.points.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Solving a case

struct SystemReport {
  std::string label;
  int dimension = -1;
  bool over_rationals = false;
  std::size_t gb_size = 0;
  std::optional<std::size_t> standard_monomials;
  std::vector<std::string> basis;  ///< Groebner basis when positive-dimensional
  bool budget_exceeded = false;
};

struct SolvedPoint {
  std::vector<Complex> numeric;
  mpfr_prec_t precision = 0;
  std::optional<RepPoint> exact;
  bool certified = false;
  std::size_t system = 0;
};

struct SolveOutcome {
  GeneratorCase gcase;
  int p = 0, k = 0;
  std::vector<std::string> vars;
  int dimension = -1;
  std::vector<SystemReport> systems;
  std::size_t distinct_solution_count = 0;  ///< at the working precision
  std::size_t recheck_count = 0;            ///< at twice the working precision
  bool count_stable = true;
  bool separated = true;
  bool budget_exceeded = false;
  std::vector<SolvedPoint> points;

  std::size_t certified_count() const {
    return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const SolvedPoint& s) { return s.certified; }));
  }
};

namespace detail {

inline std::optional<std::vector<RatPoly>> rational_generators(const Ideal<CycloNum>& I) {
  std::vector<RatPoly> out;
  for (const auto& g : I.generators()) {
    auto q = to_rational(g);
    if (!q) return std::nullopt;
    out.push_back(*q);
  }
  return out;
}

template <class F>
void fill_system(SystemReport& rep, const GroebnerBasis<F>& gb) {
  rep.gb_size = gb.basis.size();
  rep.dimension = dimension_from_basis(gb);
  if (rep.dimension == 0) {
    auto sm = standard_monomials(gb);
    if (sm) rep.standard_monomials = sm->size();
  }
  if (rep.dimension > 0)
    for (const auto& g : gb.basis) rep.basis.push_back(g.to_string());
}

struct SystemSolution {
  NumericSolutions lo, hi;
};

template <class F>
SystemSolution solve_zero_dim(const GroebnerBasis<F>& gb, const SolverOptions& opt) {
  return {numeric_solutions(gb, opt.precision, opt.seed), numeric_solutions(gb, 2 * opt.precision, opt.seed)};
}

}  // namespace detail

/// Dimension, numeric solutions and exact reconstruction for a family.
/// Only the dimension is computed when `dimension_only` is set.
inline SolveOutcome solve_family(const Presentation& pres, const Family& fam, const SolverOptions& opt = {},
                                 bool dimension_only = false) {
  SolveOutcome out;
  out.gcase = fam.gcase;
  out.p = fam.p;
  out.k = fam.k;
  out.vars = fam.vars();
  GroebnerOptions gopt;
  gopt.budget = opt.budget;
  auto systems = case_systems(pres, fam);
  for (std::size_t si = 0; si < systems.size(); ++si) {
    SystemReport rep;
    rep.label = systems[si].label;
    detail::SystemSolution sol;
    try {
      if (auto q = detail::rational_generators(systems[si].ideal)) {
        rep.over_rationals = true;
        auto gb = buchberger(*q, fam.ring, gopt);
        detail::fill_system(rep, gb);
        if (rep.dimension == 0 && !dimension_only) sol = detail::solve_zero_dim(gb, opt);
      } else {
        const auto& gb = systems[si].ideal.groebner(gopt);
        detail::fill_system(rep, gb);
        if (rep.dimension == 0 && !dimension_only) sol = detail::solve_zero_dim(gb, opt);
      }
    } catch (const BudgetExceeded&) {
      rep.budget_exceeded = true;
      out.budget_exceeded = true;
    }
    out.dimension = std::max(out.dimension, rep.dimension);
    out.separated = out.separated && sol.lo.separated && sol.hi.separated;
    out.distinct_solution_count += sol.lo.points.size();
    out.recheck_count += sol.hi.points.size();
    for (auto& pt : sol.hi.points) {
      SolvedPoint sp;
      sp.numeric = std::move(pt);
      sp.precision = 2 * opt.precision;
      sp.system = si;
      out.points.push_back(std::move(sp));
    }
    out.systems.push_back(std::move(rep));
  }
  out.count_stable = out.distinct_solution_count == out.recheck_count;
  for (auto& sp : out.points) {
    sp.exact = reconstruct(fam, sp.numeric, opt, sp.precision);
    sp.certified = sp.exact.has_value();
  }
  return out;
}

inline SolveOutcome solve_case(const Presentation& pres, const GeneratorCase& gc, const SolverOptions& opt = {}) {
  return solve_family(pres, family(gc, pres.p, pres.k), opt);
}

// ---------------------------------------------------------------------------

struct CaseDimension {
  GeneratorCase gcase;
  int dimension = -1;
  std::vector<int> system_dimensions;
  bool budget_exceeded = false;
};

/// Hilbert dimension of every generator case of a lattice.
inline std::vector<CaseDimension> dimension_scan(int p, int k, const SolverOptions& opt = {}) {
  Presentation pres = make_presentation(p, k);
  std::vector<CaseDimension> out;
  for (const auto& gc : all_cases(p)) {
    SolveOutcome so = solve_family(pres, family(gc, p, k), opt, true);
    CaseDimension cd{gc, so.dimension, {}, so.budget_exceeded};
    for (const auto& s : so.systems) cd.system_dimensions.push_back(s.dimension);
    out.push_back(std::move(cd));
  }
  return out;
}

}  // namespace dmrep
