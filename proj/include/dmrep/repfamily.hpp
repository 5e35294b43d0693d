#pragma once

// Parametrised matrix families for rho(J), rho(R) per generator-type case,
// conversion of relators into polynomial systems, and exact instantiation.

#include "dmrep/linalg.hpp"
#include "dmrep/poly.hpp"
#include "dmrep/presentation.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dmrep {

using KPoly = MultiPoly<CycloNum>;
using RatPoly = MultiPoly<Rational>;
using KMatrix = Matrix<CycloNum>;
using PolyMatrix = Matrix<KPoly>;

class NotARepresentation : public std::runtime_error {
 public:
  NotARepresentation(const std::string& msg, int relator) : std::runtime_error(msg), relator_(relator) {}
  int relator() const { return relator_; }

 private:
  int relator_;
};

enum class CaseKind { refl_regular, refl_degenerate, refl_trivial, inverted, both_regular };

inline std::string to_string(CaseKind k) {
  switch (k) {
    case CaseKind::refl_regular: return "ReflRegular";
    case CaseKind::refl_degenerate: return "ReflDegenerate";
    case CaseKind::refl_trivial: return "ReflTrivial";
    case CaseKind::inverted: return "InvertedCase";
    case CaseKind::both_regular: return "BothRegular";
  }
  return "?";
}

inline std::optional<CaseKind> parse_case_kind(const std::string& s) {
  for (auto k : {CaseKind::refl_regular, CaseKind::refl_degenerate, CaseKind::refl_trivial, CaseKind::inverted,
                 CaseKind::both_regular})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

/// A generator-type case with its sub-case data: the R block form for the
/// degenerate case (1 or 2), eigenvalue exponents of R (powers of zeta_p) for
/// the inverted and both-regular cases.
struct GeneratorCase {
  CaseKind kind = CaseKind::refl_regular;
  int form = 0;
  std::vector<int> exponents;

  std::string label() const {
    std::string s = to_string(kind);
    if (kind == CaseKind::refl_degenerate) s += "/form" + std::to_string(form);
    if (!exponents.empty()) {
      s += "/";
      for (std::size_t i = 0; i < exponents.size(); ++i) s += (i ? "," : "") + std::to_string(exponents[i]);
    }
    return s;
  }
  friend bool operator==(const GeneratorCase& a, const GeneratorCase& b) {
    return a.kind == b.kind && a.form == b.form && a.exponents == b.exponents;
  }
};

/// All sub-cases of a kind for R of order p.
inline std::vector<GeneratorCase> sub_cases(CaseKind kind, int p) {
  std::vector<GeneratorCase> out;
  switch (kind) {
    case CaseKind::refl_regular:
    case CaseKind::refl_trivial:
      out.push_back({kind, 0, {}});
      break;
    case CaseKind::refl_degenerate:
      out.push_back({kind, 1, {}});
      out.push_back({kind, 2, {}});
      break;
    case CaseKind::inverted:
      // eigenvalues zeta_p^(0, a, b) on the three eigenvectors of the standard J
      for (int a = 1; a < p; ++a)
        for (int b = 1; b < p; ++b)
          if (a != b) out.push_back({kind, 0, {0, a, b}});
      break;
    case CaseKind::both_regular:
      // eigenvalue 1 on e1, {zeta_p^a, zeta_p^b} on the complementary block
      for (int a = 1; a < p; ++a)
        for (int b = a + 1; b < p; ++b) out.push_back({kind, 0, {a, b}});
      break;
  }
  return out;
}

inline std::vector<GeneratorCase> all_cases(int p) {
  std::vector<GeneratorCase> out;
  for (auto k : {CaseKind::refl_regular, CaseKind::refl_degenerate, CaseKind::refl_trivial, CaseKind::inverted,
                 CaseKind::both_regular})
    for (auto& c : sub_cases(k, p)) out.push_back(c);
  return out;
}

/// Whether the case preserves generator types (J regular elliptic, R a
/// complex reflection or trivial).
inline bool type_preserving(CaseKind k) {
  return k == CaseKind::refl_regular || k == CaseKind::refl_degenerate || k == CaseKind::refl_trivial;
}

// ---------------------------------------------------------------------------

inline KMatrix standard_J() { return KMatrix{{0, 0, 1}, {-1, 0, 0}, {0, 1, 0}}; }

/// Eigenvectors of the standard J (columns), for eigenvalues -1, -omega^2,
/// -omega in that order: [1,1,-1], [-omega,-omega^2,1], [-omega^2,-omega,1].
inline KMatrix standard_J_eigenvectors() {
  CycloNum w = omega(), w2 = omega().pow(2);
  return KMatrix{{1, -w, -w2}, {1, -w2, -w}, {-1, 1, 1}};
}

/// Side condition 1 + x + ... + x^{p-1} (x^p = 1, x != 1).
inline KPoly reflection_side_condition(const RingPtr& ring, const std::string& x, int p) {
  KPoly s(ring);
  KPoly xv = KPoly::variable(ring, x);
  KPoly pw(ring, CycloNum(1));
  for (int i = 0; i < p; ++i) {
    s = s + pw;
    pw = pw * xv;
  }
  return s;
}

struct Family {
  GeneratorCase gcase;
  int p = 3, k = 6;
  RingPtr ring;
  PolyMatrix J, R;
  std::vector<KPoly> side;  ///< side conditions (reduced Groebner basis)
  std::string notes;
  bool split_braid = false;  ///< see case_systems()

  /// Conductor of the template coefficients.
  int conductor() const {
    int n = 1;
    auto visit = [&](const KPoly& f) {
      for (const auto& t : f.terms()) n = std::lcm(n, t.c.canonical().conductor());
    };
    for (const auto& e : J.data()) visit(e);
    for (const auto& e : R.data()) visit(e);
    for (const auto& e : side) visit(e);
    return n;
  }
  const std::vector<std::string>& vars() const { return ring->vars(); }
};

namespace detail {

inline PolyMatrix constant_matrix(const RingPtr& ring, const KMatrix& m) {
  PolyMatrix out(m.rows(), m.cols(), KPoly(ring));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = KPoly(ring, m(i, j));
  return out;
}

inline PolyMatrix parse_matrix(const RingPtr& ring, const std::vector<std::vector<std::string>>& rows, int n) {
  PolyMatrix out(rows.size(), rows.at(0).size(), KPoly(ring));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) out(i, j) = parse_poly<CycloNum>(rows[i][j], ring, n);
  return out;
}

inline std::vector<KPoly> side_basis(const std::vector<KPoly>& side, const RingPtr& ring) {
  if (side.empty()) return {};
  return buchberger(side, ring).basis;
}

}  // namespace detail

/// Symbolic templates and side conditions for a case of the (p, k) lattice.
inline Family family(const GeneratorCase& gc, int p, int k) {
  if (!valid_lattice(p, k)) throw PresentationError("family: invalid lattice");
  Family f;
  f.gcase = gc;
  f.p = p;
  f.k = k;
  switch (gc.kind) {
    case CaseKind::refl_regular: {
      // J fixed, R a reflection fixing the line through [1,0,0], [1,1,1]
      f.ring = make_ring({"r1", "r2", "x"});
      f.J = detail::constant_matrix(f.ring, standard_J());
      f.R = detail::parse_matrix(f.ring, {{"1", "-r1", "r1"}, {"0", "1 - r2", "r2"}, {"0", "1 - r2 - x", "r2 + x"}}, 1);
      f.side = {reflection_side_condition(f.ring, "x", p)};
      f.notes = "third eigenvalue x of R satisfies 1 + x + ... + x^(p-1) = 0";
      break;
    }
    case CaseKind::refl_degenerate: {
      if (gc.form != 1 && gc.form != 2) throw std::invalid_argument("family: degenerate form must be 1 or 2");
      f.ring = make_ring({"r2", "x"});
      f.J = detail::parse_matrix(f.ring, {{"1", "0", "0"}, {"0", "z", "0"}, {"0", "0", "z^2"}}, 3);
      const char* top = gc.form == 1 ? "-1" : "0";
      const char* top2 = gc.form == 1 ? "1" : "0";
      f.R = detail::parse_matrix(f.ring, {{"1", top, top2}, {"0", "1 - r2", "r2"}, {"0", "1 - r2 - x", "r2 + x"}}, 3);
      f.side = {reflection_side_condition(f.ring, "x", p)};
      f.notes = "J diagonal; e1 is a common eigenvector";
      break;
    }
    case CaseKind::refl_trivial: {
      f.ring = make_ring({});
      f.J = detail::constant_matrix(f.ring, standard_J());
      f.R = detail::constant_matrix(f.ring, KMatrix::identity(3));
      f.notes = "R = Id; image is the cyclic group generated by J";
      break;
    }
    case CaseKind::inverted: {
      if (gc.exponents.size() != 3) throw std::invalid_argument("family: inverted case needs three exponents");
      f.ring = make_ring({"r1", "r2", "x"});
      // J a reflection of order 3 in the normal form used for R above
      f.J = detail::parse_matrix(f.ring, {{"1", "-r1", "r1"}, {"0", "1 - r2", "r2"}, {"0", "1 - r2 - x", "r2 + x"}}, 1);
      // R regular elliptic with eigenvectors those of the standard J
      KMatrix P = standard_J_eigenvectors();
      KMatrix D(3, 3, CycloNum(0));
      for (int i = 0; i < 3; ++i) D(i, i) = CycloNum::zeta(p, gc.exponents[i]);
      KMatrix Rm = P * D * *inverse(P);
      for (auto& e : Rm.raw()) e = e.canonical();
      f.R = detail::constant_matrix(f.ring, Rm);
      f.side = {reflection_side_condition(f.ring, "x", 3)};
      f.notes = "J a reflection with eigenvalues 1, 1, x; R = P diag(zeta_p^e) P^-1";
      break;
    }
    case CaseKind::both_regular: {
      if (gc.exponents.size() != 2) throw std::invalid_argument("family: both-regular case needs two exponents");
      f.ring = make_ring({"r1", "r2", "s1", "s2", "s3"});
      CycloNum ma = CycloNum::zeta(p, gc.exponents[0]), mb = CycloNum::zeta(p, gc.exponents[1]);
      CycloNum tr = (ma + mb).canonical(), det = (ma * mb).canonical();
      f.J = detail::constant_matrix(f.ring, standard_J());
      f.R = detail::parse_matrix(f.ring, {{"1", "s1", "r1"}, {"0", "s2", "r2"}, {"0", "s3", "-s2"}}, 1);
      f.R(2, 2) = f.R(2, 2) + KPoly(f.ring, tr);
      // block determinant s2 t - r2 s3 equals zeta_p^(a+b)
      f.side = {f.R(1, 1) * f.R(2, 2) - f.R(1, 2) * f.R(2, 1) - KPoly(f.ring, det)};
      f.notes = "R has eigenvalue 1 on e1 and zeta_p^a, zeta_p^b on the block";
      f.split_braid = true;
      break;
    }
  }
  f.side = detail::side_basis(f.side, f.ring);
  return f;
}

// ---------------------------------------------------------------------------

/// Reduce every entry modulo a Groebner basis.
inline PolyMatrix reduce_entries(PolyMatrix m, const std::vector<KPoly>& gb) {
  if (gb.empty()) return m;
  for (auto& e : m.raw()) e = normal_form(e, gb);
  return m;
}

/// Symbolic relator matrices, entries reduced modulo the side conditions.
inline std::vector<PolyMatrix> relator_matrices(const Presentation& pres, const Family& fam) {
  if (pres.p != fam.p || pres.k != fam.k) throw std::invalid_argument("relator_matrices: lattice mismatch");
  PolyMatrix id = PolyMatrix::identity(3, KPoly(fam.ring, CycloNum(1)), KPoly(fam.ring));
  auto reduce = [&](PolyMatrix m) { return reduce_entries(std::move(m), fam.side); };
  std::vector<PolyMatrix> out;
  for (const auto& w : pres.relators) out.push_back(evaluate_word(w, fam.J, fam.R, id, reduce));
  return out;
}

/// Equations expressing that a matrix is scalar: off-diagonal entries and
/// differences of consecutive diagonal entries.
inline std::vector<KPoly> scalar_equations(const PolyMatrix& m) {
  std::vector<KPoly> eqs;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j && !m(i, j).is_zero()) eqs.push_back(m(i, j));
  for (std::size_t i = 0; i + 1 < 3; ++i) {
    KPoly d = m(i, i) - m(i + 1, i + 1);
    if (!d.is_zero()) eqs.push_back(d);
  }
  return eqs;
}

inline Ideal<CycloNum> relators_to_ideal(const Presentation& pres, const Family& fam) {
  std::vector<KPoly> gens = fam.side;
  for (const auto& m : relator_matrices(pres, fam))
    for (auto& e : scalar_equations(m)) gens.push_back(e.primitive());
  if (gens.empty()) gens.push_back(KPoly(fam.ring));
  return Ideal<CycloNum>(fam.ring, std::move(gens));
}

/// One piece of a case's variety: the zero sets of all pieces cover the
/// variety of relators_to_ideal().
struct CaseSystem {
  std::string label;
  Ideal<CycloNum> ideal;
};

/// Braid relator w = A C split as A = gamma inv(C) with gamma a cube root of
/// unity (A and inv(C) use the same letters). Needs J^3 and R^p scalar
/// modulo the side conditions, which holds for the both-regular template.
inline std::vector<CaseSystem> case_systems(const Presentation& pres, const Family& fam) {
  if (!fam.split_braid) return {{"all", relators_to_ideal(pres, fam)}};
  auto ms = relator_matrices(pres, fam);
  if (!scalar_equations(ms[0]).empty() || !scalar_equations(ms[1]).empty())
    throw std::logic_error("case_systems: J^3 or R^p not scalar on the template");
  const int p = pres.p;
  Word a = Word::parse("R J R J2 R J", p);
  Word c = Word::parse("R^" + std::to_string(p - 1) + " J2 R^" + std::to_string(p - 1) + " J R^" + std::to_string(p - 1) + " J2", p);
  if (!(a * c == pres.relators[3])) throw std::logic_error("case_systems: unexpected braid relator");
  PolyMatrix id = PolyMatrix::identity(3, KPoly(fam.ring, CycloNum(1)), KPoly(fam.ring));
  auto reduce = [&](PolyMatrix m) { return reduce_entries(std::move(m), fam.side); };
  PolyMatrix A = evaluate_word(a, fam.J, fam.R, id, reduce);
  PolyMatrix B = evaluate_word(c.inverse(), fam.J, fam.R, id, reduce);
  std::vector<CaseSystem> out;
  for (int j = 0; j < 3; ++j) {
    CycloNum gamma = omega().pow(j);
    std::vector<KPoly> gens = fam.side;
    for (auto& e : scalar_equations(ms[2])) gens.push_back(e.primitive());
    for (std::size_t i = 0; i < A.data().size(); ++i) {
      KPoly e = A.data()[i] - B.data()[i].scaled(gamma);
      if (!e.is_zero()) gens.push_back(e.primitive());
    }
    out.push_back({"braid scalar omega^" + std::to_string(j), Ideal<CycloNum>(fam.ring, std::move(gens))});
  }
  return out;
}

/// Polynomial over Q if all coefficients are rational.
inline std::optional<RatPoly> to_rational(const KPoly& f) {
  std::vector<Term<Rational>> ts;
  for (const auto& t : f.terms()) {
    if (!t.c.is_rational()) return std::nullopt;
    ts.push_back({t.m, t.c.rational_value()});
  }
  return RatPoly(f.ring(), std::move(ts));
}

inline KPoly to_cyclo(const RatPoly& f) {
  std::vector<Term<CycloNum>> ts;
  for (const auto& t : f.terms()) ts.push_back({t.m, CycloNum(t.c)});
  return KPoly(f.ring(), std::move(ts));
}

/// Substitute an exact value for one variable; the result lives in a ring
/// without that variable.
inline Family specialize(const Family& fam, const std::string& var, const CycloNum& value) {
  auto idx = fam.ring->index_of(var);
  if (!idx) throw std::invalid_argument("specialize: unknown variable " + var);
  std::vector<std::string> rest;
  for (const auto& v : fam.vars())
    if (v != var) rest.push_back(v);
  Family out = fam;
  out.ring = make_ring(rest);
  auto sub = [&](const KPoly& f) {
    // cyclotomic coefficients of different conductors mix freely in CycloNum
    return f.substitute({{*idx, value}}).in_ring(out.ring);
  };
  out.J = fam.J.map(sub);
  out.R = fam.R.map(sub);
  std::vector<KPoly> side;
  for (const auto& s : fam.side) {
    KPoly r = sub(s);
    if (r.is_zero()) continue;
    if (r.is_constant()) throw std::invalid_argument("specialize: value violates a side condition");
    side.push_back(r);
  }
  out.side = detail::side_basis(side, out.ring);
  out.notes = fam.notes + "; " + var + " = " + value.to_string();
  return out;
}

// ---------------------------------------------------------------------------

struct RepPoint {
  GeneratorCase gcase;
  int p = 3, k = 6;
  std::vector<std::string> vars;
  std::vector<CycloNum> values;
  KMatrix J, R;
  std::vector<CycloNum> lambdas;  ///< relator w evaluates to lambdas[w] * Id

  /// Smallest conductor of a cyclotomic field containing all matrix entries
  /// and parameter values.
  int field_conductor() const {
    int n = 1;
    for (const auto& v : values) n = std::lcm(n, v.canonical().conductor());
    for (const auto& e : J.data()) n = std::lcm(n, e.canonical().conductor());
    for (const auto& e : R.data()) n = std::lcm(n, e.canonical().conductor());
    return n;
  }
  /// Smallest conductor of a cyclotomic field containing the parameter
  /// values; the matrix entries when there are no parameters.
  int solution_conductor() const {
    if (values.empty()) return field_conductor();
    int n = 1;
    for (const auto& v : values) n = std::lcm(n, v.canonical().conductor());
    return n;
  }
  /// Common conductor of the stored representatives.
  int conductor() const {
    int n = 1;
    for (const auto& v : values) n = std::lcm(n, v.conductor());
    for (const auto& e : J.data()) n = std::lcm(n, e.conductor());
    for (const auto& e : R.data()) n = std::lcm(n, e.conductor());
    return n;
  }
  std::optional<CycloNum> value(const std::string& var) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == var) return values[i];
    return std::nullopt;
  }
};

/// Entries re-expressed over Q(zeta_n).
inline KMatrix embed_matrix(const KMatrix& m, int n) {
  return m.map([n](const CycloNum& c) { return c.embed(n); });
}

/// Put every coordinate and matrix entry over the common conductor n
/// (a multiple of the point's field conductor).
inline RepPoint embed_point(const RepPoint& pt, int n) {
  RepPoint out = pt;
  for (auto& v : out.values) v = v.canonical().embed(n);
  out.J = embed_matrix(pt.J.map([](const CycloNum& c) { return c.canonical(); }), n);
  out.R = embed_matrix(pt.R.map([](const CycloNum& c) { return c.canonical(); }), n);
  for (auto& l : out.lambdas) l = l.canonical().embed(n);
  return out;
}

/// Relator scalars of (J, R); throws NotARepresentation naming the first
/// relator that is not a nonzero scalar matrix.
inline std::vector<CycloNum> relator_scalars(const Presentation& pres, const KMatrix& J, const KMatrix& R) {
  std::vector<CycloNum> lambdas;
  for (std::size_t i = 0; i < pres.relators.size(); ++i) {
    KMatrix m = evaluate_word(pres.relators[i], J, R);
    auto s = m.scalar_value();
    if (!s || s->is_zero())
      throw NotARepresentation("relator " + std::to_string(i + 1) + " (" + pres.relator_names[i] + ") is not scalar",
                               static_cast<int>(i) + 1);
    lambdas.push_back(s->canonical());
  }
  return lambdas;
}

/// Exact point of a family; values are given in ring variable order.
inline RepPoint instantiate(const Family& fam, const std::vector<CycloNum>& values) {
  if (values.size() != fam.vars().size()) throw std::invalid_argument("instantiate: wrong number of values");
  int n = fam.conductor();
  for (const auto& v : values) n = std::lcm(n, v.conductor());
  std::vector<CycloNum> vals;
  for (const auto& v : values) vals.push_back(v.embed(std::lcm(n, v.conductor())));
  for (const auto& s : fam.side)
    if (!s.evaluate_exact(vals).is_zero()) throw NotARepresentation("side condition " + s.to_string() + " fails", 0);
  RepPoint pt;
  pt.gcase = fam.gcase;
  pt.p = fam.p;
  pt.k = fam.k;
  pt.vars = fam.vars();
  for (const auto& v : values) pt.values.push_back(v.canonical());
  auto ev = [&](const KPoly& f) { return f.evaluate_exact(vals).canonical(); };
  pt.J = fam.J.map(ev);
  pt.R = fam.R.map(ev);
  Presentation pres = make_presentation(fam.p, fam.k);
  int m = pt.conductor();
  pt.lambdas = relator_scalars(pres, embed_matrix(pt.J, m), embed_matrix(pt.R, m));
  return pt;
}

inline RepPoint instantiate(const Family& fam, const std::map<std::string, CycloNum>& values) {
  std::vector<CycloNum> v;
  for (const auto& name : fam.vars()) {
    auto it = values.find(name);
    if (it == values.end()) throw std::invalid_argument("instantiate: missing value for " + name);
    v.push_back(it->second);
  }
  return instantiate(fam, v);
}

// ---------------------------------------------------------------------------

struct Eigenspace {
  CycloNum value;
  std::vector<std::vector<CycloNum>> basis;
};

/// Eigenspaces of a matrix whose eigenvalues are N-th roots of unity times a
/// common scale; eigenvalues are searched as zeta_N^j. Returns nullopt when
/// the characteristic polynomial does not split this way.
inline std::optional<std::vector<Eigenspace>> root_of_unity_eigenspaces(const KMatrix& m, int N) {
  int n = std::lcm(N, m(0, 0).conductor());
  for (const auto& e : m.data()) n = std::lcm(n, e.conductor());
  KMatrix mm = embed_matrix(m, n);
  auto cp = characteristic_polynomial(mm);
  auto roots = roots_of_unity_roots(cp, N);
  int total = 0;
  for (auto& r : roots) total += r.second;
  if (total != static_cast<int>(m.rows())) return std::nullopt;
  std::vector<Eigenspace> out;
  for (auto [j, mult] : roots) {
    CycloNum lam = CycloNum::zeta(N, j).embed(n);
    KMatrix a = mm - lam * KMatrix::identity(m.rows(), CycloNum(Rational(1), n), CycloNum(Rational(0), n));
    out.push_back({lam.canonical(), kernel(a)});
  }
  return out;
}

struct FixedStructure {
  std::vector<Eigenspace> j_eigen;
  std::vector<Eigenspace> r_eigen;
  /// Basis of the line fixed pointwise by R (when R is a reflection).
  std::vector<std::vector<CycloNum>> r_fixed_line;
  /// incidence[i]: eigenvector i of J lies on the fixed line of R
  std::vector<bool> incidence;
  bool r_is_reflection = false;
};

/// Eigen-data of rho(J) and rho(R) and incidence of J's eigenvectors with the
/// fixed line of R. Eigenvalues are taken up to the scalars given by the
/// relators J^3 and R^p.
inline FixedStructure fixed_structure(const RepPoint& pt) {
  FixedStructure fs;
  int n = pt.conductor();
  // J^3 = lambda_J Id; rescale is avoided by searching roots of unity of order
  // 3 * ord(lambda_J) (lambda_J is a root of unity for all templates here)
  auto order_of = [](const CycloNum& l) -> std::optional<int> {
    for (int N = 1; N <= 360; ++N)
      if (l.canonical().pow(N) == CycloNum(1)) return N;
    return std::nullopt;
  };
  auto lj = order_of(pt.lambdas.at(0));
  auto lr = order_of(pt.lambdas.at(1));
  if (lj) {
    auto e = root_of_unity_eigenspaces(embed_matrix(pt.J, n), 3 * *lj);
    if (e) fs.j_eigen = *e;
  }
  if (lr) {
    auto e = root_of_unity_eigenspaces(embed_matrix(pt.R, n), pt.p * *lr);
    if (e) fs.r_eigen = *e;
  }
  for (const auto& es : fs.r_eigen)
    if (es.basis.size() == 2) {
      fs.r_is_reflection = true;
      fs.r_fixed_line = es.basis;
    }
  if (fs.r_is_reflection) {
    for (const auto& es : fs.j_eigen)
      for (const auto& v : es.basis) {
        // v on the line iff rank of [line | v] stays 2
        KMatrix m(3, 3, CycloNum(0));
        int nn = v[0].conductor();
        for (const auto& c : v) nn = std::lcm(nn, c.conductor());
        for (const auto& b : fs.r_fixed_line)
          for (const auto& c : b) nn = std::lcm(nn, c.conductor());
        for (int i = 0; i < 3; ++i) {
          m(i, 0) = fs.r_fixed_line[0][i].embed(nn);
          m(i, 1) = fs.r_fixed_line[1][i].embed(nn);
          m(i, 2) = v[i].embed(nn);
        }
        fs.incidence.push_back(determinant(m).is_zero());
      }
  }
  return fs;
}

}  // namespace dmrep
