#pragma once

// Classification of representation points: invariant Hermitian forms,
// irreducibility, Galois orbits, lifts to the linear group, cusp elements.

#include "dmrep/solver.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dmrep {

namespace detail {

inline int matrix_conductor(const KMatrix& m, int n = 1) {
  for (const auto& e : m.data()) n = std::lcm(n, e.conductor());
  return n;
}

inline KMatrix id3(int n = 1) {
  return KMatrix::identity(3, CycloNum(Rational(1), n), CycloNum(Rational(0), n));
}

inline std::optional<int> root_of_unity_order(const CycloNum& l, int bound) {
  CycloNum c = l.canonical();
  CycloNum acc = c;
  for (int m = 1; m <= bound; ++m) {
    if (acc.is_one()) return m;
    acc = acc * c;
  }
  return std::nullopt;
}

/// All m-th roots of a root of unity l of order ord, inside Q(zeta_{m ord}).
inline std::vector<CycloNum> roots_of(const CycloNum& l, int ord, int m) {
  const int N = m * ord;
  std::vector<CycloNum> out;
  for (int j = 0; j < N; ++j) {
    CycloNum z = CycloNum::zeta(N, j);
    if (z.pow(m) == l) out.push_back(z.canonical());
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hermitian forms

struct Signature {
  int pos = 0, neg = 0, zero = 0;
  friend bool operator==(const Signature& a, const Signature& b) {
    return a.pos == b.pos && a.neg == b.neg && a.zero == b.zero;
  }
};

/// Inertia of a Hermitian matrix: rank by elimination, then Descartes' rule
/// on the characteristic polynomial (all roots real).
inline Signature signature(const KMatrix& H) {
  if (!H.square()) throw DimensionError("signature: not square");
  const int n = static_cast<int>(H.rows());
  KMatrix h = embed_matrix(H, detail::matrix_conductor(H));
  auto cp = characteristic_polynomial(h);
  std::vector<Sign> s;
  for (const auto& c : cp) s.push_back(c.canonical().sign_real());
  Signature sig;
  std::size_t low = 0;
  while (low < s.size() && s[low] == Sign::zero) ++low;
  sig.zero = static_cast<int>(low);
  auto changes = [&](bool flip) {
    int count = 0;
    Sign last = Sign::zero;
    for (std::size_t i = low; i < s.size(); ++i) {
      Sign v = s[i];
      if (v == Sign::zero) continue;
      if (flip && (i % 2 == 1)) v = v == Sign::positive ? Sign::negative : Sign::positive;
      if (last != Sign::zero && v != last) ++count;
      last = v;
    }
    return count;
  };
  sig.pos = changes(false);
  sig.neg = changes(true);
  if (sig.pos + sig.neg + sig.zero != n) throw std::logic_error("signature: matrix is not Hermitian");
  return sig;
}

struct HermitianForm {
  /// dimension over the real subfield of the space of invariant forms
  int kernel_dimension = 0;
  std::vector<KMatrix> basis;
  std::optional<KMatrix> H;  ///< set when kernel_dimension == 1
  int eps_J = 1, eps_R = 1;
  std::optional<Signature> sig;

  bool ambiguous() const { return kernel_dimension >= 2; }
  int rank() const { return sig ? 3 - sig->zero : 0; }
  bool nondegenerate() const { return sig && sig->zero == 0; }
  /// "(2,1)", "(3,0)", "degenerate rank r", "ambiguous (d)" or "none".
  std::string label() const {
    if (kernel_dimension == 0) return "none";
    if (ambiguous()) return "ambiguous (" + std::to_string(kernel_dimension) + ")";
    if (!nondegenerate()) return "degenerate rank " + std::to_string(rank());
    int a = std::max(sig->pos, sig->neg), b = std::min(sig->pos, sig->neg);
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  }
  /// Column label of the tables: the signature, "Degenerate" or "None".
  std::string table_label() const {
    if (kernel_dimension == 0) return "None";
    if (kernel_dimension == 1 && nondegenerate()) return label();
    return "Degenerate";
  }
};

namespace detail {

/// Q-linear solve of H = H*, J* H J = eJ H, R* H R = eR H over Q(zeta_n).
inline std::vector<KMatrix> invariant_forms(const KMatrix& J, const KMatrix& R, int n, int eJ, int eR) {
  const int phi = euler_phi(n);
  const std::size_t unknowns = 9 * static_cast<std::size_t>(phi);
  const KMatrix Js = J.adjoint(), Rs = R.adjoint();
  auto image = [&](const KMatrix& H) {
    std::vector<KMatrix> parts = {H - H.adjoint(), Js * H * J - CycloNum(eJ) * H, Rs * H * R - CycloNum(eR) * H};
    std::vector<Rational> out;
    for (const auto& m : parts)
      for (const auto& e : m.data()) {
        CycloNum v = e.embed(n);
        for (const auto& c : v.coeffs()) out.push_back(c);
      }
    return out;
  };
  auto unit = [&](std::size_t u) {
    KMatrix H(3, 3, CycloNum(Rational(0), n));
    std::size_t entry = u / static_cast<std::size_t>(phi);
    std::vector<Rational> c(static_cast<std::size_t>(phi));
    c[u % static_cast<std::size_t>(phi)] = 1;
    H(entry / 3, entry % 3) = CycloNum::from_coeffs(n, c);
    return H;
  };
  std::vector<std::vector<Rational>> cols;
  for (std::size_t u = 0; u < unknowns; ++u) cols.push_back(image(unit(u)));
  Matrix<Rational> A(cols[0].size(), unknowns, Rational(0));
  for (std::size_t j = 0; j < unknowns; ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i) A(i, j) = cols[j][i];
  std::vector<KMatrix> out;
  for (const auto& v : kernel(A)) {
    KMatrix H(3, 3, CycloNum(Rational(0), n));
    for (std::size_t e = 0; e < 9; ++e) {
      std::vector<Rational> c(v.begin() + static_cast<long>(e * phi), v.begin() + static_cast<long>((e + 1) * phi));
      H(e / 3, e % 3) = CycloNum::from_coeffs(n, c);
    }
    out.push_back(H);
  }
  return out;
}

}  // namespace detail

/// Invariant Hermitian forms of the pair (J, R), up to the signs eJ, eR.
/// Sign pairs are tried in the order (1,1), (1,-1), (-1,1), (-1,-1).
inline HermitianForm hermitian_form(const KMatrix& J, const KMatrix& R) {
  auto canon = [](const CycloNum& c) { return c.canonical(); };
  const KMatrix Jc = J.map(canon), Rc = R.map(canon);
  int n = detail::matrix_conductor(Rc, detail::matrix_conductor(Jc));
  // a real field has no room for the imaginary parts of a Hermitian form
  if (n <= 2) n = 3;
  const KMatrix Je = embed_matrix(Jc, n), Re = embed_matrix(Rc, n);
  const int real_degree = std::max(1, euler_phi(n) / 2);
  HermitianForm hf;
  for (auto [eJ, eR] : {std::pair{1, 1}, std::pair{1, -1}, std::pair{-1, 1}, std::pair{-1, -1}}) {
    auto basis = detail::invariant_forms(Je, Re, n, eJ, eR);
    if (basis.empty()) continue;
    hf.eps_J = eJ;
    hf.eps_R = eR;
    hf.kernel_dimension = static_cast<int>(basis.size()) / real_degree;
    for (auto& b : basis) b = b.map([](const CycloNum& c) { return c.canonical(); });
    hf.basis = basis;
    if (hf.kernel_dimension == 1) {
      KMatrix H = basis[0];
      for (int i = 0; i < 3; ++i)
        if (!H(i, i).is_zero()) {
          CycloNum s = H(i, i).inverse();
          H = H.map([&](const CycloNum& c) { return (c * s).canonical(); });
          break;
        }
      hf.H = H;
      hf.sig = signature(H);
    }
    return hf;
  }
  return hf;
}

inline HermitianForm hermitian_form(const RepPoint& pt) { return hermitian_form(pt.J, pt.R); }

// ---------------------------------------------------------------------------
// Irreducibility

/// Dimension of the algebra spanned by all words in J and R.
inline int algebra_dimension(const KMatrix& J, const KMatrix& R) {
  const int n = detail::matrix_conductor(R, detail::matrix_conductor(J));
  const KMatrix Je = embed_matrix(J, n), Re = embed_matrix(R, n);
  std::vector<KMatrix> basis;
  auto try_add = [&](const KMatrix& m) {
    KMatrix test(basis.size() + 1, 9, CycloNum(Rational(0), n));
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < 9; ++j) test(i, j) = basis[i].data()[j];
    for (std::size_t j = 0; j < 9; ++j) test(basis.size(), j) = m.data()[j];
    if (rank(test) <= basis.size()) return false;
    basis.push_back(m);
    return true;
  };
  try_add(detail::id3(n));
  for (std::size_t i = 0; i < basis.size() && basis.size() < 9; ++i) {
    KMatrix b = basis[i];
    try_add(b * Je);
    if (basis.size() < 9) try_add(b * Re);
  }
  return static_cast<int>(basis.size());
}

namespace detail {

/// Eigenspaces of a matrix whose m-th power is a root-of-unity scalar.
inline std::optional<std::vector<Eigenspace>> finite_order_eigenspaces(const KMatrix& g, int m, int bound = 360) {
  auto s = g.pow(static_cast<unsigned>(m)).scalar_value();
  if (!s || s->is_zero()) return std::nullopt;
  auto ord = root_of_unity_order(*s, bound);
  if (!ord) return std::nullopt;
  return root_of_unity_eigenspaces(g, m * *ord);
}

inline bool subspaces_meet(const std::vector<std::vector<CycloNum>>& a, const std::vector<std::vector<CycloNum>>& b) {
  std::size_t d = a.size() + b.size();
  if (d > 3) return true;
  KMatrix m(3, d, CycloNum(0));
  std::size_t c = 0;
  for (const auto* s : {&a, &b})
    for (const auto& v : *s) {
      for (std::size_t i = 0; i < 3; ++i) m(i, c) = v[i];
      ++c;
    }
  return rank(m) < d;
}

inline std::optional<bool> common_eigenvector(const KMatrix& J, const KMatrix& R, int p) {
  auto ej = finite_order_eigenspaces(J, 3);
  auto er = finite_order_eigenspaces(R, p);
  if (!ej || !er) return std::nullopt;
  for (const auto& a : *ej)
    for (const auto& b : *er)
      if (subspaces_meet(a.basis, b.basis)) return true;
  return false;
}

}  // namespace detail

struct Irreducibility {
  bool irreducible = false;
  int algebra_dimension = 0;
  std::optional<bool> invariant_line;   ///< common eigenvector of J and R
  std::optional<bool> invariant_plane;  ///< common eigenvector of the transposes
  /// Eigenvector test and algebra dimension agree (when the eigenvector test ran).
  bool consistent() const {
    if (!invariant_line || !invariant_plane) return true;
    return irreducible == !(*invariant_line || *invariant_plane);
  }
};

/// Burnside: irreducible iff the words span all 3x3 matrices. Cross-checked
/// with common eigenvectors of (J, R) and of their transposes.
inline Irreducibility irreducibility(const KMatrix& J, const KMatrix& R, int p) {
  Irreducibility out;
  out.algebra_dimension = algebra_dimension(J, R);
  out.irreducible = out.algebra_dimension == 9;
  out.invariant_line = detail::common_eigenvector(J, R, p);
  out.invariant_plane = detail::common_eigenvector(J.transpose(), R.transpose(), p);
  return out;
}

inline bool is_irreducible(const RepPoint& pt) { return algebra_dimension(pt.J, pt.R) == 9; }

// ---------------------------------------------------------------------------
// Configuration of fixed points

/// Degenerate configuration: an eigenspace of dimension >= 2 of one
/// generator contains an eigenvector of the other. nullopt when an
/// eigenspace decomposition is not found over roots of unity.
inline std::optional<bool> degenerate_configuration(const RepPoint& pt) {
  auto ej = detail::finite_order_eigenspaces(pt.J, 3);
  auto er = detail::finite_order_eigenspaces(pt.R, pt.p);
  if (!ej || !er) return std::nullopt;
  auto check = [](const std::vector<Eigenspace>& big, const std::vector<Eigenspace>& other) {
    for (const auto& b : big) {
      if (b.basis.size() < 2) continue;
      for (const auto& o : other)
        for (const auto& v : o.basis)
          if (detail::subspaces_meet(b.basis, {v})) return true;
    }
    return false;
  };
  return check(*er, *ej) || check(*ej, *er);
}

// ---------------------------------------------------------------------------
// Projective equivalence and Galois orbits

/// Galois image of a point, coordinates and matrices (lifted to s.n).
inline RepPoint galois_image(const GaloisAut& s, const RepPoint& pt) {
  RepPoint out = pt;
  auto f = [&](const CycloNum& c) { return apply_galois_lifted(s, c).canonical(); };
  for (auto& v : out.values) v = f(v);
  out.J = pt.J.map(f);
  out.R = pt.R.map(f);
  for (auto& l : out.lambdas) l = f(l);
  return out;
}

inline bool same_coordinates(const RepPoint& a, const RepPoint& b) {
  if (!(a.gcase == b.gcase) || a.values.size() != b.values.size()) return false;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    if (a.values[i] != b.values[i]) return false;
  return a.J == b.J && a.R == b.R;
}

/// Exact test for X invertible with X J X^-1 = c1 J', X R X^-1 = c2 R' for
/// some scalars c1, c2 (taken among the roots forced by the relator
/// scalars). Invertibility on a kernel of dimension >= 2 is decided by
/// random integer combinations (fixed seed).
inline bool projectively_equivalent(const RepPoint& a, const RepPoint& b, int bound = 360) {
  if (a.p != b.p) return false;
  auto ratio_roots = [&](const CycloNum& la, const CycloNum& lb, int m) -> std::optional<std::vector<CycloNum>> {
    CycloNum r = (lb / la).canonical();
    auto ord = detail::root_of_unity_order(r, bound);
    if (!ord) return std::nullopt;
    return detail::roots_of(r, *ord, m);
  };
  auto c1s = ratio_roots(a.lambdas.at(0), b.lambdas.at(0), 3);
  auto c2s = ratio_roots(a.lambdas.at(1), b.lambdas.at(1), a.p);
  if (!c1s || !c2s) return false;
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> coef(-50, 50);
  for (const auto& c1 : *c1s)
    for (const auto& c2 : *c2s) {
      int n = std::lcm(detail::matrix_conductor(a.J, detail::matrix_conductor(a.R)),
                       detail::matrix_conductor(b.J, detail::matrix_conductor(b.R)));
      n = std::lcm(n, std::lcm(c1.conductor(), c2.conductor()));
      const KMatrix Ja = embed_matrix(a.J, n), Ra = embed_matrix(a.R, n);
      const KMatrix Jb = embed_matrix(b.J, n), Rb = embed_matrix(b.R, n);
      // necessary: traces of a few words scale by the right powers of c1, c2
      bool traces = true;
      for (auto [i, j] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 1}}) {
        KMatrix wa = Ja.pow(static_cast<unsigned>(i)) * Ra.pow(static_cast<unsigned>(j));
        KMatrix wb = Jb.pow(static_cast<unsigned>(i)) * Rb.pow(static_cast<unsigned>(j));
        if (wa.trace() != c1.pow(i) * c2.pow(j) * wb.trace()) {
          traces = false;
          break;
        }
      }
      if (!traces) continue;
      // unknown X (row-major); equations X Ja - c1 Jb X = 0, X Ra - c2 Rb X = 0
      KMatrix A(18, 9, CycloNum(Rational(0), n));
      for (std::size_t u = 0; u < 9; ++u) {
        KMatrix X(3, 3, CycloNum(Rational(0), n));
        X(u / 3, u % 3) = CycloNum(Rational(1), n);
        KMatrix e1 = X * Ja - c1 * (Jb * X), e2 = X * Ra - c2 * (Rb * X);
        for (std::size_t i = 0; i < 9; ++i) {
          A(i, u) = e1.data()[i];
          A(9 + i, u) = e2.data()[i];
        }
      }
      auto ker = kernel(A);
      if (ker.empty()) continue;
      const int tries = ker.size() == 1 ? 1 : 12;
      for (int t = 0; t < tries; ++t) {
        KMatrix X(3, 3, CycloNum(Rational(0), n));
        for (std::size_t v = 0; v < ker.size(); ++v) {
          CycloNum w(ker.size() == 1 ? 1 : coef(rng));
          for (std::size_t u = 0; u < 9; ++u) X(u / 3, u % 3) += w * ker[v][u];
        }
        if (!determinant(X).is_zero()) return true;
      }
    }
  return false;
}

struct GaloisOrbits {
  std::vector<int> orbit_of;             ///< orbit id per point
  std::vector<std::vector<int>> orbits;  ///< sorted by smallest member
  int conductor = 1;                     ///< conductor of the acting group
  /// (point, automorphism k) whose image matches no listed point
  std::vector<std::pair<int, int>> closure_violations;
  bool closed() const { return closure_violations.empty(); }
};

/// Orbits of Gal(Q(zeta_N)/Q) (or of the automorphisms sigma_k, k in
/// `subgroup`) acting on the coordinates of the points. An image is matched
/// by equal coordinates, else by projective equivalence with a point of the
/// same case.
inline GaloisOrbits galois_orbits(const std::vector<RepPoint>& pts, const std::vector<int>& subgroup = {}) {
  GaloisOrbits out;
  for (const auto& p : pts) out.conductor = std::lcm(out.conductor, p.field_conductor());
  std::vector<GaloisAut> group;
  if (subgroup.empty()) {
    group = GaloisAut::group(out.conductor);
  } else {
    for (int k : subgroup) group.emplace_back(out.conductor, k);
  }
  std::vector<int> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
    return i;
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (const auto& s : group) {
      if (s.k == 1) continue;
      RepPoint img = galois_image(s, pts[i]);
      int match = -1;
      for (std::size_t j = 0; j < pts.size() && match < 0; ++j)
        if (same_coordinates(img, pts[j])) match = static_cast<int>(j);
      for (std::size_t j = 0; j < pts.size() && match < 0; ++j)
        if (pts[j].gcase == img.gcase && projectively_equivalent(img, pts[j])) match = static_cast<int>(j);
      if (match < 0) {
        out.closure_violations.emplace_back(static_cast<int>(i), s.k);
        continue;
      }
      int a = find(static_cast<int>(i)), b = find(match);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  std::map<int, int> id;
  out.orbit_of.resize(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    int r = find(static_cast<int>(i));
    auto it = id.find(r);
    if (it == id.end()) {
      it = id.emplace(r, static_cast<int>(out.orbits.size())).first;
      out.orbits.emplace_back();
    }
    out.orbit_of[i] = it->second;
    out.orbits[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lifts to the linear group

struct LiftResult {
  bool liftable = false;
  std::optional<CycloNum> kappa, tau;  ///< witness: kappa J, tau R satisfy every relator
  bool search_exhaustive = false;      ///< all candidate scalars were tried
  int bound = 0;                       ///< root of unity order bound used
  /// "liftable", "not liftable within bound" or "not liftable (no root of unity scalars)"
  std::string status;
};

/// Scalars kappa, tau with kappa^{a_w} tau^{b_w} lambda_w = 1 for every
/// relator w. kappa^3 = 1/lambda_1 and tau^p = 1/lambda_2 leave finitely many
/// candidates when lambda_1, lambda_2 are roots of unity of order <= bound.
inline LiftResult lift_check(const RepPoint& pt, const Presentation& pres, int multiplier = 2) {
  LiftResult out;
  int n = pt.field_conductor();
  out.bound = multiplier * std::lcm(std::lcm(3, pres.p), std::lcm(2 * pres.k, n));
  const CycloNum l1 = pt.lambdas.at(0).inverse(), l2 = pt.lambdas.at(1).inverse();
  auto o1 = detail::root_of_unity_order(l1, out.bound);
  auto o2 = detail::root_of_unity_order(l2, out.bound);
  if (!o1 || !o2) {
    out.status = "not liftable within bound";
    return out;
  }
  out.search_exhaustive = true;
  for (const auto& kappa : detail::roots_of(l1, *o1, 3))
    for (const auto& tau : detail::roots_of(l2, *o2, pres.p)) {
      bool ok = true;
      for (std::size_t w = 2; w < pres.relators.size() && ok; ++w) {
        auto [a, b] = pres.relators[w].exponent_sums();
        ok = (kappa.pow(a) * tau.pow(b) * pt.lambdas[w]).is_one();
      }
      if (ok) {
        out.liftable = true;
        out.kappa = kappa;
        out.tau = tau;
        out.status = "liftable";
        return out;
      }
    }
  out.status = "not liftable within bound";
  return out;
}

// ---------------------------------------------------------------------------
// Cusp elements

enum class ElementType { scalar, elliptic, unipotent, other };

inline std::string to_string(ElementType t) {
  switch (t) {
    case ElementType::scalar: return "scalar";
    case ElementType::elliptic: return "elliptic";
    case ElementType::unipotent: return "unipotent";
    case ElementType::other: return "other";
  }
  return "other";
}

struct ElementClass {
  ElementType type = ElementType::other;
  int order = 0;                ///< projective order when elliptic (1 for scalar)
  int jordan_block = 0;         ///< largest Jordan block when unipotent (2 or 3)
  std::vector<CycloNum> charpoly;
};

/// Projective type of a matrix: scalar, elliptic of order m <= bound,
/// unipotent up to a scalar, or other.
inline ElementClass classify_element(const KMatrix& M, int bound) {
  ElementClass out;
  KMatrix m = embed_matrix(M, detail::matrix_conductor(M));
  const int n = detail::matrix_conductor(m);
  out.charpoly = characteristic_polynomial(m);
  for (auto& c : out.charpoly) c = c.canonical();
  if (m.scalar_value()) {
    out.type = ElementType::scalar;
    out.order = 1;
    return out;
  }
  KMatrix acc = m;
  for (int k = 2; k <= bound; ++k) {
    acc = acc * m;
    auto s = acc.scalar_value();
    if (s && !s->is_zero()) {
      out.type = ElementType::elliptic;
      out.order = k;
      return out;
    }
  }
  CycloNum lambda = m.trace() * CycloNum(Rational(1, 3));
  KMatrix N = m - lambda * detail::id3(n);
  KMatrix N2 = N * N;
  if (!lambda.is_zero() && (N2 * N).is_zero()) {
    out.type = ElementType::unipotent;
    out.jordan_block = N2.is_zero() ? 2 : 3;
    return out;
  }
  return out;
}

struct CuspReport {
  ElementClass center;                   ///< (R2 A1)^2
  std::vector<ElementClass> parabolic;   ///< generators of the parabolic subgroup
  int bound = 0;
  bool factors_scalar() const { return center.type == ElementType::scalar; }
  bool factors_elliptic_or_scalar() const {
    return center.type == ElementType::scalar || center.type == ElementType::elliptic;
  }
};

/// Cusp words used when none are supplied: the published ones, which are
/// only given for the (3,6) lattice.
inline std::optional<CuspWords> default_cusp_words(int p, int k) {
  if (p == 3 && k == 6) return cusp_words(3);
  return std::nullopt;
}

/// Classify the image of the centraliser generator and of the parabolic
/// generators. Elliptic orders are searched up to 2 lcm(3, p, 2k).
inline CuspReport cusp_classify(const RepPoint& pt, const CuspWords& cw, int bound = 0) {
  CuspReport out;
  out.bound = bound > 0 ? bound : 2 * std::lcm(std::lcm(3, pt.p), 2 * pt.k);
  const int n = pt.conductor();
  const KMatrix J = embed_matrix(pt.J, n), R = embed_matrix(pt.R, n);
  out.center = classify_element(evaluate_word(cw.center, J, R), out.bound);
  for (const auto& w : cw.parabolic_gens) out.parabolic.push_back(classify_element(evaluate_word(w, J, R), out.bound));
  return out;
}

inline CuspReport cusp_classify(const RepPoint& pt, int bound = 0) { return cusp_classify(pt, cusp_words(pt.p), bound); }

// ---------------------------------------------------------------------------
// Integrality

/// Whether the entries of J and R, as normalised by the family, lie in the
/// ring of integers, and the lcm of the coefficient denominators of R.
struct Integrality {
  bool J = false;
  bool R = false;
  Integer R_denominator = 1;
};

inline Integer coefficient_denominator(const KMatrix& M) {
  Integer d = 1;
  for (const auto& e : M.raw()) {
    CycloNum x = e.canonical();
    for (const auto& c : x.coeffs()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
  }
  return d;
}

inline Integrality integrality(const RepPoint& pt) {
  Integrality out;
  out.J = coefficient_denominator(pt.J) == 1;
  out.R_denominator = coefficient_denominator(pt.R);
  out.R = out.R_denominator == 1;
  return out;
}

// ---------------------------------------------------------------------------

struct ClassifiedRep {
  RepPoint point;
  HermitianForm hermitian;
  Irreducibility irreducibility;
  std::optional<bool> degenerate_configuration;
  int field_conductor = 1;  ///< field of the solution values
  int entry_conductor = 1;  ///< field of the matrix entries as written
  int orbit = -1;
  LiftResult lift;
  Integrality integral;
  std::optional<CuspReport> cusp;  ///< non-compact lattices with cusp words only
};

/// Everything except the Galois orbit, which needs the whole point set.
inline ClassifiedRep classify(const RepPoint& pt, const std::optional<CuspWords>& words) {
  Presentation pres = make_presentation(pt.p, pt.k);
  ClassifiedRep c;
  c.point = pt;
  c.hermitian = hermitian_form(pt);
  c.irreducibility = irreducibility(pt.J, pt.R, pt.p);
  c.degenerate_configuration = degenerate_configuration(pt);
  c.field_conductor = pt.solution_conductor();
  c.entry_conductor = pt.field_conductor();
  c.lift = lift_check(pt, pres);
  c.integral = integrality(pt);
  if (!pres.compact() && words) c.cusp = cusp_classify(pt, *words);
  return c;
}

inline ClassifiedRep classify(const RepPoint& pt) { return classify(pt, default_cusp_words(pt.p, pt.k)); }

inline std::vector<ClassifiedRep> classify_all(const std::vector<RepPoint>& pts) {
  std::vector<ClassifiedRep> out;
  for (const auto& p : pts) out.push_back(classify(p));
  auto orb = galois_orbits(pts);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].orbit = orb.orbit_of[i];
  return out;
}

}  // namespace dmrep
