#include "ellfib/kodaira.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <boost/rational.hpp>
#include <cmath>

#include "ellfib/error.hpp"

namespace ellfib {

namespace {

constexpr double kClusterTol = 1e-7;
constexpr double kOrderTol = 1e-8;
constexpr double kUnitRoundoff = 2.220446049250313e-16;

bool lex_less(cplx a, cplx b) {
  return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
}

ComplexPoly abs_poly(const ComplexPoly& p) {
  std::vector<cplx> c;
  for (const auto& x : p.coeffs()) c.emplace_back(std::abs(x), 0.0);
  return ComplexPoly(std::move(c));
}

// Order of p at u, judging each Taylor coefficient against the same
// coefficient of `scale` expanded at |u|.
int order_against(const ComplexPoly& p, const ComplexPoly& scale, cplx u) {
  if (p.is_zero()) return kInfiniteOrder;
  const ComplexPoly t = p.shifted(u);
  const ComplexPoly s = scale.shifted(std::abs(u));
  for (int k = 0; k <= t.degree(); ++k) {
    const double sk = std::abs(s.coeff(static_cast<std::size_t>(k)));
    if (std::abs(t.coeff(static_cast<std::size_t>(k))) > kOrderTol * sk) return k;
  }
  return t.degree();
}

cplx newton(const ComplexPoly& p, cplx z, int steps) {
  double best = std::abs(p(z));
  for (int it = 0; it < steps; ++it) {
    cplx v, d;
    p.eval_with_derivative(z, v, d);
    if (d == cplx{}) break;
    const cplx next = z - v / d;
    const double r = std::abs(p(next));
    if (!(r < best)) break;
    z = next;
    best = r;
  }
  return z;
}

std::vector<cplx> eigen_roots(const ComplexPoly& p) {
  const int d = p.degree();
  std::vector<cplx> out;
  if (d < 1) return out;
  if (d == 1) {
    out.push_back(-p.coeff(0) / p.coeff(1));
    return out;
  }
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i)
    companion(i, d - 1) = -p.coeff(static_cast<std::size_t>(i)) / p.leading();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::ConvergenceFailure, "companion eigenvalue solver failed");
  for (int i = 0; i < d; ++i) out.push_back(solver.eigenvalues()[i]);
  return out;
}

struct Cluster {
  std::vector<cplx> members;
  cplx center() const {
    cplx s{};
    for (const auto& z : members) s += z;
    return s / static_cast<double>(members.size());
  }
  double radius() const {
    const cplx c = center();
    double r = 0.0;
    for (const auto& z : members) r = std::max(r, std::abs(z - c));
    return r;
  }
};

// An m-fold root perturbed at the level of rounding splits into a ring of
// radius ~ eps^{1/m}; two-point clusters use the fixed tolerance.
double cluster_tolerance(std::size_t m, double scale) {
  if (m <= 2) return kClusterTol * scale;
  return std::max(kClusterTol, 10.0 * std::pow(kUnitRoundoff, 1.0 / static_cast<double>(m))) *
         scale;
}

bool is_multiple_root(const ComplexPoly& p, cplx c, int m) {
  return order_against(p, abs_poly(p), c) >= m;
}

}  // namespace

int KodairaType::euler() const noexcept {
  switch (tag) {
    case KodairaTag::I: return n;
    case KodairaTag::IStar: return n + 6;
    case KodairaTag::II: return 2;
    case KodairaTag::III: return 3;
    case KodairaTag::IV: return 4;
    case KodairaTag::IVStar: return 8;
    case KodairaTag::IIIStar: return 9;
    case KodairaTag::IIStar: return 10;
  }
  return 0;
}

std::string KodairaType::label() const {
  switch (tag) {
    case KodairaTag::I: return "I_" + std::to_string(n);
    case KodairaTag::IStar: return "I*_" + std::to_string(n);
    case KodairaTag::II: return "II";
    case KodairaTag::III: return "III";
    case KodairaTag::IV: return "IV";
    case KodairaTag::IVStar: return "IV*";
    case KodairaTag::IIIStar: return "III*";
    case KodairaTag::IIStar: return "II*";
  }
  return "?";
}

KodairaType KodairaType::parse(const std::string& s) {
  if (s == "II") return {KodairaTag::II, 0};
  if (s == "III") return {KodairaTag::III, 0};
  if (s == "IV") return {KodairaTag::IV, 0};
  if (s == "II*") return {KodairaTag::IIStar, 0};
  if (s == "III*") return {KodairaTag::IIIStar, 0};
  if (s == "IV*") return {KodairaTag::IVStar, 0};
  try {
    if (s.rfind("I*_", 0) == 0) return {KodairaTag::IStar, std::stoi(s.substr(3))};
    if (s.rfind("I_", 0) == 0) {
      const int n = std::stoi(s.substr(2));
      if (n >= 1) return {KodairaTag::I, n};
    }
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidArgument, "unknown Kodaira label '" + s + "'");
}

std::vector<PolynomialRoot> polynomial_roots(const ComplexPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::IdenticallySingular, "polynomial vanishes identically");
  std::vector<Cluster> clusters;
  double max_abs = 0.0;
  for (cplx z : eigen_roots(p)) {
    z = newton(p, z, 8);
    clusters.push_back({{z}});
    max_abs = std::max(max_abs, std::abs(z));
  }
  const double scale = 1.0 + max_abs;

  // Grow a cluster around each remaining candidate: the largest set of its
  // nearest neighbours whose spread fits the tolerance for that size and
  // whose polished center is a root of that order.
  std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
    return lex_less(a.members.front(), b.members.front());
  });
  std::vector<cplx> pending;
  for (const auto& c : clusters) pending.push_back(c.members.front());
  clusters.clear();
  while (!pending.empty()) {
    const cplx seed = pending.front();
    std::vector<std::size_t> order(pending.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(pending[a] - seed) < std::abs(pending[b] - seed);
    });
    std::size_t take = 1;
    for (std::size_t m = pending.size(); m >= 2; --m) {
      Cluster c;
      for (std::size_t k = 0; k < m; ++k) c.members.push_back(pending[order[k]]);
      if (c.radius() > cluster_tolerance(m, scale)) continue;
      ComplexPoly dm = p;
      for (std::size_t k = 1; k < m; ++k) dm = dm.derivative();
      if (m == 2 || is_multiple_root(p, newton(dm, c.center(), 8), static_cast<int>(m))) {
        take = m;
        break;
      }
    }
    Cluster c;
    std::vector<bool> used(pending.size(), false);
    for (std::size_t k = 0; k < take; ++k) {
      c.members.push_back(pending[order[k]]);
      used[order[k]] = true;
    }
    clusters.push_back(std::move(c));
    std::vector<cplx> rest;
    for (std::size_t i = 0; i < pending.size(); ++i)
      if (!used[i]) rest.push_back(pending[i]);
    pending.swap(rest);
  }

  std::vector<PolynomialRoot> roots;
  for (const auto& c : clusters) {
    const int m = static_cast<int>(c.members.size());
    ComplexPoly dm = p;
    for (int k = 1; k < m; ++k) dm = dm.derivative();
    roots.push_back({m == 1 ? c.members.front() : newton(dm, c.center(), 8), m});
  }
  std::sort(roots.begin(), roots.end(),
            [](const PolynomialRoot& a, const PolynomialRoot& b) { return lex_less(a.root, b.root); });
  return roots;
}

std::vector<PolynomialRoot> find_singular_fibers(const CurveFamily& family) {
  const ComplexPoly delta = discriminant_poly(family.g2, family.g3);
  if (delta.is_zero())
    throw Error(ErrorCode::IdenticallySingular,
                "family '" + family.name + "': discriminant vanishes identically");
  return polynomial_roots(delta);
}

int vanishing_order(const ComplexPoly& p, cplx u) { return order_against(p, abs_poly(p), u); }

KodairaType kodaira_from_orders(int a, int b, int d) {
  if (d == 0) throw Error(ErrorCode::NotSingular, "discriminant does not vanish here");
  if (a >= 4 && b >= 6)
    throw Error(ErrorCode::NonMinimal, "ord g2 >= 4 and ord g3 >= 6: rescale the family");
  if (a == 0 || b == 0) return {KodairaTag::I, d};
  if (b == 1) return {KodairaTag::II, 0};
  if (a == 1) return {KodairaTag::III, 0};
  if (b == 2) return {KodairaTag::IV, 0};
  if (a == 2 && b == 3) return {KodairaTag::IStar, d - 6};
  if (b == 3 || a == 2) return {KodairaTag::IStar, 0};
  if (b == 4) return {KodairaTag::IVStar, 0};
  if (a == 3) return {KodairaTag::IIIStar, 0};
  return {KodairaTag::IIStar, 0};
}

FiberReport classify_fiber(const CurveFamily& family, FiberLocation where) {
  FiberReport r;
  r.location = where;
  if (where.at_infinity) {
    const VChart v = to_v_chart(family);
    auto ord = [](const ComplexPoly& p) { return p.is_zero() ? kInfiniteOrder : p.lowest_order(); };
    r.ord_g2 = ord(v.g2);
    r.ord_g3 = ord(v.g3);
    r.ord_delta = ord(v.delta);
  } else {
    const ComplexPoly a2 = abs_poly(family.g2), a3 = abs_poly(family.g3);
    r.ord_g2 = order_against(family.g2, a2, where.u);
    r.ord_g3 = order_against(family.g3, a3, where.u);
    r.ord_delta = order_against(discriminant_poly(family.g2, family.g3),
                                a2 * a2 * a2 + 27.0 * (a3 * a3), where.u);
  }
  if (r.ord_delta == kInfiniteOrder)
    throw Error(ErrorCode::IdenticallySingular, "discriminant vanishes identically");
  r.kodaira = kodaira_from_orders(r.ord_g2, r.ord_g3, r.ord_delta);
  r.euler = r.kodaira.euler();
  r.is_surface_singularity = !(r.kodaira == KodairaType{KodairaTag::I, 1});
  return r;
}

std::vector<Table1Row> table1_expected(int nf) {
  using K = KodairaType;
  const K i1{KodairaTag::I, 1}, i2{KodairaTag::I, 2}, i3{KodairaTag::I, 3}, i4{KodairaTag::I, 4};
  const K inf{KodairaTag::IStar, 4 - nf};
  auto rep = [](K k, int count) { return std::vector<K>(static_cast<std::size_t>(count), k); };
  auto cat = [](std::vector<K> a, const std::vector<K>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    return a;
  };
  std::vector<Table1Row> rows;
  switch (nf) {
    case 4:
      rows = {{inf, rep(i1, 6), "-"},
              {inf, cat({i2}, rep(i1, 4)), "m_3=m_4"},
              {inf, cat({i3}, rep(i1, 3)), "m_2 = m_3 = m_4"},
              {inf, cat(rep(i2, 2), rep(i1, 2)), "m_3=m_4=0"},
              {inf, cat({i4}, rep(i1, 2)), "m_2 = m_3 = m_4 =0"},
              {inf, rep(i2, 3), "m_1 = m_2,  m_3 = m_4 =0"},
              {inf, {K{KodairaTag::IStar, 0}}, "m_1 = m_2 = m_3 = m_4 = 0"}};
      break;
    case 3:
      rows = {{inf, rep(i1, 5), "-"},
              {inf, cat({i2}, rep(i1, 3)), "m_2=m_3"},
              {inf, cat({i3}, rep(i1, 2)), "m_1 = m_2 = m_3"},
              {inf, cat(rep(i2, 2), {i1}), "m_3=m_4=0"},
              {inf, cat({i4}, {i1}), "m_1 = m_2 = m_3 = 0"}};
      break;
    case 2:
      rows = {{inf, rep(i1, 4), "-"},
              {inf, cat({i2}, rep(i1, 2)), "m_1 = m_2"},
              {inf, rep(i2, 2), "m_1 = m_2 = 0"}};
      break;
    case 1: rows = {{inf, rep(i1, 3), "-"}}; break;
    case 0: rows = {{inf, rep(i1, 2), "-"}}; break;
    default: throw Error(ErrorCode::BadNf, "nf must be in 0..4, got " + std::to_string(nf));
  }
  return rows;
}

SurfaceReport surface_report(const CurveFamily& family) {
  validate_family(family);
  SurfaceReport s;
  for (const auto& root : find_singular_fibers(family))
    s.fibers.push_back(classify_fiber(family, FiberLocation::finite(root.root)));
  s.fibers.push_back(classify_fiber(family, FiberLocation::infinity()));

  for (const auto& f : s.fibers) s.total_euler += f.euler;
  if (s.total_euler != 12)
    throw Error(ErrorCode::EulerMismatch,
                "Euler numbers add to " + std::to_string(s.total_euler) + ", expected 12");

  using Q = boost::rational<long long>;
  const int e_inf = s.fibers.back().euler;
  const Q zbar = Q(-2, 3) * Q(s.total_euler);
  const Q z = zbar - Q(2 - e_inf);
  if (zbar.denominator() != 1 || z.denominator() != 1)
    throw Error(ErrorCode::EulerMismatch, "signature is not an integer");
  s.sign_zbar = static_cast<int>(zbar.numerator());
  s.sign_z = static_cast<int>(z.numerator());
  return s;
}

}  // namespace ellfib
