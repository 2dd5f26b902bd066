#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "hpm/double_double.hpp"
#include "hpm/errors.hpp"
#include "hpm/moments.hpp"
#include "hpm/specfun.hpp"

namespace hpm::moments {

namespace {

constexpr int kIllConditionedDegree = 60;

void require_real(const EnsembleParams& params) {
  if (!params.is_real() || !(params.re_s() > 0.0)) throw DomainError("J polynomial needs real s > 0");
}

// J(k) and dJ/dk from the closed form, up to the constant prefactor.
specfun::HahnValue j_shape(const EnsembleParams& params, cplx k) {
  const cplx b = params.s() + 0.5;
  return specfun::hahn_3f2({1.0, b, 1.0, b, params.n() - 1}, k + 2.0);
}

// Left-hand side of the difference equation at k for a polynomial p.
// With magnitude set, returns the sum of the absolute values of the three terms instead.
template <class P>
double difference_operator(const EnsembleParams& params, const P& p, double k, bool magnitude = false) {
  const double s = params.re_s(), n = params.n();
  const double t1 = (2.0 * k + 4.0) * (2.0 * s + 2.0 * k + 3.0) * p(k + 1.0);
  const double t2 = 2.0 * k * (2.0 * k + 1.0 - 2.0 * s) * p(k - 1.0);
  const double t3 = -2.0 * (2.0 * n * (n + 2.0 * s) + (2.0 * k + 2.0) * (2.0 * k + 2.0)) * p(k);
  return magnitude ? std::abs(t1) + std::abs(t2) + std::abs(t3) : t1 + t2 + t3;
}

// Chebyshev basis in t = (k - centre) / half on I* = [1, 1 + 2N].
struct Basis {
  double centre, half;
  explicit Basis(int n) : centre(1.0 + n), half(n) {}
  double t(double k) const { return (k - centre) / half; }
  double operator()(int j, double k) const {
    const double x = t(k);
    double t0 = 1.0, t1 = x;
    if (j == 0) return t0;
    for (int i = 1; i < j; ++i) {
      const double t2 = 2.0 * x * t1 - t0;
      t0 = t1;
      t1 = t2;
    }
    return t1;
  }
  std::vector<double> nodes(int count) const {
    std::vector<double> k(count);
    for (int i = 0; i < count; ++i) k[i] = centre + half * std::cos(M_PI * (i + 0.5) / count);
    return k;
  }
};

Eigen::MatrixXd operator_matrix(const EnsembleParams& params, const Basis& basis, const std::vector<double>& nodes,
                                int columns, bool magnitude = false) {
  Eigen::MatrixXd a(nodes.size(), columns);
  for (int j = 0; j < columns; ++j)
    for (std::size_t i = 0; i < nodes.size(); ++i)
      a(i, j) = difference_operator(params, [&](double k) { return basis(j, k); }, nodes[i], magnitude);
  return a;
}

// On k = -1 + i x the Hahn polynomial i^{N-1} 3F2 is real; bracket its sign
// changes on a fine grid and bisect. Used when the companion matrix is unreliable.
std::vector<cplx> line_zeros(const EnsembleParams& params) {
  const int deg = params.n() - 1;
  auto g = [&](double x) { return times_i_power(j_shape(params, cplx(-1.0, x)).value, deg).real(); };
  const double reach = 2.0 * params.n() + params.re_s() + 4.0;
  const int cells = 64 * params.n();
  std::vector<cplx> z;
  double x0 = -reach, g0 = g(x0);
  for (int i = 1; i <= cells; ++i) {
    const double x1 = -reach + 2.0 * reach * i / cells, g1 = g(x1);
    if (g0 == 0.0) {
      z.emplace_back(-1.0, x0);
    } else if (g0 * g1 < 0.0) {
      double lo = x0, hi = x1, glo = g0;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi), gm = g(mid);
        if ((gm < 0.0) == (glo < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      z.emplace_back(-1.0, 0.5 * (lo + hi));
    }
    x0 = x1;
    g0 = g1;
  }
  if (int(z.size()) != deg)
    throw ConvergenceError("bracketed " + std::to_string(z.size()) + " of " + std::to_string(deg) + " zeros of J",
                           double(z.size()));
  return z;
}

}  // namespace

cplx JPolynomial::operator()(cplx k) const {
  cplx r = 0.0;
  for (std::size_t i = coefficients.size(); i-- > 0;) r = r * k + coefficients[i];
  return r;
}

JPolynomial j_polynomial(const EnsembleParams& params) {
  require_real(params);
  const int deg = params.n() - 1;
  const double lo = -0.25, hi = params.re_s() - 0.75;
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  const int m = deg + 1;
  std::vector<double> nodes(m);
  std::vector<cplx> diff(m);
  for (int i = 0; i < m; ++i) {
    nodes[i] = mid + half * std::cos(M_PI * (i + 0.5) / m);
    diff[i] = j_hahn(params, nodes[i]);
  }
  // Newton divided differences, then expand the Newton form into monomials.
  for (int j = 1; j < m; ++j)
    for (int i = m - 1; i >= j; --i) diff[i] = (diff[i] - diff[i - 1]) / (nodes[i] - nodes[i - j]);
  std::vector<cdd> c(m, cdd(0.0));
  c[0] = cdd(diff[m - 1]);
  int len = 1;
  for (int i = m - 2; i >= 0; --i) {
    // c <- c * (k - nodes[i]) + diff[i]
    const dd xi(nodes[i]);
    for (int j = len; j >= 1; --j) c[j] = c[j - 1] - c[j] * xi;
    c[0] = cdd(diff[i]) - c[0] * xi;
    ++len;
  }
  JPolynomial p;
  p.degree = deg;
  p.coefficients.resize(m);
  for (int i = 0; i < m; ++i) p.coefficients[i] = c[i].to_complex();
  p.ill_conditioned = params.n() > kIllConditionedDegree;
  p.provenance = "interpolated from the closed form at " + std::to_string(m) + " Chebyshev points of [" +
                 std::to_string(lo) + ", " + std::to_string(hi) + "]";
  return p;
}

std::vector<cplx> j_zeros(const EnsembleParams& params) {
  require_real(params);
  const int deg = params.n() - 1;
  if (deg == 0) return {};
  if (params.n() > kIllConditionedDegree) return line_zeros(params);
  std::vector<cplx> z(deg);
  const JPolynomial p = j_polynomial(params);
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  const cplx lead = p.coefficients[deg];
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -p.coefficients[i] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success) return line_zeros(params);
  for (int i = 0; i < deg; ++i) z[i] = es.eigenvalues()(i);

  // Aberth iteration on the closed form.
  double worst = INFINITY;
  for (int iter = 0; iter < 500 && worst > 1e-15; ++iter) {
    worst = 0.0;
    for (int i = 0; i < deg; ++i) {
      const auto h = j_shape(params, z[i]);
      if (h.value == 0.0) continue;
      const cplx ratio = h.value / h.dvalue;
      cplx repel = 0.0;
      for (int j = 0; j < deg; ++j)
        if (j != i) repel += 1.0 / (z[i] - z[j]);
      const cplx w = ratio / (1.0 - ratio * repel);
      z[i] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(z[i])));
    }
  }
  if (!(worst <= 1e-10)) return line_zeros(params);
  std::sort(z.begin(), z.end(), [](cplx a, cplx b) { return a.imag() < b.imag(); });
  return z;
}

UniquenessReport uniqueness_check(const EnsembleParams& params) {
  require_real(params);
  const int n = params.n();
  const Basis basis(n);
  const auto nodes = basis.nodes(n + 2);
  Eigen::MatrixXd a = operator_matrix(params, basis, nodes, n);
  // Scale columns by the size of their terms so cancellation shows up as a small singular value.
  const Eigen::VectorXd colnorm = operator_matrix(params, basis, nodes, n, true).colwise().norm();
  for (int j = 0; j < n; ++j)
    if (colnorm(j) > 0.0) a.col(j) /= colnorm(j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  UniquenessReport r;
  r.singular_values.assign(sv.data(), sv.data() + sv.size());
  // Columns are in units of their term sizes, so a lone column (N = 1) is measured against 1.
  const double cut = 1e-6 * std::max(sv(0), 1.0);
  r.null_dimension = int(std::count_if(r.singular_values.begin(), r.singular_values.end(), [&](double v) { return v <= cut; }));
  r.unique = r.null_dimension == 1;

  // Null vector as a polynomial, compared with J at the nodes after the best scalar fit.
  Eigen::VectorXd v = svd.matrixV().col(n - 1);
  for (int j = 0; j < n; ++j)
    if (colnorm(j) > 0.0) v(j) /= colnorm(j);
  double pj = 0.0, pp = 0.0, jj = 0.0;
  std::vector<double> pv(nodes.size()), jv(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double p = 0.0;
    for (int j = 0; j < n; ++j) p += v(j) * basis(j, nodes[i]);
    pv[i] = p;
    jv[i] = j_hahn(params, nodes[i]).real();
    pj += p * jv[i];
    pp += p * p;
    jj += jv[i] * jv[i];
  }
  const double c = pj / pp;
  double res = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) res += (c * pv[i] - jv[i]) * (c * pv[i] - jv[i]);
  r.match_residual = std::sqrt(res / jj);
  return r;
}

double degree_trial_residual(const EnsembleParams& params, int degree) {
  require_real(params);
  if (degree < 0) throw DomainError("degree must be non-negative");
  const Basis basis(params.n());
  const auto nodes = basis.nodes(degree + 3);
  // Monic in t: t^d + lower Chebyshev terms.
  auto monic = [&](double k) { return std::pow(basis.t(k), degree); };
  Eigen::VectorXd rhs(nodes.size()), mag(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    rhs(i) = -difference_operator(params, monic, nodes[i]);
    mag(i) = difference_operator(params, monic, nodes[i], true);
  }
  if (degree == 0) return rhs.norm() / mag.norm();
  const Eigen::MatrixXd a = operator_matrix(params, basis, nodes, degree);
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(rhs);
  return (a * c - rhs).norm() / mag.norm();
}

}  // namespace hpm::moments
