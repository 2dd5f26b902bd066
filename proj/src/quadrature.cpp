#include "hpm/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "hpm/errors.hpp"
#include "hpm/kernels.hpp"

namespace hpm::quad {

namespace {

using std::numbers::pi;

template <int N>
struct Rule {
  std::array<double, N> x{};
  std::array<double, N> w{};
};

// Newton iteration on P_n from the Tricomi initial guesses.
template <int N>
Rule<N> make_rule() {
  Rule<N> r;
  for (int i = 0; i < (N + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (N + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= N; ++k) {
        double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = N * (z * p1 - p0) / (z * z - 1.0);
      double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= N; ++k) {
      double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = N * (z * p1 - p0) / (z * z - 1.0);
    double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x[i] = -z;
    r.w[i] = w;
    r.x[N - 1 - i] = z;
    r.w[N - 1 - i] = w;
  }
  return r;
}

const Rule<32>& rule32() {
  static const Rule<32> r = make_rule<32>();
  return r;
}
const Rule<16>& rule16() {
  static const Rule<16> r = make_rule<16>();
  return r;
}

struct Panel {
  int segment;
  double a;
  double b;
  cplx value;
  double error;
  bool alive;
  bool at_floor;
};

constexpr int kEvalsPerPanel = 48;

// Integrand on its own coordinate interval, with the initial mesh.
struct Segment {
  Integrand g;
  std::vector<double> mesh;
};

// Adaptive bisection driven by the panel with the largest error.
class Engine {
 public:
  Engine(std::vector<Segment> segments, const QuadratureOptions& opt) : seg_(std::move(segments)), opt_(opt) {}

  QuadratureResult run() {
    for (int k = 0; k < static_cast<int>(seg_.size()); ++k) {
      const auto& mesh = seg_[k].mesh;
      for (std::size_t i = 0; i + 1 < mesh.size(); ++i)
        if (mesh[i + 1] > mesh[i]) push(k, mesh[i], mesh[i + 1]);
    }
    while (true) {
      double target = std::max(opt_.abs_tol, opt_.rel_tol * std::abs(run_value_));
      if (run_error_ <= target) {
        // Confirm against an exact re-sum; the running totals drift.
        resum();
        target = std::max(opt_.abs_tol, opt_.rel_tol * std::abs(run_value_));
        if (run_error_ <= target) return finish(true);
      }
      // Worst panel that can still be improved.
      int worst = -1;
      while (!heap_.empty()) {
        int idx = heap_.top().second;
        heap_.pop();
        if (panels_[idx].alive && !panels_[idx].at_floor) {
          worst = idx;
          break;
        }
      }
      if (worst < 0) return finish(true);  // everything at round-off level
      if (evals_ + 2 * kEvalsPerPanel > opt_.max_evals) {
        QuadratureResult r = finish(false);
        throw ConvergenceError("quadrature: evaluation budget exhausted (estimate " +
                                   std::to_string(r.value.real()) + ", error " +
                                   std::to_string(r.error_estimate) + ")",
                               r.value.real());
      }
      Panel p = panels_[worst];
      panels_[worst].alive = false;
      run_value_ -= p.value;
      run_error_ -= p.error;
      double mid = 0.5 * (p.a + p.b);
      push(p.segment, p.a, mid);
      push(p.segment, mid, p.b);
    }
  }

 private:
  void push(int segment, double a, double b) {
    const Integrand& g = seg_[segment].g;
    const auto& r32 = rule32();
    const auto& r16 = rule16();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::array<double, 32> re32, im32, abs32;
    std::array<double, 16> re16, im16;
    for (int i = 0; i < 32; ++i) {
      cplx v = g(c + h * r32.x[i]);
      re32[i] = v.real();
      im32[i] = v.imag();
      abs32[i] = std::abs(v);
    }
    for (int i = 0; i < 16; ++i) {
      cplx v = g(c + h * r16.x[i]);
      re16[i] = v.real();
      im16[i] = v.imag();
    }
    evals_ += kEvalsPerPanel;
    cplx v32(kernels::dot(r32.w.data(), re32.data(), 32), kernels::dot(r32.w.data(), im32.data(), 32));
    cplx v16(kernels::dot(r16.w.data(), re16.data(), 16), kernels::dot(r16.w.data(), im16.data(), 16));
    v32 *= h;
    v16 *= h;
    double floor = 4.0 * std::numeric_limits<double>::epsilon() * h *
                   kernels::dot(r32.w.data(), abs32.data(), 32);
    double diff = std::abs(v32 - v16);
    Panel p{segment, a, b, v32, std::max(diff, floor), true, false};
    if (!std::isfinite(std::abs(v32)) || !std::isfinite(diff))
      throw DomainError("quadrature: integrand not finite on [" + std::to_string(a) + ", " +
                        std::to_string(b) + "]");
    // A panel is done when its estimate is at round-off level or it can
    // no longer be split in floating point.
    p.at_floor = diff <= floor || (b - a) <= 1e-14 * std::max(std::fabs(a), std::fabs(b));
    panels_.push_back(p);
    run_value_ += p.value;
    run_error_ += p.error;
    heap_.emplace(p.error, static_cast<int>(panels_.size() - 1));
  }

  void resum() {
    run_value_ = 0.0;
    run_error_ = 0.0;
    for (const Panel& p : panels_) {
      if (!p.alive) continue;
      run_value_ += p.value;
      run_error_ += p.error;
    }
  }

  // Ordered, compensated final sum so results do not depend on the
  // refinement order.
  QuadratureResult finish(bool converged) {
    std::vector<const Panel*> live;
    for (const Panel& p : panels_)
      if (p.alive) live.push_back(&p);
    std::sort(live.begin(), live.end(), [](const Panel* x, const Panel* y) {
      return x->segment != y->segment ? x->segment < y->segment : x->a < y->a;
    });
    double sr = 0.0, si = 0.0, cr = 0.0, ci = 0.0, err = 0.0;
    auto add = [](double& s, double& c, double x) {
      double t = s + x;
      c += std::fabs(s) >= std::fabs(x) ? (s - t) + x : (x - t) + s;
      s = t;
    };
    for (const Panel* p : live) {
      add(sr, cr, p->value.real());
      add(si, ci, p->value.imag());
      err += p->error;
    }
    return {cplx(sr + cr, si + ci), err, evals_, converged};
  }

  std::vector<Segment> seg_;
  QuadratureOptions opt_;
  std::vector<Panel> panels_;
  std::priority_queue<std::pair<double, int>> heap_;
  long evals_ = 0;
  // Running totals for the stopping test; the returned value is re-summed.
  cplx run_value_ = 0.0;
  double run_error_ = 0.0;
};

bool is_integer(double p) { return std::isfinite(p) && p == std::nearbyint(p); }

bool needs_grading(double exponent) { return std::isfinite(exponent) && !is_integer(exponent); }

// Points a + (b-a) 4^{-j}, j = levels..1, for a mesh graded toward a.
void graded_points(double a, double b, std::vector<double>& out) {
  for (int j = 8; j >= 1; --j) out.push_back(a + (b - a) * std::pow(0.25, j));
}

// Mesh on [0, pi/4] graded toward 0 when the endpoint behaviour is a
// non-integer power.
std::vector<double> quarter_mesh(double exponent) {
  std::vector<double> m{0.0};
  const double q = pi / 8.0;
  if (needs_grading(exponent)) graded_points(0.0, q, m);
  m.push_back(q);
  m.push_back(2 * q);
  return m;
}

// Below this the cotangent map would overflow x^2; such u contribute
// less than u^{p-1} with p > 1 and are dropped.
constexpr double kTinyAngle = 1e-150;

// [0, inf) as two pieces: x = tan(t) for x <= 1 and x = cot(u) for x >= 1,
// so both ends keep full relative resolution in the panel coordinate.
void add_half_line(std::vector<Segment>& segs, const Integrand& f, double sign, double origin_exponent,
                   double tail_exponent) {
  segs.push_back({[f, sign](double t) {
                    double x = std::tan(t);
                    return f(sign * x) * (1.0 + x * x);
                  },
                  quarter_mesh(origin_exponent)});
  segs.push_back({[f, sign](double u) {
                    if (u < kTinyAngle) return cplx(0.0);
                    double x = 1.0 / std::tan(u);
                    return f(sign * x) * (1.0 + x * x);
                  },
                  quarter_mesh(tail_exponent)});
}

void check_tail(double tail_exponent) {
  if (!(tail_exponent > 1.0))
    throw DomainError("quadrature: tail exponent must exceed 1, got " + std::to_string(tail_exponent));
}

QuadratureOptions from_tol(double tol) {
  QuadratureOptions o;
  o.rel_tol = tol;
  o.abs_tol = tol;
  return o;
}

}  // namespace

GaussRule gauss_legendre(int n) {
  if (n == 32) return {rule32().x, rule32().w};
  if (n == 16) return {rule16().x, rule16().w};
  throw DomainError("gauss_legendre: only 16 and 32 points are tabulated");
}

QuadratureResult integrate_half_line(const Integrand& f, double tail_exponent, const QuadratureOptions& opt) {
  check_tail(tail_exponent);
  std::vector<Segment> segs;
  add_half_line(segs, f, 1.0, opt.origin_exponent, tail_exponent);
  return Engine(std::move(segs), opt).run();
}

QuadratureResult integrate_line(const Integrand& f, double tail_exponent, const QuadratureOptions& opt) {
  check_tail(tail_exponent);
  std::vector<Segment> segs;
  add_half_line(segs, f, -1.0, opt.origin_exponent, tail_exponent);
  add_half_line(segs, f, 1.0, opt.origin_exponent, tail_exponent);
  return Engine(std::move(segs), opt).run();
}

QuadratureResult integrate_half_line(const Integrand& f, double tail_exponent, double tol) {
  return integrate_half_line(f, tail_exponent, from_tol(tol));
}

QuadratureResult integrate_line(const Integrand& f, double tail_exponent, double tol) {
  return integrate_line(f, tail_exponent, from_tol(tol));
}

QuadratureResult integrate_interval(const Integrand& f, double a, double b, const QuadratureOptions& opt,
                                    std::span<const double> breakpoints) {
  if (!(b > a)) throw DomainError("integrate_interval: need a < b");
  std::vector<double> mesh{a};
  double first = b;
  for (double p : breakpoints)
    if (p > a && p < b) first = std::min(first, p);
  if (needs_grading(opt.origin_exponent)) graded_points(a, first, mesh);
  for (double p : breakpoints)
    if (p > a && p < b) mesh.push_back(p);
  mesh.push_back(b);
  std::sort(mesh.begin(), mesh.end());
  mesh.erase(std::unique(mesh.begin(), mesh.end()), mesh.end());
  std::vector<Segment> segs;
  segs.push_back({f, std::move(mesh)});
  return Engine(std::move(segs), opt).run();
}

}  // namespace hpm::quad
