#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <string>

#include "hpm/density.hpp"
#include "hpm/errors.hpp"
#include "hpm/moments.hpp"
#include "hpm/sampler.hpp"
#include "hpm/specfun.hpp"
#include "output.hpp"

namespace hpm::cli {

namespace {

using nlohmann::json;
namespace mo = hpm::moments;

json cjson(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string cell(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

// ---------------------------------------------------------------- moment

struct MomentOpts {
  std::string s;
  int n = 0;
  std::vector<std::string> k{"0"};
  std::string method = "hahn";
  double tol = 1e-10;
  double check_tol = 1e-8;
  std::string format = "csv";
  std::string out = "-";
  int threads = 0;
};

struct RouteRow {
  cplx k;
  std::string method;
  cplx q, j;
  double err = NAN;
  std::string status = "ok";
  bool failed = false;
  double discrepancy = NAN;
};

bool applicable(const EnsembleParams& p, cplx k, mo::Route r) {
  switch (r) {
    case mo::Route::hahn:
    case mo::Route::termwise: return p.is_real();
    case mo::Route::quadrature: return mo::in_strip(p, k);
    case mo::Route::byparts: return p.is_real() && mo::in_strip(p, k);
    case mo::Route::recurrence:
      return p.is_real() && k.imag() == 0.0 && k.real() >= 0.0 && k.real() == std::nearbyint(k.real());
  }
  return false;
}

RouteRow evaluate_route(const EnsembleParams& p, cplx k, mo::Route r, double tol) {
  RouteRow row;
  row.k = k;
  row.method = mo::route_name(r);
  try {
    if (r == mo::Route::quadrature) {
      const auto res = mo::q_quadrature(p, k, tol);
      row.q = res.value;
      row.err = res.error_estimate;
    } else if (r == mo::Route::byparts) {
      row.q = mo::q_byparts(p, k, mo::ByPartsMode::quadrature, tol);
    } else {
      row.q = mo::q_value(p, k, r);
    }
    const cplx gk = specfun::log_gamma(k + 0.5) + specfun::log_gamma(p.s() - k - 0.5);
    row.j = row.q / std::exp(gk);
    if (r == mo::Route::hahn) row.j = mo::j_hahn(p, k);
  } catch (const hpm::Error& e) {
    row.status = cell(std::string("error: ") + e.what());
    row.failed = true;
  }
  return row;
}

int run_moment(const MomentOpts& o) {
  Manifest man;
  man.command = "moment";
  man.params = {{"s", o.s}, {"N", o.n}, {"k", o.k}, {"method", o.method}, {"format", o.format}};
  man.tolerances = {{"quadrature", o.tol}, {"discrepancy", o.check_tol}};
  const EnsembleParams p(parse_complex(o.s), o.n);
  std::vector<cplx> ks;
  for (const auto& t : o.k) ks.push_back(parse_complex(t));

  const bool all = o.method == "all";
  std::vector<mo::Route> routes;
  if (all) {
    routes = {mo::Route::hahn, mo::Route::quadrature, mo::Route::byparts, mo::Route::termwise, mo::Route::recurrence};
  } else {
    for (auto r : {mo::Route::hahn, mo::Route::quadrature, mo::Route::byparts, mo::Route::termwise,
                   mo::Route::recurrence})
      if (mo::route_name(r) == o.method) routes.push_back(r);
  }

  std::vector<std::vector<RouteRow>> results(ks.size());
  parallel_for(int(ks.size()), o.threads, [&](int i) {
    for (auto r : routes) {
      if (all && !applicable(p, ks[i], r)) {
        RouteRow row;
        row.k = ks[i];
        row.method = mo::route_name(r);
        row.q = row.j = NAN;
        row.status = "n/a";
        results[i].push_back(row);
        continue;
      }
      results[i].push_back(evaluate_route(p, ks[i], r, o.tol));
    }
    if (all) {
      double worst = 0.0;
      const RouteRow* ref = nullptr;
      for (const auto& row : results[i])
        if (!row.failed && row.status == "ok") {
          if (!ref) ref = &row;
          else worst = std::max(worst, std::abs(row.q - ref->q) / std::max(1e-300, std::abs(ref->q)));
        }
      for (auto& row : results[i]) {
        row.discrepancy = worst;
        if (row.status == "ok" && worst > o.check_tol) {
          row.status = "discrepant";
          row.failed = true;
        }
      }
    }
  });

  bool failed = false;
  std::ostringstream os;
  if (o.format == "json") {
    json rows = json::array();
    for (const auto& per_k : results)
      for (const auto& r : per_k) {
        json j = {{"s", cjson(p.s())}, {"N", o.n},       {"k", cjson(r.k)}, {"method", r.method},
                  {"Q", cjson(r.q)},   {"J", cjson(r.j)}, {"status", r.status}};
        j["err_est"] = std::isnan(r.err) ? json(nullptr) : json(r.err);
        if (all) j["discrepancy"] = r.discrepancy;
        rows.push_back(j);
        failed |= r.failed;
      }
    os << json{{"rows", rows}, {"manifest", man.to_json()}}.dump(2) << '\n';
  } else {
    std::vector<std::string> cols = {"s_re", "s_im", "N", "k_re", "k_im", "method", "Q_re", "Q_im",
                                     "J_re", "J_im", "err_est", "status"};
    if (all) cols.push_back("discrepancy");
    Csv csv(cols);
    for (const auto& per_k : results)
      for (const auto& r : per_k) {
        std::vector<std::string> row = {num(p.re_s()),   num(p.im_s()),   std::to_string(o.n), num(r.k.real()),
                                        num(r.k.imag()), r.method,        num(r.q.real()),     num(r.q.imag()),
                                        num(r.j.real()), num(r.j.imag()), std::isnan(r.err) ? "" : num(r.err),
                                        r.status};
        if (all) row.push_back(num(r.discrepancy));
        csv.add(row);
        failed |= r.failed;
      }
    csv.write(os);
  }
  emit(o.out, os.str(), man);
  return failed ? 1 : 0;
}

// ---------------------------------------------------------------- density

struct DensityOpts {
  std::string s;
  int n = 0;
  double xmin = -10.0, xmax = 10.0;
  int points = 201;
  bool scaled = false, limit = false, ode = false;
  double tol = 1e-7;
  double perturb = 0.0;
  std::string out = "-";
  int threads = 0;
};

int run_density(const DensityOpts& o) {
  if (o.points <= 0) throw UsageError("--points must be positive (empty grid)");
  if (!(o.xmax >= o.xmin)) throw UsageError("--xmax must not be below --xmin");
  Manifest man;
  man.command = "density";
  man.params = {{"s", o.s},          {"N", o.n},          {"xmin", o.xmin}, {"xmax", o.xmax}, {"points", o.points},
                {"scaled", o.scaled}, {"limit", o.limit}, {"ode_residual", o.ode}, {"perturb", o.perturb}};
  man.tolerances = {{"ode_residual", o.tol}};
  const EnsembleParams p(parse_complex(o.s), o.n);
  if (o.limit && (!p.is_real() || !(p.re_s() > 0.5))) throw UsageError("--limit needs real s > 1/2");

  std::vector<std::string> cols = {"x", "rho"};
  if (o.scaled) cols.push_back("rho_scaled");
  if (o.limit) cols.push_back("rho_limit");
  if (o.ode) cols.push_back("ode_residual");
  std::vector<std::vector<std::string>> rows(o.points);
  std::vector<char> bad(o.points, 0);
  parallel_for(o.points, o.threads, [&](int i) {
    const double x = o.points == 1 ? o.xmin : o.xmin + (o.xmax - o.xmin) * i / (o.points - 1);
    auto& r = rows[i];
    r = {num(x), num(density::rho(p, x).rho)};
    if (o.scaled) r.push_back(num(density::rho_scaled(p, x)));
    if (o.limit) r.push_back(num(x == 0.0 ? INFINITY : density::rho_limit(p.re_s(), std::abs(x))));
    if (o.ode) {
      const double res = density::ode3_residual(p, x, o.perturb);
      r.push_back(num(res));
      bad[i] = !(res <= o.tol);
    }
  });
  Csv csv(cols);
  for (auto& r : rows) csv.add(std::move(r));
  std::ostringstream os;
  csv.write(os);
  emit(o.out, os.str(), man);
  return std::any_of(bad.begin(), bad.end(), [](char b) { return b != 0; }) ? 1 : 0;
}

// ---------------------------------------------------------------- verify

struct VerifyOpts {
  std::string suite = "all";
  std::vector<std::string> s;
  std::vector<int> n;
  double perturb = 0.0;
  std::string out = "-";
  int threads = 0;
};

struct Check {
  std::string name;
  json params;
  double tolerance;
  std::function<double()> residual;
  bool lower_bound = false;  // pass when residual > tolerance
  json extra;
};

std::vector<Check> build_checks(const VerifyOpts& o) {
  const bool any_grid = !o.s.empty() || !o.n.empty();
  std::vector<cplx> s_list;
  for (const auto& t : o.s) s_list.push_back(parse_complex(t));
  if (s_list.empty()) s_list = {1.0, 2.5, 4.0};
  std::vector<int> n_list = o.n.empty() ? std::vector<int>{1, 4, 8} : o.n;
  const double pert = o.perturb;
  auto want = [&](const char* name) { return o.suite == "all" || o.suite == name; };
  std::vector<Check> checks;

  auto grid = [&](auto&& fn) {
    for (cplx s : s_list)
      for (int n : n_list) fn(s, n);
  };
  auto pj = [](cplx s, int n) { return json{{"s", cjson(s)}, {"N", n}}; };

  if (want("ode")) {
    std::vector<cplx> ss = s_list;
    if (!any_grid) ss.push_back(cplx(3.0, -2.0)), ss.push_back(-0.25);
    for (cplx s : ss)
      for (int n : n_list)
        for (double x : {-7.0, -1.3, 0.3, 0.9, 4.0, 25.0}) {
          const EnsembleParams p(s, n);
          json par = pj(s, n);
          par["x"] = x;
          checks.push_back({"ode3", par, 1e-7, [=] { return density::ode3_residual(p, x, pert); }});
          checks.push_back({"diffrho", par, 1e-9, [=] { return density::diffrho_residual(p, x, pert); }});
        }
  }
  if (want("ledoux")) {
    struct T {
      cplx s;
      int n;
      double t, tol;
    };
    for (T c : {T{4.0, 3, 3.5, 1e-7}, T{5.0, 5, 4.0, 1e-7}, T{cplx(4.0, 1.0), 2, 4.0, 1e-6}}) {
      const EnsembleParams p(c.s, c.n);
      json par = pj(c.s, c.n);
      par["t"] = c.t;
      checks.push_back({"ledoux", par, c.tol, [=] { return mo::ledoux_identity_residual(p, c.t, pert); }});
    }
  }
  if (want("recurrences")) {
    grid([&](cplx s, int n) {
      if (s.imag() != 0.0) return;
      const EnsembleParams p(s, n);
      for (cplx k : {cplx(0.3), cplx(1.1, 0.7), cplx(-1.4, -2.0)}) {
        json par = pj(s, n);
        par["k"] = cjson(k);
        checks.push_back({"q_recurrence", par, 1e-9, [=] { return mo::q_recurrence_residual(p, k); }});
        checks.push_back({"j_difference", par, 1e-9, [=] { return mo::j_difference_residual(p, k, pert); }});
      }
    });
    struct G {
      cplx s;
      int n;
      double t, tol;
    };
    for (G c : {G{4.0, 3, 5.5, 1e-7}, G{cplx(3.0, 2.0), 2, 5.0, 1e-6}}) {
      const EnsembleParams p(c.s, c.n);
      json par = pj(c.s, c.n);
      par["t"] = c.t;
      checks.push_back({"general_recurrence", par, c.tol, [=] { return mo::general_recurrence_residual(p, c.t); }});
    }
    const EnsembleParams pt(cplx(3.0, 1.0), 2);
    json par = pj(pt.s(), 2);
    par["m"] = 4;
    checks.push_back({"tilde_recurrence", par, 1e-6, [=] { return mo::tilde_recurrence_residual(pt, 4); }});
  }
  if (want("reflection")) {
    grid([&](cplx s, int n) {
      if (s.imag() != 0.0) return;
      const EnsembleParams p(s, n);
      for (cplx k : {cplx(0.4, 1.3), cplx(-2.7, 0.2), cplx(3.1, -4.0)}) {
        json par = pj(s, n);
        par["k"] = cjson(k);
        checks.push_back({"reflection", par, 1e-10, [=] {
                            const double sign = (n - 1) % 2 == 0 ? 1.0 : -1.0;
                            const cplx a = mo::j_hahn(p, -k - 2.0), b = sign * mo::j_hahn(p, k);
                            return std::abs(a - b) / std::max(1e-300, std::abs(b)) * (1.0 + pert);
                          }});
      }
    });
  }
  if (want("zeros")) {
    std::vector<int> ns = o.n.empty() ? std::vector<int>{6, 12, 30} : o.n;
    std::vector<cplx> ss = o.s.empty() ? std::vector<cplx>{2.0} : s_list;
    for (cplx s : ss)
      for (int n : ns) {
        if (s.imag() != 0.0) continue;
        const EnsembleParams p(s, n);
        for (const cplx& z : mo::j_zeros(p)) {
          json par = pj(s, n);
          par["root"] = cjson(z);
          checks.push_back({"zero_line", par, 1e-8,
                            [=] { return std::abs(z.real() + 1.0) / (1.0 + std::abs(z)) + pert; }});
        }
      }
  }
  if (want("polynomiality")) {
    grid([&](cplx s, int n) {
      if (s.imag() != 0.0) return;
      const EnsembleParams p(s, n);
      for (double h : {0.5, 1.0}) {
        json par = pj(s, n);
        par["spacing"] = h;
        checks.push_back({"nth_difference", par, 1e-9, [=] {
                            cplx d = 0.0;
                            double binom = 1.0, scale = 0.0;
                            for (int j = 0; j <= n; ++j) {
                              const cplx v = mo::j_hahn(p, cplx(-0.7, 0.2) + h * j);
                              d += ((n - j) % 2 == 0 ? binom : -binom) * v;
                              scale = std::max(scale, binom * std::abs(v));
                              binom = binom * (n - j) / (j + 1);
                            }
                            return std::abs(d) / scale + pert;
                          }});
      }
    });
  }
  if (want("uniqueness")) {
    std::vector<std::pair<cplx, int>> pts;
    if (any_grid) grid([&](cplx s, int n) { if (s.imag() == 0.0) pts.emplace_back(s, n); });
    else pts = {{1.0, 4}, {2.5, 10}};
    for (auto [s, n] : pts) {
      const EnsembleParams p(s, n);
      checks.push_back({"null_space", pj(s, n), 1e-8, [=] {
                          const auto r = mo::uniqueness_check(p);
                          return r.unique ? r.match_residual + pert : INFINITY;
                        }});
    }
  }
  if (want("watson")) {
    for (double y : {1.2, 2.0, 3.0}) {
      for (const auto& t : density::limit_moment_terms(y, 2.0)) {
        json par = {{"y", y}, {"s", 2.0}, {"mu", t.mu}, {"nu", t.nu}};
        const double cf = t.closed_form, nv = t.numeric.value.real();
        checks.push_back({"watson_integral", par, 1e-7,
                          [=] { return std::abs(nv - cf) / std::max(1.0, std::abs(cf)) + pert; }});
      }
      checks.push_back({"limit_moment", json{{"y", y}, {"s", 2.0}}, 1e-7, [=] {
                          const double want = density::limit_moment(y, 2.0);
                          return std::abs(density::limit_moment_quadrature(y, 2.0).value.real() - want) / want + pert;
                        }});
    }
  }
  return checks;
}

int run_verify(const VerifyOpts& o) {
  Manifest man;
  man.command = "verify";
  man.params = {{"suite", o.suite}, {"s", o.s}, {"N", o.n}, {"perturb", o.perturb}};
  auto checks = build_checks(o);
  if (checks.empty()) throw UsageError("no checks selected for suite '" + o.suite + "' on this grid");
  std::vector<double> res(checks.size());
  std::vector<std::string> err(checks.size());
  parallel_for(int(checks.size()), o.threads, [&](int i) {
    try {
      res[i] = checks[i].residual();
    } catch (const hpm::Error& e) {
      res[i] = NAN;
      err[i] = e.what();
    }
  });
  json list = json::array();
  bool all_pass = true;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const bool pass = res[i] <= checks[i].tolerance;
    all_pass &= pass;
    json j = {{"name", checks[i].name},
              {"params", checks[i].params},
              {"residual", std::isnan(res[i]) ? json(nullptr) : json(res[i])},
              {"tolerance", checks[i].tolerance},
              {"pass", pass}};
    if (!err[i].empty()) j["error"] = err[i];
    list.push_back(j);
  }
  man.tolerances = {{"per_check", "see checks[].tolerance"}};
  std::ostringstream os;
  os << json{{"suite", o.suite}, {"pass", all_pass}, {"checks", list}, {"manifest", man.to_json()}}.dump(2) << '\n';
  emit(o.out, os.str(), man);
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------- limit

struct LimitOpts {
  double s = 2.0, k = 0.0;
  std::vector<int> n_list{25, 50, 100, 200};
  std::string out = "-";
};

int run_limit(const LimitOpts& o) {
  Manifest man;
  man.command = "limit";
  man.params = {{"s", o.s}, {"k", o.k}, {"N_list", o.n_list}};
  const double lim = mo::large_n_limit(o.k, o.s);
  Csv csv({"N", "Q_over_N_pow", "limit", "abs_err", "err_times_N", "err_ratio_to_previous"});
  double prev = NAN;
  for (int n : o.n_list) {
    if (n < 1) throw UsageError("--N-list entries must be positive");
    const double v = mo::q_hahn(EnsembleParams(o.s, n), o.k).real() / std::pow(double(n), 2.0 * o.k + 2.0);
    const double e = std::abs(v - lim);
    csv.add({std::to_string(n), num(v), num(lim), num(e), num(e * n), std::isnan(prev) ? "" : num(prev / e)});
    prev = e;
  }
  std::ostringstream os;
  csv.write(os);
  emit(o.out, os.str(), man);
  return 0;
}

// ---------------------------------------------------------------- sample

struct SampleOpts {
  std::string s;
  int n = 0;
  std::uint64_t seed = 1;
  long kept = 100000;
  long burnin = 20000;
  long thin = 0;  // 0: one sweep (N steps)
  std::vector<double> k{0.0};
  int chains = 1;
  int threads = 0;
  double z_max = 3.0;
  std::string out;  // chain CSV, optional
  std::string report = "-";
};

int run_sample(const SampleOpts& o) {
  const EnsembleParams p(parse_complex(o.s), o.n);
  sampler::ChainConfig cfg;
  cfg.seed = o.seed;
  cfg.total_kept = o.kept;
  cfg.burn_in = o.burnin;
  cfg.thinning = o.thin > 0 ? o.thin : o.n;
  Manifest man;
  man.command = "sample";
  man.params = {{"s", o.s},          {"N", o.n},         {"kept", o.kept}, {"burnin", o.burnin},
                {"thin", cfg.thinning}, {"k", o.k},      {"chains", o.chains}};
  man.seeds = {o.seed};
  man.tolerances = {{"z_max", o.z_max}};

  const auto chains = sampler::run_chains(p, cfg, o.chains, o.threads);
  json report;
  json rates = json::array(), warnings = json::array();
  for (const auto& c : chains) {
    rates.push_back(c.acceptance_rate);
    for (const auto& w : c.warnings) warnings.push_back(w);
  }
  report["acceptance_rates"] = rates;
  report["warnings"] = warnings;
  report["stream_rule"] = "mt19937_64 seeded by seed_seq{seed lo32, seed hi32, chain index}";
  bool failed = false;
  if (p.is_real()) {
    json est = json::array();
    for (const auto& e : sampler::estimate_q(p, chains, o.k)) {
      const double exact = mo::q_hahn(p, e.k).real();
      const double z = (e.estimate - exact) / e.std_error;
      failed |= !(std::abs(z) <= o.z_max);
      est.push_back({{"k", e.k},
                     {"estimate", e.estimate},
                     {"std_error", e.std_error},
                     {"ess", e.ess},
                     {"samples", e.samples},
                     {"finite_variance", e.finite_variance},
                     {"exact", exact},
                     {"z", z}});
    }
    report["estimates"] = est;
  } else {
    report["estimates"] = json::array();
    report["note"] = "z-scores disabled: s is complex, no closed-form moment to compare against";
  }
  report["manifest"] = man.to_json();

  if (!o.out.empty()) {
    std::vector<std::string> cols = {"chain", "step"};
    for (int j = 1; j <= o.n; ++j) cols.push_back("x" + std::to_string(j));
    Csv csv(cols);
    for (std::size_t c = 0; c < chains.size(); ++c)
      for (std::size_t i = 0; i < chains[c].kept(); ++i) {
        std::vector<std::string> row = {std::to_string(c), std::to_string((i + 1) * cfg.thinning)};
        for (double v : chains[c].row(i)) row.push_back(num(v));
        csv.add(std::move(row));
      }
    std::ostringstream os;
    csv.write(os);
    emit(o.out, os.str(), man);
  }
  emit(o.report, report.dump(2) + "\n", man);
  return failed ? 1 : 0;
}

}  // namespace

std::vector<Command> add_commands(CLI::App& app) {
  std::vector<Command> cmds;

  {
    auto o = std::make_shared<MomentOpts>();
    auto* c = app.add_subcommand("moment", "Moments Q(k; s, N) and J(k) through one or all routes");
    c->add_option("--s", o->s, "s, real or complex like 3+1i")->required();
    c->add_option("--N", o->n, "number of eigenvalues")->required()->check(CLI::PositiveNumber);
    c->add_option("--k", o->k, "moment index, repeatable, complex allowed");
    c->add_option("--method", o->method, "route")
        ->check(CLI::IsMember({"hahn", "quadrature", "byparts", "termwise", "recurrence", "all"}));
    c->add_option("--tol", o->tol, "quadrature tolerance");
    c->add_option("--check-tol", o->check_tol, "max relative discrepancy between routes for --method all");
    c->add_option("--format", o->format)->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--out", o->out, "output file, - for stdout");
    c->add_option("--threads", o->threads, "worker threads (default HPM_THREADS or 1)");
    cmds.push_back({c, [o] { return run_moment(*o); }});
  }
  {
    auto o = std::make_shared<DensityOpts>();
    auto* c = app.add_subcommand("density", "One-point density on a grid");
    c->add_option("--s", o->s)->required();
    c->add_option("--N", o->n)->required()->check(CLI::PositiveNumber);
    c->add_option("--xmin", o->xmin);
    c->add_option("--xmax", o->xmax);
    c->add_option("--points", o->points);
    c->add_flag("--scaled", o->scaled, "add N rho(N x)");
    c->add_flag("--limit", o->limit, "add the large-N limit density");
    c->add_flag("--ode-residual", o->ode, "add the third-order equation residual");
    c->add_option("--tol", o->tol, "residual tolerance for the exit code");
    c->add_option("--perturb", o->perturb, "scale the third-derivative term (self-test)");
    c->add_option("--out", o->out);
    c->add_option("--threads", o->threads);
    cmds.push_back({c, [o] { return run_density(*o); }});
  }
  {
    auto o = std::make_shared<VerifyOpts>();
    auto* c = app.add_subcommand("verify", "Identity residuals as a JSON report");
    c->add_option("--suite", o->suite)
        ->check(CLI::IsMember({"all", "ode", "ledoux", "recurrences", "reflection", "zeros", "polynomiality",
                               "uniqueness", "watson"}));
    c->add_option("--s", o->s, "grid of s values, repeatable");
    c->add_option("--N", o->n, "grid of N values, repeatable");
    c->add_option("--perturb", o->perturb, "perturb the identities (harness self-test)");
    c->add_option("--out", o->out);
    c->add_option("--threads", o->threads);
    cmds.push_back({c, [o] { return run_verify(*o); }});
  }
  {
    auto o = std::make_shared<LimitOpts>();
    auto* c = app.add_subcommand("limit", "Q(k; s, N) / N^{2k+2} against its large-N limit");
    c->add_option("--s", o->s)->required();
    c->add_option("--k", o->k);
    c->add_option("--N-list", o->n_list)->delimiter(',');
    c->add_option("--out", o->out);
    cmds.push_back({c, [o] { return run_limit(*o); }});
  }
  {
    auto o = std::make_shared<SampleOpts>();
    auto* c = app.add_subcommand("sample", "Metropolis chains and Monte Carlo moment estimates");
    c->add_option("--s", o->s)->required();
    c->add_option("--N", o->n)->required()->check(CLI::PositiveNumber);
    c->add_option("--seed", o->seed);
    c->add_option("--kept", o->kept);
    c->add_option("--burnin", o->burnin);
    c->add_option("--thin", o->thin, "steps between kept samples (default N)");
    c->add_option("--k-list", o->k)->delimiter(',');
    c->add_option("--chains", o->chains);
    c->add_option("--threads", o->threads);
    c->add_option("--z-max", o->z_max);
    c->add_option("--out", o->out, "chain CSV (omit to skip)");
    c->add_option("--report", o->report, "estimator JSON, - for stdout");
    cmds.push_back({c, [o] { return run_sample(*o); }});
  }
  return cmds;
}

}  // namespace hpm::cli
