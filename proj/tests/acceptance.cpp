// Acceptance runner: one PASS/FAIL line per criterion.
// Usage: acceptance [--only NAME]... [--exclude NAME]...

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ddpol/bound_states.hpp"
#include "ddpol/closed_form.hpp"
#include "ddpol/oracle.hpp"
#include "ddpol/units.hpp"

using namespace ddpol;

namespace {

using cd = std::complex<double>;
using clock_type = std::chrono::steady_clock;

double rel(cd x, cd y) { return std::abs(x - y) / std::abs(y); }
ScaledParams fig(double p) { return build_scaled({1.0, 1.0, 0.5}, p); }
DeltaPotential well_of(const ScaledParams& s) { return DeltaPotential::symmetric_double(s.a, s.g_prime); }

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      detail << " [" << why << "]";
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void resonance(Outcome& o) {
  const auto t0 = clock_type::now();
  const auto s = fig(1.5);
  const auto res = resonance_locate(s);
  const double t = seconds_since(t0);
  o.require(res.has_value(), "no resonance");
  if (!res) return;
  const double w1 = 1.0 - *res;
  o.detail << " omega_res=" << fmt(*res) << " omega_1=" << fmt(w1) << " t=" << fmt(t) << "s";
  o.require(std::abs(*res - 0.7529) <= 5e-4, "omega_res");
  const auto odd = solve_odd_kappa(1.5, s.a);
  const double k0 = solve_even_kappa(1.5, s.a);
  const double binding_ratio = (*odd / k0) * (*odd / k0);
  o.require(std::abs(binding_ratio - 0.2471) <= 5e-4, "omega_1 from odd state");
  o.require(std::abs(w1 - 0.2471) <= 5e-4, "omega_1");
  o.require(t < 1.0, "runtime");
}

void h2plus(Outcome& o) {
  const auto t0 = clock_type::now();
  const auto s = build_scaled({1.0, 1.0, 0.37}, 1.22);
  const double cf = alpha_static(s).si().value_m3.real();
  const double box = to_si_volume(alpha_static_sum(s, well_of(s)).total).value_m3.real();
  const double t = seconds_since(t0);
  o.detail << " closed=" << fmt(cf) << " box=" << fmt(box) << " t=" << fmt(t) << "s";
  o.require(std::abs(cf - 4.68e-31) <= 0.01e-31, "closed form");
  o.require(std::abs(box - 4.68e-31) <= 0.01e-31, "box sum");
  o.require(t < 30.0, "runtime");
}

void threshold(Outcome& o) {
  int checked = 0;
  for (double p : {0.5, 1.5}) {
    const auto s = fig(p);
    const auto pole = resonance_locate(s);
    for (double w : linspace(0.01, 0.99, 50)) {
      if (pole && std::abs(w - *pole) < 1e-6) continue;
      const double cf = alpha_closed_form(w, s).value.imag();
      const double qd = alpha_eq6_quadrature(w, s, well_of(s)).value.imag();
      o.require(cf == 0.0 && qd == 0.0, "Im != 0 at p=" + fmt(p) + " w=" + fmt(w));
      checked += 2;
    }
    for (double w : linspace(1.02, 4.0, 50)) {
      if (w <= 1.02 || w >= 4.0) continue;  // open interval
      const double cf = alpha_closed_form(w, s).value.imag();
      const double qd = alpha_eq6_quadrature(w, s, well_of(s)).value.imag();
      o.require(cf > 0.0 && qd > 0.0, "Im <= 0 at p=" + fmt(p) + " w=" + fmt(w));
      checked += 2;
    }
  }
  o.detail << " samples=" << checked;
}

void agreement(Outcome& o) {
  const auto t0 = clock_type::now();
  double worst_q = 0.0, worst_g = 0.0;
  int n = 0;
  for (double p : {0.5, 1.5}) {
    const auto s = fig(p);
    const auto pot = well_of(s);
    const auto pole = resonance_locate(s);
    std::vector<double> ws;
    for (int i = 0; i < 100; ++i) ws.push_back(i < 50 ? 0.01 + 0.97 * i / 49 : 1.02 + 2.98 * (i - 50) / 49);
    for (double w : ws) {
      if (std::abs(w - 1.0) < 0.02) continue;
      if (pole && std::abs(w - *pole) < 0.02) continue;
      const cd cf = alpha_closed_form(w, s).value;
      const cd qd = alpha_eq6_quadrature(w, s, pot).value;
      const cd gr = alpha_grid_inhomogeneous(w, s, pot).value;
      worst_q = std::max(worst_q, rel(qd, cf));
      worst_g = std::max({worst_g, rel(gr, cf), rel(gr, qd)});
      ++n;
    }
  }
  const double t = seconds_since(t0);
  o.detail << " points=" << n << " closed-vs-quadrature=" << fmt(worst_q) << " grid=" << fmt(worst_g)
           << " t=" << fmt(t) << "s";
  o.require(worst_q <= 1e-6, "quadrature");
  o.require(worst_g <= 1e-3, "grid");
  o.require(t < 300.0, "runtime");
}

double a0(double p) { return alpha_static(fig(p)).value.real(); }

void ratio_one(Outcome& o) {
  const double r = a0(1.0) / a0(0.5);
  o.detail << " ratio=" << fmt(r);
  o.require(std::abs(r - 0.20) <= 0.03, "alpha(1)/alpha(0.5)");
}

void ratio_two(Outcome& o) {
  const double r = a0(1.5) / a0(1.0);
  o.detail << " ratio=" << fmt(r);
  o.require(std::abs(r - 0.50) <= 0.07, "alpha(1.5)/alpha(1)");
}

void plateau(Outcome& o) {
  double lo = INFINITY, hi = 0.0;
  for (double p : linspace(1.5, 2.5, 41)) {
    lo = std::min(lo, a0(p));
    hi = std::max(hi, a0(p));
  }
  const double variation = (hi - lo) / hi;
  o.detail << " min=" << fmt(lo) << " max=" << fmt(hi) << " variation=" << fmt(variation);
  o.require(variation < 0.10, "variation over [1.5, 2.5]");
}

void increase(Outcome& o) {
  const auto ps = linspace(2.7, 4.5, 37);
  for (std::size_t i = 1; i < ps.size(); ++i)
    o.require(a0(ps[i]) > a0(ps[i - 1]), "not increasing at p=" + fmt(ps[i]));
  o.detail << " alpha(2.7)=" << fmt(a0(2.7)) << " alpha(4.5)=" << fmt(a0(4.5));
}

void duality(Outcome& o) {
  double worst = 0.0;
  for (double p : linspace(1.05, 4.5, 22)) {
    if (p <= 1.05 || p >= 4.5) continue;  // 20 interior values
    const auto s = fig(p);
    const auto res = resonance_locate(s);
    const double k0 = solve_even_kappa(p, s.a);
    const auto k1 = solve_odd_kappa(p, s.a);
    o.require(res && k1, "missing root at p=" + fmt(p));
    if (!res || !k1) continue;
    const double dual = 1.0 - (*k1 / k0) * (*k1 / k0);
    worst = std::max(worst, std::abs(*res - dual) / dual);
  }
  o.detail << " worst=" << fmt(worst);
  o.require(worst <= 1e-8, "duality");
}

void bound_states(Outcome& o) {
  double worst_grid = 0.0, worst_multi = 0.0;
  for (double p : linspace(0.3, 4.8, 20)) {
    const auto s = fig(p);
    const auto pot = well_of(s);
    const auto grid = grid_bound_kappas(pot);
    std::vector<double> parity{solve_even_kappa(p, s.a)};
    if (auto k1 = solve_odd_kappa(p, s.a)) parity.push_back(*k1);
    o.require(grid.size() == parity.size(), "state count at p=" + fmt(p));
    for (std::size_t i = 0; i < std::min(grid.size(), parity.size()); ++i)
      worst_grid = std::max(worst_grid, std::abs(grid[i] - parity[i]) / parity[i]);
    const auto multi = multi_delta_spectrum(pot);
    o.require(multi.states.size() == parity.size(), "multi count at p=" + fmt(p));
    for (std::size_t i = 0; i < std::min(multi.states.size(), parity.size()); ++i)
      worst_multi = std::max(worst_multi, std::abs(multi.states[i].kappa - parity[i]) / parity[i]);
  }
  o.detail << " grid=" << fmt(worst_grid) << " multi=" << fmt(worst_multi);
  o.require(worst_grid <= 1e-6, "grid");
  o.require(worst_multi <= 1e-10, "multi_delta_spectrum");
}

void single_delta(Outcome& o) {
  using wide = boost::multiprecision::cpp_bin_float_50;
  double worst = 0.0;
  for (double total : {0.3, 0.7, 1.3}) {
    const wide t = total;
    const wide a = 1e-12;
    const wide k0 = even_root<wide>(t * a) / a;
    const wide v = static_polarizability_scaled<wide>(k0, a, t / 2);
    const wide expect = wide(5) / (4 * pow(t, 4));
    worst = std::max(worst, static_cast<double>(abs(v / expect - 1)));
  }
  o.detail << " worst=" << fmt(worst);
  o.require(worst <= 1e-6, "a -> 0 limit");
}

void curves(Outcome& o) {
  const auto s5 = fig(0.5);
  const auto ws = linspace(0.01, 0.98, 98);
  for (std::size_t i = 1; i < ws.size(); ++i)
    o.require(alpha_closed_form(ws[i], s5).value.real() > alpha_closed_form(ws[i - 1], s5).value.real(),
              "p=0.5 not increasing at w=" + fmt(ws[i]));
  o.require(!resonance_locate(s5).has_value(), "p=0.5 has a pole");

  const auto s15 = fig(1.5);
  const auto pole = resonance_locate(s15);
  int flips = 0;
  double prev = alpha_closed_form(ws[0], s15).value.real();
  for (std::size_t i = 1; i < ws.size(); ++i) {
    const double cur = alpha_closed_form(ws[i], s15).value.real();
    if ((cur > 0) != (prev > 0)) ++flips;
    prev = cur;
  }
  o.require(pole.has_value() && flips == 1, "p=1.5 expected a single pole");
  o.detail << " p=1.5 sign changes=" << flips;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> only, exclude;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if ((arg == "--only" || arg == "--exclude") && i + 1 < argc) {
      (arg == "--only" ? only : exclude).insert(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--only NAME]... [--exclude NAME]...\n");
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"1-resonance", resonance},     {"2-h2plus", h2plus},          {"3-threshold", threshold},
      {"4-agreement", agreement},     {"5-ratio-1", ratio_one},      {"5-ratio-2", ratio_two},
      {"5-plateau", plateau},         {"5-increase", increase},      {"6-duality", duality},
      {"7-bound-states", bound_states}, {"8-single-delta", single_delta}, {"9-curves", curves},
  };

  int failed = 0;
  for (const auto& [name, check] : criteria) {
    if (!only.empty() && !only.count(name)) continue;
    if (exclude.count(name)) continue;
    Outcome o;
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    std::printf("%s %s%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
