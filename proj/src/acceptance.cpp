// Copyright 2026 The tpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "tpe/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "tpe/effective_models.hpp"
#include "tpe/fixtures.hpp"
#include "tpe/liouville.hpp"
#include "tpe/observables.hpp"

namespace tpe {

namespace {

using fixtures::set_cooperativity;

std::string fmt(double v, int prec = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = std::pow(10.0, lo + (hi - lo) * i / (n - 1));
    return v;
}

// Golden-section search for a maximum of f on [a, b].
double golden_max(const std::function<double(double)>& f, double a, double b, int iters = 30) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

double steady_concurrence(const SystemParams& p) { return concurrence(steady_state(full_liouvillian(p))); }

double projector_population(const StateMatrix& rho, const CVector& ket) {
    const CMatrix q = qubit_state(rho).matrix();
    return (ket.adjoint() * q * ket)(0, 0).real();
}

CVector ket4(double gg, double ge, double eg, double ee) {
    CVector v(4);
    v << gg, ge, eg, ee;
    return v;
}

// First time the population of `ket` reaches (1 - 1/e) of its steady value, starting in |gg,0>.
double efold_time(const SystemParams& p, const CVector& ket) {
    const Superoperator L = full_liouvillian(p);
    const double target = (1.0 - std::exp(-1.0)) * projector_population(steady_state(L), ket);
    const std::vector<double> ts = logspace(-4.0, 4.0, 41);
    const Trajectory traj = evolve(L, StateMatrix::basis_state(L.space(), 0), ts);
    double prev_t = 0.0, prev_v = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double v = projector_population(traj.states[i], ket);
        if (v >= target) {
            if (i == 0) return ts[0];
            const double f = (target - prev_v) / (v - prev_v);
            return std::exp(std::log(prev_t) + f * (std::log(ts[i]) - std::log(prev_t)));
        }
        prev_t = ts[i];
        prev_v = v;
    }
    return std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------

CriterionResult dipole_fixtures(const AcceptanceOptions& opt) {
    CriterionResult r{1, "dipole fixtures"};
    struct Case {
        double r_nm, J, g12;
    };
    const Case cases[] = {{2.5, 9.18e4, 0.999}, {50.0, 10.65, 0.967}, {0.5, 1.15e7, 0.999}};
    double worst = 0.0;
    std::ostringstream m;
    for (const Case& c : cases) {
        DipoleGeometry geom;
        geom.kr12 = kr12_from_separation(c.r_nm);
        DipoleCoupling d = dipole_coupling(geom);
        if (opt.corrupt_gamma12_sign) d.gamma12 = -d.gamma12;
        const double eJ = std::abs(d.J / c.J - 1.0), eg = std::abs(d.gamma12 / c.g12 - 1.0);
        worst = std::max({worst, eJ, eg});
        m << c.r_nm << "nm:(" << fmt(d.J) << "," << fmt(d.gamma12) << ") ";
    }
    r.pass = worst <= 5e-3;
    r.measured = m.str() + "worst rel err " + fmt(worst, 3);
    r.target = "(9.18e4,0.999) (10.65,0.967) (1.15e7,0.999)";
    r.tolerance = "0.5%";
    return r;
}

CriterionResult two_photon_frequency(const AcceptanceOptions&) {
    CriterionResult r{2, "two-photon dressed frequency"};
    const double w = dressed_basis(fixtures::fig8()).Omega_2p;
    r.pass = std::abs(w / 1.74e5 - 1.0) <= 0.01;
    r.measured = "Omega_2p = " + fmt(w, 6);
    r.target = "1.74e5";
    r.tolerance = "1%";
    return r;
}

CriterionResult three_resonances(const AcceptanceOptions&) {
    CriterionResult r{3, "three-resonance structure"};
    SystemParams p = fixtures::fig3();
    const double R = p.R();
    auto conc_at = [&](double x) {
        SystemParams q = p;
        q.Delta = x * R;
        return steady_concurrence(q);
    };
    const int n = 121;
    std::vector<double> xs(n), cs(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = -1.5 + 3.0 * i / (n - 1);
        cs[i] = conc_at(xs[i]);
    }
    std::vector<double> maxima;
    for (int i = 1; i + 1 < n; ++i)
        if (cs[i] > cs[i - 1] && cs[i] >= cs[i + 1]) maxima.push_back(golden_max(conc_at, xs[i - 1], xs[i + 1], 25));
    bool peaks_ok = true;
    std::ostringstream m;
    m << "maxima at Delta/R =";
    for (double x : maxima) m << ' ' << fmt(x, 4);
    for (double t : {-1.0, 0.0, 1.0}) {
        double best = 1e9;
        for (double x : maxima) best = std::min(best, std::abs(x - t));
        if (best > 0.05) peaks_ok = false;
    }
    SystemParams q = p;
    q.Delta = 0.0;
    q.Delta_a = R;
    const double c_plus = steady_concurrence(q);
    q.Delta_a = -R;
    const double c_minus = steady_concurrence(q);
    m << "; C(Delta=0, Delta_a=+R) = " << fmt(c_plus) << ", C(Delta=0, Delta_a=-R) = " << fmt(c_minus);
    r.pass = peaks_ok && c_plus >= 0.9 && c_minus >= 0.9;
    r.measured = m.str();
    r.target = "maxima near {-R, 0, +R}; C >= 0.9 at Delta_a = +-R";
    r.tolerance = "+-0.05R";
    r.detail = std::string("peak positions ") + (peaks_ok ? "ok" : "missed") + "; concurrence threshold " +
               (c_plus >= 0.9 && c_minus >= 0.9 ? "met" : "not met");
    return r;
}

CriterionResult effective_concordance(const AcceptanceOptions&) {
    CriterionResult r{4, "effective-model concordance"};
    const std::vector<double> Cs = logspace(0.0, 5.0, 10);
    const std::vector<double> da = logspace(1.0, 6.0, 10), db = logspace(0.0, 5.0, 10);
    struct Panel {
        const char* name;
        std::function<SystemParams(double, double)> make;
        const std::vector<double>* deltas;
        bool collective;
    };
    const Panel panels[] = {
        {"9a-left", [](double C, double d) { return fixtures::fig9a(C, d, Transition::Antisymmetric); }, &da, false},
        {"9a-right", [](double C, double d) { return fixtures::fig9a(C, d, Transition::Symmetric); }, &da, false},
        {"9b-left", [](double C, double d) { return fixtures::fig9b(C, d, false); }, &db, false},
        {"9b-right", [](double C, double d) { return fixtures::fig9b(C, d, true); }, &db, true},
    };
    double worst_br = 0.0, worst_coll = 0.0;
    int coll_points = 0;
    std::ostringstream m;
    for (const Panel& panel : panels) {
        double w = 0.0;
        for (double C : Cs)
            for (double d : *panel.deltas) {
                const SystemParams p = panel.make(C, d);
                const double cf = steady_concurrence(p);
                const double cb = concurrence(steady_state(bloch_redfield_liouvillian(p)));
                w = std::max(w, std::abs(cf - cb));
                // kappa >> Omega with the default factor of ten.
                if (panel.collective && p.kappa >= 10.0 * p.Omega) {
                    ++coll_points;
                    const double cc = concurrence(steady_state(collective_purcell_liouvillian(p)));
                    worst_coll = std::max(worst_coll, std::abs(cf - cc));
                }
            }
        worst_br = std::max(worst_br, w);
        m << panel.name << " BR " << fmt(w, 3) << "; ";
    }
    m << "collective on " << coll_points << " points " << fmt(worst_coll, 3);
    r.pass = worst_br <= 0.05 && worst_coll <= 0.05;
    r.measured = m.str();
    r.target = "|C_full - C_model| over 10x10 grids";
    r.tolerance = "0.05";
    return r;
}

CriterionResult mechanism1_timescales(const AcceptanceOptions&) {
    CriterionResult r{5, "mechanism I timescales"};
    const std::vector<double> Cs = logspace(1.0, 3.0, 9);
    double worst_a = 0.0, worst_s = 0.0;
    int na = 0, ns = 0;
    std::ostringstream m, d;
    for (double C : Cs) {
        const SystemParams pa = fixtures::fig5(C, Transition::Antisymmetric);
        const MechanismIAnalytics aa = mechanism1_analytics(pa);
        if (aa.antisymmetric_active) {
            const double ratio = (1.0 / liouvillian_gap(full_liouvillian(pa))) / aa.tau_IA;
            worst_a = std::max(worst_a, std::abs(ratio - 1.0));
            ++na;
            d << "A C=" << fmt(C, 3) << " ratio " << fmt(ratio, 3) << "; ";
        }
        const SystemParams ps = fixtures::fig5(C, Transition::Symmetric);
        const MechanismIAnalytics as = mechanism1_analytics(ps);
        if (as.symmetric_active) {
            const double ratio = (1.0 / liouvillian_gap(full_liouvillian(ps))) / as.tau_IS;
            worst_s = std::max(worst_s, std::abs(ratio - 1.0));
            ++ns;
            d << "S C=" << fmt(C, 3) << " ratio " << fmt(ratio, 3) << "; ";
        }
    }
    // kappa = 1e4, the value shared with the Fig. 3 set.
    const double C0 = 400.0;
    const SystemParams pa = fixtures::fig5(C0, Transition::Antisymmetric);
    const SystemParams ps = fixtures::fig5(C0, Transition::Symmetric);
    const double tau_a = 1.0 / liouvillian_gap(full_liouvillian(pa));
    const double tau_s = 1.0 / liouvillian_gap(full_liouvillian(ps));
    const double r_tau = tau_s / tau_a, beta2 = pa.beta() * pa.beta();
    const bool r_ok = r_tau >= 0.5 * beta2 && r_tau <= 2.0 * beta2;
    // Rise time of the symmetric population, for comparison with the slowest mode.
    const double efold = efold_time(ps, plus_state(ps.beta()));
    d << "C=400: 1/gap(S) " << fmt(tau_s, 3) << ", e-fold rise of rho_S " << fmt(efold, 3) << ", tau_IS "
      << fmt(mechanism1_analytics(ps).tau_IS, 3);
    m << "I_A worst " << fmt(100 * worst_a, 3) << "% (" << na << " pts), I_S worst " << fmt(100 * worst_s, 3) << "% ("
      << ns << " pts), r_tau " << fmt(r_tau, 3) << " vs beta^2 " << fmt(beta2, 3);
    r.pass = na > 0 && ns > 0 && worst_a <= 0.25 && worst_s <= 0.25 && r_ok;
    r.measured = m.str();
    r.target = "1/gap = tau_IA, tau_IS; r_tau = beta^2";
    r.tolerance = "25%; factor 2";
    r.detail = d.str();
    return r;
}

CriterionResult mechanism2_analytics_check(const AcceptanceOptions&) {
    CriterionResult r{6, "mechanism II analytics"};
    // kappa = 25 C >= Omega = 1e4 from C = 400 upward.
    const std::vector<double> Cs = logspace(std::log10(400.0), 6.0, 8);
    const std::vector<double> ds = logspace(2.0, 4.0, 8);
    double worst = 0.0;
    int within = 0;
    for (double C : Cs)
        for (double d : ds) {
            const SystemParams p = fixtures::mechanism2_point(C, d);
            const double ratio = liouvillian_gap(full_liouvillian(p)) / mechanism2_analytics(p).Gamma_eff_full;
            worst = std::max(worst, std::abs(ratio - 1.0));
            if (std::abs(ratio - 1.0) <= 0.2) ++within;
        }
    const SystemParams p = fixtures::mechanism2_point(1e4, 1e3);
    const double rho_a = basis_populations(steady_state(full_liouvillian(p)), PopulationBasis::SymmetricAntisymmetric).at("A");
    const double expect = 2.0 * p.Omega * p.Omega / (p.delta * p.delta + 2.0 * p.Omega * p.Omega);
    const double err = std::abs(rho_a / expect - 1.0);
    r.pass = worst <= 0.2 && err <= 0.01;
    r.measured = "gap/Gamma_eff worst dev " + fmt(100 * worst, 3) + "% (" + std::to_string(within) +
                 "/64 within 20%); rho_AA " + fmt(rho_a, 5) + " vs " + fmt(expect, 5);
    r.target = "gap = Gamma_eff_full; rho_AA = 2W^2/(d^2+2W^2)";
    r.tolerance = "20%; 1%";
    return r;
}

CriterionResult waveguide_limit(const AcceptanceOptions&) {
    CriterionResult r{7, "waveguide limit"};
    auto conc = [](double logw) { return concurrence(steady_state(cavity_free_liouvillian(fixtures::waveguide(std::pow(10.0, logw))))); };
    const int n = 61;
    int best = 0;
    std::vector<double> cs(n);
    for (int i = 0; i < n; ++i) {
        cs[i] = conc(5.0 * i / (n - 1));
        if (cs[i] > cs[best]) best = i;
    }
    const double lo = 5.0 * std::max(0, best - 1) / (n - 1), hi = 5.0 * std::min(n - 1, best + 1) / (n - 1);
    const double arg = golden_max(conc, lo, hi);
    const double cmax = std::max(cs[best], conc(arg));
    r.pass = std::abs(cmax - 0.35) <= 0.05;
    r.measured = "C_max = " + fmt(cmax) + " at Omega = " + fmt(std::pow(10.0, arg), 3);
    r.target = "0.35";
    r.tolerance = "+-0.05";
    return r;
}

CriterionResult mechanism3(const AcceptanceOptions&) {
    CriterionResult r{8, "mechanism III"};
    SystemParams p = fixtures::dimer_2p5nm();
    p.Omega = 1e4;
    const double dmax = mechanism3_analytics(p).delta_max;
    auto conc = [&](double logd) {
        SystemParams q = p;
        q.delta = std::pow(10.0, logd);
        return concurrence(steady_state(cavity_free_liouvillian(q)));
    };
    const int n = 81;
    double worst = 0.0;
    int valid = 0, best = 0;
    std::vector<double> ld(n), cs(n);
    for (int i = 0; i < n; ++i) {
        ld[i] = std::log10(dmax) - 2.0 + 4.0 * i / (n - 1);
        SystemParams q = p;
        q.delta = std::pow(10.0, ld[i]);
        const MechanismIIIAnalytics a = mechanism3_analytics(q);
        cs[i] = conc(ld[i]);
        if (cs[i] > cs[best]) best = i;
        if (a.detuning_valid && a.drive_valid) {
            ++valid;
            worst = std::max(worst, std::abs(cs[i] - a.concurrence));
        }
    }
    const double arg = std::pow(10.0, golden_max(conc, ld[std::max(0, best - 1)], ld[std::min(n - 1, best + 1)]));
    const double off = std::abs(arg / dmax - 1.0);
    r.pass = valid > 0 && worst <= 0.02 && off <= 0.1;
    r.measured = "max |C_an - C_num| " + fmt(worst, 3) + " over " + std::to_string(valid) + " pts; argmax " + fmt(arg, 5) +
                 " vs delta_max " + fmt(dmax, 5);
    r.target = "analytic concurrence; delta_max";
    r.tolerance = "0.02; 10%";
    return r;
}

CriterionResult mechanism4(const AcceptanceOptions&) {
    CriterionResult r{9, "mechanism IV metastability"};
    const SystemParams p = fixtures::fig8();
    const Superoperator L = full_liouvillian(p);
    const std::vector<double> ts = logspace(-2.0, 7.0, 73);
    const Trajectory traj = evolve(L, StateMatrix::basis_state(L.space(), 0), ts);
    const double s = 1.0 / std::sqrt(2.0);
    const CVector s2 = ket4(s, 0, 0, s);
    std::vector<double> pop(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) pop[i] = projector_population(traj.states[i], s2);
    const double lo = 0.66 - 0.07, hi = 0.66 + 0.07;
    std::size_t best_a = 0, best_b = 0, a = 0;
    bool in = false;
    for (std::size_t i = 0; i <= ts.size(); ++i) {
        const bool inside = i < ts.size() && pop[i] >= lo && pop[i] <= hi;
        if (inside && !in) a = i;
        if (!inside && in && std::log10(ts[i - 1] / ts[a]) > std::log10(ts[best_b] / ts[best_a])) {
            best_a = a;
            best_b = i - 1;
        }
        in = inside;
    }
    const double decades = std::log10(ts[best_b] / ts[best_a]);
    double mean = 0.0;
    for (std::size_t i = best_a; i <= best_b; ++i) mean += pop[i];
    mean /= static_cast<double>(best_b - best_a + 1);
    const bool decays = best_b + 1 < ts.size() && pop.back() < lo;
    r.pass = decades >= 2.0 && decays;
    r.measured = "plateau " + fmt(mean, 3) + " from t=" + fmt(ts[best_a], 3) + " to " + fmt(ts[best_b], 3) + " (" +
                 fmt(decades, 3) + " decades), final " + fmt(pop.back(), 3) + ", path " +
                 (traj.path == EvolutionPath::Spectral ? "spectral" : "expm");
    r.target = "<S2|rho|S2> plateau 0.66 for >= 2 decades, then decay";
    r.tolerance = "+-0.07";
    return r;
}

CriterionResult decoherence(const AcceptanceOptions&) {
    CriterionResult r{10, "decoherence robustness"};
    const std::vector<double> Cs = logspace(0.0, 5.0, 11);
    std::ostringstream m;
    bool dephasing_ok = true;
    double max_sym = 0.0, max_anti = 0.0;
    for (Transition t : {Transition::Antisymmetric, Transition::Symmetric}) {
        const char* name = t == Transition::Antisymmetric ? "omega_34" : "omega_21";
        double best_c = 0.0, best_C = Cs[0];
        for (double C : Cs) {
            const double c = steady_concurrence(fixtures::fig11(C, t));
            if (c > best_c) {
                best_c = c;
                best_C = C;
            }
        }
        double worst = 0.0;
        for (double gp : {1e1, 1e2, 1e3}) {
            SystemParams p = fixtures::fig11(best_C, t);
            p.Gamma_phi = gp;
            worst = std::max(worst, std::abs(steady_concurrence(p) - best_c));
        }
        if (worst >= 0.02) dephasing_ok = false;
        double with_decay = 0.0;
        for (double C : Cs) {
            SystemParams p = fixtures::fig11(C, t);
            p.Gamma_extra = 1e2;
            with_decay = std::max(with_decay, steady_concurrence(p));
        }
        (t == Transition::Symmetric ? max_sym : max_anti) = with_decay;
        m << name << ": C=" << fmt(best_c, 3) << " at C_coop=" << fmt(best_C, 3) << ", change up to Gamma_phi=1e3 "
          << fmt(worst, 3) << ", max C with Gamma=1e2 " << fmt(with_decay, 3) << "; ";
    }
    const bool decay_ok = max_sym >= 0.5 && max_anti < 0.5;
    r.pass = dephasing_ok && decay_ok;
    r.measured = m.str();
    r.target = "dephasing change < 0.02; symmetric >= 0.5 > antisymmetric at Gamma=1e2";
    r.tolerance = "0.02; 0.5";
    r.detail = std::string("collective dephasing ") + (dephasing_ok ? "ok" : "not ok") + ", extra decay " +
               (decay_ok ? "ok" : "not ok");
    return r;
}

CriterionResult oracle_identities(const AcceptanceOptions&) {
    CriterionResult r{11, "oracle identities"};
    std::ostringstream m;
    bool ok = true;
    const HilbertSpace tls = HilbertSpace::single_qubit();
    CMatrix lower = CMatrix::Zero(2, 2);
    lower(0, 1) = 1.0;
    const Operator sm(tls, lower);
    // Driven two-level system: |<s>| = W sqrt(D) / (D + 2 W^2), D = gamma^2/4 + Delta^2.
    double worst_tls = 0.0;
    for (double W : {0.1, 0.7, 3.0})
        for (double Dl : {0.0, 0.5, -2.0}) {
            const Operator h = Dl * (sm.adjoint() * sm) + W * (sm + sm.adjoint());
            const Superoperator L = build_liouvillian(h, std::vector<Channel>{{"decay", 1.0, sm, sm}});
            const double s = std::abs(steady_state(L).expectation(sm));
            const double D = 0.25 + Dl * Dl;
            worst_tls = std::max(worst_tls, std::abs(s - W * std::sqrt(D) / (D + 2.0 * W * W)));
        }
    ok = ok && worst_tls <= 1e-10;
    const Superoperator undriven = build_liouvillian(Operator::zero(tls), std::vector<Channel>{{"decay", 1.0, sm, sm}});
    const double gap_err = std::abs(liouvillian_gap(undriven) - 0.5);
    ok = ok && gap_err <= 1e-10;

    std::mt19937_64 rng(20261019);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int invariant_failures = 0;
    for (int k = 0; k < 100; ++k) {
        SystemParams p;
        p.J = 100.0 * u(rng);
        p.delta = 100.0 * u(rng);
        p.Delta = 20.0 * (u(rng) - 0.5);
        p.Delta_a = 50.0 * (u(rng) - 0.5);
        p.Omega = 20.0 * u(rng);
        p.gamma12 = 1.8 * (u(rng) - 0.5);
        p.kappa = 1.0 + 100.0 * u(rng);
        p.g = 10.0 * u(rng);
        p.Gamma_extra = u(rng);
        p.gamma_phi = u(rng);
        p.Gamma_phi = u(rng);
        p.n_max = 2;
        const Superoperator L = full_liouvillian(p);
        const StateMatrix rho = steady_state(L);
        const CMatrix& x = rho.matrix();
        const bool good = std::abs(x.trace() - 1.0) <= 1e-10 && (x - x.adjoint()).norm() <= 1e-10 &&
                          rho.min_eigenvalue() >= -1e-8;
        if (!good) ++invariant_failures;
    }
    ok = ok && invariant_failures == 0;

    auto random_qubit = [&] {
        CMatrix a(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) a(i, j) = cplx(u(rng) - 0.5, u(rng) - 0.5);
        CMatrix rho = a * a.adjoint();
        return CMatrix(rho / rho.trace());
    };
    double worst_g2 = 0.0;
    const HilbertSpace two = HilbertSpace::two_qubits();
    for (int k = 0; k < 50; ++k) {
        const CMatrix r1 = random_qubit(), r2 = random_qubit();
        CMatrix prod(4, 4);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) prod.block(2 * i, 2 * j, 2, 2) = r1(i, j) * r2;
        worst_g2 = std::max(worst_g2, std::abs(freq_resolved_g2(StateMatrix(two, prod)) - 1.0));
    }
    ok = ok && worst_g2 <= 1e-10;

    auto random_unitary = [&] {
        CMatrix a(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) a(i, j) = cplx(u(rng) - 0.5, u(rng) - 0.5);
        return CMatrix(Eigen::HouseholderQR<CMatrix>(a).householderQ());
    };
    double worst_lu = 0.0;
    for (int k = 0; k < 50; ++k) {
        // Mixture of a Bell state and a random state, so that C is generically non-zero.
        CMatrix a(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) a(i, j) = cplx(u(rng) - 0.5, u(rng) - 0.5);
        CMatrix rnd = a * a.adjoint();
        rnd /= rnd.trace();
        CVector bell = CVector::Zero(4);
        bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
        const double w = u(rng);
        const CMatrix rho = w * bell * bell.adjoint() + (1.0 - w) * rnd;
        const CMatrix u1 = random_unitary(), u2 = random_unitary();
        CMatrix U(4, 4);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) U.block(2 * i, 2 * j, 2, 2) = u1(i, j) * u2;
        const CMatrix rot = U * rho * U.adjoint();
        worst_lu = std::max(worst_lu, std::abs(concurrence(StateMatrix(two, rho)) -
                                               concurrence(StateMatrix(two, 0.5 * (rot + rot.adjoint())))));
    }
    ok = ok && worst_lu <= 1e-10;

    m << "TLS |<s>| err " << fmt(worst_tls, 2) << ", gap err " << fmt(gap_err, 2) << ", invariant failures "
      << invariant_failures << "/100, product g2 err " << fmt(worst_g2, 2) << ", LU invariance err " << fmt(worst_lu, 2);
    r.pass = ok;
    r.measured = m.str();
    r.target = "exact identities";
    r.tolerance = "1e-10";
    return r;
}

}  // namespace

namespace {

const char* const kTitles[] = {"dipole fixtures",           "two-photon dressed frequency",
                               "three-resonance structure", "effective-model concordance",
                               "mechanism I timescales",    "mechanism II analytics",
                               "waveguide limit",           "mechanism III",
                               "mechanism IV metastability", "decoherence robustness",
                               "oracle identities"};

}  // namespace

std::vector<CriterionResult> validate_paper_fixtures(const AcceptanceOptions& options) {
    using Fn = CriterionResult (*)(const AcceptanceOptions&);
    const Fn criteria[] = {dipole_fixtures,      two_photon_frequency, three_resonances,       effective_concordance,
                           mechanism1_timescales, mechanism2_analytics_check, waveguide_limit, mechanism3,
                           mechanism4,           decoherence,          oracle_identities};
    std::vector<CriterionResult> out;
    for (int i = 0; i < 11; ++i) {
        if (!options.only.empty() && !options.only.count(i + 1)) continue;
        const auto start = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = criteria[i](options);
        } catch (const std::exception& e) {
            r.id = i + 1;
            r.title = kTitles[i];
            r.pass = false;
            r.measured = std::string("exception: ") + e.what();
        }
        r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (options.progress) *options.progress << format_line(r) << std::endl;
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_line(const CriterionResult& r) {
    std::ostringstream s;
    s << "criterion " << r.id << " [" << r.title << "]: " << (r.pass ? "PASS" : "FAIL") << " | measured: " << r.measured
      << " | target: " << r.target << " | tolerance: " << r.tolerance << " | " << fmt(r.wall_time_s, 3) << " s";
    if (!r.detail.empty()) s << " | " << r.detail;
    return s.str();
}

std::string format_table(const std::vector<CriterionResult>& results) {
    std::string out;
    for (const auto& r : results) out += format_line(r) + "\n";
    return out;
}

}  // namespace tpe
