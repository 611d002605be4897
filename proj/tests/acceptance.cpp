// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "modflow/conformal.hpp"
#include "modflow/errors.hpp"
#include "modflow/freefield.hpp"
#include "modflow/modular_flow.hpp"
#include "modflow/nonlocal.hpp"
#include "modflow/psdo.hpp"
#include "modflow/suites.hpp"
#include "modflow/thermal.hpp"
#include "modflow/util.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace modflow;

namespace {

constexpr double kPi = M_PI;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double dist(const FourVector& a, const FourVector& b) { return (a - b).euclidean_norm(); }

double rel_err(const GridFunction& a, const GridFunction& b)
{
    auto d = a;
    d -= b;
    return d.l2_norm() / b.l2_norm();
}

Outcome c1_lie_algebra()
{
    Rng rng(21);
    std::vector<FourVector> probes;
    for (int i = 0; i < 24; ++i)
        probes.push_back(rng.four_vector(-1.5, 1.5));
    auto table = bracket_table(probes);
    double res = 0, coef = 0;
    for (const auto& r : table) {
        res = std::max(res, r.max_residual);
        coef = std::max(coef, r.max_error);
    }
    bool ok = table.size() == 10 && res < 1e-8 && coef < 1e-8;
    return {ok, std::to_string(table.size()) + " relations on 24 probes, fit residual " + num(res) +
                    ", coefficient error " + num(coef) + " (< 1e-8)"};
}

Outcome c2_group_laws()
{
    Rng rng(2);
    const FlowKind kinds[] = {FlowKind::Wedge, FlowKind::ForwardCone, FlowKind::DoubleConeUnit};
    double worst = 0;
    bool inside = true;
    for (FlowKind k : kinds) {
        Region reg = flow_region(k);
        for (int i = 0; i < 10000; ++i) {
            FourVector x = rng.in_region(reg, k == FlowKind::DoubleConeUnit ? 1.0 : 3.0);
            double s1 = rng.uniform(-1.5, 1.5), s2 = rng.uniform(-1.5, 1.5);
            FourVector b = flow_point(k, s1 + s2, x);
            worst = std::max(worst, dist(flow_point(k, s1, flow_point(k, s2, x)), b) / std::max(1.0, b.euclidean_norm()));
            inside = inside && contains(reg, flow_point(k, s1, x));
        }
    }
    double conj = 0;
    for (int i = 0; i < 10000; ++i) {
        FourVector x = rng.in_region(Region::double_cone(), 1.0);
        double s = rng.uniform(-2, 2);
        conj = std::max(conj, dist(flow_point(FlowKind::DoubleConeUnit, s, x),
                                   pseudo_ortho_project(conjugated_boost(s, pseudo_ortho_embed(x)))));
    }
    bool ok = worst < 1e-10 && inside && conj < 1e-10;
    return {ok, "composition " + num(worst) + ", regions " + (inside ? "preserved" : "violated") +
                    ", T41-conjugated boost " + num(conj) + " (< 1e-10, 1e4 samples per flow)"};
}

Outcome c3_generators()
{
    struct Case { FlowKind k; FourVector c; FourVector x; Region r; };
    const Case cases[] = {
        {FlowKind::Wedge, {0.1, 1.0, 0, 0}, {0.2, 0.9, 0.1, -0.1}, Region::right_wedge()},
        {FlowKind::ForwardCone, {1.5, 0.2, 0, 0}, {1.3, 0.3, -0.2, 0.1}, Region::forward_cone()},
        {FlowKind::DoubleConeUnit, {0.1, 0, 0, 0.1}, {0.15, 0.1, -0.05, 0.2}, Region::double_cone()},
    };
    bool ok = true;
    std::string d = "slopes";
    for (const auto& c : cases) {
        auto g = generator_decay(c.k, gaussian_bump(c.c, 0.4, c.r), c.x, 0.1);
        ok = ok && std::abs(g.slope - 2.0) <= 0.2;
        d += std::string(" ") + to_string(c.k) + "=" + num(g.slope);
    }
    return {ok, d + " (2.0 +- 0.2)"};
}

Outcome c4_fredenhagen()
{
    auto rows = fredenhagen_sweep(0.5, {0.5, 0.25, 0.125, 0.0625});
    bool dec = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
        dec = dec && rows[i].sup_discrepancy < rows[i - 1].sup_discrepancy;
    double last = rows.back().sup_discrepancy;
    return {dec && last < 0.05, std::string(dec ? "strictly decreasing" : "not decreasing") +
                                    ", sup discrepancy at lambda = 1/16: " + num(last) + " (< 0.05)"};
}

Outcome c5_symbol_expansion()
{
    bool ok = true;
    double worst = 0;
    for (double m : {0.5, 1.0, 3.0})
        for (int N = 1; N <= 4; ++N) {
            auto r = expansion_remainder_order(m, N, 5 * m, 50 * m);
            double dev = std::abs(r.slope - (1 - 2 * N)) / std::abs(1 - 2 * N);
            worst = std::max(worst, dev);
            ok = ok && dev <= 0.05;
        }
    const double m = 4;
    auto f = GridFunction::line(4096, 64);
    f.fill([](const Coord& x) {
        double g = std::exp(-x[0] * x[0] / 8);
        return cplx(g + g * std::cos(20 * x[0]), 0);
    });
    auto exact = apply_psdo(energy_symbol(m), f);
    double prev = INFINITY;
    bool mono = true;
    for (int N = 1; N <= 5; ++N) {
        double e = rel_err(apply_energy_truncated(f, m, N, true), exact);
        mono = mono && e < prev;
        prev = e;
    }
    return {ok && mono, "worst relative slope deviation " + num(worst) + " (<= 5%), truncated omega " +
                            (mono ? "monotone" : "not monotone") + " in N, error at N=5 " + num(prev)};
}

Outcome c6_anti_locality()
{
    auto bump = [](int n) {
        auto g = GridFunction::line(n, 64);
        g.fill([](const Coord& x) {
            double t = x[0];
            return cplx(std::abs(t) < 1 ? std::exp(-1.0 / (1 - t * t)) : 0.0, 0);
        });
        return g;
    };
    auto inside = [](const Coord& x) { return std::abs(x[0]) < 1; };
    double a = anti_locality_probe(bump(4096), 1.0, inside);
    double b = anti_locality_probe(bump(8192), 1.0, inside);
    double change = std::abs(b / a - 1);
    return {a > 1e-3 && change <= 0.1, "outside L2 fraction " + num(a) + " (> 1e-3), refinement change " +
                                           num(change) + " (<= 10%)"};
}

Outcome c7_borchers_yngvason()
{
    bool ok = true;
    double worst = 0, corr_dev = 0, princ_dev = 0;
    for (double beta : {1.0, 5.0, 20.0}) {
        auto f = by_probe(beta);
        for (int n = 1; n <= 2; ++n) {
            double e = half_line_rel_err(by_generator_formula(n, beta, f), by_generator_oracle(n, beta, f));
            worst = std::max(worst, e);
            ok = ok && e < 1e-4;
            auto rep = fio_symbol_report(n, beta).report;
            for (const auto& c : rep.checks) {
                if (c.id == "correction order")
                    corr_dev = std::max(corr_dev, std::abs(c.measured));
                if (c.id == "principal order")
                    princ_dev = std::max(princ_dev, std::abs(c.measured - 1));
            }
        }
    }
    ok = ok && corr_dev <= 0.2 && princ_dev <= 0.1;
    return {ok, "worst rel. L2 " + num(worst) + " (< 1e-4), correction order |dev| " + num(corr_dev) +
                    " (<= 0.2), principal order |dev| " + num(princ_dev) + " (<= 0.1)"};
}

Outcome c8_yngvason()
{
    auto phi = MomentumTestFunction::gaussian(0.4, -0.3, 0.8, 0.5);
    std::vector<std::array<double, 2>> pts;
    for (double p0 = -1.5; p0 <= 1.5; p0 += 0.5)
        for (double p1 = -1.5; p1 <= 1.5; p1 += 0.5)
            pts.push_back({p0, p1});
    double worst = 0;
    for (double m : {0.5, 1.0, 4.0})
        worst = std::max(worst, resolve_yngvason_constant(phi, pts, 0.3, m).rel_err);
    MomentumTestFunction one{[](double, double) { return cplx(1, 0); }, [](double, double) { return cplx(0, 0); },
                             [](double, double) { return cplx(0, 0); }};
    double order0 = 0;
    for (auto p : pts)
        order0 = std::max(order0, std::abs(yngvason_generator_oracle(one, p[0], p[1], 0.3, 1.0) -
                                           yngvason_mass_term(p[0], p[1], 0.3, 1.0)));
    double at_p1 = 0;
    for (double p0 : {-1.0, 0.3, 0.7})
        at_p1 = std::max(at_p1, std::abs(yngvason_mass_term(p0, 0.0, 0.3, 1.0)));
    bool ok = worst < 1e-5 && order0 < 1e-8 && at_p1 < 1e-12;
    return {ok, "rel. err " + num(worst) + " (< 1e-5), order-0 part = mass term to " + num(order0) +
                    ", |mass term| at p1 = 0: " + num(at_p1) + " (must vanish)"};
}

Outcome c9_kms()
{
    auto rep = kms_boost_check({0, 1, 0, 0}, {0, 1.5, 0.2, 0});
    auto fit = kms_boost_fit({0, 1, 0, 0}, {0, 1.5, 0.2, 0});
    double unruh = 0;
    for (double a : {0.5, 1.0, 3.0})
        unruh = std::max(unruh, std::abs((a / fit.beta) / unruh_temperature(a) - 1));
    return {rep.passed() && unruh <= 0.02,
            "beta " + num(fit.beta) + " vs 2 pi (+-2%), eps and eps/2 " + (rep.passed() ? "agree" : "disagree") +
                ", Unruh T deviation " + num(unruh)};
}

Outcome c10_kernel()
{
    auto gauss = [](double w) {
        return RadialFunction::sample([w](double r) { return std::exp(-r * r / (w * w)); });
    };
    double c = calibrate_f_rest(gauss(1.0), 1.0).constant;
    double worst = 0;
    for (double w : {0.7, 1.0, 2.0})
        for (double m : {0.5, 1.0, 2.0}) {
            auto g = gauss(w);
            worst = std::max(worst, radial_rel_err(g + f_rest_kernel(g, m, c), mass_shift_exact(g, m)));
        }
    bool zero = true;
    for (double v : f_rest_kernel(gauss(1.0), 0.0, c).f)
        zero = zero && v == 0.0;
    return {worst < 1e-3 && zero, "calibrated c = " + num(c) + ", worst rel. L2 " + num(worst) +
                                      " (< 1e-3), m = 0 " + (zero ? "exactly zero" : "nonzero")};
}

Outcome c11_pauli_jordan()
{
    double t0 = 0, leak = 0, kg = 0;
    for (double m : {0.0, 1.0}) {
        for (double r : {0.1, 0.5, 1.0, 3.0})
            t0 = std::max(t0, std::abs(pauli_jordan(m, 0.0, r)));
        leak = std::max(leak, pauli_jordan_causal_leak(m));
        for (auto [t, r] : std::vector<std::pair<double, double>>{{1.0, 0.95}, {1.0, 1.05}, {2.0, 0.5}, {0.3, 1.5}})
            kg = std::max(kg, pauli_jordan_kg_residual(m, t, r));
    }
    return {t0 < 1e-8 && leak < 1e-5 && kg < 1e-4,
            "equal time " + num(t0) + " (< 1e-8), causal leak " + num(leak) + " (< 1e-5), KG residual " + num(kg) +
                " (< 1e-4)"};
}

Outcome c12_temperatures()
{
    bool cone = cone_temperature(1.0, 0.0) == 1 / (2 * kPi);
    double worst = 0;
    for (double a : {0.0, 0.5 * kDiamondSeriesThreshold, kDiamondSeriesThreshold * (1 - 1e-9),
                     kDiamondSeriesThreshold * (1 + 1e-9), 2 * kDiamondSeriesThreshold})
        worst = std::max(worst, std::abs(diamond_temperature(a, 1.0, 0.0) - 1 / kPi));
    bool boundary = false;
    try {
        diamond_temperature(1.0, 1.0, diamond_lifetime(1.0, 1.0));
    } catch (const LifetimeBoundary&) {
        boundary = true;
    }
    bool growth = diamond_temperature(1.0, 1.0, 0.9999 * diamond_lifetime(1.0, 1.0)) > 100 * diamond_temperature(1.0, 1.0, 0);
    return {cone && worst < 1e-8 && boundary && growth,
            std::string("cone T(0) ") + (cone ? "exact" : "inexact") + ", diamond limit deviation " + num(worst) +
                " (< 1e-8), boundary " + (boundary && growth ? "detected" : "missed")};
}

Outcome c13_determinism(double& wall)
{
    auto t0 = std::chrono::steady_clock::now();
    auto run = [] {
        RunConfig cfg;
        std::string all;
        for (const auto& n : suite_names())
            for (const auto& [stem, tab] : run_suite(n, cfg).tables)
                all += stem + "\n" + tab.str();
        return all;
    };
    std::string a = run(), b = run();
    wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 2;
    return {a == b, std::string("two runs of every suite ") + (a == b ? "byte-identical" : "differ") + " (" +
                        std::to_string(a.size()) + " CSV bytes)"};
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    double verify_all_wall = 0;
    const Criterion criteria[] = {
        {"conformal Lie algebra", 1, c1_lie_algebra},
        {"flow group laws and regions", 5, c2_group_laws},
        {"generator vs flow", 10, c3_generators},
        {"Fredenhagen limit", 5, c4_fredenhagen},
        {"symbol expansion", 10, c5_symbol_expansion},
        {"anti-locality", 10, c6_anti_locality},
        {"Borchers-Yngvason generator", 60, c7_borchers_yngvason},
        {"Yngvason generator", 30, c8_yngvason},
        {"KMS detailed balance", 30, c9_kms},
        {"mass-shift kernel", 60, c10_kernel},
        {"Pauli-Jordan", 60, c11_pauli_jordan},
        {"temperatures", 1, c12_temperatures},
        {"determinism", 300, [&] { return c13_determinism(verify_all_wall); }},
    };
    int failed = 0, idx = 0;
    for (const auto& c : criteria) {
        ++idx;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (idx == 13)
            dt = verify_all_wall;
        bool in_time = dt < c.budget_s;
        bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("%s C%02d %s: %s [%.2f s, budget %.0f s%s]\n", pass ? "PASS" : "FAIL", idx, c.name, o.detail.c_str(), dt,
                    c.budget_s, in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    std::printf("%d/13 criteria passed\n", 13 - failed);
    return failed ? 1 : 0;
}
