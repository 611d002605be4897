#include "modflow/suites.hpp"

#include "modflow/conformal.hpp"
#include "modflow/errors.hpp"
#include "modflow/freefield.hpp"
#include "modflow/geometry.hpp"
#include "modflow/modular_flow.hpp"
#include "modflow/nonlocal.hpp"
#include "modflow/psdo.hpp"
#include "modflow/thermal.hpp"
#include "modflow/util.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace modflow {

using nlohmann::json;

namespace {

template <class T>
void read_key(const json& j, const char* key, T& dst)
{
    if (!j.contains(key))
        return;
    try {
        dst = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

} // namespace

void apply_config_json(RunConfig& cfg, const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config must be a JSON object");
    static const char* known[] = {"seed", "threads", "tolerance", "out", "geometry_samples", "conformal_probes",
                                  "flow_samples", "flow_fd_step", "fredenhagen_samples", "psdo_grid", "psdo_box",
                                  "yngvason_grid", "by_betas", "by_n_max", "two_point_eps", "kms_eps", "kms_samples", "kms_window",
                                  "radial_points", "radial_step", "pj_sigma"};
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* name : known)
            ok = ok || k == name;
        if (!ok)
            throw ConfigError("unknown config key '" + k + "'");
    }
    read_key(j, "seed", cfg.seed);
    read_key(j, "threads", cfg.threads);
    if (j.contains("tolerance")) {
        double t = 0;
        read_key(j, "tolerance", t);
        cfg.tolerance = t;
    }
    read_key(j, "out", cfg.out);
    read_key(j, "geometry_samples", cfg.geometry_samples);
    read_key(j, "conformal_probes", cfg.conformal_probes);
    read_key(j, "flow_samples", cfg.flow_samples);
    read_key(j, "flow_fd_step", cfg.flow_fd_step);
    read_key(j, "fredenhagen_samples", cfg.fredenhagen_samples);
    read_key(j, "psdo_grid", cfg.psdo_grid);
    read_key(j, "psdo_box", cfg.psdo_box);
    read_key(j, "yngvason_grid", cfg.yngvason_grid);
    read_key(j, "by_betas", cfg.by_betas);
    read_key(j, "by_n_max", cfg.by_n_max);
    read_key(j, "two_point_eps", cfg.two_point_eps);
    read_key(j, "kms_eps", cfg.kms_eps);
    read_key(j, "kms_samples", cfg.kms_samples);
    read_key(j, "kms_window", cfg.kms_window);
    read_key(j, "radial_points", cfg.radial_points);
    read_key(j, "radial_step", cfg.radial_step);
    read_key(j, "pj_sigma", cfg.pj_sigma);
    validate(cfg);
}

RunConfig load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    RunConfig cfg;
    apply_config_json(cfg, ss.str());
    return cfg;
}

void validate(const RunConfig& c)
{
    auto pos = [](double v, const char* what) {
        if (!(v > 0) || !std::isfinite(v))
            throw ConfigError(std::string(what) + " must be > 0");
    };
    if (c.tolerance)
        pos(*c.tolerance, "tolerance");
    pos(c.geometry_samples, "geometry_samples");
    if (c.conformal_probes < 20)
        throw ConfigError("conformal_probes must be >= 20");
    pos(c.flow_samples, "flow_samples");
    pos(c.flow_fd_step, "flow_fd_step");
    if (c.flow_fd_step > 0.1)
        throw ConfigError("flow_fd_step must be <= 0.1");
    pos(c.fredenhagen_samples, "fredenhagen_samples");
    if (!is_power_of_two(c.psdo_grid) || c.psdo_grid < 256)
        throw ConfigError("psdo_grid must be a power of two >= 256");
    pos(c.psdo_box, "psdo_box");
    if (c.yngvason_grid < 64)
        throw ConfigError("yngvason_grid must be >= 64");
    if (c.by_betas.empty())
        throw ConfigError("by_betas must not be empty");
    for (double b : c.by_betas)
        pos(b, "by_betas entries");
    if (c.by_n_max < 0 || c.by_n_max > 4)
        throw ConfigError("by_n_max must lie in [0, 4]");
    pos(c.two_point_eps, "two_point_eps");
    pos(c.kms_eps, "kms_eps");
    if (!is_power_of_two(c.kms_samples) || c.kms_samples < 1024)
        throw ConfigError("kms_samples must be a power of two >= 1024");
    pos(c.kms_window, "kms_window");
    if (c.radial_points < 64)
        throw ConfigError("radial_points must be >= 64");
    pos(c.radial_step, "radial_step");
    pos(c.pj_sigma, "pj_sigma");
}

std::string to_json(const RunConfig& c)
{
    nlohmann::ordered_json j;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    if (c.tolerance)
        j["tolerance"] = *c.tolerance;
    j["out"] = c.out;
    j["geometry_samples"] = c.geometry_samples;
    j["conformal_probes"] = c.conformal_probes;
    j["flow_samples"] = c.flow_samples;
    j["flow_fd_step"] = c.flow_fd_step;
    j["fredenhagen_samples"] = c.fredenhagen_samples;
    j["psdo_grid"] = c.psdo_grid;
    j["psdo_box"] = c.psdo_box;
    j["yngvason_grid"] = c.yngvason_grid;
    j["by_betas"] = c.by_betas;
    j["by_n_max"] = c.by_n_max;
    j["two_point_eps"] = c.two_point_eps;
    j["kms_eps"] = c.kms_eps;
    j["kms_samples"] = c.kms_samples;
    j["kms_window"] = c.kms_window;
    j["radial_points"] = c.radial_points;
    j["radial_step"] = c.radial_step;
    j["pj_sigma"] = c.pj_sigma;
    return j.dump();
}

// threads and the output path do not affect results, so they stay out of the digest
std::string config_digest(const RunConfig& c)
{
    RunConfig d = c;
    d.threads = 0;
    d.out.clear();
    return digest(to_json(d));
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"geometry", "conformal", "modflow", "psdo",
                                                "nonlocal", "freefield", "thermal"};
    return names;
}

namespace {

constexpr double kPi = M_PI;

double dist(const FourVector& a, const FourVector& b) { return (a - b).euclidean_norm(); }

CsvTable table(std::vector<std::string> header) { CsvTable t; t.header = std::move(header); return t; }

// ---- geometry

void suite_geometry(const RunConfig& cfg, SuiteOutput& out)
{
    auto& rep = out.report;
    rep.near("(x,x) at (1,0,0,0)", minkowski_square({1, 0, 0, 0}), 1.0, 0.0);
    rep.near("(x,x) at (0,1,0,0)", minkowski_square({0, 1, 0, 0}), -1.0, 0.0);
    Rng rng(cfg.seed);
    double sym = 0, bilin = 0, lc = 0;
    bool reflect = true, causal_sym = true;
    for (int i = 0; i < cfg.geometry_samples; ++i) {
        FourVector x = rng.four_vector(-3, 3), y = rng.four_vector(-3, 3), z = rng.four_vector(-3, 3);
        double a = rng.uniform(-2, 2);
        sym = std::max(sym, std::abs(minkowski_inner(x, y) - minkowski_inner(y, x)));
        bilin = std::max(bilin, std::abs(minkowski_inner(a * x + z, y) - a * minkowski_inner(x, y) - minkowski_inner(z, y)) /
                                    (1 + std::abs(minkowski_inner(x, y))));
        lc = std::max(lc, dist(from_lightcone(to_lightcone(x)), x) / std::max(1.0, x.euclidean_norm()));
        reflect = reflect && contains(Region::right_wedge(), x) == contains(Region::left_wedge(), reflect_x1(x));
        causal_sym = causal_sym && causal_relation(x, y) == causal_relation(y, x);
    }
    rep.at_most("inner product symmetric", sym, 1e-12);
    rep.at_most("inner product bilinear", bilin, 1e-12);
    rep.at_most("lightcone round trip", lc, 1e-12);
    rep.exact("reflection maps W_R to W_L", reflect);
    rep.exact("causal relation symmetric", causal_sym);
    rep.exact("boundary points are outside", !contains(Region::right_wedge(), {1, 1, 0, 0}) &&
                                                  !contains(Region::forward_cone(), {1, 1, 0, 0}) &&
                                                  !contains(Region::double_cone(), {0, 1, 0, 0}));

    auto t = table({"region", "samples", "inside_fraction"});
    Rng r2(cfg.seed + 1);
    for (auto [name, reg] : std::vector<std::pair<std::string, Region>>{{"right_wedge", Region::right_wedge()},
                                                                        {"forward_cone", Region::forward_cone()},
                                                                        {"double_cone", Region::double_cone()}}) {
        int in = 0;
        for (int i = 0; i < cfg.geometry_samples; ++i)
            in += contains(reg, r2.four_vector(-1, 1));
        t.add_row({name, std::to_string(cfg.geometry_samples), fmt(double(in) / cfg.geometry_samples)});
    }
    out.tables["geometry_regions"] = std::move(t);
}

// ---- conformal

std::vector<FourVector> conformal_probes(const RunConfig& cfg)
{
    Rng rng(cfg.seed + 21);
    std::vector<FourVector> p;
    for (int i = 0; i < cfg.conformal_probes; ++i)
        p.push_back(rng.four_vector(-1.5, 1.5));
    return p;
}

void suite_conformal(const RunConfig& cfg, SuiteOutput& out)
{
    auto& rep = out.report;
    auto probes = conformal_probes(cfg);
    auto rows = bracket_table(probes);
    auto t = table({"relation", "max_coefficient_error", "max_fit_residual"});
    for (const auto& r : rows) {
        rep.at_most("bracket " + r.name + " fit residual", r.max_residual, 1e-8);
        rep.at_most("bracket " + r.name + " coefficients", r.max_error, 1e-10);
        t.add_row({r.name, fmt(r.max_error), fmt(r.max_residual)});
    }
    auto literal = bracket_table(probes, true);
    rep.at_least("literal [K,P] sign is inconsistent", literal[3].max_error, 1.0, "resolved sign [K,P] = 2(gD - M)");
    rep.annotate("KP_sign", "[K_mu, P_nu] = 2(g_{mu nu} D - M_{mu nu})");
    out.tables["conformal_brackets"] = std::move(t);
    rep.merge(inversion_identities_check(1000, cfg.seed), "inversion: ");
    rep.merge(pseudo_ortho_correspondence_check(probes), "pseudo-orthogonal: ");
}

// ---- modflow

void suite_modflow(const RunConfig& cfg, SuiteOutput& out)
{
    auto& rep = out.report;
    Rng rng(cfg.seed + 3);
    auto gl = table({"flow", "samples", "group_law_max", "region_preserved"});
    const FlowKind kinds[] = {FlowKind::Wedge, FlowKind::ForwardCone, FlowKind::DoubleConeUnit};
    for (FlowKind k : kinds) {
        double worst = 0;
        bool inside = true;
        Region reg = flow_region(k);
        for (int i = 0; i < cfg.flow_samples; ++i) {
            FourVector x = rng.in_region(reg, k == FlowKind::DoubleConeUnit ? 1.0 : 3.0);
            double s1 = rng.uniform(-1.5, 1.5), s2 = rng.uniform(-1.5, 1.5);
            FourVector a = flow_point(k, s1, flow_point(k, s2, x));
            FourVector b = flow_point(k, s1 + s2, x);
            worst = std::max(worst, dist(a, b) / std::max(1.0, b.euclidean_norm()));
            inside = inside && contains(reg, flow_point(k, s1, x));
        }
        rep.at_most(std::string("group law ") + to_string(k), worst, 1e-10);
        rep.exact(std::string("region preserved ") + to_string(k), inside);
        gl.add_row({to_string(k), std::to_string(cfg.flow_samples), fmt(worst), inside ? "1" : "0"});
    }
    double conj = 0;
    for (int i = 0; i < cfg.flow_samples; ++i) {
        FourVector x = rng.in_region(Region::double_cone(), 1.0);
        double s = rng.uniform(-2, 2);
        conj = std::max(conj, dist(flow_point(FlowKind::DoubleConeUnit, s, x),
                                   pseudo_ortho_project(conjugated_boost(s, pseudo_ortho_embed(x)))));
    }
    rep.at_most("double-cone flow equals T41-conjugated boost", conj, 1e-10);
    out.tables["modflow_group_law"] = std::move(gl);

    struct Case { FlowKind k; FourVector c; FourVector x; Region r; };
    const Case cases[] = {
        {FlowKind::Wedge, {0.1, 1.0, 0, 0}, {0.2, 0.9, 0.1, -0.1}, Region::right_wedge()},
        {FlowKind::ForwardCone, {1.5, 0.2, 0, 0}, {1.3, 0.3, -0.2, 0.1}, Region::forward_cone()},
        {FlowKind::DoubleConeUnit, {0.1, 0, 0, 0.1}, {0.15, 0.1, -0.05, 0.2}, Region::double_cone()},
    };
    auto gd = table({"flow", "h", "discrepancy"});
    for (const auto& c : cases) {
        auto f = gaussian_bump(c.c, 0.4, c.r);
        auto d = generator_decay(c.k, f, c.x, cfg.flow_fd_step);
        rep.near(std::string("generator O(h^2) slope ") + to_string(c.k), d.slope, 2.0, 0.2);
        for (std::size_t i = 0; i < d.steps.size(); ++i)
            gd.add_row({to_string(c.k), fmt(d.steps[i]), fmt(d.discrepancy[i])});
    }
    out.tables["modflow_generator_decay"] = std::move(gd);

    const std::vector<double> lambdas{0.5, 0.25, 0.125, 0.0625};
    auto rows = fredenhagen_sweep(0.5, lambdas, cfg.fredenhagen_samples, cfg.seed + 7);
    rep.merge(fredenhagen_comparison(0.5, {0.5, 0.25, 0.125, 1.0 / 64, 1.0 / 128, 1.0 / 256}, cfg.fredenhagen_samples,
                                     cfg.seed + 7),
              "fredenhagen: ");
    rep.at_most("fredenhagen: sup discrepancy at lambda = 1/16", rows.back().sup_discrepancy, 0.05);
    auto ft = table({"lambda", "sup_discrepancy"});
    for (const auto& r : rows)
        ft.add_row({fmt(r.lambda), fmt(r.sup_discrepancy)});
    out.tables["modflow_fredenhagen"] = std::move(ft);
}

// ---- psdo

GridFunction band_probe(const RunConfig& cfg)
{
    auto f = GridFunction::line(cfg.psdo_grid, cfg.psdo_box);
    f.fill([](const Coord& x) {
        double g = std::exp(-x[0] * x[0] / 8);
        return cplx(g + g * std::cos(20 * x[0]), 0);
    });
    return f;
}

GridFunction bump_line(int n, double L)
{
    auto g = GridFunction::line(n, L);
    g.fill([](const Coord& x) {
        double t = x[0];
        return cplx(std::abs(t) < 1 ? std::exp(-1.0 / (1 - t * t)) : 0.0, 0);
    });
    return g;
}

double rel_err(const GridFunction& a, const GridFunction& b)
{
    auto d = a;
    d -= b;
    return d.l2_norm() / b.l2_norm();
}

void suite_psdo(const RunConfig& cfg, SuiteOutput& out)
{
    auto& rep = out.report;
    auto rt = table({"m", "N", "inverse", "fitted_order", "expected_order"});
    for (double m : {0.5, 1.0, 3.0})
        for (int N = 1; N <= 4; ++N)
            for (bool inv : {false, true}) {
                auto r = expansion_remainder_order(m, N, 5 * m, 50 * m, inv);
                double want = inv ? -1.0 - 2 * N : 1.0 - 2 * N;
                rep.near("remainder order m=" + fmt(m) + " N=" + std::to_string(N) + (inv ? " inverse" : ""), r.slope,
                         want, 0.05 * std::abs(want));
                rt.add_row({fmt(m), std::to_string(N), inv ? "1" : "0", fmt(r.slope), fmt(want)});
            }
    out.tables["psdo_remainder_orders"] = std::move(rt);

    const double m = 4;
    auto f = band_probe(cfg);
    auto exact = apply_psdo(energy_symbol(m), f);
    auto ct = table({"N", "rel_l2_error"});
    double prev = INFINITY;
    bool mono = true;
    for (int N = 1; N <= 5; ++N) {
        double e = rel_err(apply_energy_truncated(f, m, N, true), exact);
        mono = mono && e < prev;
        prev = e;
        ct.add_row({std::to_string(N), fmt(e)});
    }
    rep.exact("truncated omega converges monotonically in N", mono);
    rep.at_most("truncated omega error at N = 5", prev, 1e-5);
    out.tables["psdo_truncation"] = std::move(ct);

    auto inside = [](const Coord& x) { return std::abs(x[0]) < 1; };
    double a = anti_locality_probe(bump_line(cfg.psdo_grid, cfg.psdo_box), 1.0, inside);
    double b = anti_locality_probe(bump_line(2 * cfg.psdo_grid, cfg.psdo_box), 1.0, inside);
    rep.at_least("anti-locality outside fraction", a, 1e-3);
    rep.at_most("anti-locality refinement change", std::abs(b / a - 1), 0.1);

    auto g = GridFunction::line(cfg.psdo_grid, cfg.psdo_box);
    g.fill([](const Coord& x) { return cplx(std::exp(-x[0] * x[0] / 2), 0); });
    rep.near("Sobolev H^1 norm of e^{-x^2/2}", sobolev_norm(g, 1), std::sqrt(1.5 * std::sqrt(kPi)), 1e-10);
    auto w = mapping_order_estimate([&](const GridFunction& h) { return apply_psdo(energy_symbol(1.0), h); },
                                    {-1, 0, 1}, g);
    rep.near("omega maps H^s to H^{s-1}", w.mean, 1.0, 0.1);
    rep.merge(symbol_estimate_check(energy_symbol(1.0), 2), "symbol estimates: ");
    rep.annotate("transform_convention", "f(x) = int f~(xi) e^{ix xi} dxi");
}

// ---- nonlocal

void suite_nonlocal(const RunConfig& cfg, SuiteOutput& out)
{
    auto& rep = out.report;
    auto phi = MomentumTestFunction::gaussian(0.4, -0.3, 0.8, 0.5);
    std::vector<std::array<double, 2>> pts;
    for (double p0 = -1.5; p0 <= 1.5; p0 += 0.5)
        for (double p1 = -1.5; p1 <= 1.5; p1 += 0.5)
            pts.push_back({p0, p1});
    auto yt = table({"m", "constant", "rel_err", "rel_err_minus_4pi", "rel_err_alt_mass"});
    for (double m : {0.5, 1.0, 4.0}) {
        auto r = resolve_yngvason_constant(phi, pts, 0.3, m);
        rep.at_most("Yngvason generator vs flow derivative m=" + fmt(m), r.rel_err, 1e-5);
        rep.near("Yngvason boost constant m=" + fmt(m), r.constant, kYngvasonBoostConstant, 1e-6);
        yt.add_row({fmt(m), fmt(r.constant), fmt(r.rel_err), fmt(r.rel_err_4pi), fmt(r.rel_err_alt_mass)});
    }
    out.tables["nonlocal_yngvason"] = std::move(yt);
    rep.annotate("yngvason_boost_constant", fmt(kYngvasonBoostConstant));
    rep.annotate("yngvason_mass_term", "2 pi i p0 / (A - i p1), A = (|p^|^2 + m^2)^{1/2}");
    // order zero part: the generator on a locally constant function is the mass term alone
    MomentumTestFunction one{[](double, double) { return cplx(1, 0); }, [](double, double) { return cplx(0, 0); },
                             [](double, double) { return cplx(0, 0); }};
    double order0 = 0;
    for (auto p : pts)
        order0 = std::max(order0, std::abs(yngvason_generator(one, p[0], p[1], 0.3, 1.0) -
                                           yngvason_generator_oracle(one, p[0], p[1], 0.3, 1.0)));
    rep.at_most("mass term is the whole order-0 part", order0, 1e-8);
    double at_p1 = std::abs(yngvason_mass_term(0.7, 0.0, 0.3, 1.0));
    rep.at_most("mass term vanishes at p1 = 0", at_p1, 1e-12, "vanishes at p0 = 0 instead");
    rep.at_most("mass term vanishes at p0 = 0", std::abs(yngvason_mass_term(0.0, 0.7, 0.3, 1.0)), 1e-12);

    // V group law on the momentum plane
    const int n = cfg.yngvason_grid;
    auto plane = GridFunction::plane(n, n, 16.0, 16.0);
    plane.fill([](const Coord& p) {
        double a = p[0] - 0.7, b = p[1] + 0.4;
        return cplx(std::exp(-(a * a + b * b) / 2), 0);
    });
    auto v1 = yngvason_V(1.3, yngvason_V(0.9, plane, 1.0), 1.0);
    auto v2 = yngvason_V(1.3 * 0.9, plane, 1.0);
    rep.at_most("V(a) V(b) = V(ab) on the grid", rel_err(v1, v2), 1e-4 * (512.0 / n) * (512.0 / n));
    double n0 = yngvason_weighted_norm(plane, 1.0), n1 = yngvason_weighted_norm(yngvason_V(1.3, plane, 1.0), 1.0);
    rep.at_most("V preserves the one-particle norm", std::abs(n1 / n0 - 1), 1e-4);

    auto bt = table({"n", "beta", "probe_id", "rel_err", "resolved_sign", "resolved_constant", "rel_err_opposite_sign",
                     "rel_err_principal_only"});
    for (double beta : cfg.by_betas) {
        auto f = by_probe(beta);
        const std::string probe = "gauss(c=" + fmt(by_probe_center(beta)) + ";w=c/6)";
        auto p0 = by_generator_formula(0, beta, f);
        for (int k = 0; k <= cfg.by_n_max; ++k) {
            auto oracle = by_generator_oracle(k, beta, f);
            double plus = half_line_rel_err(by_generator_formula(k, beta, f, +1), oracle);
            double minus = k == 0 ? plus : half_line_rel_err(by_generator_formula(k, beta, f, -1), oracle);
            double share = half_line_rel_err(p0, oracle);
            rep.at_most("BY n=" + std::to_string(k) + " formula beta=" + fmt(beta), plus, 1e-4);
            bt.add_row({std::to_string(k), fmt(beta), probe, fmt(plus), "+1", fmt(2 * kPi / beta), fmt(minus), fmt(share)});
        }
    }
    rep.annotate("by_correction_sign", "+1");
    rep.annotate("by_anchor", "infinity");
    out.tables["nonlocal_borchers_yngvason"] = std::move(bt);

    auto fr = fio_symbol_report(2, 5.0);
    rep.merge(fr.report, "FIO n=2 beta=5: ");
    auto ft = table({"xi", "abs_symbol"});
    for (const auto& r : fr.rows)
        ft.add_row({fmt(r.xi), fmt(r.abs_symbol)});
    out.tables["nonlocal_fio_symbol"] = std::move(ft);
}

// ---- freefield

void suite_freefield(const RunConfig& cfg, SuiteOutput& out)
{
    auto& rep = out.report;
    const double eps = cfg.two_point_eps;
    Rng rng(cfg.seed + 5);
    double herm = 0;
    for (int i = 0; i < 20; ++i) {
        FourVector x = rng.four_vector(-2, 2), y = rng.four_vector(-2, 2);
        cplx a = two_point(0.0, x, y, eps), b = two_point(0.0, y, x, eps);
        herm = std::max(herm, std::abs(a - std::conj(b)) / std::abs(a));
    }
    for (int i = 0; i < 3; ++i) {
        FourVector x = rng.four_vector(-1, 1), y = rng.four_vector(-1, 1);
        cplx a = two_point(1.0, x, y, eps), b = two_point(1.0, y, x, eps);
        herm = std::max(herm, std::abs(a - std::conj(b)) / std::abs(a));
    }
    rep.at_most("two-point Hermiticity", herm, 1e-10);
    cplx et = two_point(1.0, {0, 1.3, 0, 0}, {}, eps);
    rep.at_most("equal-time Im part", std::abs(et.imag()) / std::abs(et), 1e-10);
    double cl = 0, cst = 0;
    for (auto [t, r] : std::vector<std::pair<double, double>>{{0.3, 1.3}, {1.0, 0.2}, {0.0, 2.0}}) {
        FourVector x{t, r, 0, 0};
        cplx e = two_point_massless(x, {}, eps);
        cl = std::max(cl, std::abs(two_point_quadrature(0.0, x, {}, eps) - e) / std::abs(e));
        cst = std::max(cst, std::abs(massless_constant_oracle(t, r, eps) - kMasslessTwoPoint) / std::abs(kMasslessTwoPoint));
    }
    rep.at_most("massless closed form vs quadrature", cl, 1e-6);
    rep.at_most("massless constant from the momentum integral", cst, 1e-8);
    rep.annotate("massless_two_point_constant", fmt(kMasslessTwoPoint));
    for (double m : {0.0, 1.0})
        rep.at_most("two-point KG residual m=" + fmt(m), two_point_kg_residual(m, {0.3, 1.0, 0.2, 0.1}, {}, eps), 1e-4);

    const double sigma = cfg.pj_sigma;
    auto pt = table({"m", "t", "r", "delta"});
    for (double m : {0.0, 1.0}) {
        double t0 = 0;
        for (double r : {0.1, 0.5, 1.0, 3.0})
            t0 = std::max(t0, std::abs(pauli_jordan(m, 0.0, r, sigma)));
        rep.at_most("Pauli-Jordan equal-time m=" + fmt(m), t0, 1e-8);
        rep.at_most("Pauli-Jordan causal leak m=" + fmt(m), pauli_jordan_causal_leak(m, sigma, 10 * sigma), 1e-5);
        double kg = 0;
        for (auto [t, r] : std::vector<std::pair<double, double>>{{1.0, 0.95}, {1.0, 1.05}, {2.0, 0.5}, {0.3, 1.5}})
            kg = std::max(kg, pauli_jordan_kg_residual(m, t, r, 2e-3, sigma));
        rep.at_most("Pauli-Jordan KG residual m=" + fmt(m), kg, 1e-4);
        double anti = 0;
        for (auto [t, r] : std::vector<std::pair<double, double>>{{0.7, 0.6}, {1.5, 0.3}, {1.0, 1.0}}) {
            double a = pauli_jordan(m, t, r, sigma), b = pauli_jordan(m, -t, r, sigma);
            anti = std::max(anti, std::abs(a + b) / std::max(1.0, std::abs(a)));
        }
        rep.at_most("Pauli-Jordan antisymmetry m=" + fmt(m), anti, 1e-9);
        for (int i = 0; i <= 20; ++i) {
            double r = 0.1 * (i + 1);
            pt.add_row({fmt(m), "1", fmt(r), fmt(pauli_jordan(m, 1.0, r, sigma))});
        }
    }
    rep.at_most("Pauli-Jordan spacelike (0.5, 2.0) m=1", std::abs(pauli_jordan(1.0, 0.5, 2.0, sigma)), 1e-6);
    rep.annotate("pauli_jordan_sigma", fmt(sigma));
    out.tables["freefield_pauli_jordan"] = std::move(pt);

    KmsOptions ko;
    ko.eps = cfg.kms_eps;
    ko.samples = cfg.kms_samples;
    ko.window = cfg.kms_window;
    FourVector x{0, 1, 0, 0}, y{0, 1.5, 0.2, 0};
    rep.merge(kms_boost_check(x, y, ko), "KMS: ");
    auto fit = kms_boost_fit(x, y, ko);
    auto kt = table({"E", "log_ratio"});
    for (std::size_t i = 0; i < fit.E.size(); ++i)
        kt.add_row({fmt(fit.E[i]), fmt(fit.log_ratio[i])});
    kt.meta.push_back("fitted_beta=" + fmt(fit.beta));
    out.tables["freefield_kms_spectrum"] = std::move(kt);

    const auto n = static_cast<std::size_t>(cfg.radial_points);
    auto f = RadialFunction::sample([](double r) { return std::exp(-r * r); }, n, cfg.radial_step);
    auto cal = calibrate_f_rest(f, 1.0);
    rep.near("f_rest calibrated constant", cal.constant, kFRestConstant, 1e-4 * kFRestConstant);
    rep.annotate("f_rest_constant", fmt(kFRestConstant));
    rep.annotate("f_rest_constant_over_minus_4pi", fmt(cal.ratio_to_minus_4pi));
    auto ft = table({"width", "m", "rel_l2_error"});
    double worst = 0;
    for (double w : {0.7, 1.0, 2.0})
        for (double m : {0.5, 1.0, 2.0}) {
            auto g = RadialFunction::sample([w](double r) { return std::exp(-r * r / (w * w)); }, n, cfg.radial_step);
            double e = radial_rel_err(g + f_rest_kernel(g, m), mass_shift_exact(g, m));
            worst = std::max(worst, e);
            ft.add_row({fmt(w), fmt(m), fmt(e)});
        }
    rep.at_most("f + f_rest = exact mass shift (Gaussian corpus)", worst, 1e-3);
    double zero = 0;
    for (double v : f_rest_kernel(f, 0.0).f)
        zero = std::max(zero, std::abs(v));
    rep.at_most("f_rest vanishes for m = 0", zero, 0.0);
    out.tables["freefield_kernel"] = std::move(ft);

    double bog = 0;
    for (int i = 0; i < 200; ++i) {
        double k = std::exp(rng.uniform(-6, 6)), m1 = rng.uniform(0, 3), m2 = rng.uniform(0, 3);
        double p = bogoliubov_beta(1, k, m1, m2), q = bogoliubov_beta(-1, k, m1, m2);
        bog = std::max(bog, std::abs(p * p - q * q - 1));
    }
    rep.at_most("beta_+^2 - beta_-^2 = 1", bog, 1e-12);
    auto ht = table({"window", "k_cutoff", "hs_norm"});
    double prev = INFINITY;
    bool dec = true;
    for (double R : {4.0, 2.0, 1.0, 0.5}) {
        auto h = hs_probe(0.0, 1.0, R);
        dec = dec && h.value < prev;
        prev = h.value;
        for (auto [K, v] : h.trend)
            ht.add_row({fmt(R), fmt(K), fmt(v)});
    }
    rep.exact("HS probe decreases as the window shrinks", dec);
    out.tables["freefield_hs_probe"] = std::move(ht);
}

// ---- thermal

void suite_thermal(const RunConfig&, SuiteOutput& out)
{
    auto& rep = out.report;
    rep.near("Unruh T(a = 2 pi)", unruh_temperature(2 * kPi), 1.0, 1e-15);
    rep.near("cone T(0)", cone_temperature(1.0, 0.0), 1 / (2 * kPi), 0.0);
    rep.near("diamond a = 0 limit", diamond_temperature(0.0, 1.0, 0.0), 1 / kPi, 1e-8);
    double lo = diamond_temperature(kDiamondSeriesThreshold * (1 - 1e-9), 1.0, 0.0);
    double hi = diamond_temperature(kDiamondSeriesThreshold * (1 + 1e-9), 1.0, 0.0);
    rep.at_most("diamond series threshold jump", std::abs(hi - lo), 1e-8);
    rep.near("diamond just above the threshold", hi, 1 / kPi, 1e-8);
    bool diverges = false;
    try {
        diamond_temperature(1.0, 1.0, diamond_lifetime(1.0, 1.0));
    } catch (const LifetimeBoundary&) {
        diverges = true;
    }
    rep.exact("diamond lifetime boundary detected", diverges);
    rep.at_least("diamond T near the boundary / T(0)",
                 diamond_temperature(1.0, 1.0, 0.9999 * diamond_lifetime(1.0, 1.0)) / diamond_temperature(1.0, 1.0, 0.0),
                 100.0);
    double orbit = 0;
    for (double tau : {-1.0, 0.0, 0.5, 2.0}) {
        FourVector u = boost_orbit_velocity(2.0, tau);
        orbit = std::max(orbit, std::abs(minkowski_square(u) - 1));
        orbit = std::max(orbit, dist(flow_point(FlowKind::Wedge, 2.0 * tau, boost_orbit(2.0, 0.0)), boost_orbit(2.0, tau)));
    }
    rep.at_most("boost orbit proper time and group action", orbit, 1e-10);
    rep.annotate("diamond_tau0", "minimum of T (maximum of beta) = 1/(pi L) at a = 0");

    auto t = table({"observer", "a", "L", "tau", "T"});
    for (int i = 0; i <= 10; ++i) {
        double tau = 0.1 * i;
        t.add_row({"wedge", "1", "", fmt(tau), fmt(unruh_temperature(1.0))});
        t.add_row({"cone", "1", "", fmt(tau), fmt(cone_temperature(1.0, tau))});
        t.add_row({"diamond", "1", "1", fmt(tau * 0.8), fmt(diamond_temperature(1.0, 1.0, tau * 0.8))});
    }
    out.tables["thermal_profiles"] = std::move(t);
}

} // namespace

SuiteOutput run_suite(const std::string& name, const RunConfig& cfg)
{
    validate(cfg);
    set_thread_count(cfg.threads);
    SuiteOutput out;
    out.report.suite = name;
    out.report.inputs_digest = config_digest(cfg);
    auto t0 = std::chrono::steady_clock::now();
    if (name == "geometry")
        suite_geometry(cfg, out);
    else if (name == "conformal")
        suite_conformal(cfg, out);
    else if (name == "modflow")
        suite_modflow(cfg, out);
    else if (name == "psdo")
        suite_psdo(cfg, out);
    else if (name == "nonlocal")
        suite_nonlocal(cfg, out);
    else if (name == "freefield")
        suite_freefield(cfg, out);
    else if (name == "thermal")
        suite_thermal(cfg, out);
    else
        throw ConfigError("unknown suite '" + name + "'");
    out.report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cfg.tolerance)
        out.report.override_tolerance(*cfg.tolerance);

    auto checks = table({"id", "pass", "measured", "expected", "tol", "note"});
    for (const auto& c : out.report.checks)
        checks.add_row({c.id, c.pass ? "1" : "0", fmt(c.measured), fmt(c.expected), fmt(c.tol), c.note});
    out.tables[name + "_checks"] = std::move(checks);
    for (auto& [stem, tab] : out.tables) {
        std::vector<std::string> meta{"suite=" + name, "config_digest=" + out.report.inputs_digest,
                                      "seed=" + std::to_string(cfg.seed)};
        for (const auto& [k, v] : out.report.annotations)
            meta.push_back("resolved " + k + "=" + v);
        meta.insert(meta.end(), tab.meta.begin(), tab.meta.end());
        tab.meta = std::move(meta);
    }
    return out;
}

} // namespace modflow
