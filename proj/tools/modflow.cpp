// modflow: verification runner and table emitters.
//
// Exit codes: 0 success, 1 failed check or numerical error, 2 configuration or usage error.

#include "modflow/errors.hpp"
#include "modflow/freefield.hpp"
#include "modflow/modular_flow.hpp"
#include "modflow/psdo.hpp"
#include "modflow/suites.hpp"
#include "modflow/thermal.hpp"
#include "modflow/util.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace modflow;
namespace fs = std::filesystem;

namespace {

struct Globals {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::optional<double> tolerance;
};

RunConfig resolve_config(const Globals& g)
{
    RunConfig cfg;
    std::string path = g.config;
    if (path.empty())
        if (const char* env = std::getenv("MODFLOW_CONFIG"))
            path = env;
    if (!path.empty())
        cfg = load_config_file(path);
    if (g.seed)
        cfg.seed = *g.seed;
    if (g.threads)
        cfg.threads = *g.threads;
    if (g.tolerance)
        cfg.tolerance = *g.tolerance;
    if (!g.out.empty())
        cfg.out = g.out;
    validate(cfg);
    set_thread_count(cfg.threads);
    return cfg;
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ConfigError("cannot write '" + path + "'");
    f << text;
}

// table commands: stdout, or the --out path
void emit(const Globals& g, CsvTable t, const RunConfig& cfg)
{
    t.meta.insert(t.meta.begin(), "config_digest=" + config_digest(cfg));
    if (g.out.empty())
        std::cout << t.str();
    else
        write_text(g.out, t.str());
}

std::vector<double> parse_list(const std::string& s)
{
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("cannot parse number '" + item + "'");
        }
    }
    return v;
}

FourVector parse_point(const std::string& s)
{
    auto v = parse_list(s);
    if (v.size() != 4)
        throw ConfigError("a point needs four comma-separated coordinates, got '" + s + "'");
    return {v[0], v[1], v[2], v[3]};
}

// lo:hi:step, inclusive of hi up to rounding
std::vector<double> parse_range(const std::string& s)
{
    std::vector<double> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':'))
        parts.push_back(parse_list(item).at(0));
    if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0])
        throw ConfigError("range must be lo:hi:step with step > 0 and hi >= lo");
    auto n = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    std::vector<double> out;
    for (long i = 0; i <= n; ++i)
        out.push_back(parts[0] + i * parts[2]);
    return out;
}

int cmd_verify(const Globals& g, const std::string& suite, const std::string& betas, std::optional<int> nmax)
{
    RunConfig cfg = resolve_config(g);
    if (!betas.empty())
        cfg.by_betas = parse_list(betas);
    if (nmax)
        cfg.by_n_max = *nmax;
    validate(cfg);
    std::vector<std::string> names;
    if (suite == "all")
        names = suite_names();
    else
        names = {suite};
    fs::create_directories(cfg.out);
    bool ok = true;
    for (const auto& n : names) {
        SuiteOutput r = run_suite(n, cfg);
        write_text((fs::path(cfg.out) / (n + ".json")).string(), to_json(r.report));
        for (const auto& [stem, tab] : r.tables)
            write_text((fs::path(cfg.out) / (stem + ".csv")).string(), tab.str());
        int failed = 0;
        for (const auto& c : r.report.checks)
            if (!c.pass) {
                ++failed;
                std::cerr << "  FAIL " << n << ": " << c.id << " measured " << fmt(c.measured) << " tol " << fmt(c.tol)
                          << '\n';
            }
        std::cout << n << ": " << (failed ? "FAIL" : "PASS") << " (" << r.report.checks.size() - failed << "/"
                  << r.report.checks.size() << " checks)\n";
        ok = ok && failed == 0;
    }
    return ok ? 0 : 1;
}

int cmd_flow(const Globals& g, const std::string& kind_s, double s, const std::string& srange, const std::string& xs)
{
    RunConfig cfg = resolve_config(g);
    FlowKind kind;
    try {
        kind = flow_kind_from_string(kind_s);
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    FourVector x = parse_point(xs);
    std::vector<double> ss = srange.empty() ? std::vector<double>{s} : parse_range(srange);
    CsvTable t;
    t.header = {"kind", "s", "x0", "x1", "x2", "x3", "y0", "y1", "y2", "y3", "discrepancy"};
    t.meta.push_back("discrepancy = |flow(s/2, flow(s/2, x)) - flow(s, x)|");
    for (double si : ss) {
        FourVector y = flow_point(kind, si, x);
        FourVector z = flow_point(kind, 0.5 * si, flow_point(kind, 0.5 * si, x));
        t.add_row({to_string(kind), fmt(si), fmt(x.x0), fmt(x.x1), fmt(x.x2), fmt(x.x3), fmt(y.x0), fmt(y.x1), fmt(y.x2),
                   fmt(y.x3), fmt((z - y).euclidean_norm())});
    }
    emit(g, std::move(t), cfg);
    return 0;
}

int cmd_expand(const Globals& g, double m, int N, const std::string& regime_s, bool inverse)
{
    RunConfig cfg = resolve_config(g);
    if (N < 1)
        throw ConfigError("--N must be >= 1");
    Regime regime;
    if (regime_s == "ur")
        regime = Regime::Ultrarelativistic;
    else if (regime_s == "nr")
        regime = Regime::Nonrelativistic;
    else
        throw ConfigError("--regime must be ur or nr");
    auto e = energy_expansion(m, N, regime, inverse);
    CsvTable t;
    t.header = {"k", "order", "mass_power", "coefficient"};
    for (int k = 0; k < N; ++k) {
        const auto& term = e.terms[static_cast<std::size_t>(k)];
        t.add_row({std::to_string(term.k), fmt(term.power), fmt(term.mass_power), fmt(term.coefficient)});
    }
    if (regime == Regime::Ultrarelativistic && m > 0) {
        auto r = expansion_remainder_order(m, N, 5 * m, 50 * m, inverse);
        t.meta.push_back("remainder_slope(N=" + std::to_string(N) + ")=" + fmt(r.slope) +
                         " expected=" + fmt((inverse ? -1.0 : 1.0) - 2 * N));
    }
    emit(g, std::move(t), cfg);
    return 0;
}

int cmd_kms(const Globals& g, const std::string& xs, const std::string& ys, int stride)
{
    RunConfig cfg = resolve_config(g);
    KmsOptions o;
    o.eps = cfg.kms_eps;
    o.samples = cfg.kms_samples;
    o.window = cfg.kms_window;
    FourVector x = parse_point(xs), y = parse_point(ys);
    auto fit = kms_boost_fit(x, y, o);
    CsvTable t;
    t.header = {"series", "arg", "value_re", "value_im"};
    t.meta.push_back("fitted_beta=" + fmt(fit.beta));
    t.meta.push_back("leakage=" + fmt(fit.leakage));
    t.meta.push_back("eps=" + fmt(o.eps));
    const double ds = o.window / o.samples;
    for (int j = 0; j < o.samples; j += stride) {
        double s = -0.5 * o.window + j * ds;
        cplx v = two_point_massless(boost01(s, x), y, o.eps);
        t.add_row({"G", fmt(s), fmt(v.real()), fmt(v.imag())});
    }
    for (std::size_t i = 0; i < fit.E.size(); ++i)
        t.add_row({"log_ratio", fmt(fit.E[i]), fmt(fit.log_ratio[i]), "0"});
    t.add_row({"beta", "", fmt(fit.beta), "0"});
    emit(g, std::move(t), cfg);
    return 0;
}

int cmd_kernel(const Globals& g, const std::string& masses, const std::string& widths)
{
    RunConfig cfg = resolve_config(g);
    CsvTable t;
    t.header = {"width", "m", "rel_l2_error", "calibrated_constant"};
    t.meta.push_back("kernel_constant=" + fmt(kFRestConstant));
    const auto n = static_cast<std::size_t>(cfg.radial_points);
    for (double w : parse_list(widths))
        for (double m : parse_list(masses)) {
            auto f = RadialFunction::sample([w](double r) { return std::exp(-r * r / (w * w)); }, n, cfg.radial_step);
            double err = radial_rel_err(f + f_rest_kernel(f, m), mass_shift_exact(f, m));
            double c = m > 0 ? calibrate_f_rest(f, m).constant : 0.0;
            t.add_row({fmt(w), fmt(m), fmt(err), fmt(c)});
        }
    emit(g, std::move(t), cfg);
    return 0;
}

int cmd_temp(const Globals& g, const std::string& observer, double a, double L, const std::string& range)
{
    RunConfig cfg = resolve_config(g);
    ObserverSpec o;
    try {
        o.region = observer_region_from_string(observer);
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    o.a = a;
    o.L = L;
    CsvTable t;
    t.header = {"observer", "a", "L", "tau", "T"};
    for (double tau : parse_range(range)) {
        o.tau = tau;
        t.add_row({observer, fmt(a), fmt(L), fmt(tau), fmt(temperature(o))});
    }
    emit(g, std::move(t), cfg);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Geometric modular flows: verification suites and table emitters"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    Globals g;
    app.add_option("--config", g.config, "JSON config file (fallback: $MODFLOW_CONFIG)");
    app.add_option("--out", g.out, "verify: report directory; other commands: CSV file (default stdout)");
    app.add_option("--seed", g.seed, "RNG seed");
    app.add_option("--threads", g.threads, "worker threads (0 = hardware)");
    app.add_option("--tolerance", g.tolerance, "replace every check tolerance")->check(CLI::PositiveNumber);

    std::string suite;
    auto* verify = app.add_subcommand("verify", "run a module suite; writes <suite>.json and CSV tables to --out");
    verify->add_option("suite", suite, "geometry|conformal|modflow|psdo|nonlocal|freefield|thermal|all")
        ->required()
        ->check(CLI::IsMember({"geometry", "conformal", "modflow", "psdo", "nonlocal", "freefield", "thermal", "all"}));
    std::string betas;
    std::optional<int> nmax;
    verify->add_option("--beta", betas, "nonlocal: comma-separated inverse temperatures");
    verify->add_option("--n-max", nmax, "nonlocal: highest Borchers-Yngvason order");

    std::string kind = "wedge", xs = "0,1,0,0", srange;
    double s = 0.5;
    auto* flow = app.add_subcommand("flow", "CSV columns: kind,s,x0..x3,y0..y3,discrepancy");
    flow->add_option("--kind", kind, "wedge|cone|doublecone");
    flow->add_option("--s", s, "flow parameter");
    flow->add_option("--s-range", srange, "lo:hi:step, overrides --s");
    flow->add_option("--x", xs, "point x0,x1,x2,x3");

    double m = 1;
    int N = 3;
    std::string regime = "ur";
    bool inverse = false;
    auto* expand = app.add_subcommand("expand", "CSV columns: k,order,mass_power,coefficient (N terms)");
    expand->add_option("--m", m, "mass");
    expand->add_option("--N", N, "number of terms");
    expand->add_option("--regime", regime, "ur (|xi| >> m) or nr (|xi| << m)");
    expand->add_flag("--inverse", inverse, "expand omega^{-1}");

    std::string kx = "0,1,0,0", ky = "0,1.5,0.2,0";
    int stride = 1024;
    auto* kms = app.add_subcommand("kms", "CSV columns: series,arg,value_re,value_im (G samples, log ratios, beta)");
    kms->add_option("--x", kx, "orbit start in W_R");
    kms->add_option("--y", ky, "second point in W_R");
    kms->add_option("--stride", stride, "emit every stride-th G sample")->check(CLI::PositiveNumber);

    std::string masses = "0,0.5,1,2", widths = "0.7,1,2";
    auto* kernel = app.add_subcommand("kernel", "CSV columns: width,m,rel_l2_error,calibrated_constant");
    kernel->add_option("--m", masses, "comma-separated masses");
    kernel->add_option("--width", widths, "comma-separated Gaussian widths");

    std::string observer = "wedge", range = "0:1:0.1";
    double a = 1, L = 1;
    auto* temp = app.add_subcommand("temp", "CSV columns: observer,a,L,tau,T");
    temp->add_option("--observer", observer, "wedge|cone|diamond");
    temp->add_option("--a", a, "acceleration");
    temp->add_option("--L", L, "diamond radius");
    temp->add_option("--tau-range", range, "lo:hi:step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed())
            return cmd_verify(g, suite, betas, nmax);
        if (flow->parsed())
            return cmd_flow(g, kind, s, srange, xs);
        if (expand->parsed())
            return cmd_expand(g, m, N, regime, inverse);
        if (kms->parsed())
            return cmd_kms(g, kx, ky, stride);
        if (kernel->parsed())
            return cmd_kernel(g, masses, widths);
        if (temp->parsed())
            return cmd_temp(g, observer, a, L, range);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
