#include "modflow/conformal.hpp"
#include "modflow/errors.hpp"
#include "modflow/util.hpp"

#include <algorithm>
#include <cmath>

namespace modflow {

namespace {

Eigen::Vector4d vec(const FourVector& x) { return {x.x0, x.x1, x.x2, x.x3}; }
FourVector fv(const Eigen::Vector4d& v) { return {v(0), v(1), v(2), v(3)}; }

constexpr std::array<std::pair<int, int>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
constexpr std::array<double, 6> kMetric6{1, -1, -1, -1, -1, 1};

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

double guarded(double denom, double eps, const char* what)
{
    if (!(std::abs(denom) >= eps))
        throw SingularPoint(std::string(what) + ": vanishing denominator");
    return denom;
}

} // namespace

Mat4 metric4()
{
    return Eigen::Vector4d(1, -1, -1, -1).asDiagonal();
}

Mat4 boost_matrix(double s, int axis)
{
    if (axis < 1 || axis > 3)
        throw InvalidArgument("boost_matrix: axis must be 1..3");
    Mat4 L = Mat4::Identity();
    L(0, 0) = L(axis, axis) = std::cosh(s);
    L(0, axis) = L(axis, 0) = std::sinh(s);
    return L;
}

Mat4 rotation_matrix(double angle, int i, int j)
{
    if (i < 1 || i > 3 || j < 1 || j > 3 || i == j)
        throw InvalidArgument("rotation_matrix: need two distinct spatial axes");
    Mat4 R = Mat4::Identity();
    R(i, i) = R(j, j) = std::cos(angle);
    R(i, j) = -std::sin(angle);
    R(j, i) = std::sin(angle);
    return R;
}

ConformalMap ConformalMap::translation(const FourVector& a)
{
    require_finite(a, "translation");
    return ConformalMap(Translation{a});
}

ConformalMap ConformalMap::lorentz(const Mat4& L)
{
    if (!L.allFinite())
        throw InvalidArgument("lorentz: non-finite matrix");
    Mat4 g = metric4();
    double err = (L.transpose() * g * L - g).cwiseAbs().maxCoeff();
    if (err > 1e-10)
        throw InvalidArgument("lorentz: matrix does not preserve the metric");
    return ConformalMap(LorentzMap{L});
}

ConformalMap ConformalMap::dilation(double lambda)
{
    if (!(lambda > 0) || !std::isfinite(lambda))
        throw InvalidArgument("dilation: parameter must be > 0");
    return ConformalMap(Dilation{lambda});
}

ConformalMap ConformalMap::special_conformal(const FourVector& c)
{
    require_finite(c, "special_conformal");
    return ConformalMap(SpecialConformal{c});
}

ConformalMap ConformalMap::inversion() { return ConformalMap(Inversion{}); }

std::string ConformalMap::name() const
{
    return std::visit(overloaded{
        [](const Translation&) { return std::string("translation"); },
        [](const LorentzMap&) { return std::string("lorentz"); },
        [](const Dilation&) { return std::string("dilation"); },
        [](const SpecialConformal&) { return std::string("special_conformal"); },
        [](const Inversion&) { return std::string("inversion"); }}, v_);
}

FourVector apply(const ConformalMap& m, const FourVector& x, double eps)
{
    require_finite(x, "apply");
    return std::visit(overloaded{
        [&](const Translation& t) { return x + t.a; },
        [&](const LorentzMap& l) { return fv(l.L * vec(x)); },
        [&](const Dilation& d) { return d.lambda * x; },
        [&](const SpecialConformal& s) {
            double q = minkowski_square(x);
            double den = 1.0 - 2.0 * minkowski_inner(x, s.c) + q * minkowski_square(s.c);
            guarded(den, eps, "special conformal");
            return (x - q * s.c) / den;
        },
        [&](const Inversion&) {
            double q = minkowski_square(x);
            guarded(q, eps, "inversion");
            return -x / q;
        }}, m.data());
}

double conformal_factor(const ConformalMap& m, const FourVector& x)
{
    return std::visit(overloaded{
        [](const Translation&) { return 1.0; },
        [](const LorentzMap&) { return 1.0; },
        [](const Dilation& d) { return 1.0 / d.lambda; },
        [&](const SpecialConformal& s) {
            return 1.0 - 2.0 * minkowski_inner(x, s.c) + minkowski_square(x) * minkowski_square(s.c);
        },
        [&](const Inversion&) { return minkowski_square(x); }}, m.data());
}

FourVector apply_chain(const std::vector<ConformalMap>& chain, const FourVector& x, double eps)
{
    FourVector y = x;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
        y = apply(*it, y, eps);
    return y;
}

double chain_factor(const std::vector<ConformalMap>& chain, const FourVector& x)
{
    double n = 1.0;
    FourVector y = x;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        n *= conformal_factor(*it, y);
        y = apply(*it, y);
    }
    return n;
}

// ---- generator fields ----

GeneratorField GeneratorField::P(const FourVector& a)
{
    GeneratorField g;
    g.a = a;
    return g;
}

GeneratorField GeneratorField::M(const Mat4& omega)
{
    if ((omega + omega.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw InvalidArgument("GeneratorField::M: omega not antisymmetric");
    GeneratorField g;
    g.omega = omega;
    return g;
}

GeneratorField GeneratorField::D(double b)
{
    GeneratorField g;
    g.b = b;
    return g;
}

GeneratorField GeneratorField::K(const FourVector& c)
{
    GeneratorField g;
    g.c = c;
    return g;
}

GeneratorField GeneratorField::operator+(const GeneratorField& o) const
{
    GeneratorField g;
    g.a = a + o.a;
    g.omega = omega + o.omega;
    g.b = b + o.b;
    g.c = c + o.c;
    return g;
}

GeneratorField GeneratorField::operator-(const GeneratorField& o) const { return *this + o * -1.0; }

GeneratorField GeneratorField::operator*(double s) const
{
    GeneratorField g;
    g.a = s * a;
    g.omega = s * omega;
    g.b = s * b;
    g.c = s * c;
    return g;
}

Eigen::Matrix<double, 15, 1> GeneratorField::params() const
{
    Eigen::Matrix<double, 15, 1> p;
    for (int i = 0; i < 4; ++i)
        p(i) = a[i];
    for (int k = 0; k < 6; ++k)
        p(4 + k) = omega(kPairs[k].first, kPairs[k].second);
    p(10) = b;
    for (int i = 0; i < 4; ++i)
        p(11 + i) = c[i];
    return p;
}

GeneratorField GeneratorField::from_params(const Eigen::Matrix<double, 15, 1>& p)
{
    GeneratorField g;
    for (int i = 0; i < 4; ++i)
        g.a[i] = p(i);
    for (int k = 0; k < 6; ++k) {
        auto [m, n] = kPairs[k];
        g.omega(m, n) = p(4 + k);
        g.omega(n, m) = -p(4 + k);
    }
    g.b = p(10);
    for (int i = 0; i < 4; ++i)
        g.c[i] = p(11 + i);
    return g;
}

FourVector killing_field(const GeneratorField& g, const FourVector& x)
{
    Eigen::Vector4d X = vec(x);
    Mat4 G = metric4();
    double cx = minkowski_inner(g.c, x);
    double q = minkowski_square(x);
    Eigen::Vector4d u = vec(g.a) + G * g.omega * X + g.b * X + 2.0 * cx * X - q * vec(g.c);
    return fv(u);
}

Mat4 killing_jacobian(const GeneratorField& g, const FourVector& x)
{
    Mat4 G = metric4();
    Eigen::Vector4d X = vec(x), C = vec(g.c);
    double cx = minkowski_inner(g.c, x);
    Mat4 J = G * g.omega + (g.b + 2.0 * cx) * Mat4::Identity();
    J += 2.0 * X * (G * C).transpose();
    J -= 2.0 * C * (G * X).transpose();
    return J;
}

namespace algebra {

GeneratorField P(int mu)
{
    FourVector a{};
    a[mu] = 1.0;
    return GeneratorField::P(a);
}

GeneratorField M(int mu, int nu)
{
    Mat4 w = Mat4::Zero();
    if (mu != nu) {
        w(mu, nu) = -kMetric[mu] * kMetric[nu];
        w(nu, mu) = kMetric[mu] * kMetric[nu];
    }
    return GeneratorField::M(w);
}

GeneratorField D() { return GeneratorField::D(1.0); }

GeneratorField K(int mu)
{
    FourVector c{};
    c[mu] = -1.0;
    return GeneratorField::K(c);
}

} // namespace algebra

BracketFit fit_generator(const std::vector<FourVector>& probes, const std::vector<FourVector>& values)
{
    if (probes.size() != values.size() || probes.size() < 4)
        throw InvalidArgument("fit_generator: need matching probe/value sets of size >= 4");
    const Eigen::Index rows = 4 * static_cast<Eigen::Index>(probes.size());
    Eigen::MatrixXd A(rows, 15);
    Eigen::VectorXd y(rows);
    for (int k = 0; k < 15; ++k) {
        Eigen::Matrix<double, 15, 1> e = Eigen::Matrix<double, 15, 1>::Zero();
        e(k) = 1.0;
        GeneratorField basis = GeneratorField::from_params(e);
        for (std::size_t i = 0; i < probes.size(); ++i) {
            FourVector u = killing_field(basis, probes[i]);
            for (int mu = 0; mu < 4; ++mu)
                A(4 * static_cast<Eigen::Index>(i) + mu, k) = u[mu];
        }
    }
    for (std::size_t i = 0; i < values.size(); ++i)
        for (int mu = 0; mu < 4; ++mu)
            y(4 * static_cast<Eigen::Index>(i) + mu) = values[i][mu];

    Eigen::VectorXd theta = A.colPivHouseholderQr().solve(y);
    BracketFit out;
    out.field = GeneratorField::from_params(theta);
    out.residual = rows ? (A * theta - y).cwiseAbs().maxCoeff() : 0.0;
    return out;
}

BracketFit lie_bracket(const GeneratorField& g1, const GeneratorField& g2, const std::vector<FourVector>& probes)
{
    std::vector<FourVector> vals;
    vals.reserve(probes.size());
    for (const auto& x : probes) {
        Eigen::Vector4d u1 = vec(killing_field(g1, x)), u2 = vec(killing_field(g2, x));
        vals.push_back(fv(killing_jacobian(g2, x) * u1 - killing_jacobian(g1, x) * u2));
    }
    BracketFit fit = fit_generator(probes, vals);
    if (fit.residual > 1e-8)
        throw FitFailure("lie_bracket: bracket does not lie in the conformal algebra");
    return fit;
}

std::vector<BracketRelation> bracket_table(const std::vector<FourVector>& probes, bool kp_literal)
{
    using namespace algebra;
    auto g = [](int m, int n) { return m == n ? kMetric[m] : 0.0; };
    std::vector<BracketRelation> out;

    auto rel = [&](const std::string& name, auto&& body) {
        BracketRelation r{name};
        body([&](const GeneratorField& x, const GeneratorField& y, const GeneratorField& expect) {
            BracketFit f = lie_bracket(x, y, probes);
            r.max_residual = std::max(r.max_residual, f.residual);
            r.max_error = std::max(r.max_error, (f.field.params() - expect.params()).cwiseAbs().maxCoeff());
        });
        out.push_back(r);
    };
    GeneratorField zero;

    rel("[P,P]=0", [&](auto&& chk) {
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n)
                chk(P(m), P(n), zero);
    });
    rel("[P,M]=g P - g P", [&](auto&& chk) {
        for (int a = 0; a < 4; ++a)
            for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n)
                    chk(P(a), M(m, n), P(n) * g(a, m) - P(m) * g(a, n));
    });
    rel("[P,D]=P", [&](auto&& chk) {
        for (int m = 0; m < 4; ++m)
            chk(P(m), D(), P(m));
    });
    rel(kp_literal ? "[K,P]=2(gD+M)" : "[K,P]=2(gD-M)", [&](auto&& chk) {
        double s = kp_literal ? 1.0 : -1.0;
        for (int n = 0; n < 4; ++n)
            for (int m = 0; m < 4; ++m)
                chk(K(n), P(m), (D() * g(m, n) + M(m, n) * s) * 2.0);
    });
    rel("[M,M]", [&](auto&& chk) {
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n)
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b)
                        chk(M(m, n), M(a, b),
                            M(n, a) * g(m, b) + M(m, b) * g(n, a) - M(n, b) * g(m, a) - M(m, a) * g(n, b));
    });
    rel("[M,D]=0", [&](auto&& chk) {
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n)
                chk(M(m, n), D(), zero);
    });
    rel("[K,M]=g K - g K", [&](auto&& chk) {
        for (int a = 0; a < 4; ++a)
            for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n)
                    chk(K(a), M(m, n), K(n) * g(a, m) - K(m) * g(a, n));
    });
    rel("[D,D]=0", [&](auto&& chk) { chk(D(), D(), zero); });
    rel("[D,K]=K", [&](auto&& chk) {
        for (int m = 0; m < 4; ++m)
            chk(D(), K(m), K(m));
    });
    rel("[K,K]=0", [&](auto&& chk) {
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n)
                chk(K(m), K(n), zero);
    });
    return out;
}

// ---- pseudo-orthogonal picture ----

double PseudoOrthoPoint::quadric() const
{
    double s = 0;
    for (int i = 0; i < 6; ++i)
        s += kMetric6[i] * xi[i] * xi[i];
    return s;
}

PseudoOrthoPoint pseudo_ortho_embed(const FourVector& x)
{
    require_finite(x, "pseudo_ortho_embed");
    double q = minkowski_square(x);
    return {{x.x0, x.x1, x.x2, x.x3, 0.5 * (1.0 + q), 0.5 * (1.0 - q)}};
}

FourVector pseudo_ortho_project(const PseudoOrthoPoint& p, double eps)
{
    double scale = 0;
    for (double v : p.xi)
        scale = std::max(scale, std::abs(v));
    double xp = p.xi_plus();
    if (!(std::abs(xp) > eps * std::max(1.0, scale)))
        throw ChartBoundary("pseudo_ortho_project: xi^4 + xi^5 = 0");
    return FourVector{p.xi[0], p.xi[1], p.xi[2], p.xi[3]} / xp;
}

namespace {

PseudoOrthoPoint rotate(PseudoOrthoPoint p, int i, int j, double c, double s)
{
    // xi_i' = c xi_i - s xi_j ; xi_j' = s xi_i + c xi_j
    double a = p.xi[i], b = p.xi[j];
    p.xi[i] = c * a - s * b;
    p.xi[j] = s * a + c * b;
    return p;
}

PseudoOrthoPoint hyper(PseudoOrthoPoint p, int i, int j, double ch, double sh)
{
    double a = p.xi[i], b = p.xi[j];
    p.xi[i] = ch * a + sh * b;
    p.xi[j] = sh * a + ch * b;
    return p;
}

} // namespace

PseudoOrthoPoint pseudo_rotation(Plane plane, double angle, const PseudoOrthoPoint& p)
{
    switch (plane) {
    case Plane::T41:
        return rotate(p, 1, 4, std::cos(angle), std::sin(angle));
    case Plane::T05:
        // orientation chosen so that T_05(pi/2) carries D_1 onto V_+
        return rotate(p, 0, 5, std::cos(angle), -std::sin(angle));
    case Plane::T10:
        return hyper(p, 0, 1, std::cosh(angle), std::sinh(angle));
    case Plane::T04:
        return hyper(p, 0, 4, std::cosh(angle), std::sinh(angle));
    case Plane::T54:
        return hyper(p, 4, 5, std::cosh(angle), -std::sinh(angle));
    }
    return p;
}

PseudoOrthoPoint pseudo_rotation_inverse(Plane plane, double angle, const PseudoOrthoPoint& p)
{
    return pseudo_rotation(plane, -angle, p);
}

PseudoOrthoPoint conjugated_boost(double s, const PseudoOrthoPoint& p)
{
    const double h = M_PI / 2;
    return pseudo_rotation(Plane::T41, h, pseudo_rotation(Plane::T10, s, pseudo_rotation_inverse(Plane::T41, h, p)));
}

FourVector induced_field(int a, int b, const FourVector& x)
{
    if (a < 0 || a > 5 || b < 0 || b > 5)
        throw InvalidArgument("induced_field: index out of range");
    PseudoOrthoPoint p = pseudo_ortho_embed(x);
    std::array<double, 6> d{};
    d[b] += kMetric6[a] * p.xi[a];
    d[a] -= kMetric6[b] * p.xi[b];
    // x = xi/xi_+ with xi_+ = 1 on the embedded section
    double dplus = d[4] + d[5];
    return FourVector{d[0], d[1], d[2], d[3]} - dplus * x;
}

VerificationReport inversion_identities_check(int samples, std::uint64_t seed)
{
    if (samples < 100)
        throw InvalidArgument("inversion_identities_check: samples must be >= 100");
    VerificationReport rep;
    rep.suite = "conformal.inversion";
    Rng rng(seed);
    const ConformalMap rho = ConformalMap::inversion();
    const FourVector e0{1, 0, 0, 0}, e1{0, 1, 0, 0};
    const Region D1 = Region::double_cone();

    int bad_v = 0, bad_v_back = 0, bad_w = 0, bad_w_back = 0;
    double invol = 0, dil = 0, sc_plus = 0, sc_minus = 0;
    for (int i = 0; i < samples; ++i) {
        FourVector y = rng.in_region(D1, 1.0);
        if (!contains(Region::forward_cone(), apply(rho, y - e0) - 0.5 * e0))
            ++bad_v;
        if (!contains(Region::right_wedge(), apply(rho, y + e1) - 0.5 * e1))
            ++bad_w;

        FourVector v = rng.in_region(Region::forward_cone(), 4.0) + 0.5 * e0;
        if (!contains(D1, apply(rho, v) + e0))
            ++bad_v_back;
        FourVector w = rng.in_region(Region::right_wedge(), 4.0) + 0.5 * e1;
        if (std::abs(minkowski_square(w)) > 1e-6 && !contains(D1, apply(rho, w) - e1))
            ++bad_w_back;

        FourVector x = rng.four_vector(-2, 2);
        if (std::abs(minkowski_square(x)) < 1e-3)
            continue;
        // rounding in x/(x,x) is amplified by |x|^2/|(x,x)| near the light cone
        const double kappa = std::max(1.0, x.euclidean_norm() * x.euclidean_norm() / std::abs(minkowski_square(x)));
        invol = std::max(invol, (apply(rho, apply(rho, x)) - x).euclidean_norm() / kappa);

        double lam = rng.uniform(0.2, 5.0);
        FourVector a = apply_chain({rho, ConformalMap::dilation(lam), rho}, x);
        FourVector b = apply(ConformalMap::dilation(1.0 / lam), x);
        dil = std::max(dil, (a - b).euclidean_norm() / std::max(1.0, b.euclidean_norm()) / kappa);

        FourVector c = 0.3 * rng.four_vector(-1, 1);
        try {
            FourVector lhs = apply_chain({rho, ConformalMap::translation(c), rho}, x);
            FourVector rp = apply(ConformalMap::special_conformal(c), x);
            FourVector rm = apply(ConformalMap::special_conformal(-c), x);
            double sc = std::max(1.0, lhs.euclidean_norm());
            sc_plus = std::max(sc_plus, (lhs - rp).euclidean_norm() / sc);
            sc_minus = std::max(sc_minus, (lhs - rm).euclidean_norm() / sc);
        } catch (const SingularPoint&) {
        }
    }
    rep.exact("rho(D1-e0) in V+ + e0/2", bad_v == 0, bad_v, 0);
    rep.exact("rho(V+ + e0/2) in D1-e0", bad_v_back == 0, bad_v_back, 0);
    rep.exact("rho(D1+e1) in W_R + e1/2", bad_w == 0, bad_w, 0);
    rep.exact("rho(W_R + e1/2) in D1+e1", bad_w_back == 0, bad_w_back, 0);
    rep.at_most("rho o rho = id", invol, 1e-12, "error over the conditioning |x|^2/|(x,x)|");
    rep.at_most("rho o dil(l) o rho = dil(1/l)", dil, 1e-12);
    bool plus = sc_plus <= sc_minus;
    rep.at_most("rho o T(c) o rho = SC(sign c)", plus ? sc_plus : sc_minus, 1e-10,
                plus ? "sign +1: matches the (x-(x,x)c)/(1-2(x,c)+(x,x)(c,c)) form"
                     : "sign -1: opposite of the corollary form");
    rep.annotate("rho_translation_rho_sign", plus ? "+1" : "-1");
    return rep;
}

VerificationReport pseudo_ortho_correspondence_check(const std::vector<FourVector>& probes)
{
    using namespace algebra;
    VerificationReport rep;
    rep.suite = "conformal.pseudo_ortho";
    auto fit_of = [&](auto&& field) {
        std::vector<FourVector> v;
        for (const auto& x : probes)
            v.push_back(field(x));
        return fit_generator(probes, v);
    };
    double res = 0, err = 0;
    for (int mu = 0; mu < 4; ++mu) {
        auto ft = fit_of([&](const FourVector& x) { return induced_field(mu, 5, x) - induced_field(mu, 4, x); });
        auto fk = fit_of([&](const FourVector& x) { return induced_field(mu, 5, x) + induced_field(mu, 4, x); });
        res = std::max({res, ft.residual, fk.residual});
        err = std::max(err, (ft.field.params() + P(mu).params()).cwiseAbs().maxCoeff());
        err = std::max(err, (fk.field.params() - K(mu).params()).cwiseAbs().maxCoeff());
        for (int nu = mu + 1; nu < 4; ++nu) {
            auto fm = fit_of([&](const FourVector& x) { return induced_field(mu, nu, x); });
            res = std::max(res, fm.residual);
            err = std::max(err, (fm.field.params() - M(mu, nu).params()).cwiseAbs().maxCoeff());
        }
    }
    auto fd = fit_of([&](const FourVector& x) { return induced_field(4, 5, x); });
    res = std::max(res, fd.residual);
    err = std::max(err, (fd.field.params() - D().params()).cwiseAbs().maxCoeff());
    rep.at_most("J fit residual", res, 1e-8);
    rep.at_most("J_{mu5}-J_{mu4}=-P, J_{mu5}+J_{mu4}=K, J_{45}=D, J_{mn}=M", err, 1e-8);
    rep.annotate("pseudo_ortho_P_sign", "-1");
    return rep;
}

} // namespace modflow
