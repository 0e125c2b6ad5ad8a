#include "singdyn/vortex.hpp"

#include <algorithm>
#include <cmath>

#include "singdyn/csv.hpp"
#include "singdyn/integrate.hpp"

namespace singdyn {

namespace {

double lap_scalar(const HPoly& p) { return laplacian(p).coeff(0); }

HPoly quadratic(double c20, double c11, double c02) {
    return HPoly(2, {c20, c11, c02});
}

}  // namespace

CascadeBundle build_cascade(const VortexState& s, const DriftField& drift, double t,
                            double c10_floor) {
    if (!(s.mu > 0.0)) throw Error("vortex: mu must be positive");
    if (!(std::abs(s.c1_0) > c10_floor) || s.c1_0 == 0.0)
        throw DegenerateVortexError("vortex: |c1_0| fell below threshold");

    const double mu = s.mu;
    const double c10 = s.c1_0;
    const double sph = std::sin(s.phi), cph = std::cos(s.phi);
    const double c010 = c10 * sph, c001 = c10 * cph;
    const double sigma = s.sigma, c002 = s.c0_02;

    const double w20 = drift.coeff_a(2, t), w11 = drift.coeff_b(2, t);
    const double w20d = drift.coeff_a_dot(2, t), w11d = drift.coeff_b_dot(2, t);

    CascadeBundle b;
    b.p0_1 = HPoly::linear({c010, c001});
    b.d = 5.0 * c10 * c10 + 2.0 * c010 * c010;
    b.dprime = std::cos(2.0 * s.phi) - 6.0;
    if (!(b.d > 0.0)) throw DegenerateVortexError("vortex: d <= 0");

    // quadratic coefficients of the smooth part, algebraic in the state
    const double c020 = (-2.0 * sigma * c010 * c001 +
                         c002 * (5.0 * c010 * c010 + 7.0 * c001 * c001) -
                         2.0 * c10 * c10 * w20 / mu) /
                        b.d;
    const double c011 = (-sigma * (5.0 * c001 * c001 - 7.0 * c010 * c010) -
                         24.0 * c002 * c010 * c001 + 4.0 * c010 * c001 * w20 / mu -
                         (7.0 * c010 * c010 + 5.0 * c001 * c001) * w11 / mu) /
                        (6.0 * b.d);
    b.p0_2 = quadratic(c020, c011, c002);
    b.p0_3 = HPoly(3, {s.z[0], s.z[1], s.z[2], s.z[3]});
    b.p1_1 = HPoly::linear(s.grad_p1_1);
    b.p1_2 = quadratic(s.z[4], s.z[5], s.z[6]);

    // psi0 = A^{-1} (f1, -f2); det A = c1_0^2 exactly in this parametrization
    const double detA = c010 * c010 + c001 * c001;
    const double f1 = 5.0 * c011 + w11 / mu;
    const double f2 = 5.0 * (c020 - c002) + 2.0 * w20 / mu;
    b.psi0 = {(c001 * f1 + c010 * f2) / detA, (c010 * f1 - c001 * f2) / detA};

    const Vec2 gq1 = -2.0 / c10 * s.grad_p1_1 - b.psi0;
    b.Q1 = HPoly::linear(gq1);

    b.G1_2 = -2.0 * mu * (c10 * b.p0_2 + b.p1_1 * b.p0_1);
    b.G1_3 = -2.0 * mu * (c10 * b.p0_3 + b.p0_2 * b.p1_1 + b.p0_1 * b.p1_2);

    const double lap_p02 = lap_scalar(b.p0_2);
    b.c1_0_dot = -4.5 * mu * c10 * lap_p02;

    const Vec2 gp01{c010, c001};
    b.theta0 = -b.c1_0_dot + 6.0 * mu * dot(gp01, s.grad_p1_1) + lap_scalar(b.G1_2);

    const HPoly W2 = drift.term(2, t);
    const HPoly W3 = drift.term(3, t);
    const Vec2 V0 = -6.0 * mu * gp01;
    const HPolyVec V1 = grad(W2);
    const HPolyVec V2 = grad(W3);

    b.R3 = -2.0 * (4.0 * (b.p0_1 * b.p1_2) + 7.0 * c10 * b.p0_3 + 7.0 * (b.p1_1 * b.p0_2) +
                   b.Q1 * (b.p0_1 * (5.0 * b.p1_1 + c10 * b.Q1) + 11.0 * c10 * b.p0_2) +
                   (1.0 / mu) * (W2 * (b.p1_1 + 2.0 * c10 * b.Q1) + 1.5 * c10 * W3));

    const double gq1_dot_gp01 = dot(gq1, gp01);
    const HPolyVec gG12 = grad(b.G1_2);
    b.L1 = b.Q1 * (c10 * gq1_dot_gp01 + 2.0 * b.theta0 / mu) +
           0.5 * c10 * dot(gq1, gq1) * b.p0_1 +
           (1.0 / mu) * dot(gq1, gG12 - 0.5 * (b.p1_1 * HPolyVec(HPoly::constant(V0.x1),
                                                                HPoly::constant(V0.x2)) +
                                               c10 * V1)) +
           (1.0 / mu) * (laplacian(b.G1_3) - dot(V0, grad(b.p1_2)) -
                         dot(s.grad_p1_1, V1));

    const double r30 = b.R3.coeff(0), r21 = b.R3.coeff(1);
    const double r12 = b.R3.coeff(2), r03 = b.R3.coeff(3);
    b.Fvec = {r03 - r21, r30 - r12};

    const Vec2 gp01p = perp(gp01);
    const double c10cubed = c10 * c10 * c10;
    const double q20_m_q02 = dot(b.Fvec, gp01p) / (4.0 * c10cubed);
    const double q11 = -dot(b.Fvec, gp01) / (4.0 * c10cubed);

    // q_02-free part of the quartic S-slice feeds the M polynomial
    const HPoly Q2_free = quadratic(q20_m_q02, q11, 0.0);
    const HPoly r2 = r2_poly();
    const HPoly G0_4_free =
        -mu * (2.0 * (b.p0_1 * b.p0_3) + b.p0_2 * b.p0_2 +
               r2 * (b.p1_1 * b.p1_1 + 2.0 * c10 * b.p1_2) +
               (r2 * b.Q1) * (2.0 * c10 * b.p1_1) + (r2 * Q2_free) * (c10 * c10));
    b.M = dot(V0, grad(b.p0_3)) + dot(V1, grad(b.p0_2)) + dot(gp01, V2) -
          laplacian(G0_4_free);

    const double M20 = b.M.coeff(0), M11 = b.M.coeff(1), M02 = b.M.coeff(2);
    // calF1 = mu^-1 D omega2_dot - Mmat grad p0_1
    b.calF1 = {(2.0 * c010 * w20d + c001 * w11d) / mu -
                   ((7.0 * M20 - 5.0 * M02) * c010 + 6.0 * M11 * c001),
               (-2.0 * c001 * w20d + c010 * w11d) / mu -
                   (6.0 * M11 * c010 + (7.0 * M02 - 5.0 * M20) * c001)};

    const double c10sq = c10 * c10;
    b.q_02 = (7.0 * mu * sigma * sigma + dot(b.calF1, gp01) / (2.0 * c10sq)) /
             (16.0 * mu * c10sq);
    b.Q2 = quadratic(q20_m_q02 + b.q_02, q11, b.q_02);
    b.G0_4 = G0_4_free - (mu * b.q_02 * c10sq) * (r2 * r2);

    const double l10 = b.L1.coeff(0), l01 = b.L1.coeff(1);
    b.calF = {r30 + l10 -
                  dot(b.Fvec, 4.0 * c010 * gp01p + c001 * gp01) / (4.0 * c10sq),
              r03 + l01 -
                  dot(b.Fvec, 2.0 * c001 * gp01p + c010 * gp01) / (4.0 * c10sq)};
    return b;
}

VortexDeriv vortex_rhs(const VortexState& s, const DriftField& drift, double t,
                       double c10_floor) {
    const CascadeBundle b = build_cascade(s, drift, t, c10_floor);
    const double mu = s.mu;
    const Vec2 gp01 = grad_linear(b.p0_1);

    VortexDeriv dv;
    dv.a_dot = -6.0 * mu * gp01 - Vec2{drift.coeff_a(1, t), drift.coeff_b(1, t)};
    dv.phi_dot = -7.0 * mu * s.sigma;
    dv.c1_0_dot = b.c1_0_dot;
    const double lap_p02 = lap_scalar(b.p0_2);
    const double c10sq = s.c1_0 * s.c1_0;
    dv.sigma_dot = 7.0 * mu * s.sigma * lap_p02 + dot(b.calF1, perp(gp01)) / c10sq;
    dv.c0_02_dot = -(7.0 * mu * s.sigma * s.sigma + b.M.coeff(2) +
                     dot(b.calF1, gp01) / (2.0 * c10sq));
    dv.grad_p1_1_dot = mu * b.calF - 6.0 * mu * s.c1_0 * b.q_02 * gp01;
    return dv;
}

double c1_0_dot_closed_form(const VortexState& s, const DriftField& drift, double t) {
    const double mu = s.mu;
    const double dprime = std::cos(2.0 * s.phi) - 6.0;
    const double w20 = drift.coeff_a(2, t);
    return mu * s.c1_0 * (9.0 / dprime) *
           (-s.sigma * std::sin(2.0 * s.phi) + 12.0 * s.c0_02 - 2.0 * w20 / mu);
}

Vec2 closure_identity_residual(const VortexState& s, const CascadeBundle& b,
                               double sigma_dot) {
    const double mu = s.mu;
    const Vec2 gp01 = grad_linear(b.p0_1);
    const double lap_p02 = lap_scalar(b.p0_2);
    const double c10sq = s.c1_0 * s.c1_0;
    return (sigma_dot - 7.0 * mu * s.sigma * lap_p02) * perp(gp01) +
           (32.0 * mu * c10sq * b.q_02 - 14.0 * mu * s.sigma * s.sigma) * gp01 -
           b.calF1;
}

VortexTrajectory run_vortex(const VortexState& s0, const DriftField& drift,
                            double t0, double t1, double dt,
                            const VortexRunOptions& options) {
    const double floor = options.c10_rel_floor * std::abs(s0.c1_0);
    VortexState work = s0;

    std::vector<double> y{s0.a.x1,         s0.a.x2,         s0.phi,  s0.c1_0,
                          s0.sigma,        s0.c0_02,        s0.grad_p1_1.x1,
                          s0.grad_p1_1.x2};
    const auto unpack = [&](const std::vector<double>& yy, VortexState& st) {
        st.a = {yy[0], yy[1]};
        st.phi = yy[2];
        st.c1_0 = yy[3];
        st.sigma = yy[4];
        st.c0_02 = yy[5];
        st.grad_p1_1 = {yy[6], yy[7]};
    };

    VortexTrajectory traj;
    traj.dt = dt;
    const RhsFn f = [&](double t, const std::vector<double>& yy, std::vector<double>& dy) {
        for (double v : yy)
            if (!std::isfinite(v)) throw NonFiniteError(t);  // stage blow-up
        unpack(yy, work);
        const VortexDeriv d = vortex_rhs(work, drift, t, floor);
        dy[0] = d.a_dot.x1;
        dy[1] = d.a_dot.x2;
        dy[2] = d.phi_dot;
        dy[3] = d.c1_0_dot;
        dy[4] = d.sigma_dot;
        dy[5] = d.c0_02_dot;
        dy[6] = d.grad_p1_1_dot.x1;
        dy[7] = d.grad_p1_1_dot.x2;
    };
    const ObserverFn obs = [&](double t, const std::vector<double>& yy) {
        VortexSample smp;
        smp.t = t;
        smp.state = s0;
        unpack(yy, smp.state);
        traj.samples.push_back(std::move(smp));
    };
    rk4_integrate(y, t0, t1, dt, f, obs);
    return traj;
}

// --------------------------------------------------------------------------
// Defining-equation oracle over graded Taylor slices.
// --------------------------------------------------------------------------
namespace {

using Series = std::vector<HPoly>;  // entry k is the degree-k slice

Series make_series(int maxdeg) {
    Series s;
    s.reserve(maxdeg + 1);
    for (int k = 0; k <= maxdeg; ++k) s.emplace_back(k);
    return s;
}

Series smul(const Series& a, const Series& b, int maxdeg) {
    Series r = make_series(maxdeg);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            if (i + j <= static_cast<size_t>(maxdeg)) r[i + j] += a[i] * b[j];
    return r;
}

Series sadd(Series a, const Series& b) {
    while (a.size() < b.size()) a.emplace_back(static_cast<int>(a.size()));
    for (size_t k = 0; k < b.size(); ++k) a[k] += b[k];
    return a;
}

Series sneg(Series a) {
    for (auto& p : a) p = -p;
    return a;
}

Series sscale(Series a, double c) {
    for (auto& p : a) p *= c;
    return a;
}

struct VSeries {
    Series u, v;
};

VSeries sgrad(const Series& a) {
    // gradient of sum a_k: degree-k vector slice comes from a_{k+1}
    const int maxdeg = static_cast<int>(a.size()) - 2;
    VSeries g{make_series(std::max(maxdeg, 0)), make_series(std::max(maxdeg, 0))};
    for (int k = 0; k <= maxdeg; ++k) {
        g.u[k] = dx1(a[k + 1]);
        g.v[k] = dx2(a[k + 1]);
    }
    return g;
}

Series slap(const Series& a) {
    const int maxdeg = static_cast<int>(a.size()) - 3;
    Series r = make_series(std::max(maxdeg, 0));
    for (int k = 0; k <= maxdeg; ++k) r[k] = laplacian(a[k + 2]);
    return r;
}

Series sdotv(const VSeries& a, const VSeries& b, int maxdeg) {
    return sadd(smul(a.u, b.u, maxdeg), smul(a.v, b.v, maxdeg));
}

// order 2..5 slices of the singular defining polynomial; V0, c10_dot and
// p11_dot are supplied by the caller (either exact derivatives or centered
// differences along a trajectory)
Series d1_series(const VortexState& st, const CascadeBundle& b,
                 const DriftField& drift, double t, Vec2 V0, double c10_dot,
                 const HPoly& p11_dot) {
    const double mu = st.mu;
    const int maxd = 5;

    Series c0 = make_series(3);
    c0[0] = HPoly::constant(0.5 / mu);
    c0[1] = b.p0_1;
    c0[2] = b.p0_2;
    c0[3] = b.p0_3;
    Series c1 = make_series(2);
    c1[0] = HPoly::constant(st.c1_0);
    c1[1] = b.p1_1;
    c1[2] = b.p1_2;
    Series S = make_series(4);
    S[2] = r2_poly();
    S[3] = r2_poly() * b.Q1;
    S[4] = r2_poly() * b.Q2;

    VSeries V{make_series(2), make_series(2)};
    V.u[0] = HPoly::constant(V0.x1);
    V.v[0] = HPoly::constant(V0.x2);
    const HPolyVec V1 = grad(drift.term(2, t));
    const HPolyVec V2 = grad(drift.term(3, t));
    V.u[1] = V1.u;
    V.v[1] = V1.v;
    V.u[2] = V2.u;
    V.v[2] = V2.v;

    // 1 - 2 mu c0 has zero constant part by construction
    Series one_m = make_series(3);
    one_m[1] = -2.0 * mu * b.p0_1;
    one_m[2] = -2.0 * mu * b.p0_2;
    one_m[3] = -2.0 * mu * b.p0_3;
    const Series G1 = smul(one_m, c1, 4);

    const VSeries gS = sgrad(S);
    const Series lapS = slap(S);
    const Series kappa =
        sadd(sscale(smul(S, lapS, maxd), 2.0), sneg(sdotv(gS, gS, maxd)));

    Series c1dot = make_series(2);
    c1dot[0] = HPoly::constant(c10_dot);
    c1dot[1] = p11_dot;
    const VSeries gc1 = sgrad(c1);
    const VSeries gG1 = sgrad(G1);

    const Series inner = sadd(sadd(sneg(slap(G1)), c1dot), sdotv(V, gc1, 3));
    Series D1 = sscale(smul(smul(S, S, maxd), inner, maxd), 4.0);
    const Series flux = sadd(sscale(smul(sdotv(V, gS, maxd), c1, maxd), 0.5),
                             sneg(sdotv(gS, gG1, maxd)));
    D1 = sadd(D1, sscale(smul(S, flux, maxd), 4.0));
    D1 = sadd(D1, sneg(smul(kappa, G1, maxd)));
    return D1;
}

}  // namespace

double ConsistencyReport::max_smooth(int order) const {
    double m = 0.0;
    for (const auto& row : smooth) m = std::max(m, row[order]);
    return m;
}

double ConsistencyReport::max_singular(int order) const {
    double m = 0.0;
    for (const auto& row : singular) m = std::max(m, row[order - 2]);
    return m;
}

ConsistencyReport consistency_residuals(const VortexTrajectory& traj,
                                        const DriftField& drift) {
    const auto& smp = traj.samples;
    if (smp.size() < 3)
        throw Error("consistency_residuals: trajectory too short for centered differences");
    const double dt = traj.dt;
    for (size_t i = 1; i < smp.size(); ++i)
        if (std::abs((smp[i].t - smp[i - 1].t) - dt) > 1e-12 * std::max(1.0, std::abs(dt)))
            throw Error("consistency_residuals: samples are not uniformly spaced");

    // cascade data per sample (coefficient series to difference in time)
    std::vector<CascadeBundle> bundles;
    bundles.reserve(smp.size());
    for (const auto& s : smp) bundles.push_back(build_cascade(s.state, drift, s.t));

    ConsistencyReport rep;
    const double mu = smp.front().state.mu;
    for (size_t i = 1; i + 1 < smp.size(); ++i) {
        const VortexState& st = smp[i].state;
        const CascadeBundle& b = bundles[i];
        const double t = smp[i].t;
        const auto fd = [&](auto&& get) { return (get(i + 1) - get(i - 1)) / (2.0 * dt); };

        // finite-difference time derivatives of the stored coefficient series
        const Vec2 a_dot{fd([&](size_t j) { return smp[j].state.a.x1; }),
                         fd([&](size_t j) { return smp[j].state.a.x2; })};
        const double c10_dot = fd([&](size_t j) { return smp[j].state.c1_0; });
        const HPoly p01_dot = HPoly::linear(
            {fd([&](size_t j) { return bundles[j].p0_1.coeff(0); }),
             fd([&](size_t j) { return bundles[j].p0_1.coeff(1); })});
        const HPoly p02_dot =
            quadratic(fd([&](size_t j) { return bundles[j].p0_2.coeff(0); }),
                      fd([&](size_t j) { return bundles[j].p0_2.coeff(1); }),
                      fd([&](size_t j) { return bundles[j].p0_2.coeff(2); }));
        const HPoly p11_dot = HPoly::linear(
            {fd([&](size_t j) { return smp[j].state.grad_p1_1.x1; }),
             fd([&](size_t j) { return smp[j].state.grad_p1_1.x2; })});

        // graded fields at sample i
        Series c0 = make_series(3);
        c0[0] = HPoly::constant(0.5 / mu);
        c0[1] = b.p0_1;
        c0[2] = b.p0_2;
        c0[3] = b.p0_3;
        Series c1 = make_series(2);
        c1[0] = HPoly::constant(st.c1_0);
        c1[1] = b.p1_1;
        c1[2] = b.p1_2;
        Series S = make_series(4);
        S[2] = r2_poly();
        S[3] = r2_poly() * b.Q1;
        S[4] = r2_poly() * b.Q2;

        const Vec2 V0 = a_dot + Vec2{drift.coeff_a(1, t), drift.coeff_b(1, t)};
        VSeries V{make_series(2), make_series(2)};
        V.u[0] = HPoly::constant(V0.x1);
        V.v[0] = HPoly::constant(V0.x2);
        const HPolyVec V1 = grad(drift.term(2, t));
        const HPolyVec V2 = grad(drift.term(3, t));
        V.u[1] = V1.u;
        V.v[1] = V1.v;
        V.u[2] = V2.u;
        V.v[2] = V2.v;

        const Series G0 = sadd(c0, sneg(sscale(
            sadd(smul(c0, c0, 4), smul(S, smul(c1, c1, 4), 4)), mu)));
        const Series D1 = d1_series(st, b, drift, t, V0, c10_dot, p11_dot);

        Series c0dot = make_series(2);
        c0dot[1] = p01_dot;
        c0dot[2] = p02_dot;
        const VSeries gc0 = sgrad(c0);
        const Series advect = sdotv(V, gc0, 2);
        const Series lapG0 = slap(G0);
        Series D0 = sadd(sadd(c0dot, advect), sneg(lapG0));

        rep.t.push_back(t);
        rep.smooth.push_back({D0[0].max_abs(), D0[1].max_abs(), D0[2].max_abs()});
        rep.singular.push_back(
            {D1[2].max_abs(), D1[3].max_abs(), D1[4].max_abs(), D1[5].max_abs()});

        const VortexDeriv dv = vortex_rhs(st, drift, t);
        const Vec2 cr = closure_identity_residual(st, b, dv.sigma_dot);
        rep.closure_identity.push_back(std::max(std::abs(cr.x1), std::abs(cr.x2)));
    }
    return rep;
}

std::array<HPoly, 4> singular_defect_slices(const VortexState& s,
                                            const DriftField& drift, double t,
                                            const VortexDeriv& deriv) {
    const CascadeBundle b = build_cascade(s, drift, t);
    const Vec2 V0 =
        deriv.a_dot + Vec2{drift.coeff_a(1, t), drift.coeff_b(1, t)};
    const Series D1 = d1_series(s, b, drift, t, V0, deriv.c1_0_dot,
                                HPoly::linear(deriv.grad_p1_1_dot));
    return {D1[2], D1[3], D1[4], D1[5]};
}

HPoly rotate_field(const HPoly& p, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    // p'(x) = p(R(-theta) x): substitute x1 -> c x1 + s x2, x2 -> -s x1 + c x2
    const HPoly U = HPoly::linear({c, s});
    const HPoly V = HPoly::linear({-s, c});
    const int n = p.degree();
    HPoly r(n);
    for (int j = 0; j <= n; ++j) {
        if (p.coeff(j) == 0.0) continue;
        HPoly term = HPoly::constant(p.coeff(j));
        HPoly acc(0);
        acc = term;
        for (int k = 0; k < n - j; ++k) acc = acc * U;
        for (int k = 0; k < j; ++k) acc = acc * V;
        r += acc;
    }
    return r;
}

VortexState rotate_state(const VortexState& s, double theta) {
    const double c = std::cos(theta), sn = std::sin(theta);
    const auto rot = [&](Vec2 v) {
        return Vec2{c * v.x1 - sn * v.x2, sn * v.x1 + c * v.x2};
    };
    // quadratic/cubic tensors come from the assembled cascade (zero drift)
    const CascadeBundle b = build_cascade(s, DriftField{}, 0.0);

    VortexState r = s;
    r.a = rot(s.a);
    const Vec2 g = rot(grad_linear(b.p0_1));
    r.phi = std::atan2(g.x1 / s.c1_0, g.x2 / s.c1_0);
    r.grad_p1_1 = rot(s.grad_p1_1);
    r.c0_02 = rotate_field(b.p0_2, theta).coeff(2);
    const HPoly p03r = rotate_field(b.p0_3, theta);
    const HPoly p12r = rotate_field(b.p1_2, theta);
    r.z = {p03r.coeff(0), p03r.coeff(1), p03r.coeff(2), p03r.coeff(3),
           p12r.coeff(0), p12r.coeff(1), p12r.coeff(2)};
    return r;
}

void write_vortex_csv(std::ostream& os, const VortexTrajectory& traj,
                      const DriftField& drift) {
    CsvWriter csv(os, {"t", "a1", "a2", "phi", "c1_0", "sigma", "c0_02",
                       "closure_res1", "closure_res2"});
    for (const auto& s : traj.samples) {
        const CascadeBundle b = build_cascade(s.state, drift, s.t);
        const VortexDeriv dv = vortex_rhs(s.state, drift, s.t);
        const Vec2 cr = closure_identity_residual(s.state, b, dv.sigma_dot);
        csv.row(std::vector<double>{s.t, s.state.a.x1, s.state.a.x2, s.state.phi,
                                    s.state.c1_0, s.state.sigma, s.state.c0_02,
                                    cr.x1, cr.x2});
    }
}

}  // namespace singdyn
