#include "m2s/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "m2s/errors.hpp"

namespace m2s {

namespace {

// Dormand-Prince 8(5,3) tableau from Hairer, Norsett & Wanner, "Solving
// Ordinary Differential Equations I" (DOP853).
constexpr double c2 = 0.526001519587677318785587544488e-01;
constexpr double c3 = 0.789002279381515978178381316732e-01;
constexpr double c4 = 0.118350341907227396726757197510e+00;
constexpr double c5 = 0.281649658092772603273242802490e+00;
constexpr double c6 = 0.333333333333333333333333333333e+00;
constexpr double c7 = 0.25e+00;
constexpr double c8 = 0.307692307692307692307692307692e+00;
constexpr double c9 = 0.651282051282051282051282051282e+00;
constexpr double c10 = 0.6e+00;
constexpr double c11 = 0.857142857142857142857142857142e+00;

constexpr double b1 = 5.42937341165687622380535766363e-2;
constexpr double b6 = 4.45031289275240888144113950566e0;
constexpr double b7 = 1.89151789931450038304281599044e0;
constexpr double b8 = -5.8012039600105847814672114227e0;
constexpr double b9 = 3.1116436695781989440891606237e-1;
constexpr double b10 = -1.52160949662516078556178806805e-1;
constexpr double b11 = 2.01365400804030348374776537501e-1;
constexpr double b12 = 4.47106157277725905176885569043e-2;

constexpr double a21 = 5.26001519587677318785587544488e-2;
constexpr double a31 = 1.97250569845378994544595329183e-2;
constexpr double a32 = 5.91751709536136983633785987549e-2;
constexpr double a41 = 2.95875854768068491816892993775e-2;
constexpr double a43 = 8.87627564304205475450678981324e-2;
constexpr double a51 = 2.41365134159266685502369798665e-1;
constexpr double a53 = -8.84549479328286085344864962717e-1;
constexpr double a54 = 9.24834003261792003115737966543e-1;
constexpr double a61 = 3.7037037037037037037037037037e-2;
constexpr double a64 = 1.70828608729473871279604482173e-1;
constexpr double a65 = 1.25467687566822425016691814123e-1;
constexpr double a71 = 3.7109375e-2;
constexpr double a74 = 1.70252211019544039314978060272e-1;
constexpr double a75 = 6.02165389804559606850219397283e-2;
constexpr double a76 = -1.7578125e-2;
constexpr double a81 = 3.70920001185047927108779319836e-2;
constexpr double a84 = 1.70383925712239993810214054705e-1;
constexpr double a85 = 1.07262030446373284651809199168e-1;
constexpr double a86 = -1.53194377486244017527936158236e-2;
constexpr double a87 = 8.27378916381402288758473766002e-3;
constexpr double a91 = 6.24110958716075717114429577812e-1;
constexpr double a94 = -3.36089262944694129406857109825e0;
constexpr double a95 = -8.68219346841726006818189891453e-1;
constexpr double a96 = 2.75920996994467083049415600797e1;
constexpr double a97 = 2.01540675504778934086186788979e1;
constexpr double a98 = -4.34898841810699588477366255144e1;
constexpr double a101 = 4.77662536438264365890433908527e-1;
constexpr double a104 = -2.48811461997166764192642586468e0;
constexpr double a105 = -5.90290826836842996371446475743e-1;
constexpr double a106 = 2.12300514481811942347288949897e1;
constexpr double a107 = 1.52792336328824235832596922938e1;
constexpr double a108 = -3.32882109689848629194453265587e1;
constexpr double a109 = -2.03312017085086261358222928593e-2;
constexpr double a111 = -9.3714243008598732571704021658e-1;
constexpr double a114 = 5.18637242884406370830023853209e0;
constexpr double a115 = 1.09143734899672957818500254654e0;
constexpr double a116 = -8.14978701074692612513997267357e0;
constexpr double a117 = -1.85200656599969598641566180701e1;
constexpr double a118 = 2.27394870993505042818970056734e1;
constexpr double a119 = 2.49360555267965238987089396762e0;
constexpr double a1110 = -3.0467644718982195003823669022e0;
constexpr double a121 = 2.27331014751653820792359768449e0;
constexpr double a124 = -1.05344954667372501984066689879e1;
constexpr double a125 = -2.00087205822486249909675718444e0;
constexpr double a126 = -1.79589318631187989172765950534e1;
constexpr double a127 = 2.79488845294199600508499808837e1;
constexpr double a128 = -2.85899827713502369474065508674e0;
constexpr double a129 = -8.87285693353062954433549289258e0;
constexpr double a1210 = 1.23605671757943030647266201528e1;
constexpr double a1211 = 6.43392746015763530355970484046e-1;

// 5th-order and 3rd-order embedded error weights.
constexpr double bhh1 = 0.244094488188976377952755905512e+00;
constexpr double bhh2 = 0.733846688281611857341361741547e+00;
constexpr double bhh3 = 0.220588235294117647058823529412e-01;
constexpr double er1 = 0.1312004499419488073250102996e-01;
constexpr double er6 = -0.1225156446376204440720569753e+01;
constexpr double er7 = -0.4957589496572501915214079952e+00;
constexpr double er8 = 0.1664377182454986536961530415e+01;
constexpr double er9 = -0.3503288487499736816886487290e+00;
constexpr double er10 = 0.3341791187130174790297318841e+00;
constexpr double er11 = 0.8192320648511571246570742613e-01;
constexpr double er12 = -0.2235530786388629525884427845e-01;

constexpr double kUround = 2.3e-16;

struct Workspace {
    // k1..k10 plus two scratch vectors, all sized to the state dimension
    ComplexVec k1, k2, k3, k4, k5, k6, k7, k8, k9, k10, stage, ynew;

    explicit Workspace(std::size_t dim)
        : k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim),
          k8(dim), k9(dim), k10(dim), stage(dim), ynew(dim) {}
};

}  // namespace

IntegratorStats integrate_dop853(const OdeRhs& rhs, double t0, double t1,
                                 ComplexVec& y, const IntegratorOptions& options,
                                 const OdeObserver& observer) {
    if (!(t1 > t0)) throw InvalidArgument("integration requires t1 > t0");
    if (!(options.rtol > 0.0) || !(options.atol > 0.0))
        throw InvalidArgument("tolerances must be positive");

    const std::size_t dim = y.size();
    Workspace ws(dim);
    IntegratorStats stats;
    const double hmax = t1 - t0;
    const double expo1 = 1.0 / 8.0 - options.beta * 0.2;
    const double facc_grow = 1.0 / options.max_growth;
    const double facc_shrink = options.max_shrink;
    double facold = 1.0e-4;

    double t = t0;
    if (observer) observer(t, y);

    auto scale_at = [&](std::size_t i, const ComplexVec& ynew) {
        return options.atol +
               options.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
    };

    rhs(t, y, ws.k1);
    ++stats.rhs_evaluations;

    // Initial step size: preliminary estimate from the first derivative,
    // refined with an explicit Euler probe (Hairer's HINIT).
    double h;
    {
        double dnf = 0.0, dny = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            double sk = options.atol + options.rtol * std::abs(y[i]);
            double q = std::abs(ws.k1[i]) / sk;
            dnf += q * q;
            q = std::abs(y[i]) / sk;
            dny += q * q;
        }
        h = (dnf <= 1e-10 || dny <= 1e-10) ? 1.0e-6 : std::sqrt(dny / dnf) * 0.01;
        h = std::min(h, hmax);
        for (std::size_t i = 0; i < dim; ++i)
            ws.stage[i] = y[i] + h * ws.k1[i];
        rhs(t + h, ws.stage, ws.k2);
        ++stats.rhs_evaluations;
        double der2 = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            double sk = options.atol + options.rtol * std::abs(y[i]);
            double q = std::abs(ws.k2[i] - ws.k1[i]) / sk;
            der2 += q * q;
        }
        der2 = std::sqrt(der2) / h;
        const double der12 = std::max(der2, std::sqrt(dnf));
        const double h1 = (der12 <= 1.0e-15)
                              ? std::max(1.0e-6, std::abs(h) * 1.0e-3)
                              : std::pow(0.01 / der12, 1.0 / 8.0);
        h = std::min({100.0 * h, h1, hmax});
    }

    bool last = false;
    bool reject = false;
    while (true) {
        if (stats.accepted + stats.rejected >= options.max_steps)
            throw StepLimitError("integrator exceeded max step budget");
        if (0.1 * h <= std::abs(t) * kUround)
            throw StepLimitError("integrator step size underflow");
        if (t + 1.01 * h - t1 > 0.0) {
            h = t1 - t;
            last = true;
        }

        const auto& k1 = ws.k1;
        auto comb2 = [&](double w1, const ComplexVec& v1, double w2,
                         const ComplexVec& v2) {
            for (std::size_t i = 0; i < dim; ++i)
                ws.stage[i] = y[i] + h * (w1 * v1[i] + w2 * v2[i]);
        };

        for (std::size_t i = 0; i < dim; ++i) ws.stage[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, ws.stage, ws.k2);
        comb2(a31, k1, a32, ws.k2);
        rhs(t + c3 * h, ws.stage, ws.k3);
        comb2(a41, k1, a43, ws.k3);
        rhs(t + c4 * h, ws.stage, ws.k4);
        for (std::size_t i = 0; i < dim; ++i)
            ws.stage[i] = y[i] + h * (a51 * k1[i] + a53 * ws.k3[i] + a54 * ws.k4[i]);
        rhs(t + c5 * h, ws.stage, ws.k5);
        for (std::size_t i = 0; i < dim; ++i)
            ws.stage[i] = y[i] + h * (a61 * k1[i] + a64 * ws.k4[i] + a65 * ws.k5[i]);
        rhs(t + c6 * h, ws.stage, ws.k6);
        for (std::size_t i = 0; i < dim; ++i)
            ws.stage[i] = y[i] + h * (a71 * k1[i] + a74 * ws.k4[i] + a75 * ws.k5[i] +
                                      a76 * ws.k6[i]);
        rhs(t + c7 * h, ws.stage, ws.k7);
        for (std::size_t i = 0; i < dim; ++i)
            ws.stage[i] = y[i] + h * (a81 * k1[i] + a84 * ws.k4[i] + a85 * ws.k5[i] +
                                      a86 * ws.k6[i] + a87 * ws.k7[i]);
        rhs(t + c8 * h, ws.stage, ws.k8);
        for (std::size_t i = 0; i < dim; ++i)
            ws.stage[i] = y[i] + h * (a91 * k1[i] + a94 * ws.k4[i] + a95 * ws.k5[i] +
                                      a96 * ws.k6[i] + a97 * ws.k7[i] + a98 * ws.k8[i]);
        rhs(t + c9 * h, ws.stage, ws.k9);
        for (std::size_t i = 0; i < dim; ++i)
            ws.stage[i] = y[i] + h * (a101 * k1[i] + a104 * ws.k4[i] + a105 * ws.k5[i] +
                                      a106 * ws.k6[i] + a107 * ws.k7[i] +
                                      a108 * ws.k8[i] + a109 * ws.k9[i]);
        rhs(t + c10 * h, ws.stage, ws.k10);
        for (std::size_t i = 0; i < dim; ++i)
            ws.stage[i] = y[i] + h * (a111 * k1[i] + a114 * ws.k4[i] + a115 * ws.k5[i] +
                                      a116 * ws.k6[i] + a117 * ws.k7[i] +
                                      a118 * ws.k8[i] + a119 * ws.k9[i] +
                                      a1110 * ws.k10[i]);
        rhs(t + c11 * h, ws.stage, ws.k2);  // k2 reused as stage 11
        const double tph = t + h;
        for (std::size_t i = 0; i < dim; ++i)
            ws.stage[i] = y[i] + h * (a121 * k1[i] + a124 * ws.k4[i] + a125 * ws.k5[i] +
                                      a126 * ws.k6[i] + a127 * ws.k7[i] +
                                      a128 * ws.k8[i] + a129 * ws.k9[i] +
                                      a1210 * ws.k10[i] + a1211 * ws.k2[i]);
        rhs(tph, ws.stage, ws.k3);  // k3 reused as stage 12
        stats.rhs_evaluations += 11;

        for (std::size_t i = 0; i < dim; ++i) {
            ws.k4[i] = b1 * k1[i] + b6 * ws.k6[i] + b7 * ws.k7[i] + b8 * ws.k8[i] +
                       b9 * ws.k9[i] + b10 * ws.k10[i] + b11 * ws.k2[i] +
                       b12 * ws.k3[i];
            ws.ynew[i] = y[i] + h * ws.k4[i];
        }

        // Combined 5th/3rd embedded error estimate
        double err5 = 0.0, err3 = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double sk = scale_at(i, ws.ynew);
            std::complex<double> e3 =
                ws.k4[i] - bhh1 * k1[i] - bhh2 * ws.k9[i] - bhh3 * ws.k3[i];
            std::complex<double> e5 = er1 * k1[i] + er6 * ws.k6[i] + er7 * ws.k7[i] +
                                      er8 * ws.k8[i] + er9 * ws.k9[i] +
                                      er10 * ws.k10[i] + er11 * ws.k2[i] +
                                      er12 * ws.k3[i];
            const double q3 = std::abs(e3) / sk;
            const double q5 = std::abs(e5) / sk;
            err3 += q3 * q3;
            err5 += q5 * q5;
        }
        double deno = err5 + 0.01 * err3;
        if (deno <= 0.0) deno = 1.0;
        const double err =
            std::abs(h) * err5 * std::sqrt(1.0 / (deno * static_cast<double>(dim)));

        const double fac11 = std::pow(err, expo1);
        double fac = fac11 * std::pow(facold, -options.beta);
        fac = std::max(facc_grow, std::min(facc_shrink, fac / options.safety));
        double hnew = h / fac;

        if (err <= 1.0) {
            facold = std::max(err, 1.0e-4);
            ++stats.accepted;
            rhs(tph, ws.ynew, ws.k4);
            ++stats.rhs_evaluations;
            std::swap(ws.k1, ws.k4);
            std::swap(y, ws.ynew);
            t = tph;
            if (observer) observer(t, y);
            if (last) return stats;
            if (std::abs(hnew) > hmax) hnew = hmax;
            if (reject) hnew = std::min(hnew, h);
            reject = false;
        } else {
            hnew = h / std::min(facc_shrink, fac11 / options.safety);
            reject = true;
            ++stats.rejected;
            last = false;
        }
        h = hnew;
    }
}

}  // namespace m2s
