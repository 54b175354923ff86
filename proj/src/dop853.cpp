#include "csmin/dop853.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "csmin/roots.hpp"

namespace csmin {
namespace {

constexpr double uround = 2.3e-16;

// Coefficients of the Dormand-Prince 8(5,3) pair, copied from DOP853.F of
// Hairer, Norsett & Wanner.  Stage nodes:
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
constexpr double c14 = 0.1e+00;
constexpr double c15 = 0.2e+00;
constexpr double c16 = 0.777777777777777777777777777778e+00;

// Runge-Kutta matrix.
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

// Weights of the eighth-order result.
constexpr double b1 = 5.42937341165687622380535766363e-2;
constexpr double b6 = 4.45031289275240888144113950566e0;
constexpr double b7 = 1.89151789931450038304281599044e0;
constexpr double b8 = -5.8012039600105847814672114227e0;
constexpr double b9 = 3.1116436695781989440891606237e-1;
constexpr double b10 = -1.52160949662516078556178806805e-1;
constexpr double b11 = 2.01365400804030348374776537501e-1;
constexpr double b12 = 4.47106157277725905176885569043e-2;

// Embedded third-order error weights.
constexpr double bhh1 = 0.244094488188976377952755905512e+00;
constexpr double bhh2 = 0.733846688281611857341361741547e+00;
constexpr double bhh3 = 0.220588235294117647058823529412e-01;

// Embedded fifth-order error weights.
constexpr double er1 = 0.1312004499419488073250102996e-01;
constexpr double er6 = -0.1225156446376204440720569753e+01;
constexpr double er7 = -0.4957589496572501915214079952e+00;
constexpr double er8 = 0.1664377182454986536961530415e+01;
constexpr double er9 = -0.3503288487499736816886487290e+00;
constexpr double er10 = 0.3341791187130174790297318841e+00;
constexpr double er11 = 0.8192320648511571246570742613e-01;
constexpr double er12 = -0.2235530786388629525884427845e-01;

// Extra stages and interpolation weights of the dense output.
constexpr double a141 = 5.61675022830479523392909219681e-2;
constexpr double a147 = 2.53500210216624811088794765333e-1;
constexpr double a148 = -2.46239037470802489917441475441e-1;
constexpr double a149 = -1.24191423263816360469010140626e-1;
constexpr double a1410 = 1.5329179827876569731206322685e-1;
constexpr double a1411 = 8.20105229563468988491666602057e-3;
constexpr double a1412 = 7.56789766054569976138603589584e-3;
constexpr double a1413 = -8.298e-3;
constexpr double a151 = 3.18346481635021405060768473261e-2;
constexpr double a156 = 2.83009096723667755288322961402e-2;
constexpr double a157 = 5.35419883074385676223797384372e-2;
constexpr double a158 = -5.49237485713909884646569340306e-2;
constexpr double a1511 = -1.08347328697249322858509316994e-4;
constexpr double a1512 = 3.82571090835658412954920192323e-4;
constexpr double a1513 = -3.40465008687404560802977114492e-4;
constexpr double a1514 = 1.41312443674632500278074618366e-1;
constexpr double a161 = -4.28896301583791923408573538692e-1;
constexpr double a166 = -4.69762141536116384314449447206e0;
constexpr double a167 = 7.68342119606259904184240953878e0;
constexpr double a168 = 4.06898981839711007970213554331e0;
constexpr double a169 = 3.56727187455281109270669543021e-1;
constexpr double a1613 = -1.39902416515901462129418009734e-3;
constexpr double a1614 = 2.9475147891527723389556272149e0;
constexpr double a1615 = -9.15095847217987001081870187138e0;

constexpr double d41 = -0.84289382761090128651353491142e+01;
constexpr double d46 = 0.56671495351937776962531783590e+00;
constexpr double d47 = -0.30689499459498916912797304727e+01;
constexpr double d48 = 0.23846676565120698287728149680e+01;
constexpr double d49 = 0.21170345824450282767155149946e+01;
constexpr double d410 = -0.87139158377797299206789907490e+00;
constexpr double d411 = 0.22404374302607882758541771650e+01;
constexpr double d412 = 0.63157877876946881815570249290e+00;
constexpr double d413 = -0.88990336451333310820698117400e-01;
constexpr double d414 = 0.18148505520854727256656404962e+02;
constexpr double d415 = -0.91946323924783554000451984436e+01;
constexpr double d416 = -0.44360363875948939664310572000e+01;
constexpr double d51 = 0.10427508642579134603413151009e+02;
constexpr double d56 = 0.24228349177525818288430175319e+03;
constexpr double d57 = 0.16520045171727028198505394887e+03;
constexpr double d58 = -0.37454675472269020279518312152e+03;
constexpr double d59 = -0.22113666853125306036270938578e+02;
constexpr double d510 = 0.77334326684722638389603898808e+01;
constexpr double d511 = -0.30674084731089398182061213626e+02;
constexpr double d512 = -0.93321305264302278729567221706e+01;
constexpr double d513 = 0.15697238121770843886131091075e+02;
constexpr double d514 = -0.31139403219565177677282850411e+02;
constexpr double d515 = -0.93529243588444783865713862664e+01;
constexpr double d516 = 0.35816841486394083752465898540e+02;
constexpr double d61 = 0.19985053242002433820987653617e+02;
constexpr double d66 = -0.38703730874935176555105901742e+03;
constexpr double d67 = -0.18917813819516756882830838328e+03;
constexpr double d68 = 0.52780815920542364900561016686e+03;
constexpr double d69 = -0.11573902539959630126141871134e+02;
constexpr double d610 = 0.68812326946963000169666922661e+01;
constexpr double d611 = -0.10006050966910838403183860980e+01;
constexpr double d612 = 0.77771377980534432092869265740e+00;
constexpr double d613 = -0.27782057523535084065932004339e+01;
constexpr double d614 = -0.60196695231264120758267380846e+02;
constexpr double d615 = 0.84320405506677161018159903784e+02;
constexpr double d616 = 0.11992291136182789328035130030e+02;
constexpr double d71 = -0.25693933462703749003312586129e+02;
constexpr double d76 = -0.15418974869023643374053993627e+03;
constexpr double d77 = -0.23152937917604549567536039109e+03;
constexpr double d78 = 0.35763911791061412378285349910e+03;
constexpr double d79 = 0.93405324183624310003907691704e+02;
constexpr double d710 = -0.37458323136451633156875139351e+02;
constexpr double d711 = 0.10409964950896230045147246184e+03;
constexpr double d712 = 0.29840293426660503123344363579e+02;
constexpr double d713 = -0.43533456590011143754432175058e+02;
constexpr double d714 = 0.96324553959188282948394950600e+02;
constexpr double d715 = -0.39177261675615439165231486172e+02;
constexpr double d716 = -0.14972683625798562581422125276e+03;

// Step-size controller settings (the DOP853.F defaults).
constexpr double safe = 0.9;
constexpr double fac1 = 1.0 / 3.0;   // max shrink factor
constexpr double fac2 = 6.0;         // max growth factor
constexpr double expo1 = 1.0 / 8.0;

}  // namespace

Dop853::Dop853(int dim, OdeRhs rhs, OdeOptions opt)
    : dim_(dim), rhs_(std::move(rhs)), opt_(opt) {
    for (auto* buf : {&y_, &k1_, &ynew_, &knew_, &yw_,
                      &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &k8_, &k9_, &k10_,
                      &rc1_, &rc2_, &rc3_, &rc4_, &rc5_, &rc6_, &rc7_, &rc8_})
        buf->assign(dim_, 0.0);
}

void Dop853::start(double t0, const double* y0, double t_limit) {
    t_ = told_ = t0;
    t_limit_ = t_limit;
    for (int i = 0; i < dim_; ++i) y_[i] = y0[i];
    dir_ = t_limit >= t0 ? 1.0 : -1.0;
    hmax_ = std::fabs(t_limit - t0);
    nstep_ = 0;
    reject_ = false;
    dense_ready_ = false;
    done_ = t_limit == t0;
    if (done_) return;
    rhs_(t_, y_.data(), k1_.data());
    h_ = opt_.initial_step != 0.0 ? dir_ * std::fabs(opt_.initial_step)
                                  : initial_step();
}

// The automatic initial step of DOP853.F: a rough first guess from the size
// of y and f, improved with one explicit Euler trial so that
// h^8 * max(|f|, |y''|) is about 0.01.
double Dop853::initial_step() const {
    double dnf = 0.0, dny = 0.0;
    for (int i = 0; i < dim_; ++i) {
        const double sk = opt_.atol + opt_.rtol * std::fabs(y_[i]);
        const double sf = k1_[i] / sk, sy = y_[i] / sk;
        dnf += sf * sf;
        dny += sy * sy;
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6
                                              : 0.01 * std::sqrt(dny / dnf);
    h = std::fmin(h, hmax_) * dir_;

    std::vector<double> y1(dim_), f1(dim_);
    for (int i = 0; i < dim_; ++i) y1[i] = y_[i] + h * k1_[i];
    rhs_(t_ + h, y1.data(), f1.data());
    double der2 = 0.0;
    for (int i = 0; i < dim_; ++i) {
        const double sk = opt_.atol + opt_.rtol * std::fabs(y_[i]);
        const double sd = (f1[i] - k1_[i]) / sk;
        der2 += sd * sd;
    }
    der2 = std::sqrt(der2) / std::fabs(h);

    const double der12 = std::fmax(der2, std::sqrt(dnf));
    const double h1 = der12 <= 1e-15
                          ? std::fmax(1e-6, std::fabs(h) * 1e-3)
                          : std::pow(0.01 / der12, expo1);
    return std::fmin(100.0 * std::fabs(h), std::fmin(h1, hmax_)) * dir_;
}

// The twelve core stages.  Slots k2_ and k3_ are reused for stages 11 and
// 12 once their original contents are no longer needed, exactly as in the
// reference code; afterwards k4_ holds the weighted slope sum and ynew_ the
// eighth-order result at t_ + h.
void Dop853::stages(double h) {
    const int n = dim_;
    const double* y = y_.data();
    double* w = yw_.data();

    for (int i = 0; i < n; ++i) w[i] = y[i] + h * a21 * k1_[i];
    rhs_(t_ + c2 * h, w, k2_.data());
    for (int i = 0; i < n; ++i)
        w[i] = y[i] + h * (a31 * k1_[i] + a32 * k2_[i]);
    rhs_(t_ + c3 * h, w, k3_.data());
    for (int i = 0; i < n; ++i)
        w[i] = y[i] + h * (a41 * k1_[i] + a43 * k3_[i]);
    rhs_(t_ + c4 * h, w, k4_.data());
    for (int i = 0; i < n; ++i)
        w[i] = y[i] + h * (a51 * k1_[i] + a53 * k3_[i] + a54 * k4_[i]);
    rhs_(t_ + c5 * h, w, k5_.data());
    for (int i = 0; i < n; ++i)
        w[i] = y[i] + h * (a61 * k1_[i] + a64 * k4_[i] + a65 * k5_[i]);
    rhs_(t_ + c6 * h, w, k6_.data());
    for (int i = 0; i < n; ++i)
        w[i] = y[i] + h * (a71 * k1_[i] + a74 * k4_[i] + a75 * k5_[i] +
                           a76 * k6_[i]);
    rhs_(t_ + c7 * h, w, k7_.data());
    for (int i = 0; i < n; ++i)
        w[i] = y[i] + h * (a81 * k1_[i] + a84 * k4_[i] + a85 * k5_[i] +
                           a86 * k6_[i] + a87 * k7_[i]);
    rhs_(t_ + c8 * h, w, k8_.data());
    for (int i = 0; i < n; ++i)
        w[i] = y[i] + h * (a91 * k1_[i] + a94 * k4_[i] + a95 * k5_[i] +
                           a96 * k6_[i] + a97 * k7_[i] + a98 * k8_[i]);
    rhs_(t_ + c9 * h, w, k9_.data());
    for (int i = 0; i < n; ++i)
        w[i] = y[i] + h * (a101 * k1_[i] + a104 * k4_[i] + a105 * k5_[i] +
                           a106 * k6_[i] + a107 * k7_[i] + a108 * k8_[i] +
                           a109 * k9_[i]);
    rhs_(t_ + c10 * h, w, k10_.data());
    for (int i = 0; i < n; ++i)
        w[i] = y[i] + h * (a111 * k1_[i] + a114 * k4_[i] + a115 * k5_[i] +
                           a116 * k6_[i] + a117 * k7_[i] + a118 * k8_[i] +
                           a119 * k9_[i] + a1110 * k10_[i]);
    rhs_(t_ + c11 * h, w, k2_.data());
    for (int i = 0; i < n; ++i)
        w[i] = y[i] + h * (a121 * k1_[i] + a124 * k4_[i] + a125 * k5_[i] +
                           a126 * k6_[i] + a127 * k7_[i] + a128 * k8_[i] +
                           a129 * k9_[i] + a1210 * k10_[i] + a1211 * k2_[i]);
    rhs_(t_ + h, w, k3_.data());
    for (int i = 0; i < n; ++i) {
        k4_[i] = b1 * k1_[i] + b6 * k6_[i] + b7 * k7_[i] + b8 * k8_[i] +
                 b9 * k9_[i] + b10 * k10_[i] + b11 * k2_[i] + b12 * k3_[i];
        ynew_[i] = y[i] + h * k4_[i];
    }
}

// Combined 5th/3rd-order error estimate of DOP853.F, scaled so that 1.0 is
// the acceptance threshold.  Non-finite stage values yield +inf, which
// rejects the step and shrinks it.
double Dop853::error_norm(double h) const {
    double err5 = 0.0, err3 = 0.0;
    for (int i = 0; i < dim_; ++i) {
        const double sk =
            opt_.atol +
            opt_.rtol * std::fmax(std::fabs(y_[i]), std::fabs(ynew_[i]));
        const double e3 =
            (k4_[i] - bhh1 * k1_[i] - bhh2 * k9_[i] - bhh3 * k3_[i]) / sk;
        const double e5 =
            (er1 * k1_[i] + er6 * k6_[i] + er7 * k7_[i] + er8 * k8_[i] +
             er9 * k9_[i] + er10 * k10_[i] + er11 * k2_[i] + er12 * k3_[i]) /
            sk;
        err3 += e3 * e3;
        err5 += e5 * e5;
    }
    double deno = err5 + 0.01 * err3;
    if (deno <= 0.0) deno = 1.0;
    const double err = std::fabs(h) * err5 * std::sqrt(1.0 / (deno * dim_));
    return std::isfinite(err) ? err
                              : std::numeric_limits<double>::infinity();
}

bool Dop853::step() {
    if (done_) return false;
    while (true) {
        if (++nstep_ > opt_.max_steps)
            throw NumericError("dop853: step limit exceeded at t = " +
                               std::to_string(t_));
        if (0.1 * std::fabs(h_) <= std::fabs(t_) * uround)
            throw NumericError("dop853: step size underflow at t = " +
                               std::to_string(t_));
        bool last = false;
        if ((t_ + 1.01 * h_ - t_limit_) * dir_ > 0.0) {
            h_ = t_limit_ - t_;
            last = true;
        }

        stages(h_);
        const double err = error_norm(h_);
        const double fac11 = std::pow(err, expo1);
        if (err > 1.0) {
            h_ /= std::fmin(1.0 / fac1, fac11 / safe);
            reject_ = true;
            continue;
        }

        // accepted: derivative at the right end, dense coefficients, advance
        rhs_(t_ + h_, ynew_.data(), knew_.data());
        if (opt_.dense) prepare_dense(h_);
        dense_ready_ = opt_.dense;
        told_ = t_;
        t_ += h_;
        y_.swap(ynew_);
        k1_.swap(knew_);

        double hnew =
            h_ / std::clamp(fac11 / safe, 1.0 / fac2, 1.0 / fac1);
        if (std::fabs(hnew) > hmax_) hnew = dir_ * hmax_;
        if (reject_) hnew = dir_ * std::fmin(std::fabs(hnew), std::fabs(h_));
        reject_ = false;
        h_ = hnew;
        if (last) done_ = true;
        return true;
    }
}

// Dense-output coefficients for the step [t_, t_ + h]: the Hermite data of
// the endpoints plus four seventh-order corrections that need three extra
// stages (overwriting k10_, k2_, k3_).
void Dop853::prepare_dense(double h) {
    const int n = dim_;
    const double* y = y_.data();
    double* w = yw_.data();

    for (int i = 0; i < n; ++i) {
        rc1_[i] = y[i];
        const double ydiff = ynew_[i] - y[i];
        rc2_[i] = ydiff;
        const double bspl = h * k1_[i] - ydiff;
        rc3_[i] = bspl;
        rc4_[i] = ydiff - h * knew_[i] - bspl;
        rc5_[i] = d41 * k1_[i] + d46 * k6_[i] + d47 * k7_[i] + d48 * k8_[i] +
                  d49 * k9_[i] + d410 * k10_[i] + d411 * k2_[i] +
                  d412 * k3_[i];
        rc6_[i] = d51 * k1_[i] + d56 * k6_[i] + d57 * k7_[i] + d58 * k8_[i] +
                  d59 * k9_[i] + d510 * k10_[i] + d511 * k2_[i] +
                  d512 * k3_[i];
        rc7_[i] = d61 * k1_[i] + d66 * k6_[i] + d67 * k7_[i] + d68 * k8_[i] +
                  d69 * k9_[i] + d610 * k10_[i] + d611 * k2_[i] +
                  d612 * k3_[i];
        rc8_[i] = d71 * k1_[i] + d76 * k6_[i] + d77 * k7_[i] + d78 * k8_[i] +
                  d79 * k9_[i] + d710 * k10_[i] + d711 * k2_[i] +
                  d712 * k3_[i];
    }

    for (int i = 0; i < n; ++i)
        w[i] = y[i] + h * (a141 * k1_[i] + a147 * k7_[i] + a148 * k8_[i] +
                           a149 * k9_[i] + a1410 * k10_[i] + a1411 * k2_[i] +
                           a1412 * k3_[i] + a1413 * knew_[i]);
    rhs_(t_ + c14 * h, w, k10_.data());
    for (int i = 0; i < n; ++i)
        w[i] = y[i] + h * (a151 * k1_[i] + a156 * k6_[i] + a157 * k7_[i] +
                           a158 * k8_[i] + a1511 * k2_[i] + a1512 * k3_[i] +
                           a1513 * knew_[i] + a1514 * k10_[i]);
    rhs_(t_ + c15 * h, w, k2_.data());
    for (int i = 0; i < n; ++i)
        w[i] = y[i] + h * (a161 * k1_[i] + a166 * k6_[i] + a167 * k7_[i] +
                           a168 * k8_[i] + a169 * k9_[i] + a1613 * knew_[i] +
                           a1614 * k10_[i] + a1615 * k2_[i]);
    rhs_(t_ + c16 * h, w, k3_.data());

    for (int i = 0; i < n; ++i) {
        rc5_[i] = h * (rc5_[i] + d413 * knew_[i] + d414 * k10_[i] +
                       d415 * k2_[i] + d416 * k3_[i]);
        rc6_[i] = h * (rc6_[i] + d513 * knew_[i] + d514 * k10_[i] +
                       d515 * k2_[i] + d516 * k3_[i]);
        rc7_[i] = h * (rc7_[i] + d613 * knew_[i] + d614 * k10_[i] +
                       d615 * k2_[i] + d616 * k3_[i]);
        rc8_[i] = h * (rc8_[i] + d713 * knew_[i] + d714 * k10_[i] +
                       d715 * k2_[i] + d716 * k3_[i]);
    }
}

void Dop853::eval(double ti, double* yi) const {
    if (!dense_ready_)
        throw Error("dop853: dense output not available");
    const double h = t_ - told_;
    const double s = (ti - told_) / h, s1 = 1.0 - s;
    for (int i = 0; i < dim_; ++i)
        yi[i] = rc1_[i] +
                s * (rc2_[i] +
                     s1 * (rc3_[i] +
                           s * (rc4_[i] +
                                s1 * (rc5_[i] +
                                      s * (rc6_[i] +
                                           s1 * (rc7_[i] + s * rc8_[i]))))));
}

void Dop853::eval_derivative(double ti, double* dyi) const {
    if (!dense_ready_)
        throw Error("dop853: dense output not available");
    const double h = t_ - told_;
    const double s = (ti - told_) / h, s1 = 1.0 - s;
    for (int i = 0; i < dim_; ++i) {
        const double a6 = rc7_[i] + s * rc8_[i];
        const double a5 = rc6_[i] + a6 * s1;
        const double a4 = rc5_[i] + a5 * s;
        const double a3 = rc4_[i] + a4 * s1;
        const double a2 = rc3_[i] + a3 * s;
        const double a1 = rc2_[i] + a2 * s1;
        dyi[i] =
            (a1 - s * (a2 - s1 * (a3 - s * (a4 - s1 * (a5 - s * (a6 - s1 * rc8_[i])))))) /
            h;
    }
}

void Dop853::integrate(double t0, double* y0, double t1) {
    start(t0, y0, t1);
    while (step()) {}
    for (int i = 0; i < dim_; ++i) y0[i] = y_[i];
}

void Dop853::integrate_at(double t0, double* y0, double t1,
                          const std::vector<double>& ts, double* states) {
    if (!opt_.dense)
        throw Error("dop853: integrate_at requires dense output");
    start(t0, y0, t1);
    std::size_t idx = 0;
    while (idx < ts.size() && ts[idx] == t0) {
        for (int i = 0; i < dim_; ++i) states[idx * dim_ + i] = y_[i];
        ++idx;
    }
    while (step()) {
        while (idx < ts.size() && (ts[idx] - t_) * dir_ <= 0.0) {
            eval(ts[idx], states + idx * dim_);
            ++idx;
        }
    }
    if (idx < ts.size())
        throw Error("dop853: sample time outside the integration span");
    for (int i = 0; i < dim_; ++i) y0[i] = y_[i];
}

void Dop853::integrate_fixed(double t0, double* y0, double t1, int m) {
    const double h = (t1 - t0) / m;
    t_ = told_ = t0;
    for (int i = 0; i < dim_; ++i) y_[i] = y0[i];
    dense_ready_ = false;
    rhs_(t_, y_.data(), k1_.data());
    for (int s = 0; s < m; ++s) {
        stages(h);
        rhs_(t_ + h, ynew_.data(), knew_.data());
        told_ = t_;
        t_ = t0 + (s + 1) * h;
        y_.swap(ynew_);
        k1_.swap(knew_);
    }
    for (int i = 0; i < dim_; ++i) y0[i] = y_[i];
}

EventResult find_event(Dop853& ode, double t0, const double* y0, double t_max,
                       const EventFn& g, int direction, double t_tol) {
    ode.start(t0, y0, t_max);
    double g_prev = g(t0, y0);
    EventResult res;
    res.y.assign(ode.dim(), 0.0);
    while (ode.step()) {
        const double g_now = g(ode.t(), ode.y());
        const bool rising = g_prev < 0.0 && g_now >= 0.0;
        const bool falling = g_prev > 0.0 && g_now <= 0.0;
        if ((direction >= 0 && rising) || (direction <= 0 && falling)) {
            std::vector<double> yt(ode.dim());
            auto gd = [&](double tau) {
                ode.eval(tau, yt.data());
                return g(tau, yt.data());
            };
            res.t = g_now == 0.0
                        ? ode.t()
                        : brent_root(gd, ode.t_prev(), ode.t(), t_tol);
            ode.eval(res.t, res.y.data());
            res.found = true;
            return res;
        }
        g_prev = g_now;
    }
    return res;
}

}  // namespace csmin
