#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "catqec/cat.hpp"
#include "catqec/fock.hpp"
#include "catqec/process.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <filesystem>
#include <numbers>

using namespace catqec;
using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

CatParams noiseless(double alpha2, int nmax) {
    CatParams p;
    p.alpha2 = alpha2;
    p.kappa1 = 0;
    p.n_th = 0;
    p.kappa2 = 0;
    p.nmax = nmax;
    return p;
}

// hand-written ideal gates, independent of the library's internal versions
MatrixXcd mat_s(int sign) {
    MatrixXcd u = MatrixXcd::Identity(2, 2);
    u(1, 1) = cplx(0, sign);
    return u;
}

MatrixXcd mat_xq(int sign) { // (I + i sign X)/sqrt(2)
    MatrixXcd u(2, 2);
    u << 1, cplx(0, sign), cplx(0, sign), 1;
    return u / std::sqrt(2.0);
}

MatrixXd ptm_of(const MatrixXcd& u) { return ptm(superop_from_unitary(u)); }

} // namespace

TEST_CASE("operating point timings") {
    CatParams p1 = CatParams::preset(1.0, 1.11e-4);
    CHECK(p1.t_s() == doctest::Approx(pi / (8.0 * 0.026)).epsilon(1e-12));
    CHECK(p1.t_prep() == doctest::Approx(pi / 2 + pi / (8.0 * 0.026)).epsilon(1e-12));
    CHECK(p1.t_meas() == doctest::Approx(pi / (8.0 * 0.026) + pi / 2 + 42.0).epsilon(1e-12));
    CHECK(p1.cz_coupling() == doctest::Approx(pi / (8.0 * 30.8)).epsilon(1e-12));
    CHECK(p1.meas_flip == doctest::Approx(0.018));
    CHECK(p1.nmax == 14);

    CatParams p6 = CatParams::preset(6.25, 2.08e-4);
    CHECK(p6.t_s() == doctest::Approx(pi / (8.0 * 2.5 * 0.15)).epsilon(1e-12));
    CHECK(p6.t_prep() == doctest::Approx(2.618).epsilon(1e-3));
    CHECK(p6.t_meas() == doctest::Approx(5.118).epsilon(1e-3));
    CHECK(p6.cz_coupling() == doctest::Approx(pi / (8.0 * 0.8 * 6.25)).epsilon(1e-12));
    CHECK(p6.meas_flip == doctest::Approx(0.009));
    CHECK(p6.nmax == 25);

    // readout assignment error interpolates between the characterized points
    CHECK(CatParams::preset(6.25, 2.425e-4).meas_flip == doctest::Approx(0.010).epsilon(1e-6));
    CHECK(CatParams::preset(6.25, 1.0e-4).meas_flip == doctest::Approx(0.008));
    CHECK(CatParams::preset(6.25, 9e-4).meas_flip == doctest::Approx(0.012));
}

TEST_CASE("conditional rotation Hamiltonian matches its unexpanded form") {
    CatParams p = noiseless(1.69, 9);
    p.t_cx = 40.0;
    TimeDependentH th = cx_hamiltonian(p);
    CHECK(th.driven);
    CHECK(th.period == doctest::Approx(20.0));

    int n = p.nmax;
    double al = p.alpha(), a2 = p.alpha2;
    MatrixXcd a = MatrixXcd(destroy(n)), id = MatrixXcd::Identity(n, n);
    MatrixXcd id2 = MatrixXcd::Identity(n * n, n * n);
    MatrixXcd ac = Eigen::kroneckerProduct(a, id).eval();
    MatrixXcd at = Eigen::kroneckerProduct(id, a).eval();
    MatrixXcd nt = at.adjoint() * at;
    MatrixXcd u = 0.5 * al * (al * id2 - ac);
    MatrixXcd v = 0.5 * al * (al * id2 + ac);
    double thalf = 0.5 * p.t_cx;

    for (double frac : {0.0, 0.125, 0.25, 0.5, 0.77}) {
        double t = frac * thalf;
        double phi = pi * t / thalf;
        cplx e2 = std::polar(1.0, 2.0 * phi);
        MatrixXcd ann = at * at - e2 * u - v;
        MatrixXcd cq = ac.adjoint() * ac.adjoint() - a2 * id2;
        MatrixXcd direct = -cq * (ac * ac - a2 * id2) - ann.adjoint() * ann -
                           (pi / thalf / (4.0 * al)) * nt * (2.0 * al * id2 - ac - ac.adjoint());
        CHECK((th.dense_at(t) - direct).cwiseAbs().maxCoeff() < 1e-10);
    }

    // at the ramp ends the system is two decoupled stabilized cats plus the
    // rotating-frame compensation on the target; each normally ordered
    // quartic -(ad^2 - a2)(a^2 - a2) sits alpha^4 below the Kerr form
    MatrixXcd hcat = MatrixXcd(kerr_cat_hamiltonian(1.0, al, n));
    MatrixXcd comp = -(pi / thalf / (4.0 * al)) * nt * (2.0 * al * id2 - ac - ac.adjoint());
    MatrixXcd decoupled = Eigen::kroneckerProduct(hcat, id).eval() +
                          Eigen::kroneckerProduct(id, hcat).eval() + comp -
                          2.0 * a2 * a2 * id2;
    CHECK((th.dense_at(0.0) - decoupled).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((th.dense_at(thalf) - decoupled).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("free Kerr evolution with frame correction gives the X rotations") {
    CatParams p = noiseless(4.0, 20);
    GateChannel xp = x_quarter(p, +1);
    GateChannel xm = x_quarter(p, -1);
    CHECK(xp.infidelity < 1e-9);
    CHECK(xm.infidelity < 1e-9);
    CHECK(xp.leakage < 1e-9);
    // the pair composes back to the identity
    CHECK((xp.ptm * xm.ptm - MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(xp.duration == doctest::Approx(pi / 2));
}

TEST_CASE("drive phase trim absorbs the S gate over-rotation") {
    // at small alpha the cat-ratio over-rotation dominates an uncalibrated
    // S gate; the virtual Z must absorb it down to the leakage floor
    CatParams p = noiseless(0.64, 12);
    p.eps_s = 0.02;
    double r = cat_ratio(p.alpha());
    double delta = pi * (r + 1.0 / r - 2.0) / 4.0;
    double uncal = std::pow(std::sin(0.5 * delta), 2);
    CHECK(uncal > 5e-4); // the effect is visible at this size

    GateChannel s = s_gate(p, +1);
    CHECK(s.infidelity < uncal / 3.0);
    CHECK(s.infidelity < 3e-4);
    CHECK(s.leakage < 3e-4);

    GateChannel sdg = s_gate(p, -1);
    CHECK(sdg.infidelity / s.infidelity > 0.5);
    CHECK(sdg.infidelity / s.infidelity < 2.0);

    // production point, for scale
    CatParams p1 = noiseless(1.0, 14);
    p1.eps_s = 0.026;
    CHECK(s_gate(p1, +1).infidelity < 2e-4);
}

TEST_CASE("virtual Z calibration recovers exact offsets and never hurts") {
    MatrixXd r_id = ptm_of(mat_s(+1));
    MatrixXcd off = MatrixXcd::Identity(2, 2);
    off(1, 1) = std::polar(1.0, 0.7);
    MatrixXd r = ptm_of(off) * r_id;
    MatrixXd cal = calibrate_virtual_z(r, r_id, 1);
    CHECK((cal - r_id).cwiseAbs().maxCoeff() < 1e-12);

    MatrixXcd cz = MatrixXcd::Identity(4, 4);
    cz(3, 3) = -1;
    MatrixXd r2_id = ptm_of(cz);
    MatrixXcd offa = MatrixXcd::Identity(2, 2), offb = MatrixXcd::Identity(2, 2);
    offa(1, 1) = std::polar(1.0, 0.4);
    offb(1, 1) = std::polar(1.0, -1.1);
    MatrixXd r2 = ptm_of(Eigen::kroneckerProduct(offa, offb).eval()) * r2_id;
    MatrixXd cal2 = calibrate_virtual_z(r2, r2_id, 2);
    CHECK((cal2 - r2_id).cwiseAbs().maxCoeff() < 1e-10);

    // a non-Z perturbation cannot be fixed, but must not get worse
    MatrixXcd rot = mat_xq(+1);
    MatrixXd r3 = ptm_of(rot) * r_id;
    MatrixXd cal3 = calibrate_virtual_z(r3, r_id, 1);
    CHECK(infidelity(cal3, r_id, 1) <= infidelity(r3, r_id, 1) + 1e-12);
}

TEST_CASE("rotated-basis CX composition is exactly CNOT for ideal pieces") {
    MatrixXd rs = ptm_of(mat_s(+1)), rsdg = ptm_of(mat_s(-1));
    MatrixXd rxp = ptm_of(mat_xq(+1)), rxm = ptm_of(mat_xq(-1));
    MatrixXcd cz = MatrixXcd::Identity(4, 4);
    cz(3, 3) = -1;
    MatrixXcd cnot = MatrixXcd::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;

    MatrixXd i4 = MatrixXd::Identity(4, 4);
    MatrixXd pre = Eigen::kroneckerProduct(i4, MatrixXd(rxm * rs)).eval();
    MatrixXd post = Eigen::kroneckerProduct(i4, MatrixXd(rsdg * rxp)).eval();
    MatrixXd total = post * ptm_of(cz) * pre;
    CHECK((total - ptm_of(cnot)).cwiseAbs().maxCoeff() < 1e-12);
}

namespace {

const CatParams& small_gate_params() {
    static CatParams p = [] {
        // the conditional rotation pushes weight well above the mean photon
        // number, so the truncation needs headroom
        CatParams q = noiseless(1.96, 12);
        q.eps_s = 0.05;
        q.t_cz = pi / (8.0 * 0.03 * 1.96); // J = 0.03
        q.t_cx = 60.0;
        q.t_k2_interval = 2.0;
        return q;
    }();
    return p;
}

const GateChannel& small_cz() {
    static GateChannel ch = cz_gate(small_gate_params());
    return ch;
}

} // namespace

TEST_CASE("beamsplitter gate implements the conditional phase") {
    const GateChannel& cz = small_cz();
    CHECK(cz.infidelity < 2e-2);
    CHECK(cz.leakage < 1e-2);
    CHECK(cz.probs.sum() == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(cz.probs.minCoeff() > -1e-7);
    // it is the conditional phase, not anything local
    CHECK(infidelity(cz.ptm, ptm_of(MatrixXcd::Identity(4, 4)), 2) > 0.3);
}

TEST_CASE("conditional ramp executes a CNOT without decoherence") {
    CatParams p = small_gate_params();
    GateChannel cx = cx_gate(p);
    CHECK(cx.infidelity < 1e-3);
    CHECK(cx.leakage < 1e-3);
    CHECK(cx.probs.sum() == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(cx.probs.minCoeff() > -1e-7);
    MatrixXcd id4 = MatrixXcd::Identity(4, 4);
    CHECK(infidelity(cx.ptm, ptm_of(id4), 2) > 0.3);
}

TEST_CASE("rotated CX pieces compose to a near-ideal CNOT") {
    CatParams p = small_gate_params();
    GateChannel cxr = cxr_gate(p);
    CHECK(cxr.infidelity < 3e-2);
    CHECK(cxr.duration ==
          doctest::Approx(2 * (p.t_x() + p.t_s()) + p.t_cz + p.t_k2_interval));
    CHECK(cxr.probs.sum() == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("idle channel at the large operating point is strongly biased") {
    CatParams p = CatParams::preset(6.25, 2.08e-4);
    GateChannel idle = idle_channel(p, 1.0, "idle");
    double pz = idle.probs(2), px = idle.probs(1), py = idle.probs(3);
    // photon loss and thermal events flip the cat parity, which is a phase
    // flip in this encoding; the expected rate is kappa1 (1 + 2 n_th) alpha^2
    double expected = p.kappa1 * (1.0 + 2.0 * p.n_th) * p.alpha2;
    CHECK(pz / expected > 0.85);
    CHECK(pz / expected < 1.2);
    CHECK(px < pz / 20.0);
    CHECK(py < pz / 20.0);
    CHECK(idle.probs.sum() == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(idle.probs.minCoeff() > -1e-9);
}

TEST_CASE("preparation composite stays near-ideal without decoherence") {
    CatParams p = noiseless(0.64, 12);
    p.eps_s = 0.02;
    GateChannel prep = prep_plus(p);
    CHECK(prep.infidelity < 1e-3);
    // the tabulated preparation error counts the flips of the prepared state
    CHECK(prep.probs(2) + prep.probs(3) < 1e-3);
    CHECK(prep.duration == doctest::Approx(p.t_x() + p.t_s()));
}

TEST_CASE("Kerr and dissipative stabilization leak alike, dephase differently") {
    auto rows = sgate_compare(2.0, {0.05, 0.1}, 20);
    REQUIRE(rows.size() == 2);
    for (const auto& c : rows) {
        CHECK(c.kerr_analytic == doctest::Approx(std::pow(c.eps / 16.0, 2)).epsilon(1e-12));
        CHECK(c.kerr_leak / c.kerr_analytic > 1.0 / 3.0);
        CHECK(c.kerr_leak / c.kerr_analytic < 3.0);
        CHECK(c.diss_leak / c.diss_analytic > 1.0 / 3.0);
        CHECK(c.diss_leak / c.diss_analytic < 3.0);
        // the dissipative cat pays extra phase flips for the same leakage
        CHECK(c.diss_infidelity > 2.0 * c.kerr_infidelity);
    }
}

TEST_CASE("channel cache round trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "catqec_cache_test";
    fs::remove_all(dir);
    ChannelCache cache{dir.string()};

    CatParams p = noiseless(0.64, 8);
    p.eps_s = 0.02;
    std::string key = channel_key(p, "xq");
    CHECK(!cache.load(key).has_value());

    GateChannel first = get_channel(p, "xq", cache);
    CHECK(fs::exists(dir / (key + ".json")));
    GateChannel second = get_channel(p, "xq", cache);
    CHECK(second.name == first.name);
    CHECK(second.nq == first.nq);
    CHECK(second.duration == doctest::Approx(first.duration).epsilon(1e-14));
    CHECK(second.infidelity == doctest::Approx(first.infidelity).epsilon(1e-12));
    CHECK((second.ptm - first.ptm).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((second.probs - first.probs).cwiseAbs().maxCoeff() < 1e-14);

    // keys separate gates and parameter sets
    CHECK(channel_key(p, "s") != key);
    CatParams p2 = p;
    p2.eps_s = 0.03;
    CHECK(channel_key(p2, "xq") != key);
    fs::remove_all(dir);
}

TEST_CASE("channel table assembly") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "catqec_table_test";
    fs::remove_all(dir);
    ChannelCache cache{dir.string()};

    CatParams p = noiseless(0.64, 8);
    p.eps_s = 0.02;
    p.t_cz = 5.0;
    p.cz_steps = 64;
    p.t_cx = 30.0;
    p.cx_steps = 128;
    p.t_cd = 3.0;
    p.t_k2_interval = 2.0;
    p.meas_flip = 0.0125;

    ChannelTable t = make_channel_table(p, true, cache);
    CHECK(t.cx.size() == 16);
    CHECK(t.cz.size() == 16);
    CHECK(t.idle_cx.size() == 4);
    CHECK(t.idle_cz.size() == 4);
    CHECK(t.idle_prep.size() == 4);
    CHECK(t.idle_meas.size() == 4);
    CHECK(t.prep.size() == 4);
    CHECK(t.meas_flip == doctest::Approx(0.0125));
    // noiseless channels are identity dominated
    CHECK(t.cx[0] > 0.6);
    CHECK(t.cz[0] > 0.9);
    CHECK(t.idle_cx[0] > 0.999);
    fs::remove_all(dir);
}
