#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qcorr/channels.hpp"
#include "qcorr/discord.hpp"
#include "test_support.hpp"

using namespace qcorr;
using std::numbers::pi;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Sum over all outcome strings of the full product projectors.
ComplexMatrix brute_force_dephase(const ComplexMatrix& rho, const MeasurementFrame& f) {
    const int n = f.size();
    ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (int s = 0; s < (1 << n); ++s) {
        ComplexMatrix p = ComplexMatrix::Identity(1, 1);
        for (int j = 0; j < n; ++j) p = tensor(p, projector(f[j].theta, f[j].phi, ((s >> (n - 1 - j)) & 1) + 1));
        out += p * rho * p;
    }
    return out;
}

MeasurementFrame random_frame(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> t(0.0, pi), p(0.0, 2 * pi);
    std::vector<AnglePair> a;
    for (int j = 0; j < n; ++j) a.push_back({t(rng), p(rng)});
    return MeasurementFrame(a);
}

}  // namespace

TEST_CASE("projectors") {
    ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
    p0(0, 0) = 1;
    CHECK(max_abs(projector(0, 0, 1) - p0) < 1e-15);
    CHECK(max_abs(projector(0, 0, 2) - (ComplexMatrix::Identity(2, 2) - p0)) < 1e-15);
    // The e^{-i phi} phase convention puts outcome 1 of the y frame on the -1
    // eigenvector of sigma_y.
    CHECK(max_abs(projector(pi / 2, 0, 1) - 0.5 * (identity2() + pauli_x())) < 1e-15);
    CHECK(max_abs(projector(pi / 2, pi / 2, 1) - 0.5 * (identity2() - pauli_y())) < 1e-15);

    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        const auto f = random_frame(1, rng);
        const ComplexMatrix a = projector(f[0].theta, f[0].phi, 1);
        const ComplexMatrix b = projector(f[0].theta, f[0].phi, 2);
        CHECK(max_abs(a * a - a) < 1e-14);
        CHECK(max_abs(a.adjoint() - a) < 1e-15);
        CHECK(max_abs(a * b) < 1e-14);
        CHECK(max_abs(a + b - identity2()) < 1e-14);
    }
    CHECK_THROWS_AS(projector(0, 0, 3), InvalidArgument);
}

TEST_CASE("frames and angles") {
    CHECK_THROWS_AS(MeasurementFrame({{pi, 0.0}}), InvalidArgument);
    CHECK_THROWS_AS(MeasurementFrame({{0.0, -0.1}}), InvalidArgument);
    CHECK(MeasurementFrame::z_frame(2) < MeasurementFrame::x_frame(2));
    CHECK(MeasurementFrame::x_frame(2) < MeasurementFrame::y_frame(2));

    const auto c = canonical_angles(pi + 0.3, -0.5);
    CHECK(c.theta == doctest::Approx(0.3));
    CHECK(c.phi == doctest::Approx(2 * pi - 0.5));
    CHECK(canonical_angles(-0.2, 7.0).theta == doctest::Approx(pi - 0.2));

    OptimizerConfig bad;
    bad.grid_theta = 1;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("dephasing") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 5; ++rep) {
        const auto rho = qcorr::testing::random_density(3, rng);
        const auto f = random_frame(3, rng);
        const auto d = dephase(rho, f);
        CHECK(max_abs(d.matrix() - brute_force_dephase(rho.matrix(), f)) < 1e-13);
        // Idempotent.
        CHECK(max_abs(dephase(d, f).matrix() - d.matrix()) < 1e-13);
    }
    CHECK_THROWS_AS(dephase(ghz_state(4), MeasurementFrame::z_frame(3)), InvalidArgument);
}

TEST_CASE("objective equals the relative-entropy definition") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 5; ++rep) {
        const auto rho = qcorr::testing::random_density(3, rng);
        const auto f = random_frame(3, rng);
        double expected = relative_entropy(rho, dephase(rho, f));
        for (int j = 0; j < 3; ++j) {
            const auto rj = partial_trace(rho, {j});
            expected -= relative_entropy(rj, dephase(rj, MeasurementFrame({f[j]})));
        }
        CHECK(gqd_objective(rho, f) == doctest::Approx(expected).epsilon(1e-10));
    }

    SUBCASE("same measurement, relabelled angles") {
        const auto rho = qcorr::testing::random_density(2, rng);
        const auto f = random_frame(2, rng);
        std::vector<AnglePair> shifted = f.angles();
        shifted[1].phi = std::fmod(shifted[1].phi + pi, 2 * pi);
        shifted[1].theta = pi - shifted[1].theta;
        if (shifted[1].theta >= pi) shifted[1].theta = 0;
        CHECK(gqd_objective(rho, MeasurementFrame(shifted)) == doctest::Approx(gqd_objective(rho, f)).epsilon(1e-10));
    }
}

TEST_CASE("named frame branches") {
    const auto ghz = ghz_state(4);
    CHECK(gqd_objective(ghz, MeasurementFrame::z_frame(4)) == doctest::Approx(1.0).epsilon(1e-12));
    for (double kt : {0.05, 0.2, 0.4}) {
        const auto rx = closed_form_state(ChannelKind::PauliX, kt);
        CHECK(gqd_objective(rx, MeasurementFrame::z_frame(4)) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(gqd_objective(rx, MeasurementFrame::x_frame(4)) ==
              doctest::Approx(3.0 - analytic_entropy_pauli_xy(kt)).epsilon(1e-10));
        CHECK(analytic_entropy_pauli_xy(kt) == doctest::Approx(von_neumann_entropy(rx)).epsilon(1e-10));
        const auto ry = closed_form_state(ChannelKind::PauliY, kt);
        CHECK(gqd_objective(ry, MeasurementFrame::y_frame(4)) ==
              doctest::Approx(3.0 - analytic_entropy_pauli_xy(kt)).epsilon(1e-10));
    }
}

TEST_CASE("global discord of the Pauli-Z state") {
    const double kt = 0.1;
    const auto rz = closed_form_state(ChannelKind::PauliZ, kt);
    const auto res = global_discord(rz);
    CHECK(res.value == doctest::Approx(0.150986).epsilon(1e-5));
    CHECK(res.value == doctest::Approx(analytic_gqd(ChannelKind::PauliZ, kt)).epsilon(1e-8));
    CHECK(res.optimizer_evals > 21 * 16);
    REQUIRE(res.branch_values.count("z") == 1);
    CHECK(res.value <= res.branch_values.at("z") + 1e-15);

    // Uniform frames on a fine theta grid never beat the optimizer.
    double best = 1e9;
    for (double t = 0.0; t < pi; t += 1e-3) best = std::min(best, gqd_objective(rz, MeasurementFrame::uniform(4, t, 0.0)));
    CHECK(res.value <= best + 1e-9);
    CHECK(best - res.value < 1e-5);
}

TEST_CASE("global discord argmin") {
    SUBCASE("Pauli-X before the sudden change keeps the z frame") {
        const auto r = global_discord(closed_form_state(ChannelKind::PauliX, 0.1));
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.argmin == MeasurementFrame::z_frame(4));
    }
    SUBCASE("after it, the x and y frames win") {
        const auto rx = closed_form_state(ChannelKind::PauliX, 0.3);
        const auto r = global_discord(rx);
        CHECK(r.value == doctest::Approx(analytic_gqd(ChannelKind::PauliX, 0.3)).epsilon(1e-8));
        CHECK(max_abs(dephase(rx, r.argmin).matrix() - dephase(rx, MeasurementFrame::x_frame(4)).matrix()) < 1e-4);

        const auto ry = closed_form_state(ChannelKind::PauliY, 0.3);
        const auto s = global_discord(ry);
        CHECK(s.value == doctest::Approx(r.value).epsilon(1e-8));
        CHECK(max_abs(dephase(ry, s.argmin).matrix() - dephase(ry, MeasurementFrame::y_frame(4)).matrix()) < 1e-4);
    }
    SUBCASE("isotropic") {
        for (double kt : {0.02, 0.1}) {
            const auto r = global_discord(closed_form_state(ChannelKind::Isotropic, kt));
            CHECK(r.value == doctest::Approx(analytic_gqd(ChannelKind::Isotropic, kt)).epsilon(1e-8));
        }
    }
    SUBCASE("product states carry none") {
        std::mt19937_64 rng(2);
        ComplexMatrix p = qcorr::testing::random_density(1, rng).matrix();
        for (int j = 0; j < 2; ++j) p = tensor(p, qcorr::testing::random_density(1, rng).matrix());
        CHECK(global_discord(DensityMatrix::from_matrix(p)).value < 1e-7);
    }
}

TEST_CASE("bipartite discord") {
    ComplexVector bell = ComplexVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    CHECK(bipartite_discord(DensityMatrix::pure(bell)) == doctest::Approx(1.0).epsilon(1e-8));

    std::mt19937_64 rng(4);
    const auto prod = tensor(qcorr::testing::random_density(1, rng), qcorr::testing::random_density(1, rng));
    CHECK(bipartite_discord(prod) < 1e-8);

    ComplexMatrix classical = ComplexMatrix::Zero(4, 4);
    classical(0, 0) = classical(3, 3) = 0.5;
    CHECK(bipartite_discord(DensityMatrix::from_matrix(classical)) < 1e-8);

    CHECK_THROWS_AS(bipartite_discord(ghz_state(3)), InvalidArgument);
}

TEST_CASE("closed-form discord curves") {
    CHECK(analytic_gqd(ChannelKind::PauliZ, 0.0) == doctest::Approx(1.0));
    CHECK(analytic_gqd(ChannelKind::Isotropic, 0.0) == doctest::Approx(1.0));
    CHECK(analytic_gqd(ChannelKind::PauliX, 0.0) == doctest::Approx(1.0));
    CHECK(pauli_z_discord_unhalved(0.0) == doctest::Approx(2.0));

    double prev_z = 2.0, prev_iso = 2.0;
    for (double kt = 0.0; kt <= 1.0; kt += 0.01) {
        const double z = analytic_gqd(ChannelKind::PauliZ, kt);
        const double iso = analytic_gqd(ChannelKind::Isotropic, kt);
        CHECK(z <= prev_z + 1e-15);
        CHECK(iso <= prev_iso + 1e-15);
        CHECK(z >= 0.0);
        CHECK(iso >= -1e-15);
        prev_z = z;
        prev_iso = iso;
        CHECK(analytic_gqd(ChannelKind::PauliY, kt) == analytic_gqd(ChannelKind::PauliX, kt));
    }

    const double star = sudden_change_point(ChannelKind::PauliX);
    CHECK(analytic_entropy_pauli_xy(star) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(star == doctest::Approx(0.1366).epsilon(1e-3));
    CHECK(sudden_change_point(ChannelKind::PauliY) == star);
    CHECK(analytic_gqd(ChannelKind::PauliX, star - 0.01) == doctest::Approx(1.0));
    CHECK(analytic_gqd(ChannelKind::PauliX, star + 0.01) < 1.0);
    CHECK_THROWS_AS(sudden_change_point(ChannelKind::PauliZ), InvalidArgument);
}
