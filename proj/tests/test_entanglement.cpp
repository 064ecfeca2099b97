#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcorr/channels.hpp"
#include "qcorr/entanglement.hpp"
#include "test_support.hpp"

using namespace qcorr;

namespace {

ComplexVector w_state(int n) {
    ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << n);
    for (int q = 0; q < n; ++q) v(Eigen::Index{1} << q) = 1.0 / std::sqrt(static_cast<double>(n));
    return v;
}

}  // namespace

TEST_CASE("SO(d) generators") {
    CHECK(so_generators(2).size() == 1);
    CHECK(so_generators(8).size() == 28);
    const auto gens = so_generators(4);
    REQUIRE(gens.size() == 6);
    CHECK(gens.front().p == 0);
    CHECK(gens.front().q == 1);
    CHECK(gens.back().p == 2);
    CHECK(gens.back().q == 3);
    for (const auto& g : gens) {
        const Eigen::MatrixXd m = g.matrix();
        CHECK((m + m.transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(m(g.p, g.q) == 1.0);
        CHECK(m(g.q, g.p) == -1.0);
        CHECK(m.cwiseAbs().sum() == 2.0);
    }
}

TEST_CASE("terms per cut") {
    // K = 2^(N-2) (2^(N-1) - 1).
    std::mt19937_64 rng(1);
    CHECK(cut_terms(qcorr::testing::random_density(3, rng), 0).terms.size() == 6);
    CHECK(cut_terms(ghz_state(4), 2).terms.size() == 28);
    CHECK(cut_terms(ghz_state(5), 4).terms.size() == 120);
    CHECK_THROWS_AS(cut_terms(ghz_state(2), 0), InvalidArgument);
    CHECK_THROWS_AS(cut_terms(ghz_state(4), 4), InvalidArgument);
}

TEST_CASE("pure concurrence") {
    CHECK(pure_concurrence(DensityMatrix::basis_state(4, 0).matrix().col(0)) == doctest::Approx(0.0));
    ComplexVector ghz = ComplexVector::Zero(16);
    ghz(0) = ghz(15) = 1.0 / std::sqrt(2.0);
    CHECK(pure_concurrence(ghz) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    // W: each marginal is diag(3/4, 1/4), purity 5/8.
    CHECK(pure_concurrence(w_state(4)) == doctest::Approx(std::sqrt(3.0 / 8.0)).epsilon(1e-14));
}

TEST_CASE("GHZ has one unit term per cut") {
    const auto ghz = ghz_state(4);
    for (int cut = 0; cut < 4; ++cut) {
        const auto set = cut_terms(ghz, cut);
        CHECK(set.sum_of_squares() == doctest::Approx(1.0).epsilon(1e-10));
        int unit = 0;
        for (const auto& t : set.terms) {
            if (t.c > 0.5) {
                ++unit;
                CHECK(t.generator.p == 0);
                CHECK(t.generator.q == 7);
                CHECK(t.lambdas[0] == doctest::Approx(1.0).epsilon(1e-10));
                CHECK(t.lambdas[1] < 1e-6);
            }
        }
        CHECK(unit == 1);
    }
    const auto tau = tau_lower_bound(ghz);
    CHECK(tau.raw == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(tau.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(calibrated_convention_scale() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(tau_lower_bound(ghz, 1.0).value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("lambdas are sorted and nonnegative") {
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 3; ++rep) {
        const auto rho = qcorr::testing::random_density(4, rng);
        for (const auto& t : cut_terms(rho, rep).terms) {
            CHECK(t.lambdas[3] >= 0.0);
            for (int i = 1; i < 4; ++i) CHECK(t.lambdas[i - 1] >= t.lambdas[i]);
            CHECK(t.c == doctest::Approx(std::max(0.0, t.lambdas[0] - t.lambdas[1] - t.lambdas[2] - t.lambdas[3])));
        }
    }
}

TEST_CASE("tau is invariant under qubit relabelling") {
    std::mt19937_64 rng(14);
    const auto rho = qcorr::testing::random_density(4, rng);
    // Mix in GHZ so the bound is nonzero.
    const auto mixed = DensityMatrix::from_matrix(0.2 * rho.matrix() + 0.8 * ghz_state(4).matrix());
    const double base = tau_lower_bound(mixed).value;
    CHECK(base > 0.1);
    const std::vector<int> perm{2, 0, 3, 1};
    CHECK(tau_lower_bound(permute_qubits(mixed, perm)).value == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("Pauli-Z bound equals its closed form") {
    for (double kt : {0.0, 0.05, 0.2, 0.5}) {
        const double numeric = tau_lower_bound(closed_form_state(ChannelKind::PauliZ, kt)).value;
        CHECK(numeric == doctest::Approx(analytic_tau(ChannelKind::PauliZ, kt)).epsilon(1e-9));
        CHECK(numeric == doctest::Approx(std::sqrt(2.0) * std::exp(-8 * kt)).epsilon(1e-9));
    }
}

TEST_CASE("closed-form tau curves") {
    for (ChannelKind k : kAllChannels) CHECK(analytic_tau(k, 0.0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(analytic_tau(ChannelKind::Isotropic, 0.03) == doctest::Approx(0.5814).epsilon(1e-4));
    CHECK(analytic_tau(ChannelKind::PauliX, 0.3) == 0.0);
    for (double kt = 0.0; kt < 0.5; kt += 0.05)
        CHECK(analytic_tau(ChannelKind::PauliY, kt) == analytic_tau(ChannelKind::PauliX, kt));
    CHECK_THROWS_AS(analytic_tau(ChannelKind::PauliX, -0.01), InvalidArgument);
}

TEST_CASE("vanishing times") {
    // X: u = exp(-4kt) solves u^2 + 6u - 3 = 0.
    const double x_root = -std::log(std::sqrt(12.0) - 3.0) / 4.0;
    // Isotropic: u = exp(-8kt) solves 9u^2 + 6u - 7 = 0.
    const double iso_root = -std::log((-3.0 + std::sqrt(72.0)) / 9.0) / 8.0;
    CHECK(tau_vanishing_time(ChannelKind::PauliX).value() == doctest::Approx(x_root).epsilon(1e-9));
    CHECK(tau_vanishing_time(ChannelKind::PauliY).value() == doctest::Approx(x_root).epsilon(1e-9));
    CHECK(tau_vanishing_time(ChannelKind::Isotropic).value() == doctest::Approx(iso_root).epsilon(1e-9));
    CHECK_FALSE(tau_vanishing_time(ChannelKind::PauliZ).has_value());
    CHECK(x_root == doctest::Approx(0.1919129).epsilon(1e-6));
    CHECK(iso_root == doctest::Approx(0.061894).epsilon(1e-5));
}

TEST_CASE("PPT") {
    for (double kt : {0.0, 0.1, 0.3}) {
        const auto rz = closed_form_state(ChannelKind::PauliZ, kt);
        CHECK(ppt_min_eigenvalue(rz, {0}) == doctest::Approx(-0.5 * std::exp(-8 * kt)).epsilon(1e-12));
    }
    CHECK(ppt_min_eigenvalue(DensityMatrix::maximally_mixed(4), {0, 1}) == doctest::Approx(0.0625));
    CHECK(ppt_min_eigenvalue(ghz_state(4), {0, 1}) == doctest::Approx(-0.5));
}
