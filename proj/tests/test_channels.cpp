#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>

#include "qcorr/channels.hpp"
#include "test_support.hpp"

using namespace qcorr;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("channel names") {
    for (ChannelKind k : kAllChannels) CHECK(parse_channel(channel_name(k)) == k);
    CHECK(channel_name(ChannelKind::Isotropic) == "iso");
    CHECK_THROWS_AS(parse_channel("w"), InvalidArgument);
    CHECK_THROWS_AS(NoiseChannel(ChannelKind::PauliX, 0.0), InvalidArgument);
    CHECK_THROWS_AS(NoiseChannel(ChannelKind::PauliX, -1.0), InvalidArgument);
}

TEST_CASE("lindblad operators") {
    CHECK(lindblad_operators(NoiseChannel(ChannelKind::PauliZ), 4).size() == 4);
    CHECK(lindblad_operators(NoiseChannel(ChannelKind::Isotropic), 4).size() == 12);
    const auto ops = lindblad_operators(NoiseChannel(ChannelKind::PauliX, 4.0), 2);
    CHECK(ops[0].op.isApprox(2.0 * pauli_x()));
}

TEST_CASE("ghz state") {
    const auto g = ghz_state(4);
    CHECK(std::abs(g(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(g(15, 15) - 0.5) < 1e-15);
    CHECK(std::abs(g(0, 15) - 0.5) < 1e-15);
    CHECK(g.purity() == doctest::Approx(1.0));
    CHECK_THROWS_AS(ghz_state(1), InvalidArgument);
}

TEST_CASE("closed-form coefficients") {
    for (double kt : {0.0, 0.01, 0.1, 0.3, 2.0}) {
        const auto c = coefficients(ChannelKind::PauliX, kt);
        // Hamming-weight multiplicities 1, 4, 6, 4, 1.
        CHECK(2 * c.alpha + 8 * c.beta + 6 * c.gamma == doctest::Approx(1.0).epsilon(1e-14));
        const auto ci = coefficients(ChannelKind::Isotropic, kt);
        CHECK(2 * ci.alpha_plus + 8 * ci.beta_tilde + 6 * ci.gamma_tilde == doctest::Approx(1.0).epsilon(1e-14));
    }
    const auto c0 = coefficients(ChannelKind::PauliX, 0.0);
    CHECK(c0.alpha == doctest::Approx(0.5));
    CHECK(c0.beta == doctest::Approx(0.0));
    CHECK(c0.gamma == doctest::Approx(0.0));

    CHECK_THROWS_AS(closed_form_state(ChannelKind::PauliX, -0.1), InvalidArgument);
}

TEST_CASE("closed forms at t = 0 reproduce GHZ") {
    for (ChannelKind k : kAllChannels)
        CHECK(max_abs(closed_form_state(k, 0.0).matrix() - ghz_state(4).matrix()) < 1e-15);
}

TEST_CASE("closed forms match the exact propagator") {
    const auto ghz = ghz_state(4);
    for (ChannelKind k : kAllChannels) {
        for (double kappa : {1.0, 0.5}) {
            const NoiseChannel ch(k, kappa);
            for (double t : {0.013, 0.1, 0.37}) {
                const ComplexMatrix exact = qcorr::testing::exact_evolution(ghz, ch, t);
                const auto cf = closed_form_state(ch, kappa * t);
                INFO("channel " << channel_name(k) << " kappa " << kappa << " t " << t);
                CHECK(max_abs(cf.rho.matrix() - exact) < 1e-12);
                CHECK(cf.scaled_time == doctest::Approx(kappa * t));
            }
        }
    }
}

TEST_CASE("closed-form structure") {
    const double kt = 0.2;
    const auto rx = closed_form_state(ChannelKind::PauliX, kt);
    const auto ry = closed_form_state(ChannelKind::PauliY, kt);
    for (int i = 0; i < 16; ++i) {
        CHECK(rx(i, 15 - i) == rx(i, i));
        CHECK(ry(i, i) == rx(i, i));
        const double sign = (std::popcount(static_cast<unsigned>(i)) % 2 == 0) ? 1.0 : -1.0;
        CHECK(std::abs(ry(i, 15 - i) - sign * rx(i, i)) < 1e-15);
    }
    CHECK(hermiticity_error(ry.matrix()) == 0.0);

    const auto rz = closed_form_state(ChannelKind::PauliZ, kt);
    CHECK(rz(0, 15).real() == doctest::Approx(0.5 * std::exp(-8 * kt)));
    CHECK(rz(0, 0).real() == doctest::Approx(0.5));
}

TEST_CASE("generator") {
    const auto ghz = ghz_state(4);
    const NoiseChannel z(ChannelKind::PauliZ, 1.0);
    const ComplexMatrix g = lindblad_generator(ghz, z);
    CHECK(g(0, 15).real() == doctest::Approx(-4.0));
    CHECK(g(0, 0).real() == doctest::Approx(0.0));
    CHECK(std::abs(g.trace()) < 1e-14);

    // Fixed point of the isotropic channel.
    CHECK(max_abs(lindblad_generator(DensityMatrix::maximally_mixed(4), NoiseChannel(ChannelKind::Isotropic))) <
          1e-15);

    SUBCASE("finite-difference derivative of the closed form") {
        const double h = 1e-5;
        for (ChannelKind k : kAllChannels) {
            const NoiseChannel ch(k, 1.0);
            for (double kt : {0.05, 0.25}) {
                const ComplexMatrix fd =
                    (closed_form_state(k, kt + h).matrix() - closed_form_state(k, kt - h).matrix()) / (2 * h);
                CHECK(max_abs(fd - lindblad_generator(closed_form_state(k, kt), ch)) < 1e-7);
            }
        }
    }

    SUBCASE("trace and hermiticity preserved on random input") {
        std::mt19937_64 rng(17);
        const auto rho = qcorr::testing::random_density(3, rng);
        for (ChannelKind k : kAllChannels) {
            const ComplexMatrix d = lindblad_generator(rho, NoiseChannel(k, 0.7));
            CHECK(std::abs(d.trace()) < 1e-13);
            CHECK(hermiticity_error(d) < 1e-13);
        }
    }
}

TEST_CASE("numeric integration") {
    const auto ghz = ghz_state(4);
    for (ChannelKind k : kAllChannels) {
        const NoiseChannel ch(k, 1.0);
        for (double t : {0.05, 0.3}) {
            IntegratorReport rep;
            const auto num = evolve_numeric(ghz, ch, t, 1e-10, &rep);
            INFO("channel " << channel_name(k) << " t " << t);
            CHECK(max_abs(num.matrix() - closed_form_state(k, t).matrix()) < 1e-8);
            CHECK(rep.steps > 0);
            CHECK(8.0 * rep.step_size <= 0.01 + 1e-15);
            CHECK(rep.richardson_error <= 1e-10);
        }
    }

    SUBCASE("other rates and dimensions") {
        std::mt19937_64 rng(23);
        const auto rho = qcorr::testing::random_density(2, rng);
        const NoiseChannel ch(ChannelKind::Isotropic, 2.5);
        const auto num = evolve_numeric(rho, ch, 0.2);
        CHECK(max_abs(num.matrix() - qcorr::testing::exact_evolution(rho, ch, 0.2)) < 1e-8);
    }

    SUBCASE("long-time isotropic limit is maximally mixed") {
        const auto late = closed_form_state(ChannelKind::Isotropic, 10.0);
        CHECK(max_abs(late.matrix() - DensityMatrix::maximally_mixed(4).matrix()) < 1e-12);
    }

    CHECK(evolve_numeric(ghz, NoiseChannel(ChannelKind::PauliX), 0.0).matrix() == ghz.matrix());
    CHECK_THROWS_AS(evolve_numeric(ghz, NoiseChannel(ChannelKind::PauliX), -1.0), InvalidArgument);
}
