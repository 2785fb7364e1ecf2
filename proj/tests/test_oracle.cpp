#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "flatband/errors.hpp"
#include "flatband/meanfield.hpp"
#include "flatband/model.hpp"
#include "flatband/oracle.hpp"
#include "flatband/spectra.hpp"
#include "tensor_oracle.hpp"

using namespace flatband;

namespace {

FullModelSpec make_spec(int n_sites, Dispersion d, int n_max_site,
                        double omega_coupling) {
    FullModelSpec spec;
    spec.n_sites = n_sites;
    spec.dispersion = std::move(d);
    spec.n_max_site = n_max_site;
    spec.omega_coupling = omega_coupling;
    return spec;
}

/// Three numbers from a report row that starts with the two given words.
bool parse_row(const std::string& text, const std::string& w0,
               const std::string& w1, double out[3]) {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream tok(line);
        std::string a, b;
        if (!(tok >> a >> b) || a != w0 || b != w1) continue;
        if (tok >> out[0] >> out[1] >> out[2]) return true;
    }
    return false;
}

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("single-site model at zero coupling") {
    const RabiGround g = rabi_ground_at(1.0, 1.0, 0.0, 10);
    CHECK(g.energy == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(g.sigma_z == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(g.photon_number <= 1e-15);
    CHECK(g.n_max_used == 10);
}

TEST_CASE("single-site energy against perturbation theory") {
    const RabiGround g = rabi_ground(1.0, 1.0, 0.1, 40);
    CHECK(std::abs(g.energy - (-0.5050125)) < 2e-5);
    CHECK(g.sigma_z > -1.0);
}

TEST_CASE("single-site convergence check") {
    CHECK_THROWS_AS(rabi_ground(1.0, 1.0, 2.0, 8), ConvergenceError);
    CHECK_NOTHROW(rabi_ground(1.0, 1.0, 0.5, 40));
    CHECK_THROWS_AS(rabi_ground_at(0.0, 1.0, 0.5, 10), InvalidParameterError);
    CHECK_THROWS_AS(rabi_ground_at(1.0, 1.0, -0.5, 10), InvalidParameterError);
}

TEST_CASE("one lattice site is the single-site model") {
    const FullModelSpec spec =
        make_spec(1, make_flat_dispersion(1.0, 1), 10, 0.8);
    const SymmetricMatrix h = build_full_hamiltonian(spec);

    const ModelParams p =
        params_from_dispersion(spec.dispersion, spec.omega_coupling, 10);
    const SymmetricMatrix mf = build_mean_field_hamiltonian(p, 0.0);
    REQUIRE(h.dimension() == mf.dimension());
    for (int i = 0; i < h.dimension(); ++i)
        for (int j = 0; j <= i; ++j) CHECK(h(i, j) == mf(i, j));

    const double e = ground_eigenpair(h).value;
    CHECK(std::abs(e - rabi_ground_at(1.0, 1.0, 0.8, 10).energy) < 1e-13);
}

TEST_CASE("flat two-site lattice factorizes at matched cutoffs") {
    for (double omega : {0.2, 0.8, 1.5}) {
        const FullModelSpec spec =
            make_spec(2, make_flat_dispersion(1.0, 2), 8, omega);
        const EigenPair pair = ground_eigenpair(build_full_hamiltonian(spec));
        const RabiGround single = rabi_ground_at(1.0, 1.0, omega, 8);
        const double scale = std::max(1.0, 2.0 * std::abs(single.energy));
        CHECK(std::abs(pair.value - 2.0 * single.energy) <= 1e-10 * scale);
    }
}

TEST_CASE("two decoupled sites at zero coupling") {
    const FullModelSpec spec =
        make_spec(2, make_flat_dispersion(1.0, 2), 4, 0.0);
    const EigenPair pair = ground_eigenpair(build_full_hamiltonian(spec));
    CHECK(std::abs(pair.value + 1.0) < 1e-12);
}

TEST_CASE("lattice builder matches the tensor-product construction") {
    const FullModelSpec spec =
        make_spec(2, make_cosine_dispersion(1.0, 0.5, 2), 2, 0.4);
    const SymmetricMatrix h = build_full_hamiltonian(spec);
    // Cosine width 0.5 over two sites: on-site frequency 1.5, hopping -0.5.
    const auto ref = tensor_oracle::two_site_lattice(1.0, 1.5, -0.5, 0.4, 3);
    REQUIRE(h.dimension() == 36);
    REQUIRE(ref.size() == 36);
    for (int i = 0; i < 36; ++i)
        for (int j = 0; j < 36; ++j)
            CHECK(std::abs(h(i, j) -
                           ref[static_cast<std::size_t>(i)]
                              [static_cast<std::size_t>(j)]) <= 1e-14);
}

TEST_CASE("lattice ground energy never rises with the coupling") {
    double prev = 1e300;
    for (double omega : {0.0, 0.3, 0.6, 0.9}) {
        const FullModelSpec spec =
            make_spec(2, make_cosine_dispersion(1.0, 0.3, 2), 6, omega);
        const double e = ground_eigenpair(build_full_hamiltonian(spec)).value;
        CHECK(e <= prev + 1e-12);
        prev = e;
    }
}

TEST_CASE("asymmetric dispersions are rejected") {
    const FullModelSpec spec = make_spec(
        3, Dispersion::from_samples({1.0, 1.3, 1.6}), 3, 0.2);
    CHECK_THROWS_AS(build_full_hamiltonian(spec), InvalidParameterError);
}

TEST_CASE("specification validation") {
    CHECK_THROWS_AS(make_spec(4, make_flat_dispersion(1.0, 4), 4, 0.1)
                        .validate(),
                    InvalidParameterError);
    CHECK_THROWS_AS(make_spec(2, make_flat_dispersion(1.0, 3), 4, 0.1)
                        .validate(),
                    InvalidParameterError);
    CHECK_THROWS_AS(make_spec(2, make_flat_dispersion(1.0, 2), -1, 0.1)
                        .validate(),
                    InvalidParameterError);
    CHECK_THROWS_AS(make_spec(2, make_flat_dispersion(1.0, 2), 4, -0.1)
                        .validate(),
                    InvalidParameterError);
    // 3 sites with 11 Fock states: 22^3 = 10648 states, over the cap.
    CHECK_THROWS_AS(make_spec(3, make_flat_dispersion(1.0, 3), 10, 0.1)
                        .validate(),
                    SizeError);
    CHECK(make_spec(2, make_flat_dispersion(1.0, 2), 10, 0.1)
              .hilbert_dimension() == 484);
}

TEST_CASE("comparison report in the dispersionless limit") {
    const FullModelSpec spec =
        make_spec(2, make_flat_dispersion(1.0, 2), 12, 0.7);
    const ComparisonReport rep = compare_full_vs_meanfield(spec);
    CHECK(rep.flat_checked);
    CHECK(rep.flat_pass);
    CHECK(rep.mean_field.psi_star == 0.0);
    CHECK(std::abs(rep.full_energy_per_site - rep.rabi_energy) <= 1e-10);
    CHECK(std::abs(rep.mean_field.ground_energy - rep.rabi_energy) <= 1e-7);
    CHECK(!rep.details.empty());

    const std::string text = format_report(rep);
    CHECK(text.find("flat-dispersion identity: PASS") != std::string::npos);
}

TEST_CASE("comparison report at zero coupling") {
    const FullModelSpec spec =
        make_spec(2, make_cosine_dispersion(1.0, 0.4, 2), 10, 0.0);
    const ComparisonReport rep = compare_full_vs_meanfield(spec);
    CHECK(!rep.flat_checked);
    CHECK(std::abs(rep.full_energy_per_site + 0.5) < 1e-9);
    CHECK(std::abs(rep.rabi_energy + 0.5) < 1e-9);
    CHECK(std::abs(rep.mean_field.ground_energy + 0.5) < 1e-9);
    CHECK(rep.delta == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("committed fixture still reproduces") {
    const std::string path =
        std::string(FLATBAND_FIXTURE_DIR) + "/lattice_cosine.txt";
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing fixture ", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string fixture = buf.str();

    double lattice[3], single[3], mean_field[3];
    REQUIRE(parse_row(fixture, "exact", "lattice", lattice));
    REQUIRE(parse_row(fixture, "single", "site", single));
    REQUIRE(parse_row(fixture, "mean", "field", mean_field));

    const FullModelSpec spec =
        make_spec(2, make_cosine_dispersion(1.0, 0.4, 2), 10, 0.6);
    const ComparisonReport rep = compare_full_vs_meanfield(spec);

    CHECK(std::abs(rep.full_energy_per_site - lattice[0]) <=
          1e-12 * std::max(1.0, std::abs(lattice[0])));
    CHECK(std::abs(rep.full_sigma_z - lattice[1]) <= 1e-8);
    CHECK(std::abs(rep.full_photons_per_site - lattice[2]) <= 1e-8);
    CHECK(std::abs(rep.rabi_energy - single[0]) <=
          1e-12 * std::max(1.0, std::abs(single[0])));
    CHECK(std::abs(rep.rabi_sigma_z - single[1]) <= 1e-8);
    CHECK(std::abs(rep.mean_field.ground_energy - mean_field[0]) <= 1e-9);
}

} // TEST_SUITE
