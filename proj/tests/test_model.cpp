#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cdw/errors.hpp"
#include "cdw/model.hpp"
#include "cdw/rng.hpp"

using namespace cdw;

TEST_CASE("pcg32 reference stream") {
    // First outputs of PCG32 XSH-RR for seed 42, stream 54, per the published
    // reference implementation.
    Pcg32 rng(42, 54);
    CHECK(rng.next_u32() == 0xa15c02b7u);
    CHECK(rng.next_u32() == 0x7b47f409u);
    CHECK(rng.next_u32() == 0xba1d3330u);
}

TEST_CASE("pcg32 uniform in [0,1)") {
    Pcg32 rng(7);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("derive_seed changes with either input") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("single-site lattice") {
    const auto lat = generate_impurities(1, 1.0, 1.0, 7, 0.0);
    REQUIRE(lat.size() == 1);
    CHECK(lat.sites[0] > 0.0);
    CHECK(lat.sites[0] < 1.0);
    CHECK(lat.pinning_phases[0] >= 0.0);
    CHECK(lat.pinning_phases[0] < 2.0 * std::numbers::pi);
}

TEST_CASE("min-gap property over 50 seeds") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto lat = generate_impurities(100, 1.0, 100.0, seed, 0.05);
        REQUIRE(lat.size() == 100);
        for (std::size_t i = 0; i + 1 < lat.size(); ++i) {
            CHECK(lat.sites[i + 1] > lat.sites[i]);
            CHECK(lat.sites[i + 1] - lat.sites[i] >= 0.05);
        }
        // The wrap gap is held to the same floor.
        CHECK(lat.sites.front() + lat.grid_length - lat.sites.back() >= 0.05);
    }
}

TEST_CASE("generation is deterministic") {
    const auto a = generate_impurities(64, 1.0, 64.0, 42, 0.01);
    const auto b = generate_impurities(64, 1.0, 64.0, 42, 0.01);
    CHECK(a.sites == b.sites);
    CHECK(a.pinning_phases == b.pinning_phases);
}

TEST_CASE("lattice invariants hold across a 1000-seed sweep") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto lat = generate_impurities(20, 1.0, 20.0, seed, 0.02);
        CHECK_NOTHROW(lat.validate());
    }
}

TEST_CASE("infeasible packing and invalid parameters") {
    CHECK_THROWS_AS(generate_impurities(10, 1.0, 1.0, 0, 0.2), InfeasiblePackingError);
    CHECK_THROWS_AS(generate_impurities(0, 1.0, 1.0, 0, 0.0), InvalidParameterError);
    CHECK_THROWS_AS(generate_impurities(4, 1.0, -1.0, 0, 0.0), InvalidParameterError);
}

TEST_CASE("concentration scales sites and domain") {
    const auto unit = generate_impurities(16, 1.0, 16.0, 3, 0.01);
    const auto scaled = generate_impurities(16, 2.5, 16.0, 3, 0.01);
    REQUIRE(unit.size() == scaled.size());
    CHECK(scaled.grid_length == doctest::Approx(2.5 * unit.grid_length));
    for (std::size_t i = 0; i < unit.size(); ++i)
        CHECK(scaled.sites[i] == doctest::Approx(2.5 * unit.sites[i]));
    // Pinning phases are drawn from the same stream, independent of c.
    CHECK(unit.pinning_phases == scaled.pinning_phases);
}

TEST_CASE("field_at spec values") {
    DriveField d;
    d.e_dc = 0.5;
    d.e_ac = 0.0;
    d.omega = 2.0;
    CHECK(field_at(d, 3.7) == 0.5);

    d.e_ac = 0.2;
    d.omega = 1.0;
    CHECK(field_at(d, 0.0) == doctest::Approx(0.5));
    CHECK(field_at(d, std::numbers::pi / 2.0) == doctest::Approx(0.7));
}

TEST_CASE("field_at periodicity") {
    DriveField d;
    d.e_dc = 0.3;
    d.e_ac = 0.11;
    d.omega = 0.7;
    const double period = 2.0 * std::numbers::pi / d.omega;
    for (double t : {0.0, 0.4, 1.9, 12.0})
        CHECK(field_at(d, t + period) == doctest::Approx(field_at(d, t)).epsilon(1e-12));
}

TEST_CASE("drive field validation") {
    DriveField d;
    d.e_ac = 0.1;
    d.omega = 0.0;
    CHECK_THROWS_AS(d.validate(), InvalidParameterError);
    d.e_ac = -0.1;
    CHECK_THROWS_AS(d.validate(), InvalidParameterError);
}
