#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "midgap/oracle_basis.hpp"
#include "midgap/oracle_hamiltonian.hpp"

using namespace midgap;

namespace {

Scenario window_scenario() {
    Scenario s;
    s.omega0 = 1.0;
    s.delta = 0.25;
    s.ebar = 10.5;
    s.delta1 = 2.0;
    s.delta2 = -0.5;
    s.gamma1 = 0.01;
    s.gamma2 = 0.02;
    s.m1 = 0.2;
    s.m2 = 0.15;
    s.mw = 0.3;
    s.n_atoms = 1.0;
    return s;
}

// Blunt odometer count of the same sector, no cleverness shared with the
// implementation.
int brute_count(int n_modes, int n_atoms, int sector, int cap) {
    int slots = n_modes + n_atoms;
    std::vector<int> occ(static_cast<std::size_t>(slots), 0);
    int count = 0;
    for (int n_w = 0; n_w <= sector; ++n_w) {
        for (;;) {
            int total = n_w;
            for (int v : occ) total += v;
            if (total == sector) ++count;
            int i = 0;
            for (; i < slots; ++i) {
                int limit = i < n_modes ? cap : 2;
                if (occ[static_cast<std::size_t>(i)] < limit) {
                    ++occ[static_cast<std::size_t>(i)];
                    break;
                }
                occ[static_cast<std::size_t>(i)] = 0;
            }
            if (i == slots) break;
        }
    }
    return count;
}

}  // namespace

TEST_CASE("sector dimensions match a brute force count") {
    CHECK(basis_dimension(1, 0, 1) == 2);
    CHECK(basis_dimension(2, 1, 2) == 10);
    CHECK(basis_dimension(5, 1, 2) == 28);
    for (int n_modes : {1, 2, 3, 5}) {
        for (int n_atoms : {0, 1, 2}) {
            for (int sector : {0, 1, 2}) {
                CHECK(basis_dimension(n_modes, n_atoms, sector) ==
                      static_cast<std::size_t>(brute_count(n_modes, n_atoms, sector, 2)));
            }
        }
    }
    CHECK_THROWS_AS(basis_dimension(-1, 0, 1), invalid_input);
}

TEST_CASE("basis states are unique, in-sector, and indexable") {
    auto basis = build_basis(5, 1, 2);
    REQUIRE(basis.size() == 28);

    std::set<std::uint64_t> keys;
    for (const auto& st : basis) {
        CHECK(total_excitation(st) == 2);
        keys.insert(state_key(st));
    }
    CHECK(keys.size() == basis.size());

    BasisIndex index(basis);
    for (std::size_t i = 0; i < basis.size(); ++i)
        CHECK(index.find(basis[i]) == static_cast<long>(i));

    BasisState outside;
    outside.n_w = 0;
    outside.mode_occ.assign(5, 0);
    outside.atom_level.assign(1, 0);
    CHECK(index.find(outside) == -1);  // vacuum is not in sector 2
}

TEST_CASE("capacity guards") {
    CHECK_THROWS_AS(build_basis(5, 1, 2, 2, 10), capacity_error);

    BasisState overfull;
    overfull.n_w = 16;
    CHECK_THROWS_AS(state_key(overfull), capacity_error);

    BasisState wide;
    wide.mode_occ.assign(16, 0);  // 17 slots with the waveguide
    CHECK_THROWS_AS(state_key(wide), capacity_error);
}

TEST_CASE("mode windows around the probe") {
    Scenario s = window_scenario();

    ModeSet pair = make_mode_set(s, 2);
    CHECK(pair.l_ref == 10);
    CHECK(pair.waveguide_freq == 10.75);
    REQUIRE(pair.mode_indices == std::vector<long>{10, 11});
    CHECK(mode_offsets(pair, s) == std::vector<double>{-0.5, 0.5});

    ModeSet four = make_mode_set(s, 4);
    REQUIRE(four.mode_indices == std::vector<long>{9, 10, 11, 12});
    CHECK(mode_offsets(four, s) == std::vector<double>{-1.5, -0.5, 0.5, 1.5});

    // Odd windows carry the unpaired mode below the midpoint.
    ModeSet three = make_mode_set(s, 3);
    REQUIRE(three.mode_indices == std::vector<long>{9, 10, 11});

    CHECK_THROWS_AS(make_mode_set(s, 1), invalid_input);
    Scenario low = s;
    low.ebar = 1.5;
    CHECK_THROWS_AS(make_mode_set(low, 4), invalid_input);
}

TEST_CASE("state labels") {
    Scenario s = window_scenario();
    ModeSet modes = make_mode_set(s, 2);

    BasisState st;
    st.mode_occ = {2, 0};
    st.atom_level = {1};
    CHECK(state_label(st, modes) == "2@l10 a0:1");
    st.n_w = 1;
    st.mode_occ = {0, 0};
    st.atom_level = {0};
    CHECK(state_label(st, modes) == "1w");
    st.n_w = 0;
    CHECK(state_label(st, modes) == "vacuum");
}

TEST_CASE("hamiltonian couplings carry the bose factors") {
    Scenario s = window_scenario();
    ModeSet modes = make_mode_set(s, 2);
    auto basis = build_basis(2, 0, 2);
    REQUIRE(basis.size() == 6);
    BasisIndex index(basis);
    HamiltonianMatrix h = build_hamiltonian(s, modes, basis, Frame::midpoint);
    Eigen::MatrixXd dense(h.coherent);
    CHECK((dense - dense.transpose()).norm() == 0.0);

    auto idx = [&](int n_w, int occ0, int occ1) {
        BasisState st;
        st.n_w = n_w;
        st.mode_occ = {occ0, occ1};
        long i = index.find(st);
        REQUIRE(i >= 0);
        return i;
    };

    double root2 = std::sqrt(2.0);
    CHECK(dense(idx(2, 0, 0), idx(1, 1, 0)) == doctest::Approx(root2 * s.mw).epsilon(1e-15));
    CHECK(dense(idx(1, 0, 1), idx(0, 0, 2)) == doctest::Approx(root2 * s.mw).epsilon(1e-15));
    CHECK(dense(idx(1, 1, 0), idx(0, 1, 1)) == doctest::Approx(s.mw).epsilon(1e-15));
    CHECK(dense(idx(2, 0, 0), idx(0, 1, 1)) == 0.0);  // no direct two-photon hop

    // Midpoint frame diagonals: photons measured from ebar.
    CHECK(dense(idx(2, 0, 0), idx(2, 0, 0)) == doctest::Approx(2.0 * s.delta).epsilon(1e-14));
    CHECK(dense(idx(0, 2, 0), idx(0, 2, 0)) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(dense(idx(0, 1, 1), idx(0, 1, 1)) == doctest::Approx(0.0));
    CHECK(h.decay.norm() == 0.0);  // no atoms, nothing decays
}

TEST_CASE("atomic couplings, decay, and frames") {
    Scenario s = window_scenario();
    ModeSet modes = make_mode_set(s, 2);
    auto basis = build_basis(2, 1, 1);
    REQUIRE(basis.size() == 4);
    BasisIndex index(basis);

    auto idx = [&](int n_w, int occ0, int occ1, int level) {
        BasisState st;
        st.n_w = n_w;
        st.mode_occ = {occ0, occ1};
        st.atom_level = {level};
        long i = index.find(st);
        REQUIRE(i >= 0);
        return i;
    };

    HamiltonianMatrix probe = build_hamiltonian(s, modes, basis, Frame::probe);
    Eigen::MatrixXd hp(probe.coherent);
    CHECK(hp(idx(0, 1, 0, 0), idx(0, 0, 0, 1)) == doctest::Approx(s.m1).epsilon(1e-15));
    CHECK(hp(idx(1, 0, 0, 0), idx(1, 0, 0, 0)) == 0.0);
    CHECK(hp(idx(0, 1, 0, 0), idx(0, 1, 0, 0)) == doctest::Approx(-0.75).epsilon(1e-14));
    CHECK(hp(idx(0, 0, 1, 0), idx(0, 0, 1, 0)) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(hp(idx(0, 0, 0, 1), idx(0, 0, 0, 1)) ==
          doctest::Approx(s.delta1 - s.delta).epsilon(1e-14));

    HamiltonianMatrix mid = build_hamiltonian(s, modes, basis, Frame::midpoint);
    Eigen::MatrixXd hm(mid.coherent);
    CHECK(hm(idx(1, 0, 0, 0), idx(1, 0, 0, 0)) == doctest::Approx(s.delta).epsilon(1e-14));
    CHECK(hm(idx(0, 0, 0, 1), idx(0, 0, 0, 1)) == doctest::Approx(s.delta1).epsilon(1e-14));

    HamiltonianMatrix lab = build_hamiltonian(s, modes, basis, Frame::none);
    Eigen::MatrixXd hl(lab.coherent);
    CHECK(hl(idx(1, 0, 0, 0), idx(1, 0, 0, 0)) == doctest::Approx(10.75).epsilon(1e-14));
    CHECK(hl(idx(0, 1, 0, 0), idx(0, 1, 0, 0)) == doctest::Approx(10.0).epsilon(1e-14));

    CHECK(probe.decay[idx(0, 0, 0, 1)] == s.gamma1);
    CHECK(probe.decay[idx(1, 0, 0, 0)] == 0.0);

    // Second level: reachable in sector 2, couples through m2, decays at
    // gamma2, and its probe-frame energy carries delta2.
    auto basis2 = build_basis(2, 1, 2);
    BasisIndex index2(basis2);
    HamiltonianMatrix h2 = build_hamiltonian(s, modes, basis2, Frame::probe);
    Eigen::MatrixXd d2(h2.coherent);
    auto idx2 = [&](int n_w, int occ0, int occ1, int level) {
        BasisState st;
        st.n_w = n_w;
        st.mode_occ = {occ0, occ1};
        st.atom_level = {level};
        long i = index2.find(st);
        REQUIRE(i >= 0);
        return i;
    };
    CHECK(d2(idx2(0, 1, 0, 1), idx2(0, 0, 0, 2)) == doctest::Approx(s.m2).epsilon(1e-15));
    CHECK(d2(idx2(0, 0, 0, 2), idx2(0, 0, 0, 2)) ==
          doctest::Approx(s.delta2 - 2.0 * s.delta).epsilon(1e-13));
    CHECK(h2.decay[idx2(0, 0, 0, 2)] == s.gamma2);
    CHECK(h2.decay[idx2(0, 1, 0, 1)] == s.gamma1);
}

TEST_CASE("hamiltonian rejects malformed bases") {
    Scenario s = window_scenario();
    ModeSet modes = make_mode_set(s, 2);

    auto mixed = build_basis(2, 1, 1);
    auto sector2 = build_basis(2, 1, 2);
    mixed.push_back(sector2.front());
    CHECK_THROWS_AS(build_hamiltonian(s, modes, mixed, Frame::probe), invalid_input);

    auto wrong_width = build_basis(3, 1, 1);
    CHECK_THROWS_AS(build_hamiltonian(s, modes, wrong_width, Frame::probe), invalid_input);

    std::vector<BasisState> empty;
    CHECK_THROWS_AS(build_hamiltonian(s, modes, empty, Frame::probe), invalid_input);
}
