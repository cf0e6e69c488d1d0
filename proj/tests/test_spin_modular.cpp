#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "spinmod/spin_modular.hpp"

using namespace spinmod;

TEST_CASE("grading and psi action for SU(2)_{4m+2}")
{
    for (int m = 1; m <= 4; ++m)
    {
        CAPTURE(m);
        ModularData md = su2_modular_data(m);
        const int psi = 4 * m + 2;
        auto eps = grade(md, psi);
        for (int j = 0; j < md.rank; ++j)
            CHECK(eps[j] == (j % 2 == 0 ? 1 : -1));
        auto action = psi_action(md, psi);
        for (int j = 0; j < md.rank; ++j)
        {
            CHECK(action[j] == psi - j);
            CHECK(action[action[j]] == j);
            CHECK(md.t_diag[action[j]] == -(CycNumber(eps[j]) * md.t_diag[j]));
        }
        CHECK(action[psi] == 0);
        auto parts = partition(md, psi, eps, action);
        CHECK(parts.pisigma == std::vector<int>{2 * m + 1});
        std::vector<int> all;
        for (const auto* part : {&parts.pi0, &parts.psi_pi0, &parts.piv, &parts.psi_piv, &parts.pisigma})
            all.insert(all.end(), part->begin(), part->end());
        std::sort(all.begin(), all.end());
        std::vector<int> labels(md.rank);
        std::iota(labels.begin(), labels.end(), 0);
        CHECK(all == labels);
    }
    CHECK_THROWS_AS(grade(su2_modular_data(1), 1), SpinStructureError);
}

TEST_CASE("partition of SU(2)_6")
{
    ModularData md = su2_modular_data(1);
    auto eps = grade(md, 6);
    auto parts = partition(md, 6, eps, psi_action(md, 6));
    CHECK(parts.pi0 == std::vector<int>{0, 2});
    CHECK(parts.psi_pi0 == std::vector<int>{6, 4});
    CHECK(parts.pisigma == std::vector<int>{3});
    CHECK(parts.piv == std::vector<int>{1});
    CHECK(parts.psi_piv == std::vector<int>{5});
}

TEST_CASE("block structure in the partitioned basis")
{
    for (int m = 1; m <= 4; ++m)
    {
        CAPTURE(m);
        SpinDecomposition d = decompose(su2_modular_data(m));
        CHECK(d.fermion == 4 * m + 2);
        const auto& b = d.blocks;
        CHECK(b.zero_blocks);
        CHECK(b.t_pattern);
        CHECK(b.b_symmetric);
        CHECK(b.shat_symmetric);
        CHECK(b.c_prime_signs);
        CHECK(b.s_squared);
        CHECK(b.st_cubed);
        CHECK(d.twist_consistent);
        CHECK(d.sigma_fixed);
        CHECK(d.passed());
        if (m == 1)
        {
            CHECK(b.b_block.rows() == 1);
            CHECK(b.b_block.cols() == 1);
        }
        // C = I for SU(2), hence C' = I.
        CHECK(b.c_prime.is_identity());
    }
}

TEST_CASE("extract_hat reproduces the PSU(2) data")
{
    for (int m = 1; m <= 4; ++m)
    {
        CAPTURE(m);
        ModularData md = su2_modular_data(m);
        HatData hat = extract_hat(md, 4 * m + 2);
        CHECK(hat.normalized);
        CHECK((hat.s_hat * hat.s_hat.adjoint()).is_identity());
        CHECK(hat.s_hat.is_symmetric());
        auto perm = match_up_to_permutation(hat, psu2_hat_data(m));
        REQUIRE(perm.has_value());
        for (int a = 0; a <= m; ++a)
        {
            long long j = 2 * a;
            // theta_{2a}^2 = exp(pi i (4a^2 + 4a) / (4m + 4))
            CHECK(hat.t_hat[a] * hat.t_hat[a] ==
                  CycNumber::root_of_unity(16 * (m + 1), 2 * (j * j + 2 * j)));
        }
    }
}

TEST_CASE("generic data keeps S^ in the D^2-scaled form")
{
    ModularData md = su2_modular_data(2);
    md.su2_m.reset();
    HatData raw = extract_hat(md, 10);
    CHECK_FALSE(raw.normalized);
    REQUIRE(raw.d_squared.has_value());
    CHECK(raw.s_hat == md.s_tilde.submatrix({0, 2, 4}, {0, 2, 4}));
}

TEST_CASE("permutation matching")
{
    HatData a = psu2_hat_data(3);
    HatData b = a;
    std::vector<int> order{2, 0, 3, 1};
    b.s_hat = a.s_hat.submatrix(order, order);
    b.t_hat = {a.t_hat[2], a.t_hat[0], a.t_hat[3], a.t_hat[1]};
    auto p = match_up_to_permutation(a, b);
    REQUIRE(p.has_value());
    CHECK(*p == order);
    CHECK_FALSE(match_up_to_permutation(a, psu2_hat_data(2)).has_value());
}

TEST_CASE("decomposition report")
{
    Json j = to_json(decompose(su2_modular_data(1)));
    CHECK(j["fermion"] == 6);
    CHECK(j["passed"] == true);
    CHECK(j["parts"]["pisigma"] == Json::array({3}));
}
