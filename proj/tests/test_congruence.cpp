#include <doctest.h>

#include <random>
#include <set>

#include "spinmod/congruence.hpp"

using namespace spinmod;

namespace
{

// Gamma_theta contains Gamma(2), so mod an even n it is exactly the det-1 matrices that reduce
// to I or [[0,1],[1,0]] mod 2.
std::set<std::string> brute_gamma_theta(int n)
{
    ModMatrixCarrier carrier(n, false);
    std::set<std::string> out;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                {
                    if (((a * d - b * c) % n + n) % n != 1)
                        continue;
                    bool identity = a % 2 == 1 && b % 2 == 0 && c % 2 == 0 && d % 2 == 1;
                    bool swap = a % 2 == 0 && b % 2 == 1 && c % 2 == 1 && d % 2 == 0;
                    if (identity || swap)
                        out.insert(carrier.encode({a, b, c, d}));
                }
    return out;
}

struct PairElement
{
    Mat2 q;
    CycMatrix p;
};

// Diagonal closure in Q_n x PU: the assignment factors through Q_n iff the graph has |Q_n| points.
struct PairCarrier
{
    using Element = PairElement;
    ModMatrixCarrier mod;
    CycMatrixCarrier proj{true};

    PairElement multiply(const PairElement& x, const PairElement& y) const
    {
        return {mod.multiply(x.q, y.q), x.p * y.p};
    }
    PairElement canonicalize(const PairElement& x) { return {mod.canonicalize(x.q), proj.canonicalize(x.p)}; }
    std::string encode(const PairElement& x) const { return mod.encode(x.q) + x.p.encode(); }
    bool is_invertible(const PairElement& x) const { return mod.is_invertible(x.q) && proj.is_invertible(x.p); }
    PairElement identity_like(const PairElement& x) const
    {
        return {mod.identity_like(x.q), CycMatrix::identity(x.p.rows(), x.p.conductor())};
    }
};

bool oracle_factors(const HatData& hat, int n)
{
    PairCarrier carrier{ModMatrixCarrier(n, false)};
    std::vector<PairElement> gens{{carrier.mod.reduce({0, -1, 1, 0}), hat.s_hat.embed(hat.conductor)},
                                  {carrier.mod.reduce({1, 2, 0, 1}), hat.t_hat_squared()}};
    auto graph = close(carrier, gens);
    return graph.order() == gamma_theta_mod_n(n).order();
}

Sl2zMat random_theta_word(std::mt19937& rng)
{
    const Sl2zMat t2 = Sl2zMat::t() * Sl2zMat::t();
    const Sl2zMat gens[4] = {Sl2zMat::s(), Sl2zMat::s().inverse(), t2, t2.inverse()};
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<int> length(0, 8);
    Sl2zMat g;
    for (int k = length(rng); k > 0; --k)
        g = g * gens[pick(rng)];
    return g;
}

} // namespace

TEST_CASE("theta subgroup membership and the map to Gamma_0(2)")
{
    CHECK(in_gamma_theta(Sl2zMat::s()));
    CHECK_FALSE(in_gamma_theta(Sl2zMat::t()));
    CHECK(in_gamma_theta(Sl2zMat::t() * Sl2zMat::t()));
    CHECK(theta_to_gamma0(Sl2zMat{}) == Sl2zMat{});
    CHECK(theta_to_gamma0(Sl2zMat::s()) == Sl2zMat{1, -1, 2, -1});
    CHECK(theta_to_gamma0(Sl2zMat::t() * Sl2zMat::t()) == Sl2zMat{1, 1, 0, 1});
    CHECK_THROWS_AS(theta_to_gamma0(Sl2zMat::t()), std::invalid_argument);
}

TEST_CASE("property: theta map is a homomorphism into Gamma_0(2) (1000 cases)")
{
    std::mt19937 rng(1234);
    int failures = 0;
    for (int trial = 0; trial < 1000; ++trial)
    {
        Sl2zMat g = random_theta_word(rng);
        Sl2zMat h = random_theta_word(rng);
        bool ok = g.det() == 1 && in_gamma_theta(g) && in_gamma_theta(g * h) && in_gamma_theta(g.inverse());
        Sl2zMat tg = theta_to_gamma0(g);
        ok &= tg.c % 2 == 0 && tg.det() == 1;
        ok &= theta_to_gamma0(g * h) == tg * theta_to_gamma0(h);
        failures += ok ? 0 : 1;
    }
    CHECK(failures == 0);
}

TEST_CASE("Gamma_theta mod n")
{
    CHECK(gamma_theta_mod_n(2).order() == 2);
    CHECK(gamma_theta_mod_n(4).order() == 16);
    CHECK(gamma_theta_mod_n(8).order() == 128);
    for (int n = 2; n <= 12; n += 2)
    {
        CAPTURE(n);
        auto table = gamma_theta_mod_n(n);
        CHECK(std::set<std::string>(table.keys.begin(), table.keys.end()) == brute_gamma_theta(n));
    }
    for (int n = 2; n <= 32; n += 2)
    {
        CAPTURE(n);
        CHECK(gamma_theta_mod_n(n).order() * 3 == sl2_table(n, false).order());
    }
    CHECK_THROWS_AS(gamma_theta_mod_n(5), std::invalid_argument);
}

TEST_CASE("index-3 lemma")
{
    LemmaReport two = verify_lemma_index3(2);
    CHECK(two.gamma_theta_order == 2);
    CHECK(two.two_part == 2);
    CHECK(two.passed());
    LemmaReport six = verify_lemma_index3(6);
    CHECK(six.gamma_theta_order == 48);
    CHECK(six.sl2_q_order == 24);
    CHECK(six.passed());
    LemmaReport eight = verify_lemma_index3(8);
    CHECK(eight.gamma_theta_order == 128);
    CHECK(eight.passed());
    for (int n : {4, 10, 12, 16, 18, 20, 24})
    {
        CAPTURE(n);
        CHECK(verify_lemma_index3(n).passed());
    }
    CHECK_THROWS(verify_lemma_index3(9));
}

TEST_CASE("congruence checks agree with the diagonal-closure oracle")
{
    for (int m = 1; m <= 2; ++m)
    {
        HatData hat = psu2_hat_data(m);
        for (int n = 2; n <= 8 * (m + 1); n += 2)
        {
            CAPTURE(m);
            CAPTURE(n);
            CHECK(congruence_check(hat, n) == oracle_factors(hat, n));
        }
    }
    HatData one = psu2_hat_data(1);
    CHECK(congruence_check(one, 8));
    CHECK_FALSE(congruence_check(one, 4));
    CHECK_THROWS_AS(congruence_check(one, 7), std::invalid_argument);
}

TEST_CASE("minimal levels")
{
    CongruenceReport r = minimal_level(psu2_hat_data(1), 32, "PSU(2)_6");
    REQUIRE(r.minimal_level.has_value());
    CHECK(*r.minimal_level == 8);
    CHECK(r.monotone);
    CHECK_FALSE(r.trivial_image);
    for (const auto& [n, pass] : r.tested)
        CHECK(pass == (n % 8 == 0));

    CongruenceReport svec = minimal_level(psu2_hat_data(0), 8, "sVec");
    CHECK(svec.trivial_image);
    CHECK(svec.minimal_level == 2);
    CHECK(svec.monotone);
    CHECK(to_json(svec)["minimal_level"] == 1);
    for (int n = 2; n <= 8; n += 2)
        CHECK(congruence_check(psu2_hat_data(0), n));
}

TEST_CASE("SL(2, Z) congruence check for SU(2)_6")
{
    ModularData md = su2_modular_data(1);
    CHECK(congruence_check_sl2(md, 32));
    CHECK_FALSE(congruence_check_sl2(md, 16));
    CHECK_FALSE(congruence_check_sl2(md, 1));

    ModularData unit;
    unit.rank = 1;
    unit.dual = {0};
    unit.s_tilde = CycMatrix::identity(1);
    unit.t_diag = {CycNumber(1)};
    CHECK(congruence_check_sl2(unit, 1));
}

TEST_CASE("infinite images hit the cap")
{
    HatData hat = psu2_hat_data(1);
    hat.t_hat = {CycNumber(1), CycNumber(BigRational(2))};
    CHECK_THROWS_AS(hat_projective_image(hat, 500), CapExceeded);
}
