// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spinmod/casestudy.hpp"
#include "spinmod/congruence.hpp"
#include "spinmod/cyclotomic.hpp"
#include "spinmod/group_engine.hpp"
#include "spinmod/modular_data.hpp"
#include "spinmod/spin_modular.hpp"

using namespace spinmod;

namespace
{

struct Outcome
{
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok)
        {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

CaseStudyOptions orders_only()
{
    CaseStudyOptions o;
    o.compute_levels = false;
    return o;
}

void criterion1(Outcome& out)
{
    const std::uint64_t abar[] = {16, 12, 128, 60, 192, 168};
    const std::uint64_t derived[] = {8, 8, 64, 120, 64, 336};
    for (const auto& row : table1(6, orders_only()))
    {
        out.require(row.closed, "closure m=" + std::to_string(row.m));
        out.require(row.quotient_order == abar[row.m - 1], "|Abar_" + std::to_string(row.m) + "| = " +
                                                               std::to_string(row.quotient_order));
        out.require(row.derived_order == derived[row.m - 1],
                    "|A'_" + std::to_string(row.m) + "| = " + std::to_string(row.derived_order));
        out.detail << " m=" << row.m << ":" << row.quotient_order << "/" << row.derived_order;
    }
}

void criterion2(Outcome& out)
{
    for (int m = 1; m <= 4; ++m)
    {
        CongruenceReport r = minimal_level(psu2_hat_data(m), 16 * (m + 1));
        out.require(r.minimal_level == 4 * (m + 1), "level m=" + std::to_string(m));
        out.require(r.monotone, "monotone m=" + std::to_string(m));
        out.detail << " m=" << m << ":" << (r.minimal_level ? std::to_string(*r.minimal_level) : "none");
    }
}

void criterion3(Outcome& out)
{
    ModularData md = su2_modular_data(1);
    bool at32 = congruence_check_sl2(md, 32);
    bool at16 = congruence_check_sl2(md, 16);
    out.require(at32, "n=32 should pass");
    out.require(!at16, "n=16 should fail");
    out.detail << " n=32:" << at32 << " n=16:" << at16;
}

void criterion4(Outcome& out)
{
    for (int m = 1; m <= 4; ++m)
    {
        AxiomReport r = verify_modular_axioms(su2_modular_data(m));
        out.require(r.passed(), "axioms m=" + std::to_string(m));
    }
    out.detail << " m=1..4";
}

void criterion5(Outcome& out)
{
    for (int m = 1; m <= 16; ++m)
    {
        CycNumber a = gauss_alpha(m);
        out.require(a * a == CycNumber(BigRational(2, m + 1)), "alpha^2 m=" + std::to_string(m));
    }
    for (int m = 1; m <= 4; ++m)
    {
        SpinDecomposition d = decompose(su2_modular_data(m));
        out.require(match_up_to_permutation(d.hat, psu2_hat_data(m)).has_value(),
                    "extract_hat m=" + std::to_string(m));
    }
    out.detail << " alpha m<=16, hat m<=4";
}

void criterion6(Outcome& out)
{
    for (int m = 1; m <= 4; ++m)
    {
        SpinDecomposition d = decompose(su2_modular_data(m));
        const BasisChange& b = d.blocks;
        out.require(b.zero_blocks && b.t_pattern && b.b_symmetric && b.shat_symmetric && b.c_prime_signs &&
                        b.s_squared && b.st_cubed,
                    "blocks m=" + std::to_string(m));
        out.require(d.passed(), "decomposition m=" + std::to_string(m));
    }
    out.detail << " m=1..4";
}

void criterion7(Outcome& out)
{
    for (int n : {2, 4, 6, 8, 12, 16})
    {
        LemmaReport r = verify_lemma_index3(n);
        out.require(3 * r.gamma_theta_order == r.sl2_order, "index 3 at n=" + std::to_string(n));
        out.require(r.gamma_theta_order == r.two_part * r.sl2_q_order, "product at n=" + std::to_string(n));
        out.require(r.passed(), "lemma report n=" + std::to_string(n));
        out.detail << " n=" << n << ":" << r.gamma_theta_order;
    }
}

void criterion8(Outcome& out)
{
    InfiniteCertificate c = infinite_image_certificate(100'000);
    out.require(c.annihilated, "annihilating polynomial");
    out.require(c.exceeded, "<S^, T^> exceeds cap");
    out.require(c.gamma_theta_finite, "<S^, T^2> finite");
    out.detail << " explored=" << c.explored << " |<S^,T^2>|proj=" << c.gamma_theta_projective_order;
}

CycNumber random_number(std::mt19937_64& rng, int n)
{
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 5);
    std::vector<BigRational> c(euler_phi(n));
    for (auto& v : c)
    {
        v = BigRational(num(rng), den(rng));
        v.canonicalize();
    }
    return CycNumber::from_powers(n, c);
}

void criterion9(Outcome& out)
{
    std::mt19937_64 rng(9);
    const int conductors[] = {1, 3, 4, 5, 8, 12, 15, 16, 24};
    std::uniform_int_distribution<int> pick(0, 8);

    int field = 0;
    for (int t = 0; t < 1000; ++t)
    {
        CycNumber a = random_number(rng, conductors[pick(rng)]);
        CycNumber b = random_number(rng, conductors[pick(rng)]);
        CycNumber c = random_number(rng, conductors[pick(rng)]);
        bool ok = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c &&
                  a * b == b * a && a - a == CycNumber(0) && a * CycNumber(1) == a;
        if (!a.is_zero())
            ok &= a * a.inverse() == CycNumber(1);
        field += ok;
    }
    out.require(field == 1000, "field axioms");

    int phi = 0;
    std::uniform_int_distribution<int> order(1, 64);
    for (int t = 0; t < 1000; ++t)
    {
        int n = order(rng);
        CycPolynomial p = cyclotomic_polynomial(n);
        CycPolynomial xn = CycPolynomial::monomial(n) - CycPolynomial::monomial(0);
        auto [q, r] = CycPolynomial::divmod(xn, p);
        // Phi_n also vanishes at a random primitive n-th root.
        std::uniform_int_distribution<int> k(1, n);
        int e = k(rng);
        while (std::gcd(e, n) != 1)
            e = e % n + 1;
        CycNumber z = CycNumber::root_of_unity(n, e), value(0);
        for (int i = p.degree(); i >= 0; --i)
            value = value * z + CycNumber(p.coeff(static_cast<std::size_t>(i)));
        phi += r.is_zero() && q * p == xn && p.degree() == euler_phi(n) && value.is_zero();
    }
    out.require(phi == 1000, "Phi_n divides x^n - 1");

    int scalar = 0;
    const int small[] = {1, 4, 8, 12};
    std::uniform_int_distribution<int> pick_small(0, 3);
    std::uniform_int_distribution<int> size(1, 3);
    for (int t = 0; t < 1000; ++t)
    {
        int n = small[pick_small(rng)];
        int k = size(rng);
        std::vector<CycNumber> entries;
        for (int i = 0; i < k * k; ++i)
            entries.push_back(t % 4 == 0 && i == 0 ? CycNumber(0) : random_number(rng, n));
        CycMatrix m = CycMatrix::from_entries(k, k, entries).embed(n);
        CycNumber c = random_number(rng, n);
        if (c.is_zero())
            c = CycNumber(3);
        scalar += projective_canonical(m) == projective_canonical(m.scaled(c)) &&
                  projective_canonical(m).encode() == projective_canonical(m.scaled(c)).encode();
    }
    out.require(scalar == 1000, "projective canonical form");

    int reorder = 0;
    std::uniform_int_distribution<int> modulus(2, 9);
    for (int t = 0; t < 1000; ++t)
    {
        int n = modulus(rng);
        ModMatrixCarrier carrier(n, t % 2 == 1);
        std::uniform_int_distribution<std::int64_t> entry(0, n - 1);
        std::vector<Mat2> gens;
        while (gens.size() < 3)
        {
            Mat2 g{entry(rng), entry(rng), entry(rng), entry(rng)};
            if (carrier.is_invertible(g))
                gens.push_back(g);
        }
        auto first = close(carrier, gens);
        std::shuffle(gens.begin(), gens.end(), rng);
        auto second = close(carrier, gens);
        reorder += first.closed && second.closed &&
                   std::set<std::string>(first.keys.begin(), first.keys.end()) ==
                       std::set<std::string>(second.keys.begin(), second.keys.end());
    }
    out.require(reorder == 1000, "closure under reordering");
    out.detail << " field=" << field << " phi=" << phi << " scalar=" << scalar << " reorder=" << reorder;
}

} // namespace

int main()
{
    struct Criterion
    {
        int id;
        double budget_seconds;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, 300, criterion1}, {2, 600, criterion2}, {3, 600, criterion3}, {4, 600, criterion4},
        {5, 600, criterion5}, {6, 600, criterion6}, {7, 120, criterion7}, {8, 300, criterion8},
        {9, 600, criterion9},
    };

    int failed = 0;
    for (const auto& c : criteria)
    {
        Outcome out;
        auto start = std::chrono::steady_clock::now();
        try
        {
            c.run(out);
        }
        catch (const std::exception& e)
        {
            out.require(false, std::string("exception: ") + e.what());
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.require(seconds <= c.budget_seconds, "over time budget");
        std::cout << "criterion " << c.id << ": " << (out.pass ? "PASS" : "FAIL") << " (" << seconds << " s)"
                  << out.detail.str() << std::endl;
        failed += out.pass ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
