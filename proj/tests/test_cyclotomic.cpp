#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "spinmod/cyclotomic.hpp"

using namespace spinmod;

namespace
{

using IntPoly = std::vector<long long>;

// Exact division of integer polynomials with monic divisor.
std::pair<IntPoly, IntPoly> int_divmod(IntPoly a, const IntPoly& b)
{
    IntPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    for (int k = static_cast<int>(a.size()) - static_cast<int>(b.size()); k >= 0; --k)
    {
        long long c = a[k + b.size() - 1];
        q[k] = c;
        for (std::size_t j = 0; j < b.size(); ++j)
            a[k + j] -= c * b[j];
    }
    while (!a.empty() && a.back() == 0)
        a.pop_back();
    return {q, a};
}

// Independent Phi_n: x^n - 1 divided by Phi_d for proper divisors d.
IntPoly oracle_phi(int n)
{
    IntPoly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0)
            p = int_divmod(p, oracle_phi(d)).first;
    return p;
}

IntPoly as_int_poly(const CycPolynomial& p)
{
    IntPoly out;
    for (const auto& c : p.coeffs())
    {
        REQUIRE(c.get_den() == 1);
        out.push_back(c.get_num().get_si());
    }
    return out;
}

std::complex<double> zeta(int n, long long k)
{
    double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / n;
    return {std::cos(angle), std::sin(angle)};
}

CycNumber random_element(std::mt19937_64& rng, int n, int bound = 20)
{
    std::uniform_int_distribution<int> num(-bound, bound);
    std::uniform_int_distribution<int> den(1, 6);
    std::vector<BigRational> coeffs(euler_phi(n));
    for (auto& c : coeffs)
    {
        c = BigRational(num(rng), den(rng));
        c.canonicalize();
    }
    return CycNumber::from_powers(n, coeffs);
}

bool close_to(std::complex<double> a, std::complex<double> b, double tol = 1e-9)
{
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

const int kConductors[] = {1, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24, 32};

} // namespace

TEST_CASE("cyclotomic polynomials: small cases")
{
    CHECK(as_int_poly(cyclotomic_polynomial(1)) == IntPoly{-1, 1});
    CHECK(as_int_poly(cyclotomic_polynomial(8)) == IntPoly{1, 0, 0, 0, 1});
    CHECK(as_int_poly(cyclotomic_polynomial(12)) == IntPoly{1, 0, -1, 0, 1});
}

TEST_CASE("cyclotomic polynomials match the recursive-division oracle and divide x^n - 1")
{
    for (int n = 1; n <= 64; ++n)
    {
        CAPTURE(n);
        IntPoly phi = as_int_poly(cyclotomic_polynomial(n));
        CHECK(phi == oracle_phi(n));
        CHECK(static_cast<int>(phi.size()) - 1 == euler_phi(n));
        IntPoly xn(n + 1, 0);
        xn[0] = -1;
        xn[n] = 1;
        auto [q, r] = int_divmod(xn, phi);
        CHECK(r.empty());
    }
}

TEST_CASE("roots of unity")
{
    CycNumber i = CycNumber::root_of_unity(4, 1);
    CHECK(i.coeffs().size() == 2);
    CHECK(i.coeffs()[0] == 0);
    CHECK(i.coeffs()[1] == 1);
    for (int n : kConductors)
    {
        CHECK(CycNumber::root_of_unity(n, n) == CycNumber(1));
        CHECK(CycNumber::root_of_unity(n, 0) == CycNumber(1));
    }
    CycNumber z82 = CycNumber::root_of_unity(8, 2);
    CHECK(z82 * z82 == CycNumber(-1));
    CHECK(CycNumber::root_of_unity(12, 5).root_of_unity_order() == 12);
    CHECK(CycNumber(2).root_of_unity_order() == std::nullopt);
}

TEST_CASE("field operations: worked examples")
{
    CycNumber i = CycNumber::root_of_unity(4, 1);
    CHECK(i.conj() == -i);
    CHECK(i.conj() == CycNumber::root_of_unity(4, 3));
    for (int n : kConductors)
        for (int k = 0; k < n; ++k)
            CHECK(CycNumber::root_of_unity(n, k).inverse() == CycNumber::root_of_unity(n, n - k));

    CycNumber z = CycNumber::root_of_unity(8, 1);
    CycNumber lhs = (CycNumber(1) + z) * (CycNumber(1) - z);
    CHECK(lhs == CycNumber(1) - CycNumber::root_of_unity(8, 2));
    CHECK(close_to(lhs.approx(), (1.0 + zeta(8, 1)) * (1.0 - zeta(8, 1))));

    CHECK_THROWS_AS(CycNumber(0).inverse(), DivisionByZero);
    CHECK_THROWS_AS(CycNumber(1) / CycNumber(0, 12), DivisionByZero);
}

TEST_CASE("approx")
{
    CHECK(close_to(CycNumber(1).approx(), {1.0, 0.0}));
    CHECK(close_to(CycNumber::root_of_unity(4, 1).approx(), {0.0, 1.0}));
    CHECK(close_to(gauss_alpha(1).approx(), {1.0, 0.0}));
}

TEST_CASE("mixed conductors embed into the lcm")
{
    CycNumber a = CycNumber::root_of_unity(4, 1);
    CycNumber b = CycNumber::root_of_unity(6, 1);
    CycNumber c = a * b;
    CHECK(c.conductor() == 12);
    CHECK(c == CycNumber::root_of_unity(12, 5));
    CHECK(CycNumber::root_of_unity(8, 2) == a);
    CHECK(CycNumber::root_of_unity(8, 2).hash() == a.hash());
    CHECK(CycNumber(3, 8) == CycNumber(3));
    CHECK(CycNumber(3, 8).hash() == CycNumber(3).hash());
}

TEST_CASE("gauss_alpha squares to 2/(m+1) and is positive")
{
    for (int m = 1; m <= 16; ++m)
    {
        CAPTURE(m);
        CycNumber alpha = gauss_alpha(m);
        CHECK(alpha * alpha == CycNumber(BigRational(2, m + 1)));
        auto value = alpha.approx();
        CHECK(std::abs(value.imag()) < 1e-9);
        CHECK(value.real() > 1e-6);
        CHECK(std::abs(value.real() - std::sqrt(2.0 / (m + 1))) < 1e-9);
    }
    CHECK(gauss_alpha(1) == CycNumber(1));
    CHECK(gauss_alpha(3) * gauss_alpha(3) == CycNumber(BigRational(1, 2)));
    CHECK(std::abs(gauss_alpha(3).approx().real() - 0.70710678118) < 1e-9);
    CHECK_THROWS(gauss_alpha(0));
}

TEST_CASE("property: field axioms on 1000 random cases")
{
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::size_t> pick(0, std::size(kConductors) - 1);
    int failures = 0;
    for (int trial = 0; trial < 1000; ++trial)
    {
        int na = kConductors[pick(rng)];
        int nb = kConductors[pick(rng)];
        int nc = kConductors[pick(rng)];
        CycNumber a = random_element(rng, na);
        CycNumber b = random_element(rng, nb);
        CycNumber c = random_element(rng, nc);
        bool ok = true;
        ok &= (a + b) + c == a + (b + c);
        ok &= (a * b) * c == a * (b * c);
        ok &= a * (b + c) == a * b + a * c;
        ok &= a + b == b + a;
        ok &= a * b == b * a;
        ok &= a - a == CycNumber(0);
        ok &= a.conj().conj() == a;
        ok &= (a * b).conj() == a.conj() * b.conj();
        ok &= (a + b).conj() == a.conj() + b.conj();
        if (!a.is_zero())
            ok &= a * a.inverse() == CycNumber(1);
        ok &= (a == b) == (a.hash() == b.hash() && a == b);
        ok &= close_to((a * b + c).approx(), a.approx() * b.approx() + c.approx());
        ok &= close_to(a.conj().approx(), std::conj(a.approx()));
        if (!ok)
        {
            ++failures;
            INFO("a=" << a.to_string() << " b=" << b.to_string() << " c=" << c.to_string());
        }
    }
    CHECK(failures == 0);
}
