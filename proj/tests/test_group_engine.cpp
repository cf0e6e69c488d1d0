#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "spinmod/group_engine.hpp"

using namespace spinmod;

namespace
{

struct Brute
{
    std::uint64_t order = 0;
    std::uint64_t center = 0;
};

// Direct enumeration of SL(2, Z/n) and its scalar center.
Brute brute_sl2(int n)
{
    Brute b;
    for (int a = 0; a < n; ++a)
        for (int bb = 0; bb < n; ++bb)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    if (((a * d - bb * c) % n + n) % n == 1 % n)
                        ++b.order;
    for (int l = 0; l < n; ++l)
        if ((l * l) % n == 1 % n)
            ++b.center;
    return b;
}

std::set<std::string> key_set(const FiniteGroupTable& t) { return {t.keys.begin(), t.keys.end()}; }

CycMatrix mat(int conductor, std::vector<std::vector<CycNumber>> rows)
{
    std::vector<CycNumber> flat;
    for (auto& r : rows)
        flat.insert(flat.end(), r.begin(), r.end());
    int size = static_cast<int>(rows.size());
    return CycMatrix::from_entries(size, size, flat).embed(conductor);
}

} // namespace

TEST_CASE("SL(2, Z/n) orders agree with enumeration and the product formula")
{
    for (int n = 1; n <= 12; ++n)
    {
        CAPTURE(n);
        Brute b = brute_sl2(n);
        auto table = sl2_table(n, false);
        CHECK(table.closed);
        CHECK(table.order() == b.order);
        CHECK(sl2_order_formula(n) == b.order);
        CHECK(center(table).size() == b.center);
        auto projective = sl2_table(n, true);
        CHECK(projective.order() * (n <= 2 ? 1 : 2) == b.order);
    }
    CHECK(sl2_order_formula(16) == 3072);
    CHECK(sl2_order_formula(64) == 196608);
}

TEST_CASE("spanning tree words reproduce elements")
{
    auto table = sl2_table(6, false);
    ModMatrixCarrier carrier(6, false);
    std::vector<Mat2> gens{carrier.reduce({0, -1, 1, 0}), carrier.reduce({1, 1, 0, 1})};
    for (std::uint32_t i = 0; i < table.order(); ++i)
    {
        Mat2 m{1, 0, 0, 1};
        for (int x : table.word(i))
            m = carrier.multiply(m, gens[x]);
        CHECK(carrier.encode(m) == table.keys[i]);
        CHECK(table.parent[i] <= i);
    }
}

TEST_CASE("derived subgroups, centers and quotients of small groups")
{
    auto sl2_2 = sl2_table(2, false); // S3
    CHECK(derived_subgroup(sl2_2).order() == 3);
    auto sl2_3 = sl2_table(3, false);
    CHECK(derived_subgroup(sl2_3).order() == 8); // Q8
    auto sl2_5 = sl2_table(5, false);
    CHECK(derived_subgroup(sl2_5).order() == 120);
    CHECK(quotient_by_center_order(sl2_5) == 60);

    auto a5 = quotient_by_center(sl2_5);
    auto fp = fingerprint(a5);
    CHECK(fp.order == 60);
    CHECK(fp.center_order == 1);
    CHECK(fp.derived_order == 60);
    CHECK(fp.exponent == 30);
    CHECK(fp.order_histogram == std::map<std::uint64_t, std::uint64_t>{{1, 1}, {2, 15}, {3, 20}, {5, 24}});
    CHECK(fingerprint(sl2_table(5, true)) == fp);

    auto orders = element_orders(sl2_5);
    CHECK(std::accumulate(orders.begin(), orders.end(), std::uint64_t{1},
                          [](std::uint64_t acc, std::uint32_t o) { return std::lcm(acc, std::uint64_t{o}); }) == 60);
}

TEST_CASE("table arithmetic matches matrix arithmetic")
{
    auto table = sl2_table(4, false);
    TableArithmetic arithmetic(table);
    ModMatrixCarrier carrier(4, false);
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(table.order() - 1));
    for (int trial = 0; trial < 200; ++trial)
    {
        auto a = pick(rng);
        auto b = pick(rng);
        Mat2 ma = decode_mat2(table.keys[a]);
        Mat2 mb = decode_mat2(table.keys[b]);
        CHECK(table.keys[arithmetic.multiply(a, b)] == carrier.encode(carrier.multiply(ma, mb)));
        CHECK(arithmetic.multiply(a, arithmetic.inverse(a)) == 0);
    }
}

TEST_CASE("cyclotomic matrix carriers: quaternion group")
{
    CycNumber i = CycNumber::root_of_unity(4, 1);
    CycMatrix qi = mat(4, {{i, 0}, {0, -i}});
    CycMatrix qj = mat(4, {{0, 1}, {-1, 0}});
    CycMatrixCarrier linear(false);
    auto q8 = close(linear, std::vector<CycMatrix>{qi, qj});
    CHECK(q8.closed);
    CHECK(q8.order() == 8);
    CHECK(center(q8).size() == 2);
    CHECK(derived_subgroup(q8).order() == 2);
    CHECK(quotient_by_center_order(q8) == 4);
    CycMatrixCarrier projective(true);
    auto v4 = close(projective, std::vector<CycMatrix>{qi, qj});
    CHECK(v4.order() == 4);
}

TEST_CASE("closure errors and caps")
{
    CycMatrixCarrier linear(false);
    CycMatrix singular = mat(1, {{1, 1}, {1, 1}});
    CHECK_THROWS_AS(close(linear, std::vector<CycMatrix>{singular}), NonInvertibleGenerator);
    CycMatrix infinite = mat(1, {{2, 0}, {0, 1}});
    ClosureOptions options;
    options.cap = 50;
    auto table = close(linear, std::vector<CycMatrix>{infinite}, options);
    CHECK_FALSE(table.closed);
    CHECK(table.order() == 51);
    CHECK_THROWS(fingerprint(table));
    ModMatrixCarrier mod4(4, false);
    CHECK_THROWS_AS(close(mod4, std::vector<Mat2>{{2, 0, 0, 1}}), NonInvertibleGenerator);
}

TEST_CASE("property: projective canonical form is invariant under nonzero scalars (1000 cases)")
{
    std::mt19937_64 rng(99);
    const int conductors[] = {1, 4, 8, 12, 16};
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> pick(0, 4);
    std::uniform_int_distribution<int> size(1, 3);
    int failures = 0;
    for (int trial = 0; trial < 1000; ++trial)
    {
        int n = conductors[pick(rng)];
        int k = size(rng);
        auto random_number = [&] {
            std::vector<BigRational> c(euler_phi(n));
            for (auto& v : c)
                v = coef(rng);
            return CycNumber::from_powers(n, c);
        };
        std::vector<CycNumber> entries;
        for (int e = 0; e < k * k; ++e)
            entries.push_back(trial % 3 == 0 && e % 2 == 0 ? CycNumber(0, n) : random_number());
        CycMatrix m = CycMatrix::from_entries(k, k, entries).embed(n);
        CycNumber c = random_number();
        if (c.is_zero())
            c = CycNumber::root_of_unity(n, 1);
        CycMatrix base = projective_canonical(m);
        CycMatrix scaled = projective_canonical(m.scaled(c));
        CycMatrixCarrier carrier(true);
        bool ok = base == scaled && base.encode() == scaled.encode() && carrier.canonicalize(m.scaled(c)) == base;
        if (!m.is_zero())
        {
            auto pos = base.first_nonzero();
            ok &= pos && base.at(pos->first, pos->second) == CycNumber(1);
        }
        failures += ok ? 0 : 1;
    }
    CHECK(failures == 0);
}

TEST_CASE("property: closure is deterministic under generator reordering (1000 cases)")
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> modulus(2, 8);
    int failures = 0;
    for (int trial = 0; trial < 1000; ++trial)
    {
        int n = modulus(rng);
        bool projective = trial % 2 == 1;
        ModMatrixCarrier carrier(n, projective);
        std::uniform_int_distribution<std::int64_t> entry(0, n - 1);
        std::uniform_int_distribution<int> count(1, 4);
        std::vector<Mat2> gens;
        int want = count(rng);
        while (static_cast<int>(gens.size()) < want)
        {
            Mat2 m{entry(rng), entry(rng), entry(rng), entry(rng)};
            if (carrier.is_invertible(m))
                gens.push_back(m);
        }
        auto first = close(carrier, gens);
        std::shuffle(gens.begin(), gens.end(), rng);
        auto second = close(carrier, gens);
        std::reverse(gens.begin(), gens.end());
        auto third = close(carrier, gens);
        bool ok = first.closed && second.closed && third.closed && key_set(first) == key_set(second) &&
                  key_set(first) == key_set(third) && first.keys[0] == second.keys[0];
        failures += ok ? 0 : 1;
    }
    CHECK(failures == 0);
}
