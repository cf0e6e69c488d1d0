#include "spinmod/group_engine.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <sstream>
#include <tuple>

namespace spinmod
{

namespace
{

std::string encode_index(std::uint32_t v)
{
    std::string out(4, '\0');
    std::memcpy(out.data(), &v, 4);
    return out;
}

std::uint32_t decode_index(std::string_view key)
{
    if (key.size() != 4)
        throw std::invalid_argument("decode_index: bad key");
    std::uint32_t v = 0;
    std::memcpy(&v, key.data(), 4);
    return v;
}

void require_closed(const FiniteGroupTable& table, const char* what)
{
    if (!table.closed)
        throw std::logic_error(std::string(what) + ": table is not closed");
}

/// Carrier whose elements are indices into a closed ambient table.
struct IndexCarrier
{
    using Element = std::uint32_t;
    const TableArithmetic& arithmetic;

    std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const { return arithmetic.multiply(a, b); }
    std::uint32_t canonicalize(std::uint32_t a) const { return a; }
    std::string encode(std::uint32_t a) const { return encode_index(a); }
    bool is_invertible(std::uint32_t) const { return true; }
    std::uint32_t identity_like(std::uint32_t) const { return 0; }
};

/// Carrier on coset labels of a normal subgroup.
struct CosetCarrier
{
    using Element = std::uint32_t;
    const TableArithmetic& arithmetic;
    const std::vector<std::uint32_t>& coset_of;
    const std::vector<std::uint32_t>& representative;

    std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const
    {
        return coset_of[arithmetic.multiply(representative[a], representative[b])];
    }
    std::uint32_t canonicalize(std::uint32_t a) const { return a; }
    std::string encode(std::uint32_t a) const { return encode_index(a); }
    bool is_invertible(std::uint32_t) const { return true; }
    std::uint32_t identity_like(std::uint32_t) const { return coset_of[0]; }
};

std::vector<std::uint32_t> generator_elements(const FiniteGroupTable& table)
{
    std::vector<std::uint32_t> out;
    for (std::size_t x = 0; x < table.num_generators; ++x)
        out.push_back(table.generator_element(x));
    return out;
}

std::int64_t mod(std::int64_t v, std::int64_t n)
{
    std::int64_t r = v % n;
    return r < 0 ? r + n : r;
}

} // namespace

// --- FiniteGroupTable --------------------------------------------------------

std::optional<std::uint32_t> FiniteGroupTable::find(const std::string& key) const
{
    auto it = index.find(key);
    if (it == index.end())
        return std::nullopt;
    return it->second;
}

std::vector<int> FiniteGroupTable::word(std::uint32_t element) const
{
    std::vector<int> w;
    while (element != 0)
    {
        w.push_back(parent_generator[element]);
        element = parent[element];
    }
    std::reverse(w.begin(), w.end());
    return w;
}

std::uint32_t FiniteGroupTable::follow(std::uint32_t start, std::span<const int> w) const
{
    for (int x : w)
    {
        start = edge(start, static_cast<std::size_t>(x));
        if (start == kUnset)
            throw std::logic_error("follow: edge leaves the explored table");
    }
    return start;
}

// --- carriers ------------------------------------------------------------------

CycMatrix projective_canonical(const CycMatrix& m)
{
    auto pos = m.first_nonzero();
    if (!pos)
        return m;
    CycNumber lead = m.at(pos->first, pos->second);
    if (lead == CycNumber(1))
        return m;
    return m.scaled(lead.inverse());
}

CycMatrix CycMatrixCarrier::canonicalize(const CycMatrix& m)
{
    if (!projective_)
        return m;
    auto pos = m.first_nonzero();
    if (!pos)
        return m;
    CycNumber lead = m.at(pos->first, pos->second);
    if (lead == CycNumber(1))
        return m;
    std::string key = lead.encode();
    auto it = inverse_cache_.find(key);
    if (it == inverse_cache_.end())
        it = inverse_cache_.emplace(std::move(key), lead.inverse()).first;
    return m.scaled(it->second);
}

ModMatrixCarrier::ModMatrixCarrier(int modulus, bool projective) : n_(modulus), projective_(projective)
{
    if (modulus < 1 || modulus > 65535)
        throw std::invalid_argument("ModMatrixCarrier: modulus must lie in [1, 65535]");
}

Mat2 ModMatrixCarrier::reduce(const Mat2& m) const
{
    return {mod(m.a, n_), mod(m.b, n_), mod(m.c, n_), mod(m.d, n_)};
}

Mat2 ModMatrixCarrier::multiply(const Mat2& x, const Mat2& y) const
{
    return {(x.a * y.a + x.b * y.c) % n_, (x.a * y.b + x.b * y.d) % n_, (x.c * y.a + x.d * y.c) % n_,
            (x.c * y.b + x.d * y.d) % n_};
}

Mat2 ModMatrixCarrier::canonicalize(const Mat2& m) const
{
    Mat2 r = reduce(m);
    if (!projective_)
        return r;
    Mat2 neg = reduce({-r.a, -r.b, -r.c, -r.d});
    auto tuple = [](const Mat2& v) { return std::tie(v.a, v.b, v.c, v.d); };
    return tuple(neg) < tuple(r) ? neg : r;
}

std::string ModMatrixCarrier::encode(const Mat2& m) const
{
    std::string out(8, '\0');
    std::uint16_t v[4] = {static_cast<std::uint16_t>(m.a), static_cast<std::uint16_t>(m.b),
                          static_cast<std::uint16_t>(m.c), static_cast<std::uint16_t>(m.d)};
    std::memcpy(out.data(), v, 8);
    return out;
}

bool ModMatrixCarrier::is_invertible(const Mat2& m) const
{
    Mat2 r = reduce(m);
    std::int64_t det = mod(r.a * r.d - r.b * r.c, n_);
    return std::gcd(det, static_cast<std::int64_t>(n_)) == 1;
}

Mat2 decode_mat2(std::string_view key)
{
    if (key.size() != 8)
        throw std::invalid_argument("decode_mat2: bad key");
    std::uint16_t v[4];
    std::memcpy(v, key.data(), 8);
    return {v[0], v[1], v[2], v[3]};
}

// --- TableArithmetic -----------------------------------------------------------

TableArithmetic::TableArithmetic(const FiniteGroupTable& table) : table_(table)
{
    require_closed(table, "TableArithmetic");
    words_.resize(table.order());
    // BFS order guarantees parents precede children.
    for (std::uint32_t i = 1; i < table.order(); ++i)
    {
        words_[i] = words_[table.parent[i]];
        words_[i].push_back(table.parent_generator[i]);
    }
}

std::uint32_t TableArithmetic::multiply(std::uint32_t a, std::uint32_t b) const
{
    return table_.follow(a, words_[b]);
}

std::uint32_t TableArithmetic::element_order(std::uint32_t a) const
{
    std::uint32_t k = 1;
    std::uint32_t p = a;
    while (p != 0)
    {
        p = multiply(p, a);
        ++k;
    }
    return k;
}

std::uint32_t TableArithmetic::inverse(std::uint32_t a) const
{
    std::uint32_t prev = 0;
    std::uint32_t p = a;
    while (p != 0)
    {
        prev = p;
        p = multiply(p, a);
    }
    return a == 0 ? 0 : prev;
}

std::uint32_t TableArithmetic::commutator(std::uint32_t a, std::uint32_t b) const
{
    return multiply(multiply(inverse(a), inverse(b)), multiply(a, b));
}

// --- subgroups -----------------------------------------------------------------

FiniteGroupTable subgroup_closure(const FiniteGroupTable& table, const std::vector<std::uint32_t>& generators)
{
    TableArithmetic arithmetic(table);
    IndexCarrier carrier{arithmetic};
    std::vector<std::uint32_t> gens = generators.empty() ? std::vector<std::uint32_t>{0} : generators;
    ClosureOptions options;
    options.cap = table.order();
    return close(carrier, gens, options);
}

std::vector<std::uint32_t> ambient_indices(const FiniteGroupTable& subgroup)
{
    std::vector<std::uint32_t> out;
    out.reserve(subgroup.order());
    for (const auto& key : subgroup.keys)
        out.push_back(decode_index(key));
    return out;
}

std::vector<std::uint32_t> center(const FiniteGroupTable& table)
{
    TableArithmetic arithmetic(table);
    auto gens = generator_elements(table);
    std::vector<std::uint32_t> out;
    for (std::uint32_t z = 0; z < table.order(); ++z)
    {
        bool central = true;
        for (std::size_t x = 0; x < gens.size() && central; ++x)
            central = table.edge(z, x) == arithmetic.multiply(gens[x], z);
        if (central)
            out.push_back(z);
    }
    return out;
}

FiniteGroupTable derived_subgroup(const FiniteGroupTable& table)
{
    TableArithmetic arithmetic(table);
    IndexCarrier carrier{arithmetic};
    ClosureOptions options;
    options.cap = table.order();

    auto gens = generator_elements(table);
    std::vector<std::uint32_t> normal_gens;
    for (std::size_t x = 0; x < gens.size(); ++x)
        for (std::size_t y = x + 1; y < gens.size(); ++y)
        {
            std::uint32_t c = arithmetic.commutator(gens[x], gens[y]);
            if (c != 0 && std::find(normal_gens.begin(), normal_gens.end(), c) == normal_gens.end())
                normal_gens.push_back(c);
        }
    if (normal_gens.empty())
        return close(carrier, std::vector<std::uint32_t>{0}, options);

    std::vector<std::uint32_t> inverse_gens;
    for (auto g : gens)
        inverse_gens.push_back(arithmetic.inverse(g));

    while (true)
    {
        FiniteGroupTable h = close(carrier, normal_gens, options);
        std::vector<char> member(table.order(), 0);
        for (auto i : ambient_indices(h))
            member[i] = 1;
        std::optional<std::uint32_t> missing;
        for (std::size_t k = 0; k < normal_gens.size() && !missing; ++k)
            for (std::size_t x = 0; x < gens.size() && !missing; ++x)
            {
                std::uint32_t c = arithmetic.multiply(arithmetic.multiply(inverse_gens[x], normal_gens[k]), gens[x]);
                if (!member[c])
                    missing = c;
            }
        if (!missing)
            return h;
        normal_gens.push_back(*missing);
    }
}

namespace
{

struct CosetTable
{
    std::vector<std::uint32_t> coset_of;
    std::vector<std::uint32_t> representative;
};

CosetTable center_cosets(const FiniteGroupTable& table, const TableArithmetic& arithmetic)
{
    auto z = center(table);
    CosetTable cosets;
    cosets.coset_of.assign(table.order(), FiniteGroupTable::kUnset);
    for (std::uint32_t g = 0; g < table.order(); ++g)
    {
        if (cosets.coset_of[g] != FiniteGroupTable::kUnset)
            continue;
        auto id = static_cast<std::uint32_t>(cosets.representative.size());
        cosets.representative.push_back(g);
        for (auto c : z)
            cosets.coset_of[arithmetic.multiply(g, c)] = id;
    }
    return cosets;
}

} // namespace

std::uint64_t quotient_by_center_order(const FiniteGroupTable& table)
{
    require_closed(table, "quotient_by_center_order");
    return table.order() / center(table).size();
}

FiniteGroupTable quotient_by_center(const FiniteGroupTable& table)
{
    TableArithmetic arithmetic(table);
    CosetTable cosets = center_cosets(table, arithmetic);
    CosetCarrier carrier{arithmetic, cosets.coset_of, cosets.representative};
    std::vector<std::uint32_t> gens;
    for (auto g : generator_elements(table))
        gens.push_back(cosets.coset_of[g]);
    ClosureOptions options;
    options.cap = cosets.representative.size();
    return close(carrier, gens, options);
}

std::vector<std::uint32_t> element_orders(const FiniteGroupTable& table)
{
    TableArithmetic arithmetic(table);
    std::vector<std::uint32_t> orders(table.order(), 0);
    for (std::uint32_t g = 0; g < table.order(); ++g)
    {
        if (orders[g] != 0)
            continue;
        // Walk the cyclic subgroup once and fill in ord(g^k) = ord(g) / gcd(k, ord(g)).
        std::vector<std::uint32_t> powers{0};
        std::uint32_t p = g;
        while (p != 0)
        {
            powers.push_back(p);
            p = arithmetic.multiply(p, g);
        }
        auto n = static_cast<std::uint32_t>(powers.size());
        for (std::uint32_t k = 0; k < n; ++k)
            orders[powers[k]] = n / std::gcd(k, n);
    }
    return orders;
}

std::string GroupFingerprint::to_string() const
{
    std::ostringstream out;
    out << "order=" << order << " center=" << center_order << " derived=" << derived_order
        << " exponent=" << exponent << " orders={";
    bool first = true;
    for (const auto& [k, count] : order_histogram)
    {
        out << (first ? "" : ", ") << k << ":" << count;
        first = false;
    }
    out << "}";
    return out.str();
}

GroupFingerprint fingerprint(const FiniteGroupTable& table)
{
    require_closed(table, "fingerprint");
    GroupFingerprint fp;
    fp.order = table.order();
    fp.center_order = center(table).size();
    fp.derived_order = derived_subgroup(table).order();
    fp.exponent = 1;
    for (auto o : element_orders(table))
    {
        ++fp.order_histogram[o];
        fp.exponent = std::lcm(fp.exponent, static_cast<std::uint64_t>(o));
    }
    return fp;
}

// --- SL(2, Z/n) ------------------------------------------------------------------

FiniteGroupTable sl2_table(int n, bool projective)
{
    ModMatrixCarrier carrier(n, projective);
    std::vector<Mat2> gens{carrier.reduce({0, -1, 1, 0}), carrier.reduce({1, 1, 0, 1})};
    ClosureOptions options;
    options.cap = static_cast<std::size_t>(sl2_order_formula(n));
    return close(carrier, gens, options);
}

std::uint64_t sl2_order_formula(int n)
{
    if (n < 1)
        throw std::invalid_argument("sl2_order_formula: n must be positive");
    std::uint64_t order = static_cast<std::uint64_t>(n) * n * n;
    int rest = n;
    for (int p = 2; p * p <= rest || rest > 1; ++p)
    {
        if (p * p > rest)
            p = rest;
        if (rest % p != 0)
            continue;
        while (rest % p == 0)
            rest /= p;
        order = order / (static_cast<std::uint64_t>(p) * p) * (static_cast<std::uint64_t>(p) * p - 1);
    }
    return order;
}

} // namespace spinmod
