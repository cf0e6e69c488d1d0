#pragma once

// Finite group closure over exact matrix carriers, plus table-level group theory
// (center, derived subgroup, quotient by the center, fingerprints).

#include <chrono>
#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "spinmod/cyc_matrix.hpp"

namespace spinmod
{

class NonInvertibleGenerator : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Result of a breadth-first closure. Element 0 is the identity; every other element was
/// discovered as parent[i] * generator[parent_generator[i]].
struct FiniteGroupTable
{
    static constexpr std::uint32_t kUnset = 0xffffffffu;

    std::size_t num_generators = 0;
    std::vector<std::string> keys;
    std::unordered_map<std::string, std::uint32_t> index;
    std::vector<std::uint32_t> edges; // edges[i * num_generators + x] = i * gen_x
    std::vector<std::uint32_t> parent;
    std::vector<std::int32_t> parent_generator;
    bool closed = false;
    std::size_t cap = 0;

    std::size_t order() const { return keys.size(); }
    std::uint32_t edge(std::uint32_t element, std::size_t generator) const
    {
        return edges[static_cast<std::size_t>(element) * num_generators + generator];
    }
    std::uint32_t generator_element(std::size_t generator) const { return edge(0, generator); }
    std::optional<std::uint32_t> find(const std::string& key) const;

    /// Spanning-tree word: generator indices whose product (left to right) is the element.
    std::vector<int> word(std::uint32_t element) const;
    /// Right-multiplies start by the generators of a word, following Cayley edges.
    std::uint32_t follow(std::uint32_t start, std::span<const int> word) const;
};

struct ClosureOptions
{
    std::size_t cap = 2'000'000;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

template <class C>
concept GroupCarrier = requires(C& carrier, const typename C::Element& a) {
    { carrier.multiply(a, a) } -> std::convertible_to<typename C::Element>;
    { carrier.canonicalize(a) } -> std::convertible_to<typename C::Element>;
    { carrier.encode(a) } -> std::convertible_to<std::string>;
    { carrier.is_invertible(a) } -> std::convertible_to<bool>;
    { carrier.identity_like(a) } -> std::convertible_to<typename C::Element>;
};

/// Breadth-first closure of <generators> under right multiplication, hashing canonical
/// encodings. Stops with closed == false once more than options.cap elements are found
/// (or the deadline passes).
template <GroupCarrier Carrier>
FiniteGroupTable close(Carrier& carrier, const std::vector<typename Carrier::Element>& generators,
                       const ClosureOptions& options = {})
{
    using Element = typename Carrier::Element;
    if (generators.empty())
        throw std::invalid_argument("close: at least one generator is required");
    std::vector<Element> gens;
    gens.reserve(generators.size());
    for (const auto& g : generators)
    {
        if (!carrier.is_invertible(g))
            throw NonInvertibleGenerator("close: generator is not invertible");
        gens.push_back(carrier.canonicalize(g));
    }

    FiniteGroupTable table;
    table.num_generators = gens.size();
    table.cap = options.cap;
    const std::size_t g = gens.size();

    Element identity = carrier.canonicalize(carrier.identity_like(gens.front()));
    table.keys.push_back(carrier.encode(identity));
    table.index.emplace(table.keys.back(), 0);
    table.parent.push_back(0);
    table.parent_generator.push_back(-1);
    table.edges.assign(g, FiniteGroupTable::kUnset);

    std::vector<std::pair<std::uint32_t, Element>> frontier;
    std::vector<std::pair<std::uint32_t, Element>> next;
    frontier.emplace_back(0, std::move(identity));
    while (!frontier.empty())
    {
        next.clear();
        for (const auto& [idx, element] : frontier)
        {
            for (std::size_t x = 0; x < g; ++x)
            {
                Element product = carrier.canonicalize(carrier.multiply(element, gens[x]));
                std::string key = carrier.encode(product);
                auto fresh = static_cast<std::uint32_t>(table.keys.size());
                auto [it, inserted] = table.index.try_emplace(std::move(key), fresh);
                if (inserted)
                {
                    table.keys.push_back(it->first);
                    table.parent.push_back(idx);
                    table.parent_generator.push_back(static_cast<std::int32_t>(x));
                    table.edges.resize(table.edges.size() + g, FiniteGroupTable::kUnset);
                    next.emplace_back(fresh, std::move(product));
                    if (table.keys.size() > options.cap)
                        return table;
                }
                table.edges[static_cast<std::size_t>(idx) * g + x] = it->second;
            }
        }
        frontier.swap(next);
        if (options.deadline && std::chrono::steady_clock::now() > *options.deadline)
            return table;
    }
    table.closed = true;
    return table;
}

// --- carriers --------------------------------------------------------------

/// Square matrices over a cyclotomic field, either as they are (linear) or modulo scalars
/// (projective: scaled so the first nonzero entry in row-major order is 1).
class CycMatrixCarrier
{
public:
    using Element = CycMatrix;

    explicit CycMatrixCarrier(bool projective) : projective_(projective) {}

    CycMatrix multiply(const CycMatrix& a, const CycMatrix& b) const { return a * b; }
    CycMatrix canonicalize(const CycMatrix& m);
    std::string encode(const CycMatrix& m) const { return m.encode(); }
    bool is_invertible(const CycMatrix& m) const { return m.is_square() && !m.determinant().is_zero(); }
    CycMatrix identity_like(const CycMatrix& m) const { return CycMatrix::identity(m.rows(), m.conductor()); }

    bool projective() const { return projective_; }

private:
    bool projective_;
    std::unordered_map<std::string, CycNumber> inverse_cache_;
};

/// Projective canonical form of a single matrix (uncached).
CycMatrix projective_canonical(const CycMatrix& m);

/// 2x2 matrix with entries in Z/nZ, stored reduced into [0, n).
struct Mat2
{
    std::int64_t a = 1, b = 0, c = 0, d = 1;
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// 2x2 matrices over Z/nZ; projective mode identifies M with -M.
class ModMatrixCarrier
{
public:
    using Element = Mat2;

    ModMatrixCarrier(int modulus, bool projective);

    Mat2 multiply(const Mat2& x, const Mat2& y) const;
    Mat2 canonicalize(const Mat2& m) const;
    std::string encode(const Mat2& m) const;
    bool is_invertible(const Mat2& m) const;
    Mat2 identity_like(const Mat2&) const { return reduce({1, 0, 0, 1}); }

    Mat2 reduce(const Mat2& m) const;
    int modulus() const { return n_; }

private:
    int n_;
    bool projective_;
};

Mat2 decode_mat2(std::string_view key);

// --- table-level group theory ------------------------------------------------

/// Product and inverse inside a closed table, computed by following spanning-tree words.
class TableArithmetic
{
public:
    explicit TableArithmetic(const FiniteGroupTable& table);

    std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inverse(std::uint32_t a) const;
    std::uint32_t element_order(std::uint32_t a) const;
    std::uint32_t commutator(std::uint32_t a, std::uint32_t b) const; // a^-1 b^-1 a b
    const FiniteGroupTable& table() const { return table_; }

private:
    const FiniteGroupTable& table_;
    std::vector<std::vector<int>> words_;
};

/// Closure of the subgroup generated by the given elements of a closed table. Keys of the
/// result encode ambient element indices (see ambient_indices).
FiniteGroupTable subgroup_closure(const FiniteGroupTable& table, const std::vector<std::uint32_t>& generators);
std::vector<std::uint32_t> ambient_indices(const FiniteGroupTable& subgroup);

/// Elements commuting with every generator.
std::vector<std::uint32_t> center(const FiniteGroupTable& table);

/// Normal closure of the pairwise generator commutators.
FiniteGroupTable derived_subgroup(const FiniteGroupTable& table);

std::uint64_t quotient_by_center_order(const FiniteGroupTable& table);
/// G/Z(G) materialized as a table on center cosets.
FiniteGroupTable quotient_by_center(const FiniteGroupTable& table);

std::vector<std::uint32_t> element_orders(const FiniteGroupTable& table);

struct GroupFingerprint
{
    std::uint64_t order = 0;
    std::uint64_t center_order = 0;
    std::uint64_t derived_order = 0;
    std::uint64_t exponent = 0;
    std::map<std::uint64_t, std::uint64_t> order_histogram;

    friend bool operator==(const GroupFingerprint&, const GroupFingerprint&) = default;
    std::string to_string() const;
};

GroupFingerprint fingerprint(const FiniteGroupTable& table);

// --- SL(2, Z/n) ----------------------------------------------------------------

/// Closure of <s, t> over Z/nZ, generators in that order; projective mode quotients by +-I.
FiniteGroupTable sl2_table(int n, bool projective);

/// n^3 prod_{p | n} (1 - 1/p^2).
std::uint64_t sl2_order_formula(int n);

} // namespace spinmod
