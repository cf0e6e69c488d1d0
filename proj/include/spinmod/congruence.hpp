#pragma once

// The theta subgroup of SL(2, Z), its finite quotients, and congruence-level tests for
// projective representations by lifting Cayley edges.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spinmod/group_engine.hpp"
#include "spinmod/json_io.hpp"
#include "spinmod/modular_data.hpp"

namespace spinmod
{

class CapExceeded : public std::runtime_error
{
public:
    CapExceeded(const std::string& what, std::size_t cap) : std::runtime_error(what), cap_(cap) {}
    std::size_t cap() const { return cap_; }

private:
    std::size_t cap_;
};

struct Sl2zMat
{
    long long a = 1, b = 0, c = 0, d = 1;

    static Sl2zMat s() { return {0, -1, 1, 0}; }
    static Sl2zMat t() { return {1, 1, 0, 1}; }
    long long det() const { return a * d - b * c; }
    Sl2zMat inverse() const { return {d, -b, -c, a}; }
    friend Sl2zMat operator*(const Sl2zMat& x, const Sl2zMat& y)
    {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Sl2zMat&, const Sl2zMat&) = default;
};

/// ac and bd both even.
bool in_gamma_theta(const Sl2zMat& g);

/// Conjugation of Gamma_theta onto Gamma_0(2):
/// [[a, b], [c, d]] -> [[a + c, (d + b - a - c) / 2], [2c, d - c]].
/// Throws std::invalid_argument outside Gamma_theta.
Sl2zMat theta_to_gamma0(const Sl2zMat& g);

/// <s, t^2> over Z/nZ (generators in that order); n must be even.
FiniteGroupTable gamma_theta_mod_n(int n);

struct LemmaReport
{
    int n = 0;
    int k = 0; // n = 2^k q
    int q = 1;
    std::uint64_t gamma_theta_order = 0;
    std::uint64_t sl2_order = 0;
    std::uint64_t sl2_two_order = 0; // |SL(2, Z/2^k)|
    std::uint64_t two_part = 0;      // 2-part of sl2_two_order
    std::uint64_t sl2_q_order = 0;
    std::uint64_t image_mod_two = 0; // image of Gamma_theta/Gamma(n) in SL(2, Z/2^k)
    std::uint64_t image_mod_q = 0;
    bool index_three = false;
    bool crt_split = false;
    bool product_formula = false;
    bool surjects_mod_q = false;
    bool two_image_is_sylow = false;

    bool passed() const { return index_three && crt_split && product_formula && surjects_mod_q && two_image_is_sylow; }
};

LemmaReport verify_lemma_index3(int n);
Json to_json(const LemmaReport& r);

/// Projective closure of <S^, T^2>; throws CapExceeded when it does not close.
FiniteGroupTable hat_projective_image(const HatData& hat, std::size_t cap = 100'000);

/// Projective closure of <S~, T>; throws CapExceeded when it does not close.
FiniteGroupTable modular_projective_image(const ModularData& md, std::size_t cap = 100'000);

/// True when the generator assignment of `image` factors through `quotient`: the labelling
/// r(e) = 1, r(g x) = r(g) x along the quotient's spanning tree is consistent on every edge.
/// Both tables must use corresponding generators in the same order.
bool factors_through(const FiniteGroupTable& image, const FiniteGroupTable& quotient);

/// Gamma(n) in ker(rho^) for the hat representation.
bool congruence_check(const HatData& hat, int n, std::size_t cap = 100'000);

/// Gamma(n) in ker(rho) for the projective SL(2, Z) representation of modular data.
bool congruence_check_sl2(const ModularData& md, int n, std::size_t cap = 100'000);

struct CongruenceReport
{
    std::string representation;
    int bound = 0;
    std::vector<std::pair<int, bool>> tested;
    std::optional<int> minimal_level;
    std::size_t image_order = 0;
    bool trivial_image = false; // level 1: the kernel is all of Gamma_theta
    bool monotone = false;

    std::string summary() const;
};

/// Tests every even n <= bound in ascending order.
CongruenceReport minimal_level(const HatData& hat, int bound, const std::string& label = "hat",
                               std::size_t cap = 100'000);
Json to_json(const CongruenceReport& r);

} // namespace spinmod
