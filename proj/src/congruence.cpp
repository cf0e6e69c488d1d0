#include "spinmod/congruence.hpp"

#include <sstream>
#include <unordered_set>

namespace spinmod
{

namespace
{

void require_even(int n, const char* what)
{
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument(std::string(what) + ": n must be a positive even integer, got " +
                                    std::to_string(n));
}

std::uint64_t reduced_image_size(const FiniteGroupTable& table, int modulus)
{
    ModMatrixCarrier carrier(modulus, false);
    std::unordered_set<std::string> image;
    for (const auto& key : table.keys)
    {
        Mat2 m = decode_mat2(key);
        image.insert(carrier.encode(carrier.reduce(m)));
    }
    return image.size();
}

std::uint64_t two_part(std::uint64_t v)
{
    std::uint64_t p = 1;
    while (v % 2 == 0)
    {
        v /= 2;
        p *= 2;
    }
    return p;
}

} // namespace

bool in_gamma_theta(const Sl2zMat& g) { return (g.a * g.c) % 2 == 0 && (g.b * g.d) % 2 == 0; }

Sl2zMat theta_to_gamma0(const Sl2zMat& g)
{
    if (!in_gamma_theta(g))
        throw std::invalid_argument("theta_to_gamma0: matrix is not in Gamma_theta");
    long long top = g.d + g.b - g.a - g.c;
    if (top % 2 != 0)
        throw std::invalid_argument("theta_to_gamma0: parity failure");
    return {g.a + g.c, top / 2, 2 * g.c, g.d - g.c};
}

FiniteGroupTable gamma_theta_mod_n(int n)
{
    require_even(n, "gamma_theta_mod_n");
    ModMatrixCarrier carrier(n, false);
    std::vector<Mat2> gens{carrier.reduce({0, -1, 1, 0}), carrier.reduce({1, 2, 0, 1})};
    ClosureOptions options;
    options.cap = static_cast<std::size_t>(sl2_order_formula(n));
    return close(carrier, gens, options);
}

LemmaReport verify_lemma_index3(int n)
{
    require_even(n, "verify_lemma_index3");
    LemmaReport r;
    r.n = n;
    r.q = n;
    while (r.q % 2 == 0)
    {
        r.q /= 2;
        ++r.k;
    }
    const int power = n / r.q;

    FiniteGroupTable theta = gamma_theta_mod_n(n);
    r.gamma_theta_order = theta.order();
    r.sl2_order = sl2_table(n, false).order();
    r.sl2_two_order = sl2_table(power, false).order();
    r.sl2_q_order = r.q == 1 ? 1 : sl2_table(r.q, false).order();
    r.two_part = two_part(r.sl2_two_order);
    r.image_mod_two = reduced_image_size(theta, power);
    r.image_mod_q = reduced_image_size(theta, r.q);

    r.index_three = 3 * r.gamma_theta_order == r.sl2_order;
    r.crt_split = r.sl2_order == r.sl2_two_order * r.sl2_q_order;
    r.product_formula = r.gamma_theta_order == r.two_part * r.sl2_q_order;
    r.surjects_mod_q = r.image_mod_q == r.sl2_q_order;
    r.two_image_is_sylow = r.image_mod_two == r.two_part;
    return r;
}

Json to_json(const LemmaReport& r)
{
    return Json{{"n", r.n},
                {"k", r.k},
                {"q", r.q},
                {"gamma_theta_order", r.gamma_theta_order},
                {"sl2_order", r.sl2_order},
                {"sl2_two_order", r.sl2_two_order},
                {"two_part", r.two_part},
                {"sl2_q_order", r.sl2_q_order},
                {"image_mod_two", r.image_mod_two},
                {"image_mod_q", r.image_mod_q},
                {"index_three", r.index_three},
                {"crt_split", r.crt_split},
                {"product_formula", r.product_formula},
                {"surjects_mod_q", r.surjects_mod_q},
                {"two_image_is_sylow", r.two_image_is_sylow},
                {"passed", r.passed()}};
}

FiniteGroupTable hat_projective_image(const HatData& hat, std::size_t cap)
{
    CycMatrixCarrier carrier(true);
    ClosureOptions options;
    options.cap = cap;
    CycMatrix s = hat.s_hat.embed(hat.conductor);
    auto table = close(carrier, std::vector<CycMatrix>{s, hat.t_hat_squared()}, options);
    if (!table.closed)
        throw CapExceeded("projective image of <S^, T^2> exceeds " + std::to_string(cap) + " elements", cap);
    return table;
}

FiniteGroupTable modular_projective_image(const ModularData& md, std::size_t cap)
{
    md.validate_shape();
    CycMatrixCarrier carrier(true);
    ClosureOptions options;
    options.cap = cap;
    auto table = close(carrier, std::vector<CycMatrix>{md.s_tilde.embed(md.conductor), md.t_matrix()}, options);
    if (!table.closed)
        throw CapExceeded("projective image of <S, T> exceeds " + std::to_string(cap) + " elements", cap);
    return table;
}

bool factors_through(const FiniteGroupTable& image, const FiniteGroupTable& quotient)
{
    if (!image.closed || !quotient.closed)
        throw std::logic_error("factors_through: both tables must be closed");
    if (image.num_generators != quotient.num_generators)
        throw std::invalid_argument("factors_through: generator counts differ");
    const std::size_t g = quotient.num_generators;
    std::vector<std::uint32_t> label(quotient.order(), 0);
    for (std::uint32_t i = 1; i < quotient.order(); ++i)
        label[i] = image.edge(label[quotient.parent[i]], static_cast<std::size_t>(quotient.parent_generator[i]));
    for (std::uint32_t i = 0; i < quotient.order(); ++i)
        for (std::size_t x = 0; x < g; ++x)
            if (label[quotient.edge(i, x)] != image.edge(label[i], x))
                return false;
    return true;
}

bool congruence_check(const HatData& hat, int n, std::size_t cap)
{
    require_even(n, "congruence_check");
    return factors_through(hat_projective_image(hat, cap), gamma_theta_mod_n(n));
}

bool congruence_check_sl2(const ModularData& md, int n, std::size_t cap)
{
    if (n < 1)
        throw std::invalid_argument("congruence_check_sl2: n must be positive");
    return factors_through(modular_projective_image(md, cap), sl2_table(n, false));
}

CongruenceReport minimal_level(const HatData& hat, int bound, const std::string& label, std::size_t cap)
{
    require_even(bound, "minimal_level");
    CongruenceReport report;
    report.representation = label;
    report.bound = bound;
    FiniteGroupTable image = hat_projective_image(hat, cap);
    report.image_order = image.order();
    report.trivial_image = image.order() == 1;
    for (int n = 2; n <= bound; n += 2)
    {
        bool pass = factors_through(image, gamma_theta_mod_n(n));
        report.tested.emplace_back(n, pass);
        if (pass && !report.minimal_level)
            report.minimal_level = n;
    }
    report.monotone = true;
    for (const auto& [n, pass] : report.tested)
        if (pass)
            for (const auto& [k, other] : report.tested)
                if (k % n == 0 && !other)
                    report.monotone = false;
    return report;
}

std::string CongruenceReport::summary() const
{
    std::ostringstream out;
    out << representation << ": ";
    if (trivial_image)
        out << "trivial image, level 1 (every even n passes)";
    else if (minimal_level)
        out << "minimal level " << *minimal_level;
    else
        out << "no level <= " << bound;
    out << ", |image| = " << image_order << ", monotone = " << (monotone ? "yes" : "no");
    return out.str();
}

Json to_json(const CongruenceReport& r)
{
    Json tested = Json::array();
    for (const auto& [n, pass] : r.tested)
        tested.push_back(Json{{"n", n}, {"pass", pass}});
    Json out{{"representation", r.representation},
             {"bound", r.bound},
             {"tested", tested},
             {"image_order", r.image_order},
             {"trivial_image", r.trivial_image},
             {"monotone", r.monotone}};
    out["minimal_level"] = r.trivial_image ? Json(1) : (r.minimal_level ? Json(*r.minimal_level) : Json(nullptr));
    if (r.minimal_level)
        out["minimal_even_level"] = *r.minimal_level;
    return out;
}

} // namespace spinmod
