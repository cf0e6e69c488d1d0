#include "spinmod/spin_modular.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <unordered_map>

namespace spinmod
{

namespace
{

void require_label(const ModularData& md, int label, const char* what)
{
    if (label < 0 || label >= md.rank)
        throw std::invalid_argument(std::string(what) + ": label " + std::to_string(label) + " out of range");
}

std::vector<int> iota(int n)
{
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

std::vector<std::string> row_keys(const CycMatrix& m)
{
    std::vector<std::string> keys;
    auto cols = iota(m.cols());
    for (int i = 0; i < m.rows(); ++i)
        keys.push_back(m.submatrix({i}, cols).encode());
    return keys;
}

std::pair<CycNumber, CycNumber> global_dimensions(const ModularData& md)
{
    CycNumber d2(0, md.conductor), dplus(0, md.conductor);
    for (int i = 0; i < md.rank; ++i)
    {
        CycNumber d = md.dimension(i) * md.dimension(i);
        d2 += d;
        dplus += d * md.t_diag[i];
    }
    return {d2, dplus};
}

/// Offsets of the five basis blocks.
std::array<int, 6> block_offsets(const std::vector<int>& sizes)
{
    std::array<int, 6> off{};
    for (int b = 0; b < 5; ++b)
        off[b + 1] = off[b] + sizes[b];
    return off;
}

std::vector<int> block_range(const std::array<int, 6>& off, int b)
{
    std::vector<int> v;
    for (int i = off[b]; i < off[b + 1]; ++i)
        v.push_back(i);
    return v;
}

// Blocks of S' that must vanish, indexed by (Pi_0^+, Pi_0^-, Pi_v^+, Pi_sigma, Pi_v^-).
constexpr bool kZeroBlock[5][5] = {
    {false, true, true, true, true},
    {true, true, false, false, true},
    {true, false, true, true, true},
    {true, false, true, true, true},
    {true, true, true, true, false},
};

const char* const kBlockNames[5] = {"Pi0+", "Pi0-", "Piv+", "Pisigma", "Piv-"};

} // namespace

std::vector<int> grade(const ModularData& md, int psi)
{
    md.validate_shape();
    require_label(md, psi, "grade");
    std::vector<int> eps(md.rank);
    for (int a = 0; a < md.rank; ++a)
    {
        CycNumber d = md.dimension(a);
        if (d.is_zero())
            throw SpinStructureError("grade: label " + std::to_string(a) + " has zero dimension");
        CycNumber ratio = md.s_tilde.at(psi, a) / d;
        if (ratio == CycNumber(1))
            eps[a] = 1;
        else if (ratio == CycNumber(-1))
            eps[a] = -1;
        else
            throw SpinStructureError("grade: S~(psi, " + std::to_string(a) + ") / d is not +-1");
    }
    if (eps[0] != 1 || eps[psi] != 1)
        throw SpinStructureError("grade: the unit and the fermion must be even");
    return eps;
}

std::vector<int> psi_action(const ModularData& md, int psi)
{
    auto eps = grade(md, psi);
    std::vector<CycNumber> signs;
    for (int e : eps)
        signs.emplace_back(e);
    CycMatrix twisted = md.s_tilde * CycMatrix::diagonal(signs).embed(md.s_tilde.conductor());

    std::unordered_map<std::string, std::vector<int>> by_row;
    auto keys = row_keys(md.s_tilde);
    for (int i = 0; i < md.rank; ++i)
        by_row[keys[i]].push_back(i);

    auto targets = row_keys(twisted);
    std::vector<int> action(md.rank);
    for (int a = 0; a < md.rank; ++a)
    {
        auto it = by_row.find(targets[a]);
        if (it == by_row.end() || it->second.size() != 1)
            throw SpinStructureError("psi_action: no unique S~ row matches label " + std::to_string(a));
        action[a] = it->second.front();
    }
    for (int a = 0; a < md.rank; ++a)
        if (action[action[a]] != a)
            throw SpinStructureError("psi_action: not an involution");
    if (action[psi] != 0)
        throw SpinStructureError("psi_action: psi (x) psi is not the unit");
    return action;
}

SpinPartition partition(const ModularData& md, int psi, const std::vector<int>& eps, const std::vector<int>& action)
{
    md.validate_shape();
    require_label(md, psi, "partition");
    if (static_cast<int>(eps.size()) != md.rank || static_cast<int>(action.size()) != md.rank)
        throw std::invalid_argument("partition: grading or action has the wrong length");

    SpinPartition parts;
    for (int x = 0; x < md.rank; ++x)
    {
        if (eps[x] != -1)
            continue;
        if (action[x] == x)
            parts.pisigma.push_back(x);
        else if (x < action[x])
        {
            parts.piv.push_back(x);
            parts.psi_piv.push_back(action[x]);
        }
    }

    // Even orbits {X, psi X}: take the smaller label unless the dual orbit already fixed the choice.
    std::vector<int> chosen(md.rank, -1); // chosen[x] = representative of x's orbit
    for (int x = 0; x < md.rank; ++x)
    {
        if (eps[x] != 1)
            continue;
        int y = action[x];
        if (y == x)
            throw SpinStructureError("partition: even label " + std::to_string(x) + " is fixed by psi");
        if (x > y || chosen[x] != -1)
            continue;
        int rep = x;
        int dx = md.dual[x];
        if (dx == y)
            throw SpinStructureError("partition: X* = psi X for even label " + std::to_string(x));
        if (dx != x && chosen[dx] != -1)
            rep = md.dual[chosen[dx]];
        chosen[x] = chosen[y] = rep;
        parts.pi0.push_back(rep);
        parts.psi_pi0.push_back(action[rep]);
    }
    for (int x : parts.pi0)
        if (chosen[md.dual[x]] != md.dual[x])
            throw SpinStructureError("partition: Pi_0 cannot be made closed under duality");
    return parts;
}

BasisChange basis_change(const ModularData& md, int psi, const SpinPartition& parts)
{
    md.validate_shape();
    const int r = md.rank;
    const int k0 = static_cast<int>(parts.pi0.size());
    const int kv = static_cast<int>(parts.piv.size());
    const int ks = static_cast<int>(parts.pisigma.size());
    if (2 * k0 + 2 * kv + ks != r)
        throw std::invalid_argument("basis_change: partition does not cover all labels");

    BasisChange out;
    out.block_sizes = {k0, k0, kv, ks, kv};
    std::vector<CycNumber> p(static_cast<std::size_t>(r) * r, CycNumber(0));
    std::vector<CycNumber> inv_norm;
    int col = 0;
    auto add_column = [&](int x, int y, int sign) {
        p[static_cast<std::size_t>(x) * r + col] = CycNumber(1);
        if (y >= 0)
            p[static_cast<std::size_t>(y) * r + col] = CycNumber(sign);
        inv_norm.emplace_back(BigRational(1, y >= 0 ? 2 : 1));
        ++col;
    };
    for (int k = 0; k < k0; ++k)
        add_column(parts.pi0[k], parts.psi_pi0[k], 1);
    for (int k = 0; k < k0; ++k)
        add_column(parts.pi0[k], parts.psi_pi0[k], -1);
    for (int k = 0; k < kv; ++k)
        add_column(parts.piv[k], parts.psi_piv[k], 1);
    for (int k = 0; k < ks; ++k)
        add_column(parts.pisigma[k], -1, 1);
    for (int k = 0; k < kv; ++k)
        add_column(parts.piv[k], parts.psi_piv[k], -1);

    const int n = md.conductor;
    out.basis = CycMatrix::from_entries(r, r, p).embed(n);
    CycMatrix p_inv = CycMatrix::diagonal(inv_norm).embed(n) * out.basis.transpose();
    if (!(p_inv * out.basis).is_identity())
        throw SpinStructureError("basis_change: basis vectors are not independent");

    out.s_prime = p_inv * md.s_tilde * out.basis;
    out.t_prime = p_inv * md.t_matrix() * out.basis;
    out.c_prime = p_inv * md.charge_conjugation() * out.basis;

    auto off = block_offsets(out.block_sizes);
    auto block = [&](const CycMatrix& m, int bi, int bj) {
        return m.submatrix(block_range(off, bi), block_range(off, bj));
    };
    for (int bi = 0; bi < 5; ++bi)
        for (int bj = 0; bj < 5; ++bj)
            if (kZeroBlock[bi][bj] && !block(out.s_prime, bi, bj).is_zero())
                throw SpinStructureError(std::string("basis_change: S' block (") + kBlockNames[bi] + ", " +
                                         kBlockNames[bj] + ") is not zero");
    out.zero_blocks = true;

    const CycNumber half(BigRational(1, 2));
    out.a_block = block(out.s_prime, 1, 2).scaled(half);
    out.x_block = block(out.s_prime, 1, 3);
    out.b_block = block(out.s_prime, 4, 4).scaled(half);
    bool transposes = block(out.s_prime, 2, 1) == out.a_block.transpose().scaled(CycNumber(2)) &&
                      block(out.s_prime, 3, 1) == out.x_block.transpose().scaled(CycNumber(2));
    out.b_symmetric = out.b_block.is_symmetric() && transposes;
    out.shat_symmetric = block(out.s_prime, 0, 0).is_symmetric();

    // T' swaps Pi_0^+ and Pi_0^- through diag(theta) and is diagonal elsewhere.
    std::vector<CycNumber> expected(static_cast<std::size_t>(r) * r, CycNumber(0));
    auto put = [&](int i, int j, const CycNumber& v) { expected[static_cast<std::size_t>(i) * r + j] = v; };
    for (int k = 0; k < k0; ++k)
    {
        put(off[0] + k, off[1] + k, md.t_diag[parts.pi0[k]]);
        put(off[1] + k, off[0] + k, md.t_diag[parts.pi0[k]]);
    }
    for (int k = 0; k < kv; ++k)
    {
        put(off[2] + k, off[2] + k, md.t_diag[parts.piv[k]]);
        put(off[4] + k, off[4] + k, md.t_diag[parts.piv[k]]);
    }
    for (int k = 0; k < ks; ++k)
        put(off[3] + k, off[3] + k, md.t_diag[parts.pisigma[k]]);
    out.t_pattern = out.t_prime == CycMatrix::from_entries(r, r, expected).embed(n);

    // C' is a signed permutation; -1 may only sit on the diagonal inside Pi_v^-.
    bool signs = true;
    for (int i = 0; i < r && signs; ++i)
    {
        int nonzero = 0;
        for (int j = 0; j < r; ++j)
        {
            if (out.c_prime.entry_is_zero(i, j))
                continue;
            ++nonzero;
            CycNumber v = out.c_prime.at(i, j);
            if (v == CycNumber(-1))
                signs &= i == j && i >= off[4];
            else
                signs &= v == CycNumber(1);
        }
        signs &= nonzero == 1;
    }
    out.c_prime_signs = signs && (out.c_prime * out.c_prime).is_identity();

    auto [d2, dplus] = global_dimensions(md);
    CycMatrix s2 = out.s_prime * out.s_prime;
    out.s_squared = s2 == out.c_prime.scaled(d2);
    out.st_cubed = (out.s_prime * out.t_prime).pow(3) == s2.scaled(dplus);
    (void)psi;
    return out;
}

HatData extract_hat(const ModularData& md, int psi)
{
    auto eps = grade(md, psi);
    auto action = psi_action(md, psi);
    auto parts = partition(md, psi, eps, action);

    HatData hat;
    hat.size = static_cast<int>(parts.pi0.size());
    CycMatrix block = md.s_tilde.submatrix(parts.pi0, parts.pi0);
    for (int x : parts.pi0)
        hat.t_hat.push_back(md.t_diag[x]);
    auto [d2, dplus] = global_dimensions(md);
    (void)dplus;

    if (md.su2_m)
    {
        const int m = *md.su2_m;
        const int n = 16 * (m + 1);
        auto z = [n](long long k) { return CycNumber::root_of_unity(n, k); };
        CycNumber sine = (z(2) - z(-2)) / (CycNumber(2) * z(4LL * (m + 1))); // sin(pi / (4m+4))
        CycNumber norm = gauss_alpha(m) * sine;                                // 2 / D
        if (norm * norm * d2 != CycNumber(4))
            throw SpinStructureError("extract_hat: Gauss-sum normalization does not equal 2/D");
        hat.conductor = std::lcm(md.conductor, n);
        hat.s_hat = block.scaled(norm).embed(hat.conductor);
        if (!(hat.s_hat * hat.s_hat.adjoint()).is_identity())
            throw SpinStructureError("extract_hat: S^ is not unitary");
        hat.normalized = true;
    }
    else
    {
        hat.conductor = md.conductor;
        hat.s_hat = block.embed(md.conductor);
        CycNumber quarter = d2 * CycNumber(BigRational(1, 4));
        if (hat.s_hat * hat.s_hat.adjoint() != CycMatrix::identity(hat.size, hat.conductor).scaled(quarter))
            throw SpinStructureError("extract_hat: S^ S^* differs from (D^2/4) I");
        hat.normalized = false;
        hat.d_squared = d2;
    }
    return hat;
}

SpinDecomposition decompose(const ModularData& md, std::optional<int> psi)
{
    md.validate_shape();
    SpinDecomposition d;
    if (psi)
        d.fermion = *psi;
    else
    {
        auto fermions = find_fermions(md);
        if (fermions.empty())
            throw SpinStructureError("decompose: no fermion found");
        d.fermion = *fermions.rbegin();
    }
    d.epsilon = grade(md, d.fermion);
    d.action = psi_action(md, d.fermion);
    d.parts = partition(md, d.fermion, d.epsilon, d.action);
    d.blocks = basis_change(md, d.fermion, d.parts);
    d.hat = extract_hat(md, d.fermion);

    d.twist_consistent = true;
    d.sigma_fixed = true;
    for (int a = 0; a < md.rank; ++a)
    {
        d.twist_consistent &= md.t_diag[d.action[a]] == -(CycNumber(d.epsilon[a]) * md.t_diag[a]);
        if (d.epsilon[a] == 1)
            d.sigma_fixed &= d.action[a] != a;
    }
    return d;
}

Json to_json(const SpinDecomposition& d)
{
    const auto& b = d.blocks;
    return Json{
        {"fermion", d.fermion},
        {"epsilon", d.epsilon},
        {"psi_action", d.action},
        {"parts",
         {{"pi0", d.parts.pi0},
          {"psi_pi0", d.parts.psi_pi0},
          {"piv", d.parts.piv},
          {"psi_piv", d.parts.psi_piv},
          {"pisigma", d.parts.pisigma}}},
        {"block_sizes", b.block_sizes},
        {"checks",
         {{"zero_blocks", b.zero_blocks},
          {"t_pattern", b.t_pattern},
          {"b_symmetric", b.b_symmetric},
          {"shat_symmetric", b.shat_symmetric},
          {"c_prime_signs", b.c_prime_signs},
          {"s_prime_squared", b.s_squared},
          {"s_prime_t_prime_cubed", b.st_cubed},
          {"twist_consistent", d.twist_consistent},
          {"even_part_free", d.sigma_fixed}}},
        {"passed", d.passed()},
        {"s_prime", to_json(b.s_prime)},
        {"t_prime", to_json(b.t_prime)},
        {"c_prime", to_json(b.c_prime)},
        {"hat", to_json(d.hat)},
    };
}

std::optional<std::vector<int>> match_up_to_permutation(const HatData& a, const HatData& b)
{
    if (a.size != b.size)
        return std::nullopt;
    const int k = a.size;
    const int n = std::lcm(a.s_hat.conductor(), b.s_hat.conductor());
    CycMatrix sa = a.s_hat.embed(n), sb = b.s_hat.embed(n);
    std::vector<std::string> ea, eb, ta, tb;
    for (int i = 0; i < k; ++i)
    {
        for (int j = 0; j < k; ++j)
        {
            ea.push_back(sa.at(i, j).embed(n).encode());
            eb.push_back(sb.at(i, j).embed(n).encode());
        }
        ta.push_back((a.t_hat[i] * a.t_hat[i]).embed(n).encode());
        tb.push_back((b.t_hat[i] * b.t_hat[i]).embed(n).encode());
    }
    std::vector<int> p(k, -1);
    std::vector<char> used(k, 0);
    auto fits = [&](int i, int j) {
        if (ta[j] != tb[i] || ea[j * k + j] != eb[i * k + i])
            return false;
        for (int i2 = 0; i2 < i; ++i2)
            if (ea[p[i2] * k + j] != eb[i2 * k + i])
                return false;
        return true;
    };
    auto search = [&](auto&& self, int i) -> bool {
        if (i == k)
            return true;
        for (int j = 0; j < k; ++j)
        {
            if (used[j] || !fits(i, j))
                continue;
            used[j] = 1;
            p[i] = j;
            if (self(self, i + 1))
                return true;
            used[j] = 0;
        }
        p[i] = -1;
        return false;
    };
    if (!search(search, 0))
        return std::nullopt;
    return p;
}

} // namespace spinmod
