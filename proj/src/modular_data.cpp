#include "spinmod/modular_data.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "spinmod/spin_modular.hpp"

namespace spinmod
{

CycMatrix ModularData::t_matrix() const { return CycMatrix::diagonal(t_diag).embed(conductor); }

CycMatrix ModularData::charge_conjugation() const
{
    std::vector<CycNumber> entries(static_cast<std::size_t>(rank) * rank, CycNumber(0));
    for (int i = 0; i < rank; ++i)
        entries[static_cast<std::size_t>(i) * rank + dual[i]] = CycNumber(1);
    return CycMatrix::from_entries(rank, rank, entries).embed(conductor);
}

void ModularData::validate_shape() const
{
    if (rank < 1)
        throw std::invalid_argument("modular data: rank must be positive");
    if (s_tilde.rows() != rank || s_tilde.cols() != rank)
        throw std::invalid_argument("modular data: S~ is " + std::to_string(s_tilde.rows()) + "x" +
                                    std::to_string(s_tilde.cols()) + " but rank is " + std::to_string(rank));
    if (static_cast<int>(t_diag.size()) != rank)
        throw std::invalid_argument("modular data: T has " + std::to_string(t_diag.size()) + " entries but rank is " +
                                    std::to_string(rank));
    if (static_cast<int>(dual.size()) != rank)
        throw std::invalid_argument("modular data: duality has the wrong length");
    for (int i = 0; i < rank; ++i)
        if (dual[i] < 0 || dual[i] >= rank || dual[dual[i]] != i)
            throw std::invalid_argument("modular data: duality is not an involution on labels");
    if (conductor % s_tilde.conductor() != 0)
        throw std::invalid_argument("modular data: S~ does not live at the declared conductor");
    for (const auto& t : t_diag)
        if (conductor % t.conductor() != 0)
            throw std::invalid_argument("modular data: T does not live at the declared conductor");
}

ModularData su2_modular_data(int m)
{
    if (m < 1)
        throw std::invalid_argument("su2_modular_data: m must be positive");
    const int n = 16 * (m + 1);
    const int rank = 4 * m + 3;
    auto z = [n](long long k) { return CycNumber::root_of_unity(n, k); };
    // sin(k pi / (4m+4)) / sin(pi / (4m+4)) = (z^{2k} - z^{-2k}) / (z^2 - z^{-2})
    CycNumber inv_base = (z(2) - z(-2)).inverse();

    ModularData md;
    md.rank = rank;
    md.conductor = n;
    md.su2_m = m;
    md.dual.resize(rank);
    std::vector<CycNumber> entries(static_cast<std::size_t>(rank) * rank);
    for (int i = 0; i < rank; ++i)
    {
        md.dual[i] = i;
        for (int j = i; j < rank; ++j)
        {
            long long k = 2LL * (i + 1) * (j + 1);
            CycNumber v = (z(k) - z(-k)) * inv_base;
            entries[static_cast<std::size_t>(i) * rank + j] = v;
            entries[static_cast<std::size_t>(j) * rank + i] = v;
        }
        md.t_diag.push_back(z(static_cast<long long>(i) * i + 2LL * i));
    }
    md.s_tilde = CycMatrix::from_entries(rank, rank, entries).embed(n);
    return md;
}

HatData psu2_hat_data(int m)
{
    if (m < 0)
        throw std::invalid_argument("psu2_hat_data: m must be non-negative");
    HatData hat;
    if (m == 0)
    {
        hat.size = 1;
        hat.s_hat = CycMatrix::identity(1);
        hat.t_hat = {CycNumber(1)};
        return hat;
    }
    const int n = 8 * m + 8;
    const int k = m + 1;
    auto w = [n](long long e) { return CycNumber::root_of_unity(n, e); };
    CycNumber scale = gauss_alpha(m) / (CycNumber(2) * w(2LL * (m + 1)));

    hat.size = k;
    hat.conductor = n;
    std::vector<CycNumber> entries(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i)
    {
        for (int j = i; j < k; ++j)
        {
            long long e = (2LL * i + 1) * (2LL * j + 1);
            CycNumber v = scale * (w(e) - w(-e));
            entries[static_cast<std::size_t>(i) * k + j] = v;
            entries[static_cast<std::size_t>(j) * k + i] = v;
        }
        hat.t_hat.push_back(w(2LL * (static_cast<long long>(i) * i + i)));
    }
    hat.s_hat = CycMatrix::from_entries(k, k, entries).embed(n);
    return hat;
}

ModularData restrict_labels(const ModularData& md, const std::vector<int>& labels)
{
    md.validate_shape();
    std::vector<int> position(md.rank, -1);
    for (std::size_t k = 0; k < labels.size(); ++k)
    {
        if (labels[k] < 0 || labels[k] >= md.rank || position[labels[k]] != -1)
            throw std::invalid_argument("restrict_labels: labels must be distinct and in range");
        position[labels[k]] = static_cast<int>(k);
    }
    ModularData out;
    out.rank = static_cast<int>(labels.size());
    out.conductor = md.conductor;
    out.s_tilde = md.s_tilde.submatrix(labels, labels);
    for (int label : labels)
    {
        if (position[md.dual[label]] < 0)
            throw std::invalid_argument("restrict_labels: label set is not closed under duality");
        out.dual.push_back(position[md.dual[label]]);
        out.t_diag.push_back(md.t_diag[label]);
    }
    return out;
}

AxiomReport verify_modular_axioms(const ModularData& md)
{
    md.validate_shape();
    AxiomReport report;
    const CycMatrix& s = md.s_tilde;
    CycMatrix t = md.t_matrix();
    CycMatrix c = md.charge_conjugation();

    report.d_squared = CycNumber(0, md.conductor);
    report.d_plus = CycNumber(0, md.conductor);
    for (int i = 0; i < md.rank; ++i)
    {
        CycNumber d2 = md.dimension(i) * md.dimension(i);
        report.d_squared += d2;
        report.d_plus += d2 * md.t_diag[i];
    }
    CycMatrix s2 = s * s;
    report.s_squared = s2 == c.scaled(report.d_squared);
    report.st_cubed = (s * t).pow(3) == s2.scaled(report.d_plus);
    report.t_commutes_c = t * c == c * t;
    report.s_symmetric = s.is_symmetric();
    report.t_roots_of_unity = std::all_of(md.t_diag.begin(), md.t_diag.end(),
                                          [](const CycNumber& v) { return v.root_of_unity_order().has_value(); });
    return report;
}

std::set<int> transparent_objects(const ModularData& md)
{
    md.validate_shape();
    std::set<int> out;
    for (int x = 0; x < md.rank; ++x)
    {
        bool transparent = true;
        for (int y = 0; y < md.rank && transparent; ++y)
            transparent = md.s_tilde.at(x, y) == md.dimension(x) * md.dimension(y);
        if (transparent)
            out.insert(x);
    }
    return out;
}

std::set<int> find_fermions(const ModularData& md)
{
    md.validate_shape();
    std::unordered_set<std::string> rows;
    std::vector<int> all(md.rank);
    for (int i = 0; i < md.rank; ++i)
        all[i] = i;
    for (int i = 0; i < md.rank; ++i)
        rows.insert(md.s_tilde.submatrix({i}, all).encode());
    const bool distinct_rows = static_cast<int>(rows.size()) == md.rank;

    std::set<int> out;
    for (int psi = 1; psi < md.rank; ++psi)
    {
        if (md.dual[psi] != psi || md.dimension(psi) != CycNumber(1) || md.t_diag[psi] != CycNumber(-1))
            continue;
        try
        {
            grade(md, psi);
            if (distinct_rows)
            {
                auto action = psi_action(md, psi);
                if (action[psi] != 0)
                    continue;
            }
        }
        catch (const SpinStructureError&)
        {
            continue;
        }
        out.insert(psi);
    }
    return out;
}

} // namespace spinmod
