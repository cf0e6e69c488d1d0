#pragma once

// Fermion grading of a spin modular category and the induced block decomposition of S and T.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinmod/json_io.hpp"
#include "spinmod/modular_data.hpp"

namespace spinmod
{

/// Raised when the data does not have the shape a fermion forces (bad grading, no row match,
/// nonzero entry in a zero block, ...).
class SpinStructureError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// eps[a] = S~(psi, a) / d_a, each exactly +1 or -1.
std::vector<int> grade(const ModularData& md, int psi);

/// a -> psi (x) a, found by matching S~ rows against (eps_b S~(a, b))_b.
std::vector<int> psi_action(const ModularData& md, int psi);

/// Index lists in the order Pi_0, psi Pi_0, Pi_v, psi Pi_v, Pi_sigma. psi_pi0[k] is the image
/// of pi0[k], likewise for the v part.
struct SpinPartition
{
    std::vector<int> pi0;
    std::vector<int> psi_pi0;
    std::vector<int> piv;
    std::vector<int> psi_piv;
    std::vector<int> pisigma;
};

SpinPartition partition(const ModularData& md, int psi, const std::vector<int>& eps, const std::vector<int>& action);

/// S~, T and C conjugated into the basis Pi_0^+, Pi_0^-, Pi_v^+, Pi_sigma, Pi_v^- built from the
/// unnormalized vectors X + psi X, X - psi X and X.
struct BasisChange
{
    std::vector<int> block_sizes; // five entries
    CycMatrix basis;              // columns are the basis vectors
    CycMatrix s_prime;
    CycMatrix t_prime;
    CycMatrix c_prime;
    CycMatrix a_block; // S'(Pi_0^-, Pi_v^+) / 2
    CycMatrix x_block; // S'(Pi_0^-, Pi_sigma)
    CycMatrix b_block; // S'(Pi_v^-, Pi_v^-) / 2

    bool zero_blocks = false;
    bool t_pattern = false;
    bool b_symmetric = false;
    bool shat_symmetric = false;
    bool c_prime_signs = false;
    bool s_squared = false; // S'^2 = D^2 C'
    bool st_cubed = false;  // (S'T')^3 = D_+ S'^2

    bool passed() const
    {
        return zero_blocks && t_pattern && b_symmetric && shat_symmetric && c_prime_signs && s_squared && st_cubed;
    }
};

/// Throws SpinStructureError when a required zero block has a nonzero entry.
BasisChange basis_change(const ModularData& md, int psi, const SpinPartition& parts);

/// Hat data on Pi_0. For SU(2)-family input S^ is normalized exactly and checked unitary;
/// otherwise it is the raw block with S^ S^* = (D^2 / 4) I checked and d_squared recorded.
HatData extract_hat(const ModularData& md, int psi);

struct SpinDecomposition
{
    int fermion = 0;
    std::vector<int> epsilon;
    std::vector<int> action;
    SpinPartition parts;
    BasisChange blocks;
    HatData hat;
    bool twist_consistent = false; // theta_{psi a} = -eps_a theta_a
    bool sigma_fixed = false;      // psi a != a on the even part

    bool passed() const { return twist_consistent && sigma_fixed && blocks.passed(); }
};

/// Runs the whole pipeline; the fermion defaults to the largest label from find_fermions.
SpinDecomposition decompose(const ModularData& md, std::optional<int> psi = std::nullopt);

Json to_json(const SpinDecomposition& d);

/// Permutation p with a.s_hat(p(i), p(j)) = b.s_hat(i, j) and a.t_hat(p(i))^2 = b.t_hat(i)^2.
std::optional<std::vector<int>> match_up_to_permutation(const HatData& a, const HatData& b);

} // namespace spinmod
