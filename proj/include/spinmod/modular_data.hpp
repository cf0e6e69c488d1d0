#pragma once

// Exact S/T data of modular categories, the SU(2)_{4m+2} family and its PSU(2) hat data.

#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "spinmod/cyc_matrix.hpp"

namespace spinmod
{

/// Unnormalized modular data: s_tilde(0, 0) = 1, t_diag holds the twists.
struct ModularData
{
    int rank = 0;
    std::vector<int> dual; // i -> i*
    CycMatrix s_tilde;
    std::vector<CycNumber> t_diag;
    int conductor = 1;
    /// Set to m when the data is SU(2)_{4m+2}; enables the exact Gauss-sum normalization.
    std::optional<int> su2_m;

    CycNumber dimension(int label) const { return s_tilde.at(0, label); }
    CycMatrix t_matrix() const;
    CycMatrix charge_conjugation() const;
    /// Throws std::invalid_argument on inconsistent sizes or labels.
    void validate_shape() const;
};

/// Normalized (unitary) or D-scaled hat data of a super-modular category.
struct HatData
{
    int size = 0;
    CycMatrix s_hat;
    std::vector<CycNumber> t_hat;
    int conductor = 1;
    bool normalized = true;
    /// Global dimension of the ambient category when s_hat is not normalized.
    std::optional<CycNumber> d_squared;

    CycMatrix t_hat_matrix() const { return CycMatrix::diagonal(t_hat).embed(conductor); }
    CycMatrix t_hat_squared() const { return t_hat_matrix().pow(2); }
};

/// SU(2)_{4m+2}: rank 4m+3 over Q(zeta_{16(m+1)}).
ModularData su2_modular_data(int m);

/// PSU(2)_{4m+2} over Q(zeta_{8m+8}). m = 0 gives the degenerate sVec data S = T = [1].
HatData psu2_hat_data(int m);

/// Data restricted to a subset of labels (e.g. the even part of SU(2)_k).
ModularData restrict_labels(const ModularData& md, const std::vector<int>& labels);

struct AxiomReport
{
    bool s_squared = false;  // S~^2 = D^2 C
    bool st_cubed = false;   // (S~ T)^3 = D_+ S~^2
    bool t_commutes_c = false;
    bool s_symmetric = false;
    bool t_roots_of_unity = false;
    CycNumber d_squared;
    CycNumber d_plus;

    bool passed() const { return s_squared && st_cubed && t_commutes_c && s_symmetric && t_roots_of_unity; }
};

AxiomReport verify_modular_axioms(const ModularData& md);

/// Labels X with S~(X, Y) = d_X d_Y for all Y.
std::set<int> transparent_objects(const ModularData& md);

/// Self-dual labels with d = 1, theta = -1 and a sign grading; when S~ has distinct rows the
/// psi-action must also be an involution sending psi to the unit.
std::set<int> find_fermions(const ModularData& md);

} // namespace spinmod
