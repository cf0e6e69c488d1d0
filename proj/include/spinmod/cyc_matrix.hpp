#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spinmod/cyclotomic.hpp"

namespace spinmod
{

/// Dense matrix over Q(zeta_n).
///
/// Stored as a single positive denominator and integer numerators in the power basis, with
/// gcd(denominator, all numerators) = 1. That form is unique per matrix, so encode() is a
/// canonical byte string usable as a hash key.
class CycMatrix
{
public:
    CycMatrix() = default;
    CycMatrix(int rows, int cols, int conductor = 1);

    static CycMatrix identity(int size, int conductor = 1);
    /// Row-major entries; the conductor is the lcm of the entry conductors.
    static CycMatrix from_entries(int rows, int cols, const std::vector<CycNumber>& entries);
    static CycMatrix diagonal(const std::vector<CycNumber>& diag);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int conductor() const { return conductor_; }
    bool is_square() const { return rows_ == cols_; }

    CycNumber at(int i, int j) const;
    bool entry_is_zero(int i, int j) const;
    std::vector<CycNumber> entries() const;
    std::vector<CycNumber> diagonal_entries() const;

    CycMatrix embed(int n) const;
    CycMatrix transpose() const;
    CycMatrix conj() const;
    CycMatrix adjoint() const { return conj().transpose(); }
    CycMatrix scaled(const CycNumber& c) const;
    CycMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;
    CycMatrix pow(unsigned e) const;

    bool is_zero() const;
    bool is_identity() const;
    bool is_symmetric() const { return *this == transpose(); }
    /// Value c when the matrix equals c * I.
    std::optional<CycNumber> scalar_value() const;
    /// First nonzero entry in row-major order.
    std::optional<std::pair<int, int>> first_nonzero() const;
    CycNumber determinant() const;

    friend CycMatrix operator*(const CycMatrix& a, const CycMatrix& b);
    friend CycMatrix operator+(const CycMatrix& a, const CycMatrix& b);
    friend CycMatrix operator-(const CycMatrix& a, const CycMatrix& b);
    CycMatrix operator-() const;
    friend bool operator==(const CycMatrix& a, const CycMatrix& b);
    friend bool operator!=(const CycMatrix& a, const CycMatrix& b) { return !(a == b); }

    std::string encode() const;
    static CycMatrix decode(std::string_view bytes);

    std::string to_string() const;

private:
    friend CycMatrix multiply_same_field(const CycMatrix& a, const CycMatrix& b);

    std::size_t offset(int i, int j) const { return (static_cast<std::size_t>(i) * cols_ + j) * degree_; }
    void normalize();

    int rows_ = 0;
    int cols_ = 0;
    int conductor_ = 1;
    int degree_ = 1;
    BigInt den_{1};
    std::vector<BigInt> num_;
};

/// Brings both operands into Q(zeta_lcm).
std::pair<CycMatrix, CycMatrix> common_field(const CycMatrix& a, const CycMatrix& b);

} // namespace spinmod
