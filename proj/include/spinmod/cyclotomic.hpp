#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace spinmod
{

using BigInt = mpz_class;
using BigRational = mpq_class;

class DivisionByZero : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

int euler_phi(int n);

/// Dense univariate polynomial over Q, ascending degree, trailing zeros trimmed.
class CycPolynomial
{
public:
    CycPolynomial() = default;
    explicit CycPolynomial(std::vector<BigRational> coeffs);

    static CycPolynomial monomial(std::size_t degree, const BigRational& c = 1);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<BigRational>& coeffs() const { return coeffs_; }
    BigRational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : BigRational(0); }
    const BigRational& leading() const;

    friend CycPolynomial operator+(const CycPolynomial& a, const CycPolynomial& b);
    friend CycPolynomial operator-(const CycPolynomial& a, const CycPolynomial& b);
    friend CycPolynomial operator*(const CycPolynomial& a, const CycPolynomial& b);
    CycPolynomial scaled(const BigRational& c) const;

    /// Quotient and remainder; throws DivisionByZero when b is zero.
    static std::pair<CycPolynomial, CycPolynomial> divmod(const CycPolynomial& a, const CycPolynomial& b);

    bool operator==(const CycPolynomial& other) const { return coeffs_ == other.coeffs_; }

    std::string to_string(char var = 'x') const;

private:
    void trim();
    std::vector<BigRational> coeffs_;
};

/// The n-th cyclotomic polynomial, obtained as (x^n - 1) / prod_{d | n, d < n} Phi_d. Cached.
const CycPolynomial& cyclotomic_polynomial(int n);

/// Reduction data for Q(zeta_n) in the power basis {1, zeta, ..., zeta^(phi(n)-1)}.
/// Instances are built once per conductor and never mutated afterwards.
struct CycField
{
    int conductor = 1;
    int degree = 1;
    /// power_residue[k] = x^k mod Phi_n for 0 <= k < table_size, as integer coefficients.
    std::vector<std::vector<std::int64_t>> power_residue;
    /// Largest |coefficient| over power_residue rows with k >= degree.
    std::int64_t max_residue = 0;

    const std::vector<std::int64_t>& residue(std::size_t k) const;

    static const CycField& get(int n);
};

/// An exact element of the cyclotomic field Q(zeta_n), stored in the reduced power basis.
class CycNumber
{
public:
    CycNumber();
    CycNumber(const BigRational& q, int conductor = 1); // NOLINT(google-explicit-constructor)
    CycNumber(long q) : CycNumber(BigRational(q)) {}    // NOLINT(google-explicit-constructor)
    CycNumber(int q) : CycNumber(BigRational(q)) {}     // NOLINT(google-explicit-constructor)

    /// Builds sum_k coeffs[k] zeta_n^k for any length of coeffs, reducing modulo Phi_n.
    static CycNumber from_powers(int n, const std::vector<BigRational>& coeffs);
    static CycNumber root_of_unity(int n, long long k);

    int conductor() const { return conductor_; }
    const std::vector<BigRational>& coeffs() const { return coeffs_; }

    /// Image in Q(zeta_n); requires conductor() | n.
    CycNumber embed(int n) const;

    bool is_zero() const;
    std::optional<BigRational> as_rational() const;

    CycNumber inverse() const;
    CycNumber conj() const;

    /// Value under zeta_n -> exp(2 pi i / n).
    std::complex<double> approx() const;

    /// Smallest k > 0 with a^k = 1, or nullopt when a is not a root of unity.
    std::optional<int> root_of_unity_order() const;

    CycNumber pow(long long e) const;

    friend CycNumber operator+(const CycNumber& a, const CycNumber& b);
    friend CycNumber operator-(const CycNumber& a, const CycNumber& b);
    friend CycNumber operator*(const CycNumber& a, const CycNumber& b);
    friend CycNumber operator/(const CycNumber& a, const CycNumber& b);
    CycNumber operator-() const;
    CycNumber& operator+=(const CycNumber& b) { return *this = *this + b; }
    CycNumber& operator-=(const CycNumber& b) { return *this = *this - b; }
    CycNumber& operator*=(const CycNumber& b) { return *this = *this * b; }

    /// Field equality; operands of different conductor are compared in Q(zeta_lcm).
    friend bool operator==(const CycNumber& a, const CycNumber& b);
    friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }

    /// Consistent with operator== across conductors: hashes the normalized trace Tr(a)/[K:Q].
    std::size_t hash() const;

    /// Canonical byte string (same-conductor values only).
    std::string encode() const;

    std::string to_string() const;

private:
    int conductor_ = 1;
    std::vector<BigRational> coeffs_;
};

/// Brings a and b into a common conductor.
std::pair<CycNumber, CycNumber> common_field(const CycNumber& a, const CycNumber& b);

/// Normalization constant sqrt(2/(m+1)) in Q(zeta_{8m+8}) via the quadratic Gauss sum branches.
CycNumber gauss_alpha(int m);

} // namespace spinmod

template <>
struct std::hash<spinmod::CycNumber>
{
    std::size_t operator()(const spinmod::CycNumber& a) const { return a.hash(); }
};
