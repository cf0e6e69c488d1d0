#include "spinmod/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "spinmod/detail/bytes.hpp"

namespace spinmod
{

int euler_phi(int n)
{
    if (n < 1)
        throw std::invalid_argument("euler_phi: n must be positive");
    int result = n;
    int rest = n;
    for (int p = 2; p * p <= rest; ++p)
    {
        if (rest % p == 0)
        {
            while (rest % p == 0)
                rest /= p;
            result -= result / p;
        }
    }
    if (rest > 1)
        result -= result / rest;
    return result;
}

namespace
{

int moebius(int n)
{
    int result = 1;
    for (int p = 2; p * p <= n; ++p)
    {
        if (n % p == 0)
        {
            n /= p;
            if (n % p == 0)
                return 0;
            result = -result;
        }
    }
    if (n > 1)
        result = -result;
    return result;
}

// Common-denominator view of a rational coefficient vector.
struct IntegerForm
{
    std::vector<BigInt> num;
    BigInt den{1};
};

IntegerForm to_integer_form(const std::vector<BigRational>& coeffs)
{
    IntegerForm f;
    for (const auto& c : coeffs)
        mpz_lcm(f.den.get_mpz_t(), f.den.get_mpz_t(), c.get_den_mpz_t());
    f.num.resize(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k)
    {
        mpz_divexact(f.num[k].get_mpz_t(), f.den.get_mpz_t(), coeffs[k].get_den_mpz_t());
        f.num[k] *= coeffs[k].get_num();
    }
    return f;
}

// Folds integer polynomial coefficients (any length) into the power basis of Q(zeta_n).
std::vector<BigInt> reduce_integer(const CycField& field, const std::vector<BigInt>& poly)
{
    std::vector<BigInt> out(field.degree);
    std::size_t n = static_cast<std::size_t>(field.conductor);
    for (std::size_t k = 0; k < poly.size(); ++k)
    {
        if (poly[k] == 0)
            continue;
        std::size_t e = k < field.power_residue.size() ? k : k % n;
        const auto& res = field.residue(e);
        for (int j = 0; j < field.degree; ++j)
        {
            if (res[j] > 0)
                mpz_addmul_ui(out[j].get_mpz_t(), poly[k].get_mpz_t(), static_cast<unsigned long>(res[j]));
            else if (res[j] < 0)
                mpz_submul_ui(out[j].get_mpz_t(), poly[k].get_mpz_t(), static_cast<unsigned long>(-res[j]));
        }
    }
    return out;
}

std::vector<BigRational> over_denominator(std::vector<BigInt> num, const BigInt& den)
{
    std::vector<BigRational> out(num.size());
    for (std::size_t k = 0; k < num.size(); ++k)
    {
        out[k] = BigRational(num[k], den);
        out[k].canonicalize();
    }
    return out;
}

int lcm_int(int a, int b) { return std::lcm(a, b); }

} // namespace

// --- CycPolynomial -------------------------------------------------------

CycPolynomial::CycPolynomial(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

CycPolynomial CycPolynomial::monomial(std::size_t degree, const BigRational& c)
{
    std::vector<BigRational> coeffs(degree + 1);
    coeffs[degree] = c;
    return CycPolynomial(std::move(coeffs));
}

void CycPolynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

const BigRational& CycPolynomial::leading() const
{
    if (coeffs_.empty())
        throw std::logic_error("leading coefficient of zero polynomial");
    return coeffs_.back();
}

CycPolynomial operator+(const CycPolynomial& a, const CycPolynomial& b)
{
    std::vector<BigRational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = a.coeff(k) + b.coeff(k);
    return CycPolynomial(std::move(out));
}

CycPolynomial operator-(const CycPolynomial& a, const CycPolynomial& b)
{
    std::vector<BigRational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = a.coeff(k) - b.coeff(k);
    return CycPolynomial(std::move(out));
}

CycPolynomial operator*(const CycPolynomial& a, const CycPolynomial& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<BigRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    {
        if (a.coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return CycPolynomial(std::move(out));
}

CycPolynomial CycPolynomial::scaled(const BigRational& c) const
{
    std::vector<BigRational> out(coeffs_);
    for (auto& x : out)
        x *= c;
    return CycPolynomial(std::move(out));
}

std::pair<CycPolynomial, CycPolynomial> CycPolynomial::divmod(const CycPolynomial& a, const CycPolynomial& b)
{
    if (b.is_zero())
        throw DivisionByZero("polynomial division by zero");
    std::vector<BigRational> rem = a.coeffs_;
    int db = b.degree();
    if (a.degree() < db)
        return {CycPolynomial(), a};
    std::vector<BigRational> quot(a.degree() - db + 1);
    BigRational lead_inv = 1 / b.leading();
    for (int k = a.degree(); k >= db; --k)
    {
        if (rem[k] == 0)
            continue;
        BigRational factor = rem[k] * lead_inv;
        quot[k - db] = factor;
        for (int j = 0; j <= db; ++j)
            rem[k - db + j] -= factor * b.coeffs_[j];
    }
    return {CycPolynomial(std::move(quot)), CycPolynomial(std::move(rem))};
}

std::string CycPolynomial::to_string(char var) const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k)
    {
        const BigRational& c = coeffs_[k];
        if (c == 0)
            continue;
        BigRational mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (mag != 1 || k == 0)
            os << mag.get_str() << (k > 0 ? "*" : "");
        if (k > 0)
            os << var;
        if (k > 1)
            os << '^' << k;
    }
    return os.str();
}

// --- cyclotomic polynomials and fields -----------------------------------

const CycPolynomial& cyclotomic_polynomial(int n)
{
    if (n < 1)
        throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
    static std::recursive_mutex mutex;
    static std::map<int, std::unique_ptr<CycPolynomial>> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end())
        return *it->second;

    CycPolynomial poly = CycPolynomial::monomial(n) - CycPolynomial::monomial(0);
    for (int d = 1; d < n; ++d)
    {
        if (n % d != 0)
            continue;
        auto [q, r] = CycPolynomial::divmod(poly, cyclotomic_polynomial(d));
        if (!r.is_zero())
            throw std::logic_error("cyclotomic_polynomial: inexact division");
        poly = std::move(q);
    }
    auto [it, inserted] = cache.emplace(n, std::make_unique<CycPolynomial>(std::move(poly)));
    return *it->second;
}

const std::vector<std::int64_t>& CycField::residue(std::size_t k) const
{
    return power_residue[k < power_residue.size() ? k : k % static_cast<std::size_t>(conductor)];
}

const CycField& CycField::get(int n)
{
    if (n < 1)
        throw std::invalid_argument("CycField: conductor must be positive");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<CycField>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n); it != cache.end())
            return *it->second;
    }

    const CycPolynomial& phi = cyclotomic_polynomial(n);
    auto field = std::make_unique<CycField>();
    field->conductor = n;
    field->degree = phi.degree();
    int d = field->degree;
    std::vector<std::int64_t> phi_int(d + 1);
    for (int k = 0; k <= d; ++k)
        phi_int[k] = phi.coeff(k).get_num().get_si();

    std::size_t size = static_cast<std::size_t>(std::max(n, 2 * d - 1));
    field->power_residue.assign(size, std::vector<std::int64_t>(d, 0));
    std::vector<std::int64_t> cur(d, 0);
    cur[0] = 1;
    for (std::size_t k = 0; k < size; ++k)
    {
        field->power_residue[k] = cur;
        if (static_cast<int>(k) >= d)
            for (auto c : cur)
                field->max_residue = std::max(field->max_residue, c < 0 ? -c : c);
        // multiply by x and fold the degree-d term with the monic Phi_n
        std::int64_t top = cur[d - 1];
        for (int j = d - 1; j > 0; --j)
            cur[j] = cur[j - 1];
        cur[0] = 0;
        if (top != 0)
        {
            for (int j = 0; j < d; ++j)
            {
                std::int64_t prod = 0;
                if (__builtin_mul_overflow(top, phi_int[j], &prod) || __builtin_sub_overflow(cur[j], prod, &cur[j]))
                    throw std::overflow_error("CycField: residue table overflow");
            }
        }
    }

    std::lock_guard lock(mutex);
    auto [it, inserted] = cache.emplace(n, std::move(field));
    return *it->second;
}

// --- CycNumber ------------------------------------------------------------

CycNumber::CycNumber() : conductor_(1), coeffs_(1) {}

CycNumber::CycNumber(const BigRational& q, int conductor)
    : conductor_(conductor), coeffs_(CycField::get(conductor).degree)
{
    coeffs_[0] = q;
    coeffs_[0].canonicalize();
}

CycNumber CycNumber::from_powers(int n, const std::vector<BigRational>& coeffs)
{
    const CycField& field = CycField::get(n);
    IntegerForm f = to_integer_form(coeffs);
    CycNumber out;
    out.conductor_ = n;
    out.coeffs_ = over_denominator(reduce_integer(field, f.num), f.den);
    return out;
}

CycNumber CycNumber::root_of_unity(int n, long long k)
{
    if (n < 1)
        throw std::invalid_argument("root_of_unity: n must be positive");
    long long e = ((k % n) + n) % n;
    const auto& res = CycField::get(n).residue(static_cast<std::size_t>(e));
    CycNumber out;
    out.conductor_ = n;
    out.coeffs_.assign(res.size(), 0);
    for (std::size_t j = 0; j < res.size(); ++j)
        out.coeffs_[j] = BigRational(static_cast<long>(res[j]));
    return out;
}

CycNumber CycNumber::embed(int n) const
{
    if (n == conductor_)
        return *this;
    if (n % conductor_ != 0)
        throw std::invalid_argument("embed: target conductor must be a multiple");
    int step = n / conductor_;
    std::vector<BigRational> powers(static_cast<std::size_t>(step) * (coeffs_.size() - 1) + 1);
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        powers[k * step] = coeffs_[k];
    return from_powers(n, powers);
}

bool CycNumber::is_zero() const
{
    for (const auto& c : coeffs_)
        if (c != 0)
            return false;
    return true;
}

std::optional<BigRational> CycNumber::as_rational() const
{
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        if (coeffs_[k] != 0)
            return std::nullopt;
    return coeffs_[0];
}

CycNumber CycNumber::inverse() const
{
    if (is_zero())
        throw DivisionByZero("inverse of zero in cyclotomic field");
    if (auto q = as_rational())
        return CycNumber(1 / *q, conductor_);

    // extended Euclid against Phi_n
    CycPolynomial r0 = cyclotomic_polynomial(conductor_);
    CycPolynomial r1{coeffs_};
    CycPolynomial s0;
    CycPolynomial s1{{BigRational(1)}};
    while (!r1.is_zero())
    {
        auto [q, r] = CycPolynomial::divmod(r0, r1);
        CycPolynomial s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.degree() != 0)
        throw std::logic_error("inverse: Phi_n is not coprime to the operand");
    CycPolynomial inv = s0.scaled(1 / r0.coeff(0));
    std::vector<BigRational> coeffs = inv.coeffs();
    coeffs.resize(coeffs_.size());
    CycNumber out;
    out.conductor_ = conductor_;
    out.coeffs_ = std::move(coeffs);
    return out;
}

CycNumber CycNumber::conj() const
{
    std::vector<BigRational> powers(static_cast<std::size_t>(conductor_));
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        powers[(conductor_ - static_cast<int>(k)) % conductor_] += coeffs_[k];
    return from_powers(conductor_, powers);
}

std::complex<double> CycNumber::approx() const
{
    long double re = 0;
    long double im = 0;
    const long double two_pi = 2 * std::numbers::pi_v<long double>;
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
    {
        if (coeffs_[k] == 0)
            continue;
        long double c = coeffs_[k].get_d();
        long double angle = two_pi * static_cast<long double>(k) / conductor_;
        re += c * std::cos(angle);
        im += c * std::sin(angle);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

std::optional<int> CycNumber::root_of_unity_order() const
{
    if (is_zero())
        return std::nullopt;
    int limit = std::lcm(2, conductor_);
    CycNumber one(1, conductor_);
    CycNumber p = *this;
    for (int k = 1; k <= limit; ++k)
    {
        if (p == one)
            return k;
        p = p * *this;
    }
    return std::nullopt;
}

CycNumber CycNumber::pow(long long e) const
{
    CycNumber base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    CycNumber result(1, conductor_);
    while (k)
    {
        if (k & 1)
            result = result * base;
        k >>= 1;
        if (k)
            base = base * base;
    }
    return result;
}

std::pair<CycNumber, CycNumber> common_field(const CycNumber& a, const CycNumber& b)
{
    if (a.conductor() == b.conductor())
        return {a, b};
    int n = lcm_int(a.conductor(), b.conductor());
    return {a.embed(n), b.embed(n)};
}

CycNumber operator+(const CycNumber& a, const CycNumber& b)
{
    if (a.conductor_ != b.conductor_)
    {
        auto [x, y] = common_field(a, b);
        return x + y;
    }
    CycNumber out = a;
    for (std::size_t k = 0; k < out.coeffs_.size(); ++k)
        out.coeffs_[k] += b.coeffs_[k];
    return out;
}

CycNumber operator-(const CycNumber& a, const CycNumber& b)
{
    if (a.conductor_ != b.conductor_)
    {
        auto [x, y] = common_field(a, b);
        return x - y;
    }
    CycNumber out = a;
    for (std::size_t k = 0; k < out.coeffs_.size(); ++k)
        out.coeffs_[k] -= b.coeffs_[k];
    return out;
}

CycNumber CycNumber::operator-() const
{
    CycNumber out = *this;
    for (auto& c : out.coeffs_)
        c = -c;
    return out;
}

CycNumber operator*(const CycNumber& a, const CycNumber& b)
{
    if (a.conductor_ != b.conductor_)
    {
        auto [x, y] = common_field(a, b);
        return x * y;
    }
    const CycField& field = CycField::get(a.conductor_);
    IntegerForm fa = to_integer_form(a.coeffs_);
    IntegerForm fb = to_integer_form(b.coeffs_);
    std::vector<BigInt> prod(fa.num.size() + fb.num.size() - 1);
    for (std::size_t i = 0; i < fa.num.size(); ++i)
    {
        if (fa.num[i] == 0)
            continue;
        for (std::size_t j = 0; j < fb.num.size(); ++j)
            mpz_addmul(prod[i + j].get_mpz_t(), fa.num[i].get_mpz_t(), fb.num[j].get_mpz_t());
    }
    CycNumber out;
    out.conductor_ = a.conductor_;
    out.coeffs_ = over_denominator(reduce_integer(field, prod), fa.den * fb.den);
    return out;
}

CycNumber operator/(const CycNumber& a, const CycNumber& b) { return a * b.inverse(); }

bool operator==(const CycNumber& a, const CycNumber& b)
{
    if (a.conductor_ == b.conductor_)
        return a.coeffs_ == b.coeffs_;
    auto [x, y] = common_field(a, b);
    return x.coeffs_ == y.coeffs_;
}

std::size_t CycNumber::hash() const
{
    // Tr(zeta_n^k) / phi(n) = mu(n/g) / phi(n/g), g = gcd(k, n)
    BigRational trace = 0;
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
    {
        if (coeffs_[k] == 0)
            continue;
        int g = std::gcd(static_cast<int>(k), conductor_);
        int mu = moebius(conductor_ / g);
        if (mu != 0)
            trace += coeffs_[k] * BigRational(mu, euler_phi(conductor_ / g));
    }
    trace.canonicalize();
    std::size_t h = std::hash<std::string>{}(trace.get_str());
    return h;
}

std::string CycNumber::encode() const
{
    IntegerForm f = to_integer_form(coeffs_);
    std::string out;
    detail::append_varint(out, static_cast<std::uint64_t>(conductor_));
    detail::append_bigint(out, f.den);
    for (const auto& c : f.num)
        detail::append_bigint(out, c);
    return out;
}

std::string CycNumber::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
    {
        const BigRational& c = coeffs_[k];
        if (c == 0)
            continue;
        BigRational mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (mag != 1 || k == 0)
            os << mag.get_str() << (k > 0 ? "*" : "");
        if (k > 0)
            os << "z";
        if (k > 1)
            os << '^' << k;
    }
    if (first)
        os << "0";
    if (conductor_ > 2)
        os << " [z=zeta_" << conductor_ << "]";
    return os.str();
}

// --- Gauss sum normalization ---------------------------------------------

CycNumber gauss_alpha(int m)
{
    if (m < 1)
        throw std::invalid_argument("gauss_alpha: m must be positive");
    const int n = 8 * m + 8;
    const int big_m = 2 * (m + 1);
    auto w = [n](long long k) { return CycNumber::root_of_unity(n, k); };

    CycNumber alpha(0, n);
    if (big_m % 4 == 0)
    {
        for (long long j = 0; j < big_m; ++j)
            alpha += w(4 * j * j);
        alpha = alpha / (CycNumber(1, n) + w(big_m));
    }
    else
    {
        for (long long j = 0; j <= m; ++j)
            alpha += w(8 * j * j);
        if ((m + 1) % 4 == 3)
            alpha = alpha / w(big_m);
        alpha = ((w(m + 1) - w(-(m + 1))) / w(2 * m + 2)) * alpha;
    }
    if (alpha.is_zero())
        throw std::logic_error("gauss_alpha: Gauss sum evaluated to zero");
    return CycNumber(2, n) / alpha;
}

} // namespace spinmod
