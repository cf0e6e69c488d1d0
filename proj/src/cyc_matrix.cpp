#include "spinmod/cyc_matrix.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "spinmod/detail/bytes.hpp"

namespace spinmod
{

namespace
{

using i128 = __int128;

void store(BigInt& out, i128 v)
{
    bool negative = v < 0;
    unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    auto hi = static_cast<unsigned long>(mag >> 64);
    auto lo = static_cast<unsigned long>(mag);
    mpz_set_ui(out.get_mpz_t(), hi);
    mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), 64);
    mpz_add_ui(out.get_mpz_t(), out.get_mpz_t(), lo);
    if (negative)
        mpz_neg(out.get_mpz_t(), out.get_mpz_t());
}

void store(BigInt& out, const BigInt& v) { out = v; }

inline void mac(i128& acc, std::int64_t a, std::int64_t b) { acc += static_cast<i128>(a) * b; }
inline void mac(BigInt& acc, const BigInt& a, const BigInt& b)
{
    mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

inline void mac_small(i128& acc, const i128& a, std::int64_t r) { acc += a * r; }
inline void mac_small(BigInt& acc, const BigInt& a, std::int64_t r)
{
    if (r > 0)
        mpz_addmul_ui(acc.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(r));
    else if (r < 0)
        mpz_submul_ui(acc.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(-r));
}

inline bool nonzero(std::int64_t v) { return v != 0; }
inline bool nonzero(const i128& v) { return v != 0; }
inline bool nonzero(const BigInt& v) { return sgn(v) != 0; }

inline void clear(i128& v) { v = 0; }
inline void clear(BigInt& v) { v = 0; }

int bit_length(const std::vector<BigInt>& values)
{
    std::size_t bits = 0;
    for (const auto& v : values)
        if (sgn(v) != 0)
            bits = std::max(bits, mpz_sizeinbase(v.get_mpz_t(), 2));
    return static_cast<int>(bits);
}

int ceil_log2(std::uint64_t x)
{
    int bits = 0;
    while ((std::uint64_t{1} << bits) < x && bits < 63)
        ++bits;
    return bits;
}

// Sparse index lists of the nonzero coefficients of each entry.
template <class In>
struct NonzeroIndex
{
    std::vector<std::uint32_t> start;
    std::vector<std::uint16_t> index;

    NonzeroIndex(const std::vector<In>& values, std::size_t entries, int degree)
    {
        start.reserve(entries + 1);
        for (std::size_t e = 0; e < entries; ++e)
        {
            start.push_back(static_cast<std::uint32_t>(index.size()));
            for (int p = 0; p < degree; ++p)
                if (nonzero(values[e * degree + p]))
                    index.push_back(static_cast<std::uint16_t>(p));
        }
        start.push_back(static_cast<std::uint32_t>(index.size()));
    }
};

// out (r x c) = a (r x s) * b (s x c), polynomial entries reduced modulo Phi_n.
template <class In, class Acc>
void product_kernel(const std::vector<In>& a, const std::vector<In>& b, int r, int s, int c, const CycField& field,
                    std::vector<BigInt>& out)
{
    const int d = field.degree;
    const int width = 2 * d - 1;
    NonzeroIndex<In> nz_a(a, static_cast<std::size_t>(r) * s, d);
    NonzeroIndex<In> nz_b(b, static_cast<std::size_t>(s) * c, d);
    std::vector<Acc> acc(static_cast<std::size_t>(c) * width);
    std::vector<Acc> reduced(d);
    out.assign(static_cast<std::size_t>(r) * c * d, BigInt(0));

    for (int i = 0; i < r; ++i)
    {
        for (auto& v : acc)
            clear(v);
        for (int k = 0; k < s; ++k)
        {
            std::size_t ea = static_cast<std::size_t>(i) * s + k;
            if (nz_a.start[ea] == nz_a.start[ea + 1])
                continue;
            for (int j = 0; j < c; ++j)
            {
                std::size_t eb = static_cast<std::size_t>(k) * c + j;
                if (nz_b.start[eb] == nz_b.start[eb + 1])
                    continue;
                Acc* row = acc.data() + static_cast<std::size_t>(j) * width;
                for (auto pa = nz_a.start[ea]; pa < nz_a.start[ea + 1]; ++pa)
                {
                    int p = nz_a.index[pa];
                    const In& av = a[ea * d + p];
                    for (auto pb = nz_b.start[eb]; pb < nz_b.start[eb + 1]; ++pb)
                    {
                        int q = nz_b.index[pb];
                        mac(row[p + q], av, b[eb * d + q]);
                    }
                }
            }
        }
        for (int j = 0; j < c; ++j)
        {
            Acc* row = acc.data() + static_cast<std::size_t>(j) * width;
            for (int t = 0; t < d; ++t)
                reduced[t] = row[t];
            for (int e = d; e < width; ++e)
            {
                if (!nonzero(row[e]))
                    continue;
                const auto& res = field.power_residue[e];
                for (int t = 0; t < d; ++t)
                    if (res[t] != 0)
                        mac_small(reduced[t], row[e], res[t]);
            }
            std::size_t base = (static_cast<std::size_t>(i) * c + j) * d;
            for (int t = 0; t < d; ++t)
                store(out[base + t], reduced[t]);
        }
    }
}

// Integer form of an entry-wise map: coefficient of zeta^k goes to zeta^(target(k)).
template <class Target>
std::vector<BigInt> remap_powers(const std::vector<BigInt>& num, int old_degree, const CycField& field, Target target)
{
    const int d = field.degree;
    std::size_t entries = num.size() / old_degree;
    std::vector<BigInt> out(entries * d);
    for (std::size_t e = 0; e < entries; ++e)
    {
        for (int k = 0; k < old_degree; ++k)
        {
            const BigInt& v = num[e * old_degree + k];
            if (sgn(v) == 0)
                continue;
            const auto& res = field.residue(static_cast<std::size_t>(target(k)));
            for (int t = 0; t < d; ++t)
                mac_small(out[e * d + t], v, res[t]);
        }
    }
    return out;
}

} // namespace

CycMatrix::CycMatrix(int rows, int cols, int conductor)
    : rows_(rows), cols_(cols), conductor_(conductor), degree_(CycField::get(conductor).degree)
{
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("CycMatrix: negative dimension");
    num_.assign(static_cast<std::size_t>(rows) * cols * degree_, BigInt(0));
}

CycMatrix CycMatrix::identity(int size, int conductor)
{
    CycMatrix out(size, size, conductor);
    for (int i = 0; i < size; ++i)
        out.num_[out.offset(i, i)] = 1;
    return out;
}

CycMatrix CycMatrix::from_entries(int rows, int cols, const std::vector<CycNumber>& entries)
{
    if (entries.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("CycMatrix: entry count does not match dimensions");
    int n = 1;
    for (const auto& e : entries)
        n = std::lcm(n, e.conductor());
    CycMatrix out(rows, cols, n);
    std::vector<CycNumber> embedded;
    embedded.reserve(entries.size());
    for (const auto& e : entries)
    {
        embedded.push_back(e.embed(n));
        for (const auto& c : embedded.back().coeffs())
            mpz_lcm(out.den_.get_mpz_t(), out.den_.get_mpz_t(), c.get_den_mpz_t());
    }
    for (std::size_t e = 0; e < embedded.size(); ++e)
    {
        const auto& coeffs = embedded[e].coeffs();
        for (int k = 0; k < out.degree_; ++k)
        {
            BigInt& slot = out.num_[e * out.degree_ + k];
            mpz_divexact(slot.get_mpz_t(), out.den_.get_mpz_t(), coeffs[k].get_den_mpz_t());
            slot *= coeffs[k].get_num();
        }
    }
    out.normalize();
    return out;
}

CycMatrix CycMatrix::diagonal(const std::vector<CycNumber>& diag)
{
    int size = static_cast<int>(diag.size());
    std::vector<CycNumber> entries(static_cast<std::size_t>(size) * size);
    for (int i = 0; i < size; ++i)
        entries[static_cast<std::size_t>(i) * size + i] = diag[i];
    return from_entries(size, size, entries);
}

void CycMatrix::normalize()
{
    BigInt g = den_;
    bool any = false;
    for (const auto& v : num_)
    {
        if (sgn(v) == 0)
            continue;
        any = true;
        if (g == 1)
            break;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    if (!any)
    {
        den_ = 1;
        return;
    }
    if (g != 1)
    {
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
        for (auto& v : num_)
            if (sgn(v) != 0)
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
}

CycNumber CycMatrix::at(int i, int j) const
{
    if (i < 0 || j < 0 || i >= rows_ || j >= cols_)
        throw std::out_of_range("CycMatrix::at");
    std::vector<BigRational> coeffs(degree_);
    std::size_t base = offset(i, j);
    for (int k = 0; k < degree_; ++k)
    {
        coeffs[k] = BigRational(num_[base + k], den_);
        coeffs[k].canonicalize();
    }
    return CycNumber::from_powers(conductor_, coeffs);
}

bool CycMatrix::entry_is_zero(int i, int j) const
{
    std::size_t base = offset(i, j);
    for (int k = 0; k < degree_; ++k)
        if (sgn(num_[base + k]) != 0)
            return false;
    return true;
}

std::vector<CycNumber> CycMatrix::entries() const
{
    std::vector<CycNumber> out;
    out.reserve(static_cast<std::size_t>(rows_) * cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            out.push_back(at(i, j));
    return out;
}

std::vector<CycNumber> CycMatrix::diagonal_entries() const
{
    std::vector<CycNumber> out;
    for (int i = 0; i < std::min(rows_, cols_); ++i)
        out.push_back(at(i, i));
    return out;
}

CycMatrix CycMatrix::embed(int n) const
{
    if (n == conductor_)
        return *this;
    if (n % conductor_ != 0)
        throw std::invalid_argument("CycMatrix::embed: target conductor must be a multiple");
    const CycField& field = CycField::get(n);
    int step = n / conductor_;
    CycMatrix out;
    out.rows_ = rows_;
    out.cols_ = cols_;
    out.conductor_ = n;
    out.degree_ = field.degree;
    out.den_ = den_;
    out.num_ = remap_powers(num_, degree_, field, [step](int k) { return k * step; });
    out.normalize();
    return out;
}

CycMatrix CycMatrix::transpose() const
{
    CycMatrix out(cols_, rows_, conductor_);
    out.den_ = den_;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            for (int k = 0; k < degree_; ++k)
                out.num_[out.offset(j, i) + k] = num_[offset(i, j) + k];
    return out;
}

CycMatrix CycMatrix::conj() const
{
    const CycField& field = CycField::get(conductor_);
    int n = conductor_;
    CycMatrix out = *this;
    out.num_ = remap_powers(num_, degree_, field, [n](int k) { return (n - k) % n; });
    out.normalize();
    return out;
}

CycMatrix multiply_same_field(const CycMatrix& a, const CycMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("CycMatrix: dimension mismatch in product");
    const CycField& field = CycField::get(a.conductor_);
    CycMatrix out;
    out.rows_ = a.rows_;
    out.cols_ = b.cols_;
    out.conductor_ = a.conductor_;
    out.degree_ = a.degree_;
    out.den_ = a.den_ * b.den_;

    int bits_a = bit_length(a.num_);
    int bits_b = bit_length(b.num_);
    int headroom = ceil_log2(static_cast<std::uint64_t>(std::max(1, a.cols_)) * a.degree_) +
                   ceil_log2(1 + static_cast<std::uint64_t>(a.degree_) * static_cast<std::uint64_t>(field.max_residue)) + 2;
    if (bits_a <= 62 && bits_b <= 62 && bits_a + bits_b + headroom <= 126)
    {
        std::vector<std::int64_t> sa(a.num_.size());
        std::vector<std::int64_t> sb(b.num_.size());
        for (std::size_t k = 0; k < sa.size(); ++k)
            sa[k] = mpz_get_si(a.num_[k].get_mpz_t());
        for (std::size_t k = 0; k < sb.size(); ++k)
            sb[k] = mpz_get_si(b.num_[k].get_mpz_t());
        product_kernel<std::int64_t, i128>(sa, sb, a.rows_, a.cols_, b.cols_, field, out.num_);
    }
    else
    {
        product_kernel<BigInt, BigInt>(a.num_, b.num_, a.rows_, a.cols_, b.cols_, field, out.num_);
    }
    out.normalize();
    return out;
}

std::pair<CycMatrix, CycMatrix> common_field(const CycMatrix& a, const CycMatrix& b)
{
    if (a.conductor() == b.conductor())
        return {a, b};
    int n = std::lcm(a.conductor(), b.conductor());
    return {a.embed(n), b.embed(n)};
}

CycMatrix operator*(const CycMatrix& a, const CycMatrix& b)
{
    if (a.conductor_ != b.conductor_)
    {
        auto [x, y] = common_field(a, b);
        return multiply_same_field(x, y);
    }
    return multiply_same_field(a, b);
}

CycMatrix CycMatrix::scaled(const CycNumber& c) const
{
    // (rows*cols) x 1 column times a 1 x 1 matrix
    CycMatrix column = *this;
    column.rows_ = rows_ * cols_;
    column.cols_ = 1;
    CycMatrix scalar = from_entries(1, 1, {c});
    CycMatrix prod = column * scalar;
    prod.cols_ = cols_;
    prod.rows_ = rows_;
    return prod;
}

CycMatrix operator+(const CycMatrix& a, const CycMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("CycMatrix: dimension mismatch in sum");
    if (a.conductor_ != b.conductor_)
    {
        auto [x, y] = common_field(a, b);
        return x + y;
    }
    BigInt l;
    mpz_lcm(l.get_mpz_t(), a.den_.get_mpz_t(), b.den_.get_mpz_t());
    BigInt fa = l / a.den_;
    BigInt fb = l / b.den_;
    CycMatrix out = a;
    out.den_ = l;
    for (std::size_t k = 0; k < out.num_.size(); ++k)
        out.num_[k] = a.num_[k] * fa + b.num_[k] * fb;
    out.normalize();
    return out;
}

CycMatrix CycMatrix::operator-() const
{
    CycMatrix out = *this;
    for (auto& v : out.num_)
        v = -v;
    return out;
}

CycMatrix operator-(const CycMatrix& a, const CycMatrix& b) { return a + (-b); }

bool operator==(const CycMatrix& a, const CycMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        return false;
    if (a.conductor_ != b.conductor_)
    {
        auto [x, y] = common_field(a, b);
        return x == y;
    }
    return a.den_ == b.den_ && a.num_ == b.num_;
}

CycMatrix CycMatrix::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const
{
    CycMatrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()), conductor_);
    out.den_ = den_;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (int k = 0; k < degree_; ++k)
                out.num_[out.offset(static_cast<int>(i), static_cast<int>(j)) + k] = num_[offset(rows[i], cols[j]) + k];
    out.normalize();
    return out;
}

CycMatrix CycMatrix::pow(unsigned e) const
{
    if (!is_square())
        throw std::invalid_argument("CycMatrix::pow: matrix must be square");
    CycMatrix result = identity(rows_, conductor_);
    CycMatrix base = *this;
    while (e)
    {
        if (e & 1)
            result = result * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return result;
}

bool CycMatrix::is_zero() const
{
    for (const auto& v : num_)
        if (sgn(v) != 0)
            return false;
    return true;
}

bool CycMatrix::is_identity() const { return is_square() && *this == identity(rows_, conductor_); }

std::optional<CycNumber> CycMatrix::scalar_value() const
{
    if (!is_square() || rows_ == 0)
        return std::nullopt;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
        {
            if (i == j)
            {
                for (int k = 0; k < degree_; ++k)
                    if (num_[offset(i, i) + k] != num_[offset(0, 0) + k])
                        return std::nullopt;
            }
            else if (!entry_is_zero(i, j))
                return std::nullopt;
        }
    return at(0, 0);
}

std::optional<std::pair<int, int>> CycMatrix::first_nonzero() const
{
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!entry_is_zero(i, j))
                return std::make_pair(i, j);
    return std::nullopt;
}

CycNumber CycMatrix::determinant() const
{
    if (!is_square())
        throw std::invalid_argument("determinant of non-square matrix");
    int n = rows_;
    std::vector<CycNumber> m = entries();
    CycNumber det(1, conductor_);
    for (int col = 0; col < n; ++col)
    {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!m[static_cast<std::size_t>(r) * n + col].is_zero())
            {
                pivot = r;
                break;
            }
        if (pivot < 0)
            return CycNumber(0, conductor_);
        if (pivot != col)
        {
            for (int j = 0; j < n; ++j)
                std::swap(m[static_cast<std::size_t>(pivot) * n + j], m[static_cast<std::size_t>(col) * n + j]);
            det = -det;
        }
        const CycNumber p = m[static_cast<std::size_t>(col) * n + col];
        det = det * p;
        CycNumber inv = p.inverse();
        for (int r = col + 1; r < n; ++r)
        {
            CycNumber f = m[static_cast<std::size_t>(r) * n + col] * inv;
            if (f.is_zero())
                continue;
            for (int j = col; j < n; ++j)
                m[static_cast<std::size_t>(r) * n + j] -= f * m[static_cast<std::size_t>(col) * n + j];
        }
    }
    return det;
}

std::string CycMatrix::encode() const
{
    std::string out;
    out.reserve(num_.size() + 16);
    detail::append_varint(out, static_cast<std::uint64_t>(rows_));
    detail::append_varint(out, static_cast<std::uint64_t>(cols_));
    detail::append_varint(out, static_cast<std::uint64_t>(conductor_));
    detail::append_bigint(out, den_);
    for (const auto& v : num_)
        detail::append_bigint(out, v);
    return out;
}

CycMatrix CycMatrix::decode(std::string_view bytes)
{
    std::size_t pos = 0;
    int rows = static_cast<int>(detail::read_varint(bytes, pos));
    int cols = static_cast<int>(detail::read_varint(bytes, pos));
    int conductor = static_cast<int>(detail::read_varint(bytes, pos));
    CycMatrix out(rows, cols, conductor);
    out.den_ = detail::read_bigint(bytes, pos);
    for (auto& v : out.num_)
        v = detail::read_bigint(bytes, pos);
    if (pos != bytes.size())
        throw std::invalid_argument("CycMatrix::decode: trailing bytes");
    return out;
}

std::string CycMatrix::to_string() const
{
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i)
    {
        os << "[";
        for (int j = 0; j < cols_; ++j)
            os << (j ? ", " : "") << at(i, j).to_string();
        os << "]\n";
    }
    return os.str();
}

} // namespace spinmod
