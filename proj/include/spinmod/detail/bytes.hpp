#pragma once

// Compact canonical byte encodings used as hash keys.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace spinmod::detail
{

inline void append_varint(std::string& out, std::uint64_t v)
{
    while (v >= 0x80)
    {
        out.push_back(static_cast<char>((v & 0x7f) | 0x80));
        v >>= 7;
    }
    out.push_back(static_cast<char>(v));
}

inline std::uint64_t read_varint(std::string_view in, std::size_t& pos)
{
    std::uint64_t v = 0;
    int shift = 0;
    while (true)
    {
        if (pos >= in.size() || shift > 63)
            throw std::invalid_argument("truncated varint");
        auto byte = static_cast<unsigned char>(in[pos++]);
        v |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
        if (!(byte & 0x80))
            return v;
        shift += 7;
    }
}

// Header varint is (byte_length << 1 | sign); magnitude follows big-endian.
inline void append_bigint(std::string& out, const mpz_t v)
{
    int sign = mpz_sgn(v);
    if (sign == 0)
    {
        out.push_back(0);
        return;
    }
    std::size_t count = (mpz_sizeinbase(v, 2) + 7) / 8;
    append_varint(out, (static_cast<std::uint64_t>(count) << 1) | (sign < 0 ? 1u : 0u));
    std::size_t old = out.size();
    out.resize(old + count);
    std::size_t written = 0;
    mpz_export(out.data() + old, &written, 1, 1, 1, 0, v);
}

inline void append_bigint(std::string& out, const mpz_class& v) { append_bigint(out, v.get_mpz_t()); }

inline mpz_class read_bigint(std::string_view in, std::size_t& pos)
{
    std::uint64_t header = read_varint(in, pos);
    mpz_class v;
    if (header == 0)
        return v;
    std::size_t count = header >> 1;
    if (pos + count > in.size())
        throw std::invalid_argument("truncated integer");
    mpz_import(v.get_mpz_t(), count, 1, 1, 1, 0, in.data() + pos);
    pos += count;
    if (header & 1)
        v = -v;
    return v;
}

} // namespace spinmod::detail
