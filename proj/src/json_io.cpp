#include "spinmod/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace spinmod
{

namespace
{

BigInt integer_from_json(const Json& j)
{
    if (j.is_string())
    {
        BigInt v;
        if (v.set_str(j.get<std::string>(), 10) != 0)
            throw std::invalid_argument("json: not a decimal integer: " + j.get<std::string>());
        return v;
    }
    if (j.is_number_integer())
        return BigInt(std::to_string(j.get<long long>()));
    throw std::invalid_argument("json: expected an integer string");
}

int int_field(const Json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw std::invalid_argument(std::string("json: missing integer field '") + key + "'");
    return j.at(key).get<int>();
}

} // namespace

Json to_json(const BigRational& q) { return Json::array({q.get_num().get_str(), q.get_den().get_str()}); }

BigRational rational_from_json(const Json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("json: rational must be [\"num\", \"den\"]");
    BigInt den = integer_from_json(j[1]);
    if (den == 0)
        throw DivisionByZero("json: zero denominator");
    BigRational q(integer_from_json(j[0]), den);
    q.canonicalize();
    return q;
}

Json to_json(const CycNumber& a)
{
    Json coeffs = Json::array();
    for (const auto& c : a.coeffs())
        coeffs.push_back(to_json(c));
    return Json{{"conductor", a.conductor()}, {"coeffs", coeffs}};
}

CycNumber cyc_from_json(const Json& j)
{
    if (!j.is_object())
        throw std::invalid_argument("json: CycNumber must be an object");
    int n = int_field(j, "conductor");
    if (n < 1)
        throw std::invalid_argument("json: conductor must be positive");
    if (!j.contains("coeffs") || !j.at("coeffs").is_array())
        throw std::invalid_argument("json: CycNumber needs a coeffs array");
    std::vector<BigRational> coeffs;
    for (const auto& c : j.at("coeffs"))
        coeffs.push_back(rational_from_json(c));
    return CycNumber::from_powers(n, coeffs);
}

Json to_json(const CycMatrix& m)
{
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i)
    {
        Json row = Json::array();
        for (int k = 0; k < m.cols(); ++k)
            row.push_back(to_json(m.at(i, k)));
        rows.push_back(std::move(row));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

CycMatrix matrix_from_json(const Json& j)
{
    const Json& rows = j.is_object() ? j.at("entries") : j;
    if (!rows.is_array())
        throw std::invalid_argument("json: matrix must be an array of rows");
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    std::vector<CycNumber> entries;
    for (const auto& row : rows)
    {
        if (!row.is_array() || static_cast<int>(row.size()) != c)
            throw std::invalid_argument("json: ragged matrix");
        for (const auto& e : row)
            entries.push_back(cyc_from_json(e));
    }
    return CycMatrix::from_entries(r, c, entries);
}

Json to_json(const ModularData& md)
{
    Json t = Json::array();
    for (const auto& v : md.t_diag)
        t.push_back(to_json(v));
    Json out{{"rank", md.rank}, {"conductor", md.conductor}, {"dual", md.dual},
             {"s_tilde", to_json(md.s_tilde)}, {"t_diag", t}};
    if (md.su2_m)
        out["su2_m"] = *md.su2_m;
    return out;
}

ModularData modular_data_from_json(const Json& j)
{
    ModularData md;
    md.rank = int_field(j, "rank");
    md.conductor = int_field(j, "conductor");
    md.s_tilde = matrix_from_json(j.at("s_tilde"));
    for (const auto& v : j.at("t_diag"))
        md.t_diag.push_back(cyc_from_json(v));
    if (j.contains("dual"))
        md.dual = j.at("dual").get<std::vector<int>>();
    else
        for (int i = 0; i < md.rank; ++i)
            md.dual.push_back(i);
    if (j.contains("su2_m"))
        md.su2_m = j.at("su2_m").get<int>();
    if (md.s_tilde.rows() > 0 && md.conductor % md.s_tilde.conductor() == 0)
        md.s_tilde = md.s_tilde.embed(md.conductor);
    md.validate_shape();
    return md;
}

Json to_json(const HatData& hat)
{
    Json t = Json::array();
    for (const auto& v : hat.t_hat)
        t.push_back(to_json(v));
    Json out{{"size", hat.size}, {"conductor", hat.conductor}, {"normalized", hat.normalized},
             {"s_hat", to_json(hat.s_hat)}, {"t_hat", t}};
    if (hat.d_squared)
        out["d_squared"] = to_json(*hat.d_squared);
    return out;
}

HatData hat_data_from_json(const Json& j)
{
    HatData hat;
    hat.size = int_field(j, "size");
    hat.conductor = int_field(j, "conductor");
    hat.normalized = j.value("normalized", true);
    hat.s_hat = matrix_from_json(j.at("s_hat"));
    for (const auto& v : j.at("t_hat"))
        hat.t_hat.push_back(cyc_from_json(v));
    if (j.contains("d_squared"))
        hat.d_squared = cyc_from_json(j.at("d_squared"));
    if (hat.s_hat.rows() != hat.size || hat.s_hat.cols() != hat.size || static_cast<int>(hat.t_hat.size()) != hat.size)
        throw std::invalid_argument("json: hat data sizes disagree");
    if (hat.conductor % hat.s_hat.conductor() != 0)
        throw std::invalid_argument("json: hat data does not live at the declared conductor");
    hat.s_hat = hat.s_hat.embed(hat.conductor);
    return hat;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    try
    {
        return Json::parse(in);
    }
    catch (const Json::parse_error& e)
    {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

} // namespace spinmod
