#include "spinmod/casestudy.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "spinmod/modular_data.hpp"
#include "spinmod/spin_modular.hpp"

namespace spinmod
{

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct TwoSplit
{
    int n = 0; // m + 1 = 2^n q
    int q = 1;
};

TwoSplit split(int value)
{
    TwoSplit s;
    s.q = value;
    while (s.q % 2 == 0)
    {
        s.q /= 2;
        ++s.n;
    }
    return s;
}

bool is_prime(int p)
{
    if (p < 2)
        return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

std::string order_text(std::uint64_t v) { return std::to_string(v); }

std::string format_histogram(const GroupFingerprint& fp)
{
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, count] : fp.order_histogram)
    {
        out << (first ? "" : " ") << k << ":" << count;
        first = false;
    }
    return out.str();
}

Json fingerprint_json(const GroupFingerprint& fp)
{
    Json hist = Json::object();
    for (const auto& [k, count] : fp.order_histogram)
        hist[std::to_string(k)] = count;
    return Json{{"order", fp.order},
                {"center_order", fp.center_order},
                {"derived_order", fp.derived_order},
                {"exponent", fp.exponent},
                {"order_histogram", hist}};
}

const Table1Row* find_row(const std::vector<Table1Row>& rows, int m)
{
    for (const auto& r : rows)
        if (r.m == m)
            return &r;
    return nullptr;
}

} // namespace

// --- Table 1 -------------------------------------------------------------------

Table1Row table1_row(int m, const CaseStudyOptions& options)
{
    if (m < 1)
        throw std::invalid_argument("table1_row: m must be positive");
    auto start = Clock::now();
    Table1Row row;
    row.m = m;
    HatData hat = psu2_hat_data(m);

    CycMatrixCarrier linear(false);
    ClosureOptions closure;
    closure.cap = options.linear_cap;
    closure.deadline = start + std::chrono::duration_cast<Clock::duration>(
                                   std::chrono::duration<double>(options.budget_seconds));
    CycMatrix s = hat.s_hat.embed(hat.conductor);
    FiniteGroupTable a = close(linear, std::vector<CycMatrix>{s, hat.t_hat_squared()}, closure);
    row.linear_order = a.order();
    if (!a.closed)
    {
        row.note = a.order() > closure.cap ? "linear closure exceeded cap" : "linear closure ran out of time";
        row.seconds = seconds_since(start);
        return row;
    }

    row.center_order = center(a).size();
    FiniteGroupTable quotient = quotient_by_center(a);
    row.quotient_order = quotient.order();
    row.quotient_fingerprint = fingerprint(quotient);
    FiniteGroupTable derived = derived_subgroup(a);
    row.derived_order = derived.order();
    row.derived_fingerprint = fingerprint(derived);

    try
    {
        FiniteGroupTable image = hat_projective_image(hat, options.projective_cap);
        row.projective_order = image.order();
        if (options.compute_levels)
        {
            int bound = options.level_bound_factor * (m + 1);
            CongruenceReport report = minimal_level(hat, bound, "PSU(2)_" + std::to_string(4 * m + 2),
                                                    options.projective_cap);
            row.minimal_level = report.minimal_level;
            row.level_monotone = report.monotone;
            row.level_checked = true;
        }
        row.closed = true;
    }
    catch (const CapExceeded& e)
    {
        row.note = e.what();
    }
    row.seconds = seconds_since(start);
    return row;
}

std::vector<Table1Row> table1(int m_max, const CaseStudyOptions& options)
{
    if (m_max < 1)
        throw std::invalid_argument("table1: m_max must be positive");
    std::vector<Table1Row> rows;
    for (int m = 1; m <= m_max; ++m)
        rows.push_back(table1_row(m, options));
    return rows;
}

TableFormat parse_table_format(const std::string& name)
{
    if (name == "text")
        return TableFormat::text;
    if (name == "csv")
        return TableFormat::csv;
    if (name == "json")
        return TableFormat::json;
    throw std::invalid_argument("unknown table format '" + name + "' (text, csv or json)");
}

Json to_json(const Table1Row& row)
{
    Json out{{"m", row.m},
             {"closed", row.closed},
             {"linear_order", row.linear_order},
             {"center_order", row.center_order},
             {"quotient_order", row.quotient_order},
             {"derived_order", row.derived_order},
             {"projective_order", row.projective_order},
             {"quotient_fingerprint", fingerprint_json(row.quotient_fingerprint)},
             {"derived_fingerprint", fingerprint_json(row.derived_fingerprint)},
             {"level_monotone", row.level_monotone},
             {"seconds", row.seconds}};
    out["minimal_level"] = row.minimal_level ? Json(*row.minimal_level) : Json(nullptr);
    if (!row.note.empty())
        out["note"] = row.note;
    return out;
}

std::string format_table1(const std::vector<Table1Row>& rows, TableFormat format)
{
    std::ostringstream out;
    auto level = [](const Table1Row& r) { return r.minimal_level ? std::to_string(*r.minimal_level) : "-"; };
    switch (format)
    {
    case TableFormat::json:
    {
        Json all = Json::array();
        for (const auto& r : rows)
            all.push_back(to_json(r));
        out << all.dump(2) << '\n';
        break;
    }
    case TableFormat::csv:
        out << "m,A,Z,Abar,Aprime,rho_hat,level,Abar_exponent,Aprime_exponent,Aprime_orders,seconds,note\n";
        for (const auto& r : rows)
            out << r.m << ',' << r.linear_order << ',' << r.center_order << ',' << r.quotient_order << ','
                << r.derived_order << ',' << r.projective_order << ',' << level(r) << ','
                << r.quotient_fingerprint.exponent << ',' << r.derived_fingerprint.exponent << ",\""
                << format_histogram(r.derived_fingerprint) << "\"," << std::fixed << std::setprecision(2)
                << r.seconds << ",\"" << r.note << "\"\n";
        break;
    case TableFormat::text:
        out << std::setw(3) << "m" << std::setw(10) << "|A|" << std::setw(8) << "|Z|" << std::setw(10) << "|Abar|"
            << std::setw(10) << "|A'|" << std::setw(12) << "|rho^|" << std::setw(7) << "level" << std::setw(10)
            << "seconds" << "  A' element orders\n";
        for (const auto& r : rows)
        {
            out << std::setw(3) << r.m << std::setw(10) << r.linear_order << std::setw(8) << r.center_order
                << std::setw(10) << r.quotient_order << std::setw(10) << r.derived_order << std::setw(12)
                << r.projective_order << std::setw(7) << level(r) << std::setw(10) << std::fixed
                << std::setprecision(2) << r.seconds << "  " << format_histogram(r.derived_fingerprint);
            if (!r.note.empty())
                out << "  [" << r.note << "]";
            out << '\n';
        }
        break;
    }
    return out.str();
}

// --- conjectures ---------------------------------------------------------------

std::uint64_t conjectured_quotient_order(int m)
{
    TwoSplit s = split(m + 1);
    // q^3 prod (p^2 - 1) / (2 p^2), kept integral by dividing out p^2 first.
    std::uint64_t odd = static_cast<std::uint64_t>(s.q) * s.q * s.q;
    int rest = s.q;
    for (int p = 3; rest > 1; p += 2)
    {
        if (rest % p != 0)
            continue;
        while (rest % p == 0)
            rest /= p;
        auto pp = static_cast<std::uint64_t>(p) * p;
        odd = odd / pp * (pp - 1) / 2;
    }
    std::uint64_t two = s.n == 0 ? 1 : (std::uint64_t{1} << (3 * s.n + 1));
    return two * odd;
}

std::vector<ConjectureVerdict> conjecture_suite(const std::vector<Table1Row>& rows)
{
    std::vector<ConjectureVerdict> out;
    auto add = [&out](const char* clause, int m, std::string expected, std::string computed) {
        bool pass = expected == computed;
        out.push_back({clause, m, std::move(expected), std::move(computed), pass});
    };
    for (const auto& row : rows)
    {
        const int m = row.m;
        if (!row.closed)
        {
            out.push_back({"all", m, "closed groups", row.note.empty() ? "not closed" : row.note, false});
            continue;
        }
        TwoSplit s = split(m + 1);
        if (s.n == 0 && s.q >= 3)
        {
            GroupFingerprint psl = fingerprint(sl2_table(s.q, true));
            add("a", m, "PSL(2," + std::to_string(s.q) + ") " + psl.to_string(), [&] {
                return row.quotient_fingerprint == psl ? "PSL(2," + std::to_string(s.q) + ") " + psl.to_string()
                                                       : row.quotient_fingerprint.to_string();
            }());
        }
        if (s.q == 1)
            add("b", m, order_text(std::uint64_t{1} << (3 * s.n + 1)), order_text(row.quotient_order));
        if (s.n >= 1 && s.q >= 3)
        {
            const Table1Row* two = find_row(rows, (1 << s.n) - 1);
            const Table1Row* odd = find_row(rows, s.q - 1);
            if (two && odd && two->closed && odd->closed)
            {
                add("c1", m, order_text(two->quotient_order * odd->quotient_order), order_text(row.quotient_order));
                add("e", m, order_text(two->derived_order * odd->derived_order), order_text(row.derived_order));
            }
        }
        add("c2", m, order_text(conjectured_quotient_order(m)), order_text(row.quotient_order));
        if (m + 1 >= 5 && is_prime(m + 1))
        {
            GroupFingerprint sl2 = fingerprint(sl2_table(m + 1, false));
            add("d", m, "SL(2," + std::to_string(m + 1) + ") " + sl2.to_string(),
                row.derived_fingerprint == sl2 ? "SL(2," + std::to_string(m + 1) + ") " + sl2.to_string()
                                               : row.derived_fingerprint.to_string());
        }
        if (row.level_checked)
            add("f", m, std::to_string(4 * (m + 1)), row.minimal_level ? std::to_string(*row.minimal_level) : "none");
    }
    return out;
}

std::string format_verdicts(const std::vector<ConjectureVerdict>& verdicts)
{
    std::ostringstream out;
    for (const auto& v : verdicts)
        out << (v.pass ? "PASS" : "FAIL") << "  (" << v.clause << ") m=" << v.m << "  expected " << v.expected
            << "  computed " << v.computed << '\n';
    return out.str();
}

Json to_json(const std::vector<ConjectureVerdict>& verdicts)
{
    Json out = Json::array();
    for (const auto& v : verdicts)
        out.push_back(Json{{"clause", v.clause},
                           {"m", v.m},
                           {"expected", v.expected},
                           {"computed", v.computed},
                           {"pass", v.pass}});
    return out;
}

// --- SU(2)_6 certificate -----------------------------------------------------------

InfiniteCertificate infinite_image_certificate(std::size_t cap)
{
    InfiniteCertificate cert;
    cert.cap = cap;
    HatData hat = psu2_hat_data(1);
    CycMatrix s = hat.s_hat.embed(hat.conductor);
    CycMatrix t = hat.t_hat_matrix();
    CycMatrix x = s * t;
    CycMatrix x4 = x.pow(4);
    CycMatrix x8 = x4 * x4;
    CycMatrix x12 = x8 * x4;
    CycMatrix x16 = x8 * x8;
    CycMatrix id = CycMatrix::identity(2, hat.conductor);
    CycMatrix poly = x16.scaled(CycNumber(4)) - x12.scaled(CycNumber(4)) + x8 - x4.scaled(CycNumber(4)) +
                     id.scaled(CycNumber(4));
    cert.annihilated = poly.is_zero();

    CycMatrixCarrier projective(true);
    ClosureOptions options;
    options.cap = cap;
    FiniteGroupTable full = close(projective, std::vector<CycMatrix>{s, t}, options);
    cert.exceeded = !full.closed;
    cert.explored = full.order();

    FiniteGroupTable theta = close(projective, std::vector<CycMatrix>{s, hat.t_hat_squared()}, options);
    cert.gamma_theta_finite = theta.closed;
    cert.gamma_theta_projective_order = theta.order();
    CycMatrixCarrier linear(false);
    FiniteGroupTable theta_linear = close(linear, std::vector<CycMatrix>{s, hat.t_hat_squared()}, options);
    cert.gamma_theta_linear_order = theta_linear.closed ? theta_linear.order() : 0;
    return cert;
}

Json to_json(const InfiniteCertificate& c)
{
    return Json{{"annihilating_polynomial_vanishes", c.annihilated},
                {"s_t_closure_exceeded_cap", c.exceeded},
                {"s_t_elements_explored", c.explored},
                {"cap", c.cap},
                {"s_t2_projective_finite", c.gamma_theta_finite},
                {"s_t2_projective_order", c.gamma_theta_projective_order},
                {"s_t2_linear_order", c.gamma_theta_linear_order},
                {"passed", c.passed()}};
}

// --- batch run -------------------------------------------------------------------

std::map<std::string, std::string> parse_config(std::istream& in)
{
    std::map<std::string, std::string> values;
    std::string line;
    int number = 0;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line))
    {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(number) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(number) + ": empty key");
        values[key] = trim(line.substr(eq + 1));
    }
    return values;
}

RunConfig RunConfig::from_map(const std::map<std::string, std::string>& values)
{
    RunConfig c;
    auto as_int = [](const std::string& key, const std::string& v) -> long long {
        try
        {
            std::size_t used = 0;
            long long parsed = std::stoll(v, &used);
            if (used != v.size())
                throw std::invalid_argument(v);
            return parsed;
        }
        catch (const std::exception&)
        {
            throw std::invalid_argument("config: '" + key + "' expects an integer, got '" + v + "'");
        }
    };
    for (const auto& [key, v] : values)
    {
        if (key == "m_max")
            c.m_max = static_cast<int>(as_int(key, v));
        else if (key == "axioms_m_max")
            c.axioms_m_max = static_cast<int>(as_int(key, v));
        else if (key == "linear_cap")
            c.options.linear_cap = static_cast<std::size_t>(as_int(key, v));
        else if (key == "projective_cap")
            c.options.projective_cap = static_cast<std::size_t>(as_int(key, v));
        else if (key == "infinite_cap")
            c.infinite_cap = static_cast<std::size_t>(as_int(key, v));
        else if (key == "level_bound_factor")
            c.options.level_bound_factor = static_cast<int>(as_int(key, v));
        else if (key == "compute_levels")
            c.options.compute_levels = v == "true" || v == "1" || v == "yes";
        else if (key == "budget_seconds")
            c.options.budget_seconds = static_cast<double>(as_int(key, v));
        else if (key == "output_dir")
            c.output_dir = v;
        else if (key == "format")
            c.format = parse_table_format(v);
        else if (key == "lemma_ns")
        {
            c.lemma_ns.clear();
            std::stringstream list(v);
            std::string item;
            while (std::getline(list, item, ','))
                c.lemma_ns.push_back(static_cast<int>(as_int(key, item)));
        }
        else
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    if (c.m_max < 1 || c.axioms_m_max < 0 || c.options.level_bound_factor < 1)
        throw std::invalid_argument("config: m_max and level_bound_factor must be positive");
    return c;
}

int run_all(const RunConfig& config, std::ostream& log)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec || !fs::is_directory(config.output_dir))
    {
        log << "error: cannot use output directory '" << config.output_dir << "'"
            << (ec ? ": " + ec.message() : std::string()) << '\n';
        return 2;
    }
    auto path = [&](const std::string& name) { return (fs::path(config.output_dir) / name).string(); };
    bool ok = true;
    auto verdict = [&](const std::string& what, bool pass) {
        log << (pass ? "PASS  " : "FAIL  ") << what << '\n';
        ok &= pass;
    };

    try
    {
        Json axioms = Json::array();
        for (int m = 1; m <= config.axioms_m_max; ++m)
        {
            AxiomReport r = verify_modular_axioms(su2_modular_data(m));
            axioms.push_back(Json{{"m", m},
                                  {"s_squared", r.s_squared},
                                  {"st_cubed", r.st_cubed},
                                  {"t_commutes_c", r.t_commutes_c},
                                  {"passed", r.passed()},
                                  {"d_squared", to_json(r.d_squared)},
                                  {"d_plus", to_json(r.d_plus)}});
            verdict("modular axioms SU(2)_" + std::to_string(4 * m + 2), r.passed());

            ModularData md = su2_modular_data(m);
            SpinDecomposition d = decompose(md);
            write_json_file(path("spin_m" + std::to_string(m) + ".json"), to_json(d));
            verdict("spin decomposition SU(2)_" + std::to_string(4 * m + 2), d.passed());
            verdict("extracted hat data matches PSU(2)_" + std::to_string(4 * m + 2),
                    match_up_to_permutation(d.hat, psu2_hat_data(m)).has_value());
        }
        write_json_file(path("axioms.json"), axioms);

        Json lemma = Json::array();
        for (int n : config.lemma_ns)
        {
            LemmaReport r = verify_lemma_index3(n);
            lemma.push_back(to_json(r));
            verdict("index-3 lemma n=" + std::to_string(n), r.passed());
        }
        write_json_file(path("lemma.json"), lemma);

        InfiniteCertificate cert = infinite_image_certificate(config.infinite_cap);
        write_json_file(path("infinite.json"), to_json(cert));
        verdict("infinite image certificate for SU(2)_6", cert.passed());

        std::vector<Table1Row> rows;
        for (int m = 1; m <= config.m_max; ++m)
        {
            rows.push_back(table1_row(m, config.options));
            const auto& r = rows.back();
            verdict("table row m=" + std::to_string(m) + " |Abar|=" + std::to_string(r.quotient_order) +
                        " |A'|=" + std::to_string(r.derived_order) + " (" + std::to_string(r.seconds) + " s)",
                    r.closed && r.level_monotone);
        }
        const char* ext = config.format == TableFormat::csv ? "csv" : config.format == TableFormat::json ? "json" : "txt";
        {
            std::string text = format_table1(rows, config.format);
            std::ofstream out(path(std::string("table1.") + ext));
            out << text;
            if (!out)
                throw std::runtime_error("write failed: " + path(std::string("table1.") + ext));
        }
        auto verdicts = conjecture_suite(rows);
        write_json_file(path("conjectures.json"), to_json(verdicts));
        for (const auto& v : verdicts)
            verdict("conjecture (" + v.clause + ") m=" + std::to_string(v.m) + ": expected " + v.expected +
                        ", computed " + v.computed,
                    v.pass);
    }
    catch (const std::runtime_error& e)
    {
        log << "error: " << e.what() << '\n';
        return 2;
    }
    log << (ok ? "all checks passed\n" : "some checks failed\n");
    return ok ? 0 : 1;
}

} // namespace spinmod
