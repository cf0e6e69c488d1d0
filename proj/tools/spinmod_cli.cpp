// spinmod: command-line front end for the case study.
// Exit status: 0 on success, 1 when a check fails, 2 on bad input or I/O errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "spinmod/casestudy.hpp"
#include "spinmod/congruence.hpp"
#include "spinmod/json_io.hpp"
#include "spinmod/modular_data.hpp"
#include "spinmod/spin_modular.hpp"

using namespace spinmod;

namespace
{

int verify_axioms(const std::string& input)
{
    ModularData md = modular_data_from_json(read_json_file(input));
    AxiomReport r = verify_modular_axioms(md);
    Json out{{"rank", md.rank},
             {"s_squared", r.s_squared},
             {"st_cubed", r.st_cubed},
             {"t_commutes_c", r.t_commutes_c},
             {"s_symmetric", r.s_symmetric},
             {"t_roots_of_unity", r.t_roots_of_unity},
             {"d_squared", to_json(r.d_squared)},
             {"d_plus", to_json(r.d_plus)},
             {"passed", r.passed()}};
    std::cout << out.dump(2) << '\n';
    return r.passed() ? 0 : 1;
}

int spin_decompose(std::optional<int> m, const std::string& input)
{
    ModularData md = m ? su2_modular_data(*m) : modular_data_from_json(read_json_file(input));
    SpinDecomposition d = decompose(md);
    std::cout << to_json(d).dump(2) << '\n';
    return d.passed() ? 0 : 1;
}

int congruence_level(int m, std::optional<int> bound, std::size_t cap, bool json)
{
    int b = bound.value_or(16 * (m + 1));
    CongruenceReport r = minimal_level(psu2_hat_data(m), b, "PSU(2)_" + std::to_string(4 * m + 2), cap);
    if (json)
        std::cout << to_json(r).dump(2) << '\n';
    else
        std::cout << r.summary() << '\n';
    return r.monotone && (r.minimal_level || r.trivial_image) ? 0 : 1;
}

int lemma_check(int n)
{
    LemmaReport r = verify_lemma_index3(n);
    std::cout << to_json(r).dump(2) << '\n';
    return r.passed() ? 0 : 1;
}

int print_table1(int m_max, const std::string& format, const CaseStudyOptions& options)
{
    TableFormat f = parse_table_format(format);
    auto rows = table1(m_max, options);
    std::cout << format_table1(rows, f);
    for (const auto& r : rows)
        if (!r.closed)
            return 1;
    return 0;
}

int conjectures(int m_max, const CaseStudyOptions& options, bool json)
{
    auto verdicts = conjecture_suite(table1(m_max, options));
    if (json)
        std::cout << to_json(verdicts).dump(2) << '\n';
    else
        std::cout << format_verdicts(verdicts);
    for (const auto& v : verdicts)
        if (!v.pass)
            return 1;
    return 0;
}

int certify_infinite(std::size_t cap)
{
    InfiniteCertificate c = infinite_image_certificate(cap);
    std::cout << to_json(c).dump(2) << '\n';
    return c.passed() ? 0 : 1;
}

int run_all_command(const std::string& config_path)
{
    std::ifstream in(config_path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + config_path);
    RunConfig config = RunConfig::from_map(parse_config(in));
    return run_all(config, std::cout);
}

int export_data(int m, const std::string& kind, const std::string& output)
{
    Json j;
    if (kind == "modular")
        j = to_json(su2_modular_data(m));
    else if (kind == "hat")
        j = to_json(psu2_hat_data(m));
    else
        throw std::invalid_argument("unknown kind '" + kind + "' (modular or hat)");
    if (output.empty())
        std::cout << j.dump(2) << '\n';
    else
        write_json_file(output, j);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spin modular categories, PSU(2)_{4m+2} image groups and congruence levels"};
    app.require_subcommand(1);

    std::string input, format = "text", config, kind = "modular", output;
    int m = 1, n = 2, m_max = 6;
    std::optional<int> m_opt, bound;
    std::size_t cap = 100'000;
    bool json = false;
    CaseStudyOptions options;

    auto* axioms = app.add_subcommand("verify-axioms", "Check the modular data axioms exactly");
    axioms->add_option("--input", input, "ModularData JSON file")->required();

    auto* spin = app.add_subcommand("spin-decompose", "Fermion grading, partition and block decomposition");
    auto* spin_m = spin->add_option("--m", m_opt, "Use SU(2)_{4m+2}");
    auto* spin_in = spin->add_option("--input", input, "ModularData JSON file");
    spin_m->excludes(spin_in);
    spin->require_option(1);

    auto* level = app.add_subcommand("congruence-level", "Minimal even level of the PSU(2)_{4m+2} hat representation");
    level->add_option("--m", m, "m >= 0")->required();
    level->add_option("--bound", bound, "Largest even n to test (default 16(m+1))");
    level->add_option("--cap", cap, "Projective closure cap");
    level->add_flag("--json", json, "Emit the JSON report");

    auto* lemma = app.add_subcommand("lemma-check", "Index-3 lemma for Gamma_theta mod n");
    lemma->add_option("--n", n, "Even modulus")->required();

    auto* tab = app.add_subcommand("table1", "Group orders of the hat representations");
    tab->add_option("--m-max", m_max, "Largest m")->required();
    tab->add_option("--format", format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
    tab->add_option("--linear-cap", options.linear_cap, "Linear closure cap");
    tab->add_option("--budget", options.budget_seconds, "Seconds allowed per m");
    tab->add_flag("--no-levels{false}", options.compute_levels, "Skip congruence levels");

    auto* conj = app.add_subcommand("conjectures", "Check the structural predictions against computed groups");
    conj->add_option("--m-max", m_max, "Largest m")->required();
    conj->add_option("--budget", options.budget_seconds, "Seconds allowed per m");
    conj->add_flag("--json", json, "Emit JSON");

    auto* cert = app.add_subcommand("certify-infinite", "Show that <S^, T^> is infinite for SU(2)_6");
    cert->add_option("--cap", cap, "Closure cap");

    auto* all = app.add_subcommand("run-all", "Run every suite from a key=value config");
    all->add_option("--config", config, "Config file")->required();

    auto* exp = app.add_subcommand("export-data", "Write SU(2)_{4m+2} modular data or PSU(2) hat data as JSON");
    exp->add_option("--m", m, "m >= 0")->required();
    exp->add_option("--kind", kind, "modular or hat")->check(CLI::IsMember({"modular", "hat"}));
    exp->add_option("--output", output, "Output file (stdout when omitted)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        if (*axioms)
            return verify_axioms(input);
        if (*spin)
            return spin_decompose(m_opt, input);
        if (*level)
            return congruence_level(m, bound, cap, json);
        if (*lemma)
            return lemma_check(n);
        if (*tab)
            return print_table1(m_max, format, options);
        if (*conj)
            return conjectures(m_max, options, json);
        if (*cert)
            return certify_infinite(cap);
        if (*all)
            return run_all_command(config);
        if (*exp)
            return export_data(m, kind, output);
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
