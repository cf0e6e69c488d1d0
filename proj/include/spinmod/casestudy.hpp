#pragma once

// The PSU(2)_{4m+2} case study: group orders per m, conjecture checks, the infinite-image
// certificate for SU(2)_6, and a config-driven batch run.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinmod/congruence.hpp"
#include "spinmod/group_engine.hpp"
#include "spinmod/json_io.hpp"

namespace spinmod
{

struct CaseStudyOptions
{
    std::size_t linear_cap = 2'000'000;
    std::size_t projective_cap = 2'000'000;
    bool compute_levels = true;
    int level_bound_factor = 16; // levels are searched up to factor * (m + 1)
    double budget_seconds = 600;
};

struct Table1Row
{
    int m = 0;
    bool closed = false;
    std::string note;
    std::uint64_t linear_order = 0;     // |A_m|
    std::uint64_t center_order = 0;     // |Z(A_m)|
    std::uint64_t quotient_order = 0;   // |A_m / Z(A_m)|
    std::uint64_t derived_order = 0;    // |[A_m, A_m]|
    std::uint64_t projective_order = 0; // |rho^(Gamma_theta)|
    GroupFingerprint quotient_fingerprint;
    GroupFingerprint derived_fingerprint;
    bool level_checked = false;
    std::optional<int> minimal_level;
    bool level_monotone = true;
    double seconds = 0;
};

Table1Row table1_row(int m, const CaseStudyOptions& options = {});
std::vector<Table1Row> table1(int m_max, const CaseStudyOptions& options = {});

enum class TableFormat
{
    text,
    csv,
    json
};

TableFormat parse_table_format(const std::string& name);
std::string format_table1(const std::vector<Table1Row>& rows, TableFormat format);
Json to_json(const Table1Row& row);

struct ConjectureVerdict
{
    std::string clause; // a, b, c1, c2, d, e, f
    int m = 0;
    std::string expected;
    std::string computed;
    bool pass = false;
};

/// Verdicts for every clause that applies to each row. Rows must be indexed by m = 1, 2, ...
std::vector<ConjectureVerdict> conjecture_suite(const std::vector<Table1Row>& rows);
std::string format_verdicts(const std::vector<ConjectureVerdict>& verdicts);
Json to_json(const std::vector<ConjectureVerdict>& verdicts);

/// Closed-form order from clause (c2) for m + 1 = 2^n q (the 2-power factor is 1 when n = 0).
std::uint64_t conjectured_quotient_order(int m);

struct InfiniteCertificate
{
    bool annihilated = false; // 4X^16 - 4X^12 + X^8 - 4X^4 + 4I = 0 for X = S^ T^
    bool exceeded = false;    // projective <S^, T^> ran past the cap
    std::size_t explored = 0;
    std::size_t cap = 0;
    bool gamma_theta_finite = false;
    std::size_t gamma_theta_projective_order = 0;
    std::size_t gamma_theta_linear_order = 0;

    bool passed() const { return annihilated && exceeded && gamma_theta_finite; }
};

InfiniteCertificate infinite_image_certificate(std::size_t cap = 100'000);
Json to_json(const InfiniteCertificate& c);

/// key = value lines; '#' starts a comment.
std::map<std::string, std::string> parse_config(std::istream& in);

struct RunConfig
{
    int m_max = 8;
    int axioms_m_max = 4;
    std::vector<int> lemma_ns{2, 4, 6, 8, 12, 16};
    std::size_t infinite_cap = 100'000;
    std::string output_dir = "spinmod-report";
    TableFormat format = TableFormat::text;
    CaseStudyOptions options;

    static RunConfig from_map(const std::map<std::string, std::string>& values);
};

/// Runs every suite, writes reports into output_dir and returns 0 when every check passed,
/// 1 on a failed check and 2 when the output directory is unusable.
int run_all(const RunConfig& config, std::ostream& log);

} // namespace spinmod
