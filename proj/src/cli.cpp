#include "ntlab/cli.hpp"

#include "ntlab/arith.hpp"
#include "ntlab/errors.hpp"
#include "ntlab/format.hpp"
#include "ntlab/harness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace ntlab::cli {

namespace {

constexpr std::int64_t kDefaultLimit = 1'000'000;
constexpr std::int64_t kDefaultSmallLimit = 100'000; // wintner, lemma11
constexpr std::int64_t kDefaultStieltjesTerms = 1'000'000;
constexpr std::int64_t kDefaultSeriesTerms = 10'000'000; // thm10 inner series
constexpr std::int64_t kTaylorStieltjesTerms = 100'000;

const std::map<std::string, Experiment>& experiment_table()
{
    static const std::map<std::string, Experiment> table = {
        {"pnt", Experiment::pnt},         {"psi-mean", Experiment::psi_mean},
        {"lemma5", Experiment::lemma5},   {"lemma6", Experiment::lemma6},
        {"lemma11", Experiment::lemma11}, {"wintner", Experiment::wintner},
        {"axer", Experiment::axer},       {"thm9", Experiment::thm9},
        {"dirichlet", Experiment::dirichlet}, {"thm10", Experiment::thm10},
    };
    return table;
}

double parse_double(std::string_view text, const char* what)
{
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v))
        throw UsageError(std::string(what) + ": cannot parse '" + std::string(text) + "' as a real number");
    return v;
}

std::int64_t parse_int(std::string_view text, const char* what)
{
    std::int64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw UsageError(std::string(what) + ": cannot parse '" + std::string(text) + "' as an integer");
    return v;
}

Complex parse_complex(const std::string& text)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        return {parse_double(text, "--s"), 0.0};
    return {parse_double(std::string_view(text).substr(0, comma), "--s"),
            parse_double(std::string_view(text).substr(comma + 1), "--s")};
}

GridSpec parse_grid(const std::string& text)
{
    GridSpec grid;
    constexpr std::string_view prefix = "geometric:";
    if (text.rfind(prefix, 0) == 0) {
        grid.geometric_base = parse_int(std::string_view(text).substr(prefix.size()), "--checkpoints");
        if (grid.geometric_base < 2)
            throw UsageError("--checkpoints: geometric base must be >= 2");
        return grid;
    }
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        grid.points.push_back(parse_int(rest.substr(0, comma), "--checkpoints"));
        if (comma == std::string_view::npos)
            break;
        rest.remove_prefix(comma + 1);
    }
    if (grid.points.empty())
        throw UsageError("--checkpoints: empty list");
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        if (grid.points[i] < 1)
            throw UsageError("--checkpoints: entries must be >= 1");
        if (i > 0 && grid.points[i] <= grid.points[i - 1])
            throw UsageError("--checkpoints: entries must be strictly increasing");
    }
    return grid;
}

struct RawFlags {
    std::optional<std::int64_t> limit;
    std::optional<std::int64_t> modulus;
    std::optional<std::int64_t> residue;
    std::string s;
    std::optional<std::int64_t> terms;
    std::optional<double> tolerance;
    std::string checkpoints;
    std::string format = "csv";
    std::string output;
    bool allow_large = false;
};

void add_common_flags(CLI::App& sub, RawFlags& f)
{
    sub.add_option("--limit", f.limit, "Sieve / summation limit N");
    sub.add_option("--modulus", f.modulus, "Progression modulus q");
    sub.add_option("--residue", f.residue, "Progression residue a");
    sub.add_option("--s", f.s, "Complex argument RE[,IM]");
    sub.add_option("--terms", f.terms, "Series terms");
    sub.add_option("--tolerance", f.tolerance, "Override the pass threshold");
    sub.add_option("--checkpoints", f.checkpoints, "geometric:B or comma-separated list");
    sub.add_option("--format", f.format, "csv or tsv")->check(CLI::IsMember({"csv", "tsv"}));
    sub.add_option("--output", f.output, "Output path (default: standard output)");
    sub.add_flag("--allow-large", f.allow_large, "Allow sieve limits above 10^8");
}

std::int64_t default_limit(const RunConfig& c)
{
    if (c.command == Command::verify &&
        (c.experiment == Experiment::wintner || c.experiment == Experiment::lemma11))
        return kDefaultSmallLimit;
    return kDefaultLimit;
}

std::string join_row(std::initializer_list<std::string> cells, char sep)
{
    std::string out;
    bool first = true;
    for (const auto& c : cells) {
        if (!first)
            out += sep;
        out += c;
        first = false;
    }
    out += '\n';
    return out;
}

std::string optional_real(const std::optional<double>& v)
{
    return v ? format_real(*v) : std::string();
}

// Rows for the plain (non-verify) commands.
ConvergenceReport run_table_command(const RunConfig& c, std::int64_t limit)
{
    const GridSpec& g = c.checkpoints;
    switch (c.command) {
    case Command::sieve: {
        const SieveTables tables = build_sieve(limit, {c.allow_large});
        std::vector<Checkpoint> rows;
        std::int64_t squarefree = 0;
        std::int64_t n = 1;
        for (std::int64_t x : g.resolve(limit)) {
            for (; n <= x; ++n)
                squarefree += tables.mu(n) != 0 ? 1 : 0;
            rows.push_back({x, static_cast<double>(squarefree),
                            static_cast<double>(squarefree) / static_cast<double>(x), std::nullopt});
        }
        return make_report("squarefree count from the mu table", std::nullopt, std::move(rows));
    }
    case Command::psi:
    case Command::pi: {
        const SieveTables tables = build_sieve(limit, {c.allow_large});
        const std::int64_t q = c.modulus.value_or(1);
        const std::int64_t a = c.residue.value_or(0);
        const bool coprime = std::gcd(a, q) == 1;
        const auto phi = static_cast<double>(euler_phi(q));
        std::vector<Checkpoint> rows;
        for (std::int64_t x : g.resolve(limit)) {
            const double xd = static_cast<double>(x);
            if (c.command == Command::psi) {
                const double v = psi_ap(x, q, a, tables);
                rows.push_back({x, v, v * phi / xd, std::nullopt});
            } else {
                const auto v = static_cast<double>(prime_pi_ap(x, q, a, tables));
                rows.push_back({x, v, v * std::log(xd) * phi / xd, std::nullopt});
            }
        }
        return make_report(c.command == Command::psi ? "psi(x;q,a) phi(q)/x" : "pi(x;q,a) phi(q) log x / x",
                           coprime ? std::optional<double>(1.0) : std::nullopt, std::move(rows));
    }
    case Command::mertens: {
        const SieveTables tables = build_sieve(limit, {c.allow_large});
        std::vector<Checkpoint> rows;
        std::int64_t m = 0;
        std::int64_t n = 1;
        for (std::int64_t x : g.resolve(limit)) {
            for (; n <= x; ++n)
                m += tables.mu(n);
            rows.push_back({x, static_cast<double>(m), static_cast<double>(m) / static_cast<double>(x), std::nullopt});
        }
        return make_report("M(x)/x", 0.0, std::move(rows));
    }
    case Command::zeta: {
        const Complex s = c.s.value_or(Complex(2.0, 0.0));
        Complex value;
        std::int64_t terms = 0;
        if (std::abs(s - 1.0) < 0.5) {
            value = zeta_taylor_eval(s, stieltjes_constants(kMaxStieltjesOrder, kTaylorStieltjesTerms));
        } else {
            terms = c.terms.value_or(kDefaultZetaTerms);
            value = zeta_em(s, terms).value;
        }
        return make_report("zeta(s): raw = Re, normalized = Im", std::nullopt,
                           {{terms, value.real(), value.imag(), std::nullopt}});
    }
    case Command::stieltjes: {
        const LaurentExpansionAtOne e =
            stieltjes_constants(kMaxStieltjesOrder, c.terms.value_or(kDefaultStieltjesTerms));
        std::vector<Checkpoint> rows;
        for (std::size_t k = 0; k < e.stieltjes().size(); ++k)
            rows.push_back({static_cast<std::int64_t>(k), e.stieltjes()[k], e.stieltjes()[k], std::nullopt});
        return make_report("Stieltjes constants gamma_k", std::nullopt, std::move(rows));
    }
    case Command::verify:
        break;
    }
    throw UsageError("internal: not a table command");
}

TheoremVerdict run_verify(const RunConfig& c, std::int64_t limit)
{
    HarnessOptions opts;
    opts.tolerance = c.tolerance;
    opts.checkpoints = c.checkpoints.resolve(limit);
    const std::int64_t q = c.modulus.value_or(3);
    const std::int64_t a = c.residue.value_or(1);

    switch (*c.experiment) {
    case Experiment::lemma11:
        return verify_lemma11(q, a, limit, opts);
    case Experiment::wintner:
        return verify_wintner(GSpec::reciprocal(), zeta_em(Complex(2.0, 0.0)).value.real(), limit, opts);
    default:
        break;
    }

    std::int64_t sieve_limit = limit;
    const std::int64_t series_terms = c.terms.value_or(kDefaultSeriesTerms);
    if (*c.experiment == Experiment::thm10)
        sieve_limit = std::max(limit, series_terms);
    const SieveTables tables = build_sieve(sieve_limit, {c.allow_large});

    switch (*c.experiment) {
    case Experiment::pnt:
        return verify_pnt(limit, tables, opts);
    case Experiment::psi_mean:
        return verify_psi_mean(limit, tables, opts);
    case Experiment::lemma5:
        return verify_lemma5(limit, tables, opts);
    case Experiment::lemma6:
        return verify_lemma6(limit, tables, opts);
    case Experiment::axer:
        return verify_axer(limit, tables, opts);
    case Experiment::thm9:
        return verify_thm9(limit, tables, opts);
    case Experiment::dirichlet:
        return verify_dirichlet_ap(q, a, limit, tables, opts);
    case Experiment::thm10:
        return verify_thm10_formula(q, a, limit, series_terms, tables, opts);
    default:
        break;
    }
    throw UsageError("internal: unhandled experiment");
}

} // namespace

std::vector<std::int64_t> GridSpec::resolve(std::int64_t limit) const
{
    if (points.empty())
        return geometric_grid(limit, geometric_base);
    for (std::int64_t p : points)
        if (p > limit)
            throw UsageError("--checkpoints: " + std::to_string(p) + " exceeds limit " + std::to_string(limit));
    return points;
}

std::string_view experiment_name(Experiment e)
{
    for (const auto& [name, value] : experiment_table())
        if (value == e)
            return name;
    return "unknown";
}

RunConfig parse_args(std::span<const std::string> args)
{
    CLI::App app{"Numerical experiments for prime-counting and mean-value asymptotics", "ntlab"};
    app.require_subcommand(1);

    RawFlags flags;
    std::string experiment;
    const std::map<std::string, std::pair<Command, std::string>> commands = {
        {"sieve", {Command::sieve, "Count squarefree n <= x from the Moebius table"}},
        {"psi", {Command::psi, "Chebyshev psi(x), optionally restricted to a progression"}},
        {"pi", {Command::pi, "Prime counting pi(x), optionally restricted to a progression"}},
        {"mertens", {Command::mertens, "Mertens function M(x)"}},
        {"zeta", {Command::zeta, "Riemann zeta at --s (Euler-Maclaurin or Laurent near s = 1)"}},
        {"stieltjes", {Command::stieltjes, "Stieltjes constants gamma_0..gamma_4"}},
        {"verify", {Command::verify, "Run one theorem experiment and report pass/fail"}},
    };
    std::vector<std::string> experiment_names;
    for (const auto& [name, e] : experiment_table())
        experiment_names.push_back(name);

    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, entry] : commands) {
        const auto& [cmd, description] = entry;
        CLI::App* sub = app.add_subcommand(name, description);
        add_common_flags(*sub, flags);
        if (cmd == Command::verify)
            sub->add_option("experiment", experiment, "Experiment name")
                ->required()
                ->check(CLI::IsMember(experiment_names));
        subs[name] = sub;
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        RunConfig c;
        c.help = app.help();
        return c;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RunConfig c;
    for (const auto& [name, sub] : subs)
        if (sub->parsed())
            c.command = commands.at(name).first;
    if (c.command == Command::verify)
        c.experiment = experiment_table().at(experiment);

    c.limit = flags.limit;
    c.modulus = flags.modulus;
    c.residue = flags.residue;
    c.terms = flags.terms;
    c.tolerance = flags.tolerance;
    c.output = flags.output;
    c.allow_large = flags.allow_large;
    c.format = flags.format == "tsv" ? OutputFormat::tsv : OutputFormat::csv;
    if (!flags.s.empty())
        c.s = parse_complex(flags.s);
    if (!flags.checkpoints.empty())
        c.checkpoints = parse_grid(flags.checkpoints);

    if (c.limit && *c.limit < 1)
        throw UsageError("--limit must be >= 1");
    if (c.modulus.has_value() != c.residue.has_value())
        throw UsageError("--modulus and --residue must be given together");
    if (c.modulus && *c.modulus < 1)
        throw UsageError("--modulus must be >= 1");
    if (c.residue && (*c.residue < 0 || *c.residue >= *c.modulus))
        throw UsageError("--residue must satisfy 0 <= a < modulus");
    if (c.tolerance && !(*c.tolerance > 0.0))
        throw UsageError("--tolerance must be > 0");
    if (c.terms && *c.terms < 1)
        throw UsageError("--terms must be >= 1");
    return c;
}

std::string render_table(const ConvergenceReport& report, OutputFormat format)
{
    const char sep = format == OutputFormat::tsv ? '\t' : ',';
    std::string out = join_row({"x", "raw", "normalized", "predicted", "deviation"}, sep);
    for (const auto& row : report.checkpoints)
        out += join_row({format_integer(row.x), format_real(row.raw), format_real(row.normalized),
                         optional_real(report.predicted_limit), optional_real(row.deviation)},
                        sep);
    return out;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    if (config.help) {
        out << *config.help;
        return kExitPass;
    }

    std::string table;
    int status = kExitPass;
    try {
        const std::int64_t limit = config.limit.value_or(default_limit(config));
        if (config.command == Command::verify) {
            const TheoremVerdict v = run_verify(config, limit);
            table = render_table(v.report, config.format);
            err << v.experiment_name << ": "
                << (v.advisory() ? "ADVISORY" : (*v.passed ? "PASS" : "FAIL")) << " (" << v.criteria << ")\n";
            for (const auto& [key, value] : v.parameters)
                err << "  " << key << " = " << value << '\n';
            for (const auto& sup : v.supplementary) {
                const auto& last = sup.checkpoints.back();
                err << "  " << sup.description << " at x = " << last.x << ": " << format_real(last.normalized)
                    << '\n';
            }
            if (v.passed.has_value() && !*v.passed)
                status = kExitFailure;
        } else {
            table = render_table(run_table_command(config, limit), config.format);
        }
    } catch (const Error& e) {
        err << "ntlab: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::bad_alloc&) {
        err << "ntlab: out of memory (lower --limit)\n";
        return kExitUsage;
    }

    if (config.output.empty()) {
        out << table;
        out.flush();
        if (!out) {
            err << "ntlab: failed writing to standard output\n";
            return kExitIo;
        }
        return status;
    }
    std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "ntlab: cannot open " << config.output << " for writing\n";
        return kExitIo;
    }
    file << table;
    file.close();
    if (!file) {
        err << "ntlab: failed writing " << config.output << '\n';
        return kExitIo;
    }
    return status;
}

} // namespace ntlab::cli
