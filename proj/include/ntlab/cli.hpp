#pragma once

#include "ntlab/summatory.hpp"
#include "ntlab/zeta.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ntlab::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

enum class Command { sieve, psi, pi, mertens, zeta, stieltjes, verify };
enum class Experiment { pnt, psi_mean, lemma5, lemma6, lemma11, wintner, axer, thm9, dirichlet, thm10 };
enum class OutputFormat { csv, tsv };

/// "geometric:B" (powers of B from 10^3, plus the limit) or an explicit list.
struct GridSpec {
    std::int64_t geometric_base = 10;
    std::vector<std::int64_t> points; // non-empty overrides the geometric grid

    [[nodiscard]] std::vector<std::int64_t> resolve(std::int64_t limit) const;
};

struct RunConfig {
    Command command = Command::verify;
    std::optional<Experiment> experiment;
    std::optional<std::int64_t> limit;
    std::optional<std::int64_t> modulus;
    std::optional<std::int64_t> residue;
    std::optional<Complex> s;
    std::optional<std::int64_t> terms;
    std::optional<double> tolerance;
    GridSpec checkpoints;
    OutputFormat format = OutputFormat::csv;
    std::string output; // empty: standard output
    bool allow_large = false;
    std::optional<std::string> help; // set when --help was requested
};

/// Arguments exclude the program name. Throws UsageError with a one-line reason.
RunConfig parse_args(std::span<const std::string> args);

/// Executes the config, writing the table to config.output (or `out`) and
/// diagnostics to `err`. Returns one of the kExit* codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Table rendering shared by every command.
std::string render_table(const ConvergenceReport& report, OutputFormat format);

std::string_view experiment_name(Experiment e);

} // namespace ntlab::cli
