#pragma once

// Flat output records for minimization results and κ-sweeps, with CSV,
// JSON and plain-text renderings.

#include "meancross/distributions.hpp"
#include "meancross/minimizers.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace meancross {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OutputRecord {
    double kappa = 0.0;
    std::string kind;  // "attained" or "infimum"
    std::optional<double> argmin;
    double value = 0.0;
    std::optional<double> root_x0;
    std::optional<double> residual;

    bool operator==(const OutputRecord&) const = default;
};

[[nodiscard]] OutputRecord to_record(const MinimizationResult& result);

/// 17 significant digits; parses back to the same double.
[[nodiscard]] std::string format_number(double x);
/// Strict full-string parse; throws ParseError.
[[nodiscard]] double parse_number(const std::string& s);

inline constexpr const char* kCsvHeader = "kappa,kind,argmin,value,root_x0,residual";

void write_csv(std::ostream& out, std::span<const OutputRecord> records);
[[nodiscard]] std::vector<OutputRecord> parse_csv(std::istream& in);

void write_json(std::ostream& out, std::span<const OutputRecord> records);
[[nodiscard]] std::vector<OutputRecord> parse_json(std::istream& in);

void write_text(std::ostream& out, std::span<const OutputRecord> records);

enum class SweepScale { Linear, Log };

[[nodiscard]] SweepScale parse_scale(const std::string& name);

struct SweepSpec {
    Family family = Family::Weibull;
    double kappa_min = 1.0;
    double kappa_max = 1.0;
    int steps = 1;
    SweepScale scale = SweepScale::Linear;

    /// Throws DomainError. steps = 0 is accepted only when kappa_min == kappa_max.
    void validate() const;
};

/// steps+1 ascending κ values with both endpoints exact.
[[nodiscard]] std::vector<double> sweep_kappas(const SweepSpec& spec);

[[nodiscard]] std::vector<OutputRecord> run_sweep(const SweepSpec& spec);

}  // namespace meancross
