#include "meancross/records.hpp"

#include "meancross/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace meancross {

OutputRecord to_record(const MinimizationResult& result) {
    OutputRecord r;
    r.kappa = result.kappa;
    r.value = result.value();
    if (result.attained()) {
        const auto& m = result.minimum();
        r.kind = "attained";
        r.argmin = m.argmin;
        if (m.root) {
            r.root_x0 = m.root->root;
            r.residual = m.root->residual;
        }
    } else {
        r.kind = "infimum";
    }
    return r;
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_number(const std::string& s) {
    if (s.empty()) {
        throw ParseError("empty number");
    }
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE) {
        throw ParseError("invalid number: '" + s + "'");
    }
    return v;
}

namespace {

std::string optional_cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

std::optional<double> parse_optional(const std::string& s) {
    if (s.empty()) {
        return std::nullopt;
    }
    return parse_number(s);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        fields.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

void check_kind(const std::string& kind) {
    if (kind != "attained" && kind != "infimum") {
        throw ParseError("unknown kind: '" + kind + "'");
    }
}

nlohmann::json optional_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> optional_from_json(const nlohmann::json& j, const char* key) {
    const auto& v = j.at(key);
    if (v.is_null()) {
        return std::nullopt;
    }
    return v.get<double>();
}

void text_line(std::ostream& out, const char* label, const std::optional<double>& v) {
    if (v) {
        out << "  " << label << " = " << format_number(*v) << '\n';
    }
}

}  // namespace

void write_csv(std::ostream& out, std::span<const OutputRecord> records) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << format_number(r.kappa) << ',' << r.kind << ',' << optional_cell(r.argmin) << ','
            << format_number(r.value) << ',' << optional_cell(r.root_x0) << ',' << optional_cell(r.residual) << '\n';
    }
}

std::vector<OutputRecord> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("missing CSV header");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != kCsvHeader) {
        throw ParseError("unexpected CSV header: '" + line + "'");
    }
    std::vector<OutputRecord> records;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto f = split_fields(line);
        if (f.size() != 6) {
            throw ParseError("expected 6 fields, got " + std::to_string(f.size()));
        }
        OutputRecord r;
        r.kappa = parse_number(f[0]);
        r.kind = f[1];
        check_kind(r.kind);
        r.argmin = parse_optional(f[2]);
        r.value = parse_number(f[3]);
        r.root_x0 = parse_optional(f[4]);
        r.residual = parse_optional(f[5]);
        records.push_back(std::move(r));
    }
    return records;
}

void write_json(std::ostream& out, std::span<const OutputRecord> records) {
    auto arr = nlohmann::json::array();
    for (const auto& r : records) {
        arr.push_back({{"kappa", r.kappa},
                       {"kind", r.kind},
                       {"argmin", optional_json(r.argmin)},
                       {"value", r.value},
                       {"root_x0", optional_json(r.root_x0)},
                       {"residual", optional_json(r.residual)}});
    }
    out << arr.dump(2) << '\n';
}

std::vector<OutputRecord> parse_json(std::istream& in) {
    nlohmann::json arr;
    try {
        in >> arr;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
    if (!arr.is_array()) {
        throw ParseError("expected a JSON array");
    }
    std::vector<OutputRecord> records;
    try {
        for (const auto& j : arr) {
            OutputRecord r;
            r.kappa = j.at("kappa").get<double>();
            r.kind = j.at("kind").get<std::string>();
            check_kind(r.kind);
            r.argmin = optional_from_json(j, "argmin");
            r.value = j.at("value").get<double>();
            r.root_x0 = optional_from_json(j, "root_x0");
            r.residual = optional_from_json(j, "residual");
            records.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
    return records;
}

void write_text(std::ostream& out, std::span<const OutputRecord> records) {
    for (const auto& r : records) {
        out << "kappa = " << format_number(r.kappa) << " (" << r.kind << ")\n";
        text_line(out, "argmin", r.argmin);
        out << "  value = " << format_number(r.value) << '\n';
        text_line(out, "root_x0", r.root_x0);
        text_line(out, "residual", r.residual);
    }
}

SweepScale parse_scale(const std::string& name) {
    if (name == "linear") {
        return SweepScale::Linear;
    }
    if (name == "log") {
        return SweepScale::Log;
    }
    throw DomainError("unknown scale: '" + name + "' (expected linear or log)");
}

void SweepSpec::validate() const {
    require_positive(kappa_min, "kappa_min");
    require_positive(kappa_max, "kappa_max");
    if (kappa_min > kappa_max) {
        throw DomainError("kappa_min must not exceed kappa_max");
    }
    if (steps < 0 || (steps == 0 && kappa_min != kappa_max)) {
        throw DomainError("steps must be >= 1 unless kappa_min == kappa_max");
    }
    if (family == Family::Binomial) {
        throw DomainError("sweeps are defined for weibull and pareto only");
    }
}

std::vector<double> sweep_kappas(const SweepSpec& spec) {
    spec.validate();
    std::vector<double> ks(static_cast<std::size_t>(spec.steps) + 1);
    const double n = spec.steps;
    for (int i = 0; i <= spec.steps; ++i) {
        const double t = spec.steps == 0 ? 0.0 : i / n;
        ks[static_cast<std::size_t>(i)] = spec.scale == SweepScale::Linear
                                              ? spec.kappa_min + (spec.kappa_max - spec.kappa_min) * t
                                              : spec.kappa_min * std::exp(std::log(spec.kappa_max / spec.kappa_min) * t);
    }
    ks.front() = spec.kappa_min;
    ks.back() = spec.kappa_max;
    for (std::size_t i = 1; i < ks.size(); ++i) {
        ks[i] = std::max(ks[i], ks[i - 1]);
    }
    return ks;
}

std::vector<OutputRecord> run_sweep(const SweepSpec& spec) {
    std::vector<OutputRecord> rows;
    for (double k : sweep_kappas(spec)) {
        rows.push_back(to_record(minimize(spec.family, KappaQuery(k))));
    }
    return rows;
}

}  // namespace meancross
