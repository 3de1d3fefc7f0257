#pragma once

// Command implementations behind the qclass executable. Each command writes
// data to `out`, diagnostics to `err`, and returns the process exit code:
// 0 success, 1 usage or input error, 2 mathematical disagreement.

#include <atomic>
#include <exception>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "qclass/classnum.hpp"
#include "qclass/qres.hpp"
#include "qclass/sieve.hpp"

namespace qclass::cli {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_disagreement = 2 };

enum class Format { table, csv, json };

inline constexpr i64 default_oracle_limit = 1'000'000;

/// Parsed --method list. `all` expands to every method; whether the
/// Kronecker oracle then runs depends on the size of p.
struct MethodRequest {
    MethodSet methods;
    bool all = false;
};

inline MethodRequest parse_methods(std::string_view tags) {
    MethodRequest req;
    std::size_t pos = 0;
    while (pos <= tags.size()) {
        std::size_t comma = tags.find(',', pos);
        if (comma == std::string_view::npos) comma = tags.size();
        std::string_view tag = tags.substr(pos, comma - pos);
        pos = comma + 1;
        if (tag == "all") {
            req.all = true;
            req.methods = MethodSet::all();
            continue;
        }
        bool matched = false;
        for (Method m : all_methods) {
            if (tag == to_string(m)) {
                req.methods.insert(m);
                matched = true;
            }
        }
        if (!matched) throw std::invalid_argument("unknown method '" + std::string(tag) + "'");
    }
    if (req.methods.empty()) throw std::invalid_argument("no methods requested");
    return req;
}

inline Format parse_format(std::string_view s) {
    if (s == "table") return Format::table;
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw std::invalid_argument("unknown format '" + std::string(s) + "'");
}

struct OracleOptions {
    bool force = false;
    i64 limit = default_oracle_limit;
};

/// Methods actually run for p: `all` skips the O(p) Kronecker oracle above
/// the limit unless forced. An explicit `kronecker` tag always runs.
inline MethodSet effective_methods(const MethodRequest& req, i64 p, const OracleOptions& oracle) {
    MethodSet set = req.methods;
    if (req.all && !oracle.force && p > oracle.limit) set.erase(Method::kronecker);
    return set;
}

using Evaluator = std::function<ClassNumberReport(const PrimeContext&, MethodSet)>;

inline ClassNumberReport default_evaluator(const PrimeContext& ctx, MethodSet methods) {
    return validate(ctx, methods);
}

// ---------------------------------------------------------------------------
// Record rendering
// ---------------------------------------------------------------------------

inline constexpr std::string_view csv_header = "p,n,M,case,h_theorem,h_cases,h_economic,h_qr_sum,h_kronecker,agree";

inline std::string json_key(Method m) {
    switch (m) {
    case Method::theorem: return "h_theorem";
    case Method::cases: return "h_cases";
    case Method::economic: return "h_economic";
    case Method::qr_sum: return "h_qr_sum";
    case Method::kronecker: return "h_kronecker";
    }
    return "?";
}

inline std::string csv_row(const ClassNumberReport& r) {
    std::ostringstream os;
    os << r.ctx.p << ',' << r.ctx.n << ',' << r.ctx.m_max << ',' << to_string(r.ctx.residue_class);
    for (Method m : all_methods) {
        os << ',';
        if (auto v = r.value(m)) os << *v;
    }
    os << ',' << (r.all_agree ? "true" : "false");
    return os.str();
}

inline nlohmann::ordered_json to_json(const ClassNumberReport& r) {
    nlohmann::ordered_json j;
    j["p"] = r.ctx.p;
    j["n"] = r.ctx.n;
    j["M"] = r.ctx.m_max;
    j["case"] = std::string(to_string(r.ctx.residue_class));
    for (Method m : all_methods) {
        if (auto v = r.value(m)) j[json_key(m)] = *v;
        else j[json_key(m)] = nullptr;
    }
    j["agree"] = r.all_agree;
    return j;
}

inline void table_header(std::ostream& out) {
    out << std::left << std::setw(12) << "p" << std::setw(10) << "n" << std::setw(8) << "M" << std::setw(8)
        << "case";
    for (Method m : all_methods) out << std::setw(11) << to_string(m);
    out << "agree\n";
}

inline void table_row(std::ostream& out, const ClassNumberReport& r) {
    out << std::left << std::setw(12) << r.ctx.p << std::setw(10) << r.ctx.n << std::setw(8) << r.ctx.m_max
        << std::setw(8) << to_string(r.ctx.residue_class);
    for (Method m : all_methods) {
        auto v = r.value(m);
        out << std::setw(11) << (v ? std::to_string(*v) : std::string("-"));
    }
    out << (r.all_agree ? "yes" : "NO") << '\n';
}

inline std::string describe_disagreement(const ClassNumberReport& r) {
    std::ostringstream os;
    os << "disagreement at p = " << r.ctx.p << ":";
    for (Method m : all_methods)
        if (auto v = r.value(m)) os << ' ' << to_string(m) << '=' << *v;
    return os.str();
}

// ---------------------------------------------------------------------------
// compute
// ---------------------------------------------------------------------------

struct ComputeRequest {
    i64 p = 0;
    MethodRequest methods{MethodSet::all(), true};
    Format format = Format::table;
    OracleOptions oracle;
};

inline int cmd_compute(const ComputeRequest& req, std::ostream& out, std::ostream& err,
                       const Evaluator& eval = default_evaluator) {
    PrimeContext ctx;
    try {
        ctx = make_context(req.p);
    } catch (const InvalidPrime& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    ClassNumberReport report;
    try {
        report = eval(ctx, effective_methods(req.methods, req.p, req.oracle));
    } catch (const std::exception& e) {
        err << "error: p = " << req.p << ": " << e.what() << '\n';
        return exit_disagreement;
    }

    switch (req.format) {
    case Format::table: {
        table_header(out);
        table_row(out, report);
        out << "elapsed_us:";
        for (Method m : all_methods)
            if (auto t = report.elapsed_us[index_of(m)]) out << ' ' << to_string(m) << '=' << *t;
        out << '\n';
        if (report.value(Method::kronecker)) out << "kronecker_symbol: " << to_string(report.convention) << '\n';
        break;
    }
    case Format::csv:
        out << csv_header << '\n' << csv_row(report) << '\n';
        break;
    case Format::json: {
        auto j = to_json(report);
        nlohmann::ordered_json timing;
        for (Method m : all_methods)
            if (auto t = report.elapsed_us[index_of(m)]) timing[std::string(to_string(m))] = *t;
        j["elapsed_us"] = timing;
        if (report.value(Method::kronecker)) j["kronecker_symbol"] = std::string(to_string(report.convention));
        out << j.dump() << '\n';
        break;
    }
    }

    if (!report.all_agree) {
        err << describe_disagreement(report) << '\n';
        return exit_disagreement;
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

struct ScanRequest {
    i64 lo = 7;
    i64 hi = 7;
    MethodRequest methods{MethodSet::all(), true};
    Format format = Format::table;
    bool validate = false;
    int jobs = 1;
    OracleOptions oracle;
};

namespace detail {

struct ScanItem {
    i64 p = 0;
    std::optional<ClassNumberReport> report;
    std::string error;
};

inline void evaluate_batch(std::vector<ScanItem>& batch, const ScanRequest& req, const Evaluator& eval) {
    auto work = [&](std::size_t i) {
        auto& item = batch[i];
        try {
            PrimeContext ctx = make_context(item.p);
            item.report = eval(ctx, effective_methods(req.methods, item.p, req.oracle));
        } catch (const std::exception& e) {
            item.error = e.what();
        }
    };
    const auto workers = static_cast<std::size_t>(std::max(1, req.jobs));
    if (workers == 1 || batch.size() < 2) {
        for (std::size_t i = 0; i < batch.size(); ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < batch.size(); i = next.fetch_add(1)) work(i);
        });
    }
}

} // namespace detail

inline int cmd_scan(const ScanRequest& req, std::ostream& out, std::ostream& err,
                    const Evaluator& eval = default_evaluator) {
    if (req.lo < 7 || req.lo > req.hi) {
        err << "error: invalid range [" << req.lo << ", " << req.hi << "] (need 7 <= from <= to)\n";
        return exit_usage;
    }
    if (req.methods.methods.empty()) {
        err << "error: no methods requested\n";
        return exit_usage;
    }
    if (req.jobs < 1) {
        err << "error: --jobs must be positive\n";
        return exit_usage;
    }

    if (req.format == Format::table) table_header(out);
    else if (req.format == Format::csv) out << csv_header << '\n';

    int status = exit_ok;
    bool aborted = false;
    std::vector<detail::ScanItem> batch;
    const std::size_t batch_size = 256 * static_cast<std::size_t>(req.jobs);

    // Emits the finished batch in ascending p. Returns false when the stream
    // must stop.
    auto flush = [&]() -> bool {
        detail::evaluate_batch(batch, req, eval);
        for (const auto& item : batch) {
            if (!item.report) {
                err << "error: p = " << item.p << ": " << item.error << '\n';
                status = exit_disagreement;
                if (req.validate) return false;
                continue;
            }
            const auto& r = *item.report;
            if (!r.all_agree) {
                status = exit_disagreement;
                if (req.validate) {
                    err << describe_disagreement(r) << '\n';
                    return false;
                }
            }
            switch (req.format) {
            case Format::table: table_row(out, r); break;
            case Format::csv: out << csv_row(r) << '\n'; break;
            case Format::json: out << to_json(r).dump() << '\n'; break;
            }
        }
        batch.clear();
        return true;
    };

    for_each_prime(req.lo, req.hi, [&](i64 p) -> bool {
        if (p % 4 != 3) return true;
        batch.push_back({p, std::nullopt, {}});
        if (batch.size() < batch_size) return true;
        if (!flush()) {
            aborted = true;
            return false;
        }
        return true;
    });
    if (!aborted && !batch.empty()) flush();
    out.flush();
    return status;
}

// ---------------------------------------------------------------------------
// residues
// ---------------------------------------------------------------------------

inline int cmd_residues(i64 p, Format format, std::ostream& out, std::ostream& err) {
    PrimeContext ctx;
    try {
        ctx = make_context(p);
    } catch (const InvalidPrime& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    const auto seq = boundary_sequence(ctx);
    const auto brute = sum_qr_bruteforce(p);
    const auto closed = sum_qr_closed_form(seq);
    const auto floors = sum_qr_floor_sums(seq);
    const bool agree = brute.total == closed.total && brute.total == floors.total;
    const bool special = ctx.n == 11;
    const std::size_t rows = seq.rm_floors.size();

    switch (format) {
    case Format::table:
        out << "p = " << ctx.p << ", n = " << ctx.n << ", M = " << ctx.m_max << ", case " << to_string(ctx.residue_class)
            << " (k = " << ctx.class_k << ")\n";
        out << "n^2 mod p = " << ctx.n_sq_residue;
        if (special) out << " (= 4n-9: the n = 11 exception to r <= 4n-10)";
        out << '\n';
        out << std::left << std::setw(8) << "m" << std::setw(14) << "floor(R_m)" << "floor(Q_m)\n";
        for (std::size_t m = 0; m < rows; ++m) {
            out << std::left << std::setw(8) << m << std::setw(14) << seq.rm_floors[m]
                << (m < seq.qm_floors.size() ? std::to_string(seq.qm_floors[m]) : std::string("-")) << '\n';
        }
        out << "sum of k^2 mod p: " << to_string(brute.method) << '=' << to_string(brute.total) << ' '
            << to_string(closed.method) << '=' << to_string(closed.total) << ' ' << to_string(floors.method) << '='
            << to_string(floors.total) << '\n';
        break;
    case Format::csv:
        out << "m,floor_R,floor_Q\n";
        for (std::size_t m = 0; m < rows; ++m) {
            out << m << ',' << seq.rm_floors[m] << ',';
            if (m < seq.qm_floors.size()) out << seq.qm_floors[m];
            out << '\n';
        }
        break;
    case Format::json: {
        nlohmann::ordered_json j;
        j["p"] = ctx.p;
        j["n"] = ctx.n;
        j["M"] = ctx.m_max;
        j["case"] = std::string(to_string(ctx.residue_class));
        j["k"] = ctx.class_k;
        j["n_sq_residue"] = ctx.n_sq_residue;
        j["n_eq_11_exception"] = special;
        j["floor_R"] = seq.rm_floors;
        j["floor_Q"] = seq.qm_floors;
        // Sums stay below p^2 / 2, so they fit 64 bits for p < 4e9.
        j["sum"] = {{std::string(to_string(brute.method)), narrow(brute.total)},
                    {std::string(to_string(closed.method)), narrow(closed.total)},
                    {std::string(to_string(floors.method)), narrow(floors.total)}};
        j["agree"] = agree;
        out << j.dump() << '\n';
        break;
    }
    }
    if (!agree) {
        err << "residue sums disagree at p = " << p << '\n';
        return exit_disagreement;
    }
    return exit_ok;
}

} // namespace qclass::cli
