// qclass: class numbers h(-p) for primes p = 4n - 1 from exact floor sums.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qclass/cli.hpp"

namespace {

qclass::cli::Format format_or_throw(const std::string& s) {
    try {
        return qclass::cli::parse_format(s);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("--format", e.what());
    }
}

qclass::cli::MethodRequest methods_or_throw(const std::string& s) {
    try {
        return qclass::cli::parse_methods(s);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("--method", e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    using namespace qclass::cli;

    CLI::App app{"Class numbers of imaginary quadratic fields Q(sqrt(-p)), p = 4n - 1 prime"};
    app.require_subcommand(1);

    std::string method = "all";
    std::string format = "table";
    bool force_oracle = false;
    qclass::i64 oracle_limit = default_oracle_limit;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--method", method, "Comma-separated: theorem,cases,economic,qr-sum,kronecker,all");
        cmd->add_option("--format", format, "table, csv or json");
        cmd->add_flag("--force-oracle", force_oracle, "Run the Kronecker oracle under --method all for any p");
        cmd->add_option("--oracle-limit", oracle_limit, "Largest p for which --method all includes the Kronecker oracle");
    };

    qclass::i64 p = 0;
    auto* compute = app.add_subcommand("compute", "Class number of one prime by the selected methods");
    compute->add_option("--p", p, "Prime p = 3 (mod 4), p >= 7")->required();
    add_common(compute);

    qclass::i64 lo = 0;
    qclass::i64 hi = 0;
    bool validate = false;
    int jobs = 1;
    auto* scan = app.add_subcommand("scan", "Class numbers of every prime p = 3 (mod 4) in a range");
    scan->add_option("--from", lo, "Lower end (>= 7)")->required();
    scan->add_option("--to", hi, "Upper end")->required();
    scan->add_flag("--validate", validate, "Abort on the first disagreement between methods");
    scan->add_option("--jobs", jobs, "Worker threads");
    add_common(scan);

    qclass::i64 rp = 0;
    std::string rformat = "table";
    auto* residues = app.add_subcommand("residues", "Boundary floors and residue sums for one prime");
    residues->add_option("--p", rp, "Prime p = 3 (mod 4), p >= 7")->required();
    residues->add_option("--format", rformat, "table, csv or json");

    try {
        app.parse(argc, argv);
        if (*compute) {
            ComputeRequest req;
            req.p = p;
            req.methods = methods_or_throw(method);
            req.format = format_or_throw(format);
            req.oracle = {force_oracle, oracle_limit};
            return cmd_compute(req, std::cout, std::cerr);
        }
        if (*scan) {
            ScanRequest req;
            req.lo = lo;
            req.hi = hi;
            req.methods = methods_or_throw(method);
            req.format = format_or_throw(format);
            req.validate = validate;
            req.jobs = jobs;
            req.oracle = {force_oracle, oracle_limit};
            return cmd_scan(req, std::cout, std::cerr);
        }
        return cmd_residues(rp, format_or_throw(rformat), std::cout, std::cerr);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }
}
