#include "gfc/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gfc/errors.hpp"
#include "gfc/lattice.hpp"
#include "gfc/oracle.hpp"
#include "gfc/periods.hpp"
#include "gfc/serialize.hpp"

namespace gfc::cli {
namespace {

double strict_double(std::string_view s, std::string_view whole) {
    const std::string buf(s);
    const char* begin = buf.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (buf.empty() || end != begin + buf.size()) {
        throw DegenerateInput("cannot parse complex number '" + std::string(whole) + "'");
    }
    return v;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

int run_job(const JobConfig& cfg, std::ostream& out) {
    const CurveSpec spec = validate_spec(cfg.k, cfg.n, cfg.lambdas);
    cfg.quad.validate();
    const bool csv = cfg.format == "csv";

    if (cfg.command == "info") {
        const auto doc = io::info_json(spec, cfg.include_powers);
        if (csv) {
            out << "key,value\n";
            out << "k," << spec.k << "\nn," << spec.n << "\ngenus," << genus(spec) << '\n';
            out << "form_count," << doc["form_count"].get<std::size_t>() << '\n';
            out << "conj_comm_count," << doc["conj_comm_count"].get<std::int64_t>() << '\n';
            out << "generator_count," << doc["generator_count"].get<std::int64_t>() << '\n';
            for (const auto& f : enumerate_forms(spec)) out << "form," << to_string(f) << '\n';
        } else {
            io::write_json(out, doc);
        }
        return kOk;
    }
    if (cfg.command == "periods") {
        const PeriodMatrix pm = assemble(spec, cfg.quad, cfg.include_powers);
        if (csv) {
            out << io::period_matrix_csv(pm);
        } else {
            io::write_json(out, io::period_matrix_json(pm));
        }
        return kOk;
    }
    if (cfg.command == "basis") {
        const PeriodMatrix pm = assemble(spec, cfg.quad, cfg.include_powers);
        ExtractOptions options = default_extract_options(spec);
        options.rank_tol = cfg.rank_tol;
        if (cfg.max_denominator > 0) options.denominator_bound = cfg.max_denominator;
        const LatticeBasis lb = extract_basis(real_split(pm), options);
        if (csv) {
            out << io::basis_csv(lb);
        } else {
            io::write_json(out, io::basis_json(spec, lb));
        }
        return kOk;
    }
    if (cfg.command == "verify") {
        const CrosscheckReport report = crosscheck_report(spec, cfg.quad, cfg.sample, cfg.seed);
        if (csv) {
            out << io::report_csv(report);
        } else {
            io::write_json(out, io::report_json(spec, report));
        }
        return report.all_passed() ? kOk : kVerifyFailed;
    }
    throw DegenerateInput("unknown command '" + cfg.command + "'");
}

}  // namespace

Complex parse_complex(std::string_view text) {
    const std::string s = trim(text);
    if (s.empty()) throw DegenerateInput("empty complex number");
    if (const auto comma = s.find(','); comma != std::string::npos) {
        return {strict_double(trim(s.substr(0, comma)), text), strict_double(trim(s.substr(comma + 1)), text)};
    }
    const char last = s.back();
    if (last != 'i' && last != 'j') return {strict_double(s, text), 0.0};

    const std::string body = s.substr(0, s.size() - 1);
    // The real/imaginary split is the last sign that is not an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t p = body.size(); p-- > 1;) {
        if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
            split = p;
            break;
        }
    }
    auto imag_of = [&](const std::string& part) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        return strict_double(part, text);
    };
    if (split == std::string::npos) return {0.0, imag_of(body)};
    return {strict_double(body.substr(0, split), text), imag_of(body.substr(split))};
}

int execute(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.format != "json" && cfg.format != "csv") {
            throw DegenerateInput("format must be json or csv");
        }
        if (cfg.sample < 0) throw DegenerateInput("sample must be non-negative");
        if (cfg.max_denominator < 0) throw DegenerateInput("max-denominator must be non-negative");
        if (!(cfg.rank_tol > 0.0 && cfg.rank_tol < 1.0)) throw DegenerateInput("rank-tol must lie in (0, 1)");
        if (cfg.out.empty() || cfg.out == "-") return run_job(cfg, out);
        std::ostringstream buffer;
        const int code = run_job(cfg, buffer);
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) throw DegenerateInput("cannot open output file '" + cfg.out + "'");
        file << buffer.str();
        return code;
    } catch (const NoConvergence& e) {
        err << "error: " << e.what() << '\n';
        return kNoConvergence;
    } catch (const StepTooCoarse& e) {
        err << "error: " << e.what() << '\n';
        return kNoConvergence;
    } catch (const NotFullRank& e) {
        err << "error: " << e.what() << '\n';
        return kLatticeFailure;
    } catch (const ReconstructionFailed& e) {
        err << "error: " << e.what() << '\n';
        return kLatticeFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Period lattices of generalized Fermat curves", "gfc"};
    app.require_subcommand(1);

    JobConfig cfg;
    std::vector<std::string> lambda_text;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-k", cfg.k, "Degree k >= 2")->required();
        sub->add_option("-n", cfg.n, "Number of coordinates n >= 2")->required();
        sub->add_option("-l,--lambda", lambda_text, "Branch value lambda (a+bi or a,b); repeat n-2 times")
            ->allow_extra_args(false);
        sub->add_option("--tol", cfg.quad.rel_tol, "Relative quadrature tolerance");
        sub->add_option("--level", cfg.quad.level, "Initial tanh-sinh level (2^level nodes)");
        sub->add_option("--max-level", cfg.quad.max_level, "Highest tanh-sinh level");
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out, "Output file (default stdout)");
        sub->add_flag("--include-powers", cfg.include_powers, "Add the power generators a_i^k");
    };

    CLI::App* info = app.add_subcommand("info", "Genus, forms and generator counts");
    CLI::App* periods = app.add_subcommand("periods", "Period matrix of the generating set");
    CLI::App* basis = app.add_subcommand("basis", "Z-basis of the period lattice");
    CLI::App* verify = app.add_subcommand("verify", "Independent cross-checks");
    for (CLI::App* sub : {info, periods, basis, verify}) add_common(sub);
    verify->add_option("--seed", cfg.seed, "Seed for the generator sampler");
    basis->add_option("--max-denominator", cfg.max_denominator, "Denominator bound for coordinate reconstruction");
    basis->add_option("--rank-tol", cfg.rank_tol, "Relative singular-value cutoff for the rank");
    verify->add_option("--sample", cfg.sample, "Number of sampled commutator generators");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }

    for (CLI::App* sub : {info, periods, basis, verify}) {
        if (sub->parsed()) cfg.command = sub->get_name();
    }
    try {
        for (const auto& t : lambda_text) cfg.lambdas.push_back(parse_complex(t));
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }
    return execute(cfg, out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace gfc::cli
