#include "entconc/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "entconc/report.hpp"

namespace entconc::cli {

namespace {

using report::json;

struct Input {
    std::string text;
    std::string digest;
    DensityMatrix rho = DensityMatrix::maximally_mixed();
};

Input read_state(const std::string& path, std::istream& in) {
    Input input;
    if (path == "-") {
        input.text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw Error(ErrorKind::ParseError, "cannot open state file '" + path + "'");
        input.text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    }
    input.digest = report::digest(input.text);
    input.rho = report::state_from_json(report::parse_text(input.text));
    return input;
}

json header(const std::string& command, const std::vector<std::string>& args) {
    return {{"command", command}, {"args", args}};
}

json spectrum_to_json(const LambdaSpectrum& l) { return json::array({l[0], l[1], l[2], l[3]}); }

json invariants_or_null(const LambdaSpectrum& l) {
    if (l[0] <= kDegenerateLambda) return nullptr;
    return report::invariants_to_json(invariants(l));
}

json analyze(const Input& input) {
    const LambdaSpectrum l = lambda_spectrum(input.rho);
    return {{"input_digest", input.digest},
            {"pauli", report::pauli_to_json(to_pauli(input.rho))},
            {"lambda", spectrum_to_json(l)},
            {"concurrence", concurrence(l)},
            {"eof", eof_from_concurrence(concurrence(l))},
            {"invariants", invariants_or_null(l)},
            {"max_extractable_entanglement", max_extractable_entanglement(input.rho)}};
}

json canonical_form_json(const BellDiagonalForm& form) {
    return {{"r", report::vector_to_json(form.r)},
            {"u_a", report::matrix_to_json(form.u_a)},
            {"u_b", report::matrix_to_json(form.u_b)}};
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError: return kParseError;
        case ErrorKind::NotEntangled: return kNotEntangled;
        case ErrorKind::NoConvergence: return kNoConvergence;
        case ErrorKind::InvalidState:
        case ErrorKind::NotPositive:
        case ErrorKind::BadRank: return kInvalidState;
        default: return kNumericalError;
    }
}

class Emitter {
public:
    Emitter(std::ostream& out, const std::string& path) : out_(out), path_(path) {}

    void emit(const json& j) {
        const std::string text = j.dump(2) + "\n";
        if (path_.empty() || path_ == "-") {
            out_ << text;
            return;
        }
        std::ofstream f(path_, std::ios::binary);
        if (!f) throw Error(ErrorKind::ParseError, "cannot open output file '" + path_ + "'");
        f << text;
    }

private:
    std::ostream& out_;
    std::string path_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-qubit entanglement measures and optimal local-filter concentration", "entconc"};
    app.require_subcommand(1);

    std::string state_path;
    std::string output_path;
    double tol = 1e-12;
    int max_iter = 10000;
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
    int rank = 4;

    auto add_common = [&](CLI::App* sub) { sub->add_option("--output", output_path, "Write the report here (default stdout)"); };
    auto add_state = [&](CLI::App* sub) {
        sub->add_option("state", state_path, "State JSON file, or - for stdin")->required();
    };
    auto add_solver = [&](CLI::App* sub) {
        sub->add_option("--tol", tol, "Bloch-vector tolerance for convergence")->check(CLI::PositiveNumber);
        sub->add_option("--max-iter", max_iter, "Iteration cap for the solver")->check(CLI::NonNegativeNumber);
    };

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "Pauli form, lambda spectrum, concurrence, EOF, invariants");
    add_state(analyze_cmd);
    add_common(analyze_cmd);

    CLI::App* concentrate_cmd = app.add_subcommand("concentrate", "Optimal filters to the maximal-EOF Bell-diagonal state");
    add_state(concentrate_cmd);
    add_solver(concentrate_cmd);
    add_common(concentrate_cmd);

    CLI::App* canonical_cmd = app.add_subcommand("canonical", "Canonical Bell-diagonal form (concentrates first if needed)");
    add_state(canonical_cmd);
    add_solver(canonical_cmd);
    add_common(canonical_cmd);

    CLI::App* random_cmd = app.add_subcommand("random", "Random density matrix of the given rank");
    random_cmd->add_option("--rank", rank, "Rank 1..4")->required();
    random_cmd->add_option("--seed", seed, "Generator seed");
    add_common(random_cmd);

    CLI::App* verify_cmd = app.add_subcommand("verify", "Sampled search for filters beating the maximal EOF");
    add_state(verify_cmd);
    verify_cmd->add_option("--samples", samples, "Random filter pairs in addition to the grid");
    verify_cmd->add_option("--seed", seed, "Sampling seed");
    add_common(verify_cmd);

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
        err << "error: " << e.what() << "\n";
        return kParseError;
    }

    Emitter emitter(out, output_path);
    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (command == "random") {
            json j = header(command, args);
            j["rank"] = rank;
            j["seed"] = seed;
            j.update(report::state_to_json(random_state(rank, seed)));
            emitter.emit(j);
            return kOk;
        }

        const Input input = read_state(state_path, in);
        json j = header(command, args);

        if (command == "analyze") {
            j.update(analyze(input));
            emitter.emit(j);
            return kOk;
        }

        if (command == "concentrate") {
            j["input_digest"] = input.digest;
            try {
                const ConcentrationResult r = concentrate(input.rho, tol, max_iter);
                j.update(report::concentration_to_json(r));
                j["converged"] = true;
                emitter.emit(j);
                return kOk;
            } catch (const NoConvergence& e) {
                j.update(report::concentration_to_json(e.best()));
                j["converged"] = false;
                emitter.emit(j);
                err << "error: " << e.what() << "\n";
                return kNoConvergence;
            }
        }

        if (command == "canonical") {
            j["input_digest"] = input.digest;
            const PauliForm p = to_pauli(input.rho);
            DensityMatrix bell = input.rho;
            if (std::max(p.alpha.norm(), p.beta.norm()) > 1e-10) {
                const ConcentrationResult r = concentrate(input.rho, tol, max_iter);
                j["concentration"] = report::concentration_to_json(r);
                bell = r.output;
            }
            j.update(canonical_form_json(canonicalize_bell(bell)));
            const LambdaSpectrum l = lambda_spectrum(input.rho);
            j["invariants"] = invariants_or_null(l);
            if (concurrence(l) > kEntanglementFloor)
                j["r_from_invariants"] = report::vector_to_json(r_from_invariants(invariants(l)));
            emitter.emit(j);
            return kOk;
        }

        // verify
        const double bound = max_extractable_entanglement(input.rho);
        const SearchReport rep = search_max_eof(input.rho, samples, seed, bound);
        j["input_digest"] = input.digest;
        j["samples_requested"] = samples;
        j["seed"] = seed;
        j["eof"] = eof(input.rho);
        j["eof_max"] = bound;
        j.update(report::search_report_to_json(rep));
        j["passed"] = rep.passed();
        emitter.emit(j);
        if (!rep.passed()) {
            err << "error: " << rep.violations.size() << " sampled filter pairs exceed the maximal EOF\n";
            return kViolations;
        }
        return kOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kNumericalError;
    }
}

}  // namespace entconc::cli
