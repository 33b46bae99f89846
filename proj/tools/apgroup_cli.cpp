// apgroup: run set-growth computations on JSON matrix sets.
//
//   apgroup gen <family> [family options] [-o out.json]
//   apgroup <command> <input.json>... [options] [-o report.json]
//   apgroup verify <report.json>
//
// Exit codes: 0 ok, 1 verification failed, 2 precondition violated,
// 3 cap exceeded, 4 parse error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "apgroup/commands.hpp"
#include "apgroup/errors.hpp"
#include "apgroup/json_io.hpp"
#include "apgroup/verify.hpp"

namespace {

using apgroup::io::json;
namespace cmd = apgroup::commands;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitCap = 3;
constexpr int kExitParse = 4;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<apgroup::GaussianRational> parse_scalar_list(const std::string& text) {
    std::vector<apgroup::GaussianRational> out;
    for (const auto& s : split_list(text)) out.push_back(apgroup::parse_scalar_literal(s));
    return out;
}

// A scalar-set file is either a JSON array or {"scalars": [...]}.
json read_scalar_file(const std::string& path) {
    json j = apgroup::io::read_file(path);
    if (j.is_object() && j.contains("scalars")) return j.at("scalars");
    return j;
}

void emit(const json& j, const std::string& out_path) {
    const std::string text = apgroup::io::render(j);
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw apgroup::PreconditionError("cannot write " + out_path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact growth, covering and decomposition computations for finite matrix sets"};
    app.require_subcommand(1);

    cmd::RunOptions opts;
    std::string gamma_text = "4";
    std::string format = "json";
    std::string out_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--cap", opts.engine.cap.max_elements, "Element budget for every computed set")
            ->check(CLI::PositiveNumber);
        sub->add_option("--gamma", gamma_text, "Ratio-count exponent (rational), D = tripling^gamma");
        sub->add_option("--nil-cutoff", opts.engine.nil_cutoff, "Nilpotency cutoff (0: the dimension)");
        sub->add_option("--seed", opts.seed, "Seed for randomized generators");
        sub->add_flag("--verify-corner", opts.engine.verify_corner, "Compute the corner-intersection evidence");
        sub->add_option("--corner-power", opts.engine.corner_power, "Power N for the corner probe (0: default)");
        sub->add_option("--corner-cap", opts.engine.corner_cap.max_elements, "Element budget for the corner probe")
            ->check(CLI::PositiveNumber);
        sub->add_option("--chain-budget", opts.engine.chain_budget, "Budget of commutator chains")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json"}));
        sub->add_option("-o,--output", out_path, "Write the report here instead of standard output");
    };

    // gen
    cmd::GenParams gp;
    std::string family, generators_file, lengths_text, pool_text;
    auto* gen = app.add_subcommand("gen", "Generate a test family as a set file");
    gen->add_option("family", family, "Family name")->required()->check(CLI::IsMember(cmd::families_list()));
    gen->add_option("--radius", gp.radius, "Ball radius");
    gen->add_option("--n", gp.n, "Dimension");
    gen->add_option("--base", gp.base, "Progression base (scalar literal)");
    gen->add_option("--length", gp.length, "Progression length L");
    gen->add_option("--order", gp.order, "Torsion order (1, 2 or 4)");
    gen->add_option("--size", gp.size, "Number of random elements");
    gen->add_option("--generators", generators_file, "Set file with the ordered-progression generators (in order)");
    gen->add_option("--lengths", lengths_text, "Comma-separated ordered-progression lengths");
    gen->add_option("--pool", pool_text, "Comma-separated entry pool for random matrices");
    add_common(gen);

    // run commands
    std::vector<std::string> inputs;
    std::string u_text, v_text, w_text;
    for (const auto& name : cmd::run_commands()) {
        auto* sub = app.add_subcommand(name, "Run '" + name + "' and print its report");
        sub->add_option("inputs", inputs, "Input files");
        add_common(sub);
        if (name == "stats" || name == "intersect") sub->add_option("--max-power", opts.max_power, "Largest power");
        if (name == "fibers" || name == "homtripling") {
            sub->add_option("--hom", opts.hom, "Homomorphism")->check(CLI::IsMember({"pi", "pi_prime", "diagonal"}));
        }
        if (name == "intersect") {
            sub->add_option("--subgroup", opts.subgroup, "Subgroup predicate")
                ->check(CLI::IsMember({"corner", "diagonal", "unitriangular", "center", "scalar", "all"}));
        }
        if (name == "ball") sub->add_option("--radius", opts.radius, "Ball radius");
        if (name == "reduce") {
            sub->add_option("--labeler", opts.labeler, "Coset labeler")
                ->check(CLI::IsMember({"is-diagonal", "monomial", "diagonal-entries"}));
        }
        if (name == "sumproduct") {
            sub->add_option("--u", u_text, "Comma-separated scalars for U");
            sub->add_option("--v", v_text, "Comma-separated scalars for V");
            sub->add_option("--w", w_text, "Comma-separated scalars for W");
        }
    }

    std::string report_file;
    auto* ver = app.add_subcommand("verify", "Re-check a report");
    ver->add_option("report", report_file, "Report file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitPrecondition;
    }

    try {
        opts.engine.gamma = apgroup::parse_scalar_literal(gamma_text).re();
        if (!apgroup::parse_scalar_literal(gamma_text).is_real()) throw apgroup::ParseError("gamma must be rational");

        if (ver->parsed()) {
            const json report = apgroup::io::read_file(report_file);
            if (auto failure = apgroup::verify::verify_report(report)) {
                std::cerr << "FAIL: " << *failure << "\n";
                return kExitVerifyFailed;
            }
            std::cout << "PASS\n";
            return 0;
        }

        if (gen->parsed()) {
            if (!generators_file.empty()) {
                const json gj = apgroup::io::read_file(generators_file);
                gp.generators = gj.is_array() ? apgroup::io::matrices_from_json(gj)
                                              : apgroup::io::matrices_from_json(gj.at("elements"));
            }
            for (const auto& l : split_list(lengths_text)) gp.lengths.push_back(std::stoull(l));
            if (!pool_text.empty()) gp.pool = parse_scalar_list(pool_text);
            const apgroup::GroupSet s = cmd::generate(family, gp, opts.seed, opts.engine.cap);
            json params{{"family", family}};
            json out = apgroup::io::set_to_json(s);
            out["manifest"] = json{{"command", "gen"},
                                   {"input_digest", apgroup::io::digest(params)},
                                   {"config", json{{"family", family},
                                                   {"radius", gp.radius},
                                                   {"n", gp.n},
                                                   {"base", gp.base},
                                                   {"length", gp.length},
                                                   {"order", gp.order},
                                                   {"size", gp.size},
                                                   {"lengths", gp.lengths},
                                                   {"pool", pool_text}}},
                                   {"seed", opts.seed}};
            emit(out, out_path);
            return 0;
        }

        for (const auto& name : cmd::run_commands()) {
            if (!app.got_subcommand(name)) continue;
            const auto slots = cmd::input_slots(name);
            json raw = json::object();
            if (name == "sumproduct" && inputs.empty()) {
                raw["U"] = apgroup::io::scalars_to_json(parse_scalar_list(u_text));
                raw["V"] = apgroup::io::scalars_to_json(parse_scalar_list(v_text.empty() ? u_text : v_text));
                raw["W"] = apgroup::io::scalars_to_json(parse_scalar_list(w_text.empty() ? u_text : w_text));
            } else {
                if (inputs.size() != slots.size()) {
                    throw apgroup::PreconditionError("'" + name + "' expects " + std::to_string(slots.size()) +
                                                     " input file(s)");
                }
                for (std::size_t k = 0; k < slots.size(); ++k) {
                    raw[slots[k]] = name == "sumproduct" ? read_scalar_file(inputs[k]) : apgroup::io::read_file(inputs[k]);
                }
            }
            const json canonical = cmd::canonical_inputs(name, raw);
            emit(cmd::run(name, canonical, opts), out_path);
            return 0;
        }
    } catch (const apgroup::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const apgroup::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const apgroup::PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const apgroup::io::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
    return 0;
}
