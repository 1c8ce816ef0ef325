#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gts/dot.hpp"
#include "gts/fuzz.hpp"
#include "gts/reference.hpp"
#include "gts/serialize.hpp"
#include "gts/tt.hpp"
#include "gts/witness.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnknown = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw gts::ParseError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw gts::ParseError("cannot write file: " + path);
    out << content;
}

std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

struct EvalArgs {
    std::string tree_path;
    std::string alg = "negamax";
    std::optional<int> alpha, beta, depth;
    std::string table_path;
    std::string out_path;
};

int run_eval(const EvalArgs& a) {
    gts::NodePtr tree = gts::parse(read_file(a.tree_path));
    const int depth = a.depth.value_or(gts::height(tree));
    gts::Window w = gts::full_window();
    if (a.alpha) w.alpha = *a.alpha;
    if (a.beta) w.beta = *a.beta;

    if (a.alg == "minimax") {
        std::cout << gts::minimax_depth(tree, depth) << "\n";
        return kExitOk;
    }
    if (a.alg == "negamax") {
        std::cout << gts::negamax_depth(tree, depth) << "\n";
        return kExitOk;
    }
    gts::AlgorithmId alg = gts::algorithm_from_string(a.alg);
    if (!alg.uses_table()) {
        const int v = alg.kind == gts::AlgorithmId::Kind::Failsoft
                          ? gts::alphabeta_failsoft(tree, w, depth)
                          : gts::alphabeta_failhard(tree, w, depth);
        std::cout << v << "\n";
        return kExitOk;
    }
    gts::TranspositionTable T;
    if (!a.table_path.empty()) T = gts::table_from_json(nlohmann::json::parse(read_file(a.table_path)));
    gts::SearchResult r;
    switch (alg.kind) {
        case gts::AlgorithmId::Kind::Ttw: r = gts::negamax_ttw(tree, w, depth, std::move(T)); break;
        case gts::AlgorithmId::Kind::Ttm: r = gts::negamax_ttm(tree, w, depth, std::move(T)); break;
        default: r = gts::negamax_ttw_hybrid(tree, w, depth, std::move(T), alg.opts); break;
    }
    std::cout << r.value << "\n";
    if (!a.out_path.empty()) write_file(a.out_path, gts::table_to_json(r.table).dump(2) + "\n");
    return kExitOk;
}

int verdict_exit(gts::WitnessReport::Verdict v) {
    switch (v) {
        case gts::WitnessReport::Verdict::Satisfied: return kExitOk;
        case gts::WitnessReport::Verdict::Refuted: return kExitViolation;
        case gts::WitnessReport::Verdict::Unknown: return kExitUnknown;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"game tree search algorithms with a witness-based checker"};
    app.require_subcommand(1);

    // eval
    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "evaluate a tree with a chosen algorithm");
    eval->add_option("tree", eval_args.tree_path, "tree file")->required();
    eval->add_option("--alg", eval_args.alg,
                     "minimax | negamax | failsoft | failhard | ttw | ttm | hybrid:<bits>");
    eval->add_option("--alpha", eval_args.alpha, "window lower bound");
    eval->add_option("--beta", eval_args.beta, "window upper bound");
    eval->add_option("--depth", eval_args.depth, "search depth (default: tree height)");
    eval->add_option("--table", eval_args.table_path, "initial table snapshot");
    eval->add_option("--out", eval_args.out_path, "write resulting table snapshot here");

    // check
    std::string check_tree;
    int check_value = 0, check_alpha = 0, check_beta = 0, check_depth = 0;
    std::uint64_t guard = gts::kDefaultGuard;
    auto* check = app.add_subcommand("check", "decide the witness criterion for a value");
    check->add_option("tree", check_tree)->required();
    check->add_option("value", check_value)->required();
    check->add_option("--alpha", check_alpha)->required();
    check->add_option("--beta", check_beta)->required();
    check->add_option("--depth", check_depth)->required();
    check->add_option("--guard", guard, "expansion enumeration budget");

    // check-table
    std::string table_path;
    auto* check_table = app.add_subcommand("check-table", "validate every table entry");
    check_table->add_option("table", table_path)->required();
    check_table->add_option("--guard", guard);

    // fuzz
    std::string fuzz_alg = "ttw";
    std::uint64_t trials = 1000, seed = 1;
    double dup_prob = 0.0;
    int max_depth = 4;
    std::string branching = "1:3", eval_range = "-100:100";
    std::string corpus_dir;
    auto* fuzz_cmd = app.add_subcommand("fuzz", "differential fuzzing against the witness checker");
    fuzz_cmd->add_option("--alg", fuzz_alg);
    fuzz_cmd->add_option("--trials", trials);
    fuzz_cmd->add_option("--seed", seed);
    fuzz_cmd->add_option("--dup-prob", dup_prob, "probability of duplicating a subtree per slot");
    fuzz_cmd->add_option("--max-depth", max_depth);
    fuzz_cmd->add_option("--branching", branching, "min:max children per internal node");
    fuzz_cmd->add_option("--eval-range", eval_range, "lo:hi leaf evaluations");
    fuzz_cmd->add_option("--guard", guard);
    fuzz_cmd->add_option("--out", corpus_dir, "violation corpus directory");

    // shrink
    std::string violation_path, shrink_out;
    auto* shrink_cmd = app.add_subcommand("shrink", "minimize a recorded violation");
    shrink_cmd->add_option("violation", violation_path)->required();
    shrink_cmd->add_option("--guard", guard);
    shrink_cmd->add_option("--out", shrink_out);

    // expansions
    std::string exp_tree;
    int exp_depth = 0;
    auto* expansions = app.add_subcommand("expansions", "negamax values over all-or-none expansions");
    expansions->add_option("tree", exp_tree)->required();
    expansions->add_option("--depth", exp_depth)->required();
    expansions->add_option("--guard", guard);

    // dot
    std::string dot_path, dot_out;
    std::optional<int> dot_depth;
    auto* dot = app.add_subcommand("dot", "render a tree or violation as Graphviz DOT");
    dot->add_option("input", dot_path, "tree file or violation file")->required();
    dot->add_option("--depth", dot_depth, "horizon depth to mark");
    dot->add_option("--out", dot_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*eval) return run_eval(eval_args);

        if (*check) {
            gts::NodePtr tree = gts::parse(read_file(check_tree));
            gts::Window w{check_alpha, check_beta};
            gts::require_strict(w);
            auto report = gts::check_negamax_tt_result(check_value, tree, w, check_depth, guard);
            std::cout << gts::to_string(report.verdict());
            if (report.satisfied) std::cout << " " << gts::serialize(*report.witness);
            std::cout << "\n";
            return verdict_exit(report.verdict());
        }

        if (*check_table) {
            auto T = gts::table_from_json(nlohmann::json::parse(read_file(table_path)));
            auto reports = gts::check_valid_table(T, guard);
            bool any_refuted = false, any_unknown = false;
            for (const auto& [key, r] : reports) {
                std::cout << gts::to_string(r.verdict()) << " " << gts::serialize(key) << "\n";
                any_refuted |= r.verdict() == gts::WitnessReport::Verdict::Refuted;
                any_unknown |= r.verdict() == gts::WitnessReport::Verdict::Unknown;
            }
            if (any_refuted) return kExitViolation;
            return any_unknown ? kExitUnknown : kExitOk;
        }

        if (*fuzz_cmd) {
            gts::AlgorithmId alg = gts::algorithm_from_string(fuzz_alg);
            gts::GeneratorConfig cfg;
            cfg.max_depth = max_depth;
            cfg.duplicate_probability = dup_prob;
            cfg.seed = seed;
            if (sscanf(branching.c_str(), "%d:%d", &cfg.branching_min, &cfg.branching_max) != 2) {
                throw gts::ParseError("--branching expects min:max");
            }
            if (sscanf(eval_range.c_str(), "%d:%d", &cfg.eval_lo, &cfg.eval_hi) != 2) {
                throw gts::ParseError("--eval-range expects lo:hi");
            }

            if (!corpus_dir.empty()) {
                fs::create_directories(corpus_dir);
                // Regression pass over the saved corpus, reported on stderr so
                // the stdout summary stays a pure function of the flags.
                std::vector<fs::path> files;
                for (const auto& e : fs::directory_iterator(corpus_dir)) {
                    if (e.path().extension() == ".json") files.push_back(e.path());
                }
                std::sort(files.begin(), files.end());
                for (const auto& f : files) {
                    auto v = gts::violation_from_json(nlohmann::json::parse(read_file(f.string())));
                    if (!(v.algorithm == alg)) continue;
                    auto r = gts::run_schedule(v.tree, v.schedule, v.algorithm, guard);
                    std::cerr << "corpus " << f.filename().string() << ": "
                              << (r.violation ? "still violating" : "no longer violating") << "\n";
                }
            }

            gts::FuzzResult result = gts::fuzz(alg, cfg, trials, guard);
            for (const auto& v : result.violations) {
                const std::string text = gts::violation_to_json(v).dump(2) + "\n";
                if (!corpus_dir.empty()) {
                    write_file((fs::path(corpus_dir) / ("violation-" + fnv1a_hex(text) + ".json")).string(),
                               text);
                }
            }
            std::cout << "algorithm: " << gts::to_string(alg) << "\n"
                      << "trials: " << result.trials << "\n"
                      << "violations: " << result.violations.size() << "\n"
                      << "unknown_checks: " << result.unknown_checks << "\n"
                      << "trials_with_unknown: " << result.trials_with_unknown << "\n";
            return result.violations.empty() ? kExitOk : kExitViolation;
        }

        if (*shrink_cmd) {
            auto v = gts::violation_from_json(nlohmann::json::parse(read_file(violation_path)));
            auto r = gts::run_schedule(v.tree, v.schedule, v.algorithm, guard);
            if (!r.violation) throw gts::ContractError("violation does not reproduce");
            gts::Violation shrunk = gts::shrink(*r.violation, guard);
            const std::string text = gts::violation_to_json(shrunk).dump(2) + "\n";
            std::cout << text;
            if (!shrink_out.empty()) write_file(shrink_out, text);
            return kExitOk;
        }

        if (*expansions) {
            gts::NodePtr tree = gts::parse(read_file(exp_tree));
            auto r = gts::witness_value_set(tree, exp_depth, guard);
            std::cout << "{";
            bool first = true;
            for (int v : r.values) {
                if (!first) std::cout << ", ";
                std::cout << v;
                first = false;
            }
            std::cout << "}\n";
            if (!r.exhausted) {
                std::cerr << "guard exceeded after " << r.expansions_examined << " expansions\n";
                return kExitUnknown;
            }
            return kExitOk;
        }

        if (*dot) {
            const std::string text = read_file(dot_path);
            nlohmann::json j = nlohmann::json::parse(text);
            gts::NodePtr tree;
            std::optional<int> horizon = dot_depth;
            if (j.is_object() && j.contains("schedule")) {
                gts::Violation v = gts::violation_from_json(j);
                tree = v.tree;
                if (!horizon) {
                    int d = 0;
                    for (const auto& c : v.schedule) d = std::max(d, c.depth);
                    horizon = d;
                }
            } else {
                tree = gts::node_from_json(j);
            }
            const std::string out = gts::to_dot(tree, horizon);
            if (!dot_out.empty()) write_file(dot_out, out);
            else std::cout << out;
            return kExitOk;
        }
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const gts::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const gts::ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const gts::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
