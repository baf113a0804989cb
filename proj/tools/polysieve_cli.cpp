// Command-line front end. First output line is YES or NO, recovered
// witness arcs follow as 'w <tail> <head>', and the last line reports
// statistics. Exit codes: 0 = yes, 1 = no, 2 = error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "polysieve/oracle.hpp"
#include "polysieve/solvers.hpp"

namespace {

using namespace polysieve;

ArcColoredDigraph load_digraph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_digraph(in);
}

PlanarEmbeddedGraph load_planar(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_planar(in);
}

void print_stats(const SolveStats& s) {
    std::cout << "stats colorings=" << s.colorings << " evals=" << s.evaluator_calls
              << " ms=" << s.elapsed_ms << '\n';
}

int finish_solver(const ArcColoredDigraph* d, const SolveReport& rep) {
    std::cout << (rep.yes ? "YES" : "NO") << '\n';
    if (rep.witness) {
        for (int v = 1; v <= d->n; ++v) {
            int id = rep.witness->parent_arc[v];
            if (id >= 0) std::cout << "w " << d->arcs[id].tail << ' ' << d->arcs[id].head << '\n';
        }
    }
    print_stats(rep.stats);
    return rep.yes ? 0 : 1;
}

struct SolverFlags {
    std::string input;
    long k = 1;
    std::string space = "poly";
    int threads = 1;
    bool recover = false;
    bool exact_k = false;

    SolveConfig config() const {
        SolveConfig cfg;
        cfg.k = k;
        cfg.space_mode = space == "exp" ? SpaceMode::Exp : SpaceMode::Poly;
        cfg.parallelism = threads;
        cfg.recover_witness = recover;
        return cfg;
    }
};

void add_common(CLI::App* cmd, SolverFlags& f, bool planar) {
    cmd->add_option("--input", f.input, planar ? "planar graph file" : "digraph file")->required();
    cmd->add_option("--k", f.k, "target parameter")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--space", f.space, "poly or exp")->check(CLI::IsMember({"poly", "exp"}));
    cmd->add_option("--threads", f.threads, "worker count")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"color-coded polynomial sieves for branchings and planar matchings"};
    app.require_subcommand(1);

    SolverFlags iob, cob, cpm;
    CLI::App* iob_cmd = app.add_subcommand("iob", "k-internal out-branching");
    add_common(iob_cmd, iob, false);
    iob_cmd->add_flag("--recover", iob.recover, "emit a witness out-branching");

    CLI::App* cob_cmd = app.add_subcommand("colorful-ob", "k-colorful out-branching");
    add_common(cob_cmd, cob, false);
    cob_cmd->add_flag("--exact-k", cob.exact_k, "instance uses exactly k colors");

    CLI::App* cpm_cmd = app.add_subcommand("colorful-pm", "planar k-colorful perfect matching");
    add_common(cpm_cmd, cpm, true);

    long sp_n = 0, sp_k = 0, sp_t = 0, sp_limit = 0;
    bool sp_verify = false, sp_enumerate = false;
    CLI::App* sp_cmd = app.add_subcommand("splitter", "build, enumerate or verify a splitter");
    sp_cmd->add_option("--n", sp_n, "universe size")->required()->check(CLI::PositiveNumber);
    sp_cmd->add_option("--k", sp_k, "subset size")->required()->check(CLI::PositiveNumber);
    sp_cmd->add_option("--t", sp_t, "color count (default k: perfect hash family)");
    sp_cmd->add_option("--limit", sp_limit, "stop enumeration after this many vectors");
    sp_cmd->add_flag("--verify", sp_verify, "exhaustively check coverage");
    sp_cmd->add_flag("--enumerate", sp_enumerate, "print family vectors");

    std::string or_input;
    long or_k = 1;
    int or_root = 0;
    CLI::App* or_cmd = app.add_subcommand("oracle", "brute-force ground truth");
    or_cmd->require_subcommand(1);
    CLI::App* or_iob = or_cmd->add_subcommand("iob", "decide k-IOB by enumeration");
    or_iob->add_option("--input", or_input)->required();
    or_iob->add_option("--k", or_k)->required()->check(CLI::PositiveNumber);
    CLI::App* or_count = or_cmd->add_subcommand("ob-count", "count out-branchings at a root");
    or_count->add_option("--input", or_input)->required();
    or_count->add_option("--root", or_root)->required()->check(CLI::PositiveNumber);
    CLI::App* or_pm = or_cmd->add_subcommand("pm-enum", "list all perfect matchings");
    or_pm->add_option("--input", or_input)->required();
    CLI::App* or_maxint = or_cmd->add_subcommand("max-internal", "maximum internal vertex count");
    or_maxint->add_option("--input", or_input)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (iob_cmd->parsed()) {
            ArcColoredDigraph d = load_digraph(iob.input);
            SolveReport rep = solve_kiob(d, iob.config());
            return finish_solver(&d, rep);
        }
        if (cob_cmd->parsed()) {
            ArcColoredDigraph d = load_digraph(cob.input);
            SolveReport rep = cob.exact_k ? solve_colorful_ob_exact(d, cob.config())
                                          : solve_colorful_ob(d, cob.config());
            return finish_solver(&d, rep);
        }
        if (cpm_cmd->parsed()) {
            PlanarEmbeddedGraph g = load_planar(cpm.input);
            SolveReport rep = solve_colorful_pm(g, cpm.config());
            std::cout << (rep.yes ? "YES" : "NO") << '\n';
            print_stats(rep.stats);
            return rep.yes ? 0 : 1;
        }
        if (sp_cmd->parsed()) {
            auto start = std::chrono::steady_clock::now();
            if (sp_t == 0) sp_t = sp_k;
            if (sp_t < sp_k) throw std::invalid_argument("need t >= k");
            SplitterPtr family = sp_t == sp_k ? perfect_hash_family(sp_n, sp_k)
                                              : greedy_splitter_exact(sp_n, sp_k, sp_t);
            int exit_code = 0;
            if (sp_verify) {
                SplitterCheck check = verify_splitter(*family);
                std::cout << (check.covered ? "YES" : "NO") << '\n';
                if (!check.covered) {
                    std::cout << "uncovered";
                    for (long v : check.first_uncovered) std::cout << ' ' << v;
                    std::cout << '\n';
                    exit_code = 1;
                }
            }
            if (sp_enumerate) {
                SplitterEnumerator stream(*family);
                std::vector<int> vec;
                long emitted = 0;
                while ((sp_limit == 0 || emitted < sp_limit) && stream.next(vec)) {
                    std::cout << 'v';
                    for (int c : vec) std::cout << ' ' << c;
                    std::cout << '\n';
                    ++emitted;
                }
            }
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
            std::cout << "stats size=" << family->size() << " ms=" << ms << '\n';
            return exit_code;
        }
        if (or_iob->parsed()) {
            ArcColoredDigraph d = load_digraph(or_input);
            auto best = max_internal(d);
            bool yes = best && *best >= or_k;
            std::cout << (yes ? "YES" : "NO") << '\n';
            return yes ? 0 : 1;
        }
        if (or_count->parsed()) {
            ArcColoredDigraph d = load_digraph(or_input);
            if (or_root < 1 || or_root > d.n) throw std::out_of_range("root out of range");
            std::cout << count_out_branchings(d, or_root) << '\n';
            return 0;
        }
        if (or_pm->parsed()) {
            PlanarEmbeddedGraph g = load_planar(or_input);
            auto matchings = enum_perfect_matchings(g);
            std::cout << matchings.size() << '\n';
            for (const auto& m : matchings) {
                std::cout << 'm';
                for (int e : m) std::cout << ' ' << e + 1;
                std::cout << '\n';
            }
            return 0;
        }
        if (or_maxint->parsed()) {
            ArcColoredDigraph d = load_digraph(or_input);
            auto best = max_internal(d);
            if (!best) {
                std::cout << "no-branching" << '\n';
                return 1;
            }
            std::cout << *best << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
