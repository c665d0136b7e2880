// distlap: verification suites, conjecture search and one-off classification.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/config/input error,
// 3 a violation candidate survived re-validation.

#include "distlap/report.hpp"
#include "distlap/rng.hpp"
#include "distlap/search.hpp"
#include "distlap/simd.hpp"
#include "distlap/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

using namespace distlap;
using nlohmann::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCandidate = 3;

struct Options {
    std::string target = "all";
    int n = 0;
    int n_max = 0;
    std::uint64_t seed = 0;
    int trials = 0;
    std::string kind = "conj2";
    std::string trees = "exhaustive:7";
    std::string family = "distance";
    int workers = 1;
    int samples = 1000;
    SearchTolerances tol;
    std::string out;
    std::string format = "json";
    std::string tree_path;
    std::string matrix = "distance";
    std::string eigen = "lambdamax";
};

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw std::invalid_argument("cannot write " + o.out);
    f << text;
}

json suite_json(const SuiteSummary& s) {
    return {{"name", s.name}, {"checked", s.checked}, {"failed", s.failed}, {"worst", s.worst}, {"failures", s.failures}, {"pass", s.ok()}};
}

int run_verify(const Options& o) {
    static const std::vector<std::string> targets{"lemma7", "lemma8", "signs", "thm11", "corollary"};
    if (o.target != "all" && std::find(targets.begin(), targets.end(), o.target) == targets.end()) {
        throw std::invalid_argument("unknown target '" + o.target + "'");
    }
    auto wanted = [&](const std::string& t) { return o.target == "all" || o.target == t; };
    auto bound = [&](int first, int second, int fallback) { return first > 0 ? first : second > 0 ? second : fallback; };
    const auto count = static_cast<std::size_t>(o.trials > 0 ? o.trials : 100);

    std::vector<SuiteSummary> suites;
    if (wanted("lemma7")) {
        SuiteSummary s;
        s.name = "lemma7";
        for (const auto& r : verify_lemma7(static_cast<std::size_t>(bound(o.n_max, o.n, 128)))) {
            ++s.checked;
            if (!r.ok()) {
                ++s.failed;
                s.failures.push_back("n=" + std::to_string(r.n));
            }
        }
        suites.push_back(s);
    }
    if (wanted("lemma8")) suites.push_back(run_lemma8_suite(count, bound(o.n_max, o.n, 40), derive_seed(o.seed, 8)));
    if (wanted("signs")) suites.push_back(run_sign_suite(count, bound(o.n_max, o.n, 30), derive_seed(o.seed, 9)));
    if (wanted("thm11")) suites.push_back(run_thm11_suite(count, bound(o.n_max, o.n, 30), derive_seed(o.seed, 11)));
    if (wanted("corollary")) suites.push_back(run_corollary_suite(2, bound(o.n, o.n_max, 200)));

    bool pass = true;
    for (const auto& s : suites) pass = pass && s.ok();
    if (o.format == "json") {
        json j{{"schema", "distlap.verify/1"}, {"seed", o.seed}, {"pass", pass}, {"suites", json::array()}};
        for (const auto& s : suites) j["suites"].push_back(suite_json(s));
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "suite,checked,failed,worst,pass\n";
        for (const auto& s : suites) os << s.name << ',' << s.checked << ',' << s.failed << ',' << s.worst << ',' << (s.ok() ? 1 : 0) << '\n';
        emit(o, os.str());
    }
    return pass ? 0 : kExitFail;
}

int run_search(const Options& o) {
    SearchConfig cfg;
    const auto kind = parse_conjecture_kind(o.kind);
    if (!kind) throw std::invalid_argument("unknown kind '" + o.kind + "'");
    const auto trees = parse_tree_source(o.trees);
    if (!trees) throw std::invalid_argument("bad tree source '" + o.trees + "' (exhaustive:N or random:N:COUNT)");
    const auto family = parse_matrix_family(o.family);
    if (!family) throw std::invalid_argument("unknown family '" + o.family + "'");
    cfg.kind = *kind;
    cfg.trees = *trees;
    cfg.family = *family;
    cfg.master_seed = o.seed;
    cfg.trials = o.trials > 0 ? o.trials : 1;
    cfg.samples = o.samples;
    cfg.workers = o.workers;
    cfg.tol = o.tol;
    validate(cfg);

    const SearchReport rep = search_conjecture(cfg);
    if (o.format == "json") {
        emit(o, to_json(rep).dump(2) + "\n");
    } else {
        std::ostringstream os;
        write_csv_summary(os, rep);
        emit(o, os.str());
    }
    std::cerr << rep.total() << " instances";
    for (const auto& [status, c] : rep.status_counts) std::cerr << ", " << to_string(status) << ' ' << c;
    std::cerr << " (" << rep.wall_seconds << " s)\n";
    return rep.surviving_candidates() > 0 ? kExitCandidate : 0;
}

int run_classify(const Options& o) {
    std::ifstream tf(o.tree_path);
    if (!tf) throw std::invalid_argument("cannot read tree file '" + o.tree_path + "'");
    const Tree t = read_tree(tf);
    if (t.n() < 2) throw std::invalid_argument("classification needs at least two vertices");
    SymMatrix a = SymMatrix::zeros(1);
    if (o.matrix == "distance") {
        a = distance_matrix(t);
    } else if (o.matrix == "adjacency") {
        a = adjacency_matrix(t);
    } else {
        std::ifstream mf(o.matrix);
        if (!mf) throw std::invalid_argument("cannot read matrix file '" + o.matrix + "'");
        a = read_matrix_csv(mf);
    }
    if (static_cast<int>(a.n()) != t.n()) throw std::invalid_argument("matrix dimension does not match the tree");
    EvaluationOptions opts;
    if (o.eigen == "lambda2") {
        opts.kind = ConjectureKind::Conj1;
    } else if (o.eigen == "lambdamax") {
        opts.kind = ConjectureKind::Conj2;
    } else {
        throw std::invalid_argument("eigen selector must be lambda2 or lambdamax");
    }
    opts.samples = o.samples;
    opts.tol = o.tol;
    const Evaluation ev = evaluate_instance(t, a, opts, derive_seed(o.seed, 2));
    const InstanceResult& r = ev.result;

    if (o.format == "json") {
        json j{{"schema", "distlap.classify/1"},
               {"n", t.n()},
               {"eigen", o.eigen},
               {"eigenvalue", r.eigenvalue},
               {"cluster_size", r.cluster_size},
               {"status", to_string(r.status)},
               {"resolved_by", r.resolved_by},
               {"vector", ev.vector},
               {"classification", ev.classification ? to_json(*ev.classification) : json()}};
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "status,outcome,edge,vertex,eigenvalue,cluster_size\n" << to_string(r.status) << ',';
        if (ev.classification) {
            const auto& c = *ev.classification;
            os << to_string(c.outcome) << ',';
            if (c.characteristic_edge) os << c.characteristic_edge->u << '-' << c.characteristic_edge->v;
            os << ',';
            if (c.characteristic_vertex) os << *c.characteristic_vertex;
        } else {
            os << "-,,";
        }
        os << ',' << r.eigenvalue << ',' << r.cluster_size << '\n';
        emit(o, os.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Laplacians on trees: verification suites and conjecture search"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* c) {
        c->add_option("--seed", o.seed, "Master seed for every randomized step");
        c->add_option("--out", o.out, "Write the report here instead of stdout");
        c->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv-summary"}));
    };
    auto tolerances = [&](CLI::App* c) {
        c->add_option("--zero-tol", o.tol.zero, "Zero threshold, relative to the vector's max norm")->capture_default_str();
        c->add_option("--cluster-tol", o.tol.cluster, "Eigenvalue cluster threshold, relative to max(1, ||A^L||_inf)")
            ->capture_default_str();
        c->add_option("--eig-tol", o.tol.eig, "Jacobi stopping tolerance")->capture_default_str();
        c->add_option("--refine-tol", o.tol.refine, "Residual target for candidate refinement")->capture_default_str();
        c->add_option("--tight-zero-tol", o.tol.tightened_zero, "Zero threshold after refinement")->capture_default_str();
        c->add_option("--samples", o.samples, "Random eigenspace combinations per cluster")->capture_default_str();
    };

    auto* verify = app.add_subcommand("verify", "Run the verification suites");
    verify->add_option("--target", o.target, "lemma7, lemma8, signs, thm11, corollary or all")->capture_default_str();
    verify->add_option("--n", o.n, "Largest path for the corollary suite");
    verify->add_option("--n-max", o.n_max, "Largest matrix size for the other suites");
    verify->add_option("--trials", o.trials, "Random instances per suite (default 100)");
    common(verify);

    auto* search = app.add_subcommand("search", "Search for conjecture violations");
    search->add_option("--kind", o.kind, "conj1 (lambda_2) or conj2 (lambda_n)")->capture_default_str();
    search->add_option("--trees", o.trees, "exhaustive:N or random:N:COUNT")->capture_default_str();
    search->add_option("--family", o.family, "adjacency, distance, transform or repaired")->capture_default_str();
    search->add_option("--trials", o.trials, "Matrices per tree for generated families (default 1)");
    search->add_option("--workers", o.workers, "Worker threads")->capture_default_str();
    common(search);
    tolerances(search);

    auto* classify_cmd = app.add_subcommand("classify", "Classify one eigenvector of A^L on a tree");
    classify_cmd->add_option("--tree", o.tree_path, "Tree file: n, then one 'u v' edge per line")->required();
    classify_cmd->add_option("--matrix", o.matrix, "distance, adjacency or a CSV file")->capture_default_str();
    classify_cmd->add_option("--eigen", o.eigen, "lambda2 or lambdamax")->capture_default_str();
    common(classify_cmd);
    tolerances(classify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (const char* name = std::getenv("DISTLAP_SIMD"); name && !simd::find_kernels(name)) {
        std::cerr << "error: DISTLAP_SIMD=" << name << " is not available\n";
        return kExitUsage;
    }

    try {
        if (*verify) return run_verify(o);
        if (*search) return run_search(o);
        return run_classify(o);
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kExitFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
