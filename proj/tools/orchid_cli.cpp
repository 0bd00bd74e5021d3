#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <thread>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "orchid/analysis.hpp"
#include "orchid/curvature.hpp"
#include "orchid/generators.hpp"
#include "orchid/hypergraph.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "orchid-cli 1.0.0";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw orchid::SpecError("cannot read input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content << "\n";
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw orchid::SpecError("cannot write output file: " + path);
    out << content << "\n";
}

uint64_t fnv1a(const std::string& data) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string format_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct ManifestBuilder {
    std::string command;
    json config_grid = json::object();
    std::optional<uint64_t> seed;
    json input_digests = json::object();
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void add_input(const std::string& path, const std::string& content) {
        input_digests[path] = hex64(fnv1a(content));
    }
    json build() const {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        json m;
        m["command"] = command;
        m["version"] = kVersion;
        m["config_grid"] = config_grid;
        m["seed"] = seed ? json(*seed) : json(nullptr);
        m["inputs"] = input_digests;
        m["elapsed_ms"] = ms;
        return m;
    }
};

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
    std::vector<int> out;
    for (const auto& tok : split(s, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw orchid::SpecError("invalid integer in " + what + ": '" + tok + "'");
        }
    }
    if (out.empty()) throw orchid::SpecError(what + " must be a nonempty comma-separated list");
    return out;
}

std::vector<double> parse_alpha_values(double alpha, const std::string& grid) {
    if (grid.empty()) return {alpha};
    auto parts = split(grid, ':');
    if (parts.size() != 3)
        throw orchid::SpecError("alpha grid must have the form start:stop:step");
    double start = std::stod(parts[0]), stop = std::stod(parts[1]), step = std::stod(parts[2]);
    if (step <= 0) throw orchid::SpecError("alpha grid step must be positive");
    std::vector<double> out;
    for (double a = start; a <= stop + 1e-12; a += step) out.push_back(std::min(a, 1.0));
    return out;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ORCHID_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// ---------------------------------------------------------------- curvature

struct CurvatureArgs {
    std::vector<std::string> inputs;
    std::string measures = "we";
    std::string aggs = "mean";
    double alpha = 0.0;
    std::string alpha_grid;
    std::string types = "all";
    int threads = 0;
    bool strict_degree_denominator = false;
    std::string out;
};

int run_curvature(const CurvatureArgs& args, const std::string& command) {
    auto measure_names = split(args.measures, ',');
    auto agg_names = split(args.aggs, ',');
    auto alphas = parse_alpha_values(args.alpha, args.alpha_grid);

    orchid::CurvatureSelection sel;
    if (args.types != "all") {
        sel = {};
        sel.edges = sel.directional = sel.node_edges = sel.node_neighborhood = false;
        for (const auto& t : split(args.types, ',')) {
            if (t == "edges") sel.edges = true;
            else if (t == "directional") sel.directional = true;
            else if (t == "node_edges") sel.node_edges = true;
            else if (t == "node_neighborhood") sel.node_neighborhood = true;
            else throw orchid::SpecError("unknown curvature type selection '" + t + "'");
        }
    }

    size_t combos = measure_names.size() * agg_names.size() * alphas.size() * args.inputs.size();
    bool to_dir = combos > 1;
    if (to_dir) {
        if (args.out.empty())
            throw orchid::SpecError("--out directory is required for multi-configuration runs");
        fs::create_directories(args.out);
    }

    int threads = resolve_threads(args.threads);
    for (const auto& path : args.inputs) {
        std::string text = read_file(path);
        orchid::Hypergraph h = orchid::Hypergraph::parse(text);
        bool isolated = false;
        for (int i = 0; i < h.node_count(); ++i)
            if (h.node_neighborhood(i).empty()) isolated = true;
        if (isolated)
            std::cerr << "warning: " << path
                      << " contains isolated nodes; their curvatures are null\n";

        for (const auto& mname : measure_names) {
            for (const auto& aname : agg_names) {
                for (double a : alphas) {
                    ManifestBuilder mb;
                    mb.command = command;
                    mb.add_input(path, text);
                    mb.config_grid = {{"measure", mname}, {"agg", aname}, {"alpha", a}};

                    orchid::CurvatureConfig cfg;
                    cfg.measure_kind = orchid::measure_kind_from_string(mname);
                    cfg.aggregator = orchid::aggregator_from_string(aname);
                    cfg.alpha = a;
                    cfg.strict_degree_denominator = args.strict_degree_denominator;
                    orchid::CurvatureEngine engine(h, cfg);
                    auto res = engine.all_curvatures(sel, threads);

                    json j = json::parse(orchid::curvature_result_to_json(res, h));
                    j["manifest"] = mb.build();

                    if (to_dir) {
                        std::string stem = fs::path(path).stem().string();
                        std::string name = stem + "_" + mname + "_" + aname + "_a" +
                                           format_num(a) + ".json";
                        write_output((fs::path(args.out) / name).string(), j.dump(2));
                    } else {
                        write_output(args.out, j.dump(2));
                    }
                }
            }
        }
    }
    return 0;
}

// ----------------------------------------------------------------- generate

struct GenerateArgs {
    std::string model;
    uint64_t seed = 0;
    std::string degrees, cards;        // hcm
    int n = 0, m = 0;                  // er / clique
    double p = 0.0;                    // er
    std::string node_comms, edge_comms, affinity;  // hsbm
    int r = 0, k = 0, depth = 0, len = 0;          // fixtures
    std::string out;
};

int run_generate(const GenerateArgs& args) {
    std::optional<orchid::Hypergraph> h;
    if (args.model == "hcm") {
        h = orchid::gen_configuration(parse_int_list(args.degrees, "--degrees"),
                                      parse_int_list(args.cards, "--cards"), args.seed);
    } else if (args.model == "er") {
        h = orchid::gen_erdos_renyi(args.n, args.m, args.p, args.seed);
    } else if (args.model == "hsbm") {
        std::vector<std::vector<double>> aff;
        for (const auto& row : split(args.affinity, ';')) {
            std::vector<double> r;
            for (const auto& tok : split(row, ',')) r.push_back(std::stod(tok));
            aff.push_back(std::move(r));
        }
        auto res = orchid::gen_hsbm(parse_int_list(args.node_comms, "--node-comms"),
                                    parse_int_list(args.edge_comms, "--edge-comms"), aff,
                                    args.seed);
        h = std::move(res.hypergraph);
    } else if (args.model == "clique") {
        h = orchid::make_hyperclique(args.n, args.r);
    } else if (args.model == "grid") {
        h = orchid::make_hypergrid(args.len, args.r);
    } else if (args.model == "tree") {
        h = orchid::make_hypertree(args.r, args.k, args.depth);
        std::cerr << "central edge index: 0\n";
    } else {
        throw orchid::SpecError("unknown model '" + args.model +
                                "' (expected hcm|er|hsbm|clique|grid|tree)");
    }
    std::string text = h->serialize();
    if (args.out.empty() || args.out == "-") {
        std::cout << text;
    } else {
        std::ofstream outf(args.out, std::ios::binary);
        if (!outf) throw orchid::SpecError("cannot write output file: " + args.out);
        outf << text;
    }
    return 0;
}

// ------------------------------------------------------------------ analyze

struct AnalyzeArgs {
    std::vector<std::string> inputs;
    std::string feature = "edge_curvature";
    std::string kernel = "rbf";
    int quantiles = 64;
    int k = 0;
    bool do_mmd = false;
    bool do_wcc = false;
    bool do_nmi = false;
    int nmi_bins = 16;
    std::string nmi_norm = "max";
    int mmd_reps = 200;
    uint64_t seed = 42;
    std::string labels_file;
    std::string out;
};

std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<std::string> files;
    for (const auto& path : inputs) {
        if (fs::is_directory(path)) {
            std::vector<std::string> inner;
            for (const auto& entry : fs::directory_iterator(path))
                if (entry.is_regular_file()) inner.push_back(entry.path().string());
            std::sort(inner.begin(), inner.end());
            files.insert(files.end(), inner.begin(), inner.end());
        } else {
            files.push_back(path);
        }
    }
    if (files.size() < 2) throw orchid::SpecError("analyze needs at least two input sources");
    return files;
}

orchid::CurvatureResult result_from_json(const json& j) {
    orchid::CurvatureResult res;
    for (const auto& v : j.at("edge_curvature"))
        res.edge_curvatures.push_back(v.is_null() ? std::nullopt
                                                  : std::optional<double>(v.get<double>()));
    for (const auto& t : j.at("directional"))
        res.directional.emplace_back(t[0].get<int>(), t[1].get<int>(), t[2].get<double>());
    for (const auto& [key, v] : j.at("node_curvature_edges").items())
        res.node_edges.push_back(v.is_null() ? std::nullopt
                                             : std::optional<double>(v.get<double>()));
    for (const auto& [key, v] : j.at("node_curvature_neighborhood").items())
        res.node_neighborhood.push_back(v.is_null() ? std::nullopt
                                                    : std::optional<double>(v.get<double>()));
    return res;
}

int run_analyze(const AnalyzeArgs& args, const std::string& command) {
    ManifestBuilder mb;
    mb.command = command;
    mb.seed = args.seed;
    mb.config_grid = {{"feature", args.feature}, {"kernel", args.kernel}};

    auto kind = orchid::feature_kind_from_string(args.feature);
    auto files = expand_inputs(args.inputs);

    std::vector<orchid::FeatureDistribution> dists;
    for (const auto& path : files) {
        std::string text = read_file(path);
        mb.add_input(path, text);
        std::string id = fs::path(path).stem().string();
        bool looks_json = !text.empty() && (text[0] == '{' || text[0] == '[');
        if (orchid::feature_kind_needs_curvature(kind)) {
            if (!looks_json)
                throw orchid::SpecError("feature '" + args.feature +
                                        "' needs curvature result JSON inputs: " + path);
            dists.push_back(orchid::feature_from_result(result_from_json(json::parse(text)),
                                                        kind, id));
        } else {
            if (looks_json)
                throw orchid::SpecError("feature '" + args.feature +
                                        "' needs edge-list inputs, got JSON: " + path);
            dists.push_back(
                orchid::feature_from_hypergraph(orchid::Hypergraph::parse(text), kind, id));
        }
    }

    std::vector<std::string> ids;
    for (const auto& d : dists) ids.push_back(d.source_id);

    orchid::KernelMatrix K;
    if (args.kernel == "rbf") {
        std::vector<std::vector<double>> feats;
        for (const auto& d : dists) feats.push_back(orchid::quantile_vector(d, args.quantiles));
        K = orchid::rbf_kernel_matrix(feats, ids);
    } else if (args.kernel == "expw") {
        K = orchid::expw_kernel_matrix(dists);
    } else {
        throw orchid::SpecError("unknown kernel '" + args.kernel + "' (expected rbf|expw)");
    }
    if (K.gamma_fallback)
        std::cerr << "warning: all sources identical; kernel bandwidth fell back to gamma=1\n";

    json out;
    out["sources"] = ids;
    out["kernel"] = {{"kind", args.kernel}, {"gamma", K.gamma}, {"values", K.values}};
    out["kpca"] = orchid::kpca_embed(K, std::min<int>(2, static_cast<int>(ids.size())));

    std::vector<int> labels;
    if (!args.labels_file.empty()) {
        for (const auto& tok : split(read_file(args.labels_file), '\n'))
            labels.push_back(std::stoi(tok));
        if (labels.size() != ids.size())
            throw orchid::ShapeError("label file row count does not match source count");
        out["clusters"] = labels;
    } else if (args.k >= 2) {
        labels = orchid::spectral_cluster(K, args.k, args.seed);
        out["clusters"] = labels;
    }

    if (args.do_wcc) {
        if (labels.empty())
            throw orchid::SpecError("--wcc needs --k clusters or a --labels file");
        out["wcc"] = orchid::wcc(labels, dists);
    }

    if (args.do_mmd) {
        size_t n = dists.size();
        std::vector<std::vector<double>> raw(n, std::vector<double>(n, 0.0));
        std::vector<double> flat;
        for (size_t a = 0; a < n; ++a)
            for (size_t b = a + 1; b < n; ++b) {
                auto [mmd2, p] = orchid::mmd_test(dists[a].samples, dists[b].samples,
                                                  args.mmd_reps, args.seed);
                raw[a][b] = raw[b][a] = p;
                flat.push_back(p);
            }
        auto adjusted_flat = orchid::bonferroni_adjust(flat);
        std::vector<std::vector<double>> adjusted(n, std::vector<double>(n, 1.0));
        size_t idx = 0;
        for (size_t a = 0; a < n; ++a) {
            raw[a][a] = 1.0;
            for (size_t b = a + 1; b < n; ++b) {
                adjusted[a][b] = adjusted[b][a] = adjusted_flat[idx];
                ++idx;
            }
        }
        out["mmd_p_raw"] = raw;
        out["mmd_p_bonferroni"] = adjusted;
    }

    if (args.do_nmi) {
        size_t n = dists.size();
        auto norm = orchid::nmi_normalizer_from_string(args.nmi_norm);
        std::vector<std::vector<double>> m(n, std::vector<double>(n, 1.0));
        for (size_t a = 0; a < n; ++a)
            for (size_t b = a + 1; b < n; ++b)
                m[a][b] = m[b][a] =
                    orchid::nmi(dists[a].samples, dists[b].samples, args.nmi_bins, norm);
        out["nmi"] = m;
    }

    out["manifest"] = mb.build();
    write_output(args.out, out.dump(2));
    return 0;
}

// ------------------------------------------------------------------ profile

int run_profile(const std::string& input, bool exact_diameter, const std::string& outpath,
                const std::string& command) {
    ManifestBuilder mb;
    mb.command = command;
    std::string text = read_file(input);
    mb.add_input(input, text);
    orchid::Hypergraph h = orchid::Hypergraph::parse(text);
    json j = json::parse(orchid::profile_to_json(h, h.structural_profile(exact_diameter)));
    j["manifest"] = mb.build();
    write_output(outpath, j.dump(2));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::string command = join_args(argc, argv);
    CLI::App app{"Hypergraph curvature toolkit: transport-based curvature, synthetic "
                 "generators, and distributional analysis"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CurvatureArgs cargs;
    auto* curv = app.add_subcommand("curvature", "Compute curvatures for edge-list hypergraphs");
    curv->add_option("inputs", cargs.inputs, "Edge-list input files")->required();
    curv->add_option("--measure", cargs.measures, "Comma list of en|ee|we");
    curv->add_option("--agg", cargs.aggs, "Comma list of mean|barycenter|max");
    curv->add_option("--alpha", cargs.alpha, "Laziness parameter in [0,1]");
    curv->add_option("--alpha-grid", cargs.alpha_grid, "Alpha sweep start:stop:step");
    curv->add_option("--types", cargs.types,
                     "Comma list of edges|directional|node_edges|node_neighborhood, or 'all'");
    curv->add_option("--threads", cargs.threads, "Worker threads (0 = auto / ORCHID_THREADS)");
    curv->add_flag("--strict-degree-denominator", cargs.strict_degree_denominator,
                   "Divide per-node edge averages by full degree, counting singleton edges");
    curv->add_option("--out", cargs.out, "Output file, or directory for multi-config runs");

    GenerateArgs gargs;
    auto* gen = app.add_subcommand("generate", "Generate synthetic hypergraphs");
    gen->add_option("model", gargs.model, "hcm|er|hsbm|clique|grid|tree")->required();
    gen->add_option("--seed", gargs.seed, "RNG seed");
    gen->add_option("--degrees", gargs.degrees, "hcm: comma list of node degrees");
    gen->add_option("--cards", gargs.cards, "hcm: comma list of edge cardinalities");
    gen->add_option("--n", gargs.n, "er: node count / clique: node count");
    gen->add_option("--m", gargs.m, "er: edge count");
    gen->add_option("--p", gargs.p, "er: incidence probability");
    gen->add_option("--node-comms", gargs.node_comms, "hsbm: node community sizes");
    gen->add_option("--edge-comms", gargs.edge_comms, "hsbm: edge community sizes");
    gen->add_option("--affinity", gargs.affinity, "hsbm: rows 'a,b;c,d' of probabilities");
    gen->add_option("--r", gargs.r, "clique/grid/tree: edge cardinality");
    gen->add_option("--k", gargs.k, "tree: node degree");
    gen->add_option("--depth", gargs.depth, "tree: expansion levels (>= 3)");
    gen->add_option("--len", gargs.len, "grid: cycle length (> 2r)");
    gen->add_option("--out", gargs.out, "Output edge-list file (default stdout)");

    AnalyzeArgs aargs;
    auto* ana = app.add_subcommand("analyze", "Kernel/embedding/test suite over feature sets");
    ana->add_option("inputs", aargs.inputs, "Curvature result files/dirs or edge-list files")
        ->required();
    ana->add_option("--feature", aargs.feature, "Feature kind to extract");
    ana->add_option("--kernel", aargs.kernel, "rbf|expw");
    ana->add_option("--quantiles", aargs.quantiles, "Quantile vector length for the RBF kernel");
    ana->add_option("--k", aargs.k, "Spectral cluster count");
    ana->add_flag("--mmd", aargs.do_mmd, "Pairwise permutation MMD tests");
    ana->add_option("--mmd-reps", aargs.mmd_reps, "Permutation count B");
    ana->add_flag("--wcc", aargs.do_wcc, "Wasserstein clustering coefficient");
    ana->add_flag("--nmi", aargs.do_nmi, "Pairwise normalized mutual information");
    ana->add_option("--nmi-bins", aargs.nmi_bins, "Equal-width bins for NMI");
    ana->add_option("--nmi-norm", aargs.nmi_norm, "max|min|mean|sqrt");
    ana->add_option("--seed", aargs.seed, "Seed for clustering and permutation tests");
    ana->add_option("--labels", aargs.labels_file, "Cluster label file (one integer per line)");
    ana->add_option("--out", aargs.out, "Output JSON file (default stdout)");

    std::string profile_input, profile_out;
    bool exact_diameter = false;
    auto* prof = app.add_subcommand("profile", "Structural profile of a hypergraph");
    prof->add_option("input", profile_input, "Edge-list input file")->required();
    prof->add_flag("--exact-diameter", exact_diameter, "Compute the exact diameter (all-pairs)");
    prof->add_option("--out", profile_out, "Output JSON file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (curv->parsed()) return run_curvature(cargs, command);
        if (gen->parsed()) return run_generate(gargs);
        if (ana->parsed()) return run_analyze(aargs, command);
        if (prof->parsed()) return run_profile(profile_input, exact_diameter, profile_out, command);
    } catch (const orchid::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const orchid::SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const orchid::ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const orchid::EmptyFeatureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
