// cpnet command-line tool: graph generation, structure reports, simulation
// and the statistical experiments, with manifest-backed reproducibility.
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cpnet/config_model.hpp"
#include "cpnet/contact_engine.hpp"
#include "cpnet/degree_law.hpp"
#include "cpnet/experiments.hpp"
#include "cpnet/graph_structure.hpp"
#include "cpnet/multigraph.hpp"
#include "cpnet/parallel.hpp"
#include "cpnet/result_table.hpp"
#include "cpnet/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cpnet;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Options {
    double a = 1.5;
    std::string dist = "truncated";
    double alpha = 1.1;
    std::uint64_t n = 1000;
    double lambda = 1.0;
    std::uint64_t seed = 1;
    std::uint32_t replicas = 20;
    double cap = 1e6;
    std::string times = "0,10,20,40";
    unsigned threads = default_threads();
    std::string out = ".";
    std::string graph_file;
    std::string degrees;
    std::string family = "star";
    std::uint32_t size = 100;
    std::string sizes = "20,30,40,50,60";
    std::uint32_t runs = 20;
    double horizon = 40.0;

    json to_json() const {
        return json{{"a", a},           {"dist", dist},     {"alpha", alpha},
                    {"n", n},           {"lambda", lambda}, {"seed", seed},
                    {"replicas", replicas}, {"cap", cap},   {"times", times},
                    {"threads", threads},   {"out", out},   {"graph", graph_file},
                    {"degrees", degrees},   {"family", family}, {"size", size},
                    {"sizes", sizes},       {"runs", runs}, {"horizon", horizon}};
    }
};

std::string timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            if constexpr (std::is_floating_point_v<T>)
                out.push_back(std::stod(item));
            else
                out.push_back(static_cast<T>(std::stoull(item)));
        } catch (const std::exception&) {
            throw std::runtime_error(std::string("malformed ") + what + " list: '" + item + "'");
        }
    }
    if (out.empty()) throw std::runtime_error(std::string("empty ") + what + " list");
    return out;
}

// config file values fill any option the command line left untouched
void apply_config_file(const std::string& path, Options& opt, const CLI::App& app) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("malformed config file: " + std::string(e.what()));
    }
    auto overridden = [&](const std::string& flag) {
        const CLI::Option* o = app.get_option_no_throw("--" + flag);
        return o != nullptr && o->count() > 0;
    };
    for (const auto& [key, value] : cfg.items()) {
        if (overridden(key)) continue;
        if (key == "a") opt.a = value.get<double>();
        else if (key == "dist") opt.dist = value.get<std::string>();
        else if (key == "alpha") opt.alpha = value.get<double>();
        else if (key == "n") opt.n = value.get<std::uint64_t>();
        else if (key == "lambda") opt.lambda = value.get<double>();
        else if (key == "seed") opt.seed = value.get<std::uint64_t>();
        else if (key == "replicas") opt.replicas = value.get<std::uint32_t>();
        else if (key == "cap") opt.cap = value.get<double>();
        else if (key == "times") opt.times = value.get<std::string>();
        else if (key == "threads") opt.threads = value.get<unsigned>();
        else if (key == "out") opt.out = value.get<std::string>();
        else if (key == "graph") opt.graph_file = value.get<std::string>();
        else if (key == "degrees") opt.degrees = value.get<std::string>();
        else if (key == "family") opt.family = value.get<std::string>();
        else if (key == "size") opt.size = value.get<std::uint32_t>();
        else if (key == "sizes") opt.sizes = value.get<std::string>();
        else if (key == "runs") opt.runs = value.get<std::uint32_t>();
        else if (key == "horizon") opt.horizon = value.get<double>();
        else throw std::runtime_error("unknown config key: " + key);
    }
}

DegreeLaw make_law(const Options& opt) {
    if (!(opt.lambda > 0.0)) throw std::runtime_error("lambda must be positive");
    if (opt.dist == "truncated") return DegreeLaw::truncated(opt.a, opt.n);
    if (opt.dist == "infinite") return DegreeLaw::infinite(opt.a);
    if (opt.dist == "alpha") return DegreeLaw::alpha_truncated(opt.a, opt.alpha, opt.n);
    throw std::runtime_error("unknown dist: " + opt.dist +
                             " (expected truncated|infinite|alpha)");
}

MultiGraph obtain_graph(const Options& opt, std::string_view purpose) {
    if (!opt.graph_file.empty()) {
        std::ifstream in(opt.graph_file);
        if (!in) throw std::runtime_error("cannot open graph file: " + opt.graph_file);
        return MultiGraph::read(in);
    }
    Rng rng(derive_seed(opt.seed, purpose));
    if (!opt.degrees.empty()) {
        const DegreeSequence seq =
            explicit_degree_sequence(parse_list<std::uint64_t>(opt.degrees, "degrees"));
        return build_uniform_matching(seq, rng);
    }
    const DegreeLaw law = make_law(opt);
    return build_uniform_matching(law.sample_sequence(opt.n, rng), rng);
}

struct Manifest {
    fs::path dir;
    json doc;

    Manifest(const Options& opt, const std::string& command) {
        dir = fs::path(opt.out);
        if (!fs::is_directory(dir))
            throw std::runtime_error("output directory does not exist: " + opt.out);
        doc = {{"command", command},      {"config", opt.to_json()},
               {"seed", opt.seed},        {"version", kVersion},
               {"start_time", timestamp()}, {"outputs", json::array()}};
        write();  // manifest lands before any output file
    }

    fs::path add_output(const std::string& name) {
        doc["outputs"].push_back(name);
        write();
        return dir / name;
    }

    void finish(double wall_seconds) {
        doc["end_time"] = timestamp();
        doc["wall_seconds"] = wall_seconds;
        write();
    }

    void write() const {
        std::ofstream out(dir / "manifest.json");
        out << doc.dump(2) << '\n';
    }
};

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

json structure_report_json(const StructureReport& rep) {
    json classes = json::object();
    for (auto [j, nj] : rep.degree_classes) classes[std::to_string(j)] = nj;
    return json{{"n", rep.n},
                {"total_degree", rep.total_degree},
                {"degree_classes", classes},
                {"high_degree_half_n", rep.high_degree_half_n},
                {"high_degree_three_quarter", rep.high_degree_three_quarter},
                {"top_degrees", rep.top_degrees},
                {"component_sizes", rep.component_sizes},
                {"giant_size", rep.giant_size},
                {"giant_diameter",
                 {{"value", rep.giant_diameter.value},
                  {"upper_bound", rep.giant_diameter.upper},
                  {"exact", rep.giant_diameter.exact}}},
                {"off_giant_max_edges", rep.off_giant_max_edges},
                {"metastability_ratio", rep.metastability_ratio}};
}

int run_generate(const Options& opt) {
    Manifest manifest(opt, "generate");
    const auto start = std::chrono::steady_clock::now();
    const MultiGraph g = obtain_graph(opt, "generate");
    std::ostringstream os;
    g.write(os);
    write_file(manifest.add_output("graph.txt"), os.str());
    manifest.finish(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    std::cout << "graph.txt: " << g.num_vertices() << " vertices, " << g.num_edges()
              << " edges\n";
    return 0;
}

int run_structure(const Options& opt) {
    Manifest manifest(opt, "structure");
    const auto start = std::chrono::steady_clock::now();
    const MultiGraph g = obtain_graph(opt, "structure/graph");
    const StructureReport rep = compute_structure_report(g);
    write_file(manifest.add_output("structure.json"), structure_report_json(rep).dump(2) + "\n");
    manifest.finish(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    std::cout << structure_report_json(rep).dump(2) << '\n';
    return 0;
}

int run_simulate(const Options& opt) {
    Manifest manifest(opt, "simulate");
    const auto start = std::chrono::steady_clock::now();
    const MultiGraph g = obtain_graph(opt, "simulate/graph");
    ContactConfig config;
    config.lambda = opt.lambda;
    config.observation_times = parse_list<double>(opt.times, "times");
    std::sort(config.observation_times.begin(), config.observation_times.end());
    config.horizon = std::max(opt.horizon, config.observation_times.back());
    Rng rng(derive_seed(opt.seed, "simulate/run"));
    const SimOutcome out = simulate(g, config, all_vertices(g), rng);
    std::ostringstream csv;
    csv << "time,infected,density\n";
    for (const auto& s : out.density_samples)
        csv << format_double(s.time) << ',' << s.infected << ',' << format_double(s.density)
            << '\n';
    write_file(manifest.add_output("densities.csv"), csv.str());
    json summary = {{"censored", out.censored()},
                    {"peak_infected", out.peak_infected}};
    if (out.extinction_time) summary["extinction_time"] = *out.extinction_time;
    write_file(manifest.add_output("summary.json"), summary.dump(2) + "\n");
    manifest.finish(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int run_experiment(const Options& opt, const std::string& kind) {
    Manifest manifest(opt, "experiment " + kind);
    const auto start = std::chrono::steady_clock::now();
    ResultTable table;
    if (kind == "density" || kind == "indicator" || kind == "structure") {
        ExperimentSpec spec(make_law(opt));
        spec.n = opt.n;
        spec.lambda = opt.lambda;
        spec.replicas = opt.replicas;
        spec.observation_times = parse_list<double>(opt.times, "times");
        std::sort(spec.observation_times.begin(), spec.observation_times.end());
        spec.seed = opt.seed;
        spec.cap = opt.cap;
        spec.threads = opt.threads;
        if (kind == "density") table = density_experiment(spec);
        else if (kind == "indicator") table = survival_indicator_experiment(spec);
        else table = structure_experiment(spec, opt.runs);
    } else if (kind == "exp-law") {
        GraphFamily family = GraphFamily::star(opt.size);
        if (opt.family == "twostep") family = GraphFamily::two_step(4, opt.size / 4);
        else if (opt.family == "mixture") family = GraphFamily::mixture(opt.size);
        else if (opt.family == "config") family = GraphFamily::config_model(make_law(opt), opt.n);
        else if (opt.family != "star")
            throw std::runtime_error("unknown family: " + opt.family);
        table = exponential_law_experiment(family, opt.lambda, opt.replicas, opt.cap, opt.seed,
                                           opt.threads);
    } else if (kind == "growth") {
        const auto sizes = parse_list<std::uint32_t>(opt.sizes, "sizes");
        const auto fam = opt.family == "twostep" ? GraphFamily::Kind::TwoStepStar
                                                 : GraphFamily::Kind::Star;
        table = growth_experiment(fam, sizes, opt.lambda, opt.replicas, opt.cap, opt.seed,
                                  opt.threads);
    } else {
        throw std::runtime_error("unknown experiment: " + kind);
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    table.wall_seconds = wall;
    write_file(manifest.add_output("result.csv"), table.to_csv());
    write_file(manifest.add_output("report.txt"), table.report());
    manifest.finish(wall);
    std::cout << table.report();
    return table.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"contact-process toolkit for configuration-model graphs"};
    app.require_subcommand(1);

    Options opt;
    std::string config_file;
    std::string experiment_kind;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--a", opt.a, "degree exponent in (1,2]");
        cmd->add_option("--dist", opt.dist, "degree law: truncated|infinite|alpha");
        cmd->add_option("--alpha", opt.alpha, "cutoff exponent for --dist alpha");
        cmd->add_option("--n", opt.n, "vertex count / cutoff");
        cmd->add_option("--lambda", opt.lambda, "infection rate");
        cmd->add_option("--seed", opt.seed, "master seed");
        cmd->add_option("--replicas", opt.replicas, "replica count");
        cmd->add_option("--cap", opt.cap, "censoring cap for extinction times");
        cmd->add_option("--times", opt.times, "comma-separated observation times");
        cmd->add_option("--threads", opt.threads, "worker threads");
        cmd->add_option("--out", opt.out, "output directory (must exist)");
        cmd->add_option("--graph", opt.graph_file, "read this graph file instead of generating");
        cmd->add_option("--degrees", opt.degrees, "explicit comma-separated degree sequence");
        cmd->add_option("--family", opt.family, "graph family: star|twostep|mixture|config");
        cmd->add_option("--size", opt.size, "family size parameter");
        cmd->add_option("--sizes", opt.sizes, "comma-separated size grid");
        cmd->add_option("--runs", opt.runs, "structure experiment run count");
        cmd->add_option("--horizon", opt.horizon, "simulation horizon");
        cmd->add_option("--config", config_file, "JSON config file (flags take precedence)");
        return cmd;
    };

    CLI::App* generate = add_common(app.add_subcommand("generate", "emit a graph file"));
    CLI::App* structure = add_common(app.add_subcommand("structure", "structure report"));
    CLI::App* simulate_cmd = add_common(app.add_subcommand("simulate", "one trajectory"));
    CLI::App* experiment = add_common(app.add_subcommand("experiment", "statistical experiment"));
    experiment->add_option("kind", experiment_kind,
                           "density|indicator|exp-law|growth|structure")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        CLI::App* active = generate->parsed() ? generate
                           : structure->parsed() ? structure
                           : simulate_cmd->parsed() ? simulate_cmd
                                                    : experiment;
        if (!config_file.empty()) apply_config_file(config_file, opt, *active);
        if (generate->parsed()) return run_generate(opt);
        if (structure->parsed()) return run_structure(opt);
        if (simulate_cmd->parsed()) return run_simulate(opt);
        return run_experiment(opt, experiment_kind);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
