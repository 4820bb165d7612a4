#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <csignal>
#include <ostream>

#include "diffusion/engine.hpp"
#include "diffusion/enumeration.hpp"
#include "diffusion/graph.hpp"
#include "diffusion/path_analytics.hpp"
#include "diffusion/quiescence.hpp"

namespace diffusion::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::atomic<bool> g_stop{false};

extern "C" void handle_interrupt(int) { g_stop.store(true); }

struct Options {
    std::string graph;
    std::string subset;
    std::string config;
    int steps = -1;
    int max_steps = kDefaultMaxSteps;
    std::string format;
    int threads = 1;
    bool exclude_trivial = false;
    int n = -1;
    int n_max = 0;
    bool connected_only = false;
    bool degree_sorted = false;
    std::string checkpoint;
    bool resume = false;
};

Graph resolve_graph(const std::string& source) {
    if (looks_like_generator_spec(source)) {
        try {
            return from_generator_spec(source);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--graph: ") + e.what());
        }
    }
    return read_edge_list_file(source);
}

std::vector<long long> parse_list(const std::string& text, const char* flag) {
    std::vector<long long> values;
    if (text.find_first_not_of(" \t") == std::string::npos) return values;
    std::size_t pos = 0;
    while (true) {
        const auto comma = text.find(',', pos);
        const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
            throw UsageError(std::string(flag) + ": '" + item + "' is not an integer");
        }
        values.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return values;
}

VertexSet resolve_subset(const Graph& g, const std::string& text) {
    if (!g.has_masks()) {
        throw std::invalid_argument("subsets need a graph with at most 63 vertices, got " + std::to_string(g.order()));
    }
    std::vector<int> members;
    for (long long v : parse_list(text, "--subset")) {
        if (v < 0 || v >= g.order()) {
            throw std::invalid_argument("--subset: vertex " + std::to_string(v) + " outside [0," +
                                        std::to_string(g.order()) + ")");
        }
        members.push_back(static_cast<int>(v));
    }
    return VertexSet::of(g.order(), members);
}

Configuration resolve_config(const Graph& g, const std::string& text) {
    std::vector<std::int64_t> stacks;
    for (long long v : parse_list(text, "--config")) stacks.push_back(v);
    if (static_cast<int>(stacks.size()) != g.order()) {
        throw std::invalid_argument("--config has " + std::to_string(stacks.size()) + " stacks but the graph has " +
                                    std::to_string(g.order()) + " vertices");
    }
    return Configuration(std::move(stacks));
}

json to_json(const Configuration& c) { return json(std::vector<std::int64_t>(c.stacks().begin(), c.stacks().end())); }

json to_json(const PeriodReport& rep) {
    json configs = json::array();
    for (const auto& c : rep.period_configs) configs.push_back(to_json(c));
    return {{"status", "period"},
            {"preperiod", rep.preperiod},
            {"period", rep.period},
            {"period_configs", configs},
            {"steps_taken", rep.steps_taken}};
}

void write_trace_csv(std::ostream& out, int n, const std::vector<Configuration>& rows, int first_step) {
    out << "step";
    for (int v = 0; v < n; ++v) out << ",v" << v;
    out << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << first_step + static_cast<int>(i);
        for (auto s : rows[i].stacks()) out << ',' << s;
        out << '\n';
    }
}

json trace_json(const std::vector<Configuration>& rows) {
    json t = json::array();
    for (const auto& c : rows) t.push_back(to_json(c));
    return t;
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed) {
        if (o.format == f) return;
    }
    throw UsageError("--format " + o.format + " is not supported by this command");
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
    require_format(o, {"json", "csv"});
    const Graph g = resolve_graph(o.graph);
    const Configuration c0 = resolve_config(g, o.config);
    const RunResult result = run(g, c0, o.max_steps);
    const auto* cap = std::get_if<CapExceeded>(&result);

    std::vector<Configuration> rows;
    if (o.steps >= 0) {
        rows = trace(g, c0, o.steps);
    } else if (!cap) {
        rows = trace(g, c0, std::get<PeriodReport>(result).steps_taken);
    }

    if (o.format == "csv") {
        write_trace_csv(out, g.order(), rows, 0);
    } else {
        json doc = {{"graph", o.graph}, {"config", to_json(c0)}};
        if (o.steps >= 0 || !cap) doc["trace"] = trace_json(rows);
        if (cap) {
            doc["run"] = {{"status", "cap_exceeded"}, {"steps_taken", cap->steps_taken}};
        } else {
            doc["run"] = to_json(std::get<PeriodReport>(result));
        }
        out << doc.dump() << '\n';
    }
    if (cap) {
        err << "error: no period detected within " << cap->steps_taken << " steps (raise --max-steps)\n";
        return kExitDomain;
    }
    return kExitOk;
}

int cmd_perturb(const Options& o, std::ostream& out, std::ostream&) {
    require_format(o, {"json", "csv"});
    const Graph g = resolve_graph(o.graph);
    const VertexSet h = resolve_subset(g, o.subset);
    const Configuration start = perturb(g, h);
    // Step 0 is the 0-configuration, step 1 the perturbed configuration.
    std::vector<Configuration> rows{Configuration::zeros(g.order())};
    const auto later = trace(g, start, std::max(o.steps, 1) - 1);
    rows.insert(rows.end(), later.begin(), later.end());
    if (o.format == "csv") {
        write_trace_csv(out, g.order(), rows, 0);
    } else {
        json doc = {{"graph", o.graph}, {"subset", h.members()}, {"config", to_json(start)}};
        if (o.steps >= 0) doc["trace"] = trace_json(rows);
        out << doc.dump() << '\n';
    }
    return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream&) {
    require_format(o, {"json"});
    const Graph g = resolve_graph(o.graph);
    const VertexSet h = resolve_subset(g, o.subset);
    const auto zero = is_zero_invoking(g, h, o.max_steps);
    json z = {{"status", to_string(zero.status)}};
    z["step"] = zero.reached_zero() ? json(zero.step) : json(nullptr);
    json doc = {{"graph", o.graph},
                {"subset", h.members()},
                {"ccd", is_ccd(g, h)},
                {"zero2", is_zero2_invoking(g, h)},
                {"zero", z}};
    out << doc.dump() << '\n';
    return kExitOk;
}

int cmd_count(const Options& o, std::ostream& out, std::ostream&) {
    require_format(o, {"json"});
    const Graph g = resolve_graph(o.graph);
    const auto count = count_zero2_subsets(g, !o.exclude_trivial, o.threads);
    json doc = {{"graph", o.graph}, {"include_trivial", !o.exclude_trivial}, {"count", count}};
    out << doc.dump() << '\n';
    return kExitOk;
}

int cmd_pq2(const Options& o, std::ostream& out, std::ostream&) {
    require_format(o, {"json"});
    const Graph g = resolve_graph(o.graph);
    const auto value = pq2(g, {.threads = o.threads, .max_steps = o.max_steps});
    json doc = {{"graph", o.graph}, {"pq2", value ? json(*value) : json(nullptr)}};
    out << doc.dump() << '\n';
    return kExitOk;
}

int cmd_pq(const Options& o, std::ostream& out, std::ostream& err) {
    require_format(o, {"json"});
    const Graph g = resolve_graph(o.graph);
    const auto value = pq(g, {.threads = o.threads, .max_steps = o.max_steps});
    json doc = {{"graph", o.graph}};
    switch (value.status) {
        case QuiescentNumber::Status::found:
            doc["status"] = "found";
            doc["pq"] = value.size;
            break;
        case QuiescentNumber::Status::none:
            doc["status"] = "none";
            doc["pq"] = nullptr;
            break;
        case QuiescentNumber::Status::unknown:
            doc["status"] = "unknown";
            doc["pq"] = nullptr;
            doc["upper_bound"] = value.size > 0 ? json(value.size) : json(nullptr);
            break;
    }
    out << doc.dump() << '\n';
    if (value.status == QuiescentNumber::Status::unknown) {
        err << "error: a subset's simulation hit --max-steps; PQ is unknown\n";
        return kExitDomain;
    }
    return kExitOk;
}

json edges_json(const Graph& g) {
    json edges = json::array();
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
    return edges;
}

int cmd_search(const Options& o, std::ostream& out, std::ostream& err) {
    require_format(o, {"json"});
    if (o.n < 0 || o.n > 7) throw UsageError("--n must lie in [0, 7]");
    if (o.resume && o.checkpoint.empty()) throw UsageError("--resume needs --checkpoint");

    GraphSearchOptions opts;
    opts.n = o.n;
    opts.connected_only = o.connected_only;
    opts.degree_sorted_only = o.degree_sorted;
    opts.max_steps = o.max_steps;
    opts.threads = o.threads;
    opts.checkpoint_path = o.checkpoint;
    if (o.resume) opts.start_mask = read_checkpoint(o.checkpoint, o.n);

    auto reporter = [&](const GraphSearchEvent& ev) {
        switch (ev.kind) {
            case GraphSearchEvent::Kind::witness: {
                const auto& w = *ev.witness;
                json line = {{"status", "witness"},
                             {"n", o.n},
                             {"edge_mask", ev.edge_mask},
                             {"edges", edges_json(w.graph)},
                             {"subset", w.subset.members()},
                             {"zero_step", w.zero_step},
                             {"verified", verify_witness(w)}};
                out << line.dump() << std::endl;
                break;
            }
            case GraphSearchEvent::Kind::inconclusive: {
                json capped = json::array();
                for (const auto& s : ev.capped) capped.push_back(s.members());
                json line = {{"status", "inconclusive"}, {"n", o.n}, {"edge_mask", ev.edge_mask}, {"capped", capped}};
                out << line.dump() << std::endl;
                break;
            }
            case GraphSearchEvent::Kind::progress:
                err << "progress: n=" << o.n << " next_mask=" << ev.edge_mask << " graphs=" << ev.graphs_scanned
                    << '\n';
                break;
        }
        return true;
    };

    g_stop.store(false);
    auto previous = std::signal(SIGINT, handle_interrupt);
    GraphSearchSummary summary;
    try {
        summary = search_all_graphs(opts, reporter, &g_stop);
    } catch (...) {
        std::signal(SIGINT, previous);
        throw;
    }
    std::signal(SIGINT, previous);

    err << "search n=" << o.n << ": " << summary.graphs_scanned << " graphs scanned, " << summary.witnesses
        << " witnesses, " << summary.inconclusive << " inconclusive";
    if (!summary.completed) err << ", interrupted at edge mask " << summary.next_mask;
    err << '\n';
    return summary.completed ? kExitOk : kExitDomain;
}

int cmd_paths_table(const Options& o, std::ostream& out, std::ostream&) {
    require_format(o, {"json", "csv"});
    if (o.n_max < 1) throw UsageError("--n-max must be >= 1");
    const auto rows = path_table(o.n_max, o.threads);
    if (o.format == "csv") {
        write_path_table_csv(out, rows);
        return kExitOk;
    }
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"n", r.n},
                       {"j_bruteforce", r.j_bruteforce},
                       {"j_recurrence", r.j_recurrence},
                       {"j_fibonacci", r.j_fibonacci},
                       {"pq2_bruteforce", r.pq2_bruteforce},
                       {"pq2_closed", r.pq2_closed}});
    }
    out << json{{"rows", arr}}.dump() << '\n';
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Diffusion chip-firing and Perturbation Diffusion toolkit", "diffusion"};
    app.require_subcommand(1);
    Options o;

    auto add_graph = [&](CLI::App* sub) {
        sub->add_option("--graph", o.graph, "Edge-list file or generator (path:N, cycle:N, complete:N, kbip:A,B, kpartite:A,B,...)")
            ->required();
    };
    auto add_threads = [&](CLI::App* sub) {
        sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
    };
    auto add_max_steps = [&](CLI::App* sub) {
        sub->add_option("--max-steps", o.max_steps, "Simulation step cap")->check(CLI::PositiveNumber);
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    };

    auto* simulate = app.add_subcommand("simulate", "Run Diffusion from a configuration");
    add_graph(simulate);
    simulate->add_option("--config", o.config, "Comma-separated stack sizes, vertex 0 first")->required();
    simulate->add_option("--steps", o.steps, "Trace exactly this many firings")->check(CLI::NonNegativeNumber);
    add_max_steps(simulate);
    add_format(simulate);

    auto* perturb_cmd = app.add_subcommand("perturb", "Perturb a subset from the 0-configuration");
    add_graph(perturb_cmd);
    perturb_cmd->add_option("--subset", o.subset, "Comma-separated 0-based vertex indices")->required();
    perturb_cmd->add_option("--steps", o.steps, "Also trace up to this step")->check(CLI::PositiveNumber);
    add_format(perturb_cmd);

    auto* check = app.add_subcommand("check", "Evaluate CCD, 0_2-invoking and 0-invoking for a subset");
    add_graph(check);
    check->add_option("--subset", o.subset, "Comma-separated 0-based vertex indices")->required();
    add_max_steps(check);
    add_format(check);

    auto* count = app.add_subcommand("count", "Count 0_2-invoking subsets");
    add_graph(count);
    count->add_flag("--exclude-trivial", o.exclude_trivial, "Do not count the empty set and V(G)");
    add_threads(count);
    add_format(count);

    auto* pq_cmd = app.add_subcommand("pq", "Perturbation quiescent number");
    add_graph(pq_cmd);
    add_max_steps(pq_cmd);
    add_threads(pq_cmd);
    add_format(pq_cmd);

    auto* pq2_cmd = app.add_subcommand("pq2", "2-perturbation quiescent number");
    add_graph(pq2_cmd);
    add_threads(pq2_cmd);
    add_format(pq2_cmd);

    auto* search = app.add_subcommand("search", "Look for 0-invoking subsets that are not 0_2-invoking");
    search->add_option("--n", o.n, "Vertex count (0..7)")->required();
    search->add_flag("--connected-only", o.connected_only, "Skip disconnected graphs");
    search->add_flag("--degree-sorted", o.degree_sorted, "Only graphs whose degrees are non-increasing by label");
    add_max_steps(search);
    search->add_option("--checkpoint", o.checkpoint, "Append \"n edge_mask\" resume points to this file");
    search->add_flag("--resume", o.resume, "Continue from the last checkpoint line");
    add_threads(search);
    add_format(search);

    auto* table = app.add_subcommand("paths-table", "Cross-check the path formulas against enumeration");
    table->add_option("--n-max", o.n_max, "Largest path order")->required();
    add_threads(table);
    add_format(table);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << "run 'diffusion --help' for usage\n";
        return kExitUsage;
    }

    if (o.format.empty()) o.format = table->parsed() ? "csv" : "json";

    try {
        if (simulate->parsed()) return cmd_simulate(o, out, err);
        if (perturb_cmd->parsed()) return cmd_perturb(o, out, err);
        if (check->parsed()) return cmd_check(o, out, err);
        if (count->parsed()) return cmd_count(o, out, err);
        if (pq_cmd->parsed()) return cmd_pq(o, out, err);
        if (pq2_cmd->parsed()) return cmd_pq2(o, out, err);
        if (search->parsed()) return cmd_search(o, out, err);
        if (table->parsed()) return cmd_paths_table(o, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitUsage;
}

}  // namespace diffusion::cli
