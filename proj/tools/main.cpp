// Command-line driver: parse or generate corpora, run minimization methods,
// and emit per-instance stats tables.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "omega_reduce/automaton.hpp"
#include "omega_reduce/generator.hpp"
#include "omega_reduce/minimize.hpp"

namespace fs = std::filesystem;
using namespace omega_reduce;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitInternal = 3;

MinimizeMethod parse_method(const std::string& name) {
    if (name == "fair") return MinimizeMethod::fair;
    if (name == "fair-direct") return MinimizeMethod::fair_direct;
    if (name == "direct") return MinimizeMethod::direct;
    if (name == "delayed") return MinimizeMethod::delayed;
    throw CLI::ValidationError("--method", "unknown method '" + name + "'");
}

void apply_opt_flag(MinimizeOptions& opt, const std::string& name) {
    if (name == "scc") opt.scc = true;
    else if (name == "reuse") opt.reuse = true;
    else if (name == "history") opt.history = true;
    else if (name == "smart-init") opt.smart_init = true;
    else if (name == "fast-detect") opt.fast_detect = true;
    else if (name == "equiv-classes") opt.equiv_classes = true;
    else if (name == "purge") opt.purge_unreachable = true;
    else throw CLI::ValidationError("--opt", "unknown optimization '" + name + "'");
}

MinimizeOptions bench_default_opts() {
    MinimizeOptions opt;
    opt.reuse = true;
    opt.history = true;
    opt.smart_init = true;
    opt.fast_detect = true;
    opt.equiv_classes = true;
    return opt;
}

bool trace_enabled() {
    const char* v = std::getenv("OMEGA_REDUCE_TRACE");
    return v != nullptr && std::string(v) == "1";
}

BuchiAutomaton load_ba(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ba(buf.str());
}

std::string format_time(double seconds) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", seconds);
    return buf;
}

std::string stats_line(const MinimizeStats& s) {
    std::ostringstream out;
    out << "time_s=" << format_time(s.elapsed_seconds) << " Q=" << s.q_in
        << " Delta=" << s.delta_in << " V=" << s.game_vertices << " E=" << s.game_edges
        << " infinity=" << s.infinity_bound << " states_removed=" << s.states_removed
        << " transitions_removed=";
    if (s.transitions_removed)
        out << *s.transitions_removed;
    else
        out << "-";
    return out.str();
}

int cmd_minimize(const std::string& input, const std::string& output, const MinimizeConfig& cfg) {
    BuchiAutomaton a = load_ba(input);
    MinimizeResult res = minimize(a, cfg);
    if (res.automaton.state_count() == 0 && a.state_count() > 0)
        std::cerr << "warning: preprocessing emptied the automaton (no accepting run)\n";
    std::ofstream out(output, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << output << "'\n";
        return kExitInternal;
    }
    out << serialize_ba(res.automaton);
    std::cout << stats_line(res.stats) << "\n";
    return 0;
}

int cmd_generate(const GeneratorConfig& base, std::uint64_t count, const std::string& dir) {
    fs::create_directories(dir);
    for (std::uint64_t i = 0; i < count; ++i) {
        GeneratorConfig cfg = base;
        cfg.seed = base.seed + i;
        BuchiAutomaton a = random_automaton(cfg);
        fs::path file = fs::path(dir) / ("auto_" + std::to_string(base.seed) + "_" +
                                         std::to_string(i) + ".ba");
        std::ofstream out(file, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << file.string() << "'\n";
            return 1;
        }
        out << serialize_ba(a);
    }
    return 0;
}

struct BenchRow {
    std::string file;
    std::string method;
    MinimizeStats stats;
};

int cmd_bench(const std::string& dir, const std::vector<std::string>& methods,
              const std::string& csv_path, bool use_scc) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".ba") files.push_back(e.path());
    std::sort(files.begin(), files.end());

    std::vector<BenchRow> rows;
    bool any_failed = false;
    for (const auto& file : files) {
        for (const auto& method : methods) {
            try {
                BuchiAutomaton a = load_ba(file.string());
                MinimizeConfig cfg;
                cfg.method = parse_method(method);
                cfg.opt = bench_default_opts();
                cfg.opt.scc = use_scc;
                MinimizeResult res = minimize(a, cfg);
                rows.push_back({file.filename().string(), method, res.stats});
            } catch (const std::exception& e) {
                std::cerr << "error: " << file.string() << " [" << method << "]: " << e.what()
                          << "\n";
                any_failed = true;
            }
        }
    }

    std::ostringstream csv;
    csv << "file,method,time_s,Q,Delta,V,E,infinity,states_removed,transitions_removed\n";
    auto emit = [&](const BenchRow& r) {
        csv << r.file << ',' << r.method << ',' << format_time(r.stats.elapsed_seconds) << ','
            << r.stats.q_in << ',' << r.stats.delta_in << ',' << r.stats.game_vertices << ','
            << r.stats.game_edges << ',' << r.stats.infinity_bound << ','
            << r.stats.states_removed << ',';
        if (r.stats.transitions_removed) csv << *r.stats.transitions_removed;
        csv << '\n';
    };
    for (const auto& r : rows) emit(r);

    for (const auto& method : methods) {
        double time = 0, q = 0, d = 0, v = 0, e = 0, inf = 0, s = 0, t = 0;
        std::uint64_t n = 0, tn = 0;
        for (const auto& r : rows) {
            if (r.method != method) continue;
            ++n;
            time += r.stats.elapsed_seconds;
            q += r.stats.q_in;
            d += r.stats.delta_in;
            v += static_cast<double>(r.stats.game_vertices);
            e += static_cast<double>(r.stats.game_edges);
            inf += r.stats.infinity_bound;
            s += r.stats.states_removed;
            if (r.stats.transitions_removed) {
                t += *r.stats.transitions_removed;
                ++tn;
            }
        }
        if (n == 0) continue;
        auto mean = [&](double total, std::uint64_t cnt) {
            std::ostringstream o;
            o << (total / static_cast<double>(cnt));
            return o.str();
        };
        csv << "mean," << method << ',' << format_time(time / static_cast<double>(n)) << ','
            << mean(q, n) << ',' << mean(d, n) << ',' << mean(v, n) << ',' << mean(e, n) << ','
            << mean(inf, n) << ',' << mean(s, n) << ',';
        if (tn > 0) csv << mean(t, tn);
        csv << '\n';
    }

    std::ofstream out(csv_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << csv_path << "'\n";
        return 1;
    }
    out << csv.str();
    return any_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Buchi automaton reduction via simulation games"};
    app.require_subcommand(1);

    // minimize
    auto* mini = app.add_subcommand("minimize", "reduce one automaton");
    std::string method = "fair-direct";
    std::vector<std::string> opts;
    std::string preprocess = "dead-ends", mode = "sequential", input, output;
    mini->add_option("--method", method, "fair|fair-direct|direct|delayed");
    mini->add_option("--opt", opts, "scc|reuse|history|smart-init|fast-detect|equiv-classes|purge");
    mini->add_option("--preprocess", preprocess, "none|dead-ends|nonlive");
    mini->add_option("--mode", mode, "sequential|batch");
    mini->add_option("-i,--input", input, "input .ba file")->required();
    mini->add_option("-o,--output", output, "output .ba file")->required();

    // generate
    auto* gen = app.add_subcommand("generate", "write a random corpus");
    GeneratorConfig gcfg;
    std::uint64_t count = 1;
    std::string dir;
    gen->add_option("--states", gcfg.n_states, "number of states")->required();
    gen->add_option("--alphabet", gcfg.alphabet_size, "alphabet size")->required();
    gen->add_option("--final", gcfg.n_final, "number of final states")->required();
    gen->add_option("--totality", gcfg.totality, "fraction of covered (state,symbol) pairs")
        ->required();
    gen->add_option("--seed", gcfg.seed, "base seed")->required();
    gen->add_option("--count", count, "number of automata");
    gen->add_option("-d,--dir", dir, "output directory")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "run methods over a corpus, write CSV");
    std::string bench_dir, bench_methods = "fair-direct", csv_out;
    bool bench_scc = false;
    bench->add_option("-d,--dir", bench_dir, "corpus directory")->required();
    bench->add_option("--methods", bench_methods, "comma-separated method list");
    bench->add_option("-o,--output", csv_out, "CSV output path")->required();
    bench->add_flag("--scc", bench_scc, "enable SCC-local bounds");

    CLI11_PARSE(app, argc, argv);

    try {
        if (mini->parsed()) {
            MinimizeConfig cfg;
            cfg.method = parse_method(method);
            for (const auto& o : opts) apply_opt_flag(cfg.opt, o);
            if (preprocess == "none") cfg.preprocess = Preprocess::none;
            else if (preprocess == "dead-ends") cfg.preprocess = Preprocess::dead_ends;
            else if (preprocess == "nonlive") cfg.preprocess = Preprocess::nonlive;
            else throw CLI::ValidationError("--preprocess", "unknown value '" + preprocess + "'");
            if (mode == "sequential") cfg.mode = ApplicationMode::sequential;
            else if (mode == "batch") cfg.mode = ApplicationMode::batch;
            else throw CLI::ValidationError("--mode", "unknown value '" + mode + "'");
            if (trace_enabled()) cfg.solver_trace = &std::cerr;
            return cmd_minimize(input, output, cfg);
        }
        if (gen->parsed()) return cmd_generate(gcfg, count, dir);
        if (bench->parsed()) {
            std::vector<std::string> methods;
            std::stringstream ss(bench_methods);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) methods.push_back(item);
            return cmd_bench(bench_dir, methods, csv_out, bench_scc);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return 0;
}
