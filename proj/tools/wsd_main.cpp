// Command-line experiment runner: loads sense-tagged corpora (or generates
// synthetic ones), runs cross-validated classifier grids, and renders
// accuracy, significance and timing tables.

#include "wsd/wsd.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

struct loaded_word {
    std::string name;
    std::string path;
    wsd::word_dataset dataset;
    wsd::fold_plan folds{2, 0, {}};
};

std::string file_stem(const std::string& path) {
    auto slash = path.find_last_of('/');
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
    return name;
}

wsd::word_dataset load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    try {
        return wsd::parse_corpus(in);
    } catch (const wsd::parse_error& e) {
        throw std::runtime_error(path + ":" + std::to_string(e.line()) + ": " + e.what());
    }
}

std::vector<loaded_word> load_words(const std::vector<std::string>& paths, std::size_t folds,
                                    std::uint64_t seed) {
    if (paths.empty()) throw std::invalid_argument("no corpus files given (use --corpus)");
    std::vector<loaded_word> words;
    for (const auto& path : paths) {
        loaded_word w;
        w.path = path;
        w.dataset = load_corpus(path);
        w.name = w.dataset.target_lemma().empty() ? file_stem(path) : w.dataset.target_lemma();
        if (w.dataset.size() < folds)
            throw std::runtime_error(path + ": only " + std::to_string(w.dataset.size()) +
                                     " examples for " + std::to_string(folds) + " folds");
        w.folds = wsd::make_folds(w.dataset, folds, seed);
        words.push_back(std::move(w));
    }
    return words;
}

void run_parallel(std::vector<std::function<void()>>& tasks, unsigned jobs) {
    if (tasks.empty()) return;
    std::atomic<std::size_t> next{0};
    std::vector<std::string> errors(tasks.size());
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
            try {
                tasks[i]();
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs && t < tasks.size(); ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& err : errors)
        if (!err.empty()) throw std::runtime_error(err);
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error(out_path + ": cannot write file");
    out << text;
    std::cout << "wrote " << out_path << "\n";
}

std::string render(const wsd::text_table& table, const std::string& format) {
    return format == "csv" ? wsd::to_csv(table) : wsd::to_markdown(table);
}

struct common_options {
    std::vector<std::string> corpus;
    std::size_t folds = 10;
    std::uint64_t seed = 42;
    std::string format = "md";
    std::string out;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::string> open_class_tags = {"NN", "VB", "JJ", "RB"};

    wsd::feature_options feature_opts() const {
        wsd::feature_options opts;
        opts.open_class_prefixes = open_class_tags;
        return opts;
    }
};

void add_common(CLI::App* cmd, common_options& opts) {
    cmd->add_option("--corpus", opts.corpus, "corpus file(s), one word per file");
    cmd->add_option("--folds", opts.folds, "cross-validation folds")->capture_default_str();
    cmd->add_option("--seed", opts.seed, "fold/shuffle seed")->capture_default_str();
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"md", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", opts.out, "write the report to a file instead of stdout");
    cmd->add_option("--jobs", opts.jobs, "concurrent experiment cells")->capture_default_str();
    cmd->add_option("--open-class-tags", opts.open_class_tags,
                    "POS prefixes treated as content words")
        ->capture_default_str();
}

struct cell_flags {
    std::string classifier;
    std::string features;
    std::string metric = "hamming";
    int k = 1;
    bool example_weighting = false;
    bool attribute_weighting = false;
};

void add_cell_flags(CLI::App* cmd, cell_flags& flags) {
    cmd->add_option("--classifier", flags.classifier, "mfs|nb|pnb|eb|peb");
    cmd->add_option("--features", flags.features, "a|b-binary|b-positive");
    cmd->add_option("--metric", flags.metric, "hamming|mvdm")
        ->check(CLI::IsMember({"hamming", "mvdm"}));
    cmd->add_option("--k", flags.k, "number of nearest neighbours")->capture_default_str();
    cmd->add_flag("--example-weighting", flags.example_weighting,
                  "weight neighbour votes by closeness");
    cmd->add_flag("--attribute-weighting", flags.attribute_weighting,
                  "weight attributes by information-based relevance");
}

wsd::classifier_config cell_from_flags(const cell_flags& flags) {
    if (flags.classifier.empty())
        throw std::invalid_argument("no experiment cell given (use --classifier or --cell)");
    std::string spec = flags.classifier;
    if (!flags.features.empty()) spec += ":" + flags.features;
    spec += flags.metric == "mvdm" ? ",mv" : ",h";
    spec += ",k=" + std::to_string(flags.k);
    if (flags.example_weighting) spec += ",e";
    if (flags.attribute_weighting) spec += ",a";
    return wsd::parse_cell_spec(spec);
}

// Config-file values fill in whatever was not set on the command line.
void merge_config_file(const CLI::App* cmd, const std::string& path, common_options& opts,
                       std::vector<std::string>& cell_specs) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open config file");
    nlohmann::json cfg = nlohmann::json::parse(in);
    auto unset = [&](const std::string& flag) { return cmd->count(flag) == 0; };
    if (cfg.contains("corpus") && opts.corpus.empty())
        opts.corpus = cfg["corpus"].get<std::vector<std::string>>();
    if (cfg.contains("cells") && cell_specs.empty())
        cell_specs = cfg["cells"].get<std::vector<std::string>>();
    if (cfg.contains("folds") && unset("--folds")) opts.folds = cfg["folds"].get<std::size_t>();
    if (cfg.contains("seed") && unset("--seed")) opts.seed = cfg["seed"].get<std::uint64_t>();
    if (cfg.contains("format") && unset("--format")) opts.format = cfg["format"].get<std::string>();
    if (cfg.contains("out") && unset("--out")) opts.out = cfg["out"].get<std::string>();
    if (cfg.contains("jobs") && unset("--jobs")) opts.jobs = cfg["jobs"].get<unsigned>();
    if (cfg.contains("open_class_tags") && unset("--open-class-tags"))
        opts.open_class_tags = cfg["open_class_tags"].get<std::vector<std::string>>();
}

wsd::word_results make_row(const loaded_word& word) {
    wsd::word_results row;
    row.word = word.name;
    row.pos = word.dataset.target_pos();
    row.examples = word.dataset.size();
    row.mfs_share = wsd::most_frequent_sense(word.dataset).second;
    return row;
}

int command_run(const common_options& opts, const std::vector<std::string>& cell_specs,
                const cell_flags& flags, bool has_cells, bool sweep, const std::string& layout) {
    std::vector<wsd::classifier_config> cells;
    if (has_cells)
        for (const auto& spec : cell_specs) cells.push_back(wsd::parse_cell_spec(spec));
    else
        cells.push_back(cell_from_flags(flags));

    auto words = load_words(opts.corpus, opts.folds, opts.seed);
    auto fopts = opts.feature_opts();

    wsd::results_matrix matrix;
    for (const auto& cell : cells) {
        bool swept = sweep && (cell.kind == wsd::classifier_kind::eb ||
                               cell.kind == wsd::classifier_kind::peb);
        matrix.config_ids.push_back(swept ? cell.id_with_k("best*") : cell.id());
    }
    for (const auto& word : words) {
        auto row = make_row(word);
        row.cells.resize(cells.size());
        matrix.rows.push_back(std::move(row));
    }

    std::vector<std::function<void()>> tasks;
    for (std::size_t w = 0; w < words.size(); ++w) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            tasks.push_back([&, w, c] {
                const auto& word = words[w];
                const auto& cell = cells[c];
                bool swept = sweep && (cell.kind == wsd::classifier_kind::eb ||
                                       cell.kind == wsd::classifier_kind::peb);
                if (swept) {
                    auto result = wsd::sweep_k(word.dataset, word.folds, cell,
                                               wsd::default_k_sweep, fopts);
                    for (std::size_t i = 0; i < wsd::default_k_sweep.size(); ++i)
                        if (wsd::default_k_sweep[i] == result.best_k)
                            matrix.rows[w].cells[c] = result.per_k[i];
                    matrix.rows[w].cells[c].config_id = matrix.config_ids[c];
                } else {
                    matrix.rows[w].cells[c] =
                        wsd::cross_validate(word.dataset, word.folds, cell, fopts);
                }
            });
        }
    }
    run_parallel(tasks, opts.jobs);

    auto table = layout == "pos" ? wsd::build_pos_table(matrix) : wsd::build_word_table(matrix);
    write_output(render(table, opts.format), opts.out);
    return 0;
}

int command_sweep(const common_options& opts, const std::string& cell_spec,
                  const cell_flags& flags, std::vector<int> ks, bool inner_cv) {
    wsd::classifier_config cell =
        cell_spec.empty() ? cell_from_flags(flags) : wsd::parse_cell_spec(cell_spec);
    if (cell.kind != wsd::classifier_kind::eb && cell.kind != wsd::classifier_kind::peb)
        throw std::invalid_argument("sweep-k applies to eb/peb cells only");
    if (ks.empty()) ks.assign(wsd::default_k_sweep.begin(), wsd::default_k_sweep.end());

    auto words = load_words(opts.corpus, opts.folds, opts.seed);
    auto fopts = opts.feature_opts();

    std::vector<std::string> names;
    std::vector<wsd::sweep_result> sweeps(words.size());
    std::vector<std::function<void()>> tasks;
    for (std::size_t w = 0; w < words.size(); ++w) {
        names.push_back(words[w].name);
        tasks.push_back([&, w] {
            sweeps[w] = wsd::sweep_k(words[w].dataset, words[w].folds, cell, ks, fopts);
        });
    }
    run_parallel(tasks, opts.jobs);

    std::string text = render(wsd::build_sweep_table(names, ks, sweeps), opts.format);
    text += "\nbest-k is selected on the test folds (post-hoc, optimistic)\n";

    if (inner_cv) {
        wsd::text_table t;
        t.header = {"Word", cell.id_with_k("cv"), "chosen k per fold"};
        for (std::size_t w = 0; w < words.size(); ++w) {
            auto report =
                wsd::cross_validate_inner_k(words[w].dataset, words[w].folds, cell, ks, 5, fopts);
            std::string chosen;
            for (std::size_t f = 0; f < report.inner_chosen_k.size(); ++f) {
                if (f) chosen += ' ';
                chosen += std::to_string(report.inner_chosen_k[f]);
            }
            t.rows.push_back({names[w], wsd::format_pct(report.mean_accuracy), chosen});
        }
        text += "\nunbiased estimate (k chosen by inner cross-validation on training folds):\n";
        text += render(t, opts.format);
    }
    write_output(text, opts.out);
    return 0;
}

int command_compare(const common_options& opts, const std::string& spec_a,
                    const std::string& spec_b, double threshold) {
    auto cfg_a = wsd::parse_cell_spec(spec_a);
    auto cfg_b = wsd::parse_cell_spec(spec_b);
    auto words = load_words(opts.corpus, opts.folds, opts.seed);
    auto fopts = opts.feature_opts();

    std::vector<wsd::compare_row> rows(words.size());
    std::vector<std::function<void()>> tasks;
    for (std::size_t w = 0; w < words.size(); ++w) {
        tasks.push_back([&, w] {
            auto ra = wsd::cross_validate(words[w].dataset, words[w].folds, cfg_a, fopts);
            auto rb = wsd::cross_validate(words[w].dataset, words[w].folds, cfg_b, fopts);
            rows[w] = {words[w].name, ra.mean_accuracy, rb.mean_accuracy,
                       wsd::paired_t_test(ra.fold_accuracies, rb.fold_accuracies, threshold)};
        });
    }
    run_parallel(tasks, opts.jobs);
    write_output(render(wsd::build_compare_table(cfg_a.id(), cfg_b.id(), rows), opts.format),
                 opts.out);
    return 0;
}

int command_time(const common_options& opts, const std::vector<std::string>& cell_specs,
                 const cell_flags& flags, bool has_cells) {
    std::vector<wsd::classifier_config> cells;
    if (has_cells)
        for (const auto& spec : cell_specs) cells.push_back(wsd::parse_cell_spec(spec));
    else
        cells.push_back(cell_from_flags(flags));

    auto words = load_words(opts.corpus, opts.folds, opts.seed);
    auto fopts = opts.feature_opts();

    // Timing runs are kept sequential so the measurements do not contend.
    std::vector<wsd::timing_row> rows;
    for (const auto& word : words)
        for (const auto& cell : cells)
            rows.push_back(
                {word.name, cell.id(), wsd::time_config(word.dataset, word.folds, cell, fopts)});
    write_output(render(wsd::build_timing_table(rows), opts.format), opts.out);
    return 0;
}

int command_gen(const std::string& signal, int senses, int examples, int vocab, double noise,
                int pool, const std::string& lemma, const std::string& pos, std::uint64_t seed,
                const std::string& out_path) {
    wsd::synthetic_spec spec;
    if (signal == "collocational") spec.signal = wsd::synthetic_signal::collocational;
    else if (signal == "broad-context") spec.signal = wsd::synthetic_signal::broad_context;
    else if (signal == "length-confounded") spec.signal = wsd::synthetic_signal::length_confounded;
    else throw std::invalid_argument("unknown signal type '" + signal + "'");
    spec.senses = senses;
    spec.examples = examples;
    spec.vocab = vocab;
    spec.noise = noise;
    spec.signal_pool = pool;
    spec.lemma = lemma;
    spec.pos = pos;

    auto dataset = wsd::generate_synthetic(spec, seed);
    if (out_path.empty() || out_path == "-") {
        wsd::serialize_corpus(dataset, std::cout);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error(out_path + ": cannot write file");
        wsd::serialize_corpus(dataset, out);
        std::cout << "wrote " << out_path << " (" << dataset.size() << " examples, "
                  << dataset.senses().size() << " senses)\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"word-sense disambiguation experiment runner"};
    app.require_subcommand(1);

    // run
    common_options run_opts;
    std::vector<std::string> run_cells;
    cell_flags run_flags;
    std::string run_config_path;
    std::string run_layout = "words";
    bool run_sweep = false;
    auto* run_cmd = app.add_subcommand("run", "cross-validate a grid of configurations");
    add_common(run_cmd, run_opts);
    add_cell_flags(run_cmd, run_flags);
    run_cmd->add_option("--cell", run_cells, "experiment cell spec (repeatable), e.g. eb:a,h,k=7,e");
    run_cmd->add_option("--config", run_config_path, "JSON config file; flags override it");
    run_cmd->add_option("--layout", run_layout, "words: per-word rows; pos: averages only")
        ->check(CLI::IsMember({"words", "pos"}))
        ->capture_default_str();
    run_cmd->add_flag("--sweep", run_sweep, "report the best k of the default sweep per eb/peb cell");

    // sweep-k
    common_options sweep_opts;
    cell_flags sweep_flags;
    std::string sweep_cell;
    std::vector<int> sweep_ks;
    bool sweep_inner = false;
    auto* sweep_cmd = app.add_subcommand("sweep-k", "accuracy per neighbourhood size");
    add_common(sweep_cmd, sweep_opts);
    add_cell_flags(sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--cell", sweep_cell, "eb/peb cell spec");
    sweep_cmd->add_option("--ks", sweep_ks, "k values (default: 1 3 5 7 10 15 20 25)");
    sweep_cmd->add_flag("--inner-cv", sweep_inner,
                        "also report the unbiased estimate with k chosen on training folds");

    // compare
    common_options cmp_opts;
    std::string cmp_a, cmp_b;
    double cmp_threshold = wsd::default_t_threshold;
    auto* cmp_cmd = app.add_subcommand("compare", "paired t-test between two configurations");
    add_common(cmp_cmd, cmp_opts);
    cmp_cmd->add_option("--a", cmp_a, "first cell spec")->required();
    cmp_cmd->add_option("--b", cmp_b, "second cell spec")->required();
    cmp_cmd->add_option("--threshold", cmp_threshold, "significance threshold for |t|")
        ->capture_default_str();

    // time
    common_options time_opts;
    std::vector<std::string> time_cells;
    cell_flags time_flags;
    auto* time_cmd = app.add_subcommand("time", "training/classification wall-clock per cell");
    add_common(time_cmd, time_opts);
    add_cell_flags(time_cmd, time_flags);
    time_cmd->add_option("--cell", time_cells, "experiment cell spec (repeatable)");

    // gen
    std::string gen_signal = "collocational";
    int gen_senses = 2, gen_examples = 500, gen_vocab = 300, gen_pool = 16;
    double gen_noise = 0.0;
    std::string gen_lemma = "synth", gen_pos = "n", gen_out;
    std::uint64_t gen_seed = 42;
    auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic corpus");
    gen_cmd->add_option("--signal", gen_signal, "collocational|broad-context|length-confounded")
        ->capture_default_str();
    gen_cmd->add_option("--senses", gen_senses, "")->capture_default_str();
    gen_cmd->add_option("--examples", gen_examples, "")->capture_default_str();
    gen_cmd->add_option("--vocab", gen_vocab, "content-word vocabulary size")->capture_default_str();
    gen_cmd->add_option("--noise", gen_noise, "")->capture_default_str();
    gen_cmd->add_option("--pool", gen_pool, "signal words reserved per sense")->capture_default_str();
    gen_cmd->add_option("--lemma", gen_lemma, "")->capture_default_str();
    gen_cmd->add_option("--pos", gen_pos, "n|v")->capture_default_str();
    gen_cmd->add_option("--seed", gen_seed, "")->capture_default_str();
    gen_cmd->add_option("--out", gen_out, "output path ('-' for stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            if (!run_config_path.empty())
                merge_config_file(run_cmd, run_config_path, run_opts, run_cells);
            return command_run(run_opts, run_cells, run_flags, !run_cells.empty(), run_sweep,
                               run_layout);
        }
        if (sweep_cmd->parsed())
            return command_sweep(sweep_opts, sweep_cell, sweep_flags, sweep_ks, sweep_inner);
        if (cmp_cmd->parsed()) return command_compare(cmp_opts, cmp_a, cmp_b, cmp_threshold);
        if (time_cmd->parsed()) return command_time(time_opts, time_cells, time_flags,
                                                    !time_cells.empty());
        if (gen_cmd->parsed())
            return command_gen(gen_signal, gen_senses, gen_examples, gen_vocab, gen_noise,
                               gen_pool, gen_lemma, gen_pos, gen_seed, gen_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
