#pragma once

// Result tables. The word table lists one row per word and one column per
// configuration, followed by noun/verb/all average rows; the POS table keeps
// only the averages. Micro averages weight words by example count, macro
// averages weight words equally; both are emitted, labeled. Accuracies are
// rendered as percentages with one decimal.

#include "wsd/evaluation.hpp"

#include <cstdio>

namespace wsd {

struct word_results {
    std::string word;
    std::string pos;            // "n", "v", or anything else (grouped under "all" only)
    std::size_t examples = 0;
    double mfs_share = 0;       // majority-sense proportion of the full dataset
    std::vector<eval_report> cells;
};

struct results_matrix {
    std::vector<std::string> config_ids;
    std::vector<word_results> rows;
};

struct text_table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline std::string format_pct(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", fraction * 100.0);
    return buf;
}

inline std::string format_seconds(double seconds) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", seconds);
    return buf;
}

inline std::string to_markdown(const text_table& t) {
    std::string out = "|";
    for (const auto& h : t.header) out += " " + h + " |";
    out += "\n|";
    for (std::size_t i = 0; i < t.header.size(); ++i) out += "---|";
    out += "\n";
    for (const auto& row : t.rows) {
        out += "|";
        for (const auto& cell : row) out += " " + cell + " |";
        out += "\n";
    }
    return out;
}

inline std::string to_csv(const text_table& t) {
    auto field = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        quoted += '"';
        return quoted;
    };
    std::string out;
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += field(row[i]);
        }
        out += '\n';
    };
    emit(t.header);
    for (const auto& row : t.rows) emit(row);
    return out;
}

namespace detail {

inline char pos_group(std::string_view pos) {
    std::string lower = ascii_lower(pos);
    if (lower == "n" || lower == "noun") return 'n';
    if (lower == "v" || lower == "verb") return 'v';
    return '?';
}

struct group_average {
    std::string label;
    std::vector<double> values;  // mfs column first, then one per config
    std::size_t examples = 0;
    bool micro = false;
};

inline std::vector<group_average> compute_averages(const results_matrix& m) {
    std::vector<group_average> out;
    auto add_group = [&](const std::string& name, char group) {
        std::vector<const word_results*> members;
        for (const auto& row : m.rows)
            if (group == '*' || pos_group(row.pos) == group) members.push_back(&row);
        if (members.empty()) return;
        const std::size_t cols = m.config_ids.size() + 1;
        group_average micro{name + " (micro)", std::vector<double>(cols, 0.0), 0, true};
        group_average macro{name + " (macro)", std::vector<double>(cols, 0.0), 0, false};
        double total = 0;
        for (const auto* row : members) {
            double n = static_cast<double>(row->examples);
            total += n;
            micro.examples += row->examples;
            micro.values[0] += row->mfs_share * n;
            macro.values[0] += row->mfs_share;
            for (std::size_t c = 0; c < m.config_ids.size(); ++c) {
                micro.values[c + 1] += row->cells[c].mean_accuracy * n;
                macro.values[c + 1] += row->cells[c].mean_accuracy;
            }
        }
        for (double& v : micro.values) v /= total;
        for (double& v : macro.values) v /= static_cast<double>(members.size());
        out.push_back(std::move(micro));
        out.push_back(std::move(macro));
    };
    add_group("avg-nouns", 'n');
    add_group("avg-verbs", 'v');
    add_group("avg-all", '*');
    return out;
}

}  // namespace detail

inline text_table build_word_table(const results_matrix& m) {
    text_table t;
    t.header = {"Word", "POS", "Exs", "MFS"};
    for (const auto& id : m.config_ids) t.header.push_back(id);
    for (const auto& row : m.rows) {
        std::vector<std::string> cells = {row.word, row.pos, std::to_string(row.examples),
                                          format_pct(row.mfs_share)};
        for (const auto& cell : row.cells) cells.push_back(format_pct(cell.mean_accuracy));
        t.rows.push_back(std::move(cells));
    }
    for (const auto& avg : detail::compute_averages(m)) {
        std::vector<std::string> cells = {avg.label, "",
                                          avg.micro ? std::to_string(avg.examples) : ""};
        for (double v : avg.values) cells.push_back(format_pct(v));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

inline text_table build_pos_table(const results_matrix& m) {
    text_table t;
    t.header = {"Group", "Exs", "MFS"};
    for (const auto& id : m.config_ids) t.header.push_back(id);
    for (const auto& avg : detail::compute_averages(m)) {
        std::vector<std::string> cells = {avg.label,
                                          avg.micro ? std::to_string(avg.examples) : ""};
        for (double v : avg.values) cells.push_back(format_pct(v));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

struct compare_row {
    std::string word;
    double accuracy_a = 0;
    double accuracy_b = 0;
    significance_result test;
};

inline text_table build_compare_table(const std::string& id_a, const std::string& id_b,
                                      const std::vector<compare_row>& rows) {
    text_table t;
    t.header = {"Word", id_a, id_b, "diff", "t", "df", "threshold", "significant"};
    for (const auto& row : rows) {
        char tbuf[32];
        std::snprintf(tbuf, sizeof tbuf, "%.4f", row.test.t_statistic);
        char thbuf[32];
        std::snprintf(thbuf, sizeof thbuf, "%.3f", row.test.threshold);
        t.rows.push_back({row.word, format_pct(row.accuracy_a), format_pct(row.accuracy_b),
                          format_pct(row.accuracy_a - row.accuracy_b), tbuf,
                          std::to_string(row.test.degrees_of_freedom), thbuf,
                          row.test.significant ? "yes" : "no"});
    }
    return t;
}

inline text_table build_sweep_table(const std::vector<std::string>& words,
                                    std::span<const int> ks,
                                    const std::vector<sweep_result>& sweeps) {
    text_table t;
    t.header = {"Word"};
    for (int k : ks) t.header.push_back("k=" + std::to_string(k));
    t.header.push_back("best-k (post-hoc, optimistic)");
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::vector<std::string> cells = {words[w]};
        for (const auto& report : sweeps[w].per_k) cells.push_back(format_pct(report.mean_accuracy));
        cells.push_back(std::to_string(sweeps[w].best_k));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

struct timing_row {
    std::string word;
    std::string config_id;
    phase_times times;
};

inline text_table build_timing_table(const std::vector<timing_row>& rows) {
    text_table t;
    t.header = {"Word", "Config", "train (s)", "classify (s)"};
    for (const auto& row : rows)
        t.rows.push_back({row.word, row.config_id, format_seconds(row.times.train_seconds),
                          format_seconds(row.times.classify_seconds)});
    return t;
}

}  // namespace wsd
