#pragma once

// Sense-tagged corpus model: line-format parsing, sense inventories and
// frequency statistics, and stratified cross-validation fold plans.
//
// Corpus file format (UTF-8, LF line endings):
//   - lines starting with '#' and blank lines are ignored
//   - an optional header, before any data line:  @word <lemma> [<pos>]
//   - data line:  <sense>\t<target_index>\t<form>/<pos> <form>/<pos> ...
// The last '/' of a token separates the surface form from its POS tag; the
// tag may be empty ("form/"). target_index is 0-based into the token list.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wsd {

class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct token {
    std::string form;  // never empty, no whitespace, no '/'
    std::string pos;   // may be empty

    bool operator==(const token&) const = default;
};

struct example {
    std::string sense;
    std::vector<token> tokens;
    std::size_t target_index = 0;

    const token& target() const { return tokens[target_index]; }

    bool operator==(const example&) const = default;
};

// One ambiguous word's labeled occurrences. The sense inventory is ordered by
// descending frequency with a lexicographic tie-break, so every downstream
// tie-break that says "inventory order" is deterministic.
class word_dataset {
public:
    word_dataset() = default;

    word_dataset(std::string lemma, std::string pos, std::vector<example> examples)
        : lemma_(std::move(lemma)), pos_(std::move(pos)), examples_(std::move(examples)) {
        rebuild_inventory();
    }

    const std::string& target_lemma() const { return lemma_; }
    const std::string& target_pos() const { return pos_; }
    const std::vector<example>& examples() const { return examples_; }
    std::size_t size() const { return examples_.size(); }

    const std::vector<std::string>& senses() const { return senses_; }
    const std::vector<std::size_t>& sense_counts() const { return counts_; }

    std::size_t sense_count(std::string_view sense) const {
        auto r = sense_rank(sense);
        return r ? counts_[*r] : 0;
    }

    // Position of a sense in the inventory; nullopt for unknown labels.
    std::optional<std::size_t> sense_rank(std::string_view sense) const {
        auto it = rank_.find(std::string(sense));
        if (it == rank_.end()) return std::nullopt;
        return it->second;
    }

    bool operator==(const word_dataset& other) const {
        return lemma_ == other.lemma_ && pos_ == other.pos_ && examples_ == other.examples_;
    }

private:
    void rebuild_inventory() {
        std::unordered_map<std::string, std::size_t> tally;
        for (const auto& ex : examples_) ++tally[ex.sense];
        senses_.clear();
        senses_.reserve(tally.size());
        for (const auto& [sense, n] : tally) senses_.push_back(sense);
        std::sort(senses_.begin(), senses_.end(), [&](const std::string& a, const std::string& b) {
            std::size_t na = tally[a], nb = tally[b];
            if (na != nb) return na > nb;
            return a < b;
        });
        counts_.clear();
        rank_.clear();
        for (std::size_t i = 0; i < senses_.size(); ++i) {
            counts_.push_back(tally[senses_[i]]);
            rank_[senses_[i]] = i;
        }
    }

    std::string lemma_;
    std::string pos_;
    std::vector<example> examples_;
    std::vector<std::string> senses_;
    std::vector<std::size_t> counts_;
    std::unordered_map<std::string, std::size_t> rank_;
};

namespace detail {

// Deterministic generator (splitmix64): identical sequences on every
// platform, unlike std::shuffle over a std:: engine.
class split_mix64 {
public:
    explicit split_mix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

template <typename T>
void shuffle(std::vector<T>& values, split_mix64& rng) {
    for (std::size_t i = values.size(); i > 1; --i)
        std::swap(values[i - 1], values[rng.below(i)]);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline token parse_token(std::string_view text, std::size_t line_no) {
    auto slash = text.rfind('/');
    if (slash == std::string_view::npos)
        throw parse_error(line_no, "token '" + std::string(text) + "' has no '/' separator");
    std::string_view form = text.substr(0, slash);
    std::string_view pos = text.substr(slash + 1);
    if (form.empty())
        throw parse_error(line_no, "token '" + std::string(text) + "' has an empty form");
    if (form.find('/') != std::string_view::npos)
        throw parse_error(line_no, "token form '" + std::string(form) + "' contains '/'");
    return token{std::string(form), std::string(pos)};
}

inline example parse_data_line(std::string_view line, std::size_t line_no) {
    auto tab1 = line.find('\t');
    auto tab2 = tab1 == std::string_view::npos ? std::string_view::npos : line.find('\t', tab1 + 1);
    if (tab1 == std::string_view::npos || tab2 == std::string_view::npos ||
        line.find('\t', tab2 + 1) != std::string_view::npos)
        throw parse_error(line_no, "expected exactly 3 tab-separated fields "
                                   "(<sense>\\t<target_index>\\t<tokens>)");
    std::string_view sense = line.substr(0, tab1);
    std::string_view index_field = line.substr(tab1 + 1, tab2 - tab1 - 1);
    std::string_view token_field = line.substr(tab2 + 1);
    if (sense.empty()) throw parse_error(line_no, "empty sense label");

    std::size_t target_index = 0;
    auto [ptr, ec] = std::from_chars(index_field.data(), index_field.data() + index_field.size(),
                                     target_index);
    if (ec != std::errc{} || ptr != index_field.data() + index_field.size())
        throw parse_error(line_no, "target index '" + std::string(index_field) +
                                   "' is not a non-negative integer");

    example ex;
    ex.sense = std::string(sense);
    ex.target_index = target_index;
    for (std::string_view t : split_ws(token_field)) ex.tokens.push_back(parse_token(t, line_no));
    if (target_index >= ex.tokens.size())
        throw parse_error(line_no, "target index " + std::to_string(target_index) +
                                   " out of range for " + std::to_string(ex.tokens.size()) +
                                   " tokens");
    return ex;
}

}  // namespace detail

inline word_dataset parse_corpus(std::istream& in) {
    std::string lemma;
    std::string pos;
    std::vector<example> examples;
    std::string line;
    std::size_t line_no = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line[0] == '@') {
            auto fields = detail::split_ws(line);
            if (fields[0] != "@word")
                throw parse_error(line_no, "unknown directive '" + std::string(fields[0]) + "'");
            if (!header_allowed)
                throw parse_error(line_no, "@word header must be the first non-comment line");
            if (fields.size() < 2 || fields.size() > 3)
                throw parse_error(line_no, "expected '@word <lemma> [<pos>]'");
            lemma = std::string(fields[1]);
            if (fields.size() == 3) pos = std::string(fields[2]);
            header_allowed = false;
            continue;
        }
        header_allowed = false;
        examples.push_back(detail::parse_data_line(line, line_no));
    }
    return word_dataset(std::move(lemma), std::move(pos), std::move(examples));
}

inline word_dataset parse_corpus_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_corpus(in);
}

inline void serialize_corpus(const word_dataset& dataset, std::ostream& out) {
    if (!dataset.target_lemma().empty()) {
        out << "@word " << dataset.target_lemma();
        if (!dataset.target_pos().empty()) out << ' ' << dataset.target_pos();
        out << '\n';
    }
    for (const auto& ex : dataset.examples()) {
        out << ex.sense << '\t' << ex.target_index << '\t';
        for (std::size_t i = 0; i < ex.tokens.size(); ++i) {
            if (i) out << ' ';
            out << ex.tokens[i].form << '/' << ex.tokens[i].pos;
        }
        out << '\n';
    }
}

inline std::string serialize_corpus(const word_dataset& dataset) {
    std::ostringstream out;
    serialize_corpus(dataset, out);
    return out.str();
}

// The majority sense and its share of the examples; inventory order already
// encodes the tie-break, so the first sense is the answer.
inline std::pair<std::string, double> most_frequent_sense(const word_dataset& dataset) {
    if (dataset.size() == 0)
        throw std::invalid_argument("most_frequent_sense: empty dataset");
    return {dataset.senses().front(),
            static_cast<double>(dataset.sense_counts().front()) / static_cast<double>(dataset.size())};
}

// Stratified fold assignment: example index -> fold index. Fold sizes differ
// by at most one, and so does every sense's per-fold count.
class fold_plan {
public:
    fold_plan(std::size_t fold_count, std::uint64_t seed, std::vector<std::uint32_t> assignment)
        : fold_count_(fold_count), seed_(seed), assignment_(std::move(assignment)) {}

    std::size_t fold_count() const { return fold_count_; }
    std::uint64_t seed() const { return seed_; }
    std::size_t size() const { return assignment_.size(); }
    std::uint32_t fold_of(std::size_t index) const { return assignment_.at(index); }
    const std::vector<std::uint32_t>& assignment() const { return assignment_; }

    std::vector<std::size_t> members(std::uint32_t fold) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < assignment_.size(); ++i)
            if (assignment_[i] == fold) out.push_back(i);
        return out;
    }

    std::vector<std::size_t> complement(std::uint32_t fold) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < assignment_.size(); ++i)
            if (assignment_[i] != fold) out.push_back(i);
        return out;
    }

    std::vector<std::size_t> fold_sizes() const {
        std::vector<std::size_t> sizes(fold_count_, 0);
        for (auto f : assignment_) ++sizes[f];
        return sizes;
    }

private:
    std::size_t fold_count_;
    std::uint64_t seed_;
    std::vector<std::uint32_t> assignment_;
};

// Per sense: shuffle that sense's examples, then deal them onto folds with a
// single rotating counter shared across senses. The shared counter keeps the
// total fold sizes balanced while each sense stays spread evenly.
inline fold_plan make_folds(const word_dataset& dataset, std::size_t fold_count,
                            std::uint64_t seed) {
    if (fold_count < 2)
        throw std::invalid_argument("make_folds: fold_count must be at least 2");
    if (dataset.size() < fold_count)
        throw std::invalid_argument("make_folds: dataset has fewer examples than folds");

    std::vector<std::vector<std::size_t>> by_sense(dataset.senses().size());
    for (std::size_t i = 0; i < dataset.size(); ++i)
        by_sense[*dataset.sense_rank(dataset.examples()[i].sense)].push_back(i);

    detail::split_mix64 rng(seed);
    std::vector<std::uint32_t> assignment(dataset.size(), 0);
    std::size_t next_fold = 0;
    for (auto& members : by_sense) {
        detail::shuffle(members, rng);
        for (std::size_t index : members) {
            assignment[index] = static_cast<std::uint32_t>(next_fold);
            next_fold = (next_fold + 1) % fold_count;
        }
    }
    return fold_plan(fold_count, seed, std::move(assignment));
}

}  // namespace wsd
