#pragma once

// Attribute extraction. Two attribute sets over the sentence context
// "... w-3 w-2 w-1 [target] w+1 w+2 w+3 ...":
//
//   set-a  (7 symbolic):  w-2, w-1, w+1, w+2, (w-2,w-1), (w-1,w+1), (w+1,w+2)
//   set-b  (15 symbolic): w-1, w+1, (w-2,w-1), (w-1,w+1), (w+1,w+2),
//                         (w-3,w-2,w-1), (w-2,w-1,w+1), (w-1,w+1,w+2),
//                         (w+1,w+2,w+3), p-3, p-2, p-1, p+1, p+2, p+3
//                         ... plus broad context, encoded either as one
//                         presence flag per vocabulary word ("binary") or as
//                         the set of content words present ("positive").
//
// Positions beyond the sentence take the out-of-sentence value, rendered
// "__"; a collocation slot beyond the sentence renders "__" inside the
// joined value.

#include "wsd/corpus.hpp"

#include <cctype>
#include <cstdint>
#include <span>
#include <unordered_set>

namespace wsd {

enum class schema_kind { set_a, set_b_binary, set_b_positive };

inline std::string_view to_string(schema_kind kind) {
    switch (kind) {
        case schema_kind::set_a: return "set-a";
        case schema_kind::set_b_binary: return "set-b-binary";
        default: return "set-b-positive";
    }
}

struct attribute_value {
    bool out_of_sentence = false;
    std::string text;

    static attribute_value boundary() { return {true, {}}; }
    static attribute_value symbol(std::string s) { return {false, std::move(s)}; }

    // "__" marks out-of-sentence positions; a literal token "__" stays a
    // distinct symbol even though it renders the same.
    std::string display() const { return out_of_sentence ? "__" : text; }

    bool operator==(const attribute_value&) const = default;
};

// Sorted, duplicate-free, lowercased content words.
using word_set = std::vector<std::string>;

struct feature_options {
    std::string collocation_sep = "\xc2\xb7";  // "·"; reserved, must not occur in token forms
    std::vector<std::string> open_class_prefixes = {"NN", "VB", "JJ", "RB"};
};

inline bool is_open_class(std::string_view pos, const std::vector<std::string>& prefixes) {
    for (const auto& prefix : prefixes)
        if (pos.substr(0, prefix.size()) == prefix) return true;
    return false;
}

inline std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// Content-word forms observed in a training split, in lexicographic order.
// Built from training examples only so that test sentences cannot leak words
// into the feature space.
class vocabulary {
public:
    vocabulary() = default;

    explicit vocabulary(std::vector<std::string> sorted_words) : words_(std::move(sorted_words)) {
        for (std::uint32_t i = 0; i < words_.size(); ++i) index_[words_[i]] = i;
    }

    std::size_t size() const { return words_.size(); }
    const std::vector<std::string>& words() const { return words_; }

    std::optional<std::uint32_t> index_of(std::string_view word) const {
        auto it = index_.find(std::string(word));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool contains(std::string_view word) const { return index_.count(std::string(word)) > 0; }

private:
    std::vector<std::string> words_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

inline vocabulary build_vocabulary(std::span<const example* const> training,
                                   const std::vector<std::string>& open_class_prefixes = {
                                       "NN", "VB", "JJ", "RB"}) {
    if (training.empty()) throw std::invalid_argument("build_vocabulary: no training examples");
    std::unordered_set<std::string> seen;
    for (const example* ex : training) {
        for (std::size_t i = 0; i < ex->tokens.size(); ++i) {
            if (i == ex->target_index) continue;  // the target itself carries no signal
            if (!is_open_class(ex->tokens[i].pos, open_class_prefixes)) continue;
            seen.insert(ascii_lower(ex->tokens[i].form));
        }
    }
    std::vector<std::string> words(seen.begin(), seen.end());
    std::sort(words.begin(), words.end());
    return vocabulary(std::move(words));
}

inline vocabulary build_vocabulary(const std::vector<example>& training,
                                   const std::vector<std::string>& open_class_prefixes = {
                                       "NN", "VB", "JJ", "RB"}) {
    std::vector<const example*> ptrs;
    ptrs.reserve(training.size());
    for (const auto& ex : training) ptrs.push_back(&ex);
    return build_vocabulary(std::span<const example* const>(ptrs), open_class_prefixes);
}

struct feature_vector {
    schema_kind schema = schema_kind::set_a;
    std::vector<attribute_value> symbolic;
    word_set context;                     // set-b-positive only
    std::vector<std::uint8_t> presence;   // set-b-binary only, one flag per vocabulary word

    std::size_t attribute_count() const { return symbolic.size() + presence.size(); }
};

inline constexpr std::size_t set_a_attribute_count = 7;
inline constexpr std::size_t set_b_symbolic_count = 15;

namespace detail {

inline attribute_value word_at(const example& ex, long offset) {
    long pos = static_cast<long>(ex.target_index) + offset;
    if (pos < 0 || pos >= static_cast<long>(ex.tokens.size())) return attribute_value::boundary();
    return attribute_value::symbol(ex.tokens[static_cast<std::size_t>(pos)].form);
}

inline attribute_value pos_at(const example& ex, long offset) {
    long pos = static_cast<long>(ex.target_index) + offset;
    if (pos < 0 || pos >= static_cast<long>(ex.tokens.size())) return attribute_value::boundary();
    return attribute_value::symbol(ex.tokens[static_cast<std::size_t>(pos)].pos);
}

inline attribute_value collocation(const example& ex, std::initializer_list<long> offsets,
                                   const std::string& sep) {
    std::string joined;
    bool first = true;
    for (long off : offsets) {
        if (!first) joined += sep;
        joined += word_at(ex, off).display();
        first = false;
    }
    return attribute_value::symbol(std::move(joined));
}

}  // namespace detail

inline feature_vector extract_set_a(const example& ex, const feature_options& opts = {}) {
    const std::string& sep = opts.collocation_sep;
    feature_vector fv;
    fv.schema = schema_kind::set_a;
    fv.symbolic = {
        detail::word_at(ex, -2),
        detail::word_at(ex, -1),
        detail::word_at(ex, +1),
        detail::word_at(ex, +2),
        detail::collocation(ex, {-2, -1}, sep),
        detail::collocation(ex, {-1, +1}, sep),
        detail::collocation(ex, {+1, +2}, sep),
    };
    return fv;
}

enum class set_b_mode { binary, positive };

inline feature_vector extract_set_b(const example& ex, const vocabulary& vocab, set_b_mode mode,
                                    const feature_options& opts = {}) {
    const std::string& sep = opts.collocation_sep;
    feature_vector fv;
    fv.schema = mode == set_b_mode::binary ? schema_kind::set_b_binary : schema_kind::set_b_positive;
    fv.symbolic = {
        detail::word_at(ex, -1),
        detail::word_at(ex, +1),
        detail::collocation(ex, {-2, -1}, sep),
        detail::collocation(ex, {-1, +1}, sep),
        detail::collocation(ex, {+1, +2}, sep),
        detail::collocation(ex, {-3, -2, -1}, sep),
        detail::collocation(ex, {-2, -1, +1}, sep),
        detail::collocation(ex, {-1, +1, +2}, sep),
        detail::collocation(ex, {+1, +2, +3}, sep),
        detail::pos_at(ex, -3),
        detail::pos_at(ex, -2),
        detail::pos_at(ex, -1),
        detail::pos_at(ex, +1),
        detail::pos_at(ex, +2),
        detail::pos_at(ex, +3),
    };

    if (mode == set_b_mode::binary) {
        // One flag per vocabulary word: scan the vocabulary and test each
        // word against the sentence's content words.
        std::unordered_set<std::string> present;
        for (std::size_t i = 0; i < ex.tokens.size(); ++i) {
            if (i == ex.target_index) continue;
            if (!is_open_class(ex.tokens[i].pos, opts.open_class_prefixes)) continue;
            present.insert(ascii_lower(ex.tokens[i].form));
        }
        fv.presence.resize(vocab.size(), 0);
        for (std::size_t j = 0; j < vocab.size(); ++j)
            fv.presence[j] = present.count(vocab.words()[j]) ? 1 : 0;
    } else {
        // The set of content words present, restricted to the vocabulary.
        for (std::size_t i = 0; i < ex.tokens.size(); ++i) {
            if (i == ex.target_index) continue;
            if (!is_open_class(ex.tokens[i].pos, opts.open_class_prefixes)) continue;
            std::string w = ascii_lower(ex.tokens[i].form);
            if (vocab.contains(w)) fv.context.push_back(std::move(w));
        }
        std::sort(fv.context.begin(), fv.context.end());
        fv.context.erase(std::unique(fv.context.begin(), fv.context.end()), fv.context.end());
    }
    return fv;
}

}  // namespace wsd
