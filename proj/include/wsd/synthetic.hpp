#pragma once

// Seeded synthetic corpora. Three signal layouts:
//
//   collocational      the tokens adjacent to the target determine the sense
//                      (one cue word pair per sense);
//   broad-context      a per-sense pool of content words carries the signal,
//                      sentence lengths are uniform;
//   length-confounded  the same broad-context signal, but sentence length
//                      correlates with the sense, which biases any
//                      similarity that rewards shared absences toward the
//                      shortest training sentences.
//
// Identical spec and seed always produce an identical dataset.

#include "wsd/corpus.hpp"

#include <cstdio>

namespace wsd {

enum class synthetic_signal { collocational, broad_context, length_confounded };

inline std::string_view to_string(synthetic_signal s) {
    switch (s) {
        case synthetic_signal::collocational: return "collocational";
        case synthetic_signal::broad_context: return "broad-context";
        default: return "length-confounded";
    }
}

struct synthetic_spec {
    synthetic_signal signal = synthetic_signal::collocational;
    int senses = 2;
    int examples = 500;
    int vocab = 300;        // content-word vocabulary; the first senses*signal_pool are per-sense pools
    double noise = 0.0;     // probability that a sense-driven token is replaced by a random filler
    int signal_pool = 16;
    std::string lemma = "synth";
    std::string pos = "n";

    void validate() const {
        if (senses < 2 || senses > 99) throw std::invalid_argument("synthetic: senses must be in [2,99]");
        if (examples < senses) throw std::invalid_argument("synthetic: need at least one example per sense");
        if (signal_pool < 1) throw std::invalid_argument("synthetic: signal_pool must be positive");
        if (vocab < senses * signal_pool + 10)
            throw std::invalid_argument("synthetic: vocabulary too small for the signal pools");
        if (noise < 0.0 || noise > 1.0) throw std::invalid_argument("synthetic: noise must be in [0,1]");
    }
};

namespace detail {

inline std::string padded_name(const char* prefix, int index, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%0*d", prefix, width, index);
    return buf;
}

}  // namespace detail

inline word_dataset generate_synthetic(const synthetic_spec& spec, std::uint64_t seed) {
    spec.validate();
    detail::split_mix64 rng(seed);

    std::vector<std::string> words;
    words.reserve(static_cast<std::size_t>(spec.vocab));
    for (int i = 0; i < spec.vocab; ++i) words.push_back(detail::padded_name("w", i, 5));
    const int pool_base = 0;                              // pool s: [s*P, (s+1)*P)
    const int filler_base = spec.senses * spec.signal_pool;
    const int filler_count = spec.vocab - filler_base;

    auto filler = [&]() -> const std::string& {
        return words[static_cast<std::size_t>(filler_base + static_cast<int>(rng.below(filler_count)))];
    };
    auto pool_word = [&](int sense) -> const std::string& {
        int at = pool_base + sense * spec.signal_pool + static_cast<int>(rng.below(spec.signal_pool));
        return words[static_cast<std::size_t>(at)];
    };
    auto noisy = [&](std::string chosen) -> std::string {
        if (spec.noise > 0.0 && rng.unit() < spec.noise) return filler();
        return chosen;
    };
    // Sense draw skewed toward low ranks: weight of sense s is (senses - s).
    const int weight_total = spec.senses * (spec.senses + 1) / 2;
    auto draw_sense = [&]() {
        int ticket = static_cast<int>(rng.below(weight_total));
        for (int s = 0; s < spec.senses; ++s) {
            ticket -= spec.senses - s;
            if (ticket < 0) return s;
        }
        return spec.senses - 1;
    };

    const std::string target_pos = spec.pos == "v" ? "VB" : "NN";
    std::vector<example> examples;
    examples.reserve(static_cast<std::size_t>(spec.examples));
    for (int e = 0; e < spec.examples; ++e) {
        int sense = draw_sense();
        example ex;
        ex.sense = detail::padded_name("s", sense, 2);

        int length = 12;
        std::size_t target_index = 5;
        if (spec.signal == synthetic_signal::length_confounded) {
            length = 10 + 24 * sense / (spec.senses - 1) + static_cast<int>(rng.below(5)) - 2;
            target_index = static_cast<std::size_t>(length / 2);
        }
        ex.target_index = target_index;
        ex.tokens.resize(static_cast<std::size_t>(length));
        for (int i = 0; i < length; ++i) {
            if (static_cast<std::size_t>(i) == target_index)
                ex.tokens[static_cast<std::size_t>(i)] = {spec.lemma, target_pos};
            else
                ex.tokens[static_cast<std::size_t>(i)] = {filler(), "NN"};
        }

        if (spec.signal == synthetic_signal::collocational) {
            ex.tokens[target_index - 1].form = noisy(detail::padded_name("leftcue", sense, 2));
            ex.tokens[target_index + 1].form = noisy(detail::padded_name("rightcue", sense, 2));
        } else {
            const int signal_words = spec.signal == synthetic_signal::broad_context ? 6 : 8;
            // Distinct non-target positions, chosen deterministically.
            std::vector<std::size_t> positions;
            positions.reserve(static_cast<std::size_t>(length) - 1);
            for (int i = 0; i < length; ++i)
                if (static_cast<std::size_t>(i) != target_index)
                    positions.push_back(static_cast<std::size_t>(i));
            detail::shuffle(positions, rng);
            for (int j = 0; j < signal_words && j < static_cast<int>(positions.size()); ++j)
                ex.tokens[positions[static_cast<std::size_t>(j)]].form = noisy(pool_word(sense));
        }
        examples.push_back(std::move(ex));
    }
    return word_dataset(spec.lemma, spec.pos, std::move(examples));
}

}  // namespace wsd
