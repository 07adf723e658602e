#pragma once

// Deterministic random generators shared by the test suites.

#include "wsd/wsd.hpp"

#include <string>
#include <vector>

namespace testgen {

using rng_t = wsd::detail::split_mix64;

inline wsd::attribute_value random_value(rng_t& rng, int alphabet, int boundary_odds = 10) {
    if (boundary_odds > 0 && rng.below(static_cast<std::uint64_t>(boundary_odds)) == 0)
        return wsd::attribute_value::boundary();
    return wsd::attribute_value::symbol("v" + std::to_string(rng.below(alphabet)));
}

inline wsd::feature_vector random_symbolic_vector(rng_t& rng, std::size_t attrs, int alphabet) {
    wsd::feature_vector fv;
    fv.schema = wsd::schema_kind::set_a;
    for (std::size_t a = 0; a < attrs; ++a) fv.symbolic.push_back(random_value(rng, alphabet));
    return fv;
}

inline std::vector<wsd::labeled_vector> random_training(rng_t& rng, std::size_t n,
                                                        std::size_t attrs, int alphabet,
                                                        int senses) {
    std::vector<wsd::labeled_vector> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back({random_symbolic_vector(rng, attrs, alphabet),
                       "s" + std::to_string(rng.below(senses))});
    return out;
}

// Random sentences with a mix of open- and closed-class tags.
inline wsd::word_dataset random_dataset(rng_t& rng, std::size_t examples, int senses, int vocab,
                                        std::size_t min_len = 5, std::size_t max_len = 12) {
    static const char* tags[] = {"NN", "VBD", "JJ", "RB", "DT", "IN"};
    std::vector<wsd::example> exs;
    for (std::size_t i = 0; i < examples; ++i) {
        wsd::example ex;
        ex.sense = "s" + std::to_string(rng.below(senses));
        std::size_t len = min_len + rng.below(max_len - min_len + 1);
        ex.target_index = rng.below(len);
        for (std::size_t t = 0; t < len; ++t)
            ex.tokens.push_back({"t" + std::to_string(rng.below(vocab)),
                                 tags[rng.below(std::size(tags))]});
        exs.push_back(std::move(ex));
    }
    return wsd::word_dataset("randword", "n", std::move(exs));
}

}  // namespace testgen
