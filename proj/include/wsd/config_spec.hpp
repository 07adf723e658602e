#pragma once

// Compact experiment-cell specs for the command line and config files:
//
//   <classifier>[:<features>][,<option>...]
//
//   classifier  mfs | nb | pnb | eb | peb
//   features    a | b-binary | b-bin | b-positive | b-pos
//   options     h | hamming          overlap metric (default)
//               mv | mvdm | cs       value-difference metric
//               k=<int>              neighbourhood size
//               e | ew               example weighting
//               a | aw               attribute weighting
//
// Examples: "mfs", "nb:a", "pnb", "eb:a,h,k=7,e", "peb,mv,k=10,e".

#include "wsd/evaluation.hpp"

namespace wsd {

inline schema_kind parse_schema(std::string_view text) {
    if (text == "a" || text == "set-a") return schema_kind::set_a;
    if (text == "b-binary" || text == "b-bin" || text == "set-b-binary")
        return schema_kind::set_b_binary;
    if (text == "b-positive" || text == "b-pos" || text == "set-b-positive")
        return schema_kind::set_b_positive;
    throw std::invalid_argument("unknown feature set '" + std::string(text) +
                                "' (expected a, b-binary or b-positive)");
}

inline classifier_config parse_cell_spec(std::string_view spec) {
    classifier_config config;
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (start <= spec.size()) {
        std::size_t comma = spec.find(',', start);
        if (comma == std::string_view::npos) comma = spec.size();
        parts.push_back(spec.substr(start, comma - start));
        start = comma + 1;
    }
    if (parts.empty() || parts[0].empty())
        throw std::invalid_argument("empty cell spec");

    std::string_view head = parts[0];
    std::string_view kind_text = head;
    std::optional<std::string_view> features_text;
    if (auto colon = head.find(':'); colon != std::string_view::npos) {
        kind_text = head.substr(0, colon);
        features_text = head.substr(colon + 1);
    }

    if (kind_text == "mfs") config.kind = classifier_kind::mfs;
    else if (kind_text == "nb") config.kind = classifier_kind::nb;
    else if (kind_text == "pnb") config.kind = classifier_kind::pnb;
    else if (kind_text == "eb") config.kind = classifier_kind::eb;
    else if (kind_text == "peb") config.kind = classifier_kind::peb;
    else
        throw std::invalid_argument("unknown classifier '" + std::string(kind_text) +
                                    "' (expected mfs, nb, pnb, eb or peb)");

    config.features = config.kind == classifier_kind::pnb || config.kind == classifier_kind::peb
                          ? schema_kind::set_b_positive
                          : schema_kind::set_a;
    if (features_text) config.features = parse_schema(*features_text);

    for (std::size_t i = 1; i < parts.size(); ++i) {
        std::string_view opt = parts[i];
        if (opt == "h" || opt == "hamming") {
            config.metric = eb_metric::hamming;
        } else if (opt == "mv" || opt == "mvdm" || opt == "cs") {
            config.metric = eb_metric::mvdm;
        } else if (opt == "e" || opt == "ew" || opt == "example-weighting") {
            config.example_weighting = true;
        } else if (opt == "a" || opt == "aw" || opt == "attribute-weighting") {
            config.attribute_weighting = true;
        } else if (opt.substr(0, 2) == "k=") {
            std::string_view num = opt.substr(2);
            int k = 0;
            auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), k);
            if (ec != std::errc{} || ptr != num.data() + num.size() || k < 1)
                throw std::invalid_argument("bad k value in cell spec: '" + std::string(opt) + "'");
            config.k = k;
        } else {
            throw std::invalid_argument("unknown cell option '" + std::string(opt) + "'");
        }
    }
    config.validate();
    return config;
}

}  // namespace wsd
