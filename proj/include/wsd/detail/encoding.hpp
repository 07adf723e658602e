#pragma once

// Internal: dense integer encodings shared by the learners. Symbolic values
// are interned per attribute (id 0 reserved for the out-of-sentence value),
// senses are ranked by descending training frequency with the caller's
// inventory order as tie-break, so that scanning senses in rank order with a
// strictly-greater argmax implements every tie rule.

#include "wsd/features.hpp"

#include <limits>

namespace wsd::detail {

inline constexpr std::uint32_t unseen_value = std::numeric_limits<std::uint32_t>::max();

class value_interner {
public:
    value_interner() { names_.push_back("__"); }  // id 0: out-of-sentence

    std::uint32_t intern(const attribute_value& v) {
        if (v.out_of_sentence) return 0;
        auto [it, inserted] = ids_.try_emplace(v.text, static_cast<std::uint32_t>(names_.size()));
        if (inserted) names_.push_back(v.text);
        return it->second;
    }

    std::uint32_t find(const attribute_value& v) const {
        if (v.out_of_sentence) return 0;
        auto it = ids_.find(v.text);
        return it == ids_.end() ? unseen_value : it->second;
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::uint32_t id) const { return names_[id]; }

private:
    std::unordered_map<std::string, std::uint32_t> ids_;
    std::vector<std::string> names_;
};

class word_interner {
public:
    std::uint32_t intern(const std::string& w) {
        auto [it, inserted] = ids_.try_emplace(w, static_cast<std::uint32_t>(names_.size()));
        if (inserted) names_.push_back(w);
        return it->second;
    }

    std::uint32_t find(const std::string& w) const {
        auto it = ids_.find(w);
        return it == ids_.end() ? unseen_value : it->second;
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::uint32_t id) const { return names_[id]; }

private:
    std::unordered_map<std::string, std::uint32_t> ids_;
    std::vector<std::string> names_;
};

// Senses ordered by (training count desc, inventory rank asc); labels absent
// from the inventory order sort lexicographically after those present.
class sense_table {
public:
    template <typename Labels>
    sense_table(const Labels& labels, const std::vector<std::string>& inventory_order) {
        std::unordered_map<std::string, std::size_t> tally;
        for (const auto& label : labels) ++tally[label];
        std::unordered_map<std::string, std::size_t> inv_rank;
        for (std::size_t i = 0; i < inventory_order.size(); ++i)
            inv_rank.emplace(inventory_order[i], i);

        names_.reserve(tally.size());
        for (const auto& [name, n] : tally) names_.push_back(name);
        auto key = [&](const std::string& s) {
            auto it = inv_rank.find(s);
            return it == inv_rank.end() ? inventory_order.size() : it->second;
        };
        std::sort(names_.begin(), names_.end(), [&](const std::string& a, const std::string& b) {
            if (tally[a] != tally[b]) return tally[a] > tally[b];
            std::size_t ra = key(a), rb = key(b);
            if (ra != rb) return ra < rb;
            return a < b;
        });
        counts_.reserve(names_.size());
        for (std::size_t i = 0; i < names_.size(); ++i) {
            counts_.push_back(tally[names_[i]]);
            rank_[names_[i]] = static_cast<std::uint32_t>(i);
        }
    }

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<std::size_t>& counts() const { return counts_; }

    std::uint32_t rank_of(std::string_view name) const {
        auto it = rank_.find(std::string(name));
        if (it == rank_.end())
            throw std::invalid_argument("unknown sense label '" + std::string(name) + "'");
        return it->second;
    }

private:
    std::vector<std::string> names_;
    std::vector<std::size_t> counts_;
    std::unordered_map<std::string, std::uint32_t> rank_;
};

}  // namespace wsd::detail
