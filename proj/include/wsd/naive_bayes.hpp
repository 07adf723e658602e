#pragma once

// Naive Bayes sense classifier. Priors and conditionals are relative
// frequencies; a zero count of P(v|C) is replaced by P(C)/N. Scores are
// accumulated in the log domain (set-b vectors multiply thousands of
// factors). The positive mode multiplies the symbolic factors plus only the
// presence factors of words that appear in the test context, skipping every
// absence factor.

#include "wsd/detail/encoding.hpp"

#include <cmath>

namespace wsd {

struct labeled_vector {
    feature_vector features;
    std::string sense;
};

enum class nb_mode { standard, positive };

class nb_model {
public:
    schema_kind schema() const { return schema_; }
    std::size_t symbolic_count() const { return interners_.size(); }
    std::size_t total() const { return total_; }

    // Senses in frequency order (tie-break: inventory order passed at
    // training time, then lexicographic).
    const std::vector<std::string>& senses() const { return senses_.names(); }
    const std::vector<std::size_t>& sense_totals() const { return senses_.counts(); }

    double prior(std::string_view sense) const {
        return priors_[senses_.rank_of(sense)];
    }

    std::uint64_t count(std::size_t attr, const attribute_value& value, std::string_view sense) const {
        std::uint32_t id = interners_.at(attr).find(value);
        if (id == detail::unseen_value) return 0;
        return sym_counts_[attr][id * senses_.size() + senses_.rank_of(sense)];
    }

    // The smoothed conditional P(value | sense): count/total for the sense
    // when the count is positive, otherwise prior/N.
    double smoothed_conditional(std::size_t attr, const attribute_value& value,
                                std::string_view sense) const {
        std::uint32_t s = senses_.rank_of(sense);
        std::uint64_t n = count(attr, value, sense);
        if (n == 0) return priors_[s] / static_cast<double>(total_);
        return static_cast<double>(n) / static_cast<double>(senses_.counts()[s]);
    }

    std::uint64_t presence_count(std::string_view word, std::string_view sense) const {
        if (schema_ != schema_kind::set_b_positive)
            throw std::invalid_argument("presence_count by word requires a set-b-positive model");
        std::uint32_t id = words_.find(std::string(word));
        if (id == detail::unseen_value) return 0;
        return pres_counts_[id * senses_.size() + senses_.rank_of(sense)];
    }

    std::uint64_t presence_count(std::size_t vocab_index, std::string_view sense) const {
        if (schema_ != schema_kind::set_b_binary)
            throw std::invalid_argument("presence_count by index requires a set-b-binary model");
        return pres_counts_[vocab_index * senses_.size() + senses_.rank_of(sense)];
    }

    double smoothed_presence(std::size_t word_slot, bool present, std::string_view sense) const {
        std::uint32_t s = senses_.rank_of(sense);
        std::uint64_t pres = pres_counts_.at(word_slot * senses_.size() + s);
        std::uint64_t n = present ? pres : senses_.counts()[s] - pres;
        if (n == 0) return priors_[s] / static_cast<double>(total_);
        return static_cast<double>(n) / static_cast<double>(senses_.counts()[s]);
    }

    friend nb_model nb_train(const std::vector<labeled_vector>& training,
                             const std::vector<std::string>& sense_order);
    friend std::string nb_classify(const nb_model& model, const feature_vector& fv, nb_mode mode);

private:
    nb_model(schema_kind schema, const std::vector<std::string>& labels,
             const std::vector<std::string>& sense_order)
        : schema_(schema), senses_(labels, sense_order) {}

    double log_smoothed(std::uint64_t n, std::uint32_t s) const {
        if (n == 0) return log_unseen_[s];
        return std::log(static_cast<double>(n) / static_cast<double>(senses_.counts()[s]));
    }

    void finalize() {
        const std::size_t m = senses_.size();
        total_ = 0;
        for (auto n : senses_.counts()) total_ += n;
        priors_.resize(m);
        log_prior_.resize(m);
        log_unseen_.resize(m);
        for (std::uint32_t s = 0; s < m; ++s) {
            priors_[s] = static_cast<double>(senses_.counts()[s]) / static_cast<double>(total_);
            log_prior_[s] = std::log(priors_[s]);
            log_unseen_[s] = std::log(priors_[s] / static_cast<double>(total_));
        }
        log_sym_.resize(sym_counts_.size());
        for (std::size_t a = 0; a < sym_counts_.size(); ++a) {
            log_sym_[a].resize(sym_counts_[a].size());
            for (std::size_t v = 0; v < sym_counts_[a].size() / m; ++v)
                for (std::uint32_t s = 0; s < m; ++s)
                    log_sym_[a][v * m + s] = log_smoothed(sym_counts_[a][v * m + s], s);
        }
        log_pres_.resize(pres_counts_.size());
        log_abs_.resize(pres_counts_.size());
        for (std::size_t w = 0; w < pres_counts_.size() / (m ? m : 1); ++w) {
            for (std::uint32_t s = 0; s < m; ++s) {
                std::uint64_t pres = pres_counts_[w * m + s];
                log_pres_[w * m + s] = log_smoothed(pres, s);
                log_abs_[w * m + s] = log_smoothed(senses_.counts()[s] - pres, s);
            }
        }
    }

    schema_kind schema_;
    detail::sense_table senses_;
    std::size_t total_ = 0;
    std::size_t presence_size_ = 0;  // set-b-binary: vocabulary size

    std::vector<detail::value_interner> interners_;
    std::vector<std::vector<std::uint64_t>> sym_counts_;  // per attr: value*m + sense
    detail::word_interner words_;                         // set-b-positive broad context
    std::vector<std::uint64_t> pres_counts_;              // word*m + sense

    std::vector<double> priors_;
    std::vector<double> log_prior_;
    std::vector<double> log_unseen_;
    std::vector<std::vector<double>> log_sym_;
    std::vector<double> log_pres_;
    std::vector<double> log_abs_;
};

inline nb_model nb_train(const std::vector<labeled_vector>& training,
                         const std::vector<std::string>& sense_order = {}) {
    if (training.empty()) throw std::invalid_argument("nb_train: empty training set");
    const feature_vector& first = training.front().features;
    for (const auto& lv : training) {
        if (lv.features.schema != first.schema ||
            lv.features.symbolic.size() != first.symbolic.size() ||
            lv.features.presence.size() != first.presence.size())
            throw std::invalid_argument("nb_train: mixed feature schemas in training set");
    }

    std::vector<std::string> labels;
    labels.reserve(training.size());
    for (const auto& lv : training) labels.push_back(lv.sense);
    nb_model model(first.schema, labels, sense_order);
    const std::size_t m = model.senses_.size();
    const std::size_t nsym = first.symbolic.size();

    model.interners_.resize(nsym);
    model.sym_counts_.resize(nsym);
    model.presence_size_ = first.presence.size();

    for (const auto& lv : training) {
        std::uint32_t s = model.senses_.rank_of(lv.sense);
        for (std::size_t a = 0; a < nsym; ++a) {
            std::uint32_t id = model.interners_[a].intern(lv.features.symbolic[a]);
            auto& table = model.sym_counts_[a];
            if (table.size() < (id + 1) * m) table.resize((id + 1) * m, 0);
            ++table[id * m + s];
        }
        if (first.schema == schema_kind::set_b_binary) {
            if (model.pres_counts_.empty()) model.pres_counts_.resize(model.presence_size_ * m, 0);
            for (std::size_t j = 0; j < model.presence_size_; ++j)
                if (lv.features.presence[j]) ++model.pres_counts_[j * m + s];
        } else if (first.schema == schema_kind::set_b_positive) {
            for (const auto& w : lv.features.context) {
                std::uint32_t id = model.words_.intern(w);
                if (model.pres_counts_.size() < (id + 1) * m)
                    model.pres_counts_.resize((id + 1) * m, 0);
                ++model.pres_counts_[id * m + s];
            }
        }
    }
    // Pad the per-attribute tables so that every interned value has a row.
    for (std::size_t a = 0; a < nsym; ++a)
        model.sym_counts_[a].resize(model.interners_[a].size() * m, 0);
    model.finalize();
    return model;
}

inline std::string nb_classify(const nb_model& model, const feature_vector& fv,
                               nb_mode mode = nb_mode::standard) {
    if (fv.schema != model.schema_ || fv.symbolic.size() != model.interners_.size() ||
        fv.presence.size() != model.presence_size_)
        throw std::invalid_argument("nb_classify: feature vector does not match the model schema");

    const std::size_t m = model.senses_.size();
    const std::size_t nsym = model.interners_.size();

    std::vector<std::uint32_t> sym_ids(nsym);
    for (std::size_t a = 0; a < nsym; ++a) sym_ids[a] = model.interners_[a].find(fv.symbolic[a]);

    // Broad-context terms resolved once, before the per-sense scan.
    std::vector<std::uint32_t> present_slots;  // positive mode
    std::size_t unknown_context_words = 0;
    std::vector<std::uint8_t> present_mark;  // standard mode over set-b-positive
    if (model.schema_ == schema_kind::set_b_binary) {
        if (mode == nb_mode::positive)
            for (std::uint32_t j = 0; j < model.presence_size_; ++j)
                if (fv.presence[j]) present_slots.push_back(j);
    } else if (model.schema_ == schema_kind::set_b_positive) {
        if (mode == nb_mode::positive) {
            for (const auto& w : fv.context) {
                std::uint32_t id = model.words_.find(w);
                if (id == detail::unseen_value)
                    ++unknown_context_words;
                else
                    present_slots.push_back(id);
            }
        } else {
            present_mark.assign(model.words_.size(), 0);
            for (const auto& w : fv.context) {
                std::uint32_t id = model.words_.find(w);
                if (id == detail::unseen_value)
                    ++unknown_context_words;
                else
                    present_mark[id] = 1;
            }
        }
    }

    double best = 0;
    std::uint32_t best_rank = 0;
    bool have_best = false;
    for (std::uint32_t s = 0; s < m; ++s) {
        double score = model.log_prior_[s];
        for (std::size_t a = 0; a < nsym; ++a) {
            std::uint32_t id = sym_ids[a];
            score += id == detail::unseen_value ? model.log_unseen_[s]
                                                : model.log_sym_[a][id * m + s];
        }
        if (model.schema_ == schema_kind::set_b_binary) {
            if (mode == nb_mode::standard) {
                for (std::size_t j = 0; j < model.presence_size_; ++j)
                    score += fv.presence[j] ? model.log_pres_[j * m + s]
                                            : model.log_abs_[j * m + s];
            } else {
                for (std::uint32_t j : present_slots) score += model.log_pres_[j * m + s];
            }
        } else if (model.schema_ == schema_kind::set_b_positive) {
            if (mode == nb_mode::standard) {
                for (std::size_t w = 0; w < present_mark.size(); ++w)
                    score += present_mark[w] ? model.log_pres_[w * m + s]
                                             : model.log_abs_[w * m + s];
            } else {
                for (std::uint32_t w : present_slots) score += model.log_pres_[w * m + s];
            }
            // Context words never seen in training have a zero count for
            // every sense: each contributes the smoothed prior/N factor.
            score += static_cast<double>(unknown_context_words) * model.log_unseen_[s];
        }
        if (!have_best || score > best) {
            best = score;
            best_rank = s;
            have_best = true;
        }
    }
    return model.senses_.names()[best_rank];
}

}  // namespace wsd
