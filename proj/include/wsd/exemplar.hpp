#pragma once

// Exemplar-based (k-NN) sense classification over symbolic attribute
// vectors. All training examples are stored; a test example is scored
// against every one of them.
//
// Closeness is a score, higher is closer:
//   - overlap metric: each symbolic attribute contributes weight_a when the
//     values match (so ranking is exactly complement-of-Hamming);
//   - value-difference metric: each attribute contributes
//     weight_a * (2 - d(v1,v2)) / 2, where d is the summed absolute
//     difference of the two values' sense-conditional profiles;
//   - a set-valued broad context contributes the number of shared words
//     (the matching coefficient), unweighted.
// The k best-scoring exemplars vote, each with weight 1, or 1/(1+d) under
// example weighting, where d = max attainable score - score. Vote ties go to
// the sense with the higher training frequency, then inventory order. Ties
// at the k boundary keep the exemplar with the lower index.

#include "wsd/detail/encoding.hpp"
#include "wsd/naive_bayes.hpp"

#include <cmath>
#include <numeric>

namespace wsd {

enum class eb_metric { hamming, mvdm };

struct eb_config {
    int k = 1;
    eb_metric metric = eb_metric::hamming;
    bool example_weighting = false;
    bool attribute_weighting = false;
};

inline std::size_t matching_coefficient(const word_set& a, const word_set& b) {
    std::size_t shared = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int cmp = a[i].compare(b[j]);
        if (cmp == 0) {
            ++shared;
            ++i;
            ++j;
        } else if (cmp < 0) {
            ++i;
        } else {
            ++j;
        }
    }
    return shared;
}

// Weighted Hamming distance over the symbolic attributes (including the
// expanded broad-context flags of set-b-binary vectors). Out-of-sentence
// values compare equal to each other.
inline double hamming_distance(const feature_vector& x, const feature_vector& y,
                               std::span<const double> weights) {
    if (x.schema != y.schema || x.symbolic.size() != y.symbolic.size() ||
        x.presence.size() != y.presence.size())
        throw std::invalid_argument("hamming_distance: schema mismatch");
    if (weights.size() != x.attribute_count())
        throw std::invalid_argument("hamming_distance: weight count does not match attributes");
    double d = 0;
    for (std::size_t a = 0; a < x.symbolic.size(); ++a)
        if (!(x.symbolic[a] == y.symbolic[a])) d += weights[a];
    for (std::size_t j = 0; j < x.presence.size(); ++j)
        if (x.presence[j] != y.presence[j]) d += weights[x.symbolic.size() + j];
    return d;
}

namespace detail {

// P(sense | value) profile, sparse over sense ranks, sorted by rank.
using sense_profile = std::vector<std::pair<std::uint32_t, double>>;

inline double profile_l1(const sense_profile& a, const sense_profile& b) {
    double d = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            d += std::fabs(a[i].second - b[j].second);
            ++i;
            ++j;
        } else if (a[i].first < b[j].first) {
            d += a[i].second;
            ++i;
        } else {
            d += b[j].second;
            ++j;
        }
    }
    for (; i < a.size(); ++i) d += a[i].second;
    for (; j < b.size(); ++j) d += b[j].second;
    return d;
}

// Normalized mutual information I(A;S)/H(A,S) from a (value x sense)
// contingency table; 0 when the joint entropy degenerates.
inline double rlm_weight(const std::vector<std::uint64_t>& joint, std::size_t values,
                         std::size_t m, std::uint64_t total) {
    if (total == 0) return 0.0;
    const double n = static_cast<double>(total);
    auto h_term = [&](std::uint64_t c) {
        if (c == 0) return 0.0;
        double p = static_cast<double>(c) / n;
        return -p * std::log(p);
    };
    double h_joint = 0, h_value = 0, h_sense = 0;
    std::vector<std::uint64_t> sense_sum(m, 0);
    for (std::size_t v = 0; v < values; ++v) {
        std::uint64_t row = 0;
        for (std::size_t s = 0; s < m; ++s) {
            h_joint += h_term(joint[v * m + s]);
            row += joint[v * m + s];
            sense_sum[s] += joint[v * m + s];
        }
        h_value += h_term(row);
    }
    for (std::size_t s = 0; s < m; ++s) h_sense += h_term(sense_sum[s]);
    if (h_joint <= 0.0) return 0.0;
    double mi = h_value + h_sense - h_joint;
    return std::clamp(mi / h_joint, 0.0, 1.0);
}

}  // namespace detail

struct eb_build_options {
    bool mvdm_tables = false;
    bool rlm_weights = false;
    std::optional<std::vector<double>> attribute_weights;  // explicit override
    std::vector<std::string> sense_order;                  // inventory order for tie-breaks
};

class exemplar_base {
public:
    std::size_t size() const { return sense_of_.size(); }
    schema_kind schema() const { return schema_; }
    std::size_t symbolic_count() const { return nsym_; }
    std::size_t presence_size() const { return presence_width_; }
    std::size_t attribute_count() const { return nsym_ + presence_width_; }
    bool has_mvdm() const { return !mvdm_.empty(); }

    const std::vector<double>& attribute_weights() const { return weights_; }
    const std::vector<std::string>& senses() const { return senses_.names(); }
    const std::vector<std::size_t>& sense_counts() const { return senses_.counts(); }
    const std::string& exemplar_sense(std::size_t i) const {
        return senses_.names()[sense_of_.at(i)];
    }

    friend exemplar_base build_exemplar_base(const std::vector<labeled_vector>& training,
                                             const eb_build_options& options);
    friend double mvdm_distance(const exemplar_base& base, std::size_t attr,
                                const attribute_value& v1, const attribute_value& v2);
    friend std::string eb_classify(const exemplar_base& base, const feature_vector& fv,
                                   const eb_config& cfg);

private:
    exemplar_base(schema_kind schema, const std::vector<std::string>& labels,
                  const std::vector<std::string>& sense_order)
        : schema_(schema), senses_(labels, sense_order) {}

    std::span<const std::uint32_t> context_of(std::size_t i) const {
        return {ctx_ids_.data() + ctx_offsets_[i], ctx_offsets_[i + 1] - ctx_offsets_[i]};
    }

    const detail::sense_profile& profile_of(std::size_t attr, std::uint32_t value_id) const {
        // Unseen values fall back to the priors; so does the out-of-sentence
        // value (id 0) when no training example was near a boundary.
        if (value_id == detail::unseen_value || mvdm_[attr][value_id].empty())
            return prior_profile_;
        return mvdm_[attr][value_id];
    }

    schema_kind schema_;
    detail::sense_table senses_;
    std::size_t nsym_ = 0;
    std::size_t presence_width_ = 0;

    std::vector<detail::value_interner> interners_;
    std::vector<std::uint32_t> sym_ids_;     // size() * nsym_
    std::vector<std::uint8_t> presence_;     // size() * presence_width_
    std::vector<std::size_t> ctx_offsets_;   // size() + 1
    std::vector<std::uint32_t> ctx_ids_;     // sorted per exemplar
    detail::word_interner ctx_words_;
    std::vector<std::uint32_t> sense_of_;

    std::vector<double> weights_;
    std::vector<double> unit_weights_;
    double weights_sum_ = 0;
    double unit_sum_ = 0;

    std::vector<std::vector<detail::sense_profile>> mvdm_;  // per attr, per value id
    detail::sense_profile prior_profile_;
};

inline exemplar_base build_exemplar_base(const std::vector<labeled_vector>& training,
                                         const eb_build_options& options = {}) {
    if (training.empty()) throw std::invalid_argument("build_exemplar_base: empty training set");
    const feature_vector& first = training.front().features;
    for (const auto& lv : training) {
        if (lv.features.schema != first.schema ||
            lv.features.symbolic.size() != first.symbolic.size() ||
            lv.features.presence.size() != first.presence.size())
            throw std::invalid_argument("build_exemplar_base: mixed feature schemas");
    }
    if (options.mvdm_tables && first.schema == schema_kind::set_b_binary)
        throw std::invalid_argument(
            "build_exemplar_base: value-difference tables over the expanded broad-context "
            "encoding are not supported; use the set-valued encoding");

    std::vector<std::string> labels;
    labels.reserve(training.size());
    for (const auto& lv : training) labels.push_back(lv.sense);
    exemplar_base base(first.schema, labels, options.sense_order);

    const std::size_t n = training.size();
    const std::size_t m = base.senses_.size();
    base.nsym_ = first.symbolic.size();
    base.presence_width_ = first.presence.size();
    base.interners_.resize(base.nsym_);
    base.sym_ids_.resize(n * base.nsym_);
    base.presence_.resize(n * base.presence_width_);
    base.ctx_offsets_.assign(1, 0);
    base.sense_of_.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const auto& lv = training[i];
        base.sense_of_[i] = base.senses_.rank_of(lv.sense);
        for (std::size_t a = 0; a < base.nsym_; ++a)
            base.sym_ids_[i * base.nsym_ + a] = base.interners_[a].intern(lv.features.symbolic[a]);
        if (base.presence_width_)
            std::copy(lv.features.presence.begin(), lv.features.presence.end(),
                      base.presence_.begin() + static_cast<std::ptrdiff_t>(i * base.presence_width_));
        std::vector<std::uint32_t> ctx;
        ctx.reserve(lv.features.context.size());
        for (const auto& w : lv.features.context) ctx.push_back(base.ctx_words_.intern(w));
        std::sort(ctx.begin(), ctx.end());
        base.ctx_ids_.insert(base.ctx_ids_.end(), ctx.begin(), ctx.end());
        base.ctx_offsets_.push_back(base.ctx_ids_.size());
    }

    // Attribute weights: explicit override, else RLM relevance, else 1.
    const std::size_t total_attrs = base.attribute_count();
    if (options.attribute_weights) {
        if (options.attribute_weights->size() != total_attrs)
            throw std::invalid_argument("build_exemplar_base: weight count does not match attributes");
        base.weights_ = *options.attribute_weights;
    } else if (options.rlm_weights) {
        base.weights_.resize(total_attrs);
        std::vector<std::uint64_t> joint;
        for (std::size_t a = 0; a < base.nsym_; ++a) {
            const std::size_t values = base.interners_[a].size();
            joint.assign(values * m, 0);
            for (std::size_t i = 0; i < n; ++i)
                ++joint[base.sym_ids_[i * base.nsym_ + a] * m + base.sense_of_[i]];
            base.weights_[a] = detail::rlm_weight(joint, values, m, n);
        }
        for (std::size_t j = 0; j < base.presence_width_; ++j) {
            joint.assign(2 * m, 0);
            for (std::size_t i = 0; i < n; ++i)
                ++joint[base.presence_[i * base.presence_width_ + j] * m + base.sense_of_[i]];
            base.weights_[base.nsym_ + j] = detail::rlm_weight(joint, 2, m, n);
        }
    } else {
        base.weights_.assign(total_attrs, 1.0);
    }
    base.unit_weights_.assign(total_attrs, 1.0);
    base.weights_sum_ = std::accumulate(base.weights_.begin(), base.weights_.end(), 0.0);
    base.unit_sum_ = static_cast<double>(total_attrs);

    if (options.mvdm_tables) {
        base.mvdm_.resize(base.nsym_);
        std::vector<std::uint64_t> joint;
        for (std::size_t a = 0; a < base.nsym_; ++a) {
            const std::size_t values = base.interners_[a].size();
            joint.assign(values * m, 0);
            for (std::size_t i = 0; i < n; ++i)
                ++joint[base.sym_ids_[i * base.nsym_ + a] * m + base.sense_of_[i]];
            base.mvdm_[a].resize(values);
            for (std::size_t v = 0; v < values; ++v) {
                std::uint64_t row = 0;
                for (std::size_t s = 0; s < m; ++s) row += joint[v * m + s];
                if (row == 0) continue;  // id 0 when no training value was out-of-sentence
                for (std::uint32_t s = 0; s < m; ++s)
                    if (joint[v * m + s])
                        base.mvdm_[a][v].emplace_back(
                            s, static_cast<double>(joint[v * m + s]) / static_cast<double>(row));
            }
        }
        // Values never seen in training fall back to the sense priors.
        for (std::uint32_t s = 0; s < m; ++s)
            base.prior_profile_.emplace_back(
                s, static_cast<double>(base.senses_.counts()[s]) / static_cast<double>(n));
    }
    return base;
}

// Per-attribute relevance weights: normalized mutual information between the
// attribute's value partition and the sense partition, in [0,1].
inline std::vector<double> rlm_attribute_weights(const std::vector<labeled_vector>& training) {
    eb_build_options options;
    options.rlm_weights = true;
    return build_exemplar_base(training, options).attribute_weights();
}

// Summed absolute difference of the two values' sense-conditional
// proportions, in [0,2]. A value unseen in training uses the sense priors as
// its profile.
inline double mvdm_distance(const exemplar_base& base, std::size_t attr,
                            const attribute_value& v1, const attribute_value& v2) {
    if (!base.has_mvdm())
        throw std::invalid_argument("mvdm_distance: base built without value-difference tables");
    if (attr >= base.nsym_) throw std::invalid_argument("mvdm_distance: attribute out of range");
    std::uint32_t id1 = base.interners_[attr].find(v1);
    std::uint32_t id2 = base.interners_[attr].find(v2);
    if (id1 == id2) return 0.0;
    return detail::profile_l1(base.profile_of(attr, id1), base.profile_of(attr, id2));
}

inline std::string eb_classify(const exemplar_base& base, const feature_vector& fv,
                               const eb_config& cfg) {
    if (base.size() == 0) throw std::invalid_argument("eb_classify: empty exemplar base");
    if (cfg.k < 1) throw std::invalid_argument("eb_classify: k must be at least 1");
    if (fv.schema != base.schema_ || fv.symbolic.size() != base.nsym_ ||
        fv.presence.size() != base.presence_width_)
        throw std::invalid_argument("eb_classify: feature vector does not match the base schema");
    if (cfg.metric == eb_metric::mvdm && !base.has_mvdm())
        throw std::invalid_argument("eb_classify: base built without value-difference tables");

    const std::size_t n = base.size();
    const std::size_t nsym = base.nsym_;
    const std::size_t width = base.presence_width_;
    const std::size_t m = base.senses_.size();
    const std::vector<double>& w = cfg.attribute_weighting ? base.weights_ : base.unit_weights_;
    const double weight_sum = cfg.attribute_weighting ? base.weights_sum_ : base.unit_sum_;

    std::vector<std::uint32_t> sym_ids(nsym);
    for (std::size_t a = 0; a < nsym; ++a) sym_ids[a] = base.interners_[a].find(fv.symbolic[a]);
    std::vector<std::uint32_t> ctx;
    if (base.schema_ == schema_kind::set_b_positive) {
        ctx.reserve(fv.context.size());
        for (const auto& word : fv.context) {
            std::uint32_t id = base.ctx_words_.find(word);
            if (id != detail::unseen_value) ctx.push_back(id);  // unseen words can match nothing
        }
        std::sort(ctx.begin(), ctx.end());
    }
    const detail::sense_profile* test_profiles[64] = {};
    std::vector<const detail::sense_profile*> test_profiles_big;
    const detail::sense_profile** profiles = test_profiles;
    if (cfg.metric == eb_metric::mvdm) {
        if (nsym > 64) {
            test_profiles_big.resize(nsym);
            profiles = test_profiles_big.data();
        }
        for (std::size_t a = 0; a < nsym; ++a) profiles[a] = &base.profile_of(a, sym_ids[a]);
    }

    // The best attainable score: full weight on every attribute plus the
    // whole test context shared. Distances for vote weighting are measured
    // down from it.
    const double max_score = weight_sum + static_cast<double>(ctx.size());

    struct entry {
        double score;
        std::uint32_t index;
    };
    auto better = [](const entry& a, const entry& b) {
        return a.score > b.score || (a.score == b.score && a.index < b.index);
    };
    std::vector<entry> kept;
    const std::size_t k = static_cast<std::size_t>(cfg.k);
    kept.reserve(std::min(k, n));

    for (std::size_t i = 0; i < n; ++i) {
        double score = 0;
        const std::uint32_t* ex_sym = base.sym_ids_.data() + i * nsym;
        if (cfg.metric == eb_metric::hamming) {
            for (std::size_t a = 0; a < nsym; ++a)
                if (sym_ids[a] == ex_sym[a]) score += w[a];
        } else {
            for (std::size_t a = 0; a < nsym; ++a) {
                double d = sym_ids[a] == ex_sym[a]
                               ? 0.0
                               : detail::profile_l1(*profiles[a], base.mvdm_[a][ex_sym[a]]);
                score += w[a] * (2.0 - d) * 0.5;
            }
        }
        if (width) {
            const std::uint8_t* ex_bits = base.presence_.data() + i * width;
            const double* bit_w = w.data() + nsym;
            for (std::size_t j = 0; j < width; ++j)
                if (fv.presence[j] == ex_bits[j]) score += bit_w[j];
        }
        if (base.schema_ == schema_kind::set_b_positive) {
            auto ex_ctx = base.context_of(i);
            std::size_t x = 0, y = 0;
            while (x < ctx.size() && y < ex_ctx.size()) {
                if (ctx[x] == ex_ctx[y]) {
                    score += 1.0;
                    ++x;
                    ++y;
                } else if (ctx[x] < ex_ctx[y]) {
                    ++x;
                } else {
                    ++y;
                }
            }
        }

        entry candidate{score, static_cast<std::uint32_t>(i)};
        if (kept.size() < k) {
            kept.push_back(candidate);
        } else {
            std::size_t worst = 0;
            for (std::size_t j = 1; j < kept.size(); ++j)
                if (better(kept[worst], kept[j])) worst = j;
            if (better(candidate, kept[worst])) kept[worst] = candidate;
        }
    }

    std::vector<double> votes(m, 0.0);
    for (const entry& e : kept) {
        double vote = cfg.example_weighting ? 1.0 / (1.0 + (max_score - e.score)) : 1.0;
        votes[base.sense_of_[e.index]] += vote;
    }
    std::uint32_t best_rank = 0;
    for (std::uint32_t s = 1; s < m; ++s)
        if (votes[s] > votes[best_rank]) best_rank = s;
    return base.senses_.names()[best_rank];
}

}  // namespace wsd
