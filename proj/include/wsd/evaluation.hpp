#pragma once

// Cross-validation harness. Every per-fold model, vocabulary, weight table
// and value-difference table is estimated from that fold's training split
// only; the test split contributes nothing but its predictions.

#include "wsd/exemplar.hpp"

#include <array>
#include <chrono>
#include <functional>

namespace wsd {

enum class classifier_kind { mfs, nb, pnb, eb, peb };

inline std::string_view to_string(classifier_kind kind) {
    switch (kind) {
        case classifier_kind::mfs: return "mfs";
        case classifier_kind::nb: return "nb";
        case classifier_kind::pnb: return "pnb";
        case classifier_kind::eb: return "eb";
        default: return "peb";
    }
}

// One experiment cell: classifier plus feature set plus its knobs.
struct classifier_config {
    classifier_kind kind = classifier_kind::mfs;
    schema_kind features = schema_kind::set_a;
    eb_metric metric = eb_metric::hamming;
    int k = 1;
    bool example_weighting = false;
    bool attribute_weighting = false;

    void validate() const {
        if (k < 1) throw std::invalid_argument("config: k must be at least 1");
        switch (kind) {
            case classifier_kind::pnb:
                if (features == schema_kind::set_a)
                    throw std::invalid_argument(
                        "config: pnb needs broad-context features (b-binary or b-positive)");
                break;
            case classifier_kind::peb:
                if (features != schema_kind::set_b_positive)
                    throw std::invalid_argument("config: peb requires b-positive features");
                break;
            case classifier_kind::eb:
                if (features == schema_kind::set_b_positive)
                    throw std::invalid_argument(
                        "config: eb works on symbolic vectors (a or b-binary); use peb for the "
                        "set-valued encoding");
                if (metric == eb_metric::mvdm && features == schema_kind::set_b_binary)
                    throw std::invalid_argument(
                        "config: the value-difference metric over b-binary broad context is "
                        "disabled (computationally prohibitive); use b-positive with peb");
                break;
            default:
                break;
        }
    }

    std::string id() const { return id_with_k(std::to_string(k)); }

    std::string id_with_k(const std::string& k_repr) const {
        auto feat_tag = [&]() -> std::string {
            switch (features) {
                case schema_kind::set_a: return "a";
                case schema_kind::set_b_binary: return "b-bin";
                default: return "b-pos";
            }
        };
        switch (kind) {
            case classifier_kind::mfs: return "MFS(cv)";  // the word tables' plain MFS column is the data share
            case classifier_kind::nb: return "NB/" + feat_tag();
            case classifier_kind::pnb: return "PNB/" + feat_tag();
            default: break;
        }
        std::string out = kind == classifier_kind::eb ? "EB(" : "PEB(";
        out += metric == eb_metric::hamming ? "h" : "mv";
        out += ",k=" + k_repr;
        if (example_weighting) out += ",e";
        if (attribute_weighting) out += ",a";
        out += ")/" + feat_tag();
        return out;
    }
};

struct phase_times {
    double train_seconds = 0;
    double classify_seconds = 0;
};

struct eval_report {
    std::string word;
    std::string config_id;
    std::size_t example_count = 0;
    std::vector<double> fold_accuracies;
    double mean_accuracy = 0;
    phase_times elapsed;
    std::vector<int> inner_chosen_k;  // filled only by the inner-CV k selection
};

struct fold_outcome {
    double accuracy = 0;
    std::vector<std::string> predictions;
    phase_times times;
};

namespace detail {

class stopwatch {
public:
    stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline feature_vector extract_for(const example& ex, schema_kind schema, const vocabulary& vocab,
                                  const feature_options& opts) {
    switch (schema) {
        case schema_kind::set_a: return extract_set_a(ex, opts);
        case schema_kind::set_b_binary: return extract_set_b(ex, vocab, set_b_mode::binary, opts);
        default: return extract_set_b(ex, vocab, set_b_mode::positive, opts);
    }
}

}  // namespace detail

// Train on `train`, classify `test`. The vocabulary (and everything derived
// from it) comes from the training split alone.
inline fold_outcome evaluate_split(const word_dataset& dataset,
                                   std::span<const std::size_t> train,
                                   std::span<const std::size_t> test,
                                   const classifier_config& config,
                                   const feature_options& opts = {}) {
    config.validate();
    if (train.empty()) throw std::invalid_argument("evaluate_split: empty training split");
    const auto& examples = dataset.examples();

    fold_outcome outcome;
    outcome.predictions.reserve(test.size());

    if (config.kind == classifier_kind::mfs) {
        detail::stopwatch train_clock;
        std::vector<std::size_t> counts(dataset.senses().size(), 0);
        for (std::size_t i : train) ++counts[*dataset.sense_rank(examples[i].sense)];
        std::size_t best = 0;
        for (std::size_t s = 1; s < counts.size(); ++s)
            if (counts[s] > counts[best]) best = s;  // inventory order breaks ties
        const std::string& majority = dataset.senses()[best];
        outcome.times.train_seconds = train_clock.seconds();

        detail::stopwatch classify_clock;
        std::size_t correct = 0;
        for (std::size_t i : test) {
            outcome.predictions.push_back(majority);
            if (examples[i].sense == majority) ++correct;
        }
        outcome.times.classify_seconds = classify_clock.seconds();
        outcome.accuracy = test.empty() ? 0.0
                                        : static_cast<double>(correct) /
                                              static_cast<double>(test.size());
        return outcome;
    }

    detail::stopwatch train_clock;
    vocabulary vocab;
    if (config.features != schema_kind::set_a) {
        std::vector<const example*> train_ptrs;
        train_ptrs.reserve(train.size());
        for (std::size_t i : train) train_ptrs.push_back(&examples[i]);
        vocab = build_vocabulary(std::span<const example* const>(train_ptrs),
                                 opts.open_class_prefixes);
    }
    std::vector<labeled_vector> training;
    training.reserve(train.size());
    for (std::size_t i : train)
        training.push_back(
            {detail::extract_for(examples[i], config.features, vocab, opts), examples[i].sense});

    std::function<std::string(const feature_vector&)> classify;
    std::optional<nb_model> nb;
    std::optional<exemplar_base> base;
    if (config.kind == classifier_kind::nb || config.kind == classifier_kind::pnb) {
        nb.emplace(nb_train(training, dataset.senses()));
        nb_mode mode = config.kind == classifier_kind::pnb ? nb_mode::positive : nb_mode::standard;
        classify = [&nb, mode](const feature_vector& fv) { return nb_classify(*nb, fv, mode); };
    } else {
        eb_build_options build;
        build.mvdm_tables = config.metric == eb_metric::mvdm;
        build.rlm_weights = config.attribute_weighting;
        build.sense_order = dataset.senses();
        base.emplace(build_exemplar_base(training, build));
        eb_config eb{config.k, config.metric, config.example_weighting,
                     config.attribute_weighting};
        classify = [&base, eb](const feature_vector& fv) { return eb_classify(*base, fv, eb); };
    }
    outcome.times.train_seconds = train_clock.seconds();

    detail::stopwatch classify_clock;
    std::size_t correct = 0;
    for (std::size_t i : test) {
        feature_vector fv = detail::extract_for(examples[i], config.features, vocab, opts);
        std::string predicted = classify(fv);
        if (predicted == examples[i].sense) ++correct;
        outcome.predictions.push_back(std::move(predicted));
    }
    outcome.times.classify_seconds = classify_clock.seconds();
    outcome.accuracy =
        test.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(test.size());
    return outcome;
}

inline eval_report cross_validate(const word_dataset& dataset, const fold_plan& folds,
                                  const classifier_config& config,
                                  const feature_options& opts = {}) {
    config.validate();
    if (folds.size() != dataset.size())
        throw std::invalid_argument("cross_validate: fold plan does not cover the dataset");

    eval_report report;
    report.word = dataset.target_lemma();
    report.config_id = config.id();
    report.example_count = dataset.size();
    report.fold_accuracies.reserve(folds.fold_count());

    for (std::uint32_t f = 0; f < folds.fold_count(); ++f) {
        auto train = folds.complement(f);
        auto test = folds.members(f);
        fold_outcome outcome;
        try {
            outcome = evaluate_split(dataset, train, test, config, opts);
        } catch (const std::exception& e) {
            throw std::runtime_error("fold " + std::to_string(f) + ": " + e.what());
        }
        report.fold_accuracies.push_back(outcome.accuracy);
        report.elapsed.train_seconds += outcome.times.train_seconds;
        report.elapsed.classify_seconds += outcome.times.classify_seconds;
    }
    double sum = 0;
    for (double a : report.fold_accuracies) sum += a;
    report.mean_accuracy = sum / static_cast<double>(report.fold_accuracies.size());
    return report;
}

// --- paired significance test ---------------------------------------------

// Two-sided 97.5% Student's t quantile at 9 degrees of freedom, the
// threshold for a 10-fold paired test.
inline constexpr double default_t_threshold = 2.262;

struct significance_result {
    double t_statistic = 0;
    int degrees_of_freedom = 0;
    double threshold = default_t_threshold;
    bool significant = false;
};

// t = mean(d) / (sd(d)/sqrt(n)) over per-fold differences, with the sample
// (n-1) standard deviation. Zero variance yields t = 0 rather than a
// division failure.
inline significance_result paired_t_test(std::span<const double> a, std::span<const double> b,
                                         double threshold = default_t_threshold) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("paired_t_test: need two equal series of length >= 2");
    const std::size_t n = a.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
    // A bitwise-constant difference vector has zero variance by definition;
    // computing it through the mean would leave rounding residue and blow
    // the statistic up instead of zeroing it.
    bool constant = std::all_of(d.begin(), d.end(), [&](double x) { return x == d[0]; });
    double mean = 0;
    for (double x : d) mean += x;
    mean /= static_cast<double>(n);
    double ss = 0;
    for (double x : d) ss += (x - mean) * (x - mean);
    double sd = constant ? 0.0 : std::sqrt(ss / static_cast<double>(n - 1));

    significance_result result;
    result.degrees_of_freedom = static_cast<int>(n) - 1;
    result.threshold = threshold;
    result.t_statistic = sd == 0.0 ? 0.0 : mean / (sd / std::sqrt(static_cast<double>(n)));
    result.significant = std::fabs(result.t_statistic) > threshold;
    return result;
}

// --- k sweep ----------------------------------------------------------------

inline constexpr std::array<int, 8> default_k_sweep{1, 3, 5, 7, 10, 15, 20, 25};

struct sweep_result {
    int best_k = 1;            // post-hoc selection: optimistic by construction
    std::vector<eval_report> per_k;
};

inline sweep_result sweep_k(const word_dataset& dataset, const fold_plan& folds,
                            const classifier_config& base_config, std::span<const int> ks,
                            const feature_options& opts = {}) {
    if (ks.empty()) throw std::invalid_argument("sweep_k: empty k list");
    sweep_result result;
    double best_mean = -1;
    for (int k : ks) {
        classifier_config config = base_config;
        config.k = k;
        result.per_k.push_back(cross_validate(dataset, folds, config, opts));
        double mean = result.per_k.back().mean_accuracy;
        if (mean > best_mean || (mean == best_mean && k < result.best_k)) {
            best_mean = mean;
            result.best_k = k;
        }
    }
    return result;
}

// Unbiased variant: per outer fold, k is chosen by an inner cross-validation
// on the training split alone, then applied to the held-out fold.
inline eval_report cross_validate_inner_k(const word_dataset& dataset, const fold_plan& folds,
                                          const classifier_config& base_config,
                                          std::span<const int> ks, std::size_t inner_folds = 5,
                                          const feature_options& opts = {}) {
    if (ks.empty()) throw std::invalid_argument("cross_validate_inner_k: empty k list");
    base_config.validate();

    eval_report report;
    report.word = dataset.target_lemma();
    report.config_id = base_config.id_with_k("cv");
    report.example_count = dataset.size();

    for (std::uint32_t f = 0; f < folds.fold_count(); ++f) {
        auto train = folds.complement(f);
        auto test = folds.members(f);

        std::vector<example> inner_examples;
        inner_examples.reserve(train.size());
        for (std::size_t i : train) inner_examples.push_back(dataset.examples()[i]);
        word_dataset inner_dataset(dataset.target_lemma(), dataset.target_pos(),
                                   std::move(inner_examples));
        std::size_t inner_n = std::min(inner_folds, inner_dataset.size());
        if (inner_n < 2) throw std::invalid_argument("cross_validate_inner_k: training split too small");
        fold_plan inner_plan =
            make_folds(inner_dataset, inner_n, folds.seed() ^ (0x9e3779b97f4a7c15ULL * (f + 1)));

        int chosen_k = ks.front();
        double chosen_mean = -1;
        for (int k : ks) {
            classifier_config config = base_config;
            config.k = k;
            double mean = cross_validate(inner_dataset, inner_plan, config, opts).mean_accuracy;
            if (mean > chosen_mean || (mean == chosen_mean && k < chosen_k)) {
                chosen_mean = mean;
                chosen_k = k;
            }
        }
        classifier_config config = base_config;
        config.k = chosen_k;
        fold_outcome outcome = evaluate_split(dataset, train, test, config, opts);
        report.fold_accuracies.push_back(outcome.accuracy);
        report.elapsed.train_seconds += outcome.times.train_seconds;
        report.elapsed.classify_seconds += outcome.times.classify_seconds;
        report.inner_chosen_k.push_back(chosen_k);
    }
    double sum = 0;
    for (double a : report.fold_accuracies) sum += a;
    report.mean_accuracy = sum / static_cast<double>(report.fold_accuracies.size());
    return report;
}

// Wall-clock training and classification time of one configuration, summed
// over the folds.
inline phase_times time_config(const word_dataset& dataset, const fold_plan& folds,
                               const classifier_config& config, const feature_options& opts = {}) {
    return cross_validate(dataset, folds, config, opts).elapsed;
}

}  // namespace wsd
