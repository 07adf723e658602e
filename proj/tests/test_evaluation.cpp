#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace wsd;

namespace {

word_dataset skewed_dataset(int majority, int minority) {
    // Distinctive sentences so that no classifier stalls on ties.
    testgen::rng_t rng(2);
    std::vector<example> exs;
    for (int i = 0; i < majority + minority; ++i) {
        example ex;
        ex.sense = i < majority ? "big" : "small";
        ex.target_index = 1;
        ex.tokens = {{"t" + std::to_string(rng.below(50)), "NN"},
                     {"w", "NN"},
                     {"t" + std::to_string(rng.below(50)), "NN"}};
        exs.push_back(std::move(ex));
    }
    return word_dataset("w", "n", std::move(exs));
}

}  // namespace

TEST_CASE("a fully separable corpus is learned perfectly by every fold") {
    synthetic_spec spec;
    spec.examples = 200;
    spec.vocab = 120;
    auto ds = generate_synthetic(spec, 3);
    auto folds = make_folds(ds, 10, 3);
    for (const char* cell : {"eb:a,h,k=1", "nb:a"}) {
        auto report = cross_validate(ds, folds, parse_cell_spec(cell));
        for (double acc : report.fold_accuracies) CHECK(acc == 1.0);
        CHECK(report.mean_accuracy == 1.0);
    }
}

TEST_CASE("MFS cross-validation tracks the majority proportion") {
    auto ds = skewed_dataset(60, 40);
    auto folds = make_folds(ds, 10, 1);
    auto report = cross_validate(ds, folds, parse_cell_spec("mfs"));
    CHECK(report.mean_accuracy == doctest::Approx(0.60).epsilon(0.03));
}

TEST_CASE("MFS evaluated on its own training data equals the majority share") {
    auto ds = skewed_dataset(37, 23);
    std::vector<std::size_t> all(ds.size());
    std::iota(all.begin(), all.end(), 0);
    auto outcome = evaluate_split(ds, all, all, parse_cell_spec("mfs"));
    CHECK(outcome.accuracy == most_frequent_sense(ds).second);
}

TEST_CASE("reports are deterministic apart from elapsed times") {
    testgen::rng_t rng(7);
    auto ds = testgen::random_dataset(rng, 80, 3, 30);
    auto folds = make_folds(ds, 10, 9);
    for (const char* cell : {"nb:a", "eb:a,h,k=7,e", "pnb:b-positive", "peb:b-positive,h,k=3,e"}) {
        auto a = cross_validate(ds, folds, parse_cell_spec(cell));
        auto b = cross_validate(ds, folds, parse_cell_spec(cell));
        CHECK(a.fold_accuracies == b.fold_accuracies);
        CHECK(a.mean_accuracy == b.mean_accuracy);
        CHECK(a.config_id == b.config_id);
    }
}

TEST_CASE("report mean equals the arithmetic mean of the folds") {
    testgen::rng_t rng(19);
    auto ds = testgen::random_dataset(rng, 60, 3, 20);
    auto folds = make_folds(ds, 10, 4);
    auto report = cross_validate(ds, folds, parse_cell_spec("nb:a"));
    double mean = 0;
    for (double a : report.fold_accuracies) mean += a;
    mean /= static_cast<double>(report.fold_accuracies.size());
    CHECK(std::fabs(report.mean_accuracy - mean) <= 1e-12);
    CHECK(report.fold_accuracies.size() == folds.fold_count());
}

TEST_CASE("test-fold labels never leak into the trained model") {
    testgen::rng_t rng(47);
    auto ds = testgen::random_dataset(rng, 90, 3, 25);
    auto folds = make_folds(ds, 10, 11);
    auto train = folds.complement(0);
    auto test = folds.members(0);

    // Same examples, test-fold labels rewritten.
    std::vector<example> perturbed = ds.examples();
    for (std::size_t i : test) perturbed[i].sense = "s" + std::to_string((perturbed[i].sense.back() - '0' + 1) % 3);
    word_dataset ds2(ds.target_lemma(), ds.target_pos(), std::move(perturbed));

    for (const char* cell : {"nb:a", "nb:b-binary", "pnb:b-positive", "eb:a,h,k=7,e",
                             "peb:b-positive,h,k=7,e", "eb:a,mv,k=3,e", "eb:a,h,k=5,e,a"}) {
        auto cfg = parse_cell_spec(cell);
        auto base_outcome = evaluate_split(ds, train, test, cfg);
        auto pert_outcome = evaluate_split(ds2, train, test, cfg);
        CHECK(base_outcome.predictions == pert_outcome.predictions);
    }
}

TEST_CASE("paired t-test") {
    SUBCASE("identical systems give t = 0, not significant") {
        std::vector<double> a = {.5, .6, .7, .5, .6, .7, .5, .6, .7, .5};
        auto r = paired_t_test(a, a);
        CHECK(r.t_statistic == 0.0);
        CHECK_FALSE(r.significant);
        CHECK(r.degrees_of_freedom == 9);
        CHECK(r.threshold == 2.262);
    }
    SUBCASE("alternating differences, hand-derived t = 9") {
        // d = 0.01 * (1,2,1,2,...): mean .015, five deviations of +-0.005,
        // s = 0.005*sqrt(10/9), t = 0.015/(s/sqrt(10)) = 9 exactly.
        std::vector<double> b(10, 0.5);
        std::vector<double> a(10);
        for (int i = 0; i < 10; ++i) a[i] = 0.5 + 0.01 * (i % 2 == 0 ? 1 : 2);
        auto r = paired_t_test(a, b);
        CHECK(r.t_statistic == doctest::Approx(9.0).epsilon(1e-9));
        CHECK(r.significant);
    }
    SUBCASE("constant nonzero difference has zero variance, defined as t = 0") {
        std::vector<double> a(10, 0.61), b(10, 0.60);
        auto r = paired_t_test(a, b);
        CHECK(r.t_statistic == 0.0);
        CHECK_FALSE(r.significant);
        // A constant whose mean rounds imperfectly must not leave variance
        // residue (1 - 2/3 is such a value).
        std::vector<double> perfect(10, 1.0), two_thirds(10, 2.0 / 3.0);
        auto r2 = paired_t_test(perfect, two_thirds);
        CHECK(r2.t_statistic == 0.0);
        CHECK_FALSE(r2.significant);
    }
    SUBCASE("antisymmetry is exact") {
        testgen::rng_t rng(3);
        for (int round = 0; round < 50; ++round) {
            std::vector<double> a(10), b(10);
            for (int i = 0; i < 10; ++i) {
                a[i] = rng.unit();
                b[i] = rng.unit();
            }
            CHECK(paired_t_test(a, b).t_statistic == -paired_t_test(b, a).t_statistic);
        }
    }
    SUBCASE("argument checks") {
        std::vector<double> a = {1.0, 2.0}, b = {1.0};
        CHECK_THROWS_AS(paired_t_test(a, b), std::invalid_argument);
        std::vector<double> one = {1.0};
        CHECK_THROWS_AS(paired_t_test(one, one), std::invalid_argument);
    }
}

TEST_CASE("k sweep") {
    synthetic_spec spec;
    spec.examples = 150;
    spec.vocab = 100;
    auto ds = generate_synthetic(spec, 5);
    auto folds = make_folds(ds, 10, 5);
    auto cfg = parse_cell_spec("eb:a,h,k=1");

    SUBCASE("a single candidate is the best candidate") {
        std::vector<int> ks = {1};
        auto result = sweep_k(ds, folds, cfg, ks);
        CHECK(result.best_k == 1);
        CHECK(result.per_k.size() == 1);
    }
    SUBCASE("default sweep list") {
        CHECK(std::vector<int>(default_k_sweep.begin(), default_k_sweep.end()) ==
              std::vector<int>{1, 3, 5, 7, 10, 15, 20, 25});
    }
    SUBCASE("equal means prefer the smaller k") {
        // Perfectly separable: every k scores 1.0.
        std::vector<int> ks = {3, 1, 7};
        auto result = sweep_k(ds, folds, cfg, ks);
        CHECK(result.best_k == 1);
        for (const auto& r : result.per_k) CHECK(r.mean_accuracy == 1.0);
    }
    SUBCASE("empty list is an error") {
        CHECK_THROWS_AS(sweep_k(ds, folds, cfg, std::vector<int>{}), std::invalid_argument);
    }
}

TEST_CASE("inner-cv k selection stays honest and fills the chosen-k trace") {
    synthetic_spec spec;
    spec.examples = 120;
    spec.vocab = 80;
    auto ds = generate_synthetic(spec, 8);
    auto folds = make_folds(ds, 10, 8);
    std::vector<int> ks = {1, 3, 5};
    auto report = cross_validate_inner_k(ds, folds, parse_cell_spec("eb:a,h,k=1"), ks, 5);
    CHECK(report.config_id == "EB(h,k=cv)/a");
    CHECK(report.inner_chosen_k.size() == 10);
    for (int k : report.inner_chosen_k) CHECK((k == 1 || k == 3 || k == 5));
    CHECK(report.mean_accuracy == 1.0);
}

TEST_CASE("timing is nonnegative and phases are populated") {
    testgen::rng_t rng(6);
    auto ds = testgen::random_dataset(rng, 60, 2, 20);
    auto folds = make_folds(ds, 10, 2);
    auto times = time_config(ds, folds, parse_cell_spec("eb:a,h,k=3"));
    CHECK(times.train_seconds >= 0.0);
    CHECK(times.classify_seconds >= 0.0);
}

TEST_CASE("cross_validate rejects a fold plan of the wrong size") {
    auto ds = skewed_dataset(20, 10);
    auto small = skewed_dataset(15, 5);
    auto folds = make_folds(small, 10, 1);
    CHECK_THROWS_AS(cross_validate(ds, folds, parse_cell_spec("nb:a")), std::invalid_argument);
}
