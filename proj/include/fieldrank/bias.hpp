#pragma once

// Publication-intensity bias experiment: two otherwise identical fields with
// different expected output rates, replicated over derived seeds. Full
// counting favors the prolific field; fractional counting should narrow the
// gap. Truth links are used directly so the measurement isolates the
// counting method from resolver noise.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "fieldrank/analytics.hpp"
#include "fieldrank/synth.hpp"

namespace fieldrank {

struct BiasReport {
    double incidence_gap_full = 0.0;        // mean over replications
    double incidence_gap_fractional = 0.0;  // mean over replications
    int replications = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<double> gaps_full;
    std::vector<double> gaps_fractional;
    double share_fractional_smaller = 0.0;  // replications with |frac| < full
    int positive_full = 0;
    int negative_full = 0;
    double sign_test_p = 1.0;  // two-sided, H0: full-count gap symmetric about 0
    double threshold_p = 1.0;
    double theta = 0.1;
};

namespace detail {

inline double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Two-sided sign test: P(X >= max(k, n-k)) * 2 for X ~ Bin(n, 1/2).
inline double sign_test_two_sided(int positives, int negatives) {
    int n = positives + negatives;
    if (n == 0) return 1.0;
    int k = std::max(positives, negatives);
    double log_half_n = n * std::log(0.5);
    double tail = 0.0;
    for (int i = k; i <= n; ++i) tail += std::exp(log_binomial(n, i) + log_half_n);
    return std::min(1.0, 2.0 * tail);
}

}  // namespace detail

// Two fields identical except publication intensity (lambda vs ratio*lambda).
// The heavy co-authorship defaults give fractional counting something to
// dilute; with short bylines the two counting modes barely differ.
inline SynthConfig default_bias_config(std::uint64_t seed = 1, double lambda = 1.2,
                                       double ratio = 2.0) {
    SynthConfig config;
    config.seed = seed;
    auto make = [&](const char* code, double intensity) {
        FieldSpec f;
        f.field_code = code;
        f.discipline_code = std::string("UDA-") + code;
        f.category = std::string("cat-") + code;
        f.national_staff = 100;
        f.world_staff_multiplier = 2.0;
        f.publication_intensity = intensity;
        f.coauthor_mean = 10.0;
        f.grand_experiment_rate = 0.03;
        f.grand_experiment_size = 80;
        f.quality_mu = 0.0;
        f.quality_sigma = 0.7;
        f.multi_category_rate = 0.0;
        return f;
    };
    config.fields = {make("LOW", lambda), make("HIGH", lambda * ratio)};
    return config;
}

inline void validate_bias_config(const SynthConfig& config) {
    if (config.fields.size() != 2)
        throw validation_error("bias experiment: config must define exactly 2 fields, got " +
                               std::to_string(config.fields.size()));
    const FieldSpec& a = config.fields[0];
    const FieldSpec& b = config.fields[1];
    bool same = a.national_staff == b.national_staff &&
                a.world_staff_multiplier == b.world_staff_multiplier &&
                a.coauthor_mean == b.coauthor_mean &&
                a.grand_experiment_rate == b.grand_experiment_rate &&
                a.grand_experiment_size == b.grand_experiment_size &&
                a.quality_mu == b.quality_mu && a.quality_sigma == b.quality_sigma &&
                a.national_quality_boost == b.national_quality_boost &&
                a.multi_category_rate == b.multi_category_rate;
    if (!same)
        throw validation_error(
            "bias experiment: fields must be identical except publication_intensity");
}

inline BiasReport run_bias_experiment(const SynthConfig& base, int replications,
                                      double threshold_p = 1.0, double theta = 0.1) {
    validate_bias_config(base);
    validate_threshold(threshold_p);
    validate_theta(theta);
    if (replications < 1) throw validation_error("bias experiment: replications must be >= 1");

    // gap = incidence(high-intensity field) - incidence(low-intensity field)
    const bool second_is_high =
        base.fields[1].publication_intensity >= base.fields[0].publication_intensity;
    const std::string& high = base.fields[second_is_high ? 1 : 0].field_code;
    const std::string& low = base.fields[second_is_high ? 0 : 1].field_code;

    BiasReport report;
    report.replications = replications;
    report.threshold_p = threshold_p;
    report.theta = theta;

    Rng seeder(base.seed);
    for (int rep = 0; rep < replications; ++rep) {
        SynthConfig config = base;
        config.seed = seeder.derive(static_cast<std::uint64_t>(rep)).next_u64();
        report.seeds.push_back(config.seed);

        SynthResult synth = generate_corpus(config);
        synth.corpus.links = std::move(synth.truth);
        const Corpus& corpus = synth.corpus;
        CorpusIndex index(corpus);

        StrataIndex strata = build_strata(corpus.publications);
        PercentileIndex percentiles = compute_percentiles(corpus.publications, strata);
        HcaSet hcas = hca_set(corpus.publications, percentiles, threshold_p);

        TopScientistSet full = top_scientists_full(corpus, index, hcas);
        TopScientistSet frac = top_scientists_fractional(corpus, index, hcas, theta);

        double gap_full = incidence(high, full, corpus).incidence -
                          incidence(low, full, corpus).incidence;
        double gap_frac = incidence(high, frac, corpus).incidence -
                          incidence(low, frac, corpus).incidence;
        report.gaps_full.push_back(gap_full);
        report.gaps_fractional.push_back(gap_frac);
        report.incidence_gap_full += gap_full;
        report.incidence_gap_fractional += gap_frac;
        if (std::abs(gap_frac) < gap_full) report.share_fractional_smaller += 1.0;
        if (gap_full > 0) ++report.positive_full;
        if (gap_full < 0) ++report.negative_full;
    }
    report.incidence_gap_full /= replications;
    report.incidence_gap_fractional /= replications;
    report.share_fractional_smaller /= replications;
    report.sign_test_p = detail::sign_test_two_sided(report.positive_full, report.negative_full);
    return report;
}

}  // namespace fieldrank
