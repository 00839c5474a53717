#ifndef MLEI_STATS_HPP
#define MLEI_STATS_HPP

#include <string>
#include <vector>

#include "mlei/benchmarks.hpp"

namespace mlei {

enum class tail { two_sided, greater, less };

tail parse_tail(const std::string& text);

struct rank_test_result {
    double u_statistic = 0.0; // U of the first sample (midrank ties)
    double p_value = 1.0;
    bool exact = false; // enumeration vs normal approximation
    int n1 = 0, n2 = 0;
};

// Mann-Whitney-Wilcoxon rank-sum test.  Exact enumeration when the pooled
// sample has at most 16 values and no ties, otherwise the normal
// approximation with tie and continuity corrections.
rank_test_result mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b,
                                tail alternative = tail::two_sided);

// Number of significance stars for a p-value: thresholds 0.0001, 0.001,
// 0.01, 0.05 give four, three, two, one star; otherwise zero ("ns").
int significance_stars(double p);
std::string star_annotation(double p);

struct summary_row {
    std::string variant;
    int episode = 0;
    int count = 0;
    double median = 0.0;
    double q1 = 0.0; // Tukey hinges: medians of the lower/upper halves
    double q3 = 0.0;
    double min = 0.0;
    double max = 0.0;
};

enum class metric { reward, best_so_far, distance };

metric parse_metric(const std::string& text);
std::string metric_name(metric m);

// Per-variant, per-episode distribution summary across replicates.
std::vector<summary_row> summarize(const std::vector<result_row>& rows, metric what);

// Values of a metric across replicates for one variant at one episode
// (episode -1 means the final episode), ordered by replicate.
std::vector<double> metric_values(const std::vector<result_row>& rows, const std::string& variant,
                                  metric what, int episode);

// Distinct variant names in first-appearance order.
std::vector<std::string> variants_in(const std::vector<result_row>& rows);

} // namespace mlei

#endif
