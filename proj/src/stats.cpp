#include "mlei/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "mlei/errors.hpp"

namespace mlei {

namespace {

double normal_cdf(double z)
{
    return 0.5 * std::erfc(-z * 0.70710678118654752440084436210485);
}

// Counts of each achievable U value over all C(n1+n2, n1) rank labelings,
// built with the standard dynamic program over ranks.
std::vector<double> exact_u_distribution(int n1, int n2)
{
    const int n = n1 + n2;
    const int umax = n1 * n2;
    // ways[j][u]: subsets of size j of the ranks seen so far with statistic u.
    std::vector<std::vector<double>> ways(n1 + 1, std::vector<double>(umax + 1, 0.0));
    ways[0][0] = 1.0;
    for (int r = 1; r <= n; ++r) {
        for (int j = std::min(r, n1); j >= 1; --j) {
            // Choosing rank r as the j-th smallest member adds r - j to U.
            const int add = r - j;
            if (add > umax)
                continue;
            for (int u = umax; u >= add; --u)
                ways[j][u] += ways[j - 1][u - add];
        }
    }
    return ways[n1];
}

} // namespace

tail parse_tail(const std::string& text)
{
    if (text == "two-sided")
        return tail::two_sided;
    if (text == "greater")
        return tail::greater;
    if (text == "less")
        return tail::less;
    throw usage_error("alternative: expected two-sided, greater, or less, got '" + text + "'");
}

rank_test_result mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b, tail alternative)
{
    const int n1 = static_cast<int>(a.size());
    const int n2 = static_cast<int>(b.size());
    if (n1 < 1 || n2 < 1)
        throw usage_error("mann_whitney_u: both samples must be non-empty");

    struct tagged {
        double value;
        bool from_a;
    };
    std::vector<tagged> pooled;
    pooled.reserve(n1 + n2);
    for (double v : a)
        pooled.push_back({v, true});
    for (double v : b)
        pooled.push_back({v, false});
    std::sort(pooled.begin(), pooled.end(), [](const tagged& x, const tagged& y) { return x.value < y.value; });

    const int n = n1 + n2;
    double rank_sum_a = 0.0;
    double tie_term = 0.0;
    bool has_ties = false;
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && pooled[j].value == pooled[i].value)
            ++j;
        const int t = j - i;
        if (t > 1) {
            has_ties = true;
            tie_term += static_cast<double>(t) * t * t - t;
        }
        const double midrank = 0.5 * (i + 1 + j); // average of ranks i+1 .. j
        for (int k = i; k < j; ++k)
            if (pooled[k].from_a)
                rank_sum_a += midrank;
        i = j;
    }

    rank_test_result result;
    result.n1 = n1;
    result.n2 = n2;
    result.u_statistic = rank_sum_a - 0.5 * n1 * (n1 + 1);

    if (n <= 16 && !has_ties) {
        result.exact = true;
        const std::vector<double> counts = exact_u_distribution(n1, n2);
        const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
        const int u = static_cast<int>(std::llround(result.u_statistic));
        double below = 0.0, above = 0.0;
        for (int v = 0; v < static_cast<int>(counts.size()); ++v) {
            if (v <= u)
                below += counts[v];
            if (v >= u)
                above += counts[v];
        }
        const double p_less = below / total;
        const double p_greater = above / total;
        switch (alternative) {
        case tail::less:
            result.p_value = p_less;
            break;
        case tail::greater:
            result.p_value = p_greater;
            break;
        case tail::two_sided:
            result.p_value = std::min(1.0, 2.0 * std::min(p_less, p_greater));
            break;
        }
        return result;
    }

    const double mu = 0.5 * n1 * n2;
    const double nn = static_cast<double>(n);
    double var = (static_cast<double>(n1) * n2 / 12.0) * ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
    if (var <= 0.0) {
        // Every pooled value identical: no evidence either way.
        result.p_value = 1.0;
        return result;
    }
    const double sd = std::sqrt(var);
    const double u = result.u_statistic;
    switch (alternative) {
    case tail::greater:
        result.p_value = 1.0 - normal_cdf((u - mu - 0.5) / sd);
        break;
    case tail::less:
        result.p_value = normal_cdf((u - mu + 0.5) / sd);
        break;
    case tail::two_sided: {
        const double z = std::max(0.0, (std::abs(u - mu) - 0.5) / sd);
        result.p_value = std::min(1.0, 2.0 * (1.0 - normal_cdf(z)));
        break;
    }
    }
    return result;
}

int significance_stars(double p)
{
    if (p < 0.0001)
        return 4;
    if (p < 0.001)
        return 3;
    if (p < 0.01)
        return 2;
    if (p < 0.05)
        return 1;
    return 0;
}

std::string star_annotation(double p)
{
    const int s = significance_stars(p);
    return s == 0 ? "ns" : std::string(static_cast<std::size_t>(s), '*');
}

metric parse_metric(const std::string& text)
{
    if (text == "reward")
        return metric::reward;
    if (text == "best_so_far")
        return metric::best_so_far;
    if (text == "distance")
        return metric::distance;
    throw usage_error("metric: expected reward, best_so_far, or distance, got '" + text + "'");
}

std::string metric_name(metric m)
{
    switch (m) {
    case metric::reward:
        return "reward";
    case metric::best_so_far:
        return "best_so_far";
    case metric::distance:
        return "distance";
    }
    return "?";
}

namespace {

double metric_of(const result_row& row, metric what)
{
    switch (what) {
    case metric::reward:
        return row.reward;
    case metric::best_so_far:
        return row.best_so_far;
    case metric::distance:
        return row.distance;
    }
    return 0.0;
}

double median_of_sorted(const std::vector<double>& v, std::size_t lo, std::size_t hi)
{
    const std::size_t n = hi - lo;
    const std::size_t mid = lo + n / 2;
    return n % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

// Tukey hinges: the halves share the middle element when the count is odd.
void hinges(std::vector<double>& v, double& median, double& q1, double& q3)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    median = median_of_sorted(v, 0, n);
    const std::size_t half = n / 2;
    if (n == 1) {
        q1 = q3 = v[0];
        return;
    }
    q1 = median_of_sorted(v, 0, n % 2 ? half + 1 : half);
    q3 = median_of_sorted(v, half, n);
}

} // namespace

std::vector<std::string> variants_in(const std::vector<result_row>& rows)
{
    std::vector<std::string> names;
    for (const result_row& row : rows)
        if (std::find(names.begin(), names.end(), row.variant) == names.end())
            names.push_back(row.variant);
    return names;
}

std::vector<summary_row> summarize(const std::vector<result_row>& rows, metric what)
{
    if (rows.empty())
        throw usage_error("summarize: no rows");

    // variant -> replicate -> episode count, to reject ragged inputs.
    std::map<std::string, std::map<int, int>> episode_counts;
    for (const result_row& row : rows)
        episode_counts[row.variant][row.replicate]++;
    for (const auto& [variant, reps] : episode_counts) {
        const int first = reps.begin()->second;
        for (const auto& [rep, count] : reps)
            if (count != first)
                throw usage_error("summarize: replicates of variant '" + variant +
                                  "' have inconsistent episode counts");
    }

    std::map<std::pair<std::string, int>, std::vector<double>> groups;
    for (const result_row& row : rows)
        groups[{row.variant, row.episode}].push_back(metric_of(row, what));

    std::vector<summary_row> out;
    for (const std::string& variant : variants_in(rows)) {
        for (auto& [key, values] : groups) {
            if (key.first != variant)
                continue;
            summary_row s;
            s.variant = variant;
            s.episode = key.second;
            s.count = static_cast<int>(values.size());
            s.min = *std::min_element(values.begin(), values.end());
            s.max = *std::max_element(values.begin(), values.end());
            hinges(values, s.median, s.q1, s.q3);
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::vector<double> metric_values(const std::vector<result_row>& rows, const std::string& variant,
                                  metric what, int episode)
{
    if (episode < 0) {
        for (const result_row& row : rows)
            if (row.variant == variant)
                episode = std::max(episode, row.episode);
        if (episode < 0)
            throw usage_error("metric_values: variant '" + variant + "' not present");
    }
    std::map<int, double> by_replicate;
    for (const result_row& row : rows)
        if (row.variant == variant && row.episode == episode)
            by_replicate[row.replicate] = metric_of(row, what);
    if (by_replicate.empty())
        throw usage_error("metric_values: no rows for variant '" + variant + "' at episode " +
                          std::to_string(episode));
    std::vector<double> out;
    out.reserve(by_replicate.size());
    for (const auto& [rep, v] : by_replicate)
        out.push_back(v);
    return out;
}

} // namespace mlei
