#pragma once

#include <cstddef>
#include <span>

namespace hdfp::eval {

double mean(std::span<const double> xs);
double median(std::span<const double> xs);

// Sample Pearson correlation. Throws kShape for unequal lengths or fewer than
// two points and kDegenerateInput when either input is constant.
double pearson(std::span<const double> xs, std::span<const double> ys);

// Pearson correlation of average ranks.
double spearman(std::span<const double> xs, std::span<const double> ys);

// One-sided sign test: P(X >= wins) for X ~ Binomial(wins + losses, 1/2).
// Ties are excluded by the caller.
double sign_test_p(std::size_t wins, std::size_t losses);

}  // namespace hdfp::eval
