#include <gtest/gtest.h>

#include <atomic>
#include <map>
#include <numbers>
#include <set>

#include "hdfp/encoder.hpp"
#include "hdfp/eval/bo.hpp"
#include "hdfp/eval/features.hpp"
#include "hdfp/eval/ged.hpp"
#include "hdfp/eval/generator.hpp"
#include "hdfp/eval/gp.hpp"
#include "hdfp/eval/knn.hpp"
#include "hdfp/eval/stats.hpp"
#include "hdfp/parallel.hpp"
#include "test_util.hpp"

namespace hdfp::eval {
namespace {

using mol::Element;
using testing::thrown_kind;

FeatureMatrix matrix(const std::vector<std::vector<double>>& rows) {
  FeatureMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  return m;
}

// ---- stats ----

TEST(Stats, PearsonExamples) {
  const std::vector<double> xs = {1, 2, 3, 4, 5};
  std::vector<double> lin, neg;
  for (double x : xs) lin.push_back(2 * x + 3), neg.push_back(-x);
  EXPECT_NEAR(pearson(xs, lin), 1.0, 1e-15);
  EXPECT_NEAR(pearson(xs, neg), -1.0, 1e-15);
  EXPECT_NEAR(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}), 0.5, 1e-15);
  EXPECT_EQ(thrown_kind([] { pearson(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}); }),
            ErrorKind::kDegenerateInput);
  EXPECT_EQ(thrown_kind([] { pearson(std::vector<double>{1}, std::vector<double>{1}); }), ErrorKind::kShape);
  EXPECT_EQ(thrown_kind([] { pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}); }),
            ErrorKind::kShape);
}

TEST(Stats, SpearmanMedianMean) {
  EXPECT_NEAR(spearman(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 4, 9, 16}), 1.0, 1e-15);
  EXPECT_NEAR(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{3, 3, 1}), -std::sqrt(0.75), 1e-12);
  EXPECT_EQ(median(std::vector<double>{3, 1, 2}), 2.0);
  EXPECT_EQ(median(std::vector<double>{4, 1, 2, 3}), 2.5);
  EXPECT_EQ(mean(std::vector<double>{1, 2, 6}), 3.0);
  EXPECT_EQ(thrown_kind([] { median(std::vector<double>{}); }), ErrorKind::kEmptyInput);
}

TEST(Stats, SignTestExactValues) {
  EXPECT_NEAR(sign_test_p(10, 0), 1.0 / 1024, 1e-15);
  EXPECT_NEAR(sign_test_p(9, 1), 11.0 / 1024, 1e-15);
  EXPECT_NEAR(sign_test_p(8, 1), 10.0 / 512, 1e-15);
  EXPECT_NEAR(sign_test_p(0, 5), 1.0, 1e-15);
  EXPECT_EQ(sign_test_p(0, 0), 1.0);
}

TEST(Stats, SignTestMatchesMonteCarlo) {
  std::mt19937_64 rng(99);
  std::bernoulli_distribution coin(0.5);
  const int trials = 200000;
  for (std::size_t n : {6u, 10u}) {
    for (std::size_t w = n / 2; w <= n; w += 2) {
      int hits = 0;
      for (int t = 0; t < trials; ++t) {
        std::size_t heads = 0;
        for (std::size_t i = 0; i < n; ++i) heads += coin(rng);
        hits += heads >= w;
      }
      const double p = sign_test_p(w, n - w);
      EXPECT_NEAR(static_cast<double>(hits) / trials, p, 5 * std::sqrt(p * (1 - p) / trials) + 1e-4);
    }
  }
}

// ---- perturbations and ladders ----

const std::vector<Element> kCNO = {Element::C, Element::N, Element::O};

TEST(PerturbAll, MethaneHasTwoSubstitutions) {
  const auto out = perturb_all(mol::parse_smiles("C"), kCNO);
  ASSERT_EQ(out.size(), 2u);
  std::set<Element> els;
  for (const auto& g : out) els.insert(g.atom(0).element);
  EXPECT_EQ(els, (std::set<Element>{Element::N, Element::O}));
  for (const auto& g : out) EXPECT_EQ(g, mol::assign_hydrogens(g));
}

TEST(PerturbAll, DisconnectingDeletionsExcluded) {
  for (const auto& g : perturb_all(mol::parse_smiles("CC"), kCNO)) EXPECT_EQ(g.bonds().size(), 1u);
  // ring bonds may be deleted
  bool opened = false;
  for (const auto& g : perturb_all(mol::parse_smiles("C1CCC1"), kCNO)) opened |= g.bonds().size() == 3;
  EXPECT_TRUE(opened);
}

int edit_count(const mol::MolGraph& a, const mol::MolGraph& b) {
  if (a.size() != b.size()) return 99;
  int edits = 0;
  for (std::size_t i = 0; i < a.size(); ++i) edits += a.atom(i).element != b.atom(i).element;
  std::set<std::pair<std::size_t, std::size_t>> ea, eb;
  for (const auto& x : a.bonds()) ea.insert({x.a, x.b});
  for (const auto& x : b.bonds()) eb.insert({x.a, x.b});
  for (const auto& e : ea) edits += !eb.count(e);
  for (const auto& e : eb) edits += !ea.count(e);
  return edits;
}

TEST(PerturbAll, EveryOutputIsOneValidDistinctEdit) {
  const std::vector<Element> els = {Element::C, Element::N, Element::O, Element::S, Element::F, Element::Cl};
  const auto corpus = testing::corpus();
  for (std::size_t i = 0; i < corpus.size(); i += 7) {
    const auto& g = corpus[i];
    const auto out = perturb_all(g, els);
    std::set<std::uint64_t> sigs = {mol::graph_signature(g)};
    for (const auto& p : out) {
      EXPECT_EQ(edit_count(g, p), 1) << mol::write_smiles(g) << " -> " << mol::write_smiles(p);
      EXPECT_TRUE(mol::try_assign_hydrogens(p).has_value());
      EXPECT_TRUE(sigs.insert(mol::graph_signature(p)).second) << "duplicate output";
    }
  }
}

TEST(Ladder, PairsAreSeedToDescendantAndDeterministic) {
  const std::vector<mol::MolGraph> seeds = {mol::parse_smiles("CC(=O)Nc1ccc(O)cc1"), mol::parse_smiles("CCCCO")};
  const auto a = build_ged_dataset(seeds, 4, 40, 17);
  const auto b = build_ged_dataset(seeds, 4, 40, 17);
  ASSERT_EQ(a.pairs.size(), 80u);
  ASSERT_EQ(a.pairs.size(), b.pairs.size());
  for (std::size_t i = 0; i < a.pairs.size(); ++i) {
    EXPECT_EQ(a.pairs[i].mol_b, b.pairs[i].mol_b);
    EXPECT_EQ(a.pairs[i].edit_distance, b.pairs[i].edit_distance);
  }
  std::set<int> depths;
  for (const auto& p : a.pairs) {
    EXPECT_GE(p.edit_distance, 1);
    EXPECT_LE(p.edit_distance, 4);
    depths.insert(p.edit_distance);
    EXPECT_TRUE(p.mol_a == seeds[0] || p.mol_a == seeds[1]);
    EXPECT_NE(mol::graph_signature(p.mol_a), mol::graph_signature(p.mol_b));
    if (p.edit_distance == 1) {
      bool found = false;
      for (const auto& q : perturb_all(p.mol_a, LadderOptions{}.elements)) found |= q == p.mol_b;
      EXPECT_TRUE(found);
    }
  }
  EXPECT_EQ(depths.size(), 4u);
  const auto c = build_ged_dataset(seeds, 4, 40, 18);
  bool differs = false;
  for (std::size_t i = 0; i < a.pairs.size(); ++i) differs |= !(a.pairs[i].mol_b == c.pairs[i].mol_b);
  EXPECT_TRUE(differs);
}

TEST(Ladder, ExhaustedLadderWarns) {
  const std::vector<mol::MolGraph> seeds = {mol::parse_smiles("C")};
  const auto d = build_ged_dataset(seeds, 1, 200, 0);
  EXPECT_EQ(d.pairs.size(), 5u);  // N, O, S, F, Cl
  EXPECT_EQ(d.warnings.size(), 1u);
}

TEST(Ladder, SeedWithoutPerturbationsIsSkipped) {
  LadderOptions only_carbon;
  only_carbon.elements = {Element::C};
  const std::vector<mol::MolGraph> seeds = {mol::parse_smiles("C"), mol::parse_smiles("CC")};
  const auto d = build_ged_dataset(seeds, 2, 10, 0, only_carbon);
  EXPECT_TRUE(d.pairs.empty());
  EXPECT_EQ(d.warnings.size(), 2u);
  const std::vector<mol::MolGraph> one = {mol::parse_smiles("CCO")};
  EXPECT_EQ(thrown_kind([&] { build_ged_dataset(one, 9, 10, 0); }), ErrorKind::kConfig);
  EXPECT_EQ(thrown_kind([&] { build_ged_dataset(one, 0, 10, 0); }), ErrorKind::kConfig);
}

TEST(GedCorrelation, OracleDistanceGivesOne) {
  const std::vector<mol::MolGraph> seeds = {mol::parse_smiles("CC(=O)Nc1ccc(O)cc1")};
  const auto d = build_ged_dataset(seeds, 5, 60, 1);
  std::map<std::uint64_t, int> depth_of;
  for (const auto& p : d.pairs) depth_of[mol::graph_signature(p.mol_b)] = p.edit_distance;
  const PairDistance oracle = [&](const mol::MolGraph&, const mol::MolGraph& b) {
    return static_cast<double>(depth_of.at(mol::graph_signature(b)));
  };
  EXPECT_NEAR(ged_correlation(d.pairs, oracle), 1.0, 1e-12);
  const PairDistance negated = [&](const mol::MolGraph& a, const mol::MolGraph& b) { return -oracle(a, b); };
  EXPECT_NEAR(ged_correlation(d.pairs, negated), 1.0, 1e-12);
  const PairDistance constant = [](const mol::MolGraph&, const mol::MolGraph&) { return 0.5; };
  EXPECT_EQ(thrown_kind([&] { ged_correlation(d.pairs, constant); }), ErrorKind::kDegenerateInput);
  const std::span<const GedPair> few(d.pairs.data(), 9);
  EXPECT_EQ(thrown_kind([&] { ged_correlation(few, oracle); }), ErrorKind::kConfig);
  auto bad = std::vector<GedPair>(d.pairs.begin(), d.pairs.begin() + 10);
  bad[0].edit_distance = 0;
  EXPECT_EQ(thrown_kind([&] { ged_correlation(bad, oracle); }), ErrorKind::kInvalidValue);
}

// ---- knn ----

std::vector<double> brute_knn(const FeatureMatrix& train, std::span<const double> y, const FeatureMatrix& test,
                              std::size_t k, Distance dist) {
  std::vector<double> out;
  for (std::size_t q = 0; q < test.rows(); ++q) {
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t i = 0; i < train.rows(); ++i) {
      const auto a = test.row(q), b = train.row(i);
      double d;
      if (dist == Distance::kCosine) {
        double ab = 0, aa = 0, bb = 0;
        for (std::size_t c = 0; c < a.size(); ++c) ab += a[c] * b[c], aa += a[c] * a[c], bb += b[c] * b[c];
        d = (aa == 0 || bb == 0) ? 1.0 : 1.0 - ab / std::sqrt(aa * bb);
      } else {
        double ab = 0, aa = 0, bb = 0;
        for (std::size_t c = 0; c < a.size(); ++c) ab += a[c] * b[c], aa += a[c] * a[c], bb += b[c] * b[c];
        const double den = aa + bb - ab;
        d = den == 0 ? 0.0 : 1.0 - ab / den;
      }
      all.push_back({d, i});
    }
    std::sort(all.begin(), all.end());
    double s = 0;
    for (std::size_t j = 0; j < k; ++j) s += y[all[j].second];
    out.push_back(s / static_cast<double>(k));
  }
  return out;
}

TEST(Knn, MatchesBruteForceOracleOnWienerSet) {
  const auto graphs = generate_corpus(20, 4);
  std::vector<double> y;
  for (const auto& g : graphs) y.push_back(static_cast<double>(mol::wiener_index(g)));
  encoder::EncoderConfig c;
  c.dim = 64;
  const auto hdf = hdf_features(encoder::Encoder(c), graphs);
  const auto bits = morgan_features(baseline::MorganConfig{2, 64}, graphs);
  const std::vector<std::size_t> tr = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14};
  const std::vector<std::size_t> te = {15, 16, 17, 18, 19};
  std::vector<double> ytr(y.begin(), y.begin() + 15), yte(y.begin() + 15, y.end());
  for (const auto& [fm, dist] : {std::pair{&hdf, Distance::kCosine}, std::pair{&bits, Distance::kTanimoto}}) {
    for (std::size_t k : {1u, 3u, 5u}) {
      const auto got = knn_predict(fm->select(tr), ytr, fm->select(te), {k, dist});
      const auto want = brute_knn(fm->select(tr), ytr, fm->select(te), k, dist);
      EXPECT_EQ(got, want);
      double mae = 0;
      for (std::size_t i = 0; i < yte.size(); ++i) mae += std::abs(want[i] - yte[i]);
      EXPECT_DOUBLE_EQ(knn_mae(fm->select(tr), ytr, fm->select(te), yte, {k, dist}), mae / yte.size());
    }
  }
}

TEST(Knn, Examples) {
  const auto train = matrix({{1, 0}, {0, 1}, {1, 1}});
  const std::vector<double> y = {10, 20, 30};
  // identical to training point 2, k=1 -> error |30 - 31|
  EXPECT_DOUBLE_EQ(knn_mae(train, y, matrix({{1, 1}}), std::vector<double>{31}, {1, Distance::kCosine}), 1.0);
  const std::vector<double> flat = {5, 5, 5};
  EXPECT_EQ(knn_mae(train, flat, matrix({{0.3, 0.9}, {2, 1}}), std::vector<double>{5, 5}, {2, Distance::kCosine}), 0.0);
  EXPECT_EQ(thrown_kind([&] { knn_mae(train, y, matrix({{1, 1}}), std::vector<double>{1}, {4, Distance::kCosine}); }),
            ErrorKind::kConfig);
}

TEST(Knn, TiesGoToLowerTrainingIndex) {
  const auto train = matrix({{1, 0}, {2, 0}, {0, 1}, {3, 0}});  // rows 0,1,3 all at cosine distance 0
  const std::vector<double> y = {1, 2, 3, 4};
  EXPECT_EQ(knn_predict(train, y, matrix({{5, 0}}), {1, Distance::kCosine})[0], 1.0);
  EXPECT_EQ(knn_predict(train, y, matrix({{5, 0}}), {2, Distance::kCosine})[0], 1.5);
}

TEST(Knn, PairDistanceConventions) {
  const std::vector<double> z = {0, 0}, a = {1, 0};
  EXPECT_EQ(pair_distance(Distance::kTanimoto, z, z), 0.0);
  EXPECT_NEAR(pair_distance(Distance::kTanimoto, std::vector<double>{1, 1, 0}, std::vector<double>{1, 0, 1}),
              1.0 - 1.0 / 3.0, 1e-15);
  EXPECT_EQ(pair_distance(Distance::kCosine, a, a), 0.0);
  EXPECT_EQ(thrown_kind([&] { pair_distance(Distance::kCosine, a, std::vector<double>{1}); }), ErrorKind::kShape);
}

// ---- GP ----

// Dense Gauss-Jordan inverse with partial pivoting.
std::vector<std::vector<double>> invert(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    std::swap(a[c], a[p]);
    std::swap(inv[c], inv[p]);
    const double d = a[c][c];
    for (std::size_t j = 0; j < n; ++j) a[c][j] /= d, inv[c][j] /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) a[r][j] -= f * a[c][j], inv[r][j] -= f * inv[c][j];
    }
  }
  return inv;
}

GpPrediction gp_oracle(const FeatureMatrix& x, const std::vector<double>& y, const FeatureMatrix& q, double ell,
                       double noise) {
  auto k = [&](std::span<const double> a, std::span<const double> b) {
    double d2 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
    return std::exp(-d2 / (2 * ell * ell));
  };
  const std::size_t n = x.rows();
  std::vector<std::vector<double>> K(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) K[i][j] = k(x.row(i), x.row(j)) + (i == j ? noise : 0.0);
  const auto Ki = invert(K);
  GpPrediction out;
  for (std::size_t t = 0; t < q.rows(); ++t) {
    std::vector<double> ks(n);
    for (std::size_t i = 0; i < n; ++i) ks[i] = k(q.row(t), x.row(i));
    double m = 0, v = 1;
    for (std::size_t i = 0; i < n; ++i) {
      double kiy = 0, kik = 0;
      for (std::size_t j = 0; j < n; ++j) kiy += Ki[i][j] * y[j], kik += Ki[i][j] * ks[j];
      m += ks[i] * kiy;
      v -= ks[i] * kik;
    }
    out.mean.push_back(m);
    out.variance.push_back(std::max(0.0, v));
  }
  return out;
}

TEST(Gp, MatchesDenseSolveOracle) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int problem = 0; problem < 20; ++problem) {
    const std::size_t dim = problem < 5 ? 1 : 3;
    FeatureMatrix x(5, dim), q(7, dim);
    for (auto* m : {&x, &q})
      for (std::size_t r = 0; r < m->rows(); ++r)
        for (double& v : m->row(r)) v = u(rng);
    std::vector<double> y(5);
    for (double& v : y) v = u(rng);
    const double ell = 0.5 + 0.1 * problem, noise = 1e-4 * (1 + problem);
    const auto got = gp_fit_predict(x, y, q, ell, noise);
    const auto want = gp_oracle(x, y, q, ell, noise);
    for (std::size_t t = 0; t < q.rows(); ++t) {
      EXPECT_NEAR(got.mean[t], want.mean[t], 1e-8);
      EXPECT_NEAR(got.variance[t], want.variance[t], 1e-8);
    }
  }
}

TEST(Gp, InterpolationAndPriorLimits) {
  const auto x = matrix({{0.0}, {1.0}, {2.5}});
  const std::vector<double> y = {1.0, -0.5, 2.0};
  const auto at_train = gp_fit_predict(x, y, x, 1.0, 1e-10);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(at_train.mean[i], y[i], 1e-6);
    EXPECT_LE(at_train.variance[i], 1e-10 + 1e-6);
  }
  const auto far = gp_fit_predict(x, y, matrix({{100.0}}), 1.0, 1e-4);
  EXPECT_NEAR(far.mean[0], 0.0, 1e-12);
  EXPECT_NEAR(far.variance[0], 1.0, 1e-12);
  const auto noisy = gp_fit_predict(x, y, x, 0.7, 1e-3);
  for (double v : noisy.variance) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1e-3 + 1e-6);
  }
}

TEST(Gp, Errors) {
  const auto x = matrix({{0.0}});
  const std::vector<double> y = {1.0};
  EXPECT_EQ(thrown_kind([&] { gp_fit_predict(x, y, x, 0.0, 1e-4); }), ErrorKind::kConfig);
  EXPECT_EQ(thrown_kind([&] { gp_fit_predict(x, y, x, 1.0, 0.0); }), ErrorKind::kConfig);
  EXPECT_EQ(thrown_kind([&] { gp_fit_predict(x, std::vector<double>{}, x, 1.0, 1e-4); }), ErrorKind::kShape);
  EXPECT_EQ(thrown_kind([&] { gp_fit_predict(x, y, matrix({{0.0, 1.0}}), 1.0, 1e-4); }), ErrorKind::kShape);
}

TEST(Gp, MedianHeuristic) {
  const auto x = matrix({{0.0}, {1.0}, {3.0}});  // distances 1, 2, 3
  EXPECT_DOUBLE_EQ(median_heuristic_lengthscale(x), 2.0);
  EXPECT_GT(median_heuristic_lengthscale(matrix({{1.0}, {1.0}})), 0.0);  // all-equal guard
}

TEST(ExpectedImprovement, Examples) {
  EXPECT_EQ(expected_improvement(2.0, 0.0, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(expected_improvement(1.0, 0.0, 2.0), 1.0);
  EXPECT_EQ(expected_improvement(3.0, 0.0, 2.0), 0.0);
  EXPECT_NEAR(expected_improvement(0.0, 1.0, 0.0), 1.0 / std::sqrt(2 * std::numbers::pi), 1e-15);
  for (double m = -3; m <= 3; m += 0.25)
    for (double v : {0.0, 1e-12, 0.01, 1.0, 9.0}) EXPECT_GE(expected_improvement(m, v, 0.0), 0.0);
}

TEST(ExpectedImprovement, MatchesMonteCarlo) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n01;
  const double mean = 0.3, sd = 0.8, best = 0.5;
  double acc = 0;
  const int trials = 400000;
  for (int t = 0; t < trials; ++t) acc += std::max(0.0, best - (mean + sd * n01(rng)));
  EXPECT_NEAR(acc / trials, expected_improvement(mean, sd * sd, best), 3e-3);
}

// ---- BO ----

struct Library {
  FeatureMatrix x;
  std::vector<double> y;
};

Library small_library(std::size_t n, std::uint64_t seed) {
  const auto graphs = generate_corpus(n, seed);
  encoder::EncoderConfig c;
  c.dim = 32;
  Library lib{hdf_features(encoder::Encoder(c), graphs), {}};
  for (const auto& g : graphs) lib.y.push_back(static_cast<double>(mol::wiener_index(g)));
  return lib;
}

BoConfig bo_config(double target, std::uint64_t seed, Acquisition acq, std::size_t rounds = 30) {
  BoConfig c;
  c.rounds = rounds;
  c.target_value = target;
  c.seed = seed;
  c.acquisition = acq;
  return c;
}

void expect_valid_trace(const BoTrace& t, std::size_t rounds) {
  ASSERT_EQ(t.best_distance_per_round.size(), rounds);
  for (std::size_t r = 1; r < rounds; ++r) EXPECT_LE(t.best_distance_per_round[r], t.best_distance_per_round[r - 1]);
  for (double b : t.best_distance_per_round) EXPECT_GE(b, 0.0);
  double s = 0;
  for (double b : t.best_distance_per_round) s += b;
  EXPECT_DOUBLE_EQ(t.auc, s);
  EXPECT_EQ(std::set<std::size_t>(t.queried.begin(), t.queried.end()).size(), t.queried.size());
}

TEST(Bo, TracesAreMonotoneAndDeterministic) {
  const auto lib = small_library(200, 31);
  for (auto acq : {Acquisition::kExpectedImprovement, Acquisition::kRandom}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto a = bo_run(lib.x, lib.y, bo_config(400, seed, acq));
      expect_valid_trace(a, 30);
      EXPECT_FALSE(a.truncated);
      EXPECT_EQ(a.queried.size(), 40u);
      const auto b = bo_run(lib.x, lib.y, bo_config(400, seed, acq));
      EXPECT_EQ(a.best_distance_per_round, b.best_distance_per_round);
      EXPECT_EQ(a.queried, b.queried);
    }
  }
}

TEST(Bo, BestIsTheMinimumObjectiveSeen) {
  const auto lib = small_library(120, 8);
  const auto t = bo_run(lib.x, lib.y, bo_config(300, 4, Acquisition::kExpectedImprovement, 20));
  for (std::size_t r = 0; r < 20; ++r) {
    double best = 1e300;
    for (std::size_t i = 0; i < 10 + r + 1; ++i) best = std::min(best, std::abs(lib.y[t.queried[i]] - 300));
    EXPECT_EQ(t.best_distance_per_round[r], best);
  }
}

TEST(Bo, ExactTargetIsAbsorbing) {
  const auto lib = small_library(60, 2);
  const double target = lib.y[17];
  for (auto acq : {Acquisition::kExpectedImprovement, Acquisition::kRandom}) {
    const auto t = bo_run(lib.x, lib.y, bo_config(target, 5, acq, 49));
    expect_valid_trace(t, 49);
    EXPECT_EQ(t.best_distance_per_round.back(), 0.0);  // every molecule seen by the end
    const auto first_zero =
        std::find(t.best_distance_per_round.begin(), t.best_distance_per_round.end(), 0.0);
    for (auto it = first_zero; it != t.best_distance_per_round.end(); ++it) EXPECT_EQ(*it, 0.0);
  }
}

TEST(Bo, ExhaustedLibraryTruncates) {
  const auto lib = small_library(15, 3);
  const auto t = bo_run(lib.x, lib.y, bo_config(100, 1, Acquisition::kExpectedImprovement, 10));
  EXPECT_TRUE(t.truncated);
  EXPECT_EQ(t.best_distance_per_round.size(), 5u);
}

TEST(Bo, ConfigValidation) {
  const auto lib = small_library(20, 3);
  auto c = bo_config(1, 1, Acquisition::kRandom);
  c.rounds = 0;
  EXPECT_EQ(thrown_kind([&] { bo_run(lib.x, lib.y, c); }), ErrorKind::kConfig);
  c = bo_config(1, 1, Acquisition::kRandom);
  c.noise_variance = 0;
  EXPECT_EQ(thrown_kind([&] { bo_run(lib.x, lib.y, c); }), ErrorKind::kConfig);
  c = bo_config(NAN, 1, Acquisition::kRandom);
  EXPECT_EQ(thrown_kind([&] { bo_run(lib.x, lib.y, c); }), ErrorKind::kConfig);
  std::vector<double> short_y(lib.y.begin(), lib.y.end() - 1);
  EXPECT_EQ(thrown_kind([&] { bo_run(lib.x, short_y, bo_config(1, 1, Acquisition::kRandom)); }), ErrorKind::kShape);
}

// ---- generator & parallel ----

TEST(Generator, DeterministicDistinctValidAndBounded) {
  const auto a = generate_corpus(300, 12);
  const auto b = generate_corpus(300, 12);
  ASSERT_EQ(a.size(), 300u);
  std::set<std::uint64_t> sigs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]);
    EXPECT_TRUE(sigs.insert(mol::graph_signature(a[i])).second);
    EXPECT_GE(a[i].size(), 4u);
    EXPECT_LE(a[i].size(), 30u);
    EXPECT_EQ(mol::assign_hydrogens(a[i]), a[i]);
  }
  EXPECT_NE(generate_corpus(5, 1)[0], generate_corpus(5, 2)[0]);
  GeneratorOptions bad;
  bad.min_atoms = 10;
  bad.max_atoms = 5;
  EXPECT_EQ(thrown_kind([&] { generate_corpus(1, 1, bad); }), ErrorKind::kConfig);
}

TEST(Parallel, CoversEveryIndexAndRethrows) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_EQ(thrown_kind([] {
              parallel_for(100, 3, [](std::size_t i) {
                if (i == 70) throw Error(ErrorKind::kNumeric, "boom");
              });
            }),
            ErrorKind::kNumeric);
  parallel_for(0, 4, [](std::size_t) { FAIL(); });
}

}  // namespace
}  // namespace hdfp::eval
