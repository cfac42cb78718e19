#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "probchan/suffstat.hpp"

using namespace probchan;

namespace {

std::vector<double> random_bits(int m, SeededSampler& s) {
  std::vector<double> out;
  for (int i = 0; i < m; ++i) out.push_back(s.next_u64() % 2 ? 1.0 : 0.0);
  return out;
}

std::vector<double> random_reals(int m, SeededSampler& s, double scale) {
  std::vector<double> out;
  for (int i = 0; i < m; ++i) out.push_back(scale * (2.0 * s.next_u01() - 1.0));
  return out;
}

}  // namespace

TEST_CASE("conjunction likelihood multiplies the per-observation kernels") {
  LikelihoodChannel flip = flip_channel();
  ObsBatch batch{{1, 0, 1}};
  RandVarC p = conjunction_likelihood(flip, batch);
  for (double x : {0.2, 0.5, 0.9})
    CHECK(p(x) == doctest::Approx(x * (1.0 - x) * x).epsilon(1e-13));

  CHECK_THROWS_AS(conjunction_likelihood(flip, ObsBatch{{}}), DomainError);
  CHECK_THROWS_AS(conjunction_likelihood(flip, ObsBatch{{3}}), UnknownLabel);
  ObsBatch too_long{std::vector<double>(1001, 1.0)};
  CHECK_THROWS_AS(conjunction_likelihood(flip, too_long), DomainError);
}

TEST_CASE("beta-flip statistic factorizes exactly on seeded batches") {
  LikelihoodChannel flip = flip_channel();
  SeededSampler s(99);
  for (int m : {1, 5, 10}) {
    ObsBatch batch{random_bits(m, s)};
    SuffStat stat = beta_flip_stat(m);
    // Independent oracle: accumulate the product term by term.
    Summary z = stat.t(batch.observations);
    auto [n1, n0] = std::get<std::pair<long, long>>(z);
    CHECK(n1 + n0 == m);
    for (double x : {0.05, 0.3, 0.5, 0.8, 0.95}) {
      double direct = 1.0;
      for (double y : batch.observations) direct *= y == 1.0 ? x : 1.0 - x;
      CHECK(std::abs(stat.s(batch.observations) * stat.q(x, z) - direct) <=
            1e-12 * std::max(direct, 1e-300));
    }
    CheckReport rep =
        check_factorization(stat, flip, batch, {0.1, 0.25, 0.5, 0.75, 0.9}, 1e-12);
    CHECK(rep.passed);
  }
  CHECK_THROWS_AS(beta_flip_stat(0), DomainError);
}

TEST_CASE("normal statistic factorizes within 1e-9 up to m = 10") {
  SeededSampler s(7);
  for (double nu : {0.5, 1.0}) {
    LikelihoodChannel model = normal_likelihood({nu}, Interval{-30.0, 30.0});
    for (int m : {1, 3, 10}) {
      ObsBatch batch{random_reals(m, s, 2.0)};
      SuffStat stat = normal_stat(m, {nu});
      // Independent oracle: product of Gaussian likelihood terms.
      Summary z = stat.t(batch.observations);
      for (double x : {-1.5, 0.0, 0.4, 2.0}) {
        double direct = 1.0;
        for (double y : batch.observations) direct *= normal_pdf(x, nu, y);
        double factored = stat.s(batch.observations) * stat.q(x, z);
        CHECK(std::abs(factored - direct) <= 1e-9 * std::max(direct, 1e-300));
      }
      CHECK(check_factorization(stat, model, batch, {-2.0, -0.3, 0.0, 1.0, 2.5}, 1e-9)
                .passed);
    }
  }
  CHECK_THROWS_AS(normal_stat(3, {0.0}), DomainError);
}

TEST_CASE("batch order does not matter") {
  LikelihoodChannel flip = flip_channel();
  ObsBatch batch{{1, 1, 0, 1, 0, 0, 1}};
  ObsBatch reversed{batch.observations};
  std::reverse(reversed.observations.begin(), reversed.observations.end());

  SuffStat stat = beta_flip_stat(batch.size());
  CHECK(stat.t(batch.observations) == stat.t(reversed.observations));

  RandVarC a = conjunction_likelihood(flip, batch);
  RandVarC b = conjunction_likelihood(flip, reversed);
  for (double x : {0.1, 0.5, 0.9}) CHECK(std::abs(a(x) - b(x)) <= 1e-8);

  SeededSampler s(31);
  ObsBatch reals{random_reals(6, s, 1.5)};
  ObsBatch shuffled{{reals.observations[3], reals.observations[0], reals.observations[5],
                     reals.observations[1], reals.observations[4], reals.observations[2]}};
  SuffStat nstat = normal_stat(6, {1.0});
  CHECK(std::get<double>(nstat.t(reals.observations)) ==
        doctest::Approx(std::get<double>(nstat.t(shuffled.observations))).epsilon(1e-12));
  LikelihoodChannel model = normal_likelihood({1.0}, Interval{-30.0, 30.0});
  RandVarC na = conjunction_likelihood(model, reals);
  RandVarC nb = conjunction_likelihood(model, shuffled);
  for (double x : {-1.0, 0.2, 1.7}) CHECK(std::abs(na(x) - nb(x)) <= 1e-8);
}

TEST_CASE("update by summary equals sequential one-step updates") {
  QuadConfig cfg;
  {
    LikelihoodChannel flip = flip_channel();
    ObsBatch batch{{1, 0, 1, 1}};
    SuffStat stat = beta_flip_stat(batch.size());
    PdfState prior = beta_state({2.0, 3.0});
    PdfState sequential = prior;
    auto v = flip.kernel;
    for (double y : batch.observations)
      sequential = update_pdf(sequential, [v, y](double x) { return v(x, y); }, cfg);
    Summary z = stat.t(batch.observations);
    auto q = stat.q;
    PdfState by_summary = update_pdf(prior, [q, z](double x) { return q(x, z); }, cfg);
    CHECK(state_distance(sequential, by_summary, cfg) <= 1e-6);
    CHECK(check_stat_update_equiv(stat, prior, flip, batch, cfg, 1e-6).passed);
  }
  {
    LikelihoodChannel model = normal_likelihood({1.0}, Interval{-30.0, 30.0});
    ObsBatch batch{{0.4, -1.0, 1.3}};
    SuffStat stat = normal_stat(batch.size(), {1.0});
    PdfState prior = normal_state({0.0, 1.0});
    PdfState sequential = prior;
    auto v = model.kernel;
    for (double y : batch.observations)
      sequential = update_pdf(sequential, [v, y](double x) { return v(x, y); }, cfg);
    Summary z = stat.t(batch.observations);
    auto q = stat.q;
    PdfState by_summary = update_pdf(prior, [q, z](double x) { return q(x, z); }, cfg);
    CHECK(state_distance(sequential, by_summary, cfg) <= 1e-6);
    CHECK(check_stat_update_equiv(stat, prior, model, batch, cfg, 1e-6).passed);
  }
}

TEST_CASE("summary update agrees with the translator fold") {
  // Folding the one-observation parameter move over the batch must land on
  // the same state as a single summary update.
  QuadConfig cfg;
  {
    ObsBatch batch{{1, 1, 0, 1}};
    BetaParams p{1.0, 2.0};
    for (double y : batch.observations)
      p = h_beta_flip(p, static_cast<int>(y));
    SuffStat stat = beta_flip_stat(batch.size());
    Summary z = stat.t(batch.observations);
    auto q = stat.q;
    PdfState by_summary =
        update_pdf(beta_state({1.0, 2.0}), [q, z](double x) { return q(x, z); }, cfg);
    CHECK(state_distance(beta_state(p), by_summary, cfg) <= 1e-6);
  }
  {
    ObsBatch batch{{0.8, -0.3, 1.6}};
    NormalParams p{0.0, 1.0};
    for (double y : batch.observations) p = h_normal(p, {1.0}, y);
    SuffStat stat = normal_stat(batch.size(), {1.0});
    Summary z = stat.t(batch.observations);
    auto q = stat.q;
    PdfState by_summary =
        update_pdf(normal_state({0.0, 1.0}), [q, z](double x) { return q(x, z); }, cfg);
    CHECK(state_distance(normal_state(p), by_summary, cfg) <= 1e-6);
  }
}

TEST_CASE("a corrupted q-component is caught by the factorization check") {
  LikelihoodChannel flip = flip_channel();
  ObsBatch batch{{1, 0, 1}};
  SuffStat stat = beta_flip_stat(batch.size());
  auto good_q = stat.q;
  stat.q = [good_q](double x, const Summary& z) { return good_q(x, z) + 0.01; };
  CHECK_FALSE(check_factorization(stat, flip, batch, {0.2, 0.5, 0.8}, 1e-12).passed);
}

TEST_CASE("multi_update conditions on the whole batch at once") {
  QuadConfig cfg;
  LikelihoodChannel flip = flip_channel();
  ObsBatch batch{{1, 1}};
  PdfState post = multi_update(beta_state({1.0, 1.0}), flip, batch, cfg);
  // Two heads from the uniform prior: Beta(3,1), density 3x^2.
  for (double x : {0.2, 0.6, 0.9})
    CHECK(post.density(x) == doctest::Approx(3.0 * x * x).epsilon(1e-8));
}
