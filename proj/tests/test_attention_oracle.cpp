#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ssa/attention_oracle.hpp"
#include "ssa/ssa_functional.hpp"

using namespace ssa;

namespace {

RealMatrix random_probs(std::mt19937_64& gen, std::size_t rows, std::size_t cols) {
  RealMatrix m(rows, cols);
  for (double& v : m.data()) v = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return m;
}

SpikeMatrix random_spikes(std::mt19937_64& gen, std::size_t rows, std::size_t cols) {
  SpikeMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, static_cast<Bit>(gen() & 1));
  }
  return m;
}

}  // namespace

TEST_CASE("single-token softmax attention returns the value row") {
  const RealMatrix q = RealMatrix::from_rows({{0.3, -1.2, 0.8}});
  const RealMatrix k = RealMatrix::from_rows({{1.0, 0.5, -0.5}});
  const RealMatrix v = RealMatrix::from_rows({{2.0, -3.0, 0.25}});
  const RealMatrix out = softmax_attention(q, k, v, 3);
  for (std::size_t d = 0; d < 3; ++d) CHECK(out(0, d) == doctest::Approx(v(0, d)));
}

TEST_CASE("zero queries and keys average the values uniformly") {
  const RealMatrix q(3, 2, 0.0);
  const RealMatrix k(3, 2, 0.0);
  const RealMatrix v = RealMatrix::from_rows({{1.0, 4.0}, {2.0, 5.0}, {3.0, 6.0}});
  const RealMatrix out = softmax_attention(q, k, v, 2);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(out(i, 0) == doctest::Approx(2.0));
    CHECK(out(i, 1) == doctest::Approx(5.0));
  }
}

TEST_CASE("softmax attention matches a direct two-loop evaluation") {
  std::mt19937_64 gen(321);
  const std::size_t n = 3, dk = 4;
  RealMatrix q(n, dk), k(n, dk), v(n, dk);
  for (double& x : q.data()) x = 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0;
  for (double& x : k.data()) x = 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0;
  for (double& x : v.data()) x = 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0;

  const RealMatrix out = softmax_attention(q, k, v, dk);

  // Naive reference: explicit exponentials without max subtraction.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> w(n);
    double norm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t d = 0; d < dk; ++d) dot += q(i, d) * k(j, d);
      w[j] = std::exp(dot / std::sqrt(static_cast<double>(dk)));
      norm += w[j];
    }
    for (std::size_t d = 0; d < dk; ++d) {
      double expect = 0.0;
      for (std::size_t j = 0; j < n; ++j) expect += (w[j] / norm) * v(j, d);
      CHECK(out(i, d) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("softmax attention validates shapes") {
  CHECK_THROWS_AS(softmax_attention(RealMatrix(2, 3, 0.0), RealMatrix(2, 2, 0.0),
                                    RealMatrix(2, 3, 0.0), 3),
                  std::invalid_argument);
}

TEST_CASE("all-ones probabilities give an all-ones expectation") {
  const RealMatrix ones(3, 4, 1.0);
  const RealMatrix out = linear_ssa_expectation(ones, ones, ones);
  for (double v : out.data()) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("zero values give a zero expectation") {
  std::mt19937_64 gen(11);
  const RealMatrix pq = random_probs(gen, 3, 4);
  const RealMatrix pk = random_probs(gen, 3, 4);
  const RealMatrix out = linear_ssa_expectation(pq, pk, RealMatrix(3, 4, 0.0));
  for (double v : out.data()) CHECK(v == 0.0);
}

TEST_CASE("expectation entries stay in the unit interval") {
  std::mt19937_64 gen(12);
  for (int inst = 0; inst < 10; ++inst) {
    const RealMatrix out = linear_ssa_expectation(random_probs(gen, 4, 8),
                                                  random_probs(gen, 4, 8),
                                                  random_probs(gen, 4, 8));
    CHECK(out.all_in_unit_interval());
  }
}

TEST_CASE("expectation rejects out-of-range probabilities") {
  RealMatrix bad(2, 2, 0.5);
  bad(0, 0) = 1.5;
  CHECK_THROWS_AS(linear_ssa_expectation(bad, RealMatrix(2, 2, 0.5), RealMatrix(2, 2, 0.5)),
                  std::invalid_argument);
}

TEST_CASE("expectation matches Monte Carlo over independent time steps") {
  std::mt19937_64 gen(13);
  const std::size_t n = 4, dk = 8;
  const BernoulliInputs inputs{random_probs(gen, n, dk), random_probs(gen, n, dk),
                               random_probs(gen, n, dk)};
  const RealMatrix expected = linear_ssa_expectation(inputs.pq, inputs.pk, inputs.pv);

  SsaConfig cfg;
  cfg.tokens = n;
  cfg.embed_dim = 8;
  cfg.key_dim = dk;
  cfg.t_steps = 1u << 14;
  cfg.global_seed = 20240915;
  const RealMatrix decoded = decode_output(ssa_run_independent(inputs, cfg));

  const double bound = 4.0 * std::sqrt(0.25 / static_cast<double>(cfg.t_steps));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dk; ++d) {
      CHECK(std::abs(decoded(i, d) - expected(i, d)) <= bound);
    }
  }
}

TEST_CASE("score params: all-ones and disjoint supports") {
  const SpikeMatrix ones(2, 4, 1);
  const RealMatrix p = exact_score_params(ones, ones);
  for (double v : p.data()) CHECK(v == 1.0);

  const SpikeMatrix q = SpikeMatrix::from_rows({{1, 1, 0, 0}, {1, 0, 1, 0}});
  const SpikeMatrix k = SpikeMatrix::from_rows({{0, 0, 1, 1}, {0, 1, 0, 1}});
  const RealMatrix disjoint = exact_score_params(q, k);
  CHECK(disjoint(0, 0) == 0.0);  // rows with disjoint supports
}

TEST_CASE("score params match a hand enumeration at N=2, D_K=4") {
  const SpikeMatrix q = SpikeMatrix::from_rows({{1, 0, 1, 1}, {0, 1, 1, 0}});
  const SpikeMatrix k = SpikeMatrix::from_rows({{1, 1, 0, 1}, {0, 0, 1, 1}});
  const RealMatrix p = exact_score_params(q, k);
  // Row 0 of Q against K rows: (1&1)+(0&1)+(1&0)+(1&1)=2; (1&0)+(0&0)+(1&1)+(1&1)=2.
  CHECK(p(0, 0) == 2.0 / 4.0);
  CHECK(p(0, 1) == 2.0 / 4.0);
  // Row 1: (0&1)+(1&1)+(1&0)+(0&1)=1; (0&0)+(1&0)+(1&1)+(0&1)=1.
  CHECK(p(1, 0) == 1.0 / 4.0);
  CHECK(p(1, 1) == 1.0 / 4.0);
}

TEST_CASE("attn params: all-ones scores average the value columns") {
  const SpikeMatrix s(2, 2, 1);
  const SpikeMatrix v = SpikeMatrix::from_rows({{1, 0, 1, 1}, {0, 0, 1, 0}});
  const RealMatrix p = exact_attn_params(s, v);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(p(i, 0) == 0.5);
    CHECK(p(i, 1) == 0.0);
    CHECK(p(i, 2) == 1.0);
    CHECK(p(i, 3) == 0.5);
  }
}

TEST_CASE("attn params match a hand enumeration at N=2, D_K=4") {
  const SpikeMatrix s = SpikeMatrix::from_rows({{1, 0}, {1, 1}});
  const SpikeMatrix v = SpikeMatrix::from_rows({{1, 1, 0, 0}, {0, 1, 1, 0}});
  const RealMatrix p = exact_attn_params(s, v);
  // Row 0 attends only to value row 0.
  CHECK(p(0, 0) == 0.5);
  CHECK(p(0, 1) == 0.5);
  CHECK(p(0, 2) == 0.0);
  CHECK(p(0, 3) == 0.0);
  // Row 1 attends to both value rows.
  CHECK(p(1, 0) == 0.5);
  CHECK(p(1, 1) == 1.0);
  CHECK(p(1, 2) == 0.5);
  CHECK(p(1, 3) == 0.0);
}

TEST_CASE("attn params with zero values are zero") {
  const SpikeMatrix s(3, 3, 1);
  const RealMatrix p = exact_attn_params(s, SpikeMatrix(3, 5));
  for (double v : p.data()) CHECK(v == 0.0);
}

TEST_CASE("two-stage exact params compose to the linear expectation on binary inputs") {
  // For binary matrices, AND is multiplication, so feeding spikes into the
  // probability-domain oracle must reproduce the composed exact params.
  std::mt19937_64 gen(14);
  for (int inst = 0; inst < 25; ++inst) {
    const SpikeMatrix q = random_spikes(gen, 4, 8);
    const SpikeMatrix k = random_spikes(gen, 4, 8);
    const SpikeMatrix v = random_spikes(gen, 4, 8);
    const RealMatrix via_linear = linear_ssa_expectation(q.to_real(), k.to_real(), v.to_real());
    const RealMatrix score = exact_score_params(q, k);
    // E[attn param] over S ~ Bern(score): replace S bits by their means.
    RealMatrix expect(4, 8, 0.0);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t d = 0; d < 8; ++d) {
        double acc = 0.0;
        for (std::size_t j = 0; j < 4; ++j) acc += score(i, j) * v(j, d);
        expect(i, d) = acc / 4.0;
      }
    }
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t d = 0; d < 8; ++d) {
        CHECK(via_linear(i, d) == doctest::Approx(expect(i, d)).epsilon(1e-12));
      }
    }
  }
}
