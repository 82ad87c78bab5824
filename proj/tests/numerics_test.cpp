//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "gradcheck.h"
#include "molfp/numerics/adam.h"
#include "molfp/numerics/kernels.h"
#include "molfp/numerics/ops.h"
#include "molfp/numerics/pca.h"
#include "molfp/numerics/tape.h"
#include "molfp/random.h"

namespace molfp::numerics {
namespace {

using molfp::testing::grad_check;

template <class T>
Tensor<T> random_tensor(Shape shape, Rng &rng, double lo = -1, double hi = 1) {
  Tensor<T> t(std::move(shape));
  for (T &v: t.values())
    v = static_cast<T>(rng.uniform(lo, hi));
  return t;
}

template <class T>
Tensor<T> naive_matmul(const Tensor<T> &a, const Tensor<T> &b) {
  Tensor<T> c({ a.dim(0), b.dim(1) });
  for (std::size_t i = 0; i < a.dim(0); ++i)
    for (std::size_t j = 0; j < b.dim(1); ++j) {
      double s = 0;
      for (std::size_t k = 0; k < a.dim(1); ++k)
        s += static_cast<double>(a.at(i, k)) * b.at(k, j);
      c.at(i, j) = static_cast<T>(s);
    }
  return c;
}

// Projects a tensor-valued output onto a fixed random direction so that every
// output element contributes to the scalar loss with a distinct weight.
Var<double> contract(Tape<double> &tape, Var<double> out, std::uint64_t seed) {
  Rng rng(seed);
  return sum(mul(out, tape.constant(random_tensor<double>(out.shape(), rng))));
}

TEST(MatmulTest, Examples) {
  const Tensor<double> eye({ 2, 2 }, { 1, 0, 0, 1 });
  const Tensor<double> m({ 2, 2 }, { 1, 2, 3, 4 });
  EXPECT_EQ(matmul(eye, m), m);
  const Tensor<double> row({ 1, 2 }, { 1, 2 });
  const Tensor<double> col({ 2, 1 }, { 3, 4 });
  EXPECT_EQ(matmul(row, col).storage(), std::vector<double> { 11 });
}

TEST(MatmulTest, MatchesTripleLoop) {
  Rng rng(1);
  const auto a = random_tensor<float>({ 3, 4 }, rng);
  const auto b = random_tensor<float>({ 4, 5 }, rng);
  const auto got = matmul(a, b), want = naive_matmul(a, b);
  for (std::size_t i = 0; i < got.numel(); ++i)
    EXPECT_NEAR(got[i], want[i], 1e-6);
}

TEST(MatmulTest, RejectsShapeMismatch) {
  EXPECT_THROW(matmul(Tensor<double>({ 2, 3 }), Tensor<double>({ 2, 3 })),
               ShapeError);
}

TEST(MatmulTest, Associative) {
  Rng rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_tensor<double>({ 4, 6 }, rng);
    const auto b = random_tensor<double>({ 6, 3 }, rng);
    const auto c = random_tensor<double>({ 3, 5 }, rng);
    const auto l = matmul(matmul(a, b), c), r = matmul(a, matmul(b, c));
    for (std::size_t i = 0; i < l.numel(); ++i)
      EXPECT_NEAR(l[i], r[i], 1e-10);
    const auto lf = matmul(matmul(a.cast<float>(), b.cast<float>()),
                           c.cast<float>());
    const auto rf = matmul(a.cast<float>(),
                           matmul(b.cast<float>(), c.cast<float>()));
    for (std::size_t i = 0; i < lf.numel(); ++i)
      EXPECT_NEAR(lf[i], rf[i], 1e-4);
  }
}

TEST(KernelsTest, RowsIndependentOfBatch) {
  Rng rng(3);
  const auto a = random_tensor<float>({ 7, 13 }, rng);
  const auto b = random_tensor<float>({ 13, 9 }, rng);
  const auto full = matmul(a, b);
  for (std::size_t r = 0; r < 7; ++r) {
    Tensor<float> one({ 1, 13 });
    std::copy(a.row(r).begin(), a.row(r).end(), one.data());
    const auto single = matmul(one, b);
    for (std::size_t j = 0; j < 9; ++j)
      EXPECT_EQ(single[j], full.at(r, j));
  }
}

TEST(KernelsTest, TransposedVariantsAgree) {
  Rng rng(4);
  const auto a = random_tensor<double>({ 5, 3 }, rng);
  const auto b = random_tensor<double>({ 4, 3 }, rng);
  Tensor<double> bt({ 3, 4 });
  kernels::transpose(4, 3, b.data(), bt.data());
  Tensor<double> nt({ 5, 4 });
  kernels::gemm_nt(5, 4, 3, a.data(), b.data(), nt.data(), false);
  const auto want = naive_matmul(a, bt);
  for (std::size_t i = 0; i < nt.numel(); ++i)
    EXPECT_NEAR(nt[i], want[i], 1e-12);

  Tensor<double> at({ 3, 5 });
  kernels::transpose(5, 3, a.data(), at.data());
  const auto c = random_tensor<double>({ 5, 4 }, rng);
  Tensor<double> tn({ 3, 4 });
  kernels::gemm_tn(5, 4, 3, a.data(), c.data(), tn.data(), false);
  const auto want_tn = naive_matmul(at, c);
  for (std::size_t i = 0; i < tn.numel(); ++i)
    EXPECT_NEAR(tn[i], want_tn[i], 1e-12);
}

TEST(SoftmaxTest, Examples) {
  const auto even = softmax_rows(Tensor<double>({ 2 }, { 0, 0 }));
  EXPECT_DOUBLE_EQ(even[0], 0.5);
  EXPECT_DOUBLE_EQ(even[1], 0.5);

  const auto big = softmax_rows(Tensor<float>({ 2 }, { 1000, 0 }));
  EXPECT_TRUE(std::isfinite(big[0]) && std::isfinite(big[1]));
  EXPECT_NEAR(big[0], 1.0, 1e-6);
  EXPECT_NEAR(big[1], 0.0, 1e-6);

  const Mask mask({ 2 }, { 0, 1 });
  const auto masked = softmax_rows(Tensor<double>({ 2 }, { 0.3, 2.0 }), &mask);
  EXPECT_DOUBLE_EQ(masked[0], 1.0);
  EXPECT_LE(masked[1], 1e-9);
}

TEST(SoftmaxTest, RowsSumToOne) {
  Rng rng(5);
  const auto x = random_tensor<float>({ 4, 8, 8 }, rng, -20, 20);
  const auto y = softmax_rows(x);
  for (std::size_t r = 0; r < y.rows(); ++r) {
    double s = 0;
    for (float v: y.row(r)) {
      EXPECT_GE(v, 0.0f);
      s += v;
    }
    EXPECT_NEAR(s, 1.0, 1e-6);
  }
}

TEST(SoftmaxTest, MaskBroadcastsOverLeadingRows) {
  // A [2,3] mask over a [2*2,2,3]-shaped... here [4,3]: rows 0,2 use mask
  // row 0 and rows 1,3 use mask row 1.
  const Mask mask({ 2, 3 }, { 0, 0, 1, 1, 0, 0 });
  const auto y = softmax_rows(Tensor<double>({ 4, 3 }), &mask);
  EXPECT_LE(y.at(0, 2), 1e-9);
  EXPECT_LE(y.at(2, 2), 1e-9);
  EXPECT_LE(y.at(1, 0), 1e-9);
  EXPECT_LE(y.at(3, 0), 1e-9);
  EXPECT_DOUBLE_EQ(y.at(1, 1), 0.5);
}

TEST(SoftmaxTest, FullyMaskedRowThrows) {
  const Mask mask({ 2 }, { 1, 1 });
  try {
    softmax_rows(Tensor<double>({ 2 }), &mask);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), "numerics.fully_masked");
  }
}

TEST(LayerNormTest, Examples) {
  Tape<double> tape;
  const auto gain = tape.constant(Tensor<double>({ 2 }, 1.0));
  const auto bias = tape.constant(Tensor<double>({ 2 }, 0.0));
  const auto flat = layer_norm(tape.constant(Tensor<double>({ 2 }, 7.0)),
                               gain, bias);
  EXPECT_EQ(flat.value()[0], 0.0);
  EXPECT_EQ(flat.value()[1], 0.0);
  const auto unit = layer_norm(
      tape.constant(Tensor<double>({ 2 }, { 1, -1 })), gain, bias);
  EXPECT_NEAR(unit.value()[0], 1.0, 1e-5);
  EXPECT_NEAR(unit.value()[1], -1.0, 1e-5);
}

TEST(LayerNormTest, NormalizesRandomRows) {
  Rng rng(6);
  Tape<double> tape;
  const std::size_t d = 16;
  const auto y = layer_norm(
      tape.constant(random_tensor<double>({ 5, d }, rng, -3, 9)),
      tape.constant(Tensor<double>({ d }, 1.0)),
      tape.constant(Tensor<double>({ d }, 0.0)));
  for (std::size_t r = 0; r < 5; ++r) {
    double mean = 0, var = 0;
    for (double v: y.value().row(r))
      mean += v;
    mean /= d;
    for (double v: y.value().row(r))
      var += (v - mean) * (v - mean);
    var /= d;
    EXPECT_LT(std::abs(mean), 1e-6);
    EXPECT_LT(std::abs(var - 1), 1e-4);
  }
}

double lse_oracle(const std::vector<double> &z) {
  double mx = z[0];
  for (double v: z)
    mx = std::max(mx, v);
  double s = 0;
  for (double v: z)
    s += std::exp(v - mx);
  return mx + std::log(s);
}

TEST(CrossEntropyTest, Examples) {
  Tape<double> tape;
  const std::vector<std::int32_t> targets { 2 };
  const auto uniform = cross_entropy(tape.constant(Tensor<double>({ 1, 4 })),
                                     std::span<const std::int32_t>(targets));
  EXPECT_NEAR(uniform.value()[0], std::log(4.0), 1e-12);

  const auto sharp = cross_entropy(
      tape.constant(Tensor<double>({ 1, 4 }, { 0, 0, 60, 0 })),
      std::span<const std::int32_t>(targets));
  EXPECT_LT(sharp.value()[0], 1e-20);
}

TEST(CrossEntropyTest, MatchesLogSumExpOracle) {
  Rng rng(7);
  const std::size_t n = 6, v = 5;
  const auto logits = random_tensor<double>({ n, v }, rng, -4, 4);
  const std::vector<std::int32_t> targets { 0, 4, 2, 2, 1, 3 };
  const std::vector<std::uint8_t> pad { 0, 0, 1, 0, 0, 1 };
  double total = 0;
  int counted = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (pad[i])
      continue;
    std::vector<double> row(logits.row(i).begin(), logits.row(i).end());
    total += lse_oracle(row) - row[targets[i]];
    ++counted;
  }
  Tape<double> tape;
  const auto loss = cross_entropy(tape.constant(logits),
                                  std::span<const std::int32_t>(targets),
                                  std::span<const std::uint8_t>(pad));
  EXPECT_NEAR(loss.value()[0], total / counted, 1e-6);
}

TEST(CrossEntropyTest, AllPaddedThrows) {
  Tape<double> tape;
  const std::vector<std::int32_t> targets { 0, 1 };
  const std::vector<std::uint8_t> pad { 1, 1 };
  try {
    cross_entropy(tape.constant(Tensor<double>({ 2, 3 })),
                  std::span<const std::int32_t>(targets),
                  std::span<const std::uint8_t>(pad));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), "numerics.all_padded");
  }
}

TEST(BackwardTest, Examples) {
  Parameter<double> w("w", Tensor<double>({ 3 }, { 0.5, -2, 7 }));
  {
    Tape<double> tape;
    tape.backward(sum(tape.parameter(w)));
    EXPECT_EQ(w.grad.storage(), (std::vector<double> { 1, 1, 1 }));
  }
  w.zero_grad();
  {
    Tape<double> tape;
    const auto v = tape.parameter(w);
    tape.backward(scale(sum(mul(v, v)), 0.5));
    EXPECT_EQ(w.grad.storage(), w.value.storage());
  }
}

TEST(BackwardTest, UnreachableParameterStaysZero) {
  Parameter<double> used("used", Tensor<double>({ 2 }, 1.0));
  Parameter<double> unused("unused", Tensor<double>({ 2 }, 1.0));
  Tape<double> tape;
  tape.parameter(unused);
  tape.backward(sum(tape.parameter(used)));
  EXPECT_EQ(unused.grad.storage(), (std::vector<double> { 0, 0 }));
}

TEST(BackwardTest, RejectsForwardReference) {
  Tape<double> tape;
  const auto a = tape.constant(Tensor<double>({ 1 }, 1.0));
  const auto bad = tape.push(Tensor<double>({ 1 }, 2.0),
                             { static_cast<std::uint32_t>(a.id + 1) },
                             nullptr);
  try {
    tape.backward(bad);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), "numerics.cycle");
  }
}

TEST(BackwardTest, RejectsNonScalarLoss) {
  Tape<double> tape;
  EXPECT_THROW(tape.backward(tape.constant(Tensor<double>({ 2 }))),
               ShapeError);
}

// Finite-difference checks, one per primitive, on shapes up to 4x8x8.
constexpr double kGradTolerance = 1e-4;

Parameter<double> random_param(const char *name, Shape shape, Rng &rng,
                               double lo = -1, double hi = 1) {
  return Parameter<double>(name, random_tensor<double>(std::move(shape), rng,
                                                       lo, hi));
}

TEST(GradientTest, Matmul) {
  Rng rng(10);
  auto a = random_param("a", { 4, 8 }, rng);
  auto b = random_param("b", { 8, 6 }, rng);
  const auto r = grad_check({ &a, &b }, [&](Tape<double> &t) {
    return contract(t, matmul(t.parameter(a), t.parameter(b)), 1);
  });
  EXPECT_LT(r.worst_relative_error, kGradTolerance) << r.worst_parameter;
}

TEST(GradientTest, Linear) {
  Rng rng(11);
  auto x = random_param("x", { 5, 8 }, rng);
  auto w = random_param("w", { 8, 4 }, rng);
  auto b = random_param("b", { 4 }, rng);
  const auto r = grad_check({ &x, &w, &b }, [&](Tape<double> &t) {
    return contract(
        t, linear(t.parameter(x), t.parameter(w), t.parameter(b)), 2);
  });
  EXPECT_LT(r.worst_relative_error, kGradTolerance) << r.worst_parameter;
}

TEST(GradientTest, ElementwiseOps) {
  Rng rng(12);
  auto a = random_param("a", { 4, 8, 8 }, rng);
  // Keep relu inputs away from the kink.
  for (double &v: a.value.values())
    v += v > 0 ? 0.05 : -0.05;
  auto b = random_param("b", { 4, 8, 8 }, rng);
  const auto r = grad_check({ &a, &b }, [&](Tape<double> &t) {
    const auto va = t.parameter(a), vb = t.parameter(b);
    return contract(t, add(relu(mul(va, vb)), scale(va, 0.7)), 3);
  });
  EXPECT_LT(r.worst_relative_error, kGradTolerance) << r.worst_parameter;
}

TEST(GradientTest, LayerNorm) {
  Rng rng(13);
  auto x = random_param("x", { 4, 8, 8 }, rng, -2, 3);
  auto g = random_param("gain", { 8 }, rng, 0.5, 1.5);
  auto b = random_param("bias", { 8 }, rng);
  const auto r = grad_check({ &x, &g, &b }, [&](Tape<double> &t) {
    return contract(
        t, layer_norm(t.parameter(x), t.parameter(g), t.parameter(b)), 4);
  });
  EXPECT_LT(r.worst_relative_error, kGradTolerance) << r.worst_parameter;
}

TEST(GradientTest, MaskedSoftmax) {
  Rng rng(14);
  auto x = random_param("x", { 4, 8, 8 }, rng, -3, 3);
  Mask mask({ 8, 8 });
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = i + 1; j < 8; ++j)
      mask.at(i, j) = 1;
  const auto r = grad_check({ &x }, [&](Tape<double> &t) {
    return contract(t, softmax_rows(t.parameter(x), &mask), 5);
  });
  EXPECT_LT(r.worst_relative_error, kGradTolerance);
}

TEST(GradientTest, BatchedMatmul) {
  Rng rng(15);
  auto a = random_param("a", { 4, 8, 8 }, rng);
  auto b = random_param("b", { 4, 8, 6 }, rng);
  auto c = random_param("c", { 4, 5, 8 }, rng);
  const auto plain = grad_check({ &a, &b }, [&](Tape<double> &t) {
    return contract(
        t, batched_matmul(t.parameter(a), t.parameter(b), false), 6);
  });
  EXPECT_LT(plain.worst_relative_error, kGradTolerance)
      << plain.worst_parameter;
  const auto transposed = grad_check({ &a, &c }, [&](Tape<double> &t) {
    return contract(
        t, batched_matmul(t.parameter(a), t.parameter(c), true), 7);
  });
  EXPECT_LT(transposed.worst_relative_error, kGradTolerance)
      << transposed.worst_parameter;
}

TEST(GradientTest, HeadPermutations) {
  Rng rng(16);
  auto x = random_param("x", { 2 * 3, 8 }, rng);
  const auto split = grad_check({ &x }, [&](Tape<double> &t) {
    return contract(t, split_heads(t.parameter(x), 2, 3, 4), 8);
  });
  EXPECT_LT(split.worst_relative_error, kGradTolerance);
  auto y = random_param("y", { 4 * 2, 3, 2 }, rng);
  const auto merge = grad_check({ &y }, [&](Tape<double> &t) {
    return contract(t, merge_heads(t.parameter(y), 2, 3, 4), 9);
  });
  EXPECT_LT(merge.worst_relative_error, kGradTolerance);
}

TEST(HeadPermutationTest, RoundTrip) {
  Rng rng(17);
  Tape<double> tape;
  const auto x = tape.constant(random_tensor<double>({ 6, 8 }, rng));
  const auto split = split_heads(x, 2, 3, 4);
  EXPECT_EQ(split.shape(), (Shape { 8, 3, 2 }));
  // Head 1 of batch 0, position 2 holds columns 2..3 of row 2.
  EXPECT_EQ(split.value()[((1 * 2 + 0) * 3 + 2) * 2], x.value().at(2, 2));
  EXPECT_EQ(merge_heads(split, 2, 3, 4).value(), x.value());
}

TEST(GradientTest, EmbeddingWithRepeatedIds) {
  Rng rng(18);
  auto table = random_param("table", { 7, 8 }, rng);
  const std::vector<std::int32_t> ids { 3, 0, 3, 6, 3 };
  const auto r = grad_check({ &table }, [&](Tape<double> &t) {
    return contract(
        t, embedding(t.parameter(table), std::span<const std::int32_t>(ids)),
        10);
  });
  EXPECT_LT(r.worst_relative_error, kGradTolerance);
}

TEST(GradientTest, Dropout) {
  Rng rng(19);
  auto x = random_param("x", { 4, 8 }, rng);
  const auto r = grad_check({ &x }, [&](Tape<double> &t) {
    Rng mask_rng(99);
    return contract(t, dropout(t.parameter(x), 0.3, mask_rng), 11);
  });
  EXPECT_LT(r.worst_relative_error, kGradTolerance);
}

TEST(GradientTest, CrossEntropyWithPadding) {
  Rng rng(20);
  auto z = random_param("logits", { 8, 6 }, rng, -2, 2);
  const std::vector<std::int32_t> targets { 1, 5, 0, 0, 3, 2, 4, 0 };
  const std::vector<std::uint8_t> pad { 0, 0, 0, 1, 0, 0, 0, 1 };
  const auto r = grad_check({ &z }, [&](Tape<double> &t) {
    return cross_entropy(t.parameter(z), std::span<const std::int32_t>(targets),
                         std::span<const std::uint8_t>(pad));
  });
  EXPECT_LT(r.worst_relative_error, kGradTolerance);
}

TEST(GradientTest, AttentionComposite) {
  Rng rng(21);
  const std::size_t batch = 2, len = 4, heads = 2, d = 8;
  auto x = random_param("x", { batch * len, d }, rng);
  auto wq = random_param("wq", { d, d }, rng);
  auto wk = random_param("wk", { d, d }, rng);
  auto wv = random_param("wv", { d, d }, rng);
  auto bias = random_param("b", { d }, rng);
  auto gain = random_param("gain", { d }, rng, 0.5, 1.5);
  Mask mask({ batch, len, len });
  mask.at(len + 1, len - 1) = 1;  // batch 1, query 1, key 3
  const auto r = grad_check(
      { &x, &wq, &wk, &wv, &bias, &gain }, [&](Tape<double> &t) {
        const auto xv = t.parameter(x), b = t.parameter(bias);
        const auto q = split_heads(linear(xv, t.parameter(wq), b), batch, len,
                                   heads);
        const auto k = split_heads(linear(xv, t.parameter(wk), b), batch, len,
                                   heads);
        const auto v = split_heads(linear(xv, t.parameter(wv), b), batch, len,
                                   heads);
        const auto att = softmax_rows(
            scale(batched_matmul(q, k, true), 0.5), &mask);
        const auto mixed = merge_heads(batched_matmul(att, v, false), batch,
                                       len, heads);
        return contract(
            t, layer_norm(add(mixed, xv), t.parameter(gain), b), 12);
      });
  EXPECT_LT(r.worst_relative_error, kGradTolerance) << r.worst_parameter;
}

TEST(AdamTest, ZeroGradientIsIdentity) {
  Rng rng(30);
  Parameter<float> p("p", random_tensor<float>({ 3, 4 }, rng));
  const auto before = p.value;
  AdamState<float> state;
  Parameter<float> *params[] = { &p };
  adam_step<float>(params, state);
  adam_step<float>(params, state);
  EXPECT_EQ(p.value, before);
  EXPECT_EQ(state.t, 2u);
}

TEST(AdamTest, FirstStepMovesAgainstGradientByLr) {
  Parameter<double> p("p", Tensor<double>({ 3 }, { 1, 1, 1 }));
  p.grad = Tensor<double>({ 3 }, { 0.2, -5, 1e-3 });
  AdamState<double> state;
  Parameter<double> *params[] = { &p };
  adam_step<double>(params, state);
  EXPECT_NEAR(p.value[0], 1 - 1e-4, 1e-9);
  EXPECT_NEAR(p.value[1], 1 + 1e-4, 1e-9);
  EXPECT_NEAR(p.value[2], 1 - 1e-4, 1e-8);
}

TEST(AdamTest, MinimizesQuadratic) {
  // Independent scalar recurrence.
  double w_ref = 0, m = 0, v = 0;
  for (int t = 1; t <= 200; ++t) {
    const double g = 2 * (w_ref - 3);
    m = 0.9 * m + 0.1 * g;
    v = 0.999 * v + 0.001 * g * g;
    w_ref -= 0.1 * (m / (1 - std::pow(0.9, t)))
             / (std::sqrt(v / (1 - std::pow(0.999, t))) + 1e-8);
  }

  Parameter<double> w("w", Tensor<double>({ 1 }, 0.0));
  AdamState<double> state(AdamOptions { .lr = 0.1 });
  Parameter<double> *params[] = { &w };
  for (int step = 0; step < 200; ++step) {
    w.zero_grad();
    Tape<double> tape;
    const auto d = add(tape.parameter(w),
                       tape.constant(Tensor<double>({ 1 }, -3.0)));
    tape.backward(sum(mul(d, d)));
    adam_step<double>(params, state);
  }
  EXPECT_LT(std::abs(w.value[0] - 3), 0.1);
  EXPECT_NEAR(w.value[0], w_ref, 1e-12);
}

TEST(AdamTest, RejectsChangedParameterSet) {
  Parameter<double> a("a", Tensor<double>({ 2 }));
  Parameter<double> b("b", Tensor<double>({ 3 }));
  AdamState<double> state;
  Parameter<double> *one[] = { &a };
  adam_step<double>(one, state);
  Parameter<double> *two[] = { &a, &b };
  EXPECT_THROW(adam_step<double>(two, state), ShapeError);
  Parameter<double> *other[] = { &b };
  EXPECT_THROW(adam_step<double>(other, state), ShapeError);
}

// Cyclic Jacobi eigenvalue iteration for a symmetric matrix.
void jacobi_eigen(std::vector<std::vector<double>> a,
                  std::vector<double> &values,
                  std::vector<std::vector<double>> &vectors) {
  const std::size_t n = a.size();
  vectors.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    vectors[i][i] = 1;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        off += a[p][q] * a[p][q];
    if (off < 1e-30)
      break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300)
          continue;
        const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0)
                         / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = vectors[k][p], vkq = vectors[k][q];
          vectors[k][p] = c * vkp - s * vkq;
          vectors[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  values.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    values[i] = a[i][i];
}

TEST(PcaTest, MatchesJacobiOracle) {
  const Tensor<double> x({ 5, 3 }, { 2.5, 0.5, 1.0,  //
                                     0.5, 0.7, -1.2,  //
                                     2.2, 2.9, 0.3,   //
                                     1.9, 2.2, 0.8,   //
                                     3.1, 3.0, -0.4 });
  std::vector<std::vector<double>> cov(3, std::vector<double>(3, 0.0));
  std::vector<double> mean(3, 0.0);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      mean[j] += x.at(i, j) / 5;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b)
        cov[a][b] += (x.at(i, a) - mean[a]) * (x.at(i, b) - mean[b]) / 4;
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
  jacobi_eigen(cov, values, vectors);
  std::vector<std::size_t> order { 0, 1, 2 };
  std::sort(order.begin(), order.end(),
            [&](auto l, auto r) { return values[l] > values[r]; });

  const Pca pca = pca_fit(x, 3);
  ASSERT_EQ(pca.variance.size(), 3u);
  EXPECT_GE(pca.variance[0], pca.variance[1]);
  EXPECT_GE(pca.variance[1], pca.variance[2]);
  for (std::size_t c = 0; c < 3; ++c) {
    EXPECT_NEAR(pca.variance[c], values[order[c]], 1e-10);
    double dot = 0;
    for (std::size_t j = 0; j < 3; ++j)
      dot += pca.components.at(c, j) * vectors[j][order[c]];
    EXPECT_NEAR(std::abs(dot), 1.0, 1e-8);
  }
}

TEST(PcaTest, LineIsRecovered) {
  Tensor<double> x({ 20, 3 });
  std::vector<double> param;
  for (std::size_t i = 0; i < 20; ++i) {
    const double s = static_cast<double>(i) * 0.37 - 2;
    param.push_back(s);
    x.at(i, 0) = 1 + 2 * s;
    x.at(i, 1) = -s;
    x.at(i, 2) = 4 + 0.5 * s;
  }
  const auto scores = pca_project(x, 1);
  const double ms = std::accumulate(param.begin(), param.end(), 0.0) / 20;
  double mp = 0;
  for (std::size_t i = 0; i < 20; ++i)
    mp += scores[i] / 20;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < 20; ++i) {
    sxy += (param[i] - ms) * (scores[i] - mp);
    sxx += (param[i] - ms) * (param[i] - ms);
    syy += (scores[i] - mp) * (scores[i] - mp);
  }
  EXPECT_NEAR(std::abs(sxy / std::sqrt(sxx * syy)), 1.0, 1e-12);
}

TEST(PcaTest, IsotropicSampleKeepsAllVariance) {
  Rng rng(31);
  Tensor<double> x({ 500, 2 });
  for (double &v: x.values())
    v = rng.normal();
  const Pca pca = pca_fit(x, 2);
  double total = 0;
  for (std::size_t j = 0; j < 2; ++j) {
    double m = 0, s = 0;
    for (std::size_t i = 0; i < 500; ++i)
      m += x.at(i, j) / 500;
    for (std::size_t i = 0; i < 500; ++i)
      s += (x.at(i, j) - m) * (x.at(i, j) - m) / 499;
    total += s;
  }
  EXPECT_NEAR(pca.variance[0] + pca.variance[1], total, 1e-9);
}

double reconstruction_error(const Tensor<double> &x, const Pca &pca) {
  const std::size_t n = x.dim(0), d = x.dim(1), k = pca.variance.size();
  double err = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      double r = pca.mean[j];
      for (std::size_t c = 0; c < k; ++c)
        r += pca.scores.at(i, c) * pca.components.at(c, j);
      err += (x.at(i, j) - r) * (x.at(i, j) - r);
    }
  return err;
}

TEST(PcaTest, ReconstructionErrorNonIncreasingInK) {
  Rng rng(32);
  const auto x = random_tensor<double>({ 30, 6 }, rng, -2, 2);
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= 6; ++k) {
    const double err = reconstruction_error(x, pca_fit(x, k));
    EXPECT_LE(err, previous + 1e-9);
    previous = err;
  }
  EXPECT_NEAR(previous, 0.0, 1e-9);
}

TEST(PcaTest, RejectsTooManyComponents) {
  EXPECT_THROW(pca_fit(Tensor<double>({ 3, 5 }), 4), Error);
  EXPECT_THROW(pca_fit(Tensor<double>({ 3, 5 }), 0), Error);
}

}  // namespace
}  // namespace molfp::numerics
