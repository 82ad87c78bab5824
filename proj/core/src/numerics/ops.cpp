//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/numerics/ops.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "molfp/numerics/kernels.h"

namespace molfp::numerics {
namespace {
template <class T>
Tape<T> &same_tape(Var<T> a, Var<T> b) {
  if (a.tape == nullptr || a.tape != b.tape)
    throw Error("numerics.tape", "operands live on different tapes");
  return *a.tape;
}

void require(bool cond, const std::string &what) {
  if (!cond)
    throw ShapeError(what);
}

template <class T>
void add_into(Tensor<T> &dst, const Tensor<T> &src) {
  T *d = dst.data();
  const T *s = src.data();
  for (std::size_t i = 0; i < dst.numel(); ++i)
    d[i] += s[i];
}

template <class T>
void softmax_inplace(Tensor<T> &x, const Mask *mask) {
  const std::size_t n = x.cols();
  if (mask) {
    require(mask->cols() == n && mask->numel() > 0
                && x.numel() % mask->numel() == 0,
            "mask " + shape_string(mask->shape())
                + " does not broadcast to " + shape_string(x.shape()));
  }
  const T masked = static_cast<T>(kMaskedLogit);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    T *row = x.data() + r * n;
    if (mask) {
      const std::uint8_t *m = mask->data() + (r * n) % mask->numel();
      bool any = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (m[j])
          row[j] += masked;
        else
          any = true;
      }
      if (!any)
        throw Error("numerics.fully_masked",
                    "softmax row " + std::to_string(r) + " is fully masked");
    }
    T mx = row[0];
    for (std::size_t j = 1; j < n; ++j)
      mx = std::max(mx, row[j]);
    T total = 0;
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = std::exp(row[j] - mx);
      total += row[j];
    }
    const T inv = T(1) / total;
    for (std::size_t j = 0; j < n; ++j)
      row[j] *= inv;
  }
}
}  // namespace

template <class T>
Tensor<T> matmul(const Tensor<T> &a, const Tensor<T> &b) {
  require(a.rank() == 2 && b.rank() == 2 && a.dim(1) == b.dim(0),
          "matmul: cannot multiply " + shape_string(a.shape()) + " by "
              + shape_string(b.shape()));
  Tensor<T> out({ a.dim(0), b.dim(1) });
  kernels::gemm_nn(a.dim(0), b.dim(1), a.dim(1), a.data(), b.data(),
                   out.data(), false);
  return out;
}

template <class T>
Tensor<T> softmax_rows(const Tensor<T> &x, const Mask *mask) {
  Tensor<T> out = x;
  softmax_inplace(out, mask);
  return out;
}

template <class T>
Var<T> matmul(Var<T> a, Var<T> b) {
  Tape<T> &tape = same_tape(a, b);
  Tensor<T> out = matmul(a.value(), b.value());
  const auto ia = a.id, ib = b.id;
  return tape.push(std::move(out), { ia, ib }, [ia, ib](Tape<T> &t, auto self) {
    const Tensor<T> &av = t.value(ia), &bv = t.value(ib);
    const std::size_t m = av.dim(0), k = av.dim(1), n = bv.dim(1);
    const Tensor<T> &g = t.grad(self);
    kernels::gemm_nt(m, k, n, g.data(), bv.data(), t.grad(ia).data(), true);
    kernels::gemm_tn(m, n, k, av.data(), g.data(), t.grad(ib).data(), true);
  });
}

template <class T>
Var<T> linear(Var<T> x, Var<T> w, Var<T> bias) {
  Tape<T> &tape = same_tape(x, w);
  same_tape(x, bias);
  const Tensor<T> &xv = x.value(), &wv = w.value(), &bv = bias.value();
  require(xv.rank() == 2 && wv.rank() == 2 && xv.dim(1) == wv.dim(0),
          "linear: cannot multiply " + shape_string(xv.shape()) + " by "
              + shape_string(wv.shape()));
  require(bv.numel() == wv.dim(1),
          "linear: bias " + shape_string(bv.shape()) + " does not match "
              + shape_string(wv.shape()));
  const std::size_t m = xv.dim(0), k = xv.dim(1), n = wv.dim(1);
  Tensor<T> out({ m, n });
  for (std::size_t i = 0; i < m; ++i)
    std::copy(bv.data(), bv.data() + n, out.data() + i * n);
  kernels::gemm_nn(m, n, k, xv.data(), wv.data(), out.data(), true);

  const auto ix = x.id, iw = w.id, ib = bias.id;
  return tape.push(
      std::move(out), { ix, iw, ib }, [ix, iw, ib](Tape<T> &t, auto self) {
        const Tensor<T> &xv = t.value(ix), &wv = t.value(iw);
        const std::size_t m = xv.dim(0), k = xv.dim(1), n = wv.dim(1);
        const Tensor<T> &g = t.grad(self);
        kernels::gemm_nt(m, k, n, g.data(), wv.data(), t.grad(ix).data(),
                         true);
        kernels::gemm_tn(m, n, k, xv.data(), g.data(), t.grad(iw).data(),
                         true);
        Tensor<T> &gb = t.grad(ib);
        for (std::size_t i = 0; i < m; ++i) {
          const T *gi = g.data() + i * n;
          for (std::size_t j = 0; j < n; ++j)
            gb[j] += gi[j];
        }
      });
}

template <class T>
Var<T> add(Var<T> a, Var<T> b) {
  Tape<T> &tape = same_tape(a, b);
  require(a.shape() == b.shape(), "add: shapes " + shape_string(a.shape())
                                      + " and " + shape_string(b.shape()));
  Tensor<T> out = a.value();
  add_into(out, b.value());
  const auto ia = a.id, ib = b.id;
  return tape.push(std::move(out), { ia, ib }, [ia, ib](Tape<T> &t, auto self) {
    const Tensor<T> &g = t.grad(self);
    add_into(t.grad(ia), g);
    add_into(t.grad(ib), g);
  });
}

template <class T>
Var<T> mul(Var<T> a, Var<T> b) {
  Tape<T> &tape = same_tape(a, b);
  require(a.shape() == b.shape(), "mul: shapes " + shape_string(a.shape())
                                      + " and " + shape_string(b.shape()));
  Tensor<T> out = a.value();
  const Tensor<T> &bv = b.value();
  for (std::size_t i = 0; i < out.numel(); ++i)
    out[i] *= bv[i];
  const auto ia = a.id, ib = b.id;
  return tape.push(std::move(out), { ia, ib }, [ia, ib](Tape<T> &t, auto self) {
    const Tensor<T> &g = t.grad(self);
    const Tensor<T> &av = t.value(ia), &bv = t.value(ib);
    Tensor<T> &ga = t.grad(ia);
    for (std::size_t i = 0; i < g.numel(); ++i)
      ga[i] += g[i] * bv[i];
    Tensor<T> &gb = t.grad(ib);
    for (std::size_t i = 0; i < g.numel(); ++i)
      gb[i] += g[i] * av[i];
  });
}

template <class T>
Var<T> scale(Var<T> a, T factor) {
  Tensor<T> out = a.value();
  for (T &v: out.values())
    v *= factor;
  const auto ia = a.id;
  return a.tape->push(std::move(out), { ia },
                      [ia, factor](Tape<T> &t, auto self) {
                        const Tensor<T> &g = t.grad(self);
                        Tensor<T> &ga = t.grad(ia);
                        for (std::size_t i = 0; i < g.numel(); ++i)
                          ga[i] += g[i] * factor;
                      });
}

template <class T>
Var<T> relu(Var<T> a) {
  Tensor<T> out = a.value();
  for (T &v: out.values())
    v = v > T(0) ? v : T(0);
  const auto ia = a.id;
  return a.tape->push(std::move(out), { ia }, [ia](Tape<T> &t, auto self) {
    const Tensor<T> &g = t.grad(self);
    const Tensor<T> &av = t.value(ia);
    Tensor<T> &ga = t.grad(ia);
    for (std::size_t i = 0; i < g.numel(); ++i)
      ga[i] += av[i] > T(0) ? g[i] : T(0);
  });
}

template <class T>
Var<T> sum(Var<T> a) {
  T total = 0;
  for (T v: a.value().values())
    total += v;
  const auto ia = a.id;
  return a.tape->push(Tensor<T>({ 1 }, total), { ia },
                      [ia](Tape<T> &t, auto self) {
                        const T g = t.grad(self)[0];
                        for (T &v: t.grad(ia).values())
                          v += g;
                      });
}

template <class T>
Var<T> layer_norm(Var<T> x, Var<T> gain, Var<T> bias, T eps) {
  Tape<T> &tape = same_tape(x, gain);
  same_tape(x, bias);
  const Tensor<T> &xv = x.value();
  const std::size_t d = xv.cols(), rows = xv.rows();
  require(d >= 2, "layer_norm: last extent must be >= 2");
  require(gain.value().numel() == d && bias.value().numel() == d,
          "layer_norm: gain/bias must have " + std::to_string(d) + " entries");

  const Tensor<T> &gv = gain.value(), &bv = bias.value();
  Tensor<T> out(xv.shape());
  // Normalized activations and inverse deviations, kept for backward.
  Tensor<T> xhat(xv.shape());
  std::vector<T> inv_std(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const T *xr = xv.data() + r * d;
    T mean = 0;
    for (std::size_t j = 0; j < d; ++j)
      mean += xr[j];
    mean /= static_cast<T>(d);
    T var = 0;
    for (std::size_t j = 0; j < d; ++j)
      var += (xr[j] - mean) * (xr[j] - mean);
    var /= static_cast<T>(d);
    const T inv = T(1) / std::sqrt(var + eps);
    inv_std[r] = inv;
    T *hr = xhat.data() + r * d;
    T *orow = out.data() + r * d;
    for (std::size_t j = 0; j < d; ++j) {
      hr[j] = (xr[j] - mean) * inv;
      orow[j] = hr[j] * gv[j] + bv[j];
    }
  }

  const auto ix = x.id, ig = gain.id, ib = bias.id;
  return tape.push(
      std::move(out), { ix, ig, ib },
      [ix, ig, ib, xhat = std::move(xhat),
       inv_std = std::move(inv_std)](Tape<T> &t, auto self) {
        const Tensor<T> &g = t.grad(self);
        const Tensor<T> &gv = t.value(ig);
        const std::size_t d = g.cols(), rows = g.rows();
        Tensor<T> &gx = t.grad(ix);
        Tensor<T> &gg = t.grad(ig);
        Tensor<T> &gb = t.grad(ib);
        std::vector<T> dh(d);
        for (std::size_t r = 0; r < rows; ++r) {
          const T *gr = g.data() + r * d;
          const T *hr = xhat.data() + r * d;
          T mean_dh = 0, mean_dh_h = 0;
          for (std::size_t j = 0; j < d; ++j) {
            gg[j] += gr[j] * hr[j];
            gb[j] += gr[j];
            dh[j] = gr[j] * gv[j];
            mean_dh += dh[j];
            mean_dh_h += dh[j] * hr[j];
          }
          mean_dh /= static_cast<T>(d);
          mean_dh_h /= static_cast<T>(d);
          T *gxr = gx.data() + r * d;
          for (std::size_t j = 0; j < d; ++j)
            gxr[j] += inv_std[r] * (dh[j] - mean_dh - hr[j] * mean_dh_h);
        }
      });
}

template <class T>
Var<T> softmax_rows(Var<T> x, const Mask *mask) {
  Tensor<T> out = softmax_rows(x.value(), mask);
  const auto ix = x.id;
  return x.tape->push(std::move(out), { ix }, [ix](Tape<T> &t, auto self) {
    const Tensor<T> &g = t.grad(self);
    const Tensor<T> &y = t.value(self);
    Tensor<T> &gx = t.grad(ix);
    const std::size_t n = g.cols();
    for (std::size_t r = 0; r < g.rows(); ++r) {
      const T *gr = g.data() + r * n;
      const T *yr = y.data() + r * n;
      T dot = 0;
      for (std::size_t j = 0; j < n; ++j)
        dot += gr[j] * yr[j];
      T *out = gx.data() + r * n;
      for (std::size_t j = 0; j < n; ++j)
        out[j] += yr[j] * (gr[j] - dot);
    }
  });
}

template <class T>
Var<T> batched_matmul(Var<T> a, Var<T> b, bool transpose_b) {
  Tape<T> &tape = same_tape(a, b);
  const Tensor<T> &av = a.value(), &bv = b.value();
  require(av.rank() == 3 && bv.rank() == 3 && av.dim(0) == bv.dim(0),
          "batched_matmul: need matching [g,m,k] operands, got "
              + shape_string(av.shape()) + " and " + shape_string(bv.shape()));
  const std::size_t groups = av.dim(0), m = av.dim(1), k = av.dim(2);
  const std::size_t n = transpose_b ? bv.dim(1) : bv.dim(2);
  require((transpose_b ? bv.dim(2) : bv.dim(1)) == k,
          "batched_matmul: inner extents differ: " + shape_string(av.shape())
              + " and " + shape_string(bv.shape()));

  Tensor<T> out({ groups, m, n });
  for (std::size_t g = 0; g < groups; ++g) {
    const T *ag = av.data() + g * m * k;
    const T *bg = bv.data() + g * k * n;
    T *cg = out.data() + g * m * n;
    if (transpose_b)
      kernels::gemm_nt(m, n, k, ag, bg, cg, false);
    else
      kernels::gemm_nn(m, n, k, ag, bg, cg, false);
  }

  const auto ia = a.id, ib = b.id;
  return tape.push(
      std::move(out), { ia, ib }, [ia, ib, transpose_b](Tape<T> &t, auto self) {
        const Tensor<T> &av = t.value(ia), &bv = t.value(ib);
        const Tensor<T> &gout = t.grad(self);
        const std::size_t groups = av.dim(0), m = av.dim(1), k = av.dim(2);
        const std::size_t n = gout.dim(2);
        Tensor<T> &ga = t.grad(ia);
        Tensor<T> &gb = t.grad(ib);
        for (std::size_t g = 0; g < groups; ++g) {
          const T *ag = av.data() + g * m * k;
          const T *bg = bv.data() + g * k * n;
          const T *og = gout.data() + g * m * n;
          T *gag = ga.data() + g * m * k;
          T *gbg = gb.data() + g * k * n;
          if (transpose_b) {
            // C = A B^T: dA = dC B, dB = dC^T A
            kernels::gemm_nn(m, k, n, og, bg, gag, true);
            kernels::gemm_tn(m, k, n, og, ag, gbg, true);
          } else {
            // C = A B: dA = dC B^T, dB = A^T dC
            kernels::gemm_nt(m, k, n, og, bg, gag, true);
            kernels::gemm_tn(m, n, k, ag, og, gbg, true);
          }
        }
      });
}

namespace {
// Index maps between [batch*len, heads*dh] and [heads*batch, len, dh].
template <class T>
void permute_heads(const T *src, T *dst, std::size_t batch, std::size_t len,
                   std::size_t heads, std::size_t dh, bool split,
                   bool accumulate) {
  for (std::size_t h = 0; h < heads; ++h) {
    for (std::size_t b = 0; b < batch; ++b) {
      for (std::size_t t = 0; t < len; ++t) {
        const std::size_t flat = ((b * len) + t) * heads * dh + h * dh;
        const std::size_t head = ((h * batch + b) * len + t) * dh;
        const T *from = src + (split ? flat : head);
        T *to = dst + (split ? head : flat);
        if (accumulate) {
          for (std::size_t j = 0; j < dh; ++j)
            to[j] += from[j];
        } else {
          std::copy(from, from + dh, to);
        }
      }
    }
  }
}
}  // namespace

template <class T>
Var<T> split_heads(Var<T> x, std::size_t batch, std::size_t len,
                   std::size_t heads) {
  const Tensor<T> &xv = x.value();
  require(xv.rank() == 2 && xv.dim(0) == batch * len && heads > 0
              && xv.dim(1) % heads == 0,
          "split_heads: bad input " + shape_string(xv.shape()));
  const std::size_t dh = xv.dim(1) / heads;
  Tensor<T> out({ heads * batch, len, dh });
  permute_heads(xv.data(), out.data(), batch, len, heads, dh, true, false);
  const auto ix = x.id;
  return x.tape->push(std::move(out), { ix },
                      [ix, batch, len, heads, dh](Tape<T> &t, auto self) {
                        permute_heads(t.grad(self).data(), t.grad(ix).data(),
                                      batch, len, heads, dh, false, true);
                      });
}

template <class T>
Var<T> merge_heads(Var<T> x, std::size_t batch, std::size_t len,
                   std::size_t heads) {
  const Tensor<T> &xv = x.value();
  require(xv.rank() == 3 && xv.dim(0) == heads * batch && xv.dim(1) == len,
          "merge_heads: bad input " + shape_string(xv.shape()));
  const std::size_t dh = xv.dim(2);
  Tensor<T> out({ batch * len, heads * dh });
  permute_heads(xv.data(), out.data(), batch, len, heads, dh, false, false);
  const auto ix = x.id;
  return x.tape->push(std::move(out), { ix },
                      [ix, batch, len, heads, dh](Tape<T> &t, auto self) {
                        permute_heads(t.grad(self).data(), t.grad(ix).data(),
                                      batch, len, heads, dh, true, true);
                      });
}

template <class T>
Var<T> embedding(Var<T> table, std::span<const std::int32_t> ids) {
  const Tensor<T> &tv = table.value();
  require(tv.rank() == 2, "embedding: table must be rank 2");
  const std::size_t vocab = tv.dim(0), d = tv.dim(1);
  Tensor<T> out({ ids.size(), d });
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || static_cast<std::size_t>(ids[i]) >= vocab)
      throw Error("numerics.index", "embedding id " + std::to_string(ids[i])
                                        + " out of range");
    const T *src = tv.data() + static_cast<std::size_t>(ids[i]) * d;
    std::copy(src, src + d, out.data() + i * d);
  }
  std::vector<std::int32_t> idv(ids.begin(), ids.end());
  const auto it = table.id;
  return table.tape->push(std::move(out), { it },
                          [it, idv = std::move(idv)](Tape<T> &t, auto self) {
                            const Tensor<T> &g = t.grad(self);
                            Tensor<T> &gt = t.grad(it);
                            const std::size_t d = g.cols();
                            for (std::size_t i = 0; i < idv.size(); ++i) {
                              const T *gi = g.data() + i * d;
                              T *dst = gt.data()
                                       + static_cast<std::size_t>(idv[i]) * d;
                              for (std::size_t j = 0; j < d; ++j)
                                dst[j] += gi[j];
                            }
                          });
}

template <class T>
Var<T> dropout(Var<T> x, T p, Rng &rng) {
  if (p <= T(0))
    return x;
  if (p >= T(1))
    throw Error("numerics.dropout", "dropout probability must be < 1");
  const T keep_scale = T(1) / (T(1) - p);
  Tensor<T> keep(x.shape());
  Tensor<T> out = x.value();
  for (std::size_t i = 0; i < out.numel(); ++i) {
    keep[i] = rng.uniform() < static_cast<double>(p) ? T(0) : keep_scale;
    out[i] *= keep[i];
  }
  const auto ix = x.id;
  return x.tape->push(std::move(out), { ix },
                      [ix, keep = std::move(keep)](Tape<T> &t, auto self) {
                        const Tensor<T> &g = t.grad(self);
                        Tensor<T> &gx = t.grad(ix);
                        for (std::size_t i = 0; i < g.numel(); ++i)
                          gx[i] += g[i] * keep[i];
                      });
}

template <class T>
Var<T> cross_entropy(Var<T> logits, std::span<const std::int32_t> targets,
                     std::span<const std::uint8_t> exclude) {
  const Tensor<T> &z = logits.value();
  require(z.rank() == 2 && targets.size() == z.dim(0),
          "cross_entropy: " + std::to_string(targets.size())
              + " targets for logits " + shape_string(z.shape()));
  require(exclude.empty() || exclude.size() == targets.size(),
          "cross_entropy: exclude mask length mismatch");
  const std::size_t n = z.dim(0), vocab = z.dim(1);

  std::size_t counted = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!exclude.empty() && exclude[i])
      continue;
    if (targets[i] < 0 || static_cast<std::size_t>(targets[i]) >= vocab)
      throw Error("numerics.index", "target " + std::to_string(targets[i])
                                        + " out of range");
    ++counted;
  }
  if (counted == 0)
    throw Error("numerics.all_padded",
                "cross_entropy: every position is excluded");

  // Softmax probabilities of counted rows, reused by backward.
  Tensor<T> probs({ n, vocab });
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!exclude.empty() && exclude[i])
      continue;
    const T *zr = z.data() + i * vocab;
    T mx = zr[0];
    for (std::size_t j = 1; j < vocab; ++j)
      mx = std::max(mx, zr[j]);
    T s = 0;
    T *pr = probs.data() + i * vocab;
    for (std::size_t j = 0; j < vocab; ++j) {
      pr[j] = std::exp(zr[j] - mx);
      s += pr[j];
    }
    const T lse = mx + std::log(s);
    total += static_cast<double>(lse - zr[targets[i]]);
    for (std::size_t j = 0; j < vocab; ++j)
      pr[j] /= s;
  }
  const T loss = static_cast<T>(total / static_cast<double>(counted));

  std::vector<std::int32_t> tv(targets.begin(), targets.end());
  std::vector<std::uint8_t> ev(exclude.begin(), exclude.end());
  const auto iz = logits.id;
  return logits.tape->push(
      Tensor<T>({ 1 }, loss), { iz },
      [iz, counted, tv = std::move(tv), ev = std::move(ev),
       probs = std::move(probs)](Tape<T> &t, auto self) {
        const T g = t.grad(self)[0] / static_cast<T>(counted);
        Tensor<T> &gz = t.grad(iz);
        const std::size_t vocab = gz.cols();
        for (std::size_t i = 0; i < tv.size(); ++i) {
          if (!ev.empty() && ev[i])
            continue;
          const T *pr = probs.data() + i * vocab;
          T *gr = gz.data() + i * vocab;
          for (std::size_t j = 0; j < vocab; ++j)
            gr[j] += g * pr[j];
          gr[tv[i]] -= g;
        }
      });
}

#define MOLFP_INSTANTIATE_OPS(T)                                               \
  template Tensor<T> matmul<T>(const Tensor<T> &, const Tensor<T> &);          \
  template Tensor<T> softmax_rows<T>(const Tensor<T> &, const Mask *);         \
  template Var<T> matmul<T>(Var<T>, Var<T>);                                   \
  template Var<T> linear<T>(Var<T>, Var<T>, Var<T>);                           \
  template Var<T> add<T>(Var<T>, Var<T>);                                      \
  template Var<T> mul<T>(Var<T>, Var<T>);                                      \
  template Var<T> scale<T>(Var<T>, T);                                         \
  template Var<T> relu<T>(Var<T>);                                             \
  template Var<T> sum<T>(Var<T>);                                              \
  template Var<T> layer_norm<T>(Var<T>, Var<T>, Var<T>, T);                    \
  template Var<T> softmax_rows<T>(Var<T>, const Mask *);                       \
  template Var<T> batched_matmul<T>(Var<T>, Var<T>, bool);                     \
  template Var<T> split_heads<T>(Var<T>, std::size_t, std::size_t,            \
                                 std::size_t);                                 \
  template Var<T> merge_heads<T>(Var<T>, std::size_t, std::size_t,            \
                                 std::size_t);                                 \
  template Var<T> embedding<T>(Var<T>, std::span<const std::int32_t>);         \
  template Var<T> dropout<T>(Var<T>, T, Rng &);                                \
  template Var<T> cross_entropy<T>(Var<T>, std::span<const std::int32_t>,      \
                                   std::span<const std::uint8_t>);

MOLFP_INSTANTIATE_OPS(float)
MOLFP_INSTANTIATE_OPS(double)

#undef MOLFP_INSTANTIATE_OPS

}  // namespace molfp::numerics
