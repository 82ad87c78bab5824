//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/smiles/equivalence.h"

#include <algorithm>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

namespace molfp::smiles {
namespace {
using Signature = std::vector<long>;

// Refines atom colors of both graphs jointly so that equal colors mean equal
// invariants across the pair. Returns false as soon as the color histograms
// of the two graphs differ.
bool refine(const MolGraph &a, const MolGraph &b, std::vector<int> &ca,
            std::vector<int> &cb) {
  auto initial = [](const MolGraph &g, int i) {
    const Atom &atom = g.atom(i);
    return Signature { atom.atomic_number,     atom.aromatic ? 1 : 0,
                       atom.formal_charge,     atom.isotope.value_or(-1),
                       g.hydrogen_count(i),    g.degree(i) };
  };

  auto assign = [](std::vector<Signature> &sa, std::vector<Signature> &sb,
                   std::vector<int> &out_a, std::vector<int> &out_b) {
    std::map<Signature, int> ids;
    for (const auto &s: sa)
      ids.emplace(s, 0);
    for (const auto &s: sb)
      ids.emplace(s, 0);
    int next = 0;
    for (auto &[sig, id]: ids)
      id = next++;
    out_a.resize(sa.size());
    out_b.resize(sb.size());
    for (std::size_t i = 0; i < sa.size(); ++i)
      out_a[i] = ids[sa[i]];
    for (std::size_t i = 0; i < sb.size(); ++i)
      out_b[i] = ids[sb[i]];
    return next;
  };

  auto histogram_equal = [](std::vector<int> x, std::vector<int> y) {
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
  };

  const int n = a.num_atoms();
  std::vector<Signature> sa(n), sb(n);
  for (int i = 0; i < n; ++i) {
    sa[i] = initial(a, i);
    sb[i] = initial(b, i);
  }
  int classes = assign(sa, sb, ca, cb);
  if (!histogram_equal(ca, cb))
    return false;

  auto extend = [](const MolGraph &g, const std::vector<int> &colors, int i) {
    std::vector<std::pair<int, int>> env;
    for (const Neighbor &nb: g.neighbors(i))
      env.emplace_back(static_cast<int>(g.bond(nb.bond).order),
                       colors[nb.atom]);
    std::sort(env.begin(), env.end());
    Signature sig { colors[i] };
    for (auto [order, color]: env) {
      sig.push_back(order);
      sig.push_back(color);
    }
    return sig;
  };

  for (int iter = 0; iter < n; ++iter) {
    for (int i = 0; i < n; ++i) {
      sa[i] = extend(a, ca, i);
      sb[i] = extend(b, cb, i);
    }
    std::vector<int> na, nb;
    const int refined = assign(sa, sb, na, nb);
    if (!histogram_equal(na, nb))
      return false;
    ca = std::move(na);
    cb = std::move(nb);
    if (refined == classes)
      break;
    classes = refined;
  }
  return true;
}

class Matcher {
public:
  Matcher(const MolGraph &a, const MolGraph &b, std::vector<int> ca,
          std::vector<int> cb)
      : a_(a), b_(b), ca_(std::move(ca)), cb_(std::move(cb)),
        map_ab_(a.num_atoms(), -1), map_ba_(b.num_atoms(), -1) {
    // Visit atoms of `a` in BFS order so each new atom (after the first) has
    // an already-mapped neighbor to constrain its candidates.
    std::vector<bool> seen(a.num_atoms(), false);
    order_.push_back(0);
    seen[0] = true;
    for (std::size_t h = 0; h < order_.size(); ++h) {
      for (const Neighbor &nb: a.neighbors(order_[h])) {
        if (!seen[nb.atom]) {
          seen[nb.atom] = true;
          order_.push_back(nb.atom);
        }
      }
    }
  }

  bool run() { return extend(0); }

private:
  bool consistent(int u, int v) const {
    if (ca_[u] != cb_[v])
      return false;
    for (const Neighbor &nb: a_.neighbors(u)) {
      const int mapped = map_ab_[nb.atom];
      if (mapped < 0)
        continue;
      const int bond = b_.find_bond(v, mapped);
      if (bond < 0 || b_.bond(bond).order != a_.bond(nb.bond).order)
        return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size())
      return true;
    const int u = order_[depth];

    std::vector<int> candidates;
    int anchor = -1;
    for (const Neighbor &nb: a_.neighbors(u)) {
      if (map_ab_[nb.atom] >= 0) {
        anchor = map_ab_[nb.atom];
        break;
      }
    }
    if (anchor >= 0) {
      for (const Neighbor &nb: b_.neighbors(anchor))
        candidates.push_back(nb.atom);
    } else {
      for (int v = 0; v < b_.num_atoms(); ++v)
        candidates.push_back(v);
    }

    for (int v: candidates) {
      if (map_ba_[v] >= 0 || !consistent(u, v))
        continue;
      map_ab_[u] = v;
      map_ba_[v] = u;
      if (extend(depth + 1))
        return true;
      map_ab_[u] = -1;
      map_ba_[v] = -1;
    }
    return false;
  }

  const MolGraph &a_;
  const MolGraph &b_;
  std::vector<int> ca_, cb_;
  std::vector<int> map_ab_, map_ba_;
  std::vector<int> order_;
};
}  // namespace

bool graph_equal(const MolGraph &a, const MolGraph &b) {
  if (a.num_atoms() != b.num_atoms() || a.num_bonds() != b.num_bonds())
    return false;
  std::vector<int> ca, cb;
  if (!refine(a, b, ca, cb))
    return false;
  return Matcher(a, b, std::move(ca), std::move(cb)).run();
}

}  // namespace molfp::smiles
