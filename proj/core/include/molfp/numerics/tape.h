//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_NUMERICS_TAPE_H_
#define MOLFP_NUMERICS_TAPE_H_

#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "molfp/numerics/tensor.h"

namespace molfp::numerics {

// A trainable tensor with its accumulated gradient.
template <class T>
struct Parameter {
  std::string name;
  Tensor<T> value;
  Tensor<T> grad;

  Parameter() = default;
  Parameter(std::string n, Tensor<T> v)
      : name(std::move(n)), value(std::move(v)),
        grad(Tensor<T>::zeros_like(value)) { }

  void zero_grad() { grad = Tensor<T>::zeros_like(value); }
};

template <class T>
class Tape;

// Handle to a node on a tape.
template <class T>
struct Var {
  Tape<T> *tape = nullptr;
  std::uint32_t id = 0;

  const Tensor<T> &value() const { return tape->value(*this); }
  const Shape &shape() const { return value().shape(); }
};

// Append-only record of a forward computation. References to node values
// and gradients stay valid while the tape grows. Nodes are created in
// evaluation order, so reverse creation order is a valid topological order
// for the backward sweep.
template <class T>
class Tape {
public:
  using BackwardFn = std::function<void(Tape &, std::uint32_t self)>;

  Tape() = default;
  Tape(const Tape &) = delete;
  Tape &operator=(const Tape &) = delete;

  Var<T> constant(Tensor<T> value);

  // Leaf bound to `param`; repeated calls return the same node.
  Var<T> parameter(Parameter<T> &param);

  // Non-differentiable leaf reading `value` in place. `value` must outlive
  // the tape.
  Var<T> view(const Tensor<T> &value);

  // Records a computed node. Every input id must precede the new node.
  Var<T> push(Tensor<T> value, std::vector<std::uint32_t> inputs,
              BackwardFn backward);

  const Tensor<T> &value(Var<T> v) const { return value(v.id); }
  const Tensor<T> &value(std::uint32_t id) const;

  // Gradient buffer of a node, allocated as zeros on first access.
  Tensor<T> &grad(std::uint32_t id);
  Tensor<T> &grad(Var<T> v) { return grad(v.id); }
  bool has_grad(std::uint32_t id) const { return !nodes_[id].grad.empty(); }

  // Reverse sweep from a scalar `loss`. Parameter gradients are added to
  // Parameter::grad; parameters not reachable from the loss receive nothing.
  // Throws Error("numerics.cycle") if a node references a later node.
  void backward(Var<T> loss);

  std::size_t size() const noexcept { return nodes_.size(); }

private:
  struct Node {
    Tensor<T> value;
    Tensor<T> grad;
    std::vector<std::uint32_t> inputs;
    BackwardFn backward;
    Parameter<T> *param = nullptr;
    const Tensor<T> *external = nullptr;
  };

  std::deque<Node> nodes_;
  std::unordered_map<Parameter<T> *, std::uint32_t> param_nodes_;
};

extern template class Tape<float>;
extern template class Tape<double>;

}  // namespace molfp::numerics

#endif  // MOLFP_NUMERICS_TAPE_H_
