//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/numerics/tape.h"

#include <string>

namespace molfp::numerics {

template <class T>
Var<T> Tape<T>::constant(Tensor<T> value) {
  return push(std::move(value), {}, nullptr);
}

template <class T>
Var<T> Tape<T>::parameter(Parameter<T> &param) {
  auto it = param_nodes_.find(&param);
  if (it != param_nodes_.end())
    return Var<T> { this, it->second };
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  Node node;
  node.param = &param;
  nodes_.push_back(std::move(node));
  param_nodes_.emplace(&param, id);
  return Var<T> { this, id };
}

template <class T>
Var<T> Tape<T>::view(const Tensor<T> &value) {
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  Node node;
  node.external = &value;
  nodes_.push_back(std::move(node));
  return Var<T> { this, id };
}

template <class T>
Var<T> Tape<T>::push(Tensor<T> value, std::vector<std::uint32_t> inputs,
                     BackwardFn backward) {
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  Node node;
  node.value = std::move(value);
  node.inputs = std::move(inputs);
  node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  return Var<T> { this, id };
}

template <class T>
const Tensor<T> &Tape<T>::value(std::uint32_t id) const {
  const Node &node = nodes_.at(id);
  if (node.param)
    return node.param->value;
  return node.external ? *node.external : node.value;
}

template <class T>
Tensor<T> &Tape<T>::grad(std::uint32_t id) {
  Node &node = nodes_.at(id);
  if (node.grad.empty())
    node.grad = Tensor<T>::zeros_like(value(id));
  return node.grad;
}

template <class T>
void Tape<T>::backward(Var<T> loss) {
  if (loss.tape != this)
    throw Error("numerics.tape", "loss belongs to a different tape");
  if (value(loss.id).numel() != 1)
    throw ShapeError("backward needs a scalar loss, got shape "
                     + shape_string(value(loss.id).shape()));

  for (std::uint32_t id = 0; id < nodes_.size(); ++id) {
    for (std::uint32_t in: nodes_[id].inputs) {
      if (in >= id)
        throw Error("numerics.cycle",
                    "node " + std::to_string(id) + " depends on node "
                        + std::to_string(in) + " recorded after it");
    }
  }

  for (Node &node: nodes_)
    node.grad = Tensor<T>();
  grad(loss.id)[0] = T(1);

  for (std::uint32_t id = loss.id + 1; id-- > 0;) {
    Node &node = nodes_[id];
    if (node.grad.empty())
      continue;
    if (node.backward)
      node.backward(*this, id);
    if (node.param) {
      Tensor<T> &pg = node.param->grad;
      if (pg.shape() != node.param->value.shape())
        pg = Tensor<T>::zeros_like(node.param->value);
      for (std::size_t i = 0; i < pg.numel(); ++i)
        pg[i] += node.grad[i];
    }
  }
}

template class Tape<float>;
template class Tape<double>;

}  // namespace molfp::numerics
