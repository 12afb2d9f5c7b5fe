#ifndef SUBDIV_MLP_HPP
#define SUBDIV_MLP_HPP

#include <string>
#include <vector>

#include "subdiv/dag.hpp"

namespace subdiv {

// One dense layer of an ingested feed-forward network: out = act(W x + b)
// with W stored row-major (rows = outputs).
struct LayerSpec {
  enum class Activation { Tanh, Linear };
  std::vector<std::vector<double>> W;
  std::vector<double> b;
  Activation activation = Activation::Tanh;

  std::size_t out_dim() const { return W.size(); }
  std::size_t in_dim() const { return W.empty() ? 0 : W[0].size(); }
};

// Reads the JSON layer schema: a top-level array of
// {"W": [[...]], "b": [...], "activation": "tanh"|"linear"}.
// Validates the dimension chain.
std::vector<LayerSpec> load_ann_weights(const std::string& path);

// Emits DAG nodes for the network applied to the given input nodes and
// returns the output node ids.
std::vector<NodeId> build_mlp(DagBuilder& builder,
                              const std::vector<LayerSpec>& layers,
                              const std::vector<NodeId>& inputs);

}  // namespace subdiv

#endif
