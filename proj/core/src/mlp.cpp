#include "subdiv/mlp.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace subdiv {

std::vector<LayerSpec> load_ann_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open weights file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed weights file " + path + ": " + e.what());
  }
  if (!j.is_array() || j.empty())
    throw std::runtime_error("weights file must be a non-empty layer array: " +
                             path);

  std::vector<LayerSpec> layers;
  for (const auto& lj : j) {
    LayerSpec layer;
    if (!lj.contains("W") || !lj.contains("b") || !lj.contains("activation"))
      throw std::runtime_error("layer missing W/b/activation: " + path);
    layer.W = lj.at("W").get<std::vector<std::vector<double>>>();
    layer.b = lj.at("b").get<std::vector<double>>();
    std::string act = lj.at("activation").get<std::string>();
    if (act == "tanh") {
      layer.activation = LayerSpec::Activation::Tanh;
    } else if (act == "linear") {
      layer.activation = LayerSpec::Activation::Linear;
    } else {
      throw std::runtime_error("unknown activation '" + act + "' in " + path);
    }
    if (layer.W.empty() || layer.b.size() != layer.W.size())
      throw std::runtime_error("layer W/b dimension mismatch in " + path);
    for (const auto& row : layer.W)
      if (row.size() != layer.W[0].size())
        throw std::runtime_error("ragged W rows in " + path);
    if (!layers.empty() && layer.in_dim() != layers.back().out_dim())
      throw std::runtime_error("layer dimension chain mismatch in " + path);
    layers.push_back(std::move(layer));
  }
  return layers;
}

std::vector<NodeId> build_mlp(DagBuilder& builder,
                              const std::vector<LayerSpec>& layers,
                              const std::vector<NodeId>& inputs) {
  if (layers.empty()) throw std::runtime_error("empty layer sequence");
  if (layers.front().in_dim() != inputs.size())
    throw std::runtime_error("MLP input dimension mismatch");

  std::vector<NodeId> cur = inputs;
  for (const LayerSpec& layer : layers) {
    std::vector<NodeId> next(layer.out_dim());
    for (std::size_t r = 0; r < layer.out_dim(); ++r) {
      // left fold: ((w0*x0 + w1*x1) + ...) + b
      NodeId acc = builder.binary(BinOp::Mul, builder.constant(layer.W[r][0]),
                                  cur[0]);
      for (std::size_t c = 1; c < layer.in_dim(); ++c) {
        NodeId term = builder.binary(BinOp::Mul,
                                     builder.constant(layer.W[r][c]), cur[c]);
        acc = builder.binary(BinOp::Add, acc, term);
      }
      acc = builder.binary(BinOp::Add, acc, builder.constant(layer.b[r]));
      if (layer.activation == LayerSpec::Activation::Tanh)
        acc = builder.unary(UnOp::Tanh, acc);
      next[r] = acc;
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace subdiv
