// Copyright 2026 The posdom Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POSDOM_TREE_HPP_
#define POSDOM_TREE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "posdom/core.hpp"
#include "posdom/grid.hpp"

namespace posdom {

struct TreeNode {
  static constexpr std::int32_t kLeaf = -1;

  std::int32_t feature = kLeaf;  // split feature, or kLeaf
  double threshold = 0;          // go left iff x[feature] <= threshold
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  Label label = Label::kOutside;  // leaves only
  std::size_t count = 0;          // training points reaching this node

  bool is_leaf() const noexcept { return feature == kLeaf; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

// Fully grown, unpruned binary classification tree. Nodes are stored in
// pre-order (left subtree first); node 0 is the root.
class DecisionTree {
 public:
  DecisionTree(std::size_t dim, std::vector<TreeNode> nodes);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeNode& root() const noexcept { return nodes_.front(); }
  const TreeNode& node(std::uint32_t i) const { return nodes_.at(i); }

  Label predict(std::span<const double> point) const;
  std::size_t leaf_count() const noexcept;
  std::size_t depth() const;

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

 private:
  std::size_t dim_;
  std::vector<TreeNode> nodes_;
};

// CART-style training with Gini impurity. Every impure node is split at the
// candidate threshold (midpoint between consecutive distinct values of one
// feature) with the lowest weighted Gini; ties go to the lowest feature index
// and then the smallest threshold. Impurities are compared exactly in integer
// arithmetic. Throws ContradictoryData if identical points carry different
// labels, ValidationError on empty input.
DecisionTree train(const PointSet& points, std::span<const Label> labels);
inline DecisionTree train(const LabeledDataset& data) {
  return train(data.points, data.labels);
}

inline Label predict(const DecisionTree& tree, std::span<const double> point) {
  return tree.predict(point);
}

}  // namespace posdom

#endif  // POSDOM_TREE_HPP_
