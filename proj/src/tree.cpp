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

#include "posdom/tree.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "posdom/error.hpp"

namespace posdom {

namespace {

__extension__ typedef unsigned __int128 u128;

// Weighted Gini of a split, up to the constant factor 2/n:
//   aL*bL/nL + aR*bR/nR = (aL*bL*nR + aR*bR*nL) / (nL*nR).
struct SplitScore {
  u128 num;
  u128 den;

  bool operator<(const SplitScore& o) const noexcept {
    return num * o.den < o.num * den;
  }
};

SplitScore score(std::uint64_t in_left, std::uint64_t n_left,
                 std::uint64_t in_right, std::uint64_t n_right) {
  const u128 out_left = n_left - in_left;
  const u128 out_right = n_right - in_right;
  return {u128{in_left} * out_left * n_right + u128{in_right} * out_right * n_left,
          u128{n_left} * n_right};
}

struct Split {
  std::int32_t feature = TreeNode::kLeaf;
  double threshold = 0;
  SplitScore score{};
};

double midpoint(double lo, double hi) {
  const double t = lo + (hi - lo) / 2;
  // Adjacent doubles: the midpoint rounds onto hi, which would route hi left.
  return t < hi ? t : lo;
}

struct Frame {
  std::size_t begin;
  std::size_t end;
  std::uint32_t parent;
  bool is_left;
};

}  // namespace

DecisionTree::DecisionTree(std::size_t dim, std::vector<TreeNode> nodes)
    : dim_(dim), nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw ValidationError("tree has no nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const TreeNode& n = nodes_[i];
    if (n.is_leaf()) continue;
    if (n.feature < 0 || static_cast<std::size_t>(n.feature) >= dim_ ||
        n.left <= i || n.right <= i || n.left >= nodes_.size() ||
        n.right >= nodes_.size()) {
      throw ValidationError("tree node " + std::to_string(i) + " is malformed");
    }
  }
}

Label DecisionTree::predict(std::span<const double> point) const {
  if (point.size() != dim_) {
    throw ArityMismatch("tree takes " + std::to_string(dim_) +
                        " inputs, got " + std::to_string(point.size()));
  }
  const TreeNode* n = &nodes_.front();
  while (!n->is_leaf()) {
    n = &nodes_[point[static_cast<std::size_t>(n->feature)] <= n->threshold
                    ? n->left
                    : n->right];
  }
  return n->label;
}

std::size_t DecisionTree::leaf_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> depth(nodes_.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, depth[i]);
    if (!nodes_[i].is_leaf()) {
      depth[nodes_[i].left] = depth[i] + 1;
      depth[nodes_[i].right] = depth[i] + 1;
    }
  }
  return deepest;
}

DecisionTree train(const PointSet& points, std::span<const Label> labels) {
  if (points.empty()) throw ValidationError("cannot train on an empty dataset");
  if (labels.size() != points.size()) {
    throw ValidationError("dataset has " + std::to_string(points.size()) +
                          " points but " + std::to_string(labels.size()) +
                          " labels");
  }
  const std::size_t m = points.dim();
  std::vector<std::size_t> idx(points.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;

  std::vector<TreeNode> nodes;
  std::vector<Frame> stack{{0, idx.size(), 0, false}};
  std::vector<std::pair<double, bool>> column;  // (value, inside)

  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const std::uint32_t id = static_cast<std::uint32_t>(nodes.size());
    if (!nodes.empty()) {
      (f.is_left ? nodes[f.parent].left : nodes[f.parent].right) = id;
    }

    const std::size_t n = f.end - f.begin;
    std::size_t inside = 0;
    for (std::size_t k = f.begin; k < f.end; ++k) {
      inside += labels[idx[k]] == Label::kInside;
    }
    TreeNode node;
    node.count = n;
    if (inside == 0 || inside == n) {
      node.label = inside == 0 ? Label::kOutside : Label::kInside;
      nodes.push_back(node);
      continue;
    }

    Split best;
    for (std::size_t j = 0; j < m; ++j) {
      column.clear();
      for (std::size_t k = f.begin; k < f.end; ++k) {
        column.emplace_back(points[idx[k]][j], labels[idx[k]] == Label::kInside);
      }
      std::sort(column.begin(), column.end());
      std::size_t in_left = 0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        in_left += column[k].second;
        if (column[k].first == column[k + 1].first) continue;
        const SplitScore s = score(in_left, k + 1, inside - in_left, n - k - 1);
        if (best.feature == TreeNode::kLeaf || s < best.score) {
          best = {static_cast<std::int32_t>(j),
                  midpoint(column[k].first, column[k + 1].first), s};
        }
      }
    }
    if (best.feature == TreeNode::kLeaf) {
      throw ContradictoryData(
          "identical training points carry both labels; the model is not "
          "deterministic");
    }

    const auto j = static_cast<std::size_t>(best.feature);
    const auto mid = std::stable_partition(
        idx.begin() + static_cast<std::ptrdiff_t>(f.begin),
        idx.begin() + static_cast<std::ptrdiff_t>(f.end),
        [&](std::size_t i) { return points[i][j] <= best.threshold; });
    const auto split = static_cast<std::size_t>(mid - idx.begin());

    node.feature = best.feature;
    node.threshold = best.threshold;
    nodes.push_back(node);
    // Right pushed first so the left subtree is numbered first.
    stack.push_back({split, f.end, id, false});
    stack.push_back({f.begin, split, id, true});
  }
  return DecisionTree(m, std::move(nodes));
}

}  // namespace posdom
