#pragma once

#include <vector>

namespace relforms {

// Finite-difference weights on arbitrary nodes (Fornberg's algorithm).
// Returns weights w_i such that f^(m)(x0) ~ sum_i w_i f(nodes[i]).
std::vector<double> fornberg_weights(double x0, const std::vector<double>& nodes, int order);

// One first-derivative stencil: node indices along an axis plus weights.
struct Stencil {
  std::vector<int> idx;
  std::vector<double> w;
};

// Tensor-product grid of up to 4 axes with per-axis node coordinates and
// first-derivative stencils (central 4th order in the interior where five
// nodes exist, one-sided at boundaries, degrading gracefully on short axes).
struct Grid {
  std::vector<std::vector<double>> coords;       // [axis][position]
  std::vector<std::vector<Stencil>> stencils;    // [axis][position]
  std::vector<int> dims;
  std::vector<int> strides;
  int total = 0;

  static Grid regular(const std::vector<int>& dims, const std::vector<double>& spacing,
                      const std::vector<double>& offset, int max_width = 5);

  int flatten(const std::vector<int>& idx) const {
    int m = 0;
    for (std::size_t d = 0; d < dims.size(); ++d) m += idx[d] * strides[d];
    return m;
  }
  std::vector<int> unflatten(int m) const {
    std::vector<int> idx(dims.size());
    for (std::size_t d = 0; d < dims.size(); ++d) {
      idx[d] = m / strides[d];
      m %= strides[d];
    }
    return idx;
  }
  double coord(int axis, int m) const { return coords[axis][std::size_t(unflatten(m)[axis])]; }

  // Index of the node with all axis positions negated (coordinates -> -coords),
  // or -1 when the grid is not negation symmetric at that node.
  int mirror(int m) const;
};

}  // namespace relforms
