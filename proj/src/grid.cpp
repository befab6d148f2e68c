#include "relforms/grid.hpp"

#include <algorithm>
#include <cmath>

#include "relforms/errors.hpp"

namespace relforms {

std::vector<double> fornberg_weights(double x0, const std::vector<double>& nodes, int order) {
  const int n = int(nodes.size()) - 1;
  const int m = order;
  std::vector<std::vector<std::vector<double>>> d(
      std::size_t(n + 1),
      std::vector<std::vector<double>>(std::size_t(n + 1), std::vector<double>(std::size_t(m + 1), 0.0)));
  d[0][0][0] = 1.0;
  double c1 = 1.0;
  for (int i = 1; i <= n; ++i) {
    double c2 = 1.0;
    for (int j = 0; j < i; ++j) {
      double c3 = nodes[std::size_t(i)] - nodes[std::size_t(j)];
      c2 *= c3;
      for (int k = 0; k <= std::min(i, m); ++k) {
        double prev = k > 0 ? d[std::size_t(i - 1)][std::size_t(j)][std::size_t(k - 1)] : 0.0;
        d[std::size_t(i)][std::size_t(j)][std::size_t(k)] =
            ((nodes[std::size_t(i)] - x0) * d[std::size_t(i - 1)][std::size_t(j)][std::size_t(k)] - k * prev) / c3;
      }
    }
    for (int k = 0; k <= std::min(i, m); ++k) {
      double prev = k > 0 ? d[std::size_t(i - 1)][std::size_t(i - 1)][std::size_t(k - 1)] : 0.0;
      d[std::size_t(i)][std::size_t(i)][std::size_t(k)] =
          c1 / c2 * (k * prev - (nodes[std::size_t(i - 1)] - x0) * d[std::size_t(i - 1)][std::size_t(i - 1)][std::size_t(k)]);
    }
    c1 = c2;
  }
  std::vector<double> w(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) w[j] = d[std::size_t(n)][j][std::size_t(m)];
  return w;
}

Grid Grid::regular(const std::vector<int>& dims_in, const std::vector<double>& spacing,
                   const std::vector<double>& offset, int max_width) {
  Grid g;
  g.dims = dims_in;
  const std::size_t nd = dims_in.size();
  g.coords.resize(nd);
  g.stencils.resize(nd);
  for (std::size_t d = 0; d < nd; ++d) {
    int n = dims_in[d];
    if (n < 1) throw ValidationError("grid axis needs at least one node");
    double h = spacing[d];
    double off = offset[d];
    g.coords[d].resize(std::size_t(n));
    for (int i = 0; i < n; ++i) g.coords[d][std::size_t(i)] = (i - 0.5 * (n - 1) + off) * h;

    g.stencils[d].resize(std::size_t(n));
    int width = std::min(n, max_width);
    for (int i = 0; i < n; ++i) {
      int lo = std::clamp(i - width / 2, 0, n - width);
      std::vector<double> nodes(static_cast<std::size_t>(width), 0.0);
      Stencil s;
      s.idx.resize(std::size_t(width));
      for (int j = 0; j < width; ++j) {
        s.idx[std::size_t(j)] = lo + j;
        nodes[std::size_t(j)] = g.coords[d][std::size_t(lo + j)];
      }
      if (width == 1) {
        s.w = {0.0};  // no variation representable on a single node
      } else {
        s.w = fornberg_weights(g.coords[d][std::size_t(i)], nodes, 1);
      }
      g.stencils[d][std::size_t(i)] = std::move(s);
    }
  }
  g.strides.assign(nd, 1);
  for (std::size_t d = nd - 1; d-- > 0;) g.strides[d] = g.strides[d + 1] * dims_in[d + 1];
  g.total = 1;
  for (std::size_t d = 0; d < nd; ++d) g.total *= dims_in[d];
  return g;
}

int Grid::mirror(int m) const {
  std::vector<int> idx = unflatten(m);
  for (std::size_t d = 0; d < dims.size(); ++d) {
    double target = -coords[d][std::size_t(idx[d])];
    int found = -1;
    for (int i = 0; i < dims[d]; ++i) {
      if (std::abs(coords[d][std::size_t(i)] - target) < 1e-12) {
        found = i;
        break;
      }
    }
    if (found < 0) return -1;
    idx[d] = found;
  }
  return flatten(idx);
}

}  // namespace relforms
