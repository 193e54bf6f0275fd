#pragma once

#include <vector>

#include <Eigen/Core>

namespace hope {

// Layout of the vertical discretization. With no breaks the grid is a single
// Chebyshev element on [-h, h]; breaks split it into elements that share their
// end nodes. Interval counts are distributed by weight unless given explicitly.
struct ZGridSpec {
  int nodes = 129;                // distinct nodes including both faces
  std::vector<double> breaks;     // ascending, strictly inside (-h, h)
  std::vector<double> weights;    // one per element, optional
  std::vector<int> counts;        // intervals per element, optional
};

// Chebyshev-Gauss-Lobatto collocation on [-h, h], ascending node order.
class ZGrid {
 public:
  struct Element {
    int first = 0;  // global index of the lower end node
    int last = 0;   // global index of the upper end node
    double a = 0.0, b = 0.0;
    Eigen::MatrixXd D;   // local first-derivative matrix
    Eigen::MatrixXd D2;  // local second-derivative matrix
  };

  ZGrid(double h, const ZGridSpec& spec);

  int size() const { return static_cast<int>(nodes_.size()); }
  double h() const { return h_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<Element>& elements() const { return elements_; }
  // Global first derivative; interface rows average the two one-sided rows.
  const Eigen::MatrixXd& D() const { return D_; }

  // Square system for -u'' + k2*u: collocation rows inside elements, C1
  // continuity rows at interfaces, identity rows at both faces.
  Eigen::MatrixXd helmholtz_system(double k2) const;

  // One-sided derivative rows at z = -h (index 0) and z = h (index N-1).
  Eigen::RowVectorXd bottom_derivative_row() const { return D_.row(0); }
  Eigen::RowVectorXd top_derivative_row() const { return D_.row(size() - 1); }

  // Barycentric interpolation of nodal values at an arbitrary z.
  double interpolate(const Eigen::VectorXd& values, double z) const;

 private:
  double h_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<Element> elements_;
  Eigen::MatrixXd D_;
};

// Chebyshev points on [a, b] (ascending), differentiation matrix and
// Clenshaw-Curtis weights for n points.
std::vector<double> chebyshev_nodes(int n, double a, double b);
Eigen::MatrixXd chebyshev_diff_matrix(int n, double a, double b);
std::vector<double> clenshaw_curtis_weights(int n, double a, double b);

}  // namespace hope
