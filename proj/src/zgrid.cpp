#include "hope/zgrid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hope/errors.hpp"
#include "hope/types.hpp"

namespace hope {

std::vector<double> chebyshev_nodes(int n, double a, double b) {
  std::vector<double> z(n);
  const int N = n - 1;
  for (int j = 0; j < n; ++j) {
    // sin form keeps the nodes exactly antisymmetric
    const double x = N == 0 ? 0.0 : std::sin(kPi * (2.0 * j - N) / (2.0 * N));
    z[j] = 0.5 * (a + b) + 0.5 * (b - a) * x;
  }
  z.front() = a;
  z.back() = b;
  return z;
}

Eigen::MatrixXd chebyshev_diff_matrix(int n, double a, double b) {
  const int N = n - 1;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  if (N == 0) return D;
  // Ascending reference nodes x_j = -cos(pi j / N).
  std::vector<double> x(n), c(n);
  for (int j = 0; j < n; ++j) {
    x[j] = std::sin(kPi * (2.0 * j - N) / (2.0 * N));
    c[j] = ((j == 0 || j == N) ? 2.0 : 1.0) * ((j % 2) ? -1.0 : 1.0);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) D(i, j) = (c[i] / c[j]) / (x[i] - x[j]);
    }
  }
  // Negative-sum trick for the diagonal.
  for (int i = 0; i < n; ++i) D(i, i) = -D.row(i).sum();
  return D * (2.0 / (b - a));
}

std::vector<double> clenshaw_curtis_weights(int n, double a, double b) {
  const int N = n - 1;
  std::vector<double> w(n, 0.0);
  if (N == 0) {
    w[0] = b - a;
    return w;
  }
  std::vector<double> theta(n);
  for (int j = 0; j < n; ++j) theta[j] = kPi * j / N;
  std::vector<double> v(n, 1.0);
  if (N % 2 == 0) {
    w[0] = w[N] = 1.0 / (N * N - 1.0);
    for (int k = 1; k < N / 2; ++k)
      for (int j = 1; j < N; ++j) v[j] -= 2.0 * std::cos(2.0 * k * theta[j]) / (4.0 * k * k - 1.0);
    for (int j = 1; j < N; ++j) v[j] -= std::cos(N * theta[j]) / (N * N - 1.0);
  } else {
    w[0] = w[N] = 1.0 / (static_cast<double>(N) * N);
    for (int k = 1; k <= (N - 1) / 2; ++k)
      for (int j = 1; j < N; ++j) v[j] -= 2.0 * std::cos(2.0 * k * theta[j]) / (4.0 * k * k - 1.0);
  }
  for (int j = 1; j < N; ++j) w[j] = 2.0 * v[j] / N;
  for (auto& wj : w) wj *= 0.5 * (b - a);
  return w;
}

namespace {

std::vector<int> distribute_intervals(int total, const std::vector<double>& weights) {
  const int E = static_cast<int>(weights.size());
  const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<int> counts(E);
  std::vector<std::pair<double, int>> remainders;
  int used = 0;
  for (int e = 0; e < E; ++e) {
    const double exact = total * weights[e] / wsum;
    counts[e] = std::max(2, static_cast<int>(std::floor(exact)));
    used += counts[e];
    remainders.push_back({exact - std::floor(exact), e});
  }
  std::sort(remainders.begin(), remainders.end(), std::greater<>());
  for (std::size_t k = 0; used < total; k = (k + 1) % remainders.size()) {
    ++counts[remainders[k].second];
    ++used;
  }
  while (used > total) {
    auto it = std::max_element(counts.begin(), counts.end());
    if (*it <= 2) throw ConfigError("too few z nodes for the requested elements");
    --*it;
    --used;
  }
  return counts;
}

}  // namespace

ZGrid::ZGrid(double h, const ZGridSpec& spec) : h_(h) {
  if (!(h > 0.0)) throw ConfigError("slab half-height must be positive");
  std::vector<double> pts{-h};
  for (double b : spec.breaks) {
    if (!(b > pts.back()) || !(b < h))
      throw ConfigError("z breaks must be ascending and strictly inside (-h, h)");
    pts.push_back(b);
  }
  pts.push_back(h);
  const int E = static_cast<int>(pts.size()) - 1;

  std::vector<int> counts = spec.counts;
  if (counts.empty()) {
    if (spec.nodes < 2 * E + 1) throw ConfigError("too few z nodes for the requested elements");
    std::vector<double> w = spec.weights;
    if (w.empty()) {
      for (int e = 0; e < E; ++e) w.push_back(1.0);
    }
    if (static_cast<int>(w.size()) != E) throw ConfigError("one z weight per element required");
    counts = distribute_intervals(spec.nodes - 1, w);
  } else if (static_cast<int>(counts.size()) != E) {
    throw ConfigError("one z interval count per element required");
  }

  const int N = std::accumulate(counts.begin(), counts.end(), 0) + 1;
  nodes_.assign(N, 0.0);
  weights_.assign(N, 0.0);
  D_ = Eigen::MatrixXd::Zero(N, N);
  std::vector<int> owners(N, 0);

  int offset = 0;
  for (int e = 0; e < E; ++e) {
    const int n = counts[e] + 1;
    if (n < 3) throw ConfigError("each z element needs at least 3 nodes");
    Element el;
    el.first = offset;
    el.last = offset + n - 1;
    el.a = pts[e];
    el.b = pts[e + 1];
    el.D = chebyshev_diff_matrix(n, el.a, el.b);
    el.D2 = el.D * el.D;
    const auto z = chebyshev_nodes(n, el.a, el.b);
    const auto w = clenshaw_curtis_weights(n, el.a, el.b);
    for (int j = 0; j < n; ++j) {
      nodes_[offset + j] = z[j];
      weights_[offset + j] += w[j];
      D_.block(offset + j, offset, 1, n) += el.D.row(j);
      ++owners[offset + j];
    }
    elements_.push_back(std::move(el));
    offset += n - 1;
  }
  for (int i = 0; i < N; ++i) {
    if (owners[i] > 1) D_.row(i) /= owners[i];
  }
}

Eigen::MatrixXd ZGrid::helmholtz_system(double k2) const {
  const int N = size();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    const Element& el = elements_[e];
    const int n = el.last - el.first + 1;
    for (int j = 1; j < n - 1; ++j) {
      A.block(el.first + j, el.first, 1, n) = -el.D2.row(j);
      A(el.first + j, el.first + j) += k2;
    }
    if (e + 1 < elements_.size()) {
      const Element& nx = elements_[e + 1];
      const int m = nx.last - nx.first + 1;
      A.block(el.last, el.first, 1, n) += el.D.row(n - 1);
      A.block(el.last, nx.first, 1, m) -= nx.D.row(0);
    }
  }
  A(0, 0) = 1.0;
  A(N - 1, N - 1) = 1.0;
  return A;
}

double ZGrid::interpolate(const Eigen::VectorXd& values, double z) const {
  for (const Element& el : elements_) {
    if (z < el.a || z > el.b) continue;
    const int n = el.last - el.first + 1;
    // Barycentric weights for Chebyshev-Lobatto points: (-1)^j, halved at the ends.
    double num = 0.0, den = 0.0;
    for (int j = 0; j < n; ++j) {
      const double zj = nodes_[el.first + j];
      const double diff = z - zj;
      if (diff == 0.0) return values(el.first + j);
      double w = (j % 2) ? -1.0 : 1.0;
      if (j == 0 || j == n - 1) w *= 0.5;
      num += w / diff * values(el.first + j);
      den += w / diff;
    }
    return num / den;
  }
  throw ConfigError("interpolation point outside [-h, h]");
}

}  // namespace hope
