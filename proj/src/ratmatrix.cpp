#include "qoper/ratmatrix.hpp"

#include <atomic>
#include <numbers>

namespace qoper {

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> s(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      out.push_back(s);
      return;
    }
    for (int v = start; v < n; ++v) {
      s[depth] = v;
      rec(v + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

int subset_index(const std::vector<std::vector<int>>& basis, const std::vector<int>& s) {
  for (size_t k = 0; k < basis.size(); ++k)
    if (basis[k] == s) return static_cast<int>(k);
  return -1;
}

Scalar submatrix_det(const CMat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  const int k = static_cast<int>(rows.size());
  if (k == 0) return 1;
  CMat s(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) s(i, j) = m(rows[i], cols[j]);
  return k <= 3 ? det_generic(entries(s)) : s.partialPivLu().determinant();
}

CMat compound(const CMat& m, int k) {
  auto b = subsets(static_cast<int>(m.rows()), k);
  CMat c(b.size(), b.size());
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c(i, j) = submatrix_det(m, b[i], b[j]);
  return c;
}

std::vector<Scalar> sample_panel(int count, double radius, std::uint64_t salt) {
  std::vector<Scalar> pts;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int p = 0; p < count; ++p) {
    double rho = radius * (0.55 + 0.45 * std::fmod(0.61803398875 * (p + 1 + salt), 1.0));
    pts.push_back(std::polar(rho, 0.3 + golden * (p + salt)));
  }
  return pts;
}

namespace {
std::atomic<bool> g_parallel{true};
}

void set_parallel_panels(bool on) { g_parallel = on; }
bool parallel_panels() { return g_parallel; }

PanelResult panel_sup(const std::vector<Scalar>& pts, const std::function<double(Scalar)>& f, bool parallel) {
  const int n = static_cast<int>(pts.size());
  std::vector<double> val(n, 0.0);
  std::vector<int> tries(n, 0), bad(n, 0);
#pragma omp parallel for schedule(dynamic) if (parallel && g_parallel)
  for (int p = 0; p < n; ++p) {
    Scalar z = pts[p];
    for (int t = 0; t < 6; ++t) {
      try {
        val[p] = f(z);
        break;
      } catch (const PoleError&) {
        tries[p]++;
        z *= std::polar(1.0 + 0.013 * (t + 1), 0.071 * (t + 1));
        if (t == 5) bad[p] = 1;
      }
    }
  }
  PanelResult r;
  r.points = n;
  for (int p = 0; p < n; ++p) {
    r.sup = std::isfinite(val[p]) ? std::max(r.sup, val[p]) : INFINITY;
    r.retries += tries[p];
    r.failed += bad[p];
  }
  return r;
}

}  // namespace qoper
