#include "qoper/cartan.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace qoper {

std::vector<int> CartanData::positions() const {
  std::vector<int> p(rank);
  for (int t = 0; t < rank; ++t) p[ordering[t]] = t;
  return p;
}

bool CartanData::simply_laced() const {
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (i != j && a[i][j] < -1) return false;
  return true;
}

namespace {

bool valid_pair(char t, int r) {
  switch (t) {
    case 'A': return r >= 1;
    case 'B': case 'C': return r >= 2;
    case 'D': return r >= 4;
    case 'E': return r >= 6 && r <= 8;
    case 'F': return r == 4;
    case 'G': return r == 2;
    default: return false;
  }
}

void link(std::vector<std::vector<int>>& a, int i, int j) { a[i][j] = a[j][i] = -1; }

}  // namespace

CartanData cartan_matrix(char t, int r) {
  if (!valid_pair(t, r)) {
    std::ostringstream os;
    os << "invalid finite type (" << t << ", " << r << ")";
    throw InputError(os.str());
  }
  CartanData d;
  d.lie_type = t;
  d.rank = r;
  d.a.assign(r, std::vector<int>(r, 0));
  for (int i = 0; i < r; ++i) d.a[i][i] = 2;
  switch (t) {
    case 'A':
      for (int i = 0; i + 1 < r; ++i) link(d.a, i, i + 1);
      break;
    case 'B':  // alpha_r short
      for (int i = 0; i + 1 < r; ++i) link(d.a, i, i + 1);
      d.a[r - 1][r - 2] = -2;
      break;
    case 'C':  // alpha_r long
      for (int i = 0; i + 1 < r; ++i) link(d.a, i, i + 1);
      d.a[r - 2][r - 1] = -2;
      break;
    case 'D':
      for (int i = 0; i + 2 < r; ++i) link(d.a, i, i + 1);
      link(d.a, r - 3, r - 1);
      break;
    case 'E':  // 1-3-4-5-..., 2 attached to 4
      link(d.a, 0, 2);
      link(d.a, 1, 3);
      for (int i = 2; i + 1 < r; ++i) link(d.a, i, i + 1);
      break;
    case 'F':  // alpha_1, alpha_2 long
      link(d.a, 0, 1);
      link(d.a, 2, 3);
      d.a[1][2] = -1;
      d.a[2][1] = -2;
      break;
    case 'G':  // alpha_1 short
      d.a[0][1] = -3;
      d.a[1][0] = -1;
      break;
  }
  d.ordering.resize(r);
  std::iota(d.ordering.begin(), d.ordering.end(), 0);
  return d;
}

CartanData with_ordering(CartanData d, std::vector<int> ordering) {
  d.ordering = std::move(ordering);
  validate(d);
  return d;
}

void validate(const CartanData& d) {
  if ((int)d.a.size() != d.rank) throw InputError("cartan matrix size does not match rank");
  for (int i = 0; i < d.rank; ++i) {
    if ((int)d.a[i].size() != d.rank) throw InputError("cartan matrix is not square");
    if (d.a[i][i] != 2) throw InputError("cartan diagonal must be 2");
    for (int j = 0; j < d.rank; ++j)
      if (i != j && (d.a[i][j] > 0 || ((d.a[i][j] == 0) != (d.a[j][i] == 0))))
        throw InputError("cartan off-diagonal sign/zero pattern violated");
  }
  std::vector<int> o = d.ordering;
  std::sort(o.begin(), o.end());
  for (int t = 0; t < d.rank; ++t)
    if ((int)o.size() != d.rank || o[t] != t) throw InputError("ordering is not a permutation of the nodes");
}

long long cartan_determinant(const CartanData& d) {
  // fraction-free Bareiss elimination; exact on integers
  int n = d.rank;
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = d.a[i][j];
  long long prev = 1, sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      int p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

long long standard_determinant(char t, int r) {
  switch (t) {
    case 'A': return r + 1;
    case 'B': case 'C': return 2;
    case 'D': return 4;
    case 'E': return 9 - r;
    default: return 1;
  }
}

int coxeter_number(const CartanData& d) {
  int r = d.rank;
  switch (d.lie_type) {
    case 'A': return r + 1;
    case 'B': case 'C': return 2 * r;
    case 'D': return 2 * r - 2;
    case 'E': return r == 6 ? 12 : (r == 7 ? 18 : 30);
    case 'F': return 12;
    case 'G': return 6;
  }
  throw InputError("coxeter_number: unknown type");
}

std::uint64_t weyl_group_order(const CartanData& d) {
  std::uint64_t f = 1;
  int r = d.rank;
  for (int k = 2; k <= r; ++k) f *= k;
  switch (d.lie_type) {
    case 'A': return f * (r + 1);
    case 'B': case 'C': return f << r;
    case 'D': return f << (r - 1);
    case 'E': return r == 6 ? 51840ULL : (r == 7 ? 2903040ULL : 696729600ULL);
    case 'F': return 1152;
    case 'G': return 12;
  }
  return 0;
}

std::vector<int> reflect_weight(std::vector<int> lam, int i, const CartanData& d) {
  // s_i(lam) = lam - <lam, alpha_i^vee> alpha_i, alpha_i = sum_k a[k][i] omega_k
  int c = lam[i];
  for (int k = 0; k < d.rank; ++k) lam[k] -= c * d.a[k][i];
  return lam;
}

std::vector<int> weyl_key(const WeylWord& w, const CartanData& d) {
  std::vector<int> v(d.rank, 1);
  for (auto it = w.rbegin(); it != w.rend(); ++it) v = reflect_weight(std::move(v), *it, d);
  return v;
}

int WeylGroup::find(const WeylWord& w, const CartanData& d) const {
  auto it = index.find(weyl_key(w, d));
  return it == index.end() ? -1 : it->second;
}

std::vector<int> word_permutation(const WeylWord& w, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  // p = s_{w0} o s_{w1} o ... ; compose on the right
  for (int s : w) {
    std::vector<int> q(n);
    for (int j = 0; j < n; ++j) {
      int k = j == s ? s + 1 : (j == s + 1 ? s : j);
      q[j] = p[k];
    }
    p = q;
  }
  return p;
}

int inversion_count(const std::vector<int>& p) {
  int c = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j) c += p[i] > p[j];
  return c;
}

WeylGroup enumerate_weyl(const CartanData& d, std::uint64_t guard) {
  std::uint64_t order = weyl_group_order(d);
  if (order > guard) {
    std::ostringstream os;
    os << "group too large: |W(" << d.lie_type << d.rank << ")| = " << order << " exceeds guard " << guard;
    throw InputError(os.str());
  }
  WeylGroup g;
  std::deque<int> frontier;
  g.elements.push_back({{}, std::vector<int>(d.rank, 1), {}});
  g.index[g.elements[0].key] = 0;
  frontier.push_back(0);
  while (!frontier.empty()) {
    int cur = frontier.front();
    frontier.pop_front();
    for (int i = 0; i < d.rank; ++i) {
      auto key = reflect_weight(g.elements[cur].key, i, d);
      if (g.index.count(key)) continue;
      WeylWord w;
      w.push_back(i);
      w.insert(w.end(), g.elements[cur].word.begin(), g.elements[cur].word.end());
      g.index[key] = static_cast<int>(g.elements.size());
      g.elements.push_back({std::move(w), std::move(key), {}});
      frontier.push_back(static_cast<int>(g.elements.size()) - 1);
    }
  }
  if (g.elements.size() != order) throw ConsistencyError("enumerate_weyl: orbit size differs from |W|");
  for (size_t e = 0; e < g.elements.size(); ++e)
    if (g.elements[e].word.size() > g.elements[g.longest].word.size()) g.longest = static_cast<int>(e);
  if (d.lie_type == 'A')
    for (auto& el : g.elements) el.perm = word_permutation(el.word, d.rank + 1);
  return g;
}

std::vector<int> column_index_set(const WeylWord& v, int i, const CartanData& d) {
  if (d.lie_type != 'A') throw InputError("column_index_set: type A only");
  if (i < 0 || i >= d.rank) throw InputError("column_index_set: index out of range");
  auto p = word_permutation(v, d.rank + 1);
  std::vector<int> s(p.begin(), p.begin() + i + 1);
  std::sort(s.begin(), s.end());
  return s;
}

bool length_increases(const WeylWord& u, int i, const CartanData& d) {
  if (d.lie_type != 'A') throw InputError("length_increases: type A only");
  auto p = word_permutation(u, d.rank + 1);
  return p[i] < p[i + 1];
}

}  // namespace qoper
