#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qoper/scalar.hpp"

namespace qoper {

// Node indices are 0-based internally; files and the CLI use 1-based labels.
// Convention: a[i][j] = <alpha_j, alpha_i^vee>, Bourbaki numbering.
struct CartanData {
  char lie_type = 'A';
  int rank = 1;
  std::vector<std::vector<int>> a;
  std::vector<int> ordering;  // ordering[t] = node at position t

  std::vector<int> positions() const;  // inverse of ordering
  bool simply_laced() const;
};

CartanData cartan_matrix(char lie_type, int rank);
CartanData with_ordering(CartanData d, std::vector<int> ordering);
void validate(const CartanData& d);
long long cartan_determinant(const CartanData& d);
long long standard_determinant(char lie_type, int rank);

int coxeter_number(const CartanData& d);
std::uint64_t weyl_group_order(const CartanData& d);

using WeylWord = std::vector<int>;  // letters s_{w[0]} s_{w[1]} ..., acting right to left

template <class T> std::vector<T> reflect_twist(std::vector<T> z, int i, const CartanData& d) {
  T v = T(1) / z[i];
  for (int j = 0; j < d.rank; ++j)
    if (j != i)
      for (int e = 0; e < -d.a[j][i]; ++e) v *= z[j];
  z[i] = v;
  return z;
}

// w(Z) for w = s_{a_1}...s_{a_k}: the rightmost letter acts first
template <class T> std::vector<T> twist_by_word(std::vector<T> z, const WeylWord& w, const CartanData& d) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) z = reflect_twist(std::move(z), *it, d);
  return z;
}

struct WeylElement {
  WeylWord word;           // a reduced word (BFS, lexicographic)
  std::vector<int> key;    // image of rho in fundamental-weight coordinates
  std::vector<int> perm;   // type A: permutation of {0..r}, empty otherwise
};

struct WeylGroup {
  std::vector<WeylElement> elements;  // BFS order, identity first
  std::map<std::vector<int>, int> index;
  int longest = 0;
  int find(const WeylWord& w, const CartanData& d) const;
};

inline constexpr std::uint64_t kWeylGuard = 10080;

// throws InputError("group too large ...") above the guard; never truncates
WeylGroup enumerate_weyl(const CartanData& d, std::uint64_t guard = kWeylGuard);

// s_i acting on a weight written in fundamental-weight coordinates
std::vector<int> reflect_weight(std::vector<int> lam, int i, const CartanData& d);
std::vector<int> weyl_key(const WeylWord& w, const CartanData& d);

// type A
std::vector<int> word_permutation(const WeylWord& w, int n);
int inversion_count(const std::vector<int>& perm);
std::vector<int> column_index_set(const WeylWord& v, int i, const CartanData& d);  // 0-based, sorted
bool length_increases(const WeylWord& u, int i, const CartanData& d);               // l(u s_i) = l(u) + 1

}  // namespace qoper
