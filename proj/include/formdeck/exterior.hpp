// Combinatorics of the exterior algebra Alt^k(R^d).
//
// An alternator is a strictly increasing tuple of coordinate indices.  The
// indices are stored 0-based; printing adds one.  All coefficient layouts in
// the library enumerate alternators of a fixed degree in lexicographic order.

#ifndef FORMDECK_EXTERIOR_HPP
#define FORMDECK_EXTERIOR_HPP

#include <string>
#include <utility>
#include <vector>

namespace formdeck {

struct Alternator {
  int dim = 0;
  std::vector<int> idx;

  int degree() const { return static_cast<int>(idx.size()); }
  bool operator==(const Alternator&) const = default;
  std::string str() const;
};

/// Binomial coefficient, 0 outside the usual range
long binomial(int n, int k);

/// All alternators of degree k in dimension d, lexicographic
const std::vector<Alternator>& alternators(int d, int k);

/// Position of an alternator in the lexicographic enumeration
int alternator_index(const Alternator& a);

/// Sign of dx^a ^ dx^b relative to dx^(a u b) sorted; 0 if a and b overlap
int wedge_sign(const Alternator& a, const Alternator& b);

/// Union of two disjoint alternators
Alternator alternator_union(const Alternator& a, const Alternator& b);

/// Complement and sign so that dx^a ^ (sign dx^c) = dx^1 ^ ... ^ dx^d
std::pair<int, Alternator> hodge_star_basis(const Alternator& a);

/// Parity (+1/-1) of the permutation sorting a sequence of distinct integers
int permutation_sign(std::vector<int> v);

} // namespace formdeck

#endif
