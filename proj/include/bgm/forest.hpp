#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <mutex>
#include <vector>

#include "bgm/canonical.hpp"
#include "bgm/graph.hpp"

namespace bgm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Degrees of trees keyed by canonical form. Lookups and inserts are locked; a value is
/// fully determined by its key, so racing inserts agree.
class DegreeMemo {
 public:
  std::optional<BigInt> find(const CanonicalForm& key) const;
  void insert(const CanonicalForm& key, const BigInt& value);
  std::size_t size() const;

 private:
  mutable std::mutex lock_;
  std::map<CanonicalForm, BigInt> table_;
};

/// Degree of I_G (normalized volume of P_G) for a forest. Components are combined with the
/// multinomial product rule on dimensions |V_i| + |E_i|; a tree with edges takes half the
/// sum over its edges of the degree with that edge removed. Throws CapabilityError unless
/// g is a forest. Uses a process-wide memo when none is given.
BigInt forest_degree(const Graph& g, DegreeMemo* memo = nullptr);

/// deg(I_{T - e}) for each edge e of a tree, in edge order.
std::vector<BigInt> deletion_terms(const Graph& tree, DegreeMemo* memo = nullptr);

/// d_n for the path on n vertices from d_{n+1} = 1/2 sum_i C(2n, 2i-1) d_i d_{n+1-i}, d_1 = 1.
BigInt chain_degree(int n);
/// (n!)^2, the degree for the star with n leaves.
BigInt star_degree(int n);

/// Odd power series: coefficient of x^{2n-1} at index n-1.
using RationalSeries = std::vector<Rational>;

/// Tangent numbers T_1, T_3, ..., T_{2N-1} (tan z = sum T_k z^k / k!).
std::vector<BigInt> tangent_numbers(int count);
/// d_n / (2n-1)! for n = 1..N.
RationalSeries chain_series(int count);
/// Odd Taylor coefficients of sqrt(2) tan(x / sqrt(2)): T_{2n-1} / ((2n-1)! 2^{n-1}).
RationalSeries scaled_tangent_series(int count);
/// Exact comparison of the two series through x^{2N-1}.
bool gf_check(int count);

/// Independent degree: counts the maximal simplices of the pulling triangulation given by
/// the graded reverse-lexicographic initial ideal of the quadrics (p_{0..0} smallest), i.e.
/// cliques of size |V| + |E| + 1 in the graph of cell pairs that are not a leading term.
/// The forest is first relabelled in breadth-first order from the least vertex of each
/// component; under other labellings the quadrics need not be a Groebner basis (P4 labelled
/// 0-1-3-2 gives 102 cliques instead of 34).
/// Throws CapabilityError unless g is a forest with |V| <= 6.
BigInt degree_oracle(const Graph& g);

}  // namespace bgm
