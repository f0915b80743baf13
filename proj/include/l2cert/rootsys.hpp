#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "l2cert/rational.hpp"

namespace l2cert {

/// A weight in fundamental-weight coordinates: coords[i] = <lambda, alpha_i^vee>.
template <typename Scalar>
using Weight = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalWeight = Weight<Rational>;
using IntWeight = Weight<int>;
using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

/// Simple-reflection indices (0-based nodes). A word (a0, a1, ..., aL) denotes the
/// product s_a0 s_a1 ... s_aL; the rightmost letter acts first.
using Word = std::vector<int>;

/// Cartan data, roots and coroots of a finite crystallographic root system in
/// Bourbaki numbering. Immutable after build_root_system().
struct RootSystem {
  std::string type_label;
  int rank = 0;
  /// cartan(i, j) = <alpha_j, alpha_i^vee>.
  Eigen::MatrixXi cartan;
  /// One column per positive root, simple-root coordinates, sorted by height.
  Eigen::MatrixXi positive_roots;
  /// Column k is the coroot of positive_roots.col(k) in simple-coroot coordinates.
  Eigen::MatrixXi positive_coroots;
  std::vector<int> coroot_heights;
  RationalMatrix inverse_cartan;
  /// (alpha_i, alpha_i) / 2, normalised so the short roots have 1.
  std::vector<Rational> half_norms;
  /// External node relabelling hook (identity unless configured).
  std::vector<int> node_permutation;

  int num_positive_roots() const { return static_cast<int>(positive_roots.cols()); }
  RationalWeight rho() const { return RationalWeight::Constant(rank, Rational(1)); }
  RationalWeight fundamental_weight(int i) const;
  /// |W| from the product of the fundamental degrees.
  std::uint64_t weyl_order() const;
  /// Stable FNV-1a fingerprint of the label and Cartan matrix.
  std::string fingerprint() const;
  /// Index of the positive root with the given simple-root coordinates, or -1.
  int root_index(const Eigen::VectorXi& root_coords) const;
};

/// "E8", "F4", "A3", "B_5", ... Throws std::invalid_argument naming the supported types.
RootSystem build_root_system(std::string_view type_label);

/// Cartan matrix alone (used by parabolic sub-diagrams and the tests).
Eigen::MatrixXi cartan_matrix(char series, int rank);

// ---------------------------------------------------------------------------
// Weyl action on weights. All functions are exact and templated on the scalar.

/// <w, alpha^vee> for the positive coroot with the given index.
template <typename Scalar>
Scalar pair(const RootSystem& rs, const Weight<Scalar>& w, Eigen::Index coroot_index) {
  Scalar acc(0);
  for (int i = 0; i < rs.rank; ++i) {
    const int n = rs.positive_coroots(i, coroot_index);
    if (n != 0) acc += Scalar(n) * w(i);
  }
  return acc;
}

/// alpha_i in fundamental-weight coordinates is column i of the Cartan matrix.
template <typename Scalar>
void simple_reflect_inplace(const RootSystem& rs, int i, Weight<Scalar>& w) {
  const Scalar c = w(i);
  if (c == Scalar(0)) return;
  for (int r = 0; r < rs.rank; ++r) {
    const int a = rs.cartan(r, i);
    if (a != 0) w(r) -= c * Scalar(a);
  }
}

template <typename Scalar>
Weight<Scalar> simple_reflect(const RootSystem& rs, int i, Weight<Scalar> w) {
  simple_reflect_inplace(rs, i, w);
  return w;
}

template <typename Scalar>
Weight<Scalar> apply_word(const RootSystem& rs, const Word& word, Weight<Scalar> w) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) simple_reflect_inplace(rs, *it, w);
  return w;
}

/// Reflects at the most negative coordinate (lowest node on ties) until dominant.
/// Returns the dominant weight and a witness with apply_word(witness, w) == dominant.
template <typename Scalar>
std::pair<Weight<Scalar>, Word> dominant_representative(const RootSystem& rs, Weight<Scalar> w) {
  Word applied;
  for (;;) {
    int arg = -1;
    for (int i = 0; i < rs.rank; ++i)
      if (w(i) < Scalar(0) && (arg < 0 || w(i) < w(arg))) arg = i;
    if (arg < 0) break;
    simple_reflect_inplace(rs, arg, w);
    applied.push_back(arg);
  }
  return {std::move(w), Word(applied.rbegin(), applied.rend())};
}

enum class Chamber { strict_interior, boundary, outside };

const char* to_string(Chamber c);

/// Simple-root coordinates inverse_cartan * coords.
RationalWeight root_coordinates(const RootSystem& rs, const RationalWeight& w);

/// Langlands' square-integrability region: strict iff every simple-root
/// coordinate is negative; outside iff one is positive.
template <typename Scalar>
Chamber langlands_classify(const RootSystem& rs, const Weight<Scalar>& mu) {
  const RationalWeight b = root_coordinates(rs, mu.template cast<Rational>());
  bool zero = false;
  for (int i = 0; i < rs.rank; ++i) {
    if (b(i) > 0) return Chamber::outside;
    if (b(i) == 0) zero = true;
  }
  return zero ? Chamber::boundary : Chamber::strict_interior;
}

/// W-invariant form (lambda, mu) in the normalisation of RootSystem::half_norms.
Rational inner_product(const RootSystem& rs, const RationalWeight& a, const RationalWeight& b);

inline Rational norm2(const RootSystem& rs, const RationalWeight& w) { return inner_product(rs, w, w); }

/// Integer view of a weight; throws std::domain_error("non-integral deformation line")
/// when some coordinate is not an integer.
IntWeight to_int_weight(const RationalWeight& w);

std::string format_weight(const RationalWeight& w);
std::string format_weight(const IntWeight& w);
/// 1-based letters, e.g. "2 4 3 1"; "e" for the empty word.
std::string format_word(const Word& w);

// ---------------------------------------------------------------------------
// Relevant cosets W_rel = { w : w alpha_i > 0 for all i != j }.

struct InversionPair {
  int k = 0;  ///< <lambda_1, alpha^vee>
  int t = 0;  ///< <lambda_2, alpha^vee>
  friend auto operator<=>(const InversionPair&, const InversionPair&) = default;
};

struct CosetElement {
  Word word;
  IntWeight image_l1;
  IntWeight image_l2;
  std::vector<InversionPair> inversions;
};

/// Orbit of omega_j under W, carried as a tree of minimal coset representatives.
/// Element 0 is the identity. Each element stores its first letter (of the
/// lexicographically smallest reduced word), its parent s_letter * w, its images
/// of lambda_1 and lambda_2 and the one inversion it adds to its parent.
/// Elements are sorted by reduced word lexicographically.
class CosetTable {
 public:
  CosetTable() = default;
  CosetTable(int rank, int j, IntWeight l1) : rank_(rank), j_(j), l1_(std::move(l1)) {}

  std::size_t size() const { return parent_.size(); }
  int rank() const { return rank_; }
  int node() const { return j_; }
  const IntWeight& lambda1() const { return l1_; }

  int parent(std::size_t idx) const { return parent_[idx]; }
  int letter(std::size_t idx) const { return letter_[idx]; }
  int length(std::size_t idx) const { return length_[idx]; }
  InversionPair added_inversion(std::size_t idx) const { return added_[idx]; }
  auto image_l1(std::size_t idx) const { return images_l1_.col(static_cast<Eigen::Index>(idx)); }
  auto image_l2(std::size_t idx) const { return images_l2_.col(static_cast<Eigen::Index>(idx)); }

  Word word(std::size_t idx) const;
  /// Inversion pairs collected along the parent chain (incremental transport).
  std::vector<InversionPair> inversions(std::size_t idx) const;
  CosetElement element(std::size_t idx) const;

  /// Raw construction, used by enumerate_wrel and the cache loader.
  void reserve(std::size_t n);
  void push(int parent, int letter, int length, InversionPair added, const IntWeight& img1,
            const IntWeight& img2);
  void finalize_images(Eigen::MatrixXi img1, Eigen::MatrixXi img2);

 private:
  int rank_ = 0;
  int j_ = 0;
  IntWeight l1_;
  std::vector<int> parent_;
  std::vector<std::int8_t> letter_;
  std::vector<int> length_;
  std::vector<InversionPair> added_;
  Eigen::MatrixXi images_l1_;
  Eigen::MatrixXi images_l2_;
  std::vector<IntWeight> pending1_, pending2_;
};

/// Enumerates W_rel for the line lambda_1 + eps * lambda_2. Requires
/// lambda_2 == omega_j and integral lambda_1 (std::domain_error otherwise).
CosetTable enumerate_wrel(const RootSystem& rs, int j, const RationalWeight& l1, const RationalWeight& l2);

/// Debug cross-check: inversion pairs of the word computed by applying it to
/// every positive root.
std::vector<InversionPair> inversions_by_action(const RootSystem& rs, const Word& word, const IntWeight& l1,
                                                int j);

/// Order of the Weyl group of a Cartan matrix by explicit orbit enumeration of a
/// regular weight, multiplied over connected components.
std::uint64_t weyl_order_by_enumeration(const Eigen::MatrixXi& cartan);

/// Cartan matrix of the Levi subsystem spanned by the simple roots other than j.
Eigen::MatrixXi levi_cartan(const RootSystem& rs, int j);

/// |W / W_M| computed as |W| / |W_M| with |W| from the degrees.
std::uint64_t coset_count(const RootSystem& rs, int j);

}  // namespace l2cert
