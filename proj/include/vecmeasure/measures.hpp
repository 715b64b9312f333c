#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "vecmeasure/geometry.hpp"
#include "vecmeasure/norms.hpp"
#include "vecmeasure/zonotope.hpp"

namespace vecmeasure {

/// A point of the base space X = R^m.
using Site = std::vector<double>;

struct Atom {
  Site site;
  Vec value;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Closed axis-aligned box lo <= x <= hi in X.
struct Box {
  Site lo;
  Site hi;
  bool contains(const Site& x) const;
};

/// Measurable subset of X with exact membership: everything, a finite union
/// of closed boxes, or an explicit finite set of sites.
class MeasurableSet {
 public:
  static MeasurableSet all();
  static MeasurableSet boxes(std::vector<Box> boxes);
  static MeasurableSet sites(std::vector<Site> sites);

  bool contains(const Site& x) const;
  bool is_all() const noexcept { return std::holds_alternative<All>(data_); }

  struct All {};
  struct Boxes {
    std::vector<Box> boxes;
  };
  struct Sites {
    std::vector<Site> sites;  // sorted, unique
  };
  const auto& data() const noexcept { return data_; }

 private:
  using Data = std::variant<All, Boxes, Sites>;
  explicit MeasurableSet(Data d) : data_(std::move(d)) {}
  Data data_;
};

/// Finitely atomic vector measure mu = sum_i v_i delta_{x_i} from X = R^m to
/// V = R^d.
///
/// Canonical form: negative zeros in sites are normalised, atoms at exactly
/// equal sites are merged by adding their values, atoms whose value is the
/// zero vector are dropped, and atoms are sorted by site.
class VectorMeasure {
 public:
  VectorMeasure(std::size_t space_dim, std::size_t dim, std::vector<Atom> atoms = {});

  std::size_t space_dim() const noexcept { return space_dim_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }

  /// mu(A).
  Vec value_of(const MeasurableSet& a) const;

  friend bool operator==(const VectorMeasure&, const VectorMeasure&) = default;

 private:
  std::size_t space_dim_;
  std::size_t dim_;
  std::vector<Atom> atoms_;
};

/// |mu|(A) = sum over atoms in A of n(v_i). Singleton partitions are optimal
/// by the triangle inequality, so this is the partition supremum.
double total_variation(const VectorMeasure& mu, const MeasurableSet& a, const Seminorm& n);
double total_variation(const VectorMeasure& mu, const Seminorm& n);

inline constexpr std::size_t kOracleAtomCap = 10;

/// Literal partition supremum: enumerates every set partition of the atoms in
/// A (restricted growth strings) and maximises sum_k n(mu(E_k)). Throws
/// TooManyAtoms above `cap` atoms.
double tv_bruteforce_oracle(const VectorMeasure& mu, const MeasurableSet& a, const Seminorm& n,
                            std::size_t cap = kOracleAtomCap);

/// |<eta, mu>|(A) = sum over atoms in A of |<eta, v_i>|.
double projected_variation(const VectorMeasure& mu, const MeasurableSet& a, const DualVec& eta);

/// range_A(mu): the zonotope generated by the atom values in A.
Zonotope range(const VectorMeasure& mu, const MeasurableSet& a);
Zonotope range(const VectorMeasure& mu);

VectorMeasure pushforward(const VectorMeasure& mu, const LinearMap& t);
VectorMeasure add(const VectorMeasure& mu, const VectorMeasure& nu);
VectorMeasure scale(const VectorMeasure& mu, double lambda);
VectorMeasure restrict(const VectorMeasure& mu, const MeasurableSet& a);

struct CertificateEntry {
  Site site;
  DualVec eta;  // |eta|' = 1 and <eta, v> = n(v)
};

struct DualCertificate {
  std::vector<CertificateEntry> entries;
  double value;
};

/// Per-atom dual maximisers realising |mu|(A) = sum_i <eta_i, v_i>. Throws
/// NoCertificate when an atom value lies in the kernel of n.
DualCertificate dual_certificate(const VectorMeasure& mu, const MeasurableSet& a, const Seminorm& n);

}  // namespace vecmeasure
