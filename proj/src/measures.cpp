#include "vecmeasure/measures.hpp"

#include <algorithm>
#include <cmath>

namespace vecmeasure {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_same_shape(const VectorMeasure& a, const VectorMeasure& b) {
  if (a.space_dim() != b.space_dim() || a.dim() != b.dim())
    throw Error(ErrorCode::DimError, "measures live on different spaces");
}

std::vector<Vec> values_in(const VectorMeasure& mu, const MeasurableSet& a) {
  std::vector<Vec> out;
  for (const Atom& at : mu.atoms())
    if (a.contains(at.site)) out.push_back(at.value);
  return out;
}

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

/// A unit-dual-norm functional attaining n at v (a subgradient of n at v).
DualVec dual_maximiser(const Seminorm& n, const Vec& v) {
  const std::size_t d = v.dim();
  const double nv = n(v);
  DualVec eta = DualVec::zero(d);
  std::visit(Overloaded{[&](const Seminorm::Euclidean&) { eta = as_dual(v) * (1.0 / nv); },
                        [&](const Seminorm::WeightedLp& lp) {
                          const auto w = [&](std::size_t i) { return lp.weights.empty() ? 1.0 : lp.weights[i]; };
                          if (std::isinf(lp.p)) {
                            std::size_t k = 0;
                            for (std::size_t i = 1; i < d; ++i)
                              if (w(i) * std::abs(v[i]) > w(k) * std::abs(v[k])) k = i;
                            eta[k] = w(k) * sign(v[k]);
                            return;
                          }
                          for (std::size_t i = 0; i < d; ++i) {
                            const double ratio = w(i) * std::abs(v[i]) / nv;
                            eta[i] = w(i) * sign(v[i]) * (lp.p == 1.0 ? 1.0 : std::pow(ratio, lp.p - 1.0));
                          }
                        },
                        [&](const Seminorm::Polygonal& p) {
                          for (const DualVec& g : p.generators) eta += sign(pairing(g, v)) * g;
                        },
                        [&](const Seminorm::SumOfCircles&) {
                          constexpr std::size_t kPairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
                          for (const auto& pr : kPairs) {
                            const double r = std::hypot(v[pr[0]], v[pr[1]]);
                            if (r == 0.0) continue;
                            eta[pr[0]] += v[pr[0]] / r;
                            eta[pr[1]] += v[pr[1]] / r;
                          }
                        }},
             n.data());
  return eta;
}

}  // namespace

bool Box::contains(const Site& x) const {
  if (lo.size() != x.size() || hi.size() != x.size()) throw Error(ErrorCode::DimError, "box dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return true;
}

MeasurableSet MeasurableSet::all() { return MeasurableSet(All{}); }

MeasurableSet MeasurableSet::boxes(std::vector<Box> boxes) {
  for (const Box& b : boxes)
    if (b.lo.size() != b.hi.size()) throw Error(ErrorCode::DimError, "box corners have different dimensions");
  return MeasurableSet(Boxes{std::move(boxes)});
}

MeasurableSet MeasurableSet::sites(std::vector<Site> sites) {
  for (Site& s : sites)
    for (double& x : s) x += 0.0;
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  return MeasurableSet(Sites{std::move(sites)});
}

bool MeasurableSet::contains(const Site& x) const {
  return std::visit(Overloaded{[](const All&) { return true; },
                               [&](const Boxes& b) {
                                 return std::any_of(b.boxes.begin(), b.boxes.end(),
                                                    [&](const Box& box) { return box.contains(x); });
                               },
                               [&](const Sites& s) { return std::binary_search(s.sites.begin(), s.sites.end(), x); }},
                    data_);
}

VectorMeasure::VectorMeasure(std::size_t space_dim, std::size_t dim, std::vector<Atom> atoms)
    : space_dim_(space_dim), dim_(dim) {
  if (space_dim == 0) throw Error(ErrorCode::BadDim, "base space dimension must be positive");
  if (dim == 0 || dim > kMaxDim) throw Error(ErrorCode::BadDim, "target dimension must be 1, 2 or 3");
  for (Atom& a : atoms) {
    if (a.site.size() != space_dim) throw Error(ErrorCode::DimError, "atom site has wrong dimension");
    if (a.value.dim() != dim) throw Error(ErrorCode::DimError, "atom value has wrong dimension");
    for (double& x : a.site) {
      if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite site coordinate");
      x += 0.0;
    }
  }
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.site < b.site; });
  for (Atom& a : atoms) {
    if (!atoms_.empty() && atoms_.back().site == a.site) {
      atoms_.back().value += a.value;
    } else {
      atoms_.push_back(std::move(a));
    }
  }
  std::erase_if(atoms_, [](const Atom& a) { return a.value.is_zero(); });
}

Vec VectorMeasure::value_of(const MeasurableSet& a) const {
  Vec total = Vec::zero(dim_);
  for (const Atom& at : atoms_)
    if (a.contains(at.site)) total += at.value;
  return total;
}

double total_variation(const VectorMeasure& mu, const MeasurableSet& a, const Seminorm& n) {
  n.check_dim(mu.dim());
  double tv = 0.0;
  for (const Atom& at : mu.atoms())
    if (a.contains(at.site)) tv += n(at.value);
  return tv;
}

double total_variation(const VectorMeasure& mu, const Seminorm& n) {
  return total_variation(mu, MeasurableSet::all(), n);
}

double tv_bruteforce_oracle(const VectorMeasure& mu, const MeasurableSet& a, const Seminorm& n, std::size_t cap) {
  n.check_dim(mu.dim());
  const std::vector<Vec> values = values_in(mu, a);
  if (values.size() > cap) throw Error(ErrorCode::TooManyAtoms, "partition oracle is limited to " + std::to_string(cap) + " atoms");
  if (values.empty()) return 0.0;

  // Depth-first walk over restricted growth strings: atom i joins one of the
  // existing blocks or opens a new one.
  std::vector<Vec> blocks;
  blocks.reserve(values.size());
  double best = 0.0;
  const auto visit = [&](auto&& self, std::size_t i) -> void {
    if (i == values.size()) {
      double s = 0.0;
      for (const Vec& b : blocks) s += n(b);
      best = std::max(best, s);
      return;
    }
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      blocks[k] += values[i];
      self(self, i + 1);
      blocks[k] -= values[i];
    }
    blocks.push_back(values[i]);
    self(self, i + 1);
    blocks.pop_back();
  };
  visit(visit, 0);
  return best;
}

double projected_variation(const VectorMeasure& mu, const MeasurableSet& a, const DualVec& eta) {
  if (eta.dim() != mu.dim()) throw Error(ErrorCode::DimError, "functional dimension mismatch");
  double s = 0.0;
  for (const Atom& at : mu.atoms())
    if (a.contains(at.site)) s += std::abs(pairing(eta, at.value));
  return s;
}

Zonotope range(const VectorMeasure& mu, const MeasurableSet& a) { return Zonotope(mu.dim(), values_in(mu, a)); }

Zonotope range(const VectorMeasure& mu) { return range(mu, MeasurableSet::all()); }

VectorMeasure pushforward(const VectorMeasure& mu, const LinearMap& t) {
  if (t.cols() != mu.dim()) throw Error(ErrorCode::DimError, "linear map does not act on the measure's target");
  std::vector<Atom> atoms;
  atoms.reserve(mu.size());
  for (const Atom& at : mu.atoms()) atoms.push_back({at.site, t.apply(at.value)});
  return VectorMeasure(mu.space_dim(), t.rows(), std::move(atoms));
}

VectorMeasure add(const VectorMeasure& mu, const VectorMeasure& nu) {
  require_same_shape(mu, nu);
  std::vector<Atom> atoms = mu.atoms();
  atoms.insert(atoms.end(), nu.atoms().begin(), nu.atoms().end());
  return VectorMeasure(mu.space_dim(), mu.dim(), std::move(atoms));
}

VectorMeasure scale(const VectorMeasure& mu, double lambda) {
  if (!std::isfinite(lambda)) throw Error(ErrorCode::InvalidArgument, "non-finite scale factor");
  std::vector<Atom> atoms;
  atoms.reserve(mu.size());
  for (const Atom& at : mu.atoms()) atoms.push_back({at.site, lambda * at.value});
  return VectorMeasure(mu.space_dim(), mu.dim(), std::move(atoms));
}

VectorMeasure restrict(const VectorMeasure& mu, const MeasurableSet& a) {
  std::vector<Atom> atoms;
  for (const Atom& at : mu.atoms())
    if (a.contains(at.site)) atoms.push_back(at);
  return VectorMeasure(mu.space_dim(), mu.dim(), std::move(atoms));
}

DualCertificate dual_certificate(const VectorMeasure& mu, const MeasurableSet& a, const Seminorm& n) {
  n.check_dim(mu.dim());
  DualCertificate cert{{}, 0.0};
  for (std::size_t i = 0; i < mu.atoms().size(); ++i) {
    const Atom& at = mu.atoms()[i];
    if (!a.contains(at.site)) continue;
    if (n(at.value) == 0.0)
      throw Error(ErrorCode::NoCertificate, "atom " + std::to_string(i) + " lies in the kernel of the seminorm");
    DualVec eta = dual_maximiser(n, at.value);
    cert.value += pairing(eta, at.value);
    cert.entries.push_back({at.site, std::move(eta)});
  }
  return cert;
}

}  // namespace vecmeasure
