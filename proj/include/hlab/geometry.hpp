#pragma once

#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "hlab/core.hpp"

namespace hlab {

/// Finite set of lattice sites, stored as a sorted list of site indices.
class Region {
 public:
  Region() = default;
  Region(std::vector<int> sites);
  Region(std::initializer_list<int> sites);

  static Region range(int first, int last);  // inclusive

  const std::vector<int>& sites() const { return sites_; }
  int size() const { return static_cast<int>(sites_.size()); }
  bool empty() const { return sites_.empty(); }
  bool contains(int site) const;
  bool subset_of(const Region& other) const;
  bool intersects(const Region& other) const;

  auto begin() const { return sites_.begin(); }
  auto end() const { return sites_.end(); }
  int operator[](int i) const { return sites_[i]; }

  friend bool operator==(const Region&, const Region&) = default;
  friend auto operator<=>(const Region&, const Region&) = default;

 private:
  std::vector<int> sites_;
};

Region unite(const Region& a, const Region& b);
Region intersect(const Region& a, const Region& b);
Region minus(const Region& a, const Region& b);

/// Sites with integer coordinates, a per-site Hilbert dimension and a full distance table.
class Lattice {
 public:
  enum class Kind { Chain, Grid, Table };

  static Lattice chain(int lo, int hi, int site_dim = 2);
  static Lattice grid(std::vector<int> extent, int site_dim = 2, std::vector<int> origin = {});
  static Lattice from_table(RealMatrix distances, std::vector<int> site_dims);
  /// Parses {"kind": "chain"|"grid", "extent": [...], "site_dim": d, "origin": [...]}.
  static Lattice from_json(const std::string& text);

  Kind kind() const { return kind_; }
  int size() const { return static_cast<int>(dims_.size()); }
  int dimension() const { return kind_ == Kind::Table ? 0 : static_cast<int>(lo_.size()); }
  int site_dim(int site) const { return dims_[site]; }
  int max_site_dim() const;
  double distance(int a, int b) const { return dist_(a, b); }
  const RealMatrix& distances() const { return dist_; }
  double diameter() const;

  /// True for chains and grids, which are boxes cut out of the integer lattice.
  bool is_truncation() const { return kind_ != Kind::Table; }
  const std::vector<int>& coords(int site) const { return coords_[site]; }
  const std::vector<int>& lower() const { return lo_; }
  const std::vector<int>& upper() const { return hi_; }
  int index_of(const std::vector<int>& coord) const;  // -1 when outside
  int index_of(int coord) const { return index_of(std::vector<int>{coord}); }

  Region all() const;
  /// Sites whose first coordinate lies in [a, b].
  Region slab(int a, int b) const;
  Region ball(int site, double r) const;

 private:
  Kind kind_ = Kind::Table;
  std::vector<int> dims_;
  std::vector<std::vector<int>> coords_;
  std::vector<int> lo_, hi_;
  RealMatrix dist_;
};

using LatticePtr = std::shared_ptr<const Lattice>;

double distance(const Lattice& lat, const Region& a, const Region& b);
double diameter(const Lattice& lat, const Region& x);
Region complement(const Lattice& lat, const Region& x);
Region complement(const Region& volume, const Region& x);

/// Sites within r of the cut between x and its complement, on both sides.
Region r_boundary(const Lattice& lat, const Region& x, double r);
/// Sites of x farther than n from the complement.
Region interior(const Lattice& lat, const Region& x, double n);
/// Sites within n of x.
Region thicken(const Lattice& lat, const Region& x, double n);
/// Sites of x touched by a support that also meets the complement.
Region phi_boundary(const Region& x, const std::vector<Region>& supports);

/// F(r) = exp(-mu r) (1 + r)^(-exponent).
struct FFunction {
  double exponent = 2.0;
  double mu = 0.0;

  static FFunction power_law(int nu) { return FFunction{double(nu) + 1.0, 0.0}; }
  double operator()(double r) const;
  FFunction weighted(double extra_mu) const { return FFunction{exponent, mu + extra_mu}; }
};

struct FConstants {
  double f_norm = 0.0;
  double c_f = 0.0;
  int sites = 0;
  bool truncation = false;
  /// Upper bound on the part of the infinite-lattice norm cut off by the truncation.
  double f_norm_tail = 0.0;
  /// Upper bound on c_F over the infinite lattice.
  double c_f_infinite_upper = 0.0;
};

FConstants f_constants(const FFunction& f, const Lattice& lat);

struct GrowthConstants {
  int nu = 1;
  double kappa = 0.0;
  double kappa_a3 = 0.0;
};

GrowthConstants growth_constants(const Lattice& lat, double range, int nu,
                                 const std::vector<Region>& test_regions);

}  // namespace hlab
