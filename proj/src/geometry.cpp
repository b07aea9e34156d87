#include "hlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace hlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double min_distance(const Lattice& lat, int site, const Region& to) {
  double d = kInf;
  for (int s : to) d = std::min(d, lat.distance(site, s));
  return d;
}

// Number of points of Z^nu at l1 distance exactly k from the origin.
double sphere_count(int nu, long k) {
  if (k == 0) return 1.0;
  double total = 0.0;
  for (int j = 1; j <= nu && j <= k; ++j) {
    // 2^j C(nu, j) C(k-1, j-1)
    double term = std::ldexp(1.0, j);
    for (int i = 0; i < j; ++i) term *= double(nu - i) / double(i + 1);
    for (int i = 0; i < j - 1; ++i) term *= double(k - 1 - i) / double(i + 1);
    total += term;
  }
  return total;
}

// Bound on sum over |y|_1 > radius of F(|y|_1) on Z^nu.
double lattice_tail(const FFunction& f, int nu, int radius) {
  if (f.exponent <= nu) return kInf;
  const long explicit_terms = 200000;
  double sum = 0.0;
  long k = radius + 1;
  for (; k <= radius + explicit_terms; ++k) sum += sphere_count(nu, k) * f(double(k));
  // sphere_count(k) <= 2^nu (k+1)^(nu-1) and the summand is non-increasing beyond here.
  const double last = double(k - 1);
  sum += std::ldexp(1.0, nu) * std::pow(last + 1.0, nu - f.exponent) / (f.exponent - nu);
  return sum;
}

}  // namespace

Region::Region(std::vector<int> sites) : sites_(std::move(sites)) {
  std::sort(sites_.begin(), sites_.end());
  sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
}

Region::Region(std::initializer_list<int> sites) : Region(std::vector<int>(sites)) {}

Region Region::range(int first, int last) {
  std::vector<int> s;
  for (int i = first; i <= last; ++i) s.push_back(i);
  return Region(std::move(s));
}

bool Region::contains(int site) const {
  return std::binary_search(sites_.begin(), sites_.end(), site);
}

bool Region::subset_of(const Region& other) const {
  return std::includes(other.sites_.begin(), other.sites_.end(), sites_.begin(), sites_.end());
}

bool Region::intersects(const Region& other) const { return !intersect(*this, other).empty(); }

Region unite(const Region& a, const Region& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Region(std::move(out));
}

Region intersect(const Region& a, const Region& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Region(std::move(out));
}

Region minus(const Region& a, const Region& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Region(std::move(out));
}

Lattice Lattice::chain(int lo, int hi, int site_dim) {
  if (hi < lo) throw Error(ErrorCode::EmptyRegion, "chain with hi < lo");
  return grid({hi - lo + 1}, site_dim, {lo});
}

Lattice Lattice::grid(std::vector<int> extent, int site_dim, std::vector<int> origin) {
  if (extent.empty()) throw Error(ErrorCode::BadGeometry, "grid needs at least one axis");
  if (origin.empty()) origin.assign(extent.size(), 0);
  if (origin.size() != extent.size()) throw Error(ErrorCode::BadGeometry, "origin/extent rank mismatch");
  if (site_dim < 1) throw Error(ErrorCode::BadGeometry, "site_dim must be positive");
  Lattice lat;
  lat.kind_ = extent.size() == 1 ? Kind::Chain : Kind::Grid;
  long n = 1;
  for (int e : extent) {
    if (e < 1) throw Error(ErrorCode::EmptyRegion, "grid extent must be positive");
    n *= e;
  }
  lat.lo_ = origin;
  lat.hi_.resize(extent.size());
  for (size_t k = 0; k < extent.size(); ++k) lat.hi_[k] = origin[k] + extent[k] - 1;
  std::vector<int> c = origin;
  for (long i = 0; i < n; ++i) {
    lat.coords_.push_back(c);
    for (int k = int(extent.size()) - 1; k >= 0; --k) {
      if (++c[k] <= lat.hi_[k]) break;
      c[k] = origin[k];
    }
  }
  lat.dims_.assign(n, site_dim);
  lat.dist_.resize(n, n);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      int d = 0;
      for (size_t k = 0; k < extent.size(); ++k) d += std::abs(lat.coords_[a][k] - lat.coords_[b][k]);
      lat.dist_(a, b) = d;
    }
  return lat;
}

Lattice Lattice::from_table(RealMatrix distances, std::vector<int> site_dims) {
  if (distances.rows() != distances.cols() || distances.rows() != Index(site_dims.size()))
    throw Error(ErrorCode::BadGeometry, "distance table shape does not match site count");
  Lattice lat;
  lat.kind_ = Kind::Table;
  lat.dims_ = std::move(site_dims);
  lat.dist_ = std::move(distances);
  for (int i = 0; i < lat.size(); ++i) lat.coords_.push_back({i});
  return lat;
}

Lattice Lattice::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("lattice json: ") + e.what());
  }
  const std::string kind = doc.value("kind", "chain");
  if (kind != "chain" && kind != "grid") throw Error(ErrorCode::ConfigInvalid, "unknown lattice kind " + kind);
  if (!doc.contains("extent")) throw Error(ErrorCode::ConfigInvalid, "lattice json needs extent");
  auto extent = doc.at("extent").get<std::vector<int>>();
  if (kind == "chain" && extent.size() != 1) throw Error(ErrorCode::ConfigInvalid, "chain extent has one entry");
  std::vector<int> origin;
  if (doc.contains("origin")) origin = doc.at("origin").get<std::vector<int>>();
  return grid(extent, doc.value("site_dim", 2), origin);
}

int Lattice::max_site_dim() const { return *std::max_element(dims_.begin(), dims_.end()); }

double Lattice::diameter() const { return size() ? dist_.maxCoeff() : 0.0; }

int Lattice::index_of(const std::vector<int>& coord) const {
  if (kind_ == Kind::Table) {
    return coord.size() == 1 && coord[0] >= 0 && coord[0] < size() ? coord[0] : -1;
  }
  if (coord.size() != lo_.size()) return -1;
  int idx = 0;
  for (size_t k = 0; k < lo_.size(); ++k) {
    if (coord[k] < lo_[k] || coord[k] > hi_[k]) return -1;
    idx = idx * (hi_[k] - lo_[k] + 1) + (coord[k] - lo_[k]);
  }
  return idx;
}

Region Lattice::all() const { return Region::range(0, size() - 1); }

Region Lattice::slab(int a, int b) const {
  std::vector<int> s;
  for (int i = 0; i < size(); ++i)
    if (coords_[i][0] >= a && coords_[i][0] <= b) s.push_back(i);
  return Region(std::move(s));
}

Region Lattice::ball(int site, double r) const {
  std::vector<int> s;
  for (int i = 0; i < size(); ++i)
    if (dist_(site, i) <= r) s.push_back(i);
  return Region(std::move(s));
}

double distance(const Lattice& lat, const Region& a, const Region& b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyRegion, "distance to an empty region");
  double d = kInf;
  for (int s : a) d = std::min(d, min_distance(lat, s, b));
  return d;
}

double diameter(const Lattice& lat, const Region& x) {
  double d = 0.0;
  for (int a : x)
    for (int b : x) d = std::max(d, lat.distance(a, b));
  return d;
}

Region complement(const Lattice& lat, const Region& x) { return minus(lat.all(), x); }
Region complement(const Region& volume, const Region& x) { return minus(volume, x); }

Region r_boundary(const Lattice& lat, const Region& x, double r) {
  const Region xc = complement(lat, x);
  if (xc.empty()) throw Error(ErrorCode::FullVolume, "boundary of the whole lattice");
  std::vector<int> out;
  for (int s = 0; s < lat.size(); ++s) {
    const bool in = x.contains(s);
    if (min_distance(lat, s, in ? xc : x) <= r) out.push_back(s);
  }
  return Region(std::move(out));
}

Region interior(const Lattice& lat, const Region& x, double n) {
  const Region xc = complement(lat, x);
  std::vector<int> out;
  for (int s : x)
    if (min_distance(lat, s, xc) > n) out.push_back(s);
  return Region(std::move(out));
}

Region thicken(const Lattice& lat, const Region& x, double n) {
  std::vector<int> out;
  for (int s = 0; s < lat.size(); ++s)
    if (min_distance(lat, s, x) <= n) out.push_back(s);
  return Region(std::move(out));
}

Region phi_boundary(const Region& x, const std::vector<Region>& supports) {
  std::vector<int> out;
  for (const Region& y : supports) {
    if (minus(y, x).empty()) continue;
    for (int s : intersect(y, x)) out.push_back(s);
  }
  return Region(std::move(out));
}

double FFunction::operator()(double r) const { return std::exp(-mu * r) * std::pow(1.0 + r, -exponent); }

FConstants f_constants(const FFunction& f, const Lattice& lat) {
  if (lat.size() == 0) throw Error(ErrorCode::EmptyRegion, "empty lattice");
  const RealMatrix fm = lat.distances().unaryExpr([&](double r) { return f(r); });
  FConstants out;
  out.sites = lat.size();
  out.f_norm = fm.rowwise().sum().maxCoeff();
  const RealMatrix conv = fm * fm;
  out.c_f = conv.cwiseQuotient(fm).maxCoeff();

  out.truncation = lat.is_truncation();
  if (out.truncation) {
    const int nu = lat.dimension();
    std::vector<int> centre(nu);
    int radius = std::numeric_limits<int>::max();
    for (int k = 0; k < nu; ++k) {
      centre[k] = (lat.lower()[k] + lat.upper()[k]) / 2;
      radius = std::min({radius, centre[k] - lat.lower()[k], lat.upper()[k] - centre[k]});
    }
    out.f_norm_tail = lattice_tail(f, nu, radius);
    const FFunction f0{f.exponent, 0.0};
    const double f0_norm =
        lat.distances().unaryExpr([&](double r) { return f0(r); }).rowwise().sum().maxCoeff();
    out.c_f_infinite_upper = std::pow(2.0, f.exponent + 1.0) * (f0_norm + lattice_tail(f0, nu, radius));
  }
  return out;
}

GrowthConstants growth_constants(const Lattice& lat, double range, int nu,
                                 const std::vector<Region>& test_regions) {
  if (nu < 1) throw Error(ErrorCode::BadConstants, "nu must be at least 1");
  GrowthConstants g;
  g.nu = nu;
  const int rmax = std::max(1, int(std::lround(lat.diameter())));
  for (int r = 1; r <= rmax; ++r)
    for (int x = 0; x < lat.size(); ++x)
      g.kappa = std::max(g.kappa, lat.ball(x, r).size() / std::pow(double(r), nu));
  for (const Region& x : test_regions) {
    if (x.empty() || x.size() == lat.size()) continue;
    const double base = r_boundary(lat, x, range).size();
    for (int n = 1; n <= rmax; ++n)
      g.kappa_a3 = std::max(g.kappa_a3, r_boundary(lat, x, n + range).size() / (base * std::pow(double(n), nu)));
  }
  return g;
}

}  // namespace hlab
