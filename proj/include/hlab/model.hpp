#pragma once

#include <map>
#include <string>
#include <vector>

#include "hlab/geometry.hpp"
#include "hlab/opspace.hpp"

namespace hlab {

template <typename Scalar>
struct SpectralData;

template <typename Scalar>
struct Term {
  Region support;
  Observable<Scalar> op;
  double norm = 0.0;
};

/// Finite-range interaction: a self-adjoint term for each of finitely many supports.
template <typename Scalar>
class Interaction {
 public:
  Interaction(LatticePtr lattice, double range);

  /// Adds m on `support`, merging with an existing term on the same support.
  void add(const Region& support, const Matrix<Scalar>& m);

  const Lattice& lattice() const { return *lattice_; }
  LatticePtr lattice_ptr() const { return lattice_; }
  double range() const { return range_; }
  const std::vector<Term<Scalar>>& terms() const { return terms_; }
  std::vector<Region> supports() const;

 private:
  LatticePtr lattice_;
  double range_;
  std::vector<Term<Scalar>> terms_;
};

using Couplings = std::map<std::string, double>;

/// Presets tfim, xxz, cluster, onsite on `volume`. Unknown coupling names are rejected.
Interaction<double> preset(const std::string& name, const Couplings& params, LatticePtr lattice,
                           const Region& volume);

/// Custom interaction from a JSON list of {"sites": [...], "matrix": [[[re, im], ...], ...]}.
Interaction<cplx> interaction_from_json(const std::string& text, LatticePtr lattice, double range);

struct InteractionConstants {
  double j = 0.0;
  double j1 = 0.0;
  double j2 = 0.0;
  double phi_f_norm = 0.0;
  double range = 0.0;
  /// Right-hand sides of j1 <= j ||F|| / F(r) and j2 <= j1 ||F|| / F(r).
  double j1_bound = 0.0;
  double j2_bound = 0.0;
};

template <typename Scalar>
InteractionConstants constants(const Interaction<Scalar>& phi, const FFunction& f);

template <typename Scalar>
double phi_f_norm(const Interaction<Scalar>& phi, const FFunction& f);

template <typename Scalar>
Region phi_boundary(const Region& x, const Interaction<Scalar>& phi) {
  return phi_boundary(x, phi.supports());
}

template <typename Scalar>
GrowthConstants growth_constants(const Interaction<Scalar>& phi, int nu, const std::vector<Region>& test_regions) {
  return growth_constants(phi.lattice(), phi.range(), nu, test_regions);
}

template <typename Scalar>
Observable<Scalar> local_hamiltonian(const Interaction<Scalar>& phi, const Region& volume);

template <typename Scalar>
struct HamiltonianSplit {
  double n = 0.0;
  Observable<Scalar> h_r;
  Observable<Scalar> h_b;
  Observable<Scalar> h_r_primed;
  Observable<Scalar> h_b_primed;
  Observable<Scalar> h_l_primed;
  double h_r_expectation = 0.0;
  double h_b_expectation = 0.0;
  /// max-abs of H_R + H_B - H_{X(n+r)}
  double partition_residual = 0.0;
};

/// Splits H_volume around x at width n. Regions are taken inside the lattice of phi, whose full
/// site set plays the role of the whole system.
template <typename Scalar>
HamiltonianSplit<Scalar> split(const Interaction<Scalar>& phi, const Region& volume, const Region& x, double n,
                               const SpectralData<Scalar>& ground);

}  // namespace hlab
