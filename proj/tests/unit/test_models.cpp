#include <gtest/gtest.h>

#include "oracles/free_fermion.hpp"
#include "spinlab/core/error.hpp"
#include "spinlab/core/linalg.hpp"
#include "spinlab/core/operators.hpp"
#include "spinlab/models/model.hpp"
#include "spinlab/models/zoo.hpp"

using namespace spinlab;

TEST(Tfim, SpectrumMatchesFreeFermions) {
  for (int n : {2, 3, 5, 8})
    for (double lambda : {0.0, 0.3, 1.0, 1.7}) {
      const Model m = tfim(n);
      const RealVector e = hermitian_eigenvalues(assemble_hamiltonian(m, lambda));
      const auto ref = oracle::tfim_spectrum(n, lambda);
      ASSERT_EQ(static_cast<std::size_t>(e.size()), ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i)
        EXPECT_NEAR(e(static_cast<Eigen::Index>(i)), ref[i], 1e-10) << "n=" << n << " lambda=" << lambda;
    }
}

TEST(Tfim, TermsAndRange) {
  const Model open = tfim(5);
  EXPECT_EQ(open.terms.size(), 4u + 5u);
  EXPECT_EQ(open.range, 2);
  EXPECT_DOUBLE_EQ(open.default_lambda, 1.0);
  const Model ring = tfim(5, BoundaryCondition::periodic);
  EXPECT_EQ(ring.terms.size(), 5u + 5u);
  EXPECT_THROW(open.require_lambda(11.0), ValidationError);
}

TEST(Models, DerivativeMatchesFiniteDifference) {
  const std::vector<Model> models = {tfim(5), xy_chain(4, 0.4, 0.8), aklt_staggered_field(3, 0.5),
                                     interpolate(tfim(4), 0.5, xy_chain(4, 0.3, 1.0), 1.2)};
  for (const auto& m : models) {
    const double lambda = m.lambda_min + 0.3 * (m.lambda_max - m.lambda_min);
    const double h = 1e-5;
    const ComplexMatrix fd =
        (assemble_hamiltonian(m, lambda + h) - assemble_hamiltonian(m, lambda - h)) / (2.0 * h);
    EXPECT_LE((fd - assemble_derivative(m, lambda)).norm(), 1e-7) << m.name;
  }
}

TEST(Models, SymmetriesCommuteWithHamiltonian) {
  const std::vector<Model> models = {tfim(6),          tfim(5, BoundaryCondition::periodic),
                                     xy_chain(5, 0.0, 0.4), xy_chain(5, 0.6, 0.4),
                                     aklt(4),          aklt_staggered_field(3, 0.3)};
  for (const auto& m : models) {
    ASSERT_FALSE(m.symmetries.empty()) << m.name;
    const SectorDecomposition sectors = model_sectors(m);
    for (double lambda : {m.lambda_min, 0.5 * (m.lambda_min + m.lambda_max)}) {
      EXPECT_LE(sectors.commutation_defect(assemble_hamiltonian(m, lambda)), 1e-13) << m.name;
      EXPECT_LE(sectors.commutation_defect(assemble_derivative(m, lambda)), 1e-13) << m.name;
    }
  }
}

TEST(Xy, IsingLimitAndMagnetisationSymmetry) {
  const Model xy = xy_chain(5, 1.0, 0.7);
  const Model ising = tfim(5);
  for (double l : {0.2, 1.3})
    EXPECT_LE((assemble_hamiltonian(xy, l) - assemble_hamiltonian(ising, l)).norm(), 1e-13);
  const Model iso = xy_chain(4, 0.0, 0.5);
  bool has_sz = false;
  for (const auto& s : iso.symmetries) has_sz = has_sz || s.name == "2Sz";
  EXPECT_TRUE(has_sz);
  EXPECT_THROW(xy_chain(1, 0.0, 0.0), ValidationError);
}

TEST(Aklt, BondIsProjectorAndOpenChainHasFourGroundStates) {
  const Model two = aklt(2);
  const RealVector bond = hermitian_eigenvalues(assemble_hamiltonian(two, 0.0));
  for (Eigen::Index i = 0; i < bond.size(); ++i)
    EXPECT_TRUE(std::abs(bond(i)) < 1e-12 || std::abs(bond(i) - 1.0) < 1e-12);
  // Total spin 2 has multiplicity 5.
  EXPECT_NEAR(bond.sum(), 5.0, 1e-12);

  const Model chain = aklt(5);
  const RealVector e = hermitian_eigenvalues(assemble_hamiltonian(chain, 0.0));
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(e(i), 0.0, 1e-10);
  EXPECT_GT(e(4), 0.1);
}

TEST(Aklt, StaggeredFieldSplitsEdgeStates) {
  const Model m = aklt_staggered_field(4, 0.2);
  EXPECT_LE((assemble_hamiltonian(m, 0.0) - assemble_hamiltonian(aklt(4), 0.0)).norm(), 1e-14);
  const RealVector e = hermitian_eigenvalues(assemble_hamiltonian(m, 0.2));
  EXPECT_GT(e(3) - e(0), 1e-4);
}

TEST(Interpolate, EndpointsAreExact) {
  const Model a = tfim(4), b = xy_chain(4, 0.5, 0.3);
  const Model path = interpolate(a, 1.2, b, 0.3);
  EXPECT_DOUBLE_EQ(path.lambda_min, 0.0);
  EXPECT_DOUBLE_EQ(path.lambda_max, 1.0);
  EXPECT_EQ((assemble_hamiltonian(path, 0.0) - assemble_hamiltonian(a, 1.2)).norm(), 0.0);
  EXPECT_EQ((assemble_hamiltonian(path, 1.0) - assemble_hamiltonian(b, 0.3)).norm(), 0.0);
  const ComplexMatrix mid = 0.5 * (assemble_hamiltonian(a, 1.2) + assemble_hamiltonian(b, 0.3));
  EXPECT_LE((assemble_hamiltonian(path, 0.5) - mid).norm(), 1e-13);
  EXPECT_THROW(interpolate(tfim(4), tfim(5)), ValidationError);
}

TEST(Finalize, RejectsBrokenModels) {
  const auto g = LatticeGeometry::chain(3, BoundaryCondition::open);
  Model wide{.name = "wide", .geometry = g, .terms = {}, .range = 2};
  wide.terms.push_back(constant_term({1, 3}, kron(ops::pauli_x(), ops::pauli_x())));
  EXPECT_THROW(finalize_model(wide), ValidationError);

  Model skew{.name = "skew", .geometry = g, .terms = {}, .range = 1};
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 0.0, 0.0;
  skew.terms.push_back(constant_term({2}, m));
  EXPECT_THROW(finalize_model(skew), ValidationError);

  Model shape{.name = "shape", .geometry = g, .terms = {}, .range = 2};
  shape.terms.push_back(constant_term({1, 2}, ops::pauli_x()));
  EXPECT_THROW(finalize_model(shape), ValidationError);
}

TEST(WithTerms, AddsTermsAndDropsSymmetries) {
  const Model base = tfim(4);
  std::vector<InteractionTerm> extra = {constant_term({2}, 0.1 * ops::pauli_x(), "kick")};
  const Model m = with_terms(base, extra, "tfim+kick");
  EXPECT_EQ(m.terms.size(), base.terms.size() + 1);
  EXPECT_TRUE(m.symmetries.empty());
  const auto g = base.geometry;
  EXPECT_LE((assemble_hamiltonian(m, 0.7) - assemble_hamiltonian(base, 0.7) -
             embed({{2}, 0.1 * ops::pauli_x()}, g))
                .norm(),
            1e-14);
}

TEST(SymmetryAction, SpinFlipOfIsing) {
  const Model m = tfim(5);
  const auto pi = SymmetryAction::uniform(m.geometry, ops::pauli_z());
  const std::vector<double> lambdas = {0.0, 0.5, 2.0};
  EXPECT_LE(verify_symmetry(m, pi, lambdas), 1e-15);
  const auto bad = SymmetryAction::uniform(m.geometry, ops::pauli_x());
  EXPECT_GT(verify_symmetry(m, bad, lambdas), 0.5);
  const ComplexMatrix u = pi.global(m.geometry);
  EXPECT_LE(unitarity_error(u), 1e-14);
  ComplexMatrix notunitary = 2.0 * ops::pauli_z();
  EXPECT_THROW(SymmetryAction::uniform(m.geometry, notunitary).global(m.geometry), ValidationError);
}

TEST(BasisSymmetries, ReflectionNeedsIsometry) {
  const auto g = LatticeGeometry::from_graph({1, 2, 3, 4}, {2, 2, 2, 2}, {{1, 2}, {2, 3}, {2, 4}});
  EXPECT_THROW(reflection_symmetry(g), ValidationError);
  const auto spin1 = LatticeGeometry::chain(3, BoundaryCondition::open, 3);
  EXPECT_THROW(parity_symmetry(spin1), ValidationError);
  EXPECT_NO_THROW(magnetization_symmetry(spin1));
}
