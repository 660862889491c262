#include <doctest.h>

#include "helpers.hpp"
#include "isorep/commutant.hpp"
#include "isorep/errors.hpp"
#include "isorep/suite.hpp"

using namespace isorep;
using namespace testing;

namespace {

ProjectionFamily reflection_family(const ComplexVector& a) {
  return ProjectionFamily::standard_basis(reflection_unitary(a));
}

ProjectionFamily example2_family() { return reflection_family(example2_vector()); }

void check_witness(const EquivalenceVerdict& v, const ProjectionFamily& a, const ProjectionFamily& b) {
  REQUIRE(v.witness.has_value());
  const ComplexMatrix& t = *v.witness;
  CHECK(max_abs(t.adjoint() * t - ComplexMatrix::Identity(t.cols(), t.cols())) <= 1e-10);
  CHECK(max_abs(t * a.unitary - b.unitary * t) <= 1e-10);
  for (int i = 0; i < a.size(); ++i) {
    CHECK(max_abs(t * a.projections[static_cast<std::size_t>(i)] - b.projections[static_cast<std::size_t>(i)] * t) <=
          1e-10);
  }
}

}  // namespace

TEST_CASE("structured commutant examples") {
  CHECK(structured_commutant_dim(example2_family()) == 1);
  CHECK(structured_commutant_dim(ProjectionFamily::standard_basis(ComplexMatrix::Identity(3, 3))) == 3);
  CHECK(structured_commutant_dim(ProjectionFamily::standard_basis(ComplexMatrix::Identity(1, 1))) == 1);
  const auto basis = structured_commutant_basis(ProjectionFamily::standard_basis(ComplexMatrix::Identity(3, 3)));
  for (const auto& t : basis) CHECK(max_abs(t - ComplexMatrix(t.diagonal().asDiagonal())) <= 1e-12);
}

TEST_CASE("structured commutant counts support components") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RandomFamily rf = random_family(seed);
    CAPTURE(seed);
    CHECK(structured_commutant_dim(rf.family) == static_cast<std::size_t>(support_components(rf.family.unitary)));
  }
}

TEST_CASE("truncated commutant oracle") {
  SUBCASE("Example 2 at L = 16") {
    const IsoRep2 rep = build_projection_family_rep(example2_family(), TruncationParams{4, 16, 4});
    CHECK(truncated_commutant_oracle(rep) == 1);
  }
  SUBCASE("U = I, n = 2 at L = 16") {
    const IsoRep2 rep = build_projection_family_rep(ProjectionFamily::standard_basis(ComplexMatrix::Identity(2, 2)),
                                                    TruncationParams{2, 16, 2});
    CHECK(truncated_commutant_oracle(rep) == 2);
  }
  SUBCASE("two copies of Example 2 contain the 2 x 2 matrix units") {
    const IsoRep2 one = build_projection_family_rep(example2_family(), TruncationParams{4, 8, 4});
    CHECK(truncated_commutant_oracle(direct_sum(one, one)) >= 4);
  }
  SUBCASE("surviving elements commute on the interior") {
    const IsoRep2 rep = build_projection_family_rep(ProjectionFamily::standard_basis(ComplexMatrix::Identity(2, 2)),
                                                    TruncationParams{2, 8, 2});
    const CommutantOracle o = truncated_commutant(rep);
    CHECK(o.dim == o.basis.size());
    CHECK(o.raw_dim >= o.dim);
    const ComplexMatrix& p = rep.interior_projector;
    for (const auto& t : o.basis) {
      for (const ComplexMatrix* g : {&rep.w1, &rep.w2}) {
        CHECK(max_abs(p * (t * *g - *g * t) * p) <= 1e-10);
        CHECK(max_abs(p * (t * g->adjoint() - g->adjoint() * t) * p) <= 1e-10);
      }
    }
  }
}

TEST_CASE("structured and truncated commutants agree on random families") {
  for (std::uint64_t seed = 100; seed < 104; ++seed) {
    const RandomFamily rf = random_family(seed);
    const int n = static_cast<int>(rf.family.dim());
    const IsoRep2 rep = build_projection_family_rep(rf.family, TruncationParams{n, 12, n});
    CAPTURE(seed);
    CHECK(truncated_commutant_oracle(rep) == structured_commutant_dim(rf.family));
  }
}

TEST_CASE("irreducibility") {
  CHECK(is_irreducible(example2_family()));
  CHECK_FALSE(is_irreducible(ProjectionFamily::standard_basis(ComplexMatrix::Identity(3, 3))));
  CHECK(is_irreducible(ProjectionFamily::standard_basis(ComplexMatrix::Identity(1, 1))));
  const IsoRep2 rep = build_projection_family_rep(example2_family(), TruncationParams{4, 8, 4});
  const auto generic = is_irreducible(make_custom_rep(rep.w1, rep.w2, rep.trunc));
  REQUIRE(generic.has_value());
  CHECK(*generic);
}

TEST_CASE("irreducible families have a one-dimensional cocycle space up to scale when the index is 1") {
  // U with a single fixed vector whose support graph is connected.
  const ComplexMatrix q = random_unitary(3, 8);
  const ComplexMatrix u = q * diag({1.0, std::polar(1.0, 2.0), std::polar(1.0, 4.0)}) * q.adjoint();
  const auto fam = ProjectionFamily::standard_basis(u);
  REQUIRE(is_irreducible(fam));
  const IsoRep2 rep = build_projection_family_rep(fam, TruncationParams{3, 12, 3});
  const CocycleSpace cs = cocycle_space(rep);
  REQUIRE(cs.dim() == 1);
  const ComplexVector x = nullspace(u - ComplexMatrix::Identity(3, 3), {}, 1.0).col(0);
  const Cocycle2 c = cocycle_from_fixed_vector(fam, x, rep.trunc);
  const ComplexVector b = cs.basis[0].stacked();
  const Complex scale = b.dot(c.stacked()) / b.squaredNorm();
  CHECK(max_abs(c.stacked() - scale * b) <= 1e-10);
}

TEST_CASE("equivalence of families") {
  const ProjectionFamily a = example2_family();
  SUBCASE("self") {
    const EquivalenceVerdict v = are_unitarily_equivalent(a, a);
    CHECK(v.status == EquivalenceStatus::equivalent);
    REQUIRE(v.witness.has_value());
    CHECK(max_abs(*v.witness - ComplexMatrix::Identity(4, 4)) <= 1e-10);
  }
  SUBCASE("different moduli are inequivalent") {
    const ProjectionFamily b = reflection_family(example2_other_vector());
    const EquivalenceVerdict v = are_unitarily_equivalent(a, b);
    CHECK(v.status == EquivalenceStatus::inequivalent);
    CHECK(v.intertwiner_dim == 0);
    CHECK(are_unitarily_equivalent(b, a).status == v.status);
  }
  SUBCASE("unimodular multiple of a gives the same family") {
    const ProjectionFamily b = reflection_family(std::polar(1.0, 1.1) * example2_vector());
    const EquivalenceVerdict v = are_unitarily_equivalent(a, b);
    CHECK(v.status == EquivalenceStatus::equivalent);
    check_witness(v, a, b);
  }
  SUBCASE("coordinatewise phases give an equivalent family with a diagonal witness") {
    ComplexVector w = example2_vector();
    for (int i = 0; i < 4; ++i) w(i) *= std::polar(1.0, 0.3 * (i + 1));
    const ProjectionFamily b = reflection_family(w);
    const EquivalenceVerdict v = are_unitarily_equivalent(a, b);
    CHECK(v.status == EquivalenceStatus::equivalent);
    check_witness(v, a, b);
    CHECK(are_unitarily_equivalent(b, a).status == EquivalenceStatus::equivalent);
  }
  SUBCASE("dimension mismatch") {
    const ProjectionFamily b = ProjectionFamily::standard_basis(ComplexMatrix::Identity(3, 3));
    CHECK_THROWS_AS(are_unitarily_equivalent(a, b), DimensionMismatch);
  }
}

TEST_CASE("equivalence verdicts are symmetric over random pairs") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const RandomFamily x = random_family(seed);
    const RandomFamily y = random_family(seed + 50);
    if (x.family.dim() != y.family.dim()) continue;
    CAPTURE(seed);
    CHECK(are_unitarily_equivalent(x.family, y.family).status ==
          are_unitarily_equivalent(y.family, x.family).status);
    // Reducible families have a commutant of dim > 1; sampling may then be inconclusive.
    CHECK(are_unitarily_equivalent(x.family, x.family).status != EquivalenceStatus::inequivalent);
  }
}

TEST_CASE("generic equivalence on truncated spaces") {
  const TruncationParams t{4, 8, 4};
  const IsoRep2 a = build_reflection_rep(example2_vector(), t);
  const IsoRep2 b = build_reflection_rep(example2_other_vector(), t);
  const IsoRep2 ca = make_custom_rep(a.w1, a.w2, t);
  const EquivalenceVerdict self = are_unitarily_equivalent(ca, ca);
  CHECK(self.status == EquivalenceStatus::equivalent);
  REQUIRE(self.witness.has_value());
  CHECK(max_abs(*self.witness * a.w1 - a.w1 * *self.witness) <= 1e-10);
  CHECK(max_abs(*self.witness * a.w2 - a.w2 * *self.witness) <= 1e-10);
  CHECK(are_unitarily_equivalent(make_custom_rep(a.w1, a.w2, t), make_custom_rep(b.w1, b.w2, t)).status ==
        EquivalenceStatus::inequivalent);
}
