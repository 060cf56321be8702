// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "tsm/curvature.hpp"

using namespace tsm;

namespace {
ScalarExpr P(const std::string& s) { return parse_scalar(s); }

// R(e_a,e_b)e_c as a vector field.
VectorField rvec(const FrameTensor& R, int a, int b, int c) {
  VectorField v;
  for (int l = 0; l < 3; ++l) v[l] = R.at4(a, b, c, l);
  return v;
}

bool same_field(const VectorField& a, const VectorField& b) {
  for (int i = 0; i < 3; ++i) {
    if (!equivalent(a[i], b[i])) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("warped fixture curvature components") {
  const FrameManifold M = tsmtest::warped_manifold();
  const Connection C = levi_civita(M);
  const FrameTensor R = riemann(M, C);
  const VectorField e1 = VectorField::basis(0);
  const VectorField e2 = VectorField::basis(1);
  const VectorField e3 = VectorField::basis(2);

  // Constant sectional curvature -4: R(X,Y)Z = -4(g(Y,Z)X - g(X,Z)Y).
  CHECK(same_field(rvec(R, 0, 1, 0), Rat(4) * e2));
  CHECK(same_field(rvec(R, 0, 1, 1), Rat(-4) * e1));
  CHECK(rvec(R, 0, 1, 2).is_structural_zero());
  CHECK(same_field(rvec(R, 0, 2, 0), Rat(4) * e3));
  CHECK(rvec(R, 0, 2, 1).is_structural_zero());
  CHECK(same_field(rvec(R, 0, 2, 2), Rat(-4) * e1));
  CHECK(rvec(R, 1, 2, 0).is_structural_zero());
  CHECK(same_field(rvec(R, 1, 2, 1), Rat(4) * e3));
  CHECK(same_field(rvec(R, 1, 2, 2), Rat(-4) * e2));

  SUBCASE("closed form over arbitrary fields") {
    const VectorField X(P("x"), P("exp(2*z)"), P("1"));
    const VectorField Y(P("0"), P("y"), P("z"));
    const VectorField Z(P("1"), P("1"), P("x*y"));
    const VectorField RXYZ = std::get<VectorField>(tensor_eval(R, {X, Y, Z}));
    const VectorField closed =
        Rat(-4) * (M.metric_pair(Y, Z) * X - M.metric_pair(X, Z) * Y);
    CHECK(same_field(RXYZ, closed));
  }
}

TEST_CASE("warped fixture Ricci data") {
  const FrameManifold M = tsmtest::warped_manifold();
  const Connection C = levi_civita(M);
  const RicciData rd = ricci(M, C, riemann(M, C));

  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(equivalent(rd.S.at2(i, j), i == j ? P("-8") : P("0")));
      CHECK(equivalent(rd.Q.at2(i, j), i == j ? P("-8") : P("0")));
    }
  }
  CHECK(rd.S.symmetries_hold());
  CHECK(rd.r.as_rational().value() == Rat(-24));
}

TEST_CASE("round sphere has constant curvature one") {
  const FrameManifold M = tsmtest::round_manifold();
  const Connection C = levi_civita(M);
  const CurvatureBundle B = curvature_bundle(M, C);

  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          const Rat want = Rat((j == k && i == l) ? 1 : 0) - Rat((i == k && j == l) ? 1 : 0);
          CHECK(B.R.at4(i, j, k, l).as_rational().value() == want);
        }
      }
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(B.S.at2(i, j).as_rational().value() == (i == j ? Rat(2) : Rat(0)));
    }
  }
  CHECK(B.r.as_rational().value() == 6);
}

TEST_CASE("flat space curvature vanishes") {
  const FrameManifold M = tsmtest::flat_manifold();
  const Connection C = levi_civita(M);
  const CurvatureBundle B = curvature_bundle(M, C);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(B.S.at2(i, j).is_structural_zero());
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) CHECK(B.R.at4(i, j, k, l).is_structural_zero());
      }
    }
  }
  CHECK(B.r.is_structural_zero());
}

TEST_CASE("curvature tensor identities") {
  for (const FrameManifold& M :
       {tsmtest::warped_manifold(), tsmtest::round_manifold(), tsmtest::flat_manifold()}) {
    const Connection C = levi_civita(M);
    const FrameTensor R = riemann(M, C);

    SUBCASE("antisymmetry in the argument pair") { CHECK(R.symmetries_hold()); }

    SUBCASE("antisymmetry of the lowered tensor in the value pair") {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          for (int k = 0; k < 3; ++k) {
            for (int w = 0; w < 3; ++w) {
              ScalarExpr lhs;
              ScalarExpr rhs;
              for (int l = 0; l < 3; ++l) {
                lhs += R.at4(i, j, k, l) * M.metric()[l][w];
                rhs += R.at4(i, j, w, l) * M.metric()[l][k];
              }
              CHECK(equivalent(lhs, -rhs));
            }
          }
        }
      }
    }

    SUBCASE("first Bianchi identity") {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          for (int k = 0; k < 3; ++k) {
            for (int l = 0; l < 3; ++l) {
              const ScalarExpr cyc =
                  R.at4(i, j, k, l) + R.at4(j, k, i, l) + R.at4(k, i, j, l);
              CHECK(cyc.is_zero().zero);
            }
          }
        }
      }
    }

    SUBCASE("Ricci operator is metric-dual to the Ricci tensor") {
      const RicciData rd = ricci(M, C, R);
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          ScalarExpr gq;
          for (int l = 0; l < 3; ++l) gq += rd.Q.at2(i, l) * M.metric()[l][j];
          CHECK(equivalent(gq, rd.S.at2(i, j)));
        }
      }
    }
  }
}

TEST_CASE("star-Ricci tensor") {
  const FrameTensor phi = tsmtest::rotation_phi();

  SUBCASE("warped fixture: -4(g - eta x eta)") {
    const FrameManifold M = tsmtest::warped_manifold();
    const Connection C = levi_civita(M);
    const FrameTensor Ss = star_ricci(M, riemann(M, C), phi);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const Rat want = (i == j && i != 2) ? Rat(-4) : Rat(0);
        CHECK(equivalent(Ss.at2(i, j), ScalarExpr(want)));
      }
    }
  }

  SUBCASE("round sphere: g - eta x eta") {
    const FrameManifold M = tsmtest::round_manifold();
    const Connection C = levi_civita(M);
    const FrameTensor Ss = star_ricci(M, riemann(M, C), phi);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const Rat want = (i == j && i != 2) ? Rat(1) : Rat(0);
        CHECK(equivalent(Ss.at2(i, j), ScalarExpr(want)));
      }
    }
  }

  SUBCASE("characteristic direction is in the kernel") {
    const FrameManifold M = tsmtest::warped_manifold();
    const Connection C = levi_civita(M);
    const FrameTensor Ss = star_ricci(M, riemann(M, C), phi);
    for (int i = 0; i < 3; ++i) {
      CHECK(Ss.at2(i, 2).is_zero().zero);
      CHECK(Ss.at2(2, i).is_zero().zero);
    }
  }
}
