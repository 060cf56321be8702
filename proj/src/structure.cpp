// SPDX-License-Identifier: Apache-2.0
#include "tsm/structure.hpp"

#include <utility>

#include "tsm/errors.hpp"

namespace tsm {

namespace {

std::string leg_name(int i) { return "e" + std::to_string(i + 1); }

std::string pair_label(int i, int j) { return "(" + leg_name(i) + "," + leg_name(j) + ")"; }

/// num/den for the shapes the grammar can invert; exact zero short-circuits.
ScalarExpr exact_divide(const ScalarExpr& num, const ScalarExpr& den) {
  if (num.is_structural_zero()) return ScalarExpr();
  if (auto c = den.as_rational()) {
    if (*c == 0) throw NotInvertibleError("division by zero scalar");
    return Rat(Rat(1) / *c) * num;
  }
  return num * den.inverse();
}

ScalarExpr eta_of(const ContactStructure& CS, const VectorField& X) {
  ScalarExpr out;
  for (int i = 0; i < 3; ++i) out += X[i] * CS.eta.at1(i);
  return out;
}

/// R(X,Y)Z from the (1,3) component tensor; tensorial in all three slots.
VectorField curvature_apply(const FrameTensor& R, const VectorField& X, const VectorField& Y,
                            const VectorField& Z) {
  VectorField out;
  for (int l = 0; l < 3; ++l) {
    ScalarExpr comp;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) comp += X[i] * Y[j] * Z[k] * R.at4(i, j, k, l);
    out[l] = comp;
  }
  return out;
}

ScalarExpr bilinear_apply(const FrameTensor& T, const VectorField& X, const VectorField& Y) {
  ScalarExpr out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out += X[i] * Y[j] * T.at2(i, j);
  return out;
}

void push_vector_residual(std::vector<report::Residual>& out, const std::string& label,
                          const VectorField& v) {
  for (int l = 0; l < 3; ++l) out.emplace_back(label + ":" + leg_name(l), v[l]);
}

}  // namespace

VectorField apply_endomorphism(const FrameTensor& phi, const VectorField& X) {
  if (phi.contra_rank() != 1 || phi.cov_rank() != 1)
    throw ArityError("apply_endomorphism expects a (1,1) tensor");
  VectorField out;
  for (int l = 0; l < 3; ++l) {
    ScalarExpr comp;
    for (int i = 0; i < 3; ++i) comp += X[i] * phi.at2(i, l);
    out[l] = comp;
  }
  return out;
}

VectorField metric_gradient(const FrameManifold& M, const Connection& C, const ScalarExpr& f) {
  VectorField out;
  for (int l = 0; l < 3; ++l) {
    ScalarExpr comp;
    for (int j = 0; j < 3; ++j) comp += C.ginv[j][l] * M.apply_field(VectorField::basis(j), f);
    out[l] = comp;
  }
  return out;
}

ContactStructure make_contact_structure(const FrameManifold& M, FrameTensor phi, VectorField xi,
                                        std::optional<FrameTensor> declared_eta) {
  if (phi.contra_rank() != 1 || phi.cov_rank() != 1)
    throw ArityError("contact endomorphism must be a (1,1) tensor");
  if (declared_eta && (declared_eta->contra_rank() != 0 || declared_eta->cov_rank() != 1))
    throw ArityError("declared 1-form must be a (0,1) tensor");
  ContactStructure CS;
  CS.phi = std::move(phi);
  CS.xi = xi;
  for (int i = 0; i < 3; ++i) CS.eta.at1(i) = M.metric_pair(VectorField::basis(i), xi);
  CS.declared_eta = std::move(declared_eta);
  return CS;
}

report::CheckReport validate_almost_contact(const FrameManifold& M, const ContactStructure& CS) {
  const auto& names = M.coords();
  report::CheckReport rep;
  rep.suite = "almost-contact";

  std::array<VectorField, 3> phi_e;
  for (int i = 0; i < 3; ++i) phi_e[i] = apply_endomorphism(CS.phi, VectorField::basis(i));

  {
    std::vector<report::Residual> res;
    for (int i = 0; i < 3; ++i) {
      VectorField v = apply_endomorphism(CS.phi, phi_e[i]) + VectorField::basis(i) -
                      CS.eta.at1(i) * CS.xi;
      push_vector_residual(res, leg_name(i), v);
    }
    rep.add(report::check_residuals("phi-squared", "Eq. (2.1)", res, names));
  }
  {
    std::vector<report::Residual> res;
    res.emplace_back("eta(xi)-1", eta_of(CS, CS.xi) - ScalarExpr(1));
    rep.add(report::check_residuals("eta-of-reeb", "Eq. (2.2)", res, names));
  }
  {
    std::vector<report::Residual> res;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        res.emplace_back(pair_label(i, j), M.metric_pair(phi_e[i], phi_e[j]) - M.metric()[i][j] +
                                               CS.eta.at1(i) * CS.eta.at1(j));
    rep.add(report::check_residuals("metric-phi-compatibility", "Eq. (2.3)", res, names));
  }
  {
    std::vector<report::Residual> res;
    push_vector_residual(res, "phi(xi)", apply_endomorphism(CS.phi, CS.xi));
    rep.add(report::check_residuals("phi-of-reeb", "Eq. (2.4)", res, names));
  }
  {
    std::vector<report::Residual> res;
    for (int i = 0; i < 3; ++i) res.emplace_back(leg_name(i), eta_of(CS, phi_e[i]));
    rep.add(report::check_residuals("eta-after-phi", "Eq. (2.5)", res, names));
  }
  {
    std::vector<report::Residual> res;
    for (int i = 0; i < 3; ++i)
      res.emplace_back(leg_name(i),
                       M.metric_pair(VectorField::basis(i), CS.xi) - CS.eta.at1(i));
    rep.add(report::check_residuals("reeb-metric-duality", "Eq. (2.6)", res, names));
  }
  {
    std::vector<report::Residual> res;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        res.emplace_back(pair_label(i, j), M.metric_pair(phi_e[i], VectorField::basis(j)) +
                                               M.metric_pair(VectorField::basis(i), phi_e[j]));
    rep.add(report::check_residuals("phi-skew-adjoint", "Eq. (2.7)", res, names));
  }
  if (CS.declared_eta) {
    std::vector<report::Residual> res;
    for (int i = 0; i < 3; ++i)
      res.emplace_back(leg_name(i), CS.declared_eta->at1(i) - CS.eta.at1(i));
    rep.add(report::check_residuals("declared-eta-consistency", "Eq. (2.6)", res, names));
  }
  return rep;
}

namespace {

/// Residuals of the covariant structure equation for phi at every frame pair:
/// (nabla_X phi)Y - alpha[g(X,Y)xi - eta(Y)X] - beta[g(phiX,Y)xi - eta(Y)phiX].
std::vector<report::Residual> phi_equation_residuals(const FrameManifold& M, const Connection& C,
                                                     const ContactStructure& CS,
                                                     const ScalarExpr& alpha,
                                                     const ScalarExpr& beta) {
  std::vector<report::Residual> res;
  for (int i = 0; i < 3; ++i) {
    VectorField ei = VectorField::basis(i);
    FrameTensor dphi = covariant_derivative(M, C, ei, CS.phi);
    VectorField phi_ei = apply_endomorphism(CS.phi, ei);
    for (int j = 0; j < 3; ++j) {
      VectorField ej = VectorField::basis(j);
      VectorField lhs = apply_endomorphism(dphi, ej);
      VectorField rhs = alpha * (M.metric()[i][j] * CS.xi - CS.eta.at1(j) * ei) +
                        beta * (M.metric_pair(phi_ei, ej) * CS.xi - CS.eta.at1(j) * phi_ei);
      push_vector_residual(res, pair_label(i, j), lhs - rhs);
    }
  }
  return res;
}

/// Residuals of the covariant structure equation for eta at every frame pair:
/// (nabla_X eta)Y + alpha g(phiX,Y) - beta g(phiX,phiY).
std::vector<report::Residual> eta_equation_residuals(const FrameManifold& M, const Connection& C,
                                                     const ContactStructure& CS,
                                                     const ScalarExpr& alpha,
                                                     const ScalarExpr& beta) {
  std::vector<report::Residual> res;
  for (int i = 0; i < 3; ++i) {
    VectorField ei = VectorField::basis(i);
    FrameTensor deta = covariant_derivative(M, C, ei, CS.eta);
    VectorField phi_ei = apply_endomorphism(CS.phi, ei);
    for (int j = 0; j < 3; ++j) {
      VectorField ej = VectorField::basis(j);
      VectorField phi_ej = apply_endomorphism(CS.phi, ej);
      res.emplace_back(pair_label(i, j), deta.at1(j) + alpha * M.metric_pair(phi_ei, ej) -
                                             beta * M.metric_pair(phi_ei, phi_ej));
    }
  }
  return res;
}

/// Residuals of nabla_X xi = -alpha phiX + beta(X - eta(X)xi) at every leg.
std::vector<report::Residual> xi_equation_residuals(const FrameManifold& M, const Connection& C,
                                                    const ContactStructure& CS,
                                                    const ScalarExpr& alpha,
                                                    const ScalarExpr& beta) {
  std::vector<report::Residual> res;
  for (int i = 0; i < 3; ++i) {
    VectorField ei = VectorField::basis(i);
    VectorField lhs = covariant_derivative(M, C, ei, CS.xi);
    VectorField rhs =
        beta * (ei - CS.eta.at1(i) * CS.xi) - alpha * apply_endomorphism(CS.phi, ei);
    push_vector_residual(res, leg_name(i), lhs - rhs);
  }
  return res;
}

std::string classify(const ScalarExpr& alpha, const ScalarExpr& beta) {
  bool a0 = alpha.is_zero().zero;
  bool b0 = beta.is_zero().zero;
  if (a0 && b0) return "cosymplectic";
  if (b0) return "alpha-Sasakian";
  if (a0) return "beta-Kenmotsu";
  return "proper trans-Sasakian";
}

}  // namespace

TransSasakianReport detect_trans_sasakian(const FrameManifold& M, const Connection& C,
                                          const ContactStructure& CS, int forced_leg) {
  const auto& names = M.coords();
  TransSasakianReport T;

  std::vector<int> legs = forced_leg >= 0 ? std::vector<int>{forced_leg} : std::vector<int>{0, 1};
  for (int leg : legs) {
    VectorField e = VectorField::basis(leg);
    VectorField phi_e = apply_endomorphism(CS.phi, e);
    ScalarExpr den = M.metric_pair(phi_e, phi_e);
    ZeroCheck dz = den.is_zero();
    T.used_numeric = T.used_numeric || dz.via_numeric;
    if (dz.zero) continue;  // characteristic leg, carries no (alpha, beta) data

    VectorField w = covariant_derivative(M, C, e, CS.xi);
    T.alpha = exact_divide(ScalarExpr(0) - M.metric_pair(w, phi_e), den);
    T.beta = exact_divide(M.metric_pair(w, e), den);
    T.has_candidates = true;
    T.leg = leg;
    break;
  }
  if (!T.has_candidates) return T;

  T.alpha_constant = T.alpha.is_constant();
  T.beta_constant = T.beta.is_constant();
  T.classification = classify(T.alpha, T.beta);

  bool ok = true;
  auto scan = [&](const std::vector<report::Residual>& res) {
    for (const auto& [label, expr] : res) {
      ZeroCheck zc = expr.is_zero();
      T.used_numeric = T.used_numeric || zc.via_numeric;
      if (!zc.zero) {
        ok = false;
        T.defects.push_back(label + ": " + expr.str(names));
      }
    }
  };
  scan(phi_equation_residuals(M, C, CS, T.alpha, T.beta));
  scan(eta_equation_residuals(M, C, CS, T.alpha, T.beta));
  T.detected = ok;
  return T;
}

report::CheckReport structure_equation_report(const FrameManifold& M, const Connection& C,
                                              const ContactStructure& CS,
                                              const TransSasakianReport& T) {
  const auto& names = M.coords();
  report::CheckReport rep;
  rep.suite = "trans-sasakian";

  {
    report::CheckItem item;
    item.id = "type-detection";
    item.ref = "Eq. (2.8)-(2.10)";
    if (!T.has_candidates) {
      item.status = report::Status::Fail;
      item.notes = "every frame leg is characteristic; no (alpha, beta) candidates";
    } else {
      item.status = T.detected
                        ? (T.used_numeric ? report::Status::NumericPass : report::Status::Pass)
                        : report::Status::Fail;
      item.notes = "(alpha, beta) = (" + T.alpha.str(names) + ", " + T.beta.str(names) + "); " +
                   T.classification + " class; alpha " +
                   (T.alpha_constant ? "constant" : "non-constant") + ", beta " +
                   (T.beta_constant ? "constant" : "non-constant") + "; normalization leg e" +
                   std::to_string(T.leg + 1);
      item.residual_components = T.defects;
    }
    rep.add(std::move(item));
  }

  if (!T.has_candidates) {
    for (const char* id : {"phi-derivative-structure", "eta-derivative-structure",
                           "reeb-derivative-structure"}) {
      report::CheckItem item;
      item.id = id;
      item.ref = "Eq. (2.8)-(2.10)";
      item.status = report::Status::NotApplicable;
      item.notes = "no structure-function candidates to test against";
      rep.add(std::move(item));
    }
    return rep;
  }

  rep.add(report::check_residuals("phi-derivative-structure", "Eq. (2.8)",
                                  phi_equation_residuals(M, C, CS, T.alpha, T.beta), names));
  rep.add(report::check_residuals("eta-derivative-structure", "Eq. (2.9)",
                                  eta_equation_residuals(M, C, CS, T.alpha, T.beta), names));
  rep.add(report::check_residuals("reeb-derivative-structure", "Eq. (2.10)",
                                  xi_equation_residuals(M, C, CS, T.alpha, T.beta), names));
  return rep;
}

report::CheckReport identity_suite_constant(const FrameManifold& M, const Connection&,
                                            const CurvatureBundle& K, const ContactStructure& CS,
                                            const Rat& alpha, const Rat& beta) {
  const auto& names = M.coords();
  report::CheckReport rep;
  rep.suite = "identities";

  Rat A = alpha * alpha - beta * beta;
  ScalarExpr half_r = Rat(1, 2) * K.r;
  ScalarExpr cg = half_r - ScalarExpr(A);       // coefficient of g
  ScalarExpr ce = half_r - ScalarExpr(3 * A);   // coefficient of eta (x) eta
  const FrameTensor& S_star =
      K.S_star ? *K.S_star : star_ricci(M, K.R, CS.phi);

  {
    std::vector<report::Residual> res;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        VectorField lhs =
            curvature_apply(K.R, VectorField::basis(i), VectorField::basis(j), CS.xi);
        VectorField rhs = A * (CS.eta.at1(j) * VectorField::basis(i) -
                               CS.eta.at1(i) * VectorField::basis(j));
        push_vector_residual(res, pair_label(i, j), lhs - rhs);
      }
    rep.add(report::check_residuals("curvature-of-reeb", "Eq. (2.14)", res, names));
  }
  {
    std::vector<report::Residual> res;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        res.emplace_back(pair_label(i, j),
                         K.S.at2(i, j) - cg * M.metric()[i][j] + ce * CS.eta.at1(i) * CS.eta.at1(j));
    rep.add(report::check_residuals("ricci-closed-form", "Eq. (2.15)", res, names));
  }
  {
    std::vector<report::Residual> res;
    for (int i = 0; i < 3; ++i) {
      ScalarExpr lhs = bilinear_apply(K.S, VectorField::basis(i), CS.xi);
      res.emplace_back(leg_name(i), lhs - ScalarExpr(2 * A) * CS.eta.at1(i));
    }
    rep.add(report::check_residuals("ricci-of-reeb", "Eq. (2.16)", res, names));
  }
  {
    std::vector<report::Residual> res;
    for (int i = 0; i < 3; ++i) {
      VectorField lhs = apply_endomorphism(K.Q, VectorField::basis(i));
      VectorField rhs = cg * VectorField::basis(i) - (ce * CS.eta.at1(i)) * CS.xi;
      push_vector_residual(res, leg_name(i), lhs - rhs);
    }
    rep.add(report::check_residuals("ricci-operator-closed-form", "Eq. (2.17)", res, names));
  }
  {
    ScalarExpr coeff = Rat(1, 2) * (K.r - ScalarExpr(4 * A));
    std::vector<report::Residual> res;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        res.emplace_back(pair_label(i, j),
                         S_star.at2(i, j) -
                             coeff * (M.metric()[i][j] - CS.eta.at1(i) * CS.eta.at1(j)));
    rep.add(report::check_residuals("star-ricci-closed-form", "Eq. (2.18)", res, names));
  }
  {
    std::vector<report::Residual> res;
    ScalarExpr xi_r = M.apply_field(CS.xi, K.r);
    res.emplace_back("xi(r)+2rb-12(a^2-b^2)b",
                     xi_r + ScalarExpr(2 * beta) * K.r - ScalarExpr(12 * A * beta));
    rep.add(report::check_residuals("reeb-scalar-curvature", "Eq. (3.3)", res, names));
  }
  return rep;
}

namespace {

struct GeneralIdentityData {
  ScalarExpr c1;                       // r/2 + 2 xi(beta) - 2(alpha^2-beta^2)
  ScalarExpr c2;                       // r/2 + xi(beta) - 3(alpha^2-beta^2)
  ScalarExpr cS;                       // r/2 + xi(beta) - (alpha^2-beta^2)
  ScalarExpr xi_beta;
  ScalarExpr two_A;                    // 2(alpha^2-beta^2)
  VectorField G;                       // phi(D alpha) - D beta
  std::array<ScalarExpr, 3> w;         // w_i = e_i(beta) + (phi e_i)(alpha)
  std::array<ScalarExpr, 3> eta;
};

GeneralIdentityData general_data(const FrameManifold& M, const Connection& C,
                                 const CurvatureBundle& K, const ContactStructure& CS,
                                 const ScalarExpr& alpha, const ScalarExpr& beta) {
  GeneralIdentityData d;
  ScalarExpr A = alpha * alpha - beta * beta;
  d.xi_beta = M.apply_field(CS.xi, beta);
  ScalarExpr half_r = Rat(1, 2) * K.r;
  d.c1 = half_r + Rat(2) * d.xi_beta - Rat(2) * A;
  d.c2 = half_r + d.xi_beta - Rat(3) * A;
  d.cS = half_r + d.xi_beta - A;
  d.two_A = Rat(2) * A;
  d.G = apply_endomorphism(CS.phi, metric_gradient(M, C, alpha)) - metric_gradient(M, C, beta);
  for (int i = 0; i < 3; ++i) {
    VectorField ei = VectorField::basis(i);
    d.w[i] = M.apply_field(ei, beta) + M.apply_field(apply_endomorphism(CS.phi, ei), alpha);
    d.eta[i] = CS.eta.at1(i);
  }
  return d;
}

}  // namespace

report::CheckReport identity_suite_general(const FrameManifold& M, const Connection& C,
                                           const CurvatureBundle& K, const ContactStructure& CS,
                                           const ScalarExpr& alpha, const ScalarExpr& beta) {
  const auto& names = M.coords();
  report::CheckReport rep;
  rep.suite = "identities";

  GeneralIdentityData d = general_data(M, C, K, CS, alpha, beta);

  // Component form of the curvature expansion's right-hand side.
  auto rhs_R = [&](int i, int j, int k) -> VectorField {
    const ScalarExpr& gjk = M.metric()[j][k];
    const ScalarExpr& gik = M.metric()[i][k];
    VectorField ei = VectorField::basis(i);
    VectorField ej = VectorField::basis(j);
    VectorField out = d.c1 * (gjk * ei - gik * ej);
    out = out - gjk * (d.c2 * d.eta[i] * CS.xi - d.eta[i] * d.G + d.w[i] * CS.xi);
    out = out + gik * (d.c2 * d.eta[j] * CS.xi - d.eta[j] * d.G + d.w[j] * CS.xi);
    out = out - (d.w[k] * d.eta[j] + d.w[j] * d.eta[k] + d.c2 * d.eta[j] * d.eta[k]) * ei;
    out = out + (d.w[k] * d.eta[i] + d.w[i] * d.eta[k] + d.c2 * d.eta[i] * d.eta[k]) * ej;
    return out;
  };
  // Component form of the Ricci expansion's right-hand side.
  auto rhs_S = [&](int i, int j) -> ScalarExpr {
    return d.cS * M.metric()[i][j] - d.c2 * d.eta[i] * d.eta[j] - d.w[j] * d.eta[i] -
           d.w[i] * d.eta[j];
  };

  {
    std::vector<report::Residual> res;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          VectorField lhs = curvature_apply(K.R, VectorField::basis(i), VectorField::basis(j),
                                            VectorField::basis(k));
          push_vector_residual(res, pair_label(i, j) + leg_name(k), lhs - rhs_R(i, j, k));
        }
    rep.add(report::check_residuals("curvature-expansion", "Eq. (2.11)", res, names));
  }
  {
    std::vector<report::Residual> res;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) res.emplace_back(pair_label(i, j), K.S.at2(i, j) - rhs_S(i, j));
    rep.add(report::check_residuals("ricci-expansion", "Eq. (2.12)", res, names));
  }
  {
    std::vector<report::Residual> res;
    for (int i = 0; i < 3; ++i) {
      ScalarExpr lhs = bilinear_apply(K.S, VectorField::basis(i), CS.xi);
      VectorField phi_ei = apply_endomorphism(CS.phi, VectorField::basis(i));
      ScalarExpr rhs = (d.two_A - d.xi_beta) * d.eta[i] -
                       M.apply_field(VectorField::basis(i), beta) - M.apply_field(phi_ei, alpha);
      res.emplace_back(leg_name(i), lhs - rhs);
    }
    rep.add(report::check_residuals("ricci-of-reeb-expansion", "Eq. (2.13)", res, names));
  }
  {
    // Contract the curvature expansion over its first slot and compare with
    // the Ricci expansion: the two printed forms must agree as identities.
    std::vector<report::Residual> res;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        ScalarExpr traced;
        for (int a = 0; a < 3; ++a) traced += rhs_R(a, j, k)[a];
        res.emplace_back(pair_label(j, k), traced - rhs_S(j, k));
      }
    rep.add(
        report::check_residuals("ricci-from-curvature-contraction", "Eq. (2.11)->(2.12)", res, names));
  }
  return rep;
}

}  // namespace tsm
