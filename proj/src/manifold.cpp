// SPDX-License-Identifier: Apache-2.0
#include "tsm/manifold.hpp"

#include <cmath>
#include <utility>

#include "tsm/errors.hpp"

namespace tsm {

Mat3 identity3() {
  Mat3 m{};
  for (int i = 0; i < 3; ++i) m[i][i] = ScalarExpr(1);
  return m;
}

ScalarExpr det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 invert3(const Mat3& m) {
  const ScalarExpr inv_det = det3(m).inverse();
  Mat3 adj;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      // adj[i][j] is the cofactor of m[j][i]: adjugate = transpose of cofactors.
      adj[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) * inv_det;
    }
  }
  return adj;
}

// ---------------------------------------------------------------------------
// VectorField
// ---------------------------------------------------------------------------

VectorField::VectorField(ScalarExpr a, ScalarExpr b, ScalarExpr d)
    : c{std::move(a), std::move(b), std::move(d)} {}

VectorField VectorField::basis(int i) {
  VectorField v;
  v.c[i] = ScalarExpr(1);
  return v;
}

VectorField VectorField::operator+(const VectorField& o) const {
  VectorField r;
  for (int i = 0; i < 3; ++i) r.c[i] = c[i] + o.c[i];
  return r;
}

VectorField VectorField::operator-(const VectorField& o) const {
  VectorField r;
  for (int i = 0; i < 3; ++i) r.c[i] = c[i] - o.c[i];
  return r;
}

VectorField VectorField::operator-() const {
  VectorField r;
  for (int i = 0; i < 3; ++i) r.c[i] = -c[i];
  return r;
}

bool VectorField::is_structural_zero() const {
  return c[0].is_structural_zero() && c[1].is_structural_zero() && c[2].is_structural_zero();
}

VectorField operator*(const ScalarExpr& f, const VectorField& X) {
  VectorField r;
  for (int i = 0; i < 3; ++i) r.c[i] = f * X.c[i];
  return r;
}

VectorField operator*(const Rat& f, const VectorField& X) { return ScalarExpr(f) * X; }

// ---------------------------------------------------------------------------
// FrameManifold
// ---------------------------------------------------------------------------

namespace {

void validate_metric(const Mat3& g, const RatPoint& base) {
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (!equivalent(g[i][j], g[j][i])) {
        throw ManifoldError("metric is not symmetric: g(" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ") != g(" + std::to_string(j + 1) + "," +
                            std::to_string(i + 1) + ")");
      }
    }
  }
  const std::array<double, 3> p{rat_to_double(base[0]), rat_to_double(base[1]),
                                rat_to_double(base[2])};
  double m[3][3];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = g[i][j].eval(p);
  }
  const double d1 = m[0][0];
  const double d2 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double d3 = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                    m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                    m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (d1 <= 1e-12 || d2 <= 1e-12 || d3 <= 1e-12) {
    throw ManifoldError("metric is not positive definite at the base point");
  }
}

}  // namespace

FrameManifold FrameManifold::chart(const std::array<std::string, 3>& coords, Mat3 frame_coeffs,
                                   Mat3 metric, RatPoint base_point) {
  FrameManifold M;
  M.mode_ = Mode::Chart;
  M.coords_ = coords;
  M.frame_ = std::move(frame_coeffs);
  M.metric_ = std::move(metric);
  M.base_point_ = std::move(base_point);

  validate_metric(M.metric_, M.base_point_);
  const ScalarExpr det = det3(M.frame_);
  if (det.is_zero().zero) {
    throw ManifoldError("frame vectors are linearly dependent (zero determinant)");
  }
  try {
    M.inverse_frame_ = invert3(M.frame_);
  } catch (const NotInvertibleError&) {
    M.inverse_frame_.reset();
    M.brackets_available_ = false;
  }

  if (M.brackets_available_) {
    const Mat3& A = M.frame_;
    const Mat3& B = *M.inverse_frame_;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        // Coordinate components of [e_i, e_j], then pull back through B.
        std::array<ScalarExpr, 3> w;
        for (int k = 0; k < 3; ++k) {
          ScalarExpr acc;
          for (int mth = 0; mth < 3; ++mth) {
            acc += A[i][mth] * A[j][k].derivative(mth) - A[j][mth] * A[i][k].derivative(mth);
          }
          w[k] = acc;
        }
        for (int l = 0; l < 3; ++l) {
          ScalarExpr acc;
          for (int k = 0; k < 3; ++k) acc += w[k] * B[k][l];
          M.basis_bracket_[i][j][l] = acc;
        }
      }
    }
  }
  return M;
}

FrameManifold FrameManifold::lie(const StructureConstants& c, Mat3 metric, RatPoint base_point) {
  FrameManifold M;
  M.mode_ = Mode::Lie;
  M.metric_ = std::move(metric);
  M.base_point_ = std::move(base_point);

  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        if (c[i][j][k] != -c[j][i][k]) {
          throw ManifoldError("structure constants are not antisymmetric in the lower indices");
        }
      }
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (!M.metric_[i][j].is_constant()) {
        throw ManifoldError("lie mode requires a constant frame metric");
      }
    }
  }
  validate_metric(M.metric_, M.base_point_);

  // Jacobi identity: [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0.
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          Rat defect(0);
          for (int m = 0; m < 3; ++m) {
            defect += c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] +
                      c[k][i][m] * c[m][j][l];
          }
          if (defect != 0) {
            throw ManifoldError("structure constants violate the Jacobi identity");
          }
        }
      }
    }
  }

  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int l = 0; l < 3; ++l) M.basis_bracket_[i][j][l] = ScalarExpr(c[i][j][l]);
    }
  }
  return M;
}

const Mat3& FrameManifold::frame_coeffs() const {
  if (mode_ != Mode::Chart) throw ContractError("frame coefficients exist only in chart mode");
  return frame_;
}

const Mat3& FrameManifold::inverse_frame() const {
  if (mode_ != Mode::Chart) throw ContractError("the frame inverse exists only in chart mode");
  if (!inverse_frame_) {
    throw ManifoldError(
        "the frame determinant is not invertible in the scalar grammar; "
        "vector fields cannot be pulled back to the frame");
  }
  return *inverse_frame_;
}

const VectorField& FrameManifold::basis_bracket(int i, int j) const {
  if (!brackets_available_) {
    throw ManifoldError(
        "frame brackets are unavailable: the frame determinant is not invertible "
        "in the scalar grammar");
  }
  return basis_bracket_[i][j];
}

ScalarExpr FrameManifold::metric_pair(const VectorField& X, const VectorField& Y) const {
  ScalarExpr acc;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) acc += X[i] * metric_[i][j] * Y[j];
  }
  return acc;
}

ScalarExpr FrameManifold::apply_field(const VectorField& X, const ScalarExpr& f) const {
  if (mode_ == Mode::Lie) {
    if (!f.is_constant()) {
      throw ContractError("lie mode cannot differentiate a non-constant scalar: " + f.str());
    }
    return ScalarExpr();
  }
  ScalarExpr acc;
  for (int j = 0; j < 3; ++j) {
    ScalarExpr xc;  // j-th coordinate component of X
    for (int i = 0; i < 3; ++i) xc += X[i] * frame_[i][j];
    acc += xc * f.derivative(j);
  }
  return acc;
}

VectorField FrameManifold::lie_bracket(const VectorField& X, const VectorField& Y) const {
  VectorField out;
  for (int k = 0; k < 3; ++k) {
    ScalarExpr acc = apply_field(X, Y[k]) - apply_field(Y, X[k]);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const VectorField& bb = basis_bracket(i, j);
        acc += X[i] * Y[j] * bb[k];
      }
    }
    out[k] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// FrameTensor
// ---------------------------------------------------------------------------

FrameTensor::FrameTensor(int contra_rank, int cov_rank, std::vector<SymmetryFlag> flags)
    : contra_(contra_rank), cov_(cov_rank), flags_(std::move(flags)) {
  if (contra_ < 0 || contra_ > 1 || cov_ < 0 || cov_ > 3) {
    throw ArityError("unsupported tensor valence (" + std::to_string(contra_) + "," +
                     std::to_string(cov_) + "); at most (1,3) is representable");
  }
  size_t n = contra_ == 1 ? 3 : 1;
  for (int i = 0; i < cov_; ++i) n *= 3;
  data_.assign(n, ScalarExpr());
  for (const SymmetryFlag& f : flags_) {
    if (f.slot_a < 0 || f.slot_a >= cov_ || f.slot_b < 0 || f.slot_b >= cov_ ||
        f.slot_a == f.slot_b) {
      throw ArityError("symmetry flag references invalid covariant slots");
    }
  }
}

size_t FrameTensor::flat(const std::vector<int>& idx) const {
  const size_t want = static_cast<size_t>(cov_ + contra_);
  if (idx.size() != want) {
    throw ArityError("tensor of valence (" + std::to_string(contra_) + "," +
                     std::to_string(cov_) + ") indexed with " + std::to_string(idx.size()) +
                     " indices");
  }
  size_t f = 0;
  for (int v : idx) {
    if (v < 0 || v > 2) throw ArityError("frame index out of range");
    f = f * 3 + static_cast<size_t>(v);
  }
  return f;
}

ScalarExpr& FrameTensor::at(const std::vector<int>& idx) { return data_[flat(idx)]; }
const ScalarExpr& FrameTensor::at(const std::vector<int>& idx) const { return data_[flat(idx)]; }

bool FrameTensor::symmetries_hold(std::string* why) const {
  std::vector<int> idx(static_cast<size_t>(cov_ + contra_), 0);
  for (const SymmetryFlag& f : flags_) {
    const size_t total = data_.size();
    for (size_t flat_idx = 0; flat_idx < total; ++flat_idx) {
      size_t rest = flat_idx;
      for (int k = cov_ + contra_ - 1; k >= 0; --k) {
        idx[static_cast<size_t>(k)] = static_cast<int>(rest % 3);
        rest /= 3;
      }
      std::vector<int> swapped = idx;
      std::swap(swapped[static_cast<size_t>(f.slot_a)], swapped[static_cast<size_t>(f.slot_b)]);
      const ScalarExpr defect = f.kind == PairSymmetry::Symmetric
                                    ? at(idx) - at(swapped)
                                    : at(idx) + at(swapped);
      if (!defect.is_zero().zero) {
        if (why) {
          *why = "symmetry defect at component (";
          for (size_t k = 0; k < idx.size(); ++k) {
            if (k) *why += ",";
            *why += std::to_string(idx[k] + 1);
          }
          *why += "): " + defect.str();
        }
        return false;
      }
    }
  }
  return true;
}

std::variant<ScalarExpr, VectorField> tensor_eval(const FrameTensor& T,
                                                  const std::vector<VectorField>& args) {
  if (static_cast<int>(args.size()) != T.cov_rank()) {
    throw ArityError("tensor with " + std::to_string(T.cov_rank()) +
                     " covariant slots applied to " + std::to_string(args.size()) +
                     " vector fields");
  }
  const int s = T.cov_rank();
  std::vector<int> idx(static_cast<size_t>(s), 0);
  size_t tuples = 1;
  for (int i = 0; i < s; ++i) tuples *= 3;

  auto weight = [&](const std::vector<int>& j) {
    ScalarExpr w(1);
    for (int k = 0; k < s; ++k) w = w * args[static_cast<size_t>(k)][j[static_cast<size_t>(k)]];
    return w;
  };

  if (T.contra_rank() == 0) {
    ScalarExpr acc;
    for (size_t t = 0; t < tuples; ++t) {
      size_t rest = t;
      for (int k = s - 1; k >= 0; --k) {
        idx[static_cast<size_t>(k)] = static_cast<int>(rest % 3);
        rest /= 3;
      }
      acc += weight(idx) * T.at(idx);
    }
    return acc;
  }

  VectorField out;
  for (size_t t = 0; t < tuples; ++t) {
    size_t rest = t;
    for (int k = s - 1; k >= 0; --k) {
      idx[static_cast<size_t>(k)] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    const ScalarExpr w = weight(idx);
    std::vector<int> full = idx;
    full.push_back(0);
    for (int l = 0; l < 3; ++l) {
      full.back() = l;
      out[l] += w * T.at(full);
    }
  }
  return out;
}

}  // namespace tsm
