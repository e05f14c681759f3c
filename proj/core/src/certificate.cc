#include "contain/certificate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "contain/errors.h"

namespace contain {

const char* ToString(Variant v) {
  switch (v) {
    case Variant::kExact:
      return "exact";
    case Variant::kRelaxed:
      return "relaxed";
    case Variant::kPositive:
      return "positive";
  }
  return "unknown";
}

const char* ToString(Provenance p) {
  switch (p) {
    case Provenance::kSolver:
      return "solver";
    case Provenance::kAnalyticEllipsoid:
      return "analytic-ellipsoid";
    case Provenance::kAnalyticBall:
      return "analytic-ball";
    case Provenance::kAnalyticLp:
      return "analytic-lp";
    case Provenance::kComposed:
      return "composed";
    case Provenance::kBlockJoined:
      return "block-joined";
    case Provenance::kIdentity:
      return "identity";
  }
  return "unknown";
}

Variant ParseVariant(const std::string& s) {
  if (s == "exact" || s == "hkm") return Variant::kExact;
  if (s == "relaxed" || s == "hkm-relaxed") return Variant::kRelaxed;
  if (s == "positive" || s == "hkm-positive") return Variant::kPositive;
  throw UsageError("unknown variant '" + s + "'");
}

Provenance ParseProvenance(const std::string& s) {
  for (Provenance p :
       {Provenance::kSolver, Provenance::kAnalyticEllipsoid,
        Provenance::kAnalyticBall, Provenance::kAnalyticLp,
        Provenance::kComposed, Provenance::kBlockJoined,
        Provenance::kIdentity}) {
    if (s == ToString(p)) return p;
  }
  throw UsageError("unknown provenance '" + s + "'");
}

Matrix ChoiApply(const ChoiCertificate& cert, const Matrix& a) {
  Matrix out = Matrix::Zero(cert.l, cert.l);
  for (int j = 0; j < cert.k; ++j) {
    for (int i = 0; i < cert.k; ++i) {
      if (a(i, j) != 0.0) out += a(i, j) * cert.Block(i, j);
    }
  }
  return 0.5 * (out + out.transpose());
}

namespace {

int SlackCount(Variant v, int n) {
  switch (v) {
    case Variant::kExact:
      return 0;
    case Variant::kRelaxed:
      return 1;
    case Variant::kPositive:
      return n + 1;
  }
  return 0;
}

}  // namespace

VerifyReport Verify(const ChoiCertificate& cert, const LinearPencil& a,
                    const LinearPencil& b, double tol) {
  if (a.n() != b.n()) throw DimensionError("Verify: pencils live in different dimensions");
  if (cert.k != a.k() || cert.l != b.k() || cert.C.rows() != cert.k * cert.l ||
      cert.C.cols() != cert.k * cert.l) {
    throw DimensionError("Verify: certificate is " + std::to_string(cert.k) +
                         "x" + std::to_string(cert.l) +
                         " blocks, pencils need " + std::to_string(a.k()) +
                         "x" + std::to_string(b.k()));
  }
  const int n = a.n();
  if (!cert.slacks.empty() &&
      static_cast<int>(cert.slacks.size()) != SlackCount(cert.variant, n)) {
    throw DimensionError("Verify: wrong number of slack matrices");
  }
  VerifyReport r;
  r.min_eig_slacks = std::numeric_limits<double>::infinity();
  const Matrix csym = 0.5 * (cert.C + cert.C.transpose());
  r.min_eig_C = MinEigenvalue(csym);
  const bool c_psd = IsPsd(csym, tol).psd;
  const double asym = (cert.C - cert.C.transpose()).cwiseAbs().maxCoeff();
  r.max_equality_residual = asym / std::max(1.0, cert.C.cwiseAbs().maxCoeff());

  bool slacks_ok = true;
  for (int p = 0; p <= n; ++p) {
    const Matrix& bp = b.mat(p).dense();
    const double scale = std::max(1.0, bp.cwiseAbs().maxCoeff());
    const Matrix g = bp - ChoiApply(cert, a.mat(p).dense());
    const bool is_slack = cert.variant == Variant::kPositive ||
                          (cert.variant == Variant::kRelaxed && p == 0);
    if (is_slack) {
      const double lmin = MinEigenvalue(g);
      r.min_eig_slacks = std::min(r.min_eig_slacks, lmin / scale);
      if (lmin < -tol * scale) slacks_ok = false;
      if (!cert.slacks.empty()) {
        const int idx = cert.variant == Variant::kRelaxed ? 0 : p;
        const double mismatch =
            (cert.slacks[idx] - g).cwiseAbs().maxCoeff() / scale;
        r.max_equality_residual = std::max(r.max_equality_residual, mismatch);
      }
    } else {
      r.max_equality_residual =
          std::max(r.max_equality_residual, g.cwiseAbs().maxCoeff() / scale);
    }
  }
  const bool eq_ok = r.max_equality_residual <= tol;
  r.ok = c_psd && slacks_ok && eq_ok;
  if (!c_psd) {
    r.message = "C is not positive semidefinite (lambda_min = " +
                std::to_string(r.min_eig_C) + ")";
  } else if (!eq_ok) {
    r.message = "equality residual " + std::to_string(r.max_equality_residual) +
                " exceeds tolerance";
  } else if (!slacks_ok) {
    r.message = "slack matrix is not positive semidefinite";
  } else {
    r.message = "ok";
  }
  return r;
}

ChoiCertificate IdentityCertificate(int k) {
  ChoiCertificate cert;
  cert.k = k;
  cert.l = k;
  cert.C = Matrix::Zero(k * k, k * k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) cert.C(i * k + i, j * k + j) = 1.0;
  }
  cert.provenance = Provenance::kIdentity;
  return cert;
}

ChoiCertificate AnalyticEllipsoid(const Vector& a, const Vector& b) {
  const int n = static_cast<int>(a.size());
  if (b.size() != n || n < 1) {
    throw DimensionError("AnalyticEllipsoid: semi-axis vectors differ in length");
  }
  for (int p = 0; p < n; ++p) {
    if (!(a(p) > 0.0) || !(b(p) > 0.0)) {
      throw UsageError("AnalyticEllipsoid: semi-axes must be positive");
    }
    if (a(p) > b(p)) {
      throw ContainmentFalse("semi-axis " + std::to_string(p) + ": " +
                                 std::to_string(a(p)) + " > " +
                                 std::to_string(b(p)),
                             p);
    }
  }
  const int k = n + 1;
  Vector d(k);
  d.head(n) = a.array() / b.array();
  d(n) = 1.0;
  ChoiCertificate cert;
  cert.k = k;
  cert.l = k;
  cert.C = Matrix::Zero(k * k, k * k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      cert.C(i * k + i, j * k + j) = (i == j) ? 1.0 : d(i) * d(j);
    }
  }
  cert.provenance = Provenance::kAnalyticEllipsoid;
  return cert;
}

ChoiCertificate AnalyticBallInPolyhedron(double r, const HPolyhedron& q) {
  if (!(r > 0.0)) throw UsageError("AnalyticBallInPolyhedron: r must be positive");
  if (!q.IsNormalForm()) {
    throw UsageError("AnalyticBallInPolyhedron: polyhedron is not in normal form");
  }
  const int n = q.n();
  const int l = q.m();
  const int k = n + 1;
  const double r2 = r * r;
  for (int s = 0; s < l; ++s) {
    if (r2 * q.normals.row(s).squaredNorm() > 1.0 + 1e-12) {
      throw ContainmentFalse("ball of radius " + std::to_string(r) +
                                 " leaves facet " + std::to_string(s),
                             s);
    }
  }
  ChoiCertificate cert;
  cert.k = k;
  cert.l = l;
  cert.C = Matrix::Zero(k * l, k * l);
  for (int s = 0; s < l; ++s) {
    const auto bs = q.normals.row(s);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        double v;
        if (i < n && j < n) {
          v = r2 * bs(i) * bs(j) / 2.0;
        } else if (i == n && j == n) {
          v = 1.0 - r2 / 2.0 * bs.squaredNorm();
        } else if (i == n) {
          v = r * bs(j) / 2.0;
        } else {
          v = r * bs(i) / 2.0;
        }
        cert.C(i * l + s, j * l + s) = v;
      }
    }
  }
  cert.provenance = Provenance::kAnalyticBall;
  return cert;
}

ChoiCertificate AnalyticHInH(const Matrix& stochastic) {
  const int l = static_cast<int>(stochastic.rows());
  const int k = static_cast<int>(stochastic.cols());
  ChoiCertificate cert;
  cert.k = k;
  cert.l = l;
  cert.C = Matrix::Zero(k * l, k * l);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < k; ++j) {
      cert.C(j * l + i, j * l + i) = std::max(0.0, stochastic(i, j));
    }
  }
  cert.provenance = Provenance::kAnalyticLp;
  return cert;
}

ChoiCertificate Compose(const ChoiCertificate& de, const ChoiCertificate& ef) {
  if (de.l != ef.k) {
    throw DimensionError("Compose: middle pencil sizes differ (" +
                         std::to_string(de.l) + " vs " + std::to_string(ef.k) +
                         ")");
  }
  const int kd = de.k;
  const int ke = de.l;
  const int lf = ef.l;
  // sum_st X_st C^EF_st for a ke x ke matrix X.
  auto apply = [&](const Matrix& x) { return ChoiApply(ef, x); };

  ChoiCertificate out;
  out.k = kd;
  out.l = lf;
  out.C = Matrix::Zero(kd * lf, kd * lf);
  for (int i = 0; i < kd; ++i) {
    for (int j = 0; j < kd; ++j) {
      Matrix blk = Matrix::Zero(lf, lf);
      for (int t = 0; t < ke; ++t) {
        for (int s = 0; s < ke; ++s) {
          const double w = de.C(i * ke + s, j * ke + t);
          if (w != 0.0) blk += w * ef.Block(s, t);
        }
      }
      out.C.block(i * lf, j * lf, lf, lf) = blk;
    }
  }
  out.C = 0.5 * (out.C + out.C.transpose());

  if (de.variant == Variant::kPositive || ef.variant == Variant::kPositive) {
    out.variant = Variant::kPositive;
  } else if (de.variant == Variant::kRelaxed || ef.variant == Variant::kRelaxed) {
    out.variant = Variant::kRelaxed;
  } else {
    out.variant = Variant::kExact;
  }

  if (out.variant != Variant::kExact) {
    int count = 1;
    if (out.variant == Variant::kPositive) {
      count = static_cast<int>(std::max(de.slacks.size(), ef.slacks.size()));
      if (count == 0) {
        throw DimensionError("Compose: positive input without slack matrices");
      }
    }
    // Slack of each input at index p; zero where the input has an equality.
    auto slack_of = [&](const ChoiCertificate& c, int p, int dim) -> Matrix {
      if (c.variant == Variant::kPositive && p < static_cast<int>(c.slacks.size())) {
        return c.slacks[p];
      }
      if (c.variant == Variant::kRelaxed && p == 0 && !c.slacks.empty()) {
        return c.slacks[0];
      }
      return Matrix::Zero(dim, dim);
    };
    for (int p = 0; p < count; ++p) {
      out.slacks.push_back(slack_of(ef, p, lf) + apply(slack_of(de, p, ke)));
    }
  }
  out.provenance = Provenance::kComposed;
  return out;
}

std::vector<int> ContiguousBlocks(const LinearPencil& b) {
  const int l = b.k();
  std::vector<int> reach(l);
  for (int i = 0; i < l; ++i) {
    reach[i] = i;
    for (const auto& m : b.mats()) {
      for (int j = l - 1; j > reach[i]; --j) {
        if (m(i, j) != 0.0) {
          reach[i] = j;
          break;
        }
      }
    }
  }
  std::vector<int> sizes;
  int start = 0;
  int far = 0;
  for (int t = 0; t < l; ++t) {
    far = std::max(far, reach[t]);
    if (far == t) {
      sizes.push_back(t + 1 - start);
      start = t + 1;
      far = t + 1;
    }
  }
  return sizes;
}

namespace {

std::vector<int> Offsets(const std::vector<int>& sizes) {
  std::vector<int> off(sizes.size());
  int o = 0;
  for (size_t q = 0; q < sizes.size(); ++q) {
    off[q] = o;
    o += sizes[q];
  }
  return off;
}

}  // namespace

std::vector<ChoiCertificate> SplitBlocks(const ChoiCertificate& cert,
                                         const std::vector<int>& sizes) {
  int total = 0;
  for (int s : sizes) total += s;
  if (total != cert.l) throw DimensionError("SplitBlocks: block sizes do not sum to l");
  const std::vector<int> off = Offsets(sizes);
  std::vector<ChoiCertificate> parts;
  for (size_t q = 0; q < sizes.size(); ++q) {
    const int lq = sizes[q];
    ChoiCertificate part;
    part.k = cert.k;
    part.l = lq;
    part.variant = cert.variant;
    part.provenance = cert.provenance;
    part.C.resize(cert.k * lq, cert.k * lq);
    for (int i = 0; i < cert.k; ++i) {
      for (int j = 0; j < cert.k; ++j) {
        part.C.block(i * lq, j * lq, lq, lq) =
            cert.C.block(i * cert.l + off[q], j * cert.l + off[q], lq, lq);
      }
    }
    for (const auto& g : cert.slacks) {
      part.slacks.push_back(g.block(off[q], off[q], lq, lq));
    }
    parts.push_back(std::move(part));
  }
  return parts;
}

ChoiCertificate JoinBlocks(const std::vector<ChoiCertificate>& parts) {
  if (parts.empty()) throw DimensionError("JoinBlocks: no parts");
  const int k = parts[0].k;
  std::vector<int> sizes;
  for (const auto& p : parts) {
    if (p.k != k) throw DimensionError("JoinBlocks: parts have different k");
    if (p.variant != parts[0].variant ||
        p.slacks.size() != parts[0].slacks.size()) {
      throw DimensionError("JoinBlocks: parts have different variants");
    }
    sizes.push_back(p.l);
  }
  const std::vector<int> off = Offsets(sizes);
  const int l = off.back() + sizes.back();
  ChoiCertificate out;
  out.k = k;
  out.l = l;
  out.variant = parts[0].variant;
  out.provenance = Provenance::kBlockJoined;
  out.C = Matrix::Zero(k * l, k * l);
  for (size_t q = 0; q < parts.size(); ++q) {
    const int lq = sizes[q];
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        out.C.block(i * l + off[q], j * l + off[q], lq, lq) =
            parts[q].C.block(i * lq, j * lq, lq, lq);
      }
    }
  }
  for (size_t p = 0; p < parts[0].slacks.size(); ++p) {
    Matrix g = Matrix::Zero(l, l);
    for (size_t q = 0; q < parts.size(); ++q) {
      g.block(off[q], off[q], sizes[q], sizes[q]) = parts[q].slacks[p];
    }
    out.slacks.push_back(std::move(g));
  }
  return out;
}

LinearPencil PencilBlock(const LinearPencil& b, const std::vector<int>& sizes,
                         int q) {
  const std::vector<int> off = Offsets(sizes);
  std::vector<SymMatrix> mats;
  for (const auto& m : b.mats()) {
    mats.emplace_back(
        Matrix(m.dense().block(off.at(q), off.at(q), sizes[q], sizes[q])));
  }
  return LinearPencil(std::move(mats));
}

}  // namespace contain
