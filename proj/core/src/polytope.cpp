#include "mfpos/polytope.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace mfpos {

namespace {

void check_dimensions(const std::vector<LinearInequality>& premises,
                      const LinearInequality& target) {
  for (const auto& p : premises) {
    if (p.coeffs.size() != target.coeffs.size()) {
      throw std::invalid_argument("implies: inconsistent dimension among inequalities");
    }
  }
}

// Primal data of "minimize target over the premise region":
//   min g.x  s.t.  A x >= b, x >= 0,  with b_i = -premise constant.
struct PrimalData {
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  std::vector<Rational> g;
  Rational g0;
};

PrimalData primal_data(const std::vector<LinearInequality>& premises,
                       const LinearInequality& target) {
  PrimalData d;
  d.g = target.coeffs;
  d.g0 = target.constant;
  for (const auto& p : premises) {
    d.A.push_back(p.coeffs);
    d.b.push_back(-p.constant);
  }
  return d;
}

}  // namespace

Rational LinearInequality::eval(const std::vector<Rational>& a) const {
  if (a.size() != coeffs.size()) {
    throw std::invalid_argument("LinearInequality::eval: wrong dimension");
  }
  Rational acc = constant;
  for (size_t m = 0; m < coeffs.size(); ++m) acc += coeffs[m] * a[m];
  return acc;
}

LinearInequality inequality_for(const CanonicalBasis& basis, unsigned n) {
  if (static_cast<long>(n) >= basis.prec) {
    throw std::out_of_range("inequality_for: index beyond basis precision");
  }
  LinearInequality q;
  q.n = n;
  q.constant = basis.forms[0].coeff(static_cast<long>(n));
  for (unsigned m = 1; m <= basis.ell; ++m) {
    q.coeffs.push_back(basis.forms[m].coeff(static_cast<long>(n)));
  }
  return q;
}

std::vector<LinearInequality> inequalities_upto(const CanonicalBasis& basis, unsigned limit) {
  std::vector<LinearInequality> out;
  out.reserve(limit);
  for (unsigned n = 1; n <= limit; ++n) out.push_back(inequality_for(basis, n));
  return out;
}

bool verify_certificate(const std::vector<LinearInequality>& premises,
                        const LinearInequality& target, const FarkasCertificate& cert) {
  const size_t ell = target.coeffs.size();
  if (cert.premise_multipliers.size() != premises.size()) return false;
  if (cert.bound_multipliers.size() != ell) return false;
  for (const auto& y : cert.premise_multipliers) {
    if (y < 0) return false;
  }
  for (const auto& z : cert.bound_multipliers) {
    if (z < 0) return false;
  }
  if (cert.slack < 0) return false;
  for (size_t m = 0; m < ell; ++m) {
    Rational acc = cert.bound_multipliers[m];
    for (size_t i = 0; i < premises.size(); ++i) {
      acc += cert.premise_multipliers[i] * premises[i].coeffs[m];
    }
    if (acc != target.coeffs[m]) return false;
  }
  Rational c = cert.slack;
  for (size_t i = 0; i < premises.size(); ++i) {
    c += cert.premise_multipliers[i] * premises[i].constant;
  }
  return c == target.constant;
}

bool verify_witness(const std::vector<LinearInequality>& premises,
                    const LinearInequality& target, const WitnessPoint& w) {
  if (w.values.size() != target.coeffs.size()) return false;
  for (const auto& v : w.values) {
    if (v < 0) return false;
  }
  for (const auto& p : premises) {
    if (p.eval(w.values) < 0) return false;
  }
  return target.eval(w.values) < 0;
}

ImplicationResult implies(const std::vector<LinearInequality>& premises,
                          const LinearInequality& target) {
  check_dimensions(premises, target);
  const size_t ell = target.coeffs.size();
  const size_t m = premises.size();
  PrimalData d = primal_data(premises, target);

  // Dual orientation keeps the tableau at ell rows:
  //   min c0vec.y  s.t.  -A^T y >= -g, y >= 0,  c0vec_i = premise constant.
  LpProblem dualp;
  dualp.A.assign(ell, std::vector<Rational>(m, Rational(0)));
  dualp.b.assign(ell, Rational(0));
  dualp.c.assign(m, Rational(0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < ell; ++j) dualp.A[j][i] = -d.A[i][j];
    dualp.c[i] = premises[i].constant;
  }
  for (size_t j = 0; j < ell; ++j) dualp.b[j] = -d.g[j];

  LpSolution ds = solve_lp(dualp);

  ImplicationResult res;
  if (ds.status == LpStatus::Unbounded) {
    // Dual unbounded: the premise region (with a >= 0) is empty.
    res.implied = true;
    res.vacuous = true;
    return res;
  }

  if (ds.status == LpStatus::Optimal) {
    const Rational target_min = d.g0 - ds.value;
    if (target_min >= 0) {
      FarkasCertificate cert;
      cert.premise_multipliers = ds.x;
      cert.bound_multipliers.assign(ell, Rational(0));
      for (size_t j = 0; j < ell; ++j) {
        Rational z = d.g[j];
        for (size_t i = 0; i < m; ++i) z -= ds.x[i] * d.A[i][j];
        cert.bound_multipliers[j] = z;
      }
      cert.slack = target_min;
      if (!verify_certificate(premises, target, cert)) {
        throw std::logic_error("implies: certificate failed exact re-verification");
      }
      res.implied = true;
      res.certificate = std::move(cert);
      return res;
    }
    // Optimum below zero: the dual row multipliers are a primal minimizer.
    WitnessPoint w;
    w.values = ds.duals;
    if (!verify_witness(premises, target, w)) {
      throw std::logic_error("implies: witness from dual solve failed re-verification");
    }
    res.implied = false;
    res.witness = std::move(w);
    return res;
  }

  // Dual infeasible: the target functional is unbounded below over the
  // premise region.  Solve the primal orientation to get a point and ray.
  LpProblem primal;
  primal.A = d.A;
  primal.b = d.b;
  primal.c = d.g;
  LpSolution ps = solve_lp(primal);
  if (ps.status == LpStatus::Infeasible) {
    res.implied = true;
    res.vacuous = true;
    return res;
  }
  WitnessPoint w;
  if (ps.status == LpStatus::Optimal) {
    w.values = ps.x;
  } else {
    // Walk from the feasible point along the ray until strictly violating.
    Rational v0 = d.g0;
    Rational gr(0);
    for (size_t j = 0; j < ell; ++j) {
      v0 += d.g[j] * ps.x[j];
      gr += d.g[j] * ps.ray[j];
    }
    if (gr >= 0) throw std::logic_error("implies: unbounded ray does not decrease target");
    Rational lambda = (v0 + 1) / (-gr);
    if (lambda < 0) lambda = 0;
    w.values = ps.x;
    for (size_t j = 0; j < ell; ++j) w.values[j] += lambda * ps.ray[j];
  }
  if (!verify_witness(premises, target, w)) {
    throw std::logic_error("implies: ray witness failed re-verification");
  }
  res.implied = false;
  res.witness = std::move(w);
  return res;
}

AkResult compute_A(unsigned k, const CanonicalBasis& basis, unsigned Bk) {
  if (basis.weight != k) throw std::invalid_argument("compute_A: basis weight mismatch");
  if (basis.prec <= static_cast<long>(Bk)) {
    throw std::invalid_argument("compute_A: basis precision must exceed Bk");
  }
  const unsigned ell = basis.ell;
  if (ell < 1 || Bk < ell) throw std::invalid_argument("compute_A: need 1 <= ell <= Bk");

  std::vector<LinearInequality> all = inequalities_upto(basis, Bk);
  std::vector<LinearInequality> premises(all.begin(), all.begin() + ell);

  // Single upward pass.  When {1..N} fails to imply target n, the witness
  // satisfies inequalities 1..n-1 (earlier targets were already implied) and
  // violates n, so every candidate below n fails and N jumps to n.
  unsigned N = ell;
  for (unsigned n = ell + 1; n <= Bk; ++n) {
    ImplicationResult r = implies(premises, all[n - 1]);
    if (!r.implied) {
      N = n;
      premises.assign(all.begin(), all.begin() + n);
    }
  }

  AkResult out;
  out.A = N;
  if (N == ell) {
    // First inequality that is not implied by a(1..ell-1) >= 0 alone is
    // a(ell) >= 0 itself; the unit-negative point realizes it.
    out.witness.values.assign(ell, Rational(0));
    out.witness.values[ell - 1] = -1;
  } else {
    std::vector<LinearInequality> pre(all.begin(), all.begin() + (N - 1));
    ImplicationResult r = implies(pre, all[N - 1]);
    if (r.implied || !r.witness) {
      throw std::logic_error("compute_A: minimality witness unexpectedly implied");
    }
    out.witness = *r.witness;
  }

  // Verify the witness against the exact q-expansion.
  {
    QExpansion f = basis.forms[0];
    for (unsigned m2 = 1; m2 <= ell; ++m2) {
      f = add(f, scale(basis.forms[m2], out.witness.values[m2 - 1]));
    }
    for (unsigned n = 0; n < N; ++n) {
      if (f.coeff(static_cast<long>(n)) < 0) {
        throw std::logic_error("compute_A: witness has an early negative coefficient");
      }
    }
    if (!(f.coeff(static_cast<long>(N)) < 0)) {
      throw std::logic_error("compute_A: witness does not violate coefficient N");
    }
  }
  return out;
}

namespace {

// Implication over the raw half-space family (free variables, no implicit
// bounds), decided through the dual with equality rows split in two.
bool family_implies(const std::vector<LinearInequality>& premises,
                    const LinearInequality& target) {
  const size_t ell = target.coeffs.size();
  const size_t m = premises.size();
  LpProblem dualp;
  dualp.A.assign(2 * ell, std::vector<Rational>(m, Rational(0)));
  dualp.b.assign(2 * ell, Rational(0));
  dualp.c.assign(m, Rational(0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < ell; ++j) {
      dualp.A[j][i] = -premises[i].coeffs[j];
      dualp.A[ell + j][i] = premises[i].coeffs[j];
    }
    dualp.c[i] = premises[i].constant;
  }
  for (size_t j = 0; j < ell; ++j) {
    dualp.b[j] = -target.coeffs[j];
    dualp.b[ell + j] = target.coeffs[j];
  }
  LpSolution ds = solve_lp(dualp);
  if (ds.status == LpStatus::Unbounded) return true;   // empty premise region
  if (ds.status == LpStatus::Infeasible) return false; // target unbounded below
  return target.constant - ds.value >= 0;
}

}  // namespace

PolytopeSummary polytope_summary(unsigned k, const CanonicalBasis& basis, unsigned Bk) {
  if (basis.weight != k) throw std::invalid_argument("polytope_summary: basis weight mismatch");
  if (basis.prec <= static_cast<long>(Bk)) {
    throw std::invalid_argument("polytope_summary: basis precision must exceed Bk");
  }
  const unsigned ell = basis.ell;
  if (ell < 1) throw std::invalid_argument("polytope_summary: need ell >= 1");

  std::vector<LinearInequality> all = inequalities_upto(basis, Bk);
  std::vector<unsigned> active;
  for (unsigned n = 1; n <= Bk; ++n) active.push_back(n);

  for (unsigned n = Bk; n >= 1; --n) {
    std::vector<LinearInequality> others;
    bool present = false;
    for (unsigned idx : active) {
      if (idx == n) {
        present = true;
        continue;
      }
      others.push_back(all[idx - 1]);
    }
    if (!present) continue;
    if (family_implies(others, all[n - 1])) {
      active.erase(std::remove(active.begin(), active.end(), n), active.end());
    }
    if (n == 1) break;
  }

  PolytopeSummary s;
  s.ell = ell;
  s.active = active;
  s.touches_horizon = !active.empty() && active.back() == Bk;

  if (ell == 1) {
    // S is an interval; report its endpoints.
    std::optional<Rational> lo, hi;
    for (unsigned idx : active) {
      const LinearInequality& q = all[idx - 1];
      if (q.coeffs[0] > 0) {
        Rational bound = -q.constant / q.coeffs[0];
        if (!lo || bound > *lo) lo = bound;
      } else if (q.coeffs[0] < 0) {
        Rational bound = -q.constant / q.coeffs[0];
        if (!hi || bound < *hi) hi = bound;
      }
    }
    if (lo) s.vertices.push_back({*lo});
    if (hi && (!lo || *hi != *lo)) s.vertices.push_back({*hi});
  } else if (ell == 2) {
    std::vector<std::vector<Rational>> verts;
    for (size_t i = 0; i < active.size(); ++i) {
      for (size_t j = i + 1; j < active.size(); ++j) {
        const LinearInequality& p = all[active[i] - 1];
        const LinearInequality& q = all[active[j] - 1];
        const Rational det = p.coeffs[0] * q.coeffs[1] - p.coeffs[1] * q.coeffs[0];
        if (det == 0) continue;
        // Solve p.coeffs . a = -p.constant, q.coeffs . a = -q.constant.
        Rational a0 = (-p.constant * q.coeffs[1] + p.coeffs[1] * q.constant) / det;
        Rational a1 = (-p.coeffs[0] * q.constant + p.constant * q.coeffs[0]) / det;
        std::vector<Rational> v{a0, a1};
        bool feasible = true;
        for (unsigned idx : active) {
          if (all[idx - 1].eval(v) < 0) {
            feasible = false;
            break;
          }
        }
        if (feasible && std::find(verts.begin(), verts.end(), v) == verts.end()) {
          verts.push_back(std::move(v));
        }
      }
    }
    std::sort(verts.begin(), verts.end(),
              [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
                if (a[0] != b[0]) return a[0] < b[0];
                return a[1] < b[1];
              });
    s.vertices = std::move(verts);
  }
  return s;
}

namespace {

struct FmRow {
  Rational constant;
  std::vector<Rational> coeffs;
  bool strict = false;
};

bool fm_feasible(std::vector<FmRow> rows, size_t ell) {
  for (size_t v = 0; v < ell; ++v) {
    std::vector<FmRow> pos, negs, rest;
    for (auto& r : rows) {
      const size_t idx = ell - 1 - v;  // eliminate from the back
      if (r.coeffs[idx] > 0) {
        pos.push_back(std::move(r));
      } else if (r.coeffs[idx] < 0) {
        negs.push_back(std::move(r));
      } else {
        rest.push_back(std::move(r));
      }
    }
    const size_t idx = ell - 1 - v;
    for (const auto& p : pos) {
      for (const auto& q : negs) {
        FmRow nr;
        nr.strict = p.strict || q.strict;
        const Rational sp = -q.coeffs[idx];  // > 0
        const Rational sq = p.coeffs[idx];   // > 0
        nr.constant = p.constant * sp + q.constant * sq;
        nr.coeffs.assign(idx, Rational(0));
        for (size_t j = 0; j < idx; ++j) {
          nr.coeffs[j] = p.coeffs[j] * sp + q.coeffs[j] * sq;
        }
        rest.push_back(std::move(nr));
      }
    }
    for (auto& r : rest) r.coeffs.resize(idx);

    // Canonicalize and keep only the strongest row per direction.
    std::map<std::vector<Rational>, std::pair<Rational, bool>> best;
    std::vector<FmRow> kept;
    for (auto& r : rest) {
      Rational scale_factor(0);
      for (const auto& cval : r.coeffs) {
        Rational a = abs(cval);
        if (a > scale_factor) scale_factor = a;
      }
      if (scale_factor == 0) {
        kept.push_back(std::move(r));  // pure constant row; checked at the end
        continue;
      }
      std::vector<Rational> dir;
      dir.reserve(r.coeffs.size());
      for (const auto& cval : r.coeffs) dir.push_back(cval / scale_factor);
      Rational cc = r.constant / scale_factor;
      auto it = best.find(dir);
      if (it == best.end()) {
        best.emplace(std::move(dir), std::make_pair(cc, r.strict));
      } else {
        auto& [bc, bs] = it->second;
        if (cc < bc || (cc == bc && r.strict && !bs)) {
          bc = cc;
          bs = r.strict;
        }
      }
    }
    for (auto& [dir, cs] : best) {
      FmRow r;
      r.coeffs = dir;
      r.constant = cs.first;
      r.strict = cs.second;
      kept.push_back(std::move(r));
    }
    rows = std::move(kept);
  }
  for (const auto& r : rows) {
    if (r.strict ? (r.constant <= 0) : (r.constant < 0)) return false;
  }
  return true;
}

}  // namespace

bool fm_implies(const std::vector<LinearInequality>& premises, const LinearInequality& target) {
  const size_t ell = target.coeffs.size();
  std::vector<FmRow> rows;
  for (const auto& p : premises) {
    rows.push_back({p.constant, p.coeffs, false});
  }
  for (size_t mBound = 0; mBound < ell; ++mBound) {
    FmRow r;
    r.constant = 0;
    r.coeffs.assign(ell, Rational(0));
    r.coeffs[mBound] = 1;
    rows.push_back(std::move(r));
  }
  // Negated target, strict: -constant - coeffs.a > 0.
  FmRow nt;
  nt.strict = true;
  nt.constant = -target.constant;
  nt.coeffs.reserve(ell);
  for (const auto& cval : target.coeffs) nt.coeffs.push_back(-cval);
  rows.push_back(std::move(nt));
  return !fm_feasible(std::move(rows), ell);
}

bool vertex_implies(const std::vector<LinearInequality>& premises,
                    const LinearInequality& target) {
  if (target.coeffs.size() != 2) {
    throw std::invalid_argument("vertex_implies: only dimension 2 supported");
  }
  std::vector<LinearInequality> rows = premises;
  for (unsigned mBound = 0; mBound < 2; ++mBound) {
    LinearInequality b;
    b.constant = 0;
    b.coeffs.assign(2, Rational(0));
    b.coeffs[mBound] = 1;
    rows.push_back(std::move(b));
  }

  std::vector<std::vector<Rational>> verts;
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = i + 1; j < rows.size(); ++j) {
      const Rational det = rows[i].coeffs[0] * rows[j].coeffs[1] -
                           rows[i].coeffs[1] * rows[j].coeffs[0];
      if (det == 0) continue;
      Rational a0 = (-rows[i].constant * rows[j].coeffs[1] +
                     rows[i].coeffs[1] * rows[j].constant) / det;
      Rational a1 = (-rows[i].coeffs[0] * rows[j].constant +
                     rows[i].constant * rows[j].coeffs[0]) / det;
      std::vector<Rational> v{a0, a1};
      bool feasible = true;
      for (const auto& r : rows) {
        if (r.eval(v) < 0) {
          feasible = false;
          break;
        }
      }
      if (feasible && std::find(verts.begin(), verts.end(), v) == verts.end()) {
        verts.push_back(std::move(v));
      }
    }
  }
  if (verts.empty()) return true;  // pointed region with no vertex is empty

  for (const auto& v : verts) {
    if (target.eval(v) < 0) return false;
  }

  // Recession directions: boundary directions of the constraint cone.
  std::vector<std::vector<Rational>> dirs;
  for (const auto& r : rows) {
    std::vector<Rational> d1{r.coeffs[1], -r.coeffs[0]};
    std::vector<Rational> d2{-r.coeffs[1], r.coeffs[0]};
    for (auto& d : {d1, d2}) {
      if (d[0] == 0 && d[1] == 0) continue;
      bool in_cone = true;
      for (const auto& rr : rows) {
        if (rr.coeffs[0] * d[0] + rr.coeffs[1] * d[1] < 0) {
          in_cone = false;
          break;
        }
      }
      if (in_cone) dirs.push_back(d);
    }
  }
  for (const auto& d : dirs) {
    if (target.coeffs[0] * d[0] + target.coeffs[1] * d[1] < 0) return false;
  }
  return true;
}

}  // namespace mfpos
