"""Contact CR-structure verification: distribution classification,
integrability, geodesicity/umbilicity classifiers, and the CR-product
criterion.

Every equivalence theorem is realised as independently computed residual
families; the engine reports co-occurrence of the two sides and never
derives one from the other.  Membership statements "v lies in S" are
scored as the metric norm of v's component orthogonal to S.
"""

import numpy as np

from .geometry import GeometryError, VectorField, lie_bracket
from .jets import jmatvec
from .report import CheckReport, Tracker
from .sampling import sample_box
from .submanifold import MapGeometry

__all__ = [
    "Distribution", "CRStructure",
    "check_contact_cr", "check_integrability_D", "check_integrability_Dperp",
    "check_dual_shape_identities", "classify_geodesic",
    "check_mixed_geodesic_consequences", "check_cr_product",
]


class Distribution:
    """A distribution on the domain chart, given by generator fields."""

    def __init__(self, generators):
        self.generators = list(generators)
        if not self.generators:
            self.generators = []
        self.rank = len(self.generators)
        dims = {g.dim for g in self.generators}
        if len(dims) > 1:
            raise GeometryError("distribution generators of mixed dimension")

    @property
    def dim(self):
        return self.generators[0].dim if self.generators else 0


class CRStructure:
    """Submanifold plus the orthogonal splitting of its tangent bundle into
    an invariant distribution (containing the ambient Reeb field) and an
    anti-invariant complement."""

    def __init__(self, emb, sss, D, Dperp, mg=None):
        self.emb = emb
        self.sss = sss
        self.D = D if isinstance(D, Distribution) else Distribution(D)
        self.Dperp = Dperp if isinstance(Dperp, Distribution) else Distribution(Dperp)
        st = sss.st
        self._mg = mg if mg is not None else MapGeometry(
            emb, st.g, nabla=st.nabla, nabla_star=st.nabla_star, acs=sss.acs)
        self._brackets = {}
        self._contexts = {}

    def context(self, p):
        key = np.asarray(p, dtype=float).tobytes()
        if key not in self._contexts:
            self._contexts[key] = _CRContext(self, p)
        return self._contexts[key]

    def bracket(self, kind, i, j):
        key = (kind, i, j)
        if key not in self._brackets:
            gens = (self.D if kind == "D" else self.Dperp).generators
            self._brackets[key] = lie_bracket(gens[i], gens[j])
        return self._brackets[key]


def _span_projector(cols, G):
    """g-orthogonal projector onto the column span (empty span -> zero)."""
    if cols.size == 0:
        n = G.shape[0]
        return np.zeros((n, n))
    gram = cols.T @ G @ cols
    return cols @ np.linalg.solve(gram, cols.T @ G)


class _CRContext:
    """Per-point working data: the Gauss-Weingarten context plus pushed
    generators, span projectors, and the normal-bundle splitting into the
    image of the anti-invariant distribution and its invariant complement."""

    def __init__(self, cr, p):
        self.cr = cr
        self.ctx = cr._mg.context(p)
        ctx = self.ctx
        fp = ctx.frame
        self.fp = fp
        self.G = fp.G
        self.d_dom = [np.asarray(g.at(p[None])[0]) for g in cr.D.generators]
        self.dp_dom = [np.asarray(g.at(p[None])[0]) for g in cr.Dperp.generators]
        self.d_amb = [fp.J @ x for x in self.d_dom]
        self.dp_amb = [fp.J @ x for x in self.dp_dom]
        self.P_D = _span_projector(
            np.stack(self.d_amb, axis=1) if self.d_amb else np.zeros((fp.n, 0)),
            self.G)
        self.P_Dp = _span_projector(
            np.stack(self.dp_amb, axis=1) if self.dp_amb else np.zeros((fp.n, 0)),
            self.G)
        self.xi = ctx.xi.val
        self.xi_dom = fp.tangent_coeffs(self.xi)
        # D with the Reeb direction removed, for the frame projections
        xi_unit = self.xi / max(ctx.gnorm(self.xi), 1e-300)
        reduced = []
        for v in self.d_amb:
            w = v - ctx.ginner(v, xi_unit) * xi_unit
            for u in reduced:
                w = w - ctx.ginner(w, u) * u
            norm = ctx.gnorm(w)
            if norm > 1e-10:
                reduced.append(w / norm)
        self.P_1 = _span_projector(
            np.stack(reduced, axis=1) if reduced else np.zeros((fp.n, 0)),
            self.G)
        # normal splitting: the image of phi on Dperp, then its complement
        self.phiZ_jets = [ctx.f_jet(Z) for Z in cr.Dperp.generators]
        fframe = ctx._gs(self.phiZ_jets, [])
        self.fframe = fframe
        self.nu_jets = ctx._gs(ctx.normal_jets, fframe)
        self.P_nu = _span_projector(
            np.stack([f.val for f in self.nu_jets], axis=1)
            if self.nu_jets else np.zeros((fp.n, 0)), self.G)

    def off(self, v, projector):
        return self.ctx.gnorm(v - projector @ v)


def _domain_samples(cr, samples):
    if samples is not None:
        return samples
    return sample_box(cr.emb.m)


def check_contact_cr(cr, samples=None, tol=1e-8):
    """Structural records: generator independence and spanning, mutual
    orthogonality, invariance of D, anti-invariance of its complement, Reeb
    membership, invariance of the nu-subbundle, and the four projection
    identities of the tangential/normal decomposition."""
    samples = _domain_samples(cr, samples)
    rep = CheckReport(check="contact-cr",
                      census={"samples": samples.count,
                              "rank-D": cr.D.rank, "rank-Dperp": cr.Dperp.rank})
    names = ["generator-rank", "span-completeness", "d-dperp-orthogonal",
             "d-invariance", "dperp-anti-invariance", "xi-in-d",
             "nu-invariance", "nu-decomposition", "projection-decomposition",
             "fp1-zero", "tp2-zero", "f-is-fp2", "t-is-tp1"]
    tr = {nm: Tracker() for nm in names}
    m = cr.emb.m

    for s, p in enumerate(samples.points):
        c = cr.context(p)
        ctx = c.ctx
        scale = max(np.abs(c.G).max(), np.abs(ctx.phi.val).max(), 1.0)
        allgens = np.stack(c.d_dom + c.dp_dom, axis=1)
        gram = allgens.T @ c.fp.gram @ allgens
        rank = np.linalg.matrix_rank(gram, tol=1e-10)
        tr["generator-rank"].add(float(cr.D.rank + cr.Dperp.rank - rank),
                                 sample=s, scale=scale)
        tr["span-completeness"].add(float(m - rank), sample=s, scale=scale)
        for i, x in enumerate(c.d_amb):
            for j, z in enumerate(c.dp_amb):
                tr["d-dperp-orthogonal"].add(abs(ctx.ginner(x, z)), sample=s,
                                             labels=f"X=D{i+1} Z=P{j+1}",
                                             scale=scale)
        for i, x in enumerate(c.d_amb):
            tr["d-invariance"].add(c.off(ctx.phi_val(x), c.P_D), sample=s,
                                   labels=f"X=D{i+1}", scale=scale)
        for j, z in enumerate(c.dp_amb):
            tr["dperp-anti-invariance"].add(
                ctx.gnorm(ctx.tangential(ctx.phi_val(z))), sample=s,
                labels=f"Z=P{j+1}", scale=scale)
        tr["xi-in-d"].add(c.off(c.xi, c.P_D), sample=s, scale=scale)
        for k, lam in enumerate(c.nu_jets):
            philam = ctx.phi_val(lam.val)
            tr["nu-invariance"].add(c.off(philam, c.P_nu), sample=s,
                                    labels=f"ν{k+1}", scale=scale)
        # the normal bundle splits as (phi Dperp) + nu, orthogonally
        nnormal = c.fp.normal.shape[1]
        tr["nu-decomposition"].add(
            float(nnormal - len(c.fframe) - len(c.nu_jets)), sample=s,
            scale=scale)
        for f in c.fframe:
            for nu in c.nu_jets:
                tr["nu-decomposition"].add(abs(ctx.ginner(f.val, nu.val)),
                                           sample=s, scale=scale)
        for i in range(m):
            v = c.fp.J[:, i]
            p1v = c.P_1 @ v
            p2v = c.P_Dp @ v
            tr["projection-decomposition"].add(
                ctx.gnorm(v - p1v - p2v - ctx.eta_of(v) * c.xi), sample=s,
                labels=f"X=u{i+1}", scale=scale)
            tr["fp1-zero"].add(ctx.gnorm(ctx.f_val(p1v)), sample=s,
                               labels=f"X=u{i+1}", scale=scale)
            tr["tp2-zero"].add(ctx.gnorm(ctx.t_val(p2v)), sample=s,
                               labels=f"X=u{i+1}", scale=scale)
            tr["f-is-fp2"].add(ctx.gnorm(ctx.f_val(v) - ctx.f_val(p2v)),
                               sample=s, labels=f"X=u{i+1}", scale=scale)
            tr["t-is-tp1"].add(ctx.gnorm(ctx.t_val(v) - ctx.t_val(p1v)),
                               sample=s, labels=f"X=u{i+1}", scale=scale)

    idents = {
        "generator-rank": "generators linearly independent",
        "span-completeness": "TM = D ⊕ D⊥",
        "d-dperp-orthogonal": "g(D, D⊥) = 0",
        "d-invariance": "φ(D) ⊆ D",
        "dperp-anti-invariance": "φ(D⊥) ⊆ T⊥M",
        "xi-in-d": "ξ ∈ D",
        "nu-invariance": "φ(ν) ⊆ ν",
        "nu-decomposition": "T⊥M = φD⊥ ⊕ ν, φD⊥ ⊥ ν",
        "projection-decomposition": "X = P₁X + P₂X + η(X)ξ",
        "fp1-zero": "FP₁ = 0",
        "tp2-zero": "TP₂ = 0",
        "f-is-fp2": "F = FP₂",
        "t-is-tp1": "T = TP₁",
    }
    for nm in names:
        rep.records.append(tr[nm].build(nm, idents[nm], tol))
    return rep


def check_integrability_D(cr, samples=None, tol=1e-8):
    """Involutivity of the invariant distribution: bracket closure, the
    fundamental-form symmetry criterion, and the bridge identity tying the
    two together."""
    samples = _domain_samples(cr, samples)
    rep = CheckReport(check="integrability-d",
                      census={"samples": samples.count, "pairs":
                              cr.D.rank * (cr.D.rank - 1) // 2})
    t_cl = Tracker()
    t_cr = Tracker()
    t_br = Tracker()
    rD = cr.D.rank

    for s, p in enumerate(samples.points):
        c = cr.context(p)
        ctx = c.ctx
        scale = max(np.abs(c.G).max(), np.abs(ctx.phi.val).max(), 1.0)
        t_jets = [ctx.t_jet(X) for X in cr.D.generators]
        for i in range(rD):
            for j in range(i + 1, rD):
                br = cr.bracket("D", i, j)
                br_amb = c.fp.J @ np.asarray(br.at(p[None])[0])
                lab = f"X=D{i+1} Y=D{j+1}"
                t_cl.add(c.off(br_amb, c.P_D), sample=s, labels=lab,
                         scale=scale)
                hxphiy = ctx.h(c.d_dom[i], t_jets[j])
                hyphix = ctx.h(c.d_dom[j], t_jets[i])
                for k, z in enumerate(c.dp_amb):
                    phz = ctx.f_val(z)
                    t_cr.add(abs(ctx.ginner(hxphiy - hyphix, phz)), sample=s,
                             labels=f"{lab} Z=P{k+1}", scale=scale)
                fbr = ctx.f_val(br_amb)
                t_br.add(ctx.gnorm(fbr - (hxphiy - hyphix)), sample=s,
                         labels=lab, scale=scale)

    rep.records.append(t_cl.build(
        "d-bracket-closure", "[X, Y] ∈ D for X, Y ∈ D", tol))
    rep.records.append(t_cr.build(
        "d-integrability-criterion",
        "g(h(X,φY), φZ) = g(h(Y,φX), φZ)", tol))
    rep.records.append(t_br.build(
        "d-integrability-bridge",
        "F[X,Y] = h(X,φY) - h(Y,φX)", tol))
    return rep


def check_integrability_Dperp(cr, samples=None, tol=1e-8):
    """Involutivity of the anti-invariant distribution: bracket closure,
    the shape-operator criterion, and its bridge through the tangential
    part of the bracket (sign-convention twin reported informationally)."""
    samples = _domain_samples(cr, samples)
    rep = CheckReport(check="integrability-dperp",
                      census={"samples": samples.count, "pairs":
                              cr.Dperp.rank * (cr.Dperp.rank - 1) // 2})
    t_cl = Tracker()
    t_cr = Tracker()
    t_br = Tracker()
    t_br_alt = Tracker()
    rP = cr.Dperp.rank

    for s, p in enumerate(samples.points):
        c = cr.context(p)
        ctx = c.ctx
        scale = max(np.abs(c.G).max(), np.abs(ctx.phi.val).max(), 1.0)
        for i in range(rP):
            for j in range(i + 1, rP):
                br = cr.bracket("Dperp", i, j)
                br_amb = c.fp.J @ np.asarray(br.at(p[None])[0])
                lab = f"X=P{i+1} Y=P{j+1}"
                t_cl.add(c.off(br_amb, c.P_Dp), sample=s, labels=lab,
                         scale=scale)
                ax = ctx.shape_op(c.dp_dom[i], c.phiZ_jets[j])
                ay = ctx.shape_op(c.dp_dom[j], c.phiZ_jets[i])
                x_amb, y_amb = c.dp_amb[i], c.dp_amb[j]
                rhs = (ctx.ginner(y_amb, c.xi) * x_amb
                       - ctx.ginner(x_amb, c.xi) * y_amb)
                t_cr.add(ctx.gnorm(ax - ay - rhs), sample=s, labels=lab,
                         scale=scale)
                tbr = ctx.t_val(br_amb)
                t_br.add(ctx.gnorm(ax - ay + tbr - rhs), sample=s,
                         labels=lab, scale=scale)
                t_br_alt.add(ctx.gnorm(ax - ay - tbr - rhs), sample=s,
                             labels=lab, scale=scale)

    rep.records.append(t_cl.build(
        "dperp-bracket-closure", "[X, Y] ∈ D⊥ for X, Y ∈ D⊥",
        tol))
    rep.records.append(t_cr.build(
        "dperp-integrability-criterion",
        "A_{φY}X - A_{φX}Y = g(Y,ξ)X - g(X,ξ)Y", tol))
    rep.records.append(t_br.build(
        "dperp-integrability-bridge",
        "A_{φY}X - A_{φX}Y = -T[X,Y] + g(Y,ξ)X - g(X,ξ)Y",
        tol))
    rep.records.append(t_br_alt.build(
        "dperp-integrability-bridge-alt-sign",
        "A_{φY}X - A_{φX}Y = T[X,Y] + g(Y,ξ)X - g(X,ξ)Y",
        tol, informational=True, note="opposite sign convention"))
    return rep


def check_dual_shape_identities(cr, samples=None, tol=1e-8):
    """Shape-operator symmetry on the anti-invariant distribution and the
    two transport equivalences between normal-bundle derivatives of the
    F/B/C parts; each equivalence is reported as its two sides."""
    samples = _domain_samples(cr, samples)
    rep = CheckReport(check="dual-shape-identities",
                      census={"samples": samples.count})
    names = ["a-f-symmetric", "a-f-symmetric-dual", "b-shape-symmetric",
             "c-perp-parallel", "f-perp-parallel", "b-perp-parallel"]
    tr = {nm: Tracker() for nm in names}
    m = cr.emb.m
    rP = cr.Dperp.rank
    frame_fields = [VectorField.coordinate(m, j) for j in range(m)]

    for s, p in enumerate(samples.points):
        c = cr.context(p)
        ctx = c.ctx
        scale = max(np.abs(c.G).max(), np.abs(ctx.phi.val).max(), 1.0)
        # A_{FY} Z symmetric in the two anti-invariant slots
        for i in range(rP):
            for j in range(rP):
                if i == j:
                    continue
                lab = f"Y=P{i+1} Z=P{j+1}"
                a1 = ctx.shape_op(c.dp_dom[j], c.phiZ_jets[i])
                a2 = ctx.shape_op(c.dp_dom[i], c.phiZ_jets[j])
                tr["a-f-symmetric"].add(ctx.gnorm(a1 - a2), sample=s,
                                        labels=lab, scale=scale)
                a1 = ctx.shape_op(c.dp_dom[j], c.phiZ_jets[i], star=True)
                a2 = ctx.shape_op(c.dp_dom[i], c.phiZ_jets[j], star=True)
                tr["a-f-symmetric-dual"].add(ctx.gnorm(a1 - a2), sample=s,
                                             labels=lab, scale=scale)
        # A*_U BV = A*_V BU over the normal frame
        bvals = [ctx.b_jet(V) for V in ctx.normal_jets]
        for iu, U in enumerate(ctx.normal_jets):
            for iv, V in enumerate(ctx.normal_jets):
                if iu >= iv:
                    continue
                lab = f"U=N{iu+1} V=N{iv+1}"
                bu = c.fp.tangent_coeffs(bvals[iu].val)
                bv = c.fp.tangent_coeffs(bvals[iv].val)
                a1 = ctx.shape_op(bv, U, star=True)
                a2 = ctx.shape_op(bu, V, star=True)
                tr["b-shape-symmetric"].add(ctx.gnorm(a1 - a2), sample=s,
                                            labels=lab, scale=scale)
        for i in range(m):
            xdom = np.eye(m)[i]
            for kidx, V in enumerate(ctx.normal_jets):
                lab = f"X=u{i+1} V=N{kidx+1}"
                perp_star = ctx.perp(xdom, V, star=True)
                lhs = (ctx.perp(xdom, ctx.c_jet(V))
                       - ctx.normal_part(ctx.phi_val(perp_star)))
                tr["c-perp-parallel"].add(ctx.gnorm(lhs), sample=s,
                                          labels=lab, scale=scale)
                lhs = (ctx.nabla_tan(xdom, ctx.b_jet(V))
                       - ctx.tangential(ctx.phi_val(perp_star)))
                tr["b-perp-parallel"].add(ctx.gnorm(lhs), sample=s,
                                          labels=lab, scale=scale)
            for j, Y in enumerate(frame_fields):
                lab = f"X=u{i+1} Y=u{j+1}"
                nab_star = ctx.nabla_tan(xdom, ctx.push_jet(Y), star=True)
                lhs = (ctx.perp(xdom, ctx.f_jet(Y)) - ctx.f_val(nab_star))
                tr["f-perp-parallel"].add(ctx.gnorm(lhs), sample=s,
                                          labels=lab, scale=scale)

    idents = {
        "a-f-symmetric": "A_{FY}Z = A_{FZ}Y on D⊥",
        "a-f-symmetric-dual": "A*_{FY}Z = A*_{FZ}Y on D⊥",
        "b-shape-symmetric": "A*_U BV = A*_V BU",
        "c-perp-parallel": "∇⊥_X CV = C∇*⊥_X V",
        "f-perp-parallel": "∇⊥_X FY = F∇*_X Y",
        "b-perp-parallel": "∇_X BV = B∇*⊥_X V",
    }
    for nm in names:
        rep.records.append(tr[nm].build(nm, idents[nm], tol))
    return rep


def classify_geodesic(cr, samples=None, tol=1e-8):
    """Geodesicity/umbilicity/foliate classifiers for both fundamental
    forms, with the shape-operator companions of their characterisations."""
    samples = _domain_samples(cr, samples)
    rep = CheckReport(check="geodesic-classifiers",
                      census={"samples": samples.count})
    flag_names = []
    for suffix in ("", "-dual"):
        flag_names += [f"d-geodesic{suffix}", f"dperp-geodesic{suffix}",
                       f"mixed-geodesic{suffix}", f"d-umbilic{suffix}",
                       f"umbilic-implies-geodesic{suffix}",
                       f"foliate-remark{suffix}",
                       f"d-geodesic-shape{suffix}",
                       f"dperp-geodesic-shape{suffix}",
                       f"mixed-geodesic-shape{suffix}"]
    flag_names.append("foliate")
    tr = {nm: Tracker() for nm in flag_names}
    umb_factor = {False: Tracker(), True: Tracker()}
    rD, rP = cr.D.rank, cr.Dperp.rank

    for s, p in enumerate(samples.points):
        c = cr.context(p)
        ctx = c.ctx
        scale = max(np.abs(c.G).max(), np.abs(ctx.phi.val).max(), 1.0)
        d_push = [ctx.push_jet(X) for X in cr.D.generators]
        dp_push = [ctx.push_jet(Z) for Z in cr.Dperp.generators]
        for star in (False, True):
            sfx = "-dual" if star else ""
            h_dd = {}
            for i in range(rD):
                for j in range(rD):
                    h_dd[(i, j)] = ctx.h(c.d_dom[i], d_push[j], star)
                    tr[f"d-geodesic{sfx}"].add(
                        ctx.gnorm(h_dd[(i, j)]), sample=s,
                        labels=f"X=D{i+1} Y=D{j+1}", scale=scale)
            for i in range(rP):
                for j in range(rP):
                    tr[f"dperp-geodesic{sfx}"].add(
                        ctx.gnorm(ctx.h(c.dp_dom[i], dp_push[j], star)),
                        sample=s, labels=f"X=P{i+1} Y=P{j+1}", scale=scale)
            for i in range(rD):
                for j in range(rP):
                    tr[f"mixed-geodesic{sfx}"].add(
                        ctx.gnorm(ctx.h(c.d_dom[i], dp_push[j], star)),
                        sample=s, labels=f"X=D{i+1} Y=P{j+1}", scale=scale)
            # umbilicity: least-squares normal factor over the D-pairs
            gij = np.array([[ctx.ginner(c.d_amb[i], c.d_amb[j])
                             for j in range(rD)] for i in range(rD)])
            hstack = np.stack([[h_dd[(i, j)] for j in range(rD)]
                               for i in range(rD)])
            denom = float((gij ** 2).sum())
            L = np.einsum("ij,ijk->k", gij, hstack) / max(denom, 1e-300)
            fit = hstack - np.einsum("ij,k->ijk", gij, L)
            fit_resid = max(ctx.gnorm(fit[i, j]) for i in range(rD)
                            for j in range(rD))
            tr[f"d-umbilic{sfx}"].add(fit_resid, sample=s, scale=scale)
            umb_factor[star].add(ctx.gnorm(L), sample=s, scale=scale)
            umbilic_ok = fit_resid <= tol * (1.0 + scale)
            tr[f"umbilic-implies-geodesic{sfx}"].add(
                ctx.gnorm(L) if umbilic_ok else 0.0, sample=s, scale=scale)
            # foliate consequence: h(phiX, phiY) = -h(X, Y) on D
            t_jets = [ctx.t_jet(X) for X in cr.D.generators]
            for i in range(rD):
                ti_dom = c.fp.tangent_coeffs(t_jets[i].val)
                for j in range(rD):
                    hpp = ctx.h(ti_dom, t_jets[j], star)
                    tr[f"foliate-remark{sfx}"].add(
                        ctx.gnorm(hpp + h_dd[(i, j)]), sample=s,
                        labels=f"X=D{i+1} Y=D{j+1}", scale=scale)
            # shape-operator companions
            for kidx, V in enumerate(ctx.normal_jets):
                for i in range(rD):
                    av = ctx.shape_op(c.d_dom[i], V, star)
                    tr[f"d-geodesic-shape{sfx}"].add(
                        c.off(av, c.P_Dp), sample=s,
                        labels=f"V=N{kidx+1} X=D{i+1}", scale=scale)
                    tr[f"mixed-geodesic-shape{sfx}"].add(
                        c.off(av, c.P_D), sample=s,
                        labels=f"V=N{kidx+1} X=D{i+1}", scale=scale)
                for i in range(rP):
                    av = ctx.shape_op(c.dp_dom[i], V, star)
                    tr[f"dperp-geodesic-shape{sfx}"].add(
                        c.off(av, c.P_D), sample=s,
                        labels=f"V=N{kidx+1} X=P{i+1}", scale=scale)
                    tr[f"mixed-geodesic-shape{sfx}"].add(
                        c.off(av, c.P_Dp), sample=s,
                        labels=f"V=N{kidx+1} X=P{i+1}", scale=scale)
        for i in range(rD):
            for j in range(i + 1, rD):
                br = cr.bracket("D", i, j)
                br_amb = c.fp.J @ np.asarray(br.at(p[None])[0])
                tr["foliate"].add(c.off(br_amb, c.P_D), sample=s,
                                  labels=f"X=D{i+1} Y=D{j+1}", scale=scale)

    idents = {
        "d-geodesic": "h = 0 on D x D",
        "dperp-geodesic": "h = 0 on D⊥ x D⊥",
        "mixed-geodesic": "h = 0 on D x D⊥",
        "d-umbilic": "h(X,Y) = g(X,Y)L on D x D (fit residual)",
        "umbilic-implies-geodesic": "D-umbilic forces L = 0 (h(ξ,ξ) = 0)",
        "foliate-remark": "h(φX, φY) = -h(X,Y) on D",
        "d-geodesic-shape": "A_V X ∈ D⊥ for X ∈ D",
        "dperp-geodesic-shape": "A_V X ∈ D for X ∈ D⊥",
        "mixed-geodesic-shape":
            "A_V X ∈ D for X ∈ D and A_V X ∈ D⊥ for X ∈ D⊥",
        "foliate": "[X, Y] ∈ D for X, Y ∈ D (D involutive)",
    }
    for nm in flag_names:
        base = nm[:-5] if nm.endswith("-dual") else nm
        ident = idents[base]
        if nm.endswith("-dual"):
            ident = ident.replace("h", "h*").replace("A_V", "A*_V")
        rep.records.append(tr[nm].build(nm, ident, tol))
    rep.records.append(umb_factor[False].build(
        "d-umbilic-factor", "|L| recovered by least squares", tol,
        informational=True))
    rep.records.append(umb_factor[True].build(
        "d-umbilic-factor-dual", "|L| recovered by least squares (dual)", tol,
        informational=True))
    return rep


def check_mixed_geodesic_consequences(cr, samples=None, tol=1e-8):
    """Shape/normal-connection transfers that hold on mixed-geodesic
    submanifolds; when the precondition fails the records are emitted as
    informational with the precondition status attached."""
    samples = _domain_samples(cr, samples)
    geo = classify_geodesic(cr, samples, tol)
    mixed_ok = {False: geo.record("mixed-geodesic").passed,
                True: geo.record("mixed-geodesic-dual").passed}
    foliate_ok = geo.record("foliate").passed
    rep = CheckReport(check="mixed-geodesic-consequences",
                      census={"samples": samples.count,
                              "mixed-geodesic": bool(mixed_ok[False]),
                              "mixed-geodesic-dual": bool(mixed_ok[True]),
                              "foliate": bool(foliate_ok)})
    names = ["shape-transfer", "shape-transfer-dual", "perp-transfer",
             "perp-transfer-dual", "foliate-anticommute",
             "foliate-anticommute-dual"]
    tr = {nm: Tracker() for nm in names}
    rD = cr.D.rank

    for s, p in enumerate(samples.points):
        c = cr.context(p)
        ctx = c.ctx
        scale = max(np.abs(c.G).max(), np.abs(ctx.phi.val).max(), 1.0)
        t_jets = [ctx.t_jet(X) for X in cr.D.generators]
        for i in range(rD):
            xdom = c.d_dom[i]
            phix_dom = c.fp.tangent_coeffs(t_jets[i].val)
            for kidx, V in enumerate(ctx.normal_jets):
                lab = f"X=D{i+1} V=N{kidx+1}"
                cv = ctx.c_jet(V)
                a_cv = ctx.shape_op(xdom, cv)
                a_star = ctx.shape_op(xdom, V, star=True)
                tr["shape-transfer"].add(
                    ctx.gnorm(a_cv - ctx.tangential(ctx.phi_val(a_star))),
                    sample=s, labels=lab, scale=scale)
                a_cv_d = ctx.shape_op(xdom, cv, star=True)
                a_plain = ctx.shape_op(xdom, V)
                tr["shape-transfer-dual"].add(
                    ctx.gnorm(a_cv_d - ctx.tangential(ctx.phi_val(a_plain))),
                    sample=s, labels=lab, scale=scale)
                lhs = (ctx.perp(xdom, cv)
                       - ctx.phi_val(ctx.perp(xdom, V, star=True)))
                tr["perp-transfer"].add(ctx.gnorm(lhs), sample=s, labels=lab,
                                        scale=scale)
                lhs = (ctx.perp(xdom, cv, star=True)
                       - ctx.phi_val(ctx.perp(xdom, V)))
                tr["perp-transfer-dual"].add(ctx.gnorm(lhs), sample=s,
                                             labels=lab, scale=scale)
                a_phix_star = ctx.shape_op(phix_dom, V, star=True)
                lhs = a_phix_star + ctx.tangential(ctx.phi_val(a_star))
                tr["foliate-anticommute"].add(ctx.gnorm(lhs), sample=s,
                                              labels=lab, scale=scale)
                a_phix = ctx.shape_op(phix_dom, V)
                lhs = a_phix + ctx.tangential(ctx.phi_val(a_plain))
                tr["foliate-anticommute-dual"].add(ctx.gnorm(lhs), sample=s,
                                                   labels=lab, scale=scale)

    conds = {
        "shape-transfer": mixed_ok[False] and mixed_ok[True],
        "shape-transfer-dual": mixed_ok[False] and mixed_ok[True],
        "perp-transfer": mixed_ok[False] and mixed_ok[True],
        "perp-transfer-dual": mixed_ok[False] and mixed_ok[True],
        "foliate-anticommute": foliate_ok and mixed_ok[False] and mixed_ok[True],
        "foliate-anticommute-dual": foliate_ok and mixed_ok[False] and mixed_ok[True],
    }
    idents = {
        "shape-transfer": "A_{(φV)⊥}X = φA*_V X on D",
        "shape-transfer-dual": "A*_{(φV)⊥}X = φA_V X on D",
        "perp-transfer": "∇⊥_X (φV)⊥ = φ∇*⊥_X V on D",
        "perp-transfer-dual": "∇*⊥_X (φV)⊥ = φ∇⊥_X V on D",
        "foliate-anticommute": "A*_V φX + φA*_V X = 0 on D",
        "foliate-anticommute-dual": "A_V φX + φA_V X = 0 on D",
    }
    for nm in names:
        ok = conds[nm]
        rep.records.append(tr[nm].build(
            nm, idents[nm], tol, informational=not ok,
            note="" if ok else "precondition failed; reported for information"))
    return rep


def check_cr_product(cr, samples=None, tol=1e-8):
    """The CR-product criterion and its supporting identities: the shape
    pairing with the anti-invariant image, the leaf-geodesy surrogates for
    both distributions and both connections, the normal-derivative
    antisymmetry inside the image of the anti-invariant distribution, and
    the shape antisymmetry against the invariant normal complement.
    Sign-convention twins are reported informationally."""
    samples = _domain_samples(cr, samples)
    rep = CheckReport(check="cr-product", census={"samples": samples.count})
    names = ["product-criterion", "product-criterion-alt-sign",
             "leaf-pairing", "leaf-pairing-alt-sign",
             "shape-transport-pairing", "shape-transport-pairing-alt-sign",
             "phidperp-perp-antisymmetry", "nu-shape-antisymmetry",
             "dperp-leaf", "dperp-leaf-dual", "d-leaf", "d-leaf-dual"]
    tr = {nm: Tracker() for nm in names}
    m = cr.emb.m
    rD, rP = cr.D.rank, cr.Dperp.rank

    for s, p in enumerate(samples.points):
        c = cr.context(p)
        ctx = c.ctx
        scale = max(np.abs(c.G).max(), np.abs(ctx.phi.val).max(), 1.0)
        # X ranges over the D generators plus the Reeb field explicitly
        xs = [(f"D{i+1}", c.d_dom[i], c.d_amb[i]) for i in range(rD)]
        xs.append(("ξ", c.xi_dom, c.xi))
        d_pushes = [ctx.push_jet(Z) for Z in cr.Dperp.generators]
        for j in range(rP):
            u_amb = c.dp_amb[j]
            for xlab, xdom, xamb in xs:
                lab = f"X={xlab} U=P{j+1}"
                a = ctx.shape_op(xdom, c.phiZ_jets[j])
                eta_x = ctx.eta_of(xamb)
                tr["product-criterion"].add(ctx.gnorm(a + eta_x * u_amb),
                                            sample=s, labels=lab, scale=scale)
                tr["product-criterion-alt-sign"].add(
                    ctx.gnorm(a - eta_x * u_amb), sample=s, labels=lab,
                    scale=scale)
        # leaf pairing: g(h*(X,U), phi Z) = -eta(X) g(phi Z, phi U)
        for xlab, xdom, xamb in xs:
            eta_x = ctx.eta_of(xamb)
            for ju in range(rP):
                hstar = ctx.h(xdom, d_pushes[ju], star=True)
                for jz in range(rP):
                    phz = c.phiZ_jets[jz].val
                    phu = c.phiZ_jets[ju].val
                    lab = f"X={xlab} U=P{ju+1} Z=P{jz+1}"
                    lhs = ctx.ginner(hstar, phz)
                    rhs = eta_x * ctx.ginner(phz, phu)
                    tr["leaf-pairing"].add(abs(lhs + rhs), sample=s,
                                           labels=lab, scale=scale)
                    tr["leaf-pairing-alt-sign"].add(abs(lhs - rhs), sample=s,
                                                    labels=lab, scale=scale)
        # shape/transport pairing over the full tangent frame
        for iu in range(m):
            udom = np.eye(m)[iu]
            uamb = c.fp.J[:, iu]
            for jz in range(rP):
                a = ctx.shape_op(udom, c.phiZ_jets[jz])
                nst = ctx.nabla_tan(udom, d_pushes[jz], star=True)
                z_amb = c.dp_amb[jz]
                for xlab, xdom, xamb in xs:
                    lab = f"U=u{iu+1} Z=P{jz+1} X={xlab}"
                    lhs = ctx.ginner(a, xamb)
                    mid = ctx.ginner(nst, ctx.phi_val(xamb))
                    gzu = ctx.ginner(z_amb, uamb)
                    eta_x = ctx.eta_of(xamb)
                    tr["shape-transport-pairing"].add(
                        abs(lhs - mid + eta_x * gzu), sample=s, labels=lab,
                        scale=scale)
                    tr["shape-transport-pairing-alt-sign"].add(
                        abs(lhs - mid - eta_x * gzu), sample=s, labels=lab,
                        scale=scale)
        # normal-derivative antisymmetry stays inside phi(Dperp)
        for i in range(rP):
            for j in range(i + 1, rP):
                lhs = (ctx.perp(c.dp_dom[i], c.phiZ_jets[j])
                       - ctx.perp(c.dp_dom[j], c.phiZ_jets[i]))
                tr["phidperp-perp-antisymmetry"].add(
                    ctx.gnorm(c.P_nu @ lhs), sample=s,
                    labels=f"Z=P{i+1} W=P{j+1}", scale=scale)
        # shape antisymmetry against the invariant normal complement
        t_jets = [ctx.t_jet(X) for X in cr.D.generators]
        for i in range(rD):
            phix_dom = c.fp.tangent_coeffs(t_jets[i].val)
            for k, lam in enumerate(c.nu_jets):
                philam = jmatvec(ctx.phi, lam)
                a1 = ctx.shape_op(phix_dom, lam, star=True)
                a2 = ctx.shape_op(c.d_dom[i], philam)
                tr["nu-shape-antisymmetry"].add(
                    ctx.gnorm(a1 + a2), sample=s,
                    labels=f"Y=D{i+1} λ=ν{k+1}", scale=scale)
        # leaf surrogates
        for star, d_nm, p_nm in ((False, "d-leaf", "dperp-leaf"),
                                 (True, "d-leaf-dual", "dperp-leaf-dual")):
            for i in range(rP):
                for j in range(rP):
                    nzw = ctx.nabla_tan(c.dp_dom[i], d_pushes[j], star)
                    tr[p_nm].add(c.off(nzw, c.P_Dp), sample=s,
                                 labels=f"Z=P{i+1} W=P{j+1}", scale=scale)
            d_push = [ctx.push_jet(X) for X in cr.D.generators]
            for i in range(rD):
                for j in range(rD):
                    nxy = ctx.nabla_tan(c.d_dom[i], d_push[j], star)
                    tr[d_nm].add(c.off(nxy, c.P_D), sample=s,
                                 labels=f"X=D{i+1} Y=D{j+1}", scale=scale)

    idents = {
        "product-criterion": "A_{φU}X = -η(X)U",
        "product-criterion-alt-sign": "A_{φU}X = η(X)U",
        "leaf-pairing":
            "g(h*(X,U), φZ) = -η(X) g(φZ, φU)",
        "leaf-pairing-alt-sign":
            "g(h*(X,U), φZ) = η(X) g(φZ, φU)",
        "shape-transport-pairing":
            "g(A_{φZ}U, X) = g(∇*_U Z, φX) - η(X) g(Z,U)",
        "shape-transport-pairing-alt-sign":
            "g(A_{φZ}U, X) = g(∇*_U Z, φX) + η(X) g(Z,U)",
        "phidperp-perp-antisymmetry":
            "∇⊥_Z φW - ∇⊥_W φZ ∈ φD⊥",
        "nu-shape-antisymmetry": "A*_λ φY = -A_{φλ}Y",
        "dperp-leaf": "∇_Z W ∈ D⊥ for Z, W ∈ D⊥",
        "dperp-leaf-dual": "∇*_Z W ∈ D⊥ for Z, W ∈ D⊥",
        "d-leaf": "∇_X Y ∈ D for X, Y ∈ D",
        "d-leaf-dual": "∇*_X Y ∈ D for X, Y ∈ D",
    }
    for nm in names:
        info = nm.endswith("alt-sign")
        rep.records.append(tr[nm].build(
            nm, idents[nm], tol, informational=info,
            note="opposite sign convention" if info else ""))
    return rep
