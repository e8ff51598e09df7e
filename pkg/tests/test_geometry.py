import numpy as np
import pytest

from contactstat.exprlang import Const, parse
from contactstat.geometry import (
    ConnField, MetricField, OneFormField, SingularMetricError, StatTriple,
    VectorField, check_statistical, covariant_derivative,
    covariant_derivative_at, dual_connection, levi_civita, lie_bracket,
    metric_samples,
)
from contactstat.sampling import Samples, sample_box


def koszul_fd(g, pts, h=1e-6):
    """Independent Christoffel oracle: finite differences of the metric."""
    pts = np.asarray(pts, dtype=float)
    n, d = pts.shape
    dg = np.empty((n, d, d, d))
    for k in range(d):
        hi = pts.copy()
        lo = pts.copy()
        hi[:, k] += h
        lo[:, k] -= h
        dg[:, k] = (g.at(hi) - g.at(lo)) / (2 * h)
    ginv = np.linalg.inv(g.at(pts))
    lower = 0.5 * (np.transpose(dg, (0, 1, 2, 3))
                   + np.transpose(dg, (0, 2, 1, 3))
                   - np.transpose(dg, (0, 2, 3, 1)))
    return np.einsum("nkl,nijl->nkij", ginv, lower)


def e7_structure():
    """Flat 7-chart with the eta (x) eta (x) xi difference tensor; the
    ambient structure of the built-in 7-dimensional fixtures."""
    g = MetricField.euclidean(7)
    zero = Const(0.0)
    one = Const(1.0)
    xi = VectorField([zero] * 6 + [one], 7)
    eta = OneFormField([zero] * 6 + [one], 7)
    coeffs = [[[eta.comps[i] * eta.comps[j] * xi.comps[k] for j in range(7)]
               for i in range(7)] for k in range(7)]
    nabla = ConnField.flat(7) + ConnField(7, coeffs=coeffs, torsion_free=True)
    return g, nabla, xi, eta


class TestLeviCivita:
    def test_euclidean_is_flat(self):
        conn = levi_civita(MetricField.euclidean(7))
        assert conn.is_symbolic
        pts = sample_box(7, count=8).points
        assert np.abs(conn.gamma_at(pts)).max() == 0.0

    def test_surface_of_revolution_chart(self):
        # g = diag(1, x1^2) on (0, inf) x R; the nonzero symbols are
        # gamma^2_12 = gamma^2_21 = 1/x1 and gamma^1_22 = -x1
        g = MetricField(2, {(0, 0): "1", (1, 1): "x1^2"})
        conn = levi_civita(g)
        assert not conn.is_symbolic
        pts = sample_box(2, count=16, box=(0.5, 2.0)).points
        gam = conn.gamma_at(pts)
        # oracle first: the finite-difference Koszul values
        assert np.abs(gam - koszul_fd(g, pts)).max() < 1e-8
        x1 = pts[:, 0]
        expect = np.zeros_like(gam)
        expect[:, 1, 0, 1] = 1.0 / x1
        expect[:, 1, 1, 0] = 1.0 / x1
        expect[:, 0, 1, 1] = -x1
        assert np.abs(gam - expect).max() < 1e-12

    def test_rescaling_leaves_symbols_unchanged(self):
        g1 = MetricField(2, {(0, 0): "1", (1, 1): "x1^2"})
        g2 = MetricField(2, {(0, 0): "3", (1, 1): "3*x1^2"})
        pts = sample_box(2, count=10, box=(0.5, 2.0)).points
        assert np.abs(levi_civita(g1).gamma_at(pts)
                      - levi_civita(g2).gamma_at(pts)).max() < 1e-12

    def test_metric_compatibility(self):
        g = MetricField(3, {(0, 0): "1 + x2^2/4", (0, 2): "-x2/4",
                            (1, 1): "1/4", (2, 2): "1/4"})
        conn = levi_civita(g)
        pts = sample_box(3, count=32).points
        gam = conn.gamma_at(pts)
        gv = g.at(pts)
        dgv = g.deriv_at(pts)
        compat = (dgv
                  - np.einsum("nlki,nlj->nkij", gam, gv)
                  - np.einsum("nlkj,nil->nkij", gam, gv))
        assert np.abs(compat).max() < 1e-8

    def test_singular_metric_reports_point(self):
        g = MetricField(2, {(0, 0): "x1", (1, 1): "x1"})
        conn = levi_civita(g)
        with pytest.raises(SingularMetricError):
            conn.gamma_at(np.array([[0.0, 0.3]]))


class TestDualConnection:
    def test_flat_euclidean_fixed_point(self):
        g = MetricField.euclidean(3)
        flat = ConnField.flat(3)
        dual = dual_connection(flat, g)
        assert dual.is_symbolic
        for k in range(3):
            for i in range(3):
                for j in range(3):
                    assert dual.coeff(k, i, j) == Const(0.0)

    def test_dual_of_k_shift_flips_k(self):
        g, nabla, xi, eta = e7_structure()
        dual = dual_connection(nabla, g)
        lc = levi_civita(g)
        expect = lc.combine(nabla.combine(lc, 1.0, -1.0), 1.0, -1.0)
        pts = sample_box(7, count=8).points
        assert np.abs(dual.gamma_at(pts) - expect.gamma_at(pts)).max() == 0.0

    def test_involution_structural(self):
        g, nabla, _, _ = e7_structure()
        dd = dual_connection(dual_connection(nabla, g), g)
        for k in range(7):
            for i in range(7):
                for j in range(7):
                    assert dd.coeff(k, i, j) == nabla.coeff(k, i, j)

    def test_duality_identity_brute_force(self):
        # both sides of the pairing evaluated independently over the frame
        g, nabla, _, _ = e7_structure()
        dual = dual_connection(nabla, g)
        pts = sample_box(7, count=64).points
        gv = g.at(pts)
        dgv = g.deriv_at(pts)
        gam = nabla.gamma_at(pts)
        gams = dual.gamma_at(pts)
        lhs = dgv
        rhs = (np.einsum("nlij,nlk->nijk", gam, gv)
               + np.einsum("nlik,njl->nijk", gams, gv))
        assert np.abs(lhs - rhs).max() < 1e-9


class TestCovariantDerivative:
    def test_flat_constant_fields(self):
        flat = ConnField.flat(2)
        X = VectorField.coordinate(2, 0)
        Y = VectorField.coordinate(2, 1)
        out = covariant_derivative(flat, X, Y)
        assert all(c == Const(0.0) for c in out.comps)

    def test_flat_directional_derivative(self):
        flat = ConnField.flat(2)
        X = VectorField.coordinate(2, 0)
        Y = VectorField(["0", "x1"], 2)
        out = covariant_derivative(flat, X, Y)
        assert out.comps[0] == Const(0.0)
        assert out.comps[1] == Const(1.0)

    def test_k_shift_on_xi(self):
        # with the eta (x) eta (x) xi correction, nabla_xi xi = xi
        g, nabla, xi, _ = e7_structure()
        out = covariant_derivative(nabla, xi, xi)
        pts = sample_box(7, count=4).points
        vals = np.stack([c.eval_many(pts) for c in out.comps], axis=1)
        assert np.abs(vals - xi.at(pts)).max() < 1e-15

    def test_numeric_backend_agrees_with_symbolic(self):
        g = MetricField(2, {(0, 0): "1", (1, 1): "x1^2"})
        conn = levi_civita(g)
        X = VectorField(["x2", "x1"], 2)
        Y = VectorField(["x1*x2", "1"], 2)
        pts = sample_box(2, count=8, box=(0.5, 2.0)).points
        got = covariant_derivative_at(conn, X, Y, pts)
        gam = koszul_fd(g, pts)
        xv, yv = X.at(pts), Y.at(pts)
        dy = Y.jac_at(pts)
        expect = (np.einsum("ni,nki->nk", xv, dy)
                  + np.einsum("ni,nj,nkij->nk", xv, yv, gam))
        assert np.abs(got - expect).max() < 1e-7


class TestLieBracket:
    def test_coordinate_fields_commute(self):
        X = VectorField.coordinate(3, 0)
        Y = VectorField.coordinate(3, 2)
        out = lie_bracket(X, Y)
        assert all(c == Const(0.0) for c in out.comps)

    def test_textbook_pair(self):
        # [x2 d1, d2] = -d1, by direct formula evaluation
        X = VectorField(["x2", "0"], 2)
        Y = VectorField.coordinate(2, 1)
        out = lie_bracket(X, Y)
        pts = sample_box(2, count=16).points
        vals = np.stack([c.eval_many(pts) for c in out.comps], axis=1)
        expect = np.zeros_like(vals)
        expect[:, 0] = -1.0
        assert np.abs(vals - expect).max() == 0.0

    def test_jacobi_identity_spot_check(self):
        X = VectorField(["x2*x3", "0", "x1"], 3)
        Y = VectorField(["0", "x1*x1", "x2"], 3)
        Z = VectorField(["x3", "x1", "0"], 3)
        total = None
        for A, B, C in ((X, Y, Z), (Y, Z, X), (Z, X, Y)):
            term = lie_bracket(A, lie_bracket(B, C))
            total = term if total is None else VectorField(
                [a + b for a, b in zip(total.comps, term.comps)], 3)
        pts = sample_box(3, count=16).points
        vals = np.stack([c.eval_many(pts) for c in total.comps], axis=1)
        assert np.abs(vals).max() < 1e-12


class TestCheckStatistical:
    def test_e7_structure_passes(self):
        g, nabla, xi, eta = e7_structure()
        st = StatTriple(g, nabla)
        rep = check_statistical(st, metric_samples(g))
        assert rep.passed
        for rec in rep.records:
            assert rec.residual < 1e-9, rec.name

    def test_e7_codazzi_hand_value(self):
        # (nabla_X g)(Y,Z) = -2 eta(X) eta(Y) eta(Z): the expansion at the
        # frame gives exactly -2 on the (z,z,z) slot and 0 elsewhere
        g, nabla, xi, eta = e7_structure()
        pts = sample_box(7, count=8).points
        gv, dgv = g.at(pts), g.deriv_at(pts)
        gam = nabla.gamma_at(pts)
        nabla_g = (dgv
                   - np.einsum("nlij,nlk->nijk", gam, gv)
                   - np.einsum("nlik,njl->nijk", gam, gv))
        ev = eta.at(pts)
        expect = -2.0 * np.einsum("ni,nj,nk->nijk", ev, ev, ev)
        assert np.abs(nabla_g - expect).max() < 1e-15

    def test_k_zero_trivially_statistical(self):
        g = MetricField.euclidean(3)
        st = StatTriple(g, ConnField.flat(3))
        rep = check_statistical(st)
        assert rep.passed
        assert all(r.residual == 0.0 for r in rep.records)

    def test_broken_k_symmetry_is_reported(self):
        # K(X,Y) = g(X,e1) g(Y,e2) xi is not symmetric in X,Y
        g = MetricField.euclidean(3)
        zero = Const(0.0)
        coeffs = [[[Const(1.0) if (k == 2 and i == 0 and j == 1) else zero
                    for j in range(3)] for i in range(3)] for k in range(3)]
        nabla = ConnField(3, coeffs=coeffs)
        st = StatTriple(g, nabla)
        rep = check_statistical(st)
        assert not rep.passed
        rec = rep.record("difference-tensor-symmetry")
        assert rec.status == "FAIL"
        assert rec.residual == pytest.approx(1.0)

    def test_lambda_scaling_statistical_family(self):
        g, _, xi, eta = e7_structure()
        for lam in (-2.0, -0.5, 0.0, 1.0, 2.0):
            coeffs = [[[Const(lam) * eta.comps[i] * eta.comps[j] * xi.comps[k]
                        for j in range(7)] for i in range(7)] for k in range(7)]
            nabla = ConnField.flat(7) + ConnField(7, coeffs=coeffs)
            rep = check_statistical(StatTriple(g, nabla))
            assert rep.passed, lam

    def test_report_is_deterministic(self):
        g, nabla, _, _ = e7_structure()
        st = StatTriple(g, nabla)
        a = check_statistical(st).to_dict()
        b = check_statistical(st).to_dict()
        assert a == b
