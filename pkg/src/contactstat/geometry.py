"""Chart-level Riemannian and affine-connection machinery.

Metrics, vector fields and connections are grids of expressions over one
chart.  Connections are stored Christoffel-style: gamma[k][i][j] with k the
output component, i the differentiation direction and j the argument slot.
Connections derived from a non-constant metric fall back to a pointwise
numeric evaluator (same Koszul formula, numeric inverse); constant metrics
keep everything symbolic.
"""

import numpy as np

from .exprlang import Const, Expr, parse
from .report import CheckReport, Tracker
from .sampling import Samples, sample_box

__all__ = [
    "GeometryError", "SingularMetricError",
    "MetricField", "VectorField", "OneFormField", "ConnField", "StatTriple",
    "levi_civita", "dual_connection", "covariant_derivative",
    "covariant_derivative_at", "lie_bracket", "check_statistical",
    "metric_samples",
]

DET_FLOOR = 1e-12


class GeometryError(Exception):
    pass


class SingularMetricError(GeometryError):
    def __init__(self, point):
        super().__init__(f"metric is singular near point {np.asarray(point).tolist()}")
        self.point = np.asarray(point)


def _coerce_expr(e, dim):
    if isinstance(e, Expr):
        expr = e
    elif isinstance(e, str):
        expr = parse(e, dim)
    elif isinstance(e, (int, float)):
        expr = Const(e)
    else:
        raise GeometryError(f"cannot interpret {e!r} as an expression")
    if expr.max_var >= dim:
        raise GeometryError(
            f"expression {expr} uses x{expr.max_var + 1} beyond dimension {dim}")
    return expr


_GRID_CACHE = {}


def _eval_grid(grid, points):
    """Evaluate a nested tuple-of-Expr grid at an (N, dim) batch; the sample
    axis comes first in the result.  Constant grids are evaluated once and
    broadcast (read-only view)."""
    pts = np.asarray(points, dtype=float)
    key = id(grid)
    cached = _GRID_CACHE.get(key)
    if cached is not None and cached[0] is grid:
        vals = cached[1]
        return np.broadcast_to(vals, (pts.shape[0],) + vals.shape)

    flat = []

    def walk(node):
        if isinstance(node, Expr):
            flat.append(node)
            return ()
        sub = ()
        for child in node:
            sub = walk(child)
        return (len(node),) + sub

    shape = walk(grid)
    if all(e.max_var < 0 for e in flat):
        dummy = (0.0,)
        vals = np.array([e.eval(dummy) for e in flat]).reshape(shape)
        if isinstance(grid, tuple):
            _GRID_CACHE[key] = (grid, vals)
        return np.broadcast_to(vals, (pts.shape[0],) + vals.shape)
    vals = np.stack([e.eval_many(pts) for e in flat], axis=-1)
    return vals.reshape((pts.shape[0],) + shape)


class MetricField:
    """Symmetric positive-definite metric as expressions g_ij."""

    def __init__(self, dim, upper):
        """`upper` maps (i, j) with 0 <= i <= j < dim to an entry; missing
        entries are zero.  Symmetry holds by construction."""
        self.dim = dim
        grid = [[Const(0.0)] * dim for _ in range(dim)]
        for (i, j), e in upper.items():
            if not (0 <= i <= j < dim):
                raise GeometryError(f"metric entry ({i},{j}) outside upper triangle")
            expr = _coerce_expr(e, dim)
            grid[i][j] = expr
            grid[j][i] = expr
        self.entries = tuple(tuple(row) for row in grid)
        self._deriv = None

    @classmethod
    def from_matrix(cls, rows):
        dim = len(rows)
        upper = {}
        for i in range(dim):
            for j in range(i, dim):
                upper[(i, j)] = rows[i][j]
        return cls(dim, upper)

    @classmethod
    def euclidean(cls, dim):
        return cls(dim, {(i, i): Const(1.0) for i in range(dim)})

    @classmethod
    def constant(cls, matrix):
        mat = np.asarray(matrix, dtype=float)
        return cls.from_matrix([[Const(v) for v in row] for row in mat])

    @property
    def is_constant(self):
        return all(e.max_var < 0 for row in self.entries for e in row)

    def entry(self, i, j):
        return self.entries[i][j]

    def at(self, points):
        return _eval_grid(self.entries, points)

    def deriv_at(self, points):
        """d[n, k, i, j] = partial_k g_ij."""
        if self._deriv is None:
            self._deriv = tuple(
                tuple(tuple(self.entries[i][j].diff(k) for j in range(self.dim))
                      for i in range(self.dim))
                for k in range(self.dim))
        return _eval_grid(self._deriv, points)

    def inverse_at(self, points):
        g = self.at(points)
        det = np.linalg.det(g)
        bad = np.abs(det) < DET_FLOOR
        if bad.any():
            raise SingularMetricError(np.asarray(points)[bad][0])
        return np.linalg.inv(g)

    def min_eigenvalue_at(self, points):
        return np.linalg.eigvalsh(self.at(points))[:, 0]

    def substitute(self, gamma):
        """Pull the entries back through a coordinate map (composition)."""
        dim = len(gamma)
        out = {}
        for i in range(self.dim):
            for j in range(i, self.dim):
                out[(i, j)] = self.entries[i][j].substitute(gamma)
        m = MetricField.__new__(MetricField)
        m.dim = self.dim
        grid = [[Const(0.0)] * self.dim for _ in range(self.dim)]
        for (i, j), e in out.items():
            grid[i][j] = e
            grid[j][i] = e
        m.entries = tuple(tuple(row) for row in grid)
        m._deriv = None
        return m


class VectorField:
    def __init__(self, comps, dim=None):
        comps = list(comps)
        dim = dim or len(comps)
        self.dim = dim
        self.comps = tuple(_coerce_expr(c, dim) for c in comps)
        if len(self.comps) != dim:
            raise GeometryError("component count must equal the chart dimension")
        self._jac = None

    @classmethod
    def coordinate(cls, dim, index):
        return cls([Const(1.0 if k == index else 0.0) for k in range(dim)], dim)

    def at(self, points):
        return _eval_grid(self.comps, points)

    def jac_at(self, points):
        """j[n, k, i] = partial_i X^k."""
        if self._jac is None:
            self._jac = tuple(
                tuple(self.comps[k].diff(i) for i in range(self.dim))
                for k in range(self.dim))
        return _eval_grid(self._jac, points)


class OneFormField:
    def __init__(self, comps, dim=None):
        comps = list(comps)
        dim = dim or len(comps)
        self.dim = dim
        self.comps = tuple(_coerce_expr(c, dim) for c in comps)
        self._jac = None

    def at(self, points):
        return _eval_grid(self.comps, points)

    def jac_at(self, points):
        """j[n, a, i] = partial_i eta_a."""
        if self._jac is None:
            self._jac = tuple(
                tuple(self.comps[a].diff(i) for i in range(self.dim))
                for a in range(self.dim))
        return _eval_grid(self._jac, points)


class ConnField:
    """Affine connection; symbolic coefficient grid or pointwise evaluator."""

    def __init__(self, dim, coeffs=None, fn=None, torsion_free=False):
        if (coeffs is None) == (fn is None):
            raise GeometryError("exactly one of coeffs / fn must be given")
        self.dim = dim
        self.torsion_free = torsion_free
        if coeffs is not None:
            self.coeffs = tuple(
                tuple(tuple(_coerce_expr(coeffs[k][i][j], dim)
                            for j in range(dim))
                      for i in range(dim))
                for k in range(dim))
            self.fn = None
        else:
            self.coeffs = None
            self.fn = fn

    @classmethod
    def flat(cls, dim):
        zero = Const(0.0)
        grid = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
        return cls(dim, coeffs=grid, torsion_free=True)

    @property
    def is_symbolic(self):
        return self.coeffs is not None

    def coeff(self, k, i, j):
        if not self.is_symbolic:
            raise GeometryError("connection is numeric-backed; no symbolic coefficients")
        return self.coeffs[k][i][j]

    def gamma_at(self, points):
        """gamma[n, k, i, j] at each sample."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if self.is_symbolic:
            return _eval_grid(self.coeffs, pts)
        return self.fn(pts)

    def combine(self, other, a, b):
        """a*self + b*other, staying symbolic when both sides are."""
        if self.dim != other.dim:
            raise GeometryError("dimension mismatch")
        tf = self.torsion_free and other.torsion_free
        if self.is_symbolic and other.is_symbolic:
            d = self.dim
            grid = [[[Const(a) * self.coeffs[k][i][j] + Const(b) * other.coeffs[k][i][j]
                      for j in range(d)] for i in range(d)] for k in range(d)]
            return ConnField(d, coeffs=grid, torsion_free=tf)
        fn = lambda pts: a * self.gamma_at(pts) + b * other.gamma_at(pts)
        return ConnField(self.dim, fn=fn, torsion_free=tf)

    def __add__(self, other):
        return self.combine(other, 1.0, 1.0)

    def __sub__(self, other):
        return self.combine(other, 1.0, -1.0)


def levi_civita(g):
    """Christoffel symbols of the metric:
    gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij).

    For a constant metric all derivatives vanish, so the result is the
    symbolic zero connection.  Otherwise the same formula runs pointwise
    with a numeric inverse (determinant floor 1e-12)."""
    d = g.dim
    if g.is_constant:
        g.inverse_at(np.zeros((1, d)))  # invertibility, reported early
        return ConnField.flat(d)

    def fn(pts):
        ginv = g.inverse_at(pts)
        dg = g.deriv_at(pts)                      # [n, k, i, j] = d_k g_ij
        d_i_gjl = np.transpose(dg, (0, 1, 2, 3))  # indexed [n, i, j, l]
        d_j_gil = np.transpose(dg, (0, 2, 1, 3))
        d_l_gij = np.transpose(dg, (0, 2, 3, 1))
        lower = 0.5 * (d_i_gjl + d_j_gil - d_l_gij)
        return np.einsum("nkl,nijl->nkij", ginv, lower)

    return ConnField(d, fn=fn, torsion_free=True)


def dual_connection(nabla, g):
    """The metric-dual connection 2*levi_civita(g) - nabla, which satisfies
    X g(Y,Z) = g(nabla_X Y, Z) + g(Y, dual_X Z) on samples."""
    return levi_civita(g).combine(nabla, 2.0, -1.0)


def covariant_derivative(conn, X, Y):
    """(nabla_X Y)^k = X^i d_i Y^k + X^i Y^j gamma^k_ij, as expressions.

    Requires a symbolic connection; use covariant_derivative_at for
    numeric-backed ones."""
    d = conn.dim
    comps = []
    for k in range(d):
        acc = Const(0.0)
        for i in range(d):
            acc = acc + X.comps[i] * Y.comps[k].diff(i)
            for j in range(d):
                acc = acc + X.comps[i] * Y.comps[j] * conn.coeff(k, i, j)
        comps.append(acc)
    return VectorField(comps, d)


def covariant_derivative_at(conn, X, Y, points):
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    gam = conn.gamma_at(pts)
    xv = X.at(pts)
    yv = Y.at(pts)
    dy = Y.jac_at(pts)  # [n, k, i]
    return np.einsum("ni,nki->nk", xv, dy) + np.einsum("ni,nj,nkij->nk", xv, yv, gam)


def lie_bracket(X, Y):
    """[X, Y]^k = X^i d_i Y^k - Y^i d_i X^k."""
    d = X.dim
    comps = []
    for k in range(d):
        acc = Const(0.0)
        for i in range(d):
            acc = acc + X.comps[i] * Y.comps[k].diff(i)
            acc = acc - Y.comps[i] * X.comps[k].diff(i)
        comps.append(acc)
    return VectorField(comps, d)


class StatTriple:
    """Metric, a torsion-free connection, its metric dual, and the
    difference tensor K = nabla - levi_civita, all over one chart."""

    def __init__(self, g, nabla):
        if g.dim != nabla.dim:
            raise GeometryError("dimension mismatch between metric and connection")
        self.g = g
        self.nabla = nabla
        self.lc = levi_civita(g)
        self.nabla_star = self.lc.combine(nabla, 2.0, -1.0)

    @property
    def dim(self):
        return self.g.dim

    def k_at(self, points):
        """K^k_ij = gamma^k_ij - hat-gamma^k_ij."""
        return self.nabla.gamma_at(points) - self.lc.gamma_at(points)

    def k_apply(self, points, xv, yv):
        """K(X, Y) for component batches xv, yv of shape (n, dim)."""
        return np.einsum("nkij,ni,nj->nk", self.k_at(points), xv, yv)


def metric_samples(g, count=None, seed=None, box=None):
    """Seeded samples on which the metric is positive definite; failures are
    resampled at most ten times, then reported."""
    kwargs = {}
    if count is not None:
        kwargs["count"] = count
    if seed is not None:
        kwargs["seed"] = seed
    if box is not None:
        kwargs["box"] = box

    def accept(pts):
        return g.min_eigenvalue_at(pts) > 0.0

    return sample_box(g.dim, accept=accept, **kwargs)


def check_statistical(st, samples=None, tol=1e-8):
    """Residual records for the statistical-manifold axioms.

    (a) vanishing torsion of nabla and its dual; (b) total symmetry of the
    metric's covariant derivative, checked by direct expansion
    (nabla_X g)(Y,Z) = X g(Y,Z) - g(nabla_X Y, Z) - g(Y, nabla_X Z) over the
    coordinate frame; (c) the dual pairing of the two connections; (d)
    symmetry and metric self-adjointness of the difference tensor K.
    """
    g = st.g
    if samples is None:
        samples = metric_samples(g)
    pts = samples.points
    rep = CheckReport(check="statistical",
                      census={"samples": samples.count, "dim": g.dim})

    gv = g.at(pts)
    dgv = g.deriv_at(pts)          # [n, k, i, j]
    min_eig = np.linalg.eigvalsh(gv)[:, 0]
    t = Tracker()
    t.add_batch(np.maximum(0.0, -min_eig), scale=float(np.abs(gv).max()))
    rep.records.append(t.build(
        "metric-positive-definite", "g > 0 (smallest eigenvalue)", tol))

    gam = st.nabla.gamma_at(pts)
    gam_star = st.nabla_star.gamma_at(pts)
    scale = float(max(np.abs(gam).max(), np.abs(gam_star).max(),
                      np.abs(gv).max(), 1.0))

    t = Tracker()
    t.add_batch(gam - np.transpose(gam, (0, 1, 3, 2)), scale=scale)
    rep.records.append(t.build("torsion", "Γ^k_ij = Γ^k_ji", tol))

    t = Tracker()
    t.add_batch(gam_star - np.transpose(gam_star, (0, 1, 3, 2)), scale=scale)
    rep.records.append(t.build("torsion-dual", "Γ*^k_ij = Γ*^k_ji", tol))

    # (nabla_i g)(j, k) = d_i g_jk - gamma^l_ij g_lk - gamma^l_ik g_jl
    nabla_g = (dgv
               - np.einsum("nlij,nlk->nijk", gam, gv)
               - np.einsum("nlik,njl->nijk", gam, gv))
    t = Tracker()
    t.add_batch(nabla_g - np.transpose(nabla_g, (0, 2, 1, 3)), scale=scale)
    rep.records.append(t.build(
        "codazzi", "(∇_X g)(Y,Z) = (∇_Y g)(X,Z)", tol))

    duality = (dgv
               - np.einsum("nlij,nlk->nijk", gam, gv)
               - np.einsum("nlik,njl->nijk", gam_star, gv))
    t = Tracker()
    t.add_batch(duality, scale=scale)
    rep.records.append(t.build(
        "duality", "X g(Y,Z) = g(∇_X Y, Z) + g(Y, ∇*_X Z)", tol))

    kt = gam - st.lc.gamma_at(pts)
    t = Tracker()
    t.add_batch(kt - np.transpose(kt, (0, 1, 3, 2)), scale=scale)
    rep.records.append(t.build("difference-tensor-symmetry",
                               "K(X,Y) = K(Y,X)", tol))

    selfadj = (np.einsum("nlij,nlk->nijk", kt, gv)
               - np.einsum("nlik,njl->nijk", kt, gv))
    t = Tracker()
    t.add_batch(selfadj, scale=scale)
    rep.records.append(t.build("difference-tensor-self-adjoint",
                               "g(K_X Y, Z) = g(Y, K_X Z)", tol))
    return rep
