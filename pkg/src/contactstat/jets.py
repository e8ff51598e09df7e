"""First-order jets: values plus exact partial derivatives at one point.

Derived fields along an embedding (projections, tangential/normal parts of
phi, second-fundamental-form arguments) are algebraic in the primitive
symbolic fields, so carrying (value, gradient) pairs through the algebra
gives their derivatives exactly: the symbolic layer differentiates the
leaves, the product/inverse rules do the rest.  No truncation error enters
anywhere.
"""

import numpy as np

__all__ = ["Jet", "jet_from_exprs", "jconst", "jmatmat", "jmatvec", "jcol",
           "jvecdot", "jinv", "jT", "jscale", "jsqrt", "jouter"]


class Jet:
    """value array plus d = derivative array of shape val.shape + (m,)."""

    __slots__ = ("val", "d")

    def __init__(self, val, d):
        self.val = np.asarray(val, dtype=float)
        self.d = np.asarray(d, dtype=float)

    @property
    def m(self):
        return self.d.shape[-1]

    def __add__(self, other):
        return Jet(self.val + other.val, self.d + other.d)

    def __sub__(self, other):
        return Jet(self.val - other.val, self.d - other.d)

    def __neg__(self):
        return Jet(-self.val, -self.d)


def jconst(arr, m):
    arr = np.asarray(arr, dtype=float)
    return Jet(arr, np.zeros(arr.shape + (m,)))


def jet_from_exprs(grid, point, diff_grid=None):
    """Jet of a nested expression grid at a domain point.

    `diff_grid`, when given, is the cached grid of symbolic partials with
    the derivative index outermost; otherwise it is computed on the fly.
    """
    p = tuple(float(c) for c in point)
    m = len(p)

    def val_of(node):
        if hasattr(node, "eval"):
            return node.eval(p)
        return [val_of(c) for c in node]

    val = np.asarray(val_of(grid), dtype=float)
    if diff_grid is None:
        def diff_of(node, k):
            if hasattr(node, "diff"):
                return node.diff(k).eval(p)
            return [diff_of(c, k) for c in node]
        d = np.stack([np.asarray(diff_of(grid, k), dtype=float)
                      for k in range(m)], axis=-1)
    else:
        d = np.stack([np.asarray(val_of(diff_grid[k]), dtype=float)
                      for k in range(m)], axis=-1)
    return Jet(val, d)


def jmatmat(A, B):
    val = A.val @ B.val
    d = (np.einsum("abm,bc->acm", A.d, B.val)
         + np.einsum("ab,bcm->acm", A.val, B.d))
    return Jet(val, d)


def jmatvec(A, x):
    val = A.val @ x.val
    d = (np.einsum("abm,b->am", A.d, x.val)
         + np.einsum("ab,bm->am", A.val, x.d))
    return Jet(val, d)


def jcol(A, i):
    return Jet(A.val[:, i], A.d[:, i, :])


def jvecdot(x, y):
    val = float(x.val @ y.val)
    d = x.d.T @ y.val + y.d.T @ x.val
    return Jet(val, d)


def jinv(A):
    inv = np.linalg.inv(A.val)
    d = -np.einsum("ab,bcm,cd->adm", inv, A.d, inv)
    return Jet(inv, d)


def jT(A):
    return Jet(A.val.T, np.transpose(A.d, (1, 0, 2)))


def jscale(x, s):
    """x * s for a scalar jet s."""
    val = x.val * s.val
    d = x.d * s.val + np.einsum("...,m->...m", x.val, s.d)
    return Jet(val, d)


def jsqrt(s):
    root = np.sqrt(s.val)
    return Jet(root, s.d / (2.0 * root))


def jouter(x, y):
    val = np.outer(x.val, y.val)
    d = (np.einsum("am,b->abm", x.d, y.val)
         + np.einsum("a,bm->abm", x.val, y.d))
    return Jet(val, d)
