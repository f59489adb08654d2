"""Orthogonal rotation of coefficient matrices under the Crawford-Ferguson
and Orthomax criterion families.

The optimizer is a cyclic sequence of pairwise (Jacobi-style) plane
rotations. Restricted to one plane, the CF criterion is exactly
``c0 + c3*cos(4*theta) + c4*sin(4*theta)`` (terms involving the untouched
columns are invariant), so each plane angle is solved in closed form from
three criterion evaluations. Every plane step is a global minimizer of its
plane, which makes the sweep trace monotone.

Orthogonal CF minimization at kappa is equivalent to maximizing the
Orthomax objective p*sum(b^4) - p*kappa*sum_j(colsumsq_j)^2 (Crawford &
Ferguson), so Orthomax presets are dispatched through kappa = c/p. Note
that ``orthomax_value`` evaluates the two Orthomax terms with positive
signs (the printed form, convenient for identities on matrices with equal
column norms); the optimizer always works with the CF form.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ZeroRow


@dataclass(frozen=True)
class RotationCriterion:
    """family is 'crawford-ferguson' (param = kappa in [0, 1]) or
    'orthomax' (param = c >= 0)."""

    family: str
    param: float

    def __post_init__(self):
        if self.family == "crawford-ferguson":
            if not 0.0 <= self.param <= 1.0:
                raise ValueError("kappa must be in [0, 1]")
        elif self.family == "orthomax":
            if self.param < 0.0:
                raise ValueError("c must be >= 0")
        else:
            raise ValueError(f"unknown criterion family {self.family!r}")

    def kappa(self, p):
        """Equivalent CF kappa for a p-row coefficient matrix."""
        if self.family == "crawford-ferguson":
            return self.param
        return self.param / p

    @classmethod
    def quartimax(cls):
        return cls("orthomax", 0.0)

    @classmethod
    def varimax(cls):
        return cls("orthomax", 1.0)

    @classmethod
    def equamax(cls, d):
        return cls("orthomax", d / 2.0)

    @classmethod
    def crawford_ferguson(cls, kappa):
        return cls("crawford-ferguson", kappa)


@dataclass(frozen=True)
class RotationResult:
    b: np.ndarray
    o: np.ndarray
    criterion_trace: np.ndarray
    kaiser: bool
    converged: bool
    sweeps_used: int
    criterion: RotationCriterion


def cf_value(b, kappa):
    """Crawford-Ferguson complexity of a coefficient matrix.

    (1-kappa) * sum_i sum_{j != k} b_ij^2 b_ik^2
      + kappa * sum_j sum_{i != k} b_ij^2 b_kj^2
    """
    b2 = np.asarray(b, float) ** 2
    b4 = np.sum(b2**2)
    row = np.sum(np.sum(b2, axis=1) ** 2) - b4
    col = np.sum(np.sum(b2, axis=0) ** 2) - b4
    return (1.0 - kappa) * row + kappa * col


def orthomax_value(b, c):
    """Orthomax evaluation p * sum(b^4) + c * sum_j (sum_i b_ij^2)^2."""
    b2 = np.asarray(b, float) ** 2
    p = b2.shape[0]
    return p * np.sum(b2**2) + c * np.sum(np.sum(b2, axis=0) ** 2)


def _plane_angle(u, v, kappa):
    """Angle minimizing the CF criterion over a rotation of columns (u, v).

    Uses the exact harmonic form of the plane-restricted criterion:
    three evaluations determine c0, c3, c4 of
    g(theta) = c0 + c3 cos(4 theta) + c4 sin(4 theta).
    """

    def g(theta):
        ct, st = np.cos(theta), np.sin(theta)
        return cf_value(np.column_stack([u * ct + v * st, -u * st + v * ct]), kappa)

    g0 = g(0.0)
    g1 = g(np.pi / 8)
    g2 = g(-np.pi / 8)
    c0 = 0.5 * (g1 + g2)
    c4 = 0.5 * (g1 - g2)
    c3 = g0 - c0
    if np.hypot(c3, c4) == 0.0:
        return 0.0
    theta = np.arctan2(-c4, -c3) / 4.0
    return theta


def _sweep(b, o, kappa):
    """One full cycle of pairwise plane rotations, in place."""
    d = b.shape[1]
    for j in range(d - 1):
        for k in range(j + 1, d):
            theta = _plane_angle(b[:, j], b[:, k], kappa)
            if theta == 0.0:
                continue
            ct, st = np.cos(theta), np.sin(theta)
            rot = np.array([[ct, -st], [st, ct]])
            b[:, [j, k]] = b[:, [j, k]] @ rot
            o[:, [j, k]] = o[:, [j, k]] @ rot


def _trace_value(b, criterion, kappa):
    """Value recorded in the trace: CF for the CF family; for Orthomax the
    maximized equivalent p*sum(b^4) - c*sum_j(colsumsq)^2."""
    if criterion.family == "crawford-ferguson":
        return cf_value(b, kappa)
    b2 = np.asarray(b, float) ** 2
    p = b2.shape[0]
    return p * np.sum(b2**2) - criterion.param * np.sum(np.sum(b2, axis=0) ** 2)


def _random_orthogonal(d, rng):
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


def rotate(a, criterion, kaiser=False, tol=1e-8, max_sweeps=1000, restarts=1, seed=0):
    """Rotate a p x d coefficient matrix to optimize the given criterion.

    With ``kaiser`` the rows are scaled to unit L2 norm before rotation and
    scaled back afterwards (the rescaling commutes with the right-side
    rotation, so b = a @ o still holds for the original a). Extra restarts
    start from random orthogonal matrices; the best final criterion wins,
    ties broken by restart index.
    """
    a = np.asarray(a, float)
    p, d = a.shape
    if d < 2:
        raise ValueError("need at least 2 columns to rotate")
    if p < d:
        raise ValueError("need p >= d")
    if kaiser:
        row_norms = np.linalg.norm(a, axis=1)
        zero = np.nonzero(row_norms == 0.0)[0]
        if zero.size:
            raise ZeroRow(int(zero[0]))
        work = a / row_norms[:, None]
    else:
        work = a
    kappa = criterion.kappa(p)
    minimize = criterion.family == "crawford-ferguson"

    rng = np.random.default_rng(seed)
    best = None
    for restart in range(restarts):
        o = np.eye(d) if restart == 0 else _random_orthogonal(d, rng)
        b = work @ o
        trace = [_trace_value(b, criterion, kappa)]
        converged = False
        sweeps = 0
        for sweeps in range(1, max_sweeps + 1):
            _sweep(b, o, kappa)
            trace.append(_trace_value(b, criterion, kappa))
            change = abs(trace[-1] - trace[-2])
            if change <= tol * max(1.0, abs(trace[-2])):
                converged = True
                break
        candidate = (trace[-1], o, b, trace, converged, sweeps)
        if (
            best is None
            or (minimize and candidate[0] < best[0])
            or (not minimize and candidate[0] > best[0])
        ):
            best = candidate

    _, o, b, trace, converged, sweeps = best
    if kaiser:
        b = b * row_norms[:, None]
    return RotationResult(
        b=b,
        o=o,
        criterion_trace=np.asarray(trace),
        kaiser=kaiser,
        converged=converged,
        sweeps_used=sweeps,
        criterion=criterion,
    )


def reorder_columns(result, order, signs=None):
    """Permute (and optionally sign-flip) the columns of a RotationResult.

    The permutation/sign matrix is folded into the rotation, so b = a @ o
    is preserved.
    """
    order = list(order)
    if signs is None:
        signs = np.ones(len(order))
    signs = np.asarray(signs, float)
    return RotationResult(
        b=result.b[:, order] * signs,
        o=result.o[:, order] * signs,
        criterion_trace=result.criterion_trace,
        kaiser=result.kaiser,
        converged=result.converged,
        sweeps_used=result.sweeps_used,
        criterion=result.criterion,
    )


def rotated_scores(x, v, o):
    """Scores X @ (V @ O) of the rotated components."""
    values = x.values if hasattr(x, "values") else np.asarray(x, float)
    return values @ (np.asarray(v, float) @ np.asarray(o, float))
