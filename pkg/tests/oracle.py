"""Floating-point oracles, independent of the exact engine.

Two ways to measure a local topological degree numerically:

* preimage counting: solve g(x) = v for a small regular value v by batched
  multistart Newton and sum the signs of the Jacobian determinant over the
  solutions near the origin;
* winding evaluation (plane germs only): sum the angle increments of
  g/|g| along a small circle.

The preimage oracle is only a valid measurement of the *local* degree when
the preimages near the origin are cleanly separated from any other real
zeros of g; germ_is_oracle_friendly screens for that.
"""

import numpy as np

from cuspcount.polyring import Poly


def poly_evaluator(p: Poly):
    """Vectorized evaluator: (N, nvars) float array -> (N,) values."""
    if p.is_zero():
        nv = len(p.vars)
        return lambda x: np.zeros(np.asarray(x).shape[0])
    exps = np.array(list(p.terms.keys()), dtype=np.int64)
    coeffs = np.array([float(c) for c in p.terms.values()])

    def ev(x):
        x = np.asarray(x, dtype=np.float64)
        return (coeffs * np.prod(x[:, None, :] ** exps[None, :, :], axis=2)).sum(axis=1)

    return ev


def germ_evaluator(components):
    evs = [poly_evaluator(c) for c in components]

    def ev(x):
        return np.stack([e(x) for e in evs], axis=1)

    return ev


def jacobian_evaluator(components):
    from cuspcount.polyring import partial

    n = len(components)
    nv = len(components[0].vars)
    evs = [[poly_evaluator(partial(c, j)) for j in range(nv)] for c in components]

    def ev(x):
        N = np.asarray(x).shape[0]
        out = np.empty((N, n, nv))
        for i in range(n):
            for j in range(nv):
                out[:, i, j] = evs[i][j](x)
        return out

    return ev


def _batch_solve(a, b):
    """Solve a[i] @ s = b[i] for n in {2, 3} without raising on singular
    entries; singular rows get NaN."""
    n = a.shape[1]
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        det = np.linalg.det(a)
        bad = ~np.isfinite(det) | (np.abs(det) < 1e-300)
        det = np.where(bad, 1.0, det)
        if n == 2:
            s0 = (b[:, 0] * a[:, 1, 1] - b[:, 1] * a[:, 0, 1]) / det
            s1 = (a[:, 0, 0] * b[:, 1] - a[:, 1, 0] * b[:, 0]) / det
            out = np.stack([s0, s1], axis=1)
        elif n == 3:
            out = np.empty_like(b)
            for k in range(3):
                ak = a.copy()
                ak[:, :, k] = b
                out[:, k] = np.linalg.det(ak) / det
        else:
            raise ValueError("only 2x2 and 3x3 systems supported")
        out[bad] = np.nan
    return out


def solve_square_system(components, target, box_radius, n_starts=3000,
                        seed=0, newton_iters=60, residual_tol=1e-9,
                        cluster_tol=1e-5):
    """All solutions of g(x) = target inside the box, by multistart Newton."""
    n = len(components)
    g = germ_evaluator(components)
    jac = jacobian_evaluator(components)
    rng = np.random.default_rng(seed)
    x = rng.uniform(-box_radius, box_radius, size=(n_starts, n))
    x = np.vstack([x, np.zeros((1, n))])
    target = np.asarray(target, dtype=np.float64)
    for _ in range(newton_iters):
        x = np.clip(np.nan_to_num(x, nan=1e6), -1e6, 1e6)
        f = g(x) - target
        step = _batch_solve(jac(x), f)
        step = np.nan_to_num(step, nan=0.0)
        norm = np.linalg.norm(step, axis=1, keepdims=True)
        step = step * np.minimum(1.0, 0.2 * box_radius / np.maximum(norm, 1e-300))
        x = x - step
    f = g(x) - target
    ok = np.isfinite(x).all(axis=1)
    ok &= np.linalg.norm(f, axis=1) < residual_tol
    ok &= np.abs(x).max(axis=1) < 2.0 * box_radius
    x = x[ok]
    sols = []
    for p in x:
        if not any(np.linalg.norm(p - s) < cluster_tol for s in sols):
            sols.append(p)
    return np.array(sols) if sols else np.zeros((0, n))


def preimage_degree(components, v, local_radius, seed=0):
    """(count, degree) over preimages of v with |x| < local_radius, plus a
    flag telling whether every Jacobian sign was numerically clear."""
    sols = solve_square_system(components, v, box_radius=local_radius, seed=seed)
    if len(sols):
        sols = sols[np.linalg.norm(sols, axis=1) < local_radius]
    if not len(sols):
        return 0, 0, True
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        dets = np.linalg.det(jacobian_evaluator(components)(sols))
    clear = bool(np.all(np.abs(dets) > 1e-10))
    return len(sols), int(np.sign(dets).sum()), clear


def germ_is_oracle_friendly(components, inner=0.05, outer=0.8, seed=1):
    """True when g has no real zeros in the annulus inner < |x| < outer, so
    preimages of a tiny value split cleanly into 'near origin' and 'far'."""
    zs = solve_square_system(components, np.zeros(len(components)),
                             box_radius=outer, seed=seed)
    if not len(zs):
        return True
    norms = np.linalg.norm(zs, axis=1)
    return bool(np.all((norms <= inner) | (norms >= outer)))


def winding_degree(components, center, radius, samples=1024, target=None,
                   max_depth=60):
    """Winding number of g - target along the circle of the given radius.

    target defaults to zero; passing g(center) measures the local degree of
    g at center.  Angle steps above 1 radian are bisected adaptively, so near
    misses of the target (the image of a circle around a cusp point passes
    very close to the critical value) stay resolved.
    """
    if len(components) != 2:
        raise ValueError("winding_degree needs a plane map")
    g = germ_evaluator(components)
    center = np.asarray(center, dtype=np.float64)
    offset = np.zeros(2) if target is None else np.asarray(target, dtype=np.float64)

    def angle_at(theta):
        pts = center[None, :] + radius * np.array(
            [[np.cos(theta), np.sin(theta)]]
        )
        val = g(pts)[0] - offset
        if np.hypot(val[0], val[1]) < 1e-300:
            raise RuntimeError("circle passes through the target value")
        return np.arctan2(val[1], val[0])

    def wrapped(d):
        return (d + np.pi) % (2.0 * np.pi) - np.pi

    thetas = np.linspace(0.0, 2.0 * np.pi, samples + 1)
    angles = [angle_at(th) for th in thetas[:-1]]
    angles.append(angles[0])
    total = 0.0
    for i in range(samples):
        stack = [(thetas[i], angles[i], thetas[i + 1], angles[i + 1], 0)]
        while stack:
            t0, a0, t1, a1, depth = stack.pop()
            step = wrapped(a1 - a0)
            if abs(step) <= 1.0:
                total += step
                continue
            if depth >= max_depth:
                raise RuntimeError(
                    "winding did not stabilize; the circle effectively "
                    "touches the target value"
                )
            tm = 0.5 * (t0 + t1)
            am = angle_at(tm)
            stack.append((tm, am, t1, a1, depth + 1))
            stack.append((t0, a0, tm, am, depth + 1))
    w = int(np.round(total / (2.0 * np.pi)))
    if abs(total / (2.0 * np.pi) - w) > 1e-6:
        raise RuntimeError("winding sum is not integral")
    return w
