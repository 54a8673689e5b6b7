"""Hot numeric kernels with a numba backend and a pure-numpy fallback.

Young functions are compiled (see :mod:`orlicz.young`) into a flat stack
program of three arrays::

    ops    int64[n, 3]    (opcode, int arg 1, int arg 2)
    fargs  float64[n, 2]  float operands
    knots  float64[m, 2]  breakpoints of piecewise-linear primitives

Both backends interpret the same program. Set ``ORLICZ_DISABLE_NUMBA=1`` to
force the numpy path (also used automatically when numba is missing).
"""

from __future__ import annotations

import math
import os

import numpy as np

from .config import SATURATION

OP_POWER = 0
OP_EXPM1 = 1
OP_POWER_LOG = 2
OP_PWL = 3
OP_ARG_PUSH = 4
OP_ARG_POP = 5
OP_VAL_SCALE = 6
OP_SUM = 7
OP_MAX = 8

# bracket guards for the generalized inverse
BRACKET_HIGH = 1e300
BRACKET_LOW = 1e-300


def _numba_disabled() -> bool:
    return os.environ.get("ORLICZ_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


# ---------------------------------------------------------------------------
# numpy backend


def _pwl_numpy(knots: np.ndarray, x: np.ndarray) -> np.ndarray:
    kt, ky = knots[:, 0], knots[:, 1]
    slope = (ky[-1] - ky[-2]) / (kt[-1] - kt[-2])
    out = np.interp(x, kt, ky)
    right = x > kt[-1]
    if np.any(right):
        if slope == 0.0:
            out[right] = ky[-1]
        else:
            out[right] = ky[-1] + slope * (x[right] - kt[-1])
    return out


def eval_program_numpy(ops, fargs, knots, t):
    t = np.asarray(t, dtype=np.float64)
    args = [t]
    vals: list[np.ndarray] = []
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(ops.shape[0]):
            op, i1, i2 = ops[i]
            a = args[-1]
            if op == OP_POWER:
                vals.append(a ** fargs[i, 0])
            elif op == OP_EXPM1:
                vals.append(np.expm1(a))
            elif op == OP_POWER_LOG:
                vals.append(a ** fargs[i, 0] * np.log1p(a) ** fargs[i, 1])
            elif op == OP_PWL:
                vals.append(_pwl_numpy(knots[i1:i1 + i2], a))
            elif op == OP_ARG_PUSH:
                args.append(a * fargs[i, 0])
            elif op == OP_ARG_POP:
                args.pop()
            elif op == OP_VAL_SCALE:
                vals[-1] = vals[-1] * fargs[i, 0]
            elif op == OP_SUM:
                terms = vals[-i1:]
                del vals[-i1:]
                acc = terms[0]
                for term in terms[1:]:
                    acc = acc + term
                vals.append(acc)
            elif op == OP_MAX:
                terms = vals[-i1:]
                del vals[-i1:]
                acc = terms[0]
                for term in terms[1:]:
                    acc = np.maximum(acc, term)
                vals.append(acc)
            else:  # pragma: no cover - programs are produced by young.compile
                raise ValueError(f"bad opcode {op}")
    return np.minimum(vals[0], SATURATION)


def inverse_program_numpy(ops, fargs, knots, s, rel_tol, max_iter):
    s = np.asarray(s, dtype=np.float64)
    n = s.size
    lo = np.zeros(n)
    hi = np.ones(n)
    out = np.full(n, np.nan)
    done = np.zeros(n, dtype=bool)

    up = eval_program_numpy(ops, fargs, knots, hi) <= s
    # Expand upwards: keep phi(lo) <= s, stop once phi(hi) > s.
    lo[up] = 1.0
    active = np.flatnonzero(up)
    while active.size:
        hi[active] *= 2.0
        blown = hi[active] > BRACKET_HIGH
        if np.any(blown):
            done[active[blown]] = True  # out stays nan
            active = active[~blown]
        exceeded = eval_program_numpy(ops, fargs, knots, hi[active]) > s[active]
        lo[active[~exceeded]] = hi[active[~exceeded]]
        active = active[~exceeded]

    # Shrink downwards: keep phi(hi) > s, stop once phi(lo) <= s.
    active = np.flatnonzero(~up)
    while active.size:
        cand = 0.5 * hi[active]
        tiny = cand < BRACKET_LOW
        if np.any(tiny):
            out[active[tiny]] = 0.0
            done[active[tiny]] = True
            active, cand = active[~tiny], cand[~tiny]
        below = eval_program_numpy(ops, fargs, knots, cand) <= s[active]
        lo[active[below]] = cand[below]
        hi[active[~below]] = cand[~below]
        active = active[~below]

    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        work = ~done & (hi - lo > rel_tol * hi) & (mid > lo) & (mid < hi)
        idx = np.flatnonzero(work)
        if not idx.size:
            break
        exceeded = eval_program_numpy(ops, fargs, knots, mid[idx]) > s[idx]
        hi[idx[exceeded]] = mid[idx[exceeded]]
        lo[idx[~exceeded]] = mid[idx[~exceeded]]

    finish = ~done
    out[finish] = 0.5 * (lo[finish] + hi[finish])
    return out


def simple_modular_numpy(ops, fargs, knots, values, measures, b):
    return float(np.sum(eval_program_numpy(ops, fargs, knots, values / b) * measures))


def level_weak_sup_numpy(ops, fargs, knots, levels, tails, b):
    if levels.size == 0:
        return 0.0
    return float(np.max(eval_program_numpy(ops, fargs, knots, levels / b) * tails))


def step_distribution_numpy(values, measures, lam):
    lam = np.asarray(lam, dtype=np.float64)
    order = np.argsort(values)
    v = values[order]
    # tail[k] = measure of cells with value >= v[k]
    tail = np.concatenate([np.cumsum(measures[order][::-1])[::-1], [0.0]])
    k = np.searchsorted(v, lam, side="right")
    return tail[k]


# ---------------------------------------------------------------------------
# numba backend (scalar loops; compiled lazily on first call)

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        return lambda fn: fn


@njit(cache=True)
def _nb_pwl_one(knots, off, cnt, x):
    last = off + cnt - 1
    tl = knots[last, 0]
    yl = knots[last, 1]
    if x >= tl:
        slope = (yl - knots[last - 1, 1]) / (tl - knots[last - 1, 0])
        if slope == 0.0:
            return yl
        return yl + slope * (x - tl)
    lo = off
    hi = last
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if knots[mid, 0] <= x:
            lo = mid
        else:
            hi = mid
    t0 = knots[lo, 0]
    y0 = knots[lo, 1]
    return y0 + (knots[hi, 1] - y0) / (knots[hi, 0] - t0) * (x - t0)


@njit(cache=True)
def _nb_eval_one(ops, fargs, knots, x, args, vals):
    ap = 0
    vp = 0
    args[0] = x
    for i in range(ops.shape[0]):
        op = ops[i, 0]
        a = args[ap]
        if op == OP_POWER:
            vals[vp] = _nb_pow(a, fargs[i, 0])
            vp += 1
        elif op == OP_EXPM1:
            vals[vp] = math.expm1(a)
            vp += 1
        elif op == OP_POWER_LOG:
            vals[vp] = _nb_pow(a, fargs[i, 0]) * _nb_pow(math.log1p(a), fargs[i, 1])
            vp += 1
        elif op == OP_PWL:
            vals[vp] = _nb_pwl_one(knots, ops[i, 1], ops[i, 2], a)
            vp += 1
        elif op == OP_ARG_PUSH:
            ap += 1
            args[ap] = a * fargs[i, 0]
        elif op == OP_ARG_POP:
            ap -= 1
        elif op == OP_VAL_SCALE:
            vals[vp - 1] = vals[vp - 1] * fargs[i, 0]
        elif op == OP_SUM:
            k = ops[i, 1]
            acc = vals[vp - k]
            for j in range(vp - k + 1, vp):
                acc = acc + vals[j]
            vp -= k
            vals[vp] = acc
            vp += 1
        elif op == OP_MAX:
            k = ops[i, 1]
            acc = vals[vp - k]
            for j in range(vp - k + 1, vp):
                if vals[j] > acc:
                    acc = vals[j]
            vp -= k
            vals[vp] = acc
            vp += 1
    v = vals[0]
    if v > SATURATION:
        return SATURATION
    return v


@njit(cache=True)
def _nb_pow(a, p):
    # mirror numpy's fast paths so both backends round the same way
    if p == 2.0:
        return a * a
    if p == 1.0:
        return a
    if p == 0.5:
        return math.sqrt(a)
    return a ** p


@njit(cache=True)
def _nb_eval_block(ops, fargs, knots, t, m, args, vals, out):
    """Op-major evaluation of the first ``m`` entries of ``t`` into ``out``.

    Looping over points inside each opcode keeps the inner loops free of
    dispatch; ``args`` and ``vals`` are (depth, n) scratch stacks.
    """
    ap = 0
    vp = 0
    for k in range(m):
        args[0, k] = t[k]
    for i in range(ops.shape[0]):
        op = ops[i, 0]
        f0 = fargs[i, 0]
        if op == OP_POWER:
            for k in range(m):
                vals[vp, k] = _nb_pow(args[ap, k], f0)
            vp += 1
        elif op == OP_EXPM1:
            for k in range(m):
                vals[vp, k] = math.expm1(args[ap, k])
            vp += 1
        elif op == OP_POWER_LOG:
            f1 = fargs[i, 1]
            for k in range(m):
                a = args[ap, k]
                vals[vp, k] = _nb_pow(a, f0) * _nb_pow(math.log1p(a), f1)
            vp += 1
        elif op == OP_PWL:
            for k in range(m):
                vals[vp, k] = _nb_pwl_one(knots, ops[i, 1], ops[i, 2], args[ap, k])
            vp += 1
        elif op == OP_ARG_PUSH:
            for k in range(m):
                args[ap + 1, k] = args[ap, k] * f0
            ap += 1
        elif op == OP_ARG_POP:
            ap -= 1
        elif op == OP_VAL_SCALE:
            for k in range(m):
                vals[vp - 1, k] *= f0
        elif op == OP_SUM:
            base = vp - ops[i, 1]
            for j in range(base + 1, vp):
                for k in range(m):
                    vals[base, k] += vals[j, k]
            vp = base + 1
        elif op == OP_MAX:
            base = vp - ops[i, 1]
            for j in range(base + 1, vp):
                for k in range(m):
                    if vals[j, k] > vals[base, k]:
                        vals[base, k] = vals[j, k]
            vp = base + 1
    for k in range(m):
        v = vals[0, k]
        out[k] = SATURATION if v > SATURATION else v


@njit(cache=True)
def _nb_eval_program(ops, fargs, knots, t):
    n = t.size
    depth = ops.shape[0] + 1
    args = np.empty((depth, n))
    vals = np.empty((depth, n))
    out = np.empty(n)
    _nb_eval_block(ops, fargs, knots, t, n, args, vals, out)
    return out


@njit(cache=True)
def _nb_inverse_program(ops, fargs, knots, s, rel_tol, max_iter):
    """Same bracket-then-bisect scheme as the numpy kernel, run on all points at once."""
    n = s.size
    depth = ops.shape[0] + 1
    args = np.empty((depth, n))
    vals = np.empty((depth, n))
    lo = np.zeros(n)
    hi = np.ones(n)
    out = np.full(n, np.nan)
    done = np.zeros(n, dtype=np.bool_)
    idx = np.empty(n, dtype=np.int64)
    x = np.empty(n)
    y = np.empty(n)

    _nb_eval_block(ops, fargs, knots, hi, n, args, vals, y)
    # up: phi(1) <= s, so expand hi upwards; otherwise shrink lo downwards
    up = y <= s
    for k in range(n):
        if up[k]:
            lo[k] = 1.0

    m = 0
    for k in range(n):
        if up[k]:
            idx[m] = k
            m += 1
    while m > 0:
        w = 0
        for j in range(m):
            k = idx[j]
            hi[k] *= 2.0
            if hi[k] > BRACKET_HIGH:
                done[k] = True
            else:
                idx[w] = k
                x[w] = hi[k]
                w += 1
        m = w
        _nb_eval_block(ops, fargs, knots, x, m, args, vals, y)
        w = 0
        for j in range(m):
            k = idx[j]
            if not (y[j] > s[k]):
                lo[k] = hi[k]
                idx[w] = k
                w += 1
        m = w

    m = 0
    for k in range(n):
        if not up[k]:
            idx[m] = k
            m += 1
    while m > 0:
        w = 0
        for j in range(m):
            k = idx[j]
            cand = 0.5 * hi[k]
            if cand < BRACKET_LOW:
                out[k] = 0.0
                done[k] = True
            else:
                idx[w] = k
                x[w] = cand
                w += 1
        m = w
        _nb_eval_block(ops, fargs, knots, x, m, args, vals, y)
        w = 0
        for j in range(m):
            k = idx[j]
            if y[j] <= s[k]:
                lo[k] = x[j]
            else:
                hi[k] = x[j]
                idx[w] = k
                w += 1
        m = w

    for _ in range(max_iter):
        m = 0
        for k in range(n):
            mid = 0.5 * (lo[k] + hi[k])
            if not done[k] and hi[k] - lo[k] > rel_tol * hi[k] and mid > lo[k] and mid < hi[k]:
                idx[m] = k
                x[m] = mid
                m += 1
        if m == 0:
            break
        _nb_eval_block(ops, fargs, knots, x, m, args, vals, y)
        for j in range(m):
            k = idx[j]
            if y[j] > s[k]:
                hi[k] = x[j]
            else:
                lo[k] = x[j]

    for k in range(n):
        if not done[k]:
            out[k] = 0.5 * (lo[k] + hi[k])
    return out


@njit(cache=True)
def _nb_simple_modular(ops, fargs, knots, values, measures, b):
    n = ops.shape[0] + 1
    args = np.empty(n)
    vals = np.empty(n)
    total = 0.0
    for i in range(values.size):
        total += _nb_eval_one(ops, fargs, knots, values[i] / b, args, vals) * measures[i]
    return total


@njit(cache=True)
def _nb_level_weak_sup(ops, fargs, knots, levels, tails, b):
    n = ops.shape[0] + 1
    args = np.empty(n)
    vals = np.empty(n)
    best = 0.0
    for k in range(levels.size):
        v = _nb_eval_one(ops, fargs, knots, levels[k] / b, args, vals) * tails[k]
        if v > best:
            best = v
    return best


@njit(cache=True)
def _nb_step_distribution(values, measures, lam):
    order = np.argsort(values)
    n = values.size
    v = values[order]
    tail = np.zeros(n + 1)
    for i in range(n - 1, -1, -1):
        tail[i] = tail[i + 1] + measures[order[i]]
    out = np.empty(lam.size)
    for k in range(lam.size):
        out[k] = tail[np.searchsorted(v, lam[k], side="right")]
    return out


NUMPY_KERNELS = (
    eval_program_numpy,
    inverse_program_numpy,
    simple_modular_numpy,
    level_weak_sup_numpy,
    step_distribution_numpy,
)

NUMBA_KERNELS = (
    _nb_eval_program,
    _nb_inverse_program,
    _nb_simple_modular,
    _nb_level_weak_sup,
    _nb_step_distribution,
)

if not HAVE_NUMBA or _numba_disabled():
    BACKEND = "numpy"
    _active = NUMPY_KERNELS
else:
    BACKEND = "numba"
    _active = NUMBA_KERNELS

eval_program, inverse_program, simple_modular, level_weak_sup, step_distribution = _active
