"""Table kernels used by the finite engines.

Every kernel has two implementations with identical results: a numba
``@njit`` version and a pure-numpy version.  The numba path is used when
numba imports cleanly and ``SGWB_DISABLE_NUMBA`` is unset (or ``0``).
The numpy versions are not transliterations of the compiled loops; the
closure kernel in particular uses hook-and-compress label propagation
instead of a union-find queue, so the two paths cross-check each other
in the test suite.
"""

from __future__ import annotations

import os

import numpy as np

INT = np.int64

_disabled = os.environ.get("SGWB_DISABLE_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError("numba disabled by SGWB_DISABLE_NUMBA")
    import numba

    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA


def _njit(func):
    if HAVE_NUMBA:
        return numba.njit(cache=True)(func)
    return func


# ---------------------------------------------------------------------------
# associativity


@_njit
def _nb_assoc_witness(mul):
    n = mul.shape[0]
    out = np.full(3, -1, dtype=np.int64)
    for x in range(n):
        for y in range(n):
            xy = mul[x, y]
            for z in range(n):
                if mul[xy, z] != mul[x, mul[y, z]]:
                    out[0] = x
                    out[1] = y
                    out[2] = z
                    return out
    return out


def _np_assoc_witness(mul):
    left = mul[mul]  # [x, y, z] -> (xy)z
    right = mul[:, mul]  # [x, y, z] -> x(yz)
    bad = np.argwhere(left != right)
    if len(bad) == 0:
        return np.full(3, -1, dtype=INT)
    return bad[0].astype(INT)


# ---------------------------------------------------------------------------
# right congruence closure


@_njit
def _nb_find(parent, a):
    root = a
    while parent[root] != root:
        root = parent[root]
    while parent[a] != root:
        nxt = parent[a]
        parent[a] = root
        a = nxt
    return root


@_njit
def _nb_saturate(mul, seeds):
    n = mul.shape[0]
    parent = np.arange(n, dtype=np.int64)
    cap = seeds.shape[0] + n * n + 1
    qa = np.empty(cap, dtype=np.int64)
    qb = np.empty(cap, dtype=np.int64)
    top = 0
    for i in range(seeds.shape[0]):
        qa[top] = seeds[i, 0]
        qb[top] = seeds[i, 1]
        top += 1
    while top > 0:
        top -= 1
        a = qa[top]
        b = qb[top]
        ra = _nb_find(parent, a)
        rb = _nb_find(parent, b)
        if ra == rb:
            continue
        if ra < rb:
            parent[rb] = ra
        else:
            parent[ra] = rb
        for s in range(n):
            qa[top] = mul[a, s]
            qb[top] = mul[b, s]
            top += 1
    labels = np.full(n, -1, dtype=np.int64)
    root_label = np.full(n, -1, dtype=np.int64)
    nxt = 0
    for x in range(n):
        r = _nb_find(parent, x)
        if root_label[r] < 0:
            root_label[r] = nxt
            nxt += 1
        labels[x] = root_label[r]
    return labels


def _flatten(parent):
    while True:
        nxt = parent[parent]
        if np.array_equal(nxt, parent):
            return parent
        parent = nxt


def _merge_edges(parent, u, v):
    while True:
        parent = _flatten(parent)
        ru, rv = parent[u], parent[v]
        if np.array_equal(ru, rv):
            return parent
        m = np.minimum(ru, rv)
        np.minimum.at(parent, ru, m)
        np.minimum.at(parent, rv, m)


def canonical_labels(labels):
    """Relabel a partition so class ids appear in first-occurrence order."""
    labels = np.asarray(labels)
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    order = np.argsort(np.argsort(first))
    return order[inverse].astype(INT)


def _np_saturate(mul, seeds):
    n = mul.shape[0]
    parent = np.arange(n, dtype=INT)
    if len(seeds):
        parent = _merge_edges(parent, seeds[:, 0].copy(), seeds[:, 1].copy())
    cols = np.arange(n)
    while True:
        parent = _flatten(parent)
        u = mul.ravel()
        v = mul[parent][:, cols].ravel()
        new = _merge_edges(parent.copy(), u, v)
        if np.array_equal(new, parent):
            break
        parent = new
    return canonical_labels(parent)


# ---------------------------------------------------------------------------
# right compatibility of a partition


@_njit
def _nb_compat_witness(mul, class_of):
    n = mul.shape[0]
    rep = np.full(n, -1, dtype=np.int64)
    out = np.full(3, -1, dtype=np.int64)
    for a in range(n):
        if rep[class_of[a]] < 0:
            rep[class_of[a]] = a
    for a in range(n):
        r = rep[class_of[a]]
        if r == a:
            continue
        for s in range(n):
            if class_of[mul[a, s]] != class_of[mul[r, s]]:
                out[0] = r
                out[1] = a
                out[2] = s
                return out
    return out


def _np_compat_witness(mul, class_of):
    n = mul.shape[0]
    first = np.full(n, n, dtype=INT)
    np.minimum.at(first, class_of, np.arange(n))
    reps = first[class_of]
    img = class_of[mul]
    bad = np.argwhere(img != img[reps])
    if len(bad) == 0:
        return np.full(3, -1, dtype=INT)
    a, s = bad[0]
    return np.array([reps[a], a, s], dtype=INT)


# ---------------------------------------------------------------------------
# enumeration of right-compatible partitions (restricted growth strings)


@_njit
def _nb_compatible_partitions(mul):
    n = mul.shape[0]
    cap = 64
    out = np.empty((cap, n), dtype=np.int64)
    count = 0
    rgs = np.zeros(n, dtype=np.int64)
    mx = np.zeros(n, dtype=np.int64)  # mx[i] = max(rgs[:i+1])
    while True:
        w = _nb_compat_witness(mul, rgs)
        if w[0] < 0:
            if count == cap:
                bigger = np.empty((cap * 2, n), dtype=np.int64)
                bigger[:cap] = out
                out = bigger
                cap *= 2
            out[count] = rgs
            count += 1
        # next restricted growth string in lexicographic order
        i = n - 1
        while i > 0 and rgs[i] > mx[i - 1]:
            i -= 1
        if i == 0:
            break
        rgs[i] += 1
        mx[i] = max(mx[i - 1], rgs[i])
        for j in range(i + 1, n):
            rgs[j] = 0
            mx[j] = mx[i]
    return out[:count].copy()


def restricted_growth_strings(n):
    """All set partitions of range(n) as restricted growth strings, lexicographic."""
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def rec(i, m):
        if i == n:
            yield tuple(rgs)
            return
        for c in range(m + 2):
            rgs[i] = c
            yield from rec(i + 1, max(m, c))

    rgs[0] = 0
    yield from rec(1, 0)


def _np_compatible_partitions(mul, chunk=20000):
    n = mul.shape[0]
    kept = []
    buf = []

    def flush():
        P = np.array(buf, dtype=INT)
        first = np.argmax(P[:, :, None] == np.arange(n)[None, None, :], axis=1)
        reps = np.take_along_axis(first, P, axis=1)  # (k, n)
        img = P[:, mul]  # (k, n, n): class of a*s
        img_rep = np.take_along_axis(img, reps[:, :, None].repeat(n, axis=2), axis=1)
        ok = (img == img_rep).all(axis=(1, 2))
        kept.append(P[ok])
        buf.clear()

    for rgs in restricted_growth_strings(n):
        buf.append(rgs)
        if len(buf) >= chunk:
            flush()
    if buf:
        flush()
    return np.concatenate(kept) if kept else np.empty((0, n), dtype=INT)


IMPLEMENTATIONS = {
    "numpy": {
        "assoc_witness": _np_assoc_witness,
        "saturate": _np_saturate,
        "compat_witness": _np_compat_witness,
        "compatible_partitions": _np_compatible_partitions,
    },
}
if HAVE_NUMBA:
    IMPLEMENTATIONS["numba"] = {
        "assoc_witness": _nb_assoc_witness,
        "saturate": _nb_saturate,
        "compat_witness": _nb_compat_witness,
        "compatible_partitions": _nb_compatible_partitions,
    }

BACKEND = "numba" if USE_NUMBA else "numpy"
_active = IMPLEMENTATIONS[BACKEND]


def _arr(x):
    return np.ascontiguousarray(x, dtype=INT)


def assoc_witness(mul):
    """First triple (x, y, z) with (xy)z != x(yz), or None."""
    w = _active["assoc_witness"](_arr(mul))
    return None if w[0] < 0 else (int(w[0]), int(w[1]), int(w[2]))


def saturate(mul, seeds):
    """Canonical class labels of the right congruence generated by ``seeds``."""
    seeds = _arr(seeds).reshape(-1, 2)
    return _active["saturate"](_arr(mul), seeds)


def compat_witness(mul, class_of):
    """(a, b, s) with a, b related but as, bs not, or None if right compatible."""
    w = _active["compat_witness"](_arr(mul), _arr(class_of))
    return None if w[0] < 0 else (int(w[0]), int(w[1]), int(w[2]))


def compatible_partitions(mul):
    """Every right-compatible partition as a row of canonical labels."""
    return _active["compatible_partitions"](_arr(mul))
