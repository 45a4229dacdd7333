"""Hot inner loops: chain stepping and component labeling.

Both kernels exist twice: a numba ``@njit`` build and a fallback that needs
only numpy/scipy. The env flag REGPERC_NUMBA picks the path ("0"/"off"
forces the fallback, "1"/"on" requires numba, unset means numba when
importable). The two chain builds compile the same source, so they consume
the same uniforms and produce bitwise-identical runs.
"""

import os

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False


def _numba_requested() -> bool | None:
    flag = os.environ.get("REGPERC_NUMBA", "").strip().lower()
    if flag in ("0", "false", "off", "no"):
        return False
    if flag in ("1", "true", "on", "yes"):
        return True
    return None


_choice = _numba_requested()
if _choice is True and not _HAVE_NUMBA:
    raise ImportError("REGPERC_NUMBA=1 but numba is not importable")
NUMBA_ENABLED: bool = _HAVE_NUMBA if _choice is None else _choice


# chain status codes returned by chain_chunk
RUNNING = 0
ABSORBED = 1
INACTIVE_LOW = 2
CAP = 3


def _chain_chunk_impl(A, I, t, u, p, i_threshold, cap, stride, trace, n_rec):
    """Advance the exploration chain by at most len(u) draws.

    One uniform is consumed per step; branch selection walks the cumulative
    transition probabilities in fixed order: partner-active, then
    partner-inactive open for j = 1..d, then partner-inactive closed for
    j = 1..d. ``I`` is mutated in place; every ``stride``-th state is written
    into ``trace`` as a row (t, A, I_0..I_d).

    Returns (A, t, draws_consumed, status, n_rec).
    """
    d = I.shape[0] - 1
    q = 1.0 - p
    k = 0
    status = RUNNING
    while k < u.shape[0]:
        if A == 0:
            status = ABSORBED
            break
        itot = 0
        for j in range(1, d + 1):
            itot += j * I[j]
        if i_threshold > 0.0 and itot < i_threshold:
            status = INACTIVE_LOW
            break
        if t >= cap:
            status = CAP
            break
        denom = float(A - 1 + itot)
        r = u[k] * denom
        k += 1
        acc = float(A - 1)
        if r < acc:
            A -= 2
        else:
            hit = 0  # 1 = open partner at level j, 2 = closed partner
            jhit = 0
            for j in range(1, d + 1):
                acc += p * (j * I[j])
                if r < acc:
                    hit = 1
                    jhit = j
                    break
            if hit == 0:
                for j in range(1, d + 1):
                    acc += q * (j * I[j])
                    if r < acc:
                        hit = 2
                        jhit = j
                        break
            if hit == 0:
                # float rounding pushed r past the final cumulative bound;
                # assign the last branch with positive probability
                for j in range(d, 0, -1):
                    if I[j] > 0:
                        hit = 2 if q > 0.0 else 1
                        jhit = j
                        break
            if hit == 1:
                A += jhit - 2
                I[jhit] -= 1
            elif hit == 2:
                A -= 1
                I[jhit] -= 1
                I[jhit - 1] += 1
            else:
                A -= 2
        t += 1
        if stride > 0 and t % stride == 0 and n_rec < trace.shape[0]:
            trace[n_rec, 0] = t
            trace[n_rec, 1] = A
            for j in range(d + 1):
                trace[n_rec, 2 + j] = I[j]
            n_rec += 1
    return A, t, k, status, n_rec


def _unionfind_components_impl(n, eu, ev):
    """Union-find (union by size, path halving) over 0-based edge arrays.

    Returns (labels, num_components) with component ids numbered by first
    appearance over vertex order.
    """
    parent = np.arange(n)
    size = np.ones(n, np.int64)
    for idx in range(eu.shape[0]):
        a = eu[idx]
        b = ev[idx]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a == b:
            continue
        if size[a] < size[b]:
            a, b = b, a
        parent[b] = a
        size[a] += size[b]
    root_label = np.full(n, -1, np.int64)
    labels = np.empty(n, np.int64)
    nc = 0
    for v in range(n):
        r = v
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        if root_label[r] < 0:
            root_label[r] = nc
            nc += 1
        labels[v] = root_label[r]
    return labels, nc


def _scipy_components(n, eu, ev):
    """Fallback component labeling via scipy.sparse.csgraph."""
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    adj = coo_matrix(
        (np.ones(len(eu), dtype=np.int8), (eu, ev)), shape=(n, n)
    )
    nc, raw = connected_components(adj, directed=False)
    _, first_pos = np.unique(raw, return_index=True)
    order = np.argsort(first_pos, kind="stable")
    rank = np.empty(nc, dtype=np.int64)
    rank[order] = np.arange(nc)
    return rank[raw], nc


chain_chunk_py = _chain_chunk_impl
components_py = _scipy_components

if _HAVE_NUMBA:
    chain_chunk_nb = njit(cache=True)(_chain_chunk_impl)
    components_nb = njit(cache=True)(_unionfind_components_impl)
else:  # pragma: no cover
    chain_chunk_nb = None
    components_nb = None

if NUMBA_ENABLED:
    chain_chunk = chain_chunk_nb
    components = components_nb
else:
    chain_chunk = chain_chunk_py
    components = components_py
