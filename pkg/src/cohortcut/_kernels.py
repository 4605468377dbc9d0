"""Hot numeric kernels, JIT-compiled with numba when available.

Every kernel exists in two flavors: a ``*_numpy`` implementation (plain
numpy / Python) and the module-level name used by the rest of the package,
which points at a numba-compiled version when numba is importable and the
``COHORTCUT_NUMBA`` environment variable is not set to ``0``.

Both flavors consume the same pre-drawn random arrays and keep all
transcendental math outside the kernels (callers pass log-uniforms and
probability lookup tables), so the two paths produce bit-identical results.
``benchmarks/bench_kernels.py`` compares their speed. Kernels are written
self-contained (no calls into the rest of the package) so they compile in
nopython mode.
"""

from __future__ import annotations

import os

import numpy as np

_ENV_FLAG = "COHORTCUT_NUMBA"


def _numba_requested() -> bool:
    flag = os.environ.get(_ENV_FLAG, "auto").strip().lower()
    if flag in ("0", "false", "off", "no"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        if flag in ("1", "true", "on", "yes"):
            raise ImportError(
                f"{_ENV_FLAG}={flag} requires numba, which is not installed"
            )
        return False
    return True


NUMBA_ENABLED = _numba_requested()


# ---------------------------------------------------------------------------
# max-cut: simulated annealing and greedy single-flip descent
# ---------------------------------------------------------------------------

def sa_anneal_numpy(indptr, indices, labels, n_sweeps, t_start, cooling,
                    proposal_sites, log_accept):
    """One simulated-annealing run over a fixed proposal/acceptance stream.

    ``proposal_sites`` holds ``n_sweeps * n`` node indices and ``log_accept``
    the matching log-uniforms; the temperature is multiplied by ``cooling``
    after each sweep of ``n`` proposals. Returns ``(best_cut, best_labels)``
    for the best state visited. ``labels`` is mutated to the final state.
    """
    n = labels.shape[0]
    cut = 0
    for u in range(n):
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            if v > u and labels[u] != labels[v]:
                cut += 1
    best_cut = cut
    best_labels = labels.copy()
    t = t_start
    idx = 0
    for _ in range(n_sweeps):
        for _ in range(n):
            j = proposal_sites[idx]
            # flipping j turns its uncut incident edges into cut ones and
            # vice versa: gain = (#same-label neighbors) - (#cut neighbors)
            same = 0
            for e in range(indptr[j], indptr[j + 1]):
                if labels[indices[e]] == labels[j]:
                    same += 1
            gain = 2 * same - (indptr[j + 1] - indptr[j])
            # accept iff u < exp(gain / t), i.e. log(u) * t < gain
            if gain >= 0 or log_accept[idx] * t < gain:
                labels[j] = 1 - labels[j]
                cut += gain
                if cut > best_cut:
                    best_cut = cut
                    best_labels[:] = labels
            idx += 1
        t *= cooling
    return best_cut, best_labels


def greedy_descent_numpy(indptr, indices, labels):
    """Flip nodes (index order, first improvement) until no flip gains.

    Mutates ``labels`` into a single-flip local optimum and returns its cut.
    """
    n = labels.shape[0]
    cut = 0
    for u in range(n):
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            if v > u and labels[u] != labels[v]:
                cut += 1
    improved = True
    while improved:
        improved = False
        for j in range(n):
            same = 0
            for e in range(indptr[j], indptr[j + 1]):
                if labels[indices[e]] == labels[j]:
                    same += 1
            gain = 2 * same - (indptr[j + 1] - indptr[j])
            if gain > 0:
                labels[j] = 1 - labels[j]
                cut += gain
                improved = True
    return cut


# ---------------------------------------------------------------------------
# SIR: one synchronous day update
# ---------------------------------------------------------------------------

def _sir_day_scalar(indptr, indices, sus, inf, rec, ptable, r_r,
                    infect_u, recover_u):
    n = sus.shape[0]
    newly = np.zeros(n, dtype=np.bool_)
    for i in range(n):
        if sus[i]:
            k = 0
            for e in range(indptr[i], indptr[i + 1]):
                if inf[indices[e]]:
                    k += 1
            if infect_u[i] < ptable[k]:
                newly[i] = True
    n_s = 0
    n_i = 0
    n_r = 0
    for i in range(n):
        if inf[i]:
            if recover_u[i] < r_r:
                inf[i] = False
                rec[i] = True
        if newly[i]:
            sus[i] = False
            inf[i] = True
        if sus[i]:
            n_s += 1
        elif inf[i]:
            n_i += 1
        else:
            n_r += 1
    return n_s, n_i, n_r


def sir_day_numpy(indptr, indices, sus, inf, rec, ptable, r_r,
                  infect_u, recover_u):
    """Advance one day: infections from yesterday's infected set, then
    recoveries of yesterday's infected. Mutates the three state arrays and
    returns the updated ``(S, I, R)`` counts.
    """
    hits = np.concatenate((np.zeros(1, dtype=np.int64),
                           np.cumsum(inf[indices].astype(np.int64))))
    k = hits[indptr[1:]] - hits[indptr[:-1]]
    newly = sus & (infect_u < ptable[k])
    recovered = inf & (recover_u < r_r)
    sus &= ~newly
    inf |= newly
    inf &= ~recovered
    rec |= recovered
    return int(sus.sum()), int(inf.sum()), int(rec.sum())


# ---------------------------------------------------------------------------
# graph statistics: geodesic distances and triangle counts
# ---------------------------------------------------------------------------

def _geodesic_sums_scalar(indptr, indices, n):
    dist = np.empty(n, dtype=np.int32)
    queue = np.empty(n, dtype=np.int32)
    total = 0
    pairs = 0
    for src in range(n):
        dist[:] = -1
        dist[src] = 0
        queue[0] = src
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            for e in range(indptr[u], indptr[u + 1]):
                v = indices[e]
                if dist[v] < 0:
                    dist[v] = du + 1
                    queue[tail] = v
                    tail += 1
                    total += du + 1
        pairs += tail - 1
    return total, pairs


def geodesic_sums_numpy(indptr, indices, n):
    """Sum of shortest-path lengths over connected ordered pairs, and the
    number of such pairs (self-pairs excluded)."""
    import scipy.sparse as sp
    import scipy.sparse.csgraph as csgraph

    if indices.shape[0] == 0:
        return 0, 0
    adj = sp.csr_matrix(
        (np.ones(indices.shape[0], dtype=np.int8), indices, indptr),
        shape=(n, n),
    )
    total = 0
    pairs = 0
    chunk = 512
    for start in range(0, n, chunk):
        rows = np.arange(start, min(start + chunk, n))
        d = csgraph.dijkstra(adj, unweighted=True, directed=False,
                             indices=rows)
        reached = np.isfinite(d)
        d[~reached] = 0.0
        total += int(d.sum())
        pairs += int(reached.sum()) - len(rows)
    return total, pairs


def _triangle_counts_scalar(indptr, indices, n):
    # indices must be sorted within each row; each triangle (u < v < w) is
    # found once at edge (u, v) by intersecting the two adjacency lists
    counts = np.zeros(n, dtype=np.int64)
    for u in range(n):
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            if v <= u:
                continue
            a = indptr[u]
            b = indptr[v]
            while a < indptr[u + 1] and b < indptr[v + 1]:
                wa = indices[a]
                wb = indices[b]
                if wa < wb:
                    a += 1
                elif wb < wa:
                    b += 1
                else:
                    if wa > v:
                        counts[u] += 1
                        counts[v] += 1
                        counts[wa] += 1
                    a += 1
                    b += 1
    return counts


def triangle_counts_numpy(indptr, indices, n):
    """Number of triangles through each node."""
    import scipy.sparse as sp

    if indices.shape[0] == 0:
        return np.zeros(n, dtype=np.int64)
    adj = sp.csr_matrix(
        (np.ones(indices.shape[0], dtype=np.int64), indices, indptr),
        shape=(n, n),
    )
    counts = np.zeros(n, dtype=np.int64)
    chunk = 256
    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        block = adj[start:stop]
        paths = (block @ adj).multiply(block)
        counts[start:stop] = np.asarray(paths.sum(axis=1)).ravel() // 2
    return counts


# ---------------------------------------------------------------------------
# path selection
# ---------------------------------------------------------------------------

if NUMBA_ENABLED:
    import numba

    sa_anneal = numba.njit(cache=True)(sa_anneal_numpy)
    greedy_descent = numba.njit(cache=True)(greedy_descent_numpy)
    sir_day = numba.njit(cache=True)(_sir_day_scalar)
    geodesic_sums = numba.njit(cache=True)(_geodesic_sums_scalar)
    triangle_counts = numba.njit(cache=True)(_triangle_counts_scalar)
else:
    sa_anneal = sa_anneal_numpy
    greedy_descent = greedy_descent_numpy
    sir_day = sir_day_numpy
    geodesic_sums = geodesic_sums_numpy
    triangle_counts = triangle_counts_numpy
