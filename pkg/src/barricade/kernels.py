"""Hot inner loops.

Every function here works on plain CSR arrays so it can be compiled by numba.
Two evaluation paths exist for cascades:

* loop kernels (``_spread`` and friends), compiled with ``@jit`` and run
  frontier by frontier;
* vectorized numpy rounds (``batch_sigma_numpy``, ``cascade_levels_numpy``)
  that recompute every in-weight sum each round with ``np.bincount``.

The public dispatchers pick the loop path when numba is enabled and the numpy
path otherwise. Loop kernels without a vectorized twin (MSS core, component
counts, BFS) run as interpreted Python when numba is off.
"""
from __future__ import annotations

import numpy as np

from ._jit import NUMBA_ENABLED, jit

# --------------------------------------------------------------------------
# cascade: loop path


@jit
def _spread(out_ptr, out_idx, out_w, b, alive, seeds, zero_b, active, acc, mark, order, level, touched):
    """Run one synchronous cascade. Fills ``order``/``level`` and returns the active count.

    Work buffers must come in clean (all False / 0.0) and are left dirty;
    call ``_reset`` afterwards.
    """
    hi = 0
    for s in seeds:
        if not active[s]:
            active[s] = True
            order[hi] = s
            level[hi] = 0
            hi += 1
    lo = 0
    t = 0
    while True:
        nt = 0
        for i in range(lo, hi):
            u = order[i]
            for e in range(out_ptr[u], out_ptr[u + 1]):
                v = out_idx[e]
                if alive[v] and not active[v]:
                    acc[v] += out_w[e]
                    if not mark[v]:
                        mark[v] = True
                        touched[nt] = v
                        nt += 1
        if t == 0:
            # zero-barricade nodes pass the rule on an empty sum
            for v in zero_b:
                if not active[v] and not mark[v]:
                    mark[v] = True
                    touched[nt] = v
                    nt += 1
        t += 1
        lo = hi
        for i in range(nt):
            v = touched[i]
            mark[v] = False
            if acc[v] >= b[v]:
                active[v] = True
                order[hi] = v
                level[hi] = t
                hi += 1
        if hi == lo:
            break
    return hi


@jit
def _reset(out_ptr, out_idx, order, count, active, acc):
    for i in range(count):
        u = order[i]
        active[u] = False
        for e in range(out_ptr[u], out_ptr[u + 1]):
            acc[out_idx[e]] = 0.0


@jit
def cascade_levels_loop(out_ptr, out_idx, out_w, b, alive, seeds):
    """Activation round per node, -1 for nodes never reached."""
    n = b.shape[0]
    active = np.zeros(n, np.bool_)
    mark = np.zeros(n, np.bool_)
    acc = np.zeros(n)
    order = np.empty(n, np.int64)
    level = np.empty(n, np.int64)
    touched = np.empty(n, np.int64)
    zero_b = np.nonzero(alive & (b <= 0.0))[0]
    count = _spread(out_ptr, out_idx, out_w, b, alive, seeds, zero_b, active, acc, mark, order, level, touched)
    out = np.full(n, -1, np.int64)
    for i in range(count):
        out[order[i]] = level[i]
    return out


@jit
def batch_sigma_loop(out_ptr, out_idx, out_w, b, alive, seed_rows, row_len):
    """sigma for each padded row of ``seed_rows``; only the first ``row_len[r]`` ids count."""
    n = b.shape[0]
    m = seed_rows.shape[0]
    active = np.zeros(n, np.bool_)
    mark = np.zeros(n, np.bool_)
    acc = np.zeros(n)
    order = np.empty(n, np.int64)
    level = np.empty(n, np.int64)
    touched = np.empty(n, np.int64)
    zero_b = np.nonzero(alive & (b <= 0.0))[0]
    res = np.empty(m, np.int64)
    for r in range(m):
        count = _spread(out_ptr, out_idx, out_w, b, alive, seed_rows[r, : row_len[r]], zero_b,
                        active, acc, mark, order, level, touched)
        res[r] = count
        _reset(out_ptr, out_idx, order, count, active, acc)
    return res


# --------------------------------------------------------------------------
# cascade: vectorized numpy path


def _live_edges(src, dst, w, alive):
    keep = alive[src] & alive[dst]
    return src[keep], dst[keep], w[keep]


def batch_sigma_numpy(src, dst, w, b, alive, masks):
    """sigma for each boolean row of ``masks`` by full synchronous rounds."""
    masks = np.asarray(masks, dtype=bool)
    m, n = masks.shape
    if m == 0:
        return np.zeros(0, np.int64)
    src, dst, w = _live_edges(src, dst, w, alive)
    active = masks & alive[None, :]
    while True:
        rows, eidx = np.nonzero(active[:, src])
        acc = np.bincount(rows * n + dst[eidx], weights=w[eidx], minlength=m * n).reshape(m, n)
        new = ~active & alive[None, :] & (acc >= b[None, :])
        if not new.any():
            break
        active |= new
    return active.sum(axis=1).astype(np.int64)


def cascade_levels_numpy(src, dst, w, b, alive, seed_mask):
    n = b.shape[0]
    src, dst, w = _live_edges(src, dst, w, alive)
    active = np.asarray(seed_mask, dtype=bool) & alive
    levels = np.where(active, 0, -1).astype(np.int64)
    t = 0
    while True:
        on = active[src]
        acc = np.bincount(dst[on], weights=w[on], minlength=n)
        new = ~active & alive & (acc >= b)
        if not new.any():
            break
        t += 1
        levels[new] = t
        active |= new
    return levels


# --------------------------------------------------------------------------
# structure helpers


@jit
def alive_in_weight(in_ptr, in_idx, in_w, alive, u, skip):
    """In-weight of ``u`` from alive sources other than ``skip`` (pass -1 for none)."""
    s = 0.0
    for e in range(in_ptr[u], in_ptr[u + 1]):
        z = in_idx[e]
        if alive[z] and z != skip:
            s += in_w[e]
    return s


@jit
def alive_out_weight(out_ptr, out_idx, out_w, alive, u):
    s = 0.0
    for e in range(out_ptr[u], out_ptr[u + 1]):
        if alive[out_idx[e]]:
            s += out_w[e]
    return s


@jit
def count_nontrivial(out_ptr, out_idx, in_ptr, in_idx, alive, excluded):
    """Weakly connected components with >= 2 alive nodes, ignoring node ``excluded``."""
    n = alive.shape[0]
    seen = np.zeros(n, np.bool_)
    stack = np.empty(n, np.int64)
    comps = 0
    for root in range(n):
        if seen[root] or not alive[root] or root == excluded:
            continue
        seen[root] = True
        stack[0] = root
        top = 1
        size = 0
        while top > 0:
            top -= 1
            u = stack[top]
            size += 1
            for e in range(out_ptr[u], out_ptr[u + 1]):
                v = out_idx[e]
                if alive[v] and v != excluded and not seen[v]:
                    seen[v] = True
                    stack[top] = v
                    top += 1
            for e in range(in_ptr[u], in_ptr[u + 1]):
                v = in_idx[e]
                if alive[v] and v != excluded and not seen[v]:
                    seen[v] = True
                    stack[top] = v
                    top += 1
        if size >= 2:
            comps += 1
    return comps


@jit
def bfs_order(out_ptr, out_idx, in_ptr, in_idx, alive, roots, limit):
    """Direction-ignoring BFS. Starts at ``roots[0]`` and jumps to the next unvisited
    root whenever a component is exhausted; stops after ``limit`` nodes.
    Neighbours are visited in ascending id order."""
    n = out_ptr.shape[0] - 1
    seen = np.zeros(n, np.bool_)
    queue = np.empty(n, np.int64)
    head = 0
    tail = 0
    ri = 0
    # in- plus out-neighbours: up to 2(n-1) entries
    nbrs = np.empty(2 * n, np.int64)
    while tail < limit:
        if head == tail:
            while ri < roots.shape[0] and (seen[roots[ri]] or not alive[roots[ri]]):
                ri += 1
            if ri == roots.shape[0]:
                break
            seen[roots[ri]] = True
            queue[tail] = roots[ri]
            tail += 1
            continue
        u = queue[head]
        head += 1
        k = 0
        for e in range(out_ptr[u], out_ptr[u + 1]):
            nbrs[k] = out_idx[e]
            k += 1
        for e in range(in_ptr[u], in_ptr[u + 1]):
            nbrs[k] = in_idx[e]
            k += 1
        for v in np.sort(nbrs[:k]):
            if alive[v] and not seen[v] and tail < limit:
                seen[v] = True
                queue[tail] = v
                tail += 1
    return queue[:tail].copy()


# --------------------------------------------------------------------------
# MSS removal loop


@jit
def _refresh(out_ptr, out_idx, out_w, in_ptr, in_idx, in_w, alive, u, inw, incident):
    inw[u] = alive_in_weight(in_ptr, in_idx, in_w, alive, u, -1)
    incident[u] = inw[u] + alive_out_weight(out_ptr, out_idx, out_w, alive, u)


@jit
def _deficiency_gain(out_ptr, out_idx, in_ptr, in_idx, in_w, b, alive, inw, u):
    """How many currently non-deficient nodes turn deficient once ``u`` is gone."""
    gained = 0
    for e in range(out_ptr[u], out_ptr[u + 1]):
        w = out_idx[e]
        if not alive[w] or b[w] > inw[w]:
            continue
        if b[w] > alive_in_weight(in_ptr, in_idx, in_w, alive, w, u):
            gained += 1
    return gained


@jit
def mss_core(out_ptr, out_idx, out_w, in_ptr, in_idx, in_w, b, alive_in, rand):
    """Removal loop of minimum seed selection.

    Returns ``(alive, removed, n_removed)``: survivors are the seeds, ``removed[:n_removed]``
    is the removal order. ``rand[i]`` in [0, 1) resolves the final tie of iteration ``i``.
    """
    n = b.shape[0]
    alive = alive_in.copy()
    inw = np.zeros(n)
    incident = np.zeros(n)
    for u in range(n):
        if alive[u]:
            _refresh(out_ptr, out_idx, out_w, in_ptr, in_idx, in_w, alive, u, inw, incident)
    removed = np.empty(n, np.int64)
    n_removed = 0
    cand = np.empty(n, np.int64)
    score = np.empty(n, np.int64)
    while True:
        nc = 0
        for u in range(n):
            if alive[u] and b[u] <= inw[u]:
                cand[nc] = u
                nc += 1
        if nc == 0:
            break
        if nc > 1:
            m1 = incident[cand[0]]
            for i in range(1, nc):
                if incident[cand[i]] < m1:
                    m1 = incident[cand[i]]
            k = 0
            for i in range(nc):
                if incident[cand[i]] == m1:
                    cand[k] = cand[i]
                    k += 1
            nc = k
        if nc > 1:
            for i in range(nc):
                score[i] = count_nontrivial(out_ptr, out_idx, in_ptr, in_idx, alive, cand[i])
            m2 = score[:nc].min()
            k = 0
            for i in range(nc):
                if score[i] == m2:
                    cand[k] = cand[i]
                    k += 1
            nc = k
        if nc > 1:
            for i in range(nc):
                score[i] = _deficiency_gain(out_ptr, out_idx, in_ptr, in_idx, in_w, b, alive, inw, cand[i])
            m3 = score[:nc].min()
            k = 0
            for i in range(nc):
                if score[i] == m3:
                    cand[k] = cand[i]
                    k += 1
            nc = k
        pick = int(rand[n_removed] * nc)
        if pick >= nc:
            pick = nc - 1
        q = cand[pick]
        alive[q] = False
        removed[n_removed] = q
        n_removed += 1
        for e in range(out_ptr[q], out_ptr[q + 1]):
            z = out_idx[e]
            if alive[z]:
                _refresh(out_ptr, out_idx, out_w, in_ptr, in_idx, in_w, alive, z, inw, incident)
        for e in range(in_ptr[q], in_ptr[q + 1]):
            z = in_idx[e]
            if alive[z]:
                _refresh(out_ptr, out_idx, out_w, in_ptr, in_idx, in_w, alive, z, inw, incident)
    return alive, removed, n_removed


# --------------------------------------------------------------------------
# dispatch


def pad_rows(rows, n_hint=0):
    """Pack a list of id sequences into a padded int64 matrix plus row lengths."""
    lens = np.fromiter((len(r) for r in rows), dtype=np.int64, count=len(rows))
    width = int(lens.max()) if len(rows) else 0
    mat = np.zeros((len(rows), max(width, 1)), dtype=np.int64)
    for i, r in enumerate(rows):
        mat[i, : lens[i]] = r
    return mat, lens


def batch_sigma(csr, seed_rows, use_numba=None):
    """sigma for each seed list in ``seed_rows`` on the CSR bundle ``csr``."""
    if use_numba is None:
        use_numba = NUMBA_ENABLED
    if len(seed_rows) == 0:
        return np.zeros(0, np.int64)
    if use_numba:
        mat, lens = pad_rows(seed_rows)
        return batch_sigma_loop(csr.out_ptr, csr.out_idx, csr.out_w, csr.b, csr.alive, mat, lens)
    masks = np.zeros((len(seed_rows), csr.b.shape[0]), dtype=bool)
    for i, r in enumerate(seed_rows):
        masks[i, list(r)] = True
    return batch_sigma_numpy(csr.src, csr.dst, csr.w, csr.b, csr.alive, masks)


def cascade_levels(csr, seeds, use_numba=None):
    if use_numba is None:
        use_numba = NUMBA_ENABLED
    seeds = np.asarray(sorted(seeds), dtype=np.int64)
    if use_numba:
        return cascade_levels_loop(csr.out_ptr, csr.out_idx, csr.out_w, csr.b, csr.alive, seeds)
    mask = np.zeros(csr.b.shape[0], dtype=bool)
    mask[seeds] = True
    return cascade_levels_numpy(csr.src, csr.dst, csr.w, csr.b, csr.alive, mask)
