"""Compiled kernels behind the public hypervolume and contribution API.

Every kernel works on float64 arrays of shape ``(m, >=d)`` and only reads the
first ``d`` columns, so the WFG recursion can drop the trailing objective
without copying into a narrower array first. Nothing here validates input;
callers in :mod:`hvselect.hypervolume` and :mod:`hvselect.contribution` do.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def box_volume(p, ref, d):
    vol = 1.0
    for j in range(d):
        vol *= ref[j] - p[j]
    return vol


@njit(cache=True)
def _weakly_dominates(a, b, d):
    for j in range(d):
        if a[j] > b[j]:
            return False
    return True


@njit(cache=True)
def _equal(a, b, d):
    for j in range(d):
        if a[j] != b[j]:
            return False
    return True


@njit(cache=True)
def _mark_nondominated(pts, m, d, keep):
    """Flag rows not weakly dominated by another row; the first duplicate wins."""
    for t in range(m):
        keep[t] = True
    for t in range(m):
        if not keep[t]:
            continue
        for u in range(m):
            if u == t or not keep[u]:
                continue
            dom = True
            for j in range(d):
                if pts[t, j] > pts[u, j]:
                    dom = False
                    break
            if dom:
                if t < u:
                    keep[u] = False
                else:
                    for j in range(d):
                        if pts[t, j] != pts[u, j]:
                            keep[u] = False
                            break


@njit(cache=True)
def nondominated_mask(pts, d):
    keep = np.empty(pts.shape[0], dtype=np.bool_)
    _mark_nondominated(pts, pts.shape[0], d, keep)
    return keep


@njit(cache=True)
def _compact(pts, m, d, keep):
    count = 0
    for t in range(m):
        if keep[t]:
            if count != t:
                for j in range(d):
                    pts[count, j] = pts[t, j]
            count += 1
    return count


@njit(cache=True)
def _precedes(a, b, d):
    # descending on the last objective, ties lexicographic ascending
    if a[d - 1] != b[d - 1]:
        return a[d - 1] > b[d - 1]
    for j in range(d - 1):
        if a[j] != b[j]:
            return a[j] < b[j]
    return False


@njit(cache=True)
def _wfg_order(pts, m, d, order):
    for i in range(m):
        order[i] = i
    for i in range(1, m):
        cur = order[i]
        k = i - 1
        while k >= 0 and _precedes(pts[cur], pts[order[k]], d):
            order[k + 1] = order[k]
            k -= 1
        order[k + 1] = cur


@njit(cache=True)
def hv2d(pts, ref):
    m = pts.shape[0]
    if m == 0:
        return 0.0
    # ascending first objective, ties by second ascending
    order = np.argsort(pts[:, 1], kind="mergesort")
    order = order[np.argsort(pts[order, 0], kind="mergesort")]
    vol = 0.0
    ceiling = ref[1]
    for idx in range(m):
        p = pts[order[idx]]
        if p[1] < ceiling:
            vol += (ref[0] - p[0]) * (ceiling - p[1])
            ceiling = p[1]
    return vol


@njit(cache=True)
def _hv3d(pts, m, ref, order, xs, ys):
    """Sweep along the third objective over an incrementally kept 2-D staircase."""
    for i in range(m):
        order[i] = i
    for i in range(1, m):
        cur = order[i]
        k = i - 1
        while k >= 0 and pts[order[k], 2] > pts[cur, 2]:
            order[k + 1] = order[k]
            k -= 1
        order[k + 1] = cur
    size = 0
    area = 0.0
    vol = 0.0
    for idx in range(m):
        p = pts[order[idx]]
        x = p[0]
        y = p[1]
        # left neighbour: last staircase point with xs <= x
        pos = 0
        while pos < size and xs[pos] <= x:
            pos += 1
        ceiling = ys[pos - 1] if pos > 0 else ref[1]
        if ceiling > y:
            gain = 0.0
            cur = x
            j = pos
            while j < size and ceiling > y:
                gain += (xs[j] - cur) * (ceiling - y)
                cur = xs[j]
                ceiling = ys[j]
                j += 1
            if ceiling > y:
                gain += (ref[0] - cur) * (ceiling - y)
            area += gain
            # drop staircase points the new one dominates, then insert it
            start = pos
            if start > 0 and xs[start - 1] == x:
                start -= 1
            stop = start
            while stop < size and ys[stop] >= y:
                stop += 1
            shift = 1 - (stop - start)
            if shift > 0:
                for t in range(size - 1, stop - 1, -1):
                    xs[t + shift] = xs[t]
                    ys[t + shift] = ys[t]
            elif shift < 0:
                for t in range(stop, size):
                    xs[t + shift] = xs[t]
                    ys[t + shift] = ys[t]
            xs[start] = x
            ys[start] = y
            size += shift
        z_next = pts[order[idx + 1], 2] if idx + 1 < m else ref[2]
        vol += area * (z_next - p[2])
    return vol


@njit(cache=True)
def _hv_small(pts, m, ref, d):
    # inclusion-exclusion over at most three boxes
    a = pts[0]
    b = pts[1]
    va = 1.0
    vb = 1.0
    vab = 1.0
    for j in range(d):
        va *= ref[j] - a[j]
        vb *= ref[j] - b[j]
        vab *= ref[j] - max(a[j], b[j])
    if m == 2:
        return va + vb - vab
    c = pts[2]
    vc = 1.0
    vac = 1.0
    vbc = 1.0
    vabc = 1.0
    for j in range(d):
        vc *= ref[j] - c[j]
        vac *= ref[j] - max(a[j], c[j])
        vbc *= ref[j] - max(b[j], c[j])
        vabc *= ref[j] - max(a[j], b[j], c[j])
    return va + vb + vc - vab - vac - vbc + vabc


@njit(cache=True)
def _hv_rec(pts, m, ref, d, buf, order, flags):
    if m == 0:
        return 0.0
    if m == 1:
        return box_volume(pts[0], ref, d)
    if d == 2:
        return hv2d(pts[:m], ref)
    if m <= 3:
        return _hv_small(pts, m, ref, d)
    if d == 3:
        return _hv3d(pts, m, ref, order[3], buf[0, :, 0], buf[0, :, 1])
    ordr = order[d]
    _wfg_order(pts, m, d, ordr)
    last = d - 1
    # images of later points are written here; the (d-1)-level call reads them
    scratch = buf[last]
    keep = flags[last]
    total = 0.0
    for i in range(m):
        pi = ordr[i]
        # later points have last objective <= p's, so their limited images
        # share p's last coordinate and the remainder is a (d-1)-dim problem
        rest = m - i - 1
        covered = False
        for t in range(rest):
            qi = ordr[i + 1 + t]
            same = True
            for j in range(last):
                a = pts[qi, j]
                b = pts[pi, j]
                if a > b:
                    scratch[t, j] = a
                    same = False
                else:
                    scratch[t, j] = b
            if same:
                covered = True
                break
        if covered:
            continue
        incl = 1.0
        for j in range(last):
            incl *= ref[j] - pts[pi, j]
        height = ref[last] - pts[pi, last]
        if rest == 0:
            total += incl * height
            continue
        _mark_nondominated(scratch, rest, last, keep)
        count = _compact(scratch, rest, last, keep)
        sub = _hv_rec(scratch, count, ref, last, buf, order, flags)
        total += (incl - sub) * height
    return total


@njit(cache=True)
def hv(pts, ref, d):
    """Exact hypervolume of the first ``d`` columns of ``pts`` (WFG)."""
    m = pts.shape[0]
    if m == 0:
        return 0.0
    buf = np.empty((d, m + 1, d))
    order = np.empty((d + 1, m + 1), dtype=np.int64)
    flags = np.empty((d, m + 1), dtype=np.bool_)
    return _hv_rec(pts, m, ref, d, buf, order, flags)


@njit(cache=True)
def hvc(p, S, ref, d):
    """Contribution of ``p`` to ``S``: box of ``p`` minus hv of limit(S, p)."""
    incl = box_volume(p, ref, d)
    m = S.shape[0]
    if m == 0:
        return incl
    limited = np.empty((m, d))
    for t in range(m):
        same = True
        for j in range(d):
            a = S[t, j]
            if a > p[j]:
                limited[t, j] = a
                same = False
            else:
                limited[t, j] = p[j]
        if same:
            # some member weakly dominates p
            return 0.0
    keep = np.empty(m, dtype=np.bool_)
    _mark_nondominated(limited, m, d, keep)
    count = _compact(limited, m, d, keep)
    val = incl - hv(limited[:count], ref, d)
    return val if val > 0.0 else 0.0


@njit(cache=True)
def hvc_many(cands, S, ref, d):
    out = np.empty(cands.shape[0])
    for i in range(cands.shape[0]):
        out[i] = hvc(cands[i], S, ref, d)
    return out


@njit(cache=True)
def joint_many(cands, p_new, S, ref, d, skip):
    """Joint contribution of each candidate with ``p_new`` against ``S``.

    Rows flagged in ``skip`` (zero stored contribution, so zero joint part)
    are left at 0 without evaluation.
    """
    out = np.zeros(cands.shape[0])
    w = np.empty(d)
    for i in range(cands.shape[0]):
        if skip[i]:
            continue
        c = cands[i]
        for j in range(d):
            w[j] = c[j] if c[j] > p_new[j] else p_new[j]
        out[i] = hvc(w, S, ref, d)
    return out
