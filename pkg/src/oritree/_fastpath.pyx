# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for the two hot loops.

Twins of the pure-python implementations in `oracle.py` and `cycles.py`:
identical candidate order, identical node accounting.  Adjacency comes in
as CSR arrays (indptr/indices) plus, for the cycle scan, a dense arc
matrix.
"""

from libc.stdlib cimport calloc, free, malloc


def oracle_search(int n_tree, int n_host,
                  int[:] parent_slot, int[:] par_dir,
                  int[:] need_out, int[:] need_in,
                  int[:] out_indptr, int[:] out_indices,
                  int[:] in_indptr, int[:] in_indices,
                  int[:] hdeg_out, int[:] hdeg_in,
                  long long budget):
    """Backtracking injective placement; returns (status, nodes, mapping)."""
    cdef int *fmap = <int *> malloc(n_tree * sizeof(int))
    cdef int *ptr = <int *> malloc(n_tree * sizeof(int))
    cdef unsigned char *used = <unsigned char *> calloc(n_host, 1)
    if fmap == NULL or ptr == NULL or used == NULL:
        raise MemoryError()
    cdef long long nodes = 0
    cdef int depth = 0, c, p, lo, hi, idx, advanced
    cdef int status = 0
    cdef int done = 0
    ptr[0] = 0
    try:
        if n_tree == 0:
            return 1, 0, []
        while not done:
            advanced = 0
            if depth == 0:
                for c in range(ptr[0], n_host):
                    ptr[0] = c + 1
                    if used[c]:
                        continue
                    if hdeg_out[c] < need_out[0] or hdeg_in[c] < need_in[0]:
                        continue
                    nodes += 1
                    if nodes > budget:
                        status = 2
                        done = 1
                        advanced = 0
                        break
                    fmap[0] = c
                    used[c] = 1
                    advanced = 1
                    break
            else:
                p = fmap[parent_slot[depth]]
                if par_dir[depth] > 0:
                    lo = out_indptr[p]
                    hi = out_indptr[p + 1]
                else:
                    lo = in_indptr[p]
                    hi = in_indptr[p + 1]
                for idx in range(lo + ptr[depth], hi):
                    ptr[depth] = idx - lo + 1
                    if par_dir[depth] > 0:
                        c = out_indices[idx]
                    else:
                        c = in_indices[idx]
                    if used[c]:
                        continue
                    if hdeg_out[c] < need_out[depth] or \
                            hdeg_in[c] < need_in[depth]:
                        continue
                    nodes += 1
                    if nodes > budget:
                        status = 2
                        done = 1
                        advanced = 0
                        break
                    fmap[depth] = c
                    used[c] = 1
                    advanced = 1
                    break
            if done:
                break
            if advanced:
                depth += 1
                if depth == n_tree:
                    status = 1
                    break
                ptr[depth] = 0
            else:
                depth -= 1
                if depth < 0:
                    status = 0
                    break
                used[fmap[depth]] = 0
        if status == 1:
            return 1, nodes, [fmap[i] for i in range(n_tree)]
        return status, nodes, None
    finally:
        free(fmap)
        free(ptr)
        free(used)


cdef inline int _quad_forbidden(int n, unsigned char[:] arcmat,
                                int v1, int v2, int v3, int v4,
                                bint include_directed):
    """Does the cyclic tuple realize a 4-cycle forbidden under the mode?"""
    cdef int xs[4]
    cdef int ys[4]
    cdef int mask, e, fwd, ok, fcount, ctype, first, second, found
    xs[0] = v1; ys[0] = v2
    xs[1] = v2; ys[1] = v3
    xs[2] = v3; ys[2] = v4
    xs[3] = v4; ys[3] = v1
    for mask in range(16):
        ok = 1
        fcount = 0
        for e in range(4):
            fwd = (mask >> e) & 1
            if fwd:
                if not arcmat[xs[e] * n + ys[e]]:
                    ok = 0
                    break
                fcount += 1
            else:
                if not arcmat[ys[e] * n + xs[e]]:
                    ok = 0
                    break
        if not ok:
            continue
        if fcount == 0 or fcount == 4:
            ctype = 0
        elif fcount == 1 or fcount == 3:
            ctype = 1
        else:
            first = -1
            second = -1
            for e in range(4):
                if (mask >> e) & 1:
                    if first < 0:
                        first = e
                    else:
                        second = e
            ctype = 3 if second - first == 2 else 2
        if include_directed or ctype != 0:
            return 1
    return 0


def first_forbidden_quad(int n, int[:] und_indptr, int[:] und_indices,
                         unsigned char[:] arcmat, bint include_directed):
    """Lexicographically least canonical quad with a forbidden realization."""
    cdef int v1, v2, v3, v4, i2, i3, i4
    for v1 in range(n):
        for i2 in range(und_indptr[v1], und_indptr[v1 + 1]):
            v2 = und_indices[i2]
            if v2 <= v1:
                continue
            for i3 in range(und_indptr[v2], und_indptr[v2 + 1]):
                v3 = und_indices[i3]
                if v3 <= v1 or v3 == v2:
                    continue
                for i4 in range(und_indptr[v3], und_indptr[v3 + 1]):
                    v4 = und_indices[i4]
                    if v4 <= v2 or v4 == v3:
                        continue
                    if not (arcmat[v1 * n + v4] or arcmat[v4 * n + v1]):
                        continue
                    if _quad_forbidden(n, arcmat, v1, v2, v3, v4,
                                       include_directed):
                        return (v1, v2, v3, v4)
    return None
