"""Selection of the compiled kernels with a pure-python fallback.

The hot loops (exhaustive embedding search, 4-cycle scan) exist twice:
as Cython kernels in `_fastpath` and as pure-python twins.  Whichever is
available is picked here at import time; setting ORITREE_PURE=1 in the
environment forces the pure implementation.  Both twins follow the same
candidate order, so results and node counts are identical.
"""

from __future__ import annotations

import os
from array import array

try:
    from . import _fastpath
except ImportError:  # extension not built; pure python only
    _fastpath = None

HAVE_NATIVE = _fastpath is not None
FORCE_PURE = os.environ.get("ORITREE_PURE", "") not in ("", "0")


def native_enabled() -> bool:
    return HAVE_NATIVE and not FORCE_PURE


def backend_name() -> str:
    return "cython" if native_enabled() else "pure-python"


def _csr(adj):
    indptr = array("i", [0])
    indices = array("i")
    for row in adj:
        indices.extend(row)
        indptr.append(len(indices))
    return indptr, indices


def _arc_matrix(D):
    n = D.n
    mat = array("B", bytes(n * n))
    for u, v in D.arcs:
        mat[u * n + v] = 1
    return mat


def _cached(D, key, build):
    try:
        return D._kernel_cache[key]
    except KeyError:
        value = build()
        D._kernel_cache[key] = value
        return value


def first_forbidden_quad(D, include_directed: bool):
    """Lexicographically least canonical 4-tuple carrying a forbidden cycle."""
    if native_enabled():
        indptr, indices = _cached(D, "und_csr", lambda: _csr(D.und_adj))
        mat = _cached(D, "arc_matrix", lambda: _arc_matrix(D))
        return _fastpath.first_forbidden_quad(
            D.n, indptr, indices, mat, include_directed)
    from .cycles import _py_first_forbidden_quad
    return _py_first_forbidden_quad(D, include_directed)


def host_arrays(D):
    """Memoized flattened adjacency and degree arrays for the host side."""
    def build():
        out_indptr, out_indices = _csr(D.out_adj)
        in_indptr, in_indices = _csr(D.in_adj)
        hdeg_out = array("i", [len(row) for row in D.out_adj])
        hdeg_in = array("i", [len(row) for row in D.in_adj])
        return (out_indptr, out_indices, in_indptr, in_indices,
                hdeg_out, hdeg_in)
    return _cached(D, "host_arrays", build)


def oracle_search_digraph(n_tree, D, parent_slot, par_dir,
                          need_out, need_in, budget):
    """Oracle search against a Digraph host, using its memoized arrays."""
    if native_enabled():
        (out_indptr, out_indices, in_indptr, in_indices,
         hdeg_out, hdeg_in) = host_arrays(D)
        return _fastpath.oracle_search(
            n_tree, D.n,
            array("i", parent_slot), array("i", par_dir),
            array("i", need_out), array("i", need_in),
            out_indptr, out_indices, in_indptr, in_indices,
            hdeg_out, hdeg_in, budget)
    from .oracle import _py_oracle_search
    return _py_oracle_search(n_tree, D.n, parent_slot, par_dir,
                             need_out, need_in, D.out_adj, D.in_adj, budget)


def oracle_search(n_tree, n_host, parent_slot, par_dir, need_out, need_in,
                  host_out, host_in, budget):
    """Exhaustive backtracking placement of a tree order into a host.

    Returns (status, nodes, mapping) with status 0 = exhausted without a
    match, 1 = found (mapping is slot -> host vertex), 2 = budget hit.
    """
    if native_enabled():
        out_indptr, out_indices = _csr(host_out)
        in_indptr, in_indices = _csr(host_in)
        hdeg_out = array("i", [len(row) for row in host_out])
        hdeg_in = array("i", [len(row) for row in host_in])
        return _fastpath.oracle_search(
            n_tree, n_host,
            array("i", parent_slot), array("i", par_dir),
            array("i", need_out), array("i", need_in),
            out_indptr, out_indices, in_indptr, in_indices,
            hdeg_out, hdeg_in, budget)
    from .oracle import _py_oracle_search
    return _py_oracle_search(n_tree, n_host, parent_slot, par_dir,
                             need_out, need_in, host_out, host_in, budget)
