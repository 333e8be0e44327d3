"""Command-line surface.

Subcommands: stats, embed, verify, generate, peel, catalog, explore.
Every command is deterministic given (inputs, seed); JSON output carries
a schema marker, the tool version and the seed.  Exit codes: 0 success or
embedded, 1 input error, 2 not embedded, 3 hypothesis violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

from . import __version__
from . import errors
from .catalog import enumerate_oriented_trees
from .cycles import (CycleMode, FourCycleType, cycle_type_counts,
                     find_forbidden_cycle, is_c4_free)
from .digraph import (build_digraph, degree_profile, load_digraph,
                      save_digraph)
from .embedder import EmbedMode, EmbedOptions, EmbedStatus, embed_tree
from .generators import (derive_seed, gen_blowup_cycle, gen_girth6_digon_host,
                         gen_oriented_girth6_host, gen_random_digraph,
                         gen_random_tree, gen_two_clique_host)
from .oracle import oracle_embed
from .peeling import peel_to_pseudo_semidegree
from .trees import load_tree, save_tree

SCHEMA = 1
_EXIT_OK, _EXIT_INPUT, _EXIT_NOT_EMBEDDED, _EXIT_VIOLATION = 0, 1, 2, 3

_MODES = {
    "general": EmbedMode.GeneralOriented,
    "antidirected": EmbedMode.Antidirected,
    "arborescence": EmbedMode.Arborescence,
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Settings of a batched run, echoed into every report."""

    command: str
    mode: Optional[str]
    k: int
    trials: int
    seed: int
    budget: int
    out: Optional[str]
    format: str

    def __post_init__(self):
        if self.trials < 1:
            raise errors.BadParams("trials must be >= 1")

    def to_json(self):
        return asdict(self)


def _workers() -> int:
    raw = os.environ.get("ORITREE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _emit(args, payload, text_lines):
    if args.format == "json":
        body = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        body = "\n".join(text_lines) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _read(path):
    with open(path) as fh:
        return fh.read()


def _base_payload(seed=None):
    payload = {"schema": SCHEMA, "version": __version__}
    if seed is not None:
        payload["seed"] = seed
    return payload


# ---------------------------------------------------------------------------
# stats
# ---------------------------------------------------------------------------

def cmd_stats(args) -> int:
    D = load_digraph(_read(args.digraph))
    prof = degree_profile(D)
    c4 = find_forbidden_cycle(D, CycleMode.AllC4)
    c4s = find_forbidden_cycle(D, CycleMode.NonDirectedC4)
    payload = _base_payload()
    payload.update({
        "n": D.n, "m": D.m,
        "profile": {
            "delta_plus": prof.delta_plus, "delta_minus": prof.delta_minus,
            "delta_zero": prof.delta_zero,
            "pseudo_delta_zero": prof.pseudo_delta_zero,
            "Delta_plus": prof.Delta_plus, "Delta_minus": prof.Delta_minus,
            "Delta_tot": prof.Delta_tot, "Delta_pm": prof.Delta_pm,
        },
        "c4_free": c4 is None,
        "c4_star_free": c4s is None,
    })
    lines = [
        f"n={D.n} m={D.m}",
        f"delta+={prof.delta_plus} delta-={prof.delta_minus} "
        f"delta0={prof.delta_zero} pseudo={prof.pseudo_delta_zero}",
        f"Delta+={prof.Delta_plus} Delta-={prof.Delta_minus} "
        f"Delta_tot={prof.Delta_tot} Delta_pm={prof.Delta_pm}",
        f"c4_free={'yes' if c4 is None else 'no'} "
        f"c4_star_free={'yes' if c4s is None else 'no'}",
    ]
    if D.n <= 24:
        counts = cycle_type_counts(D)
        payload["cycle_counts"] = {t.label: c for t, c in counts.items()}
        lines.append("cycle_counts " + " ".join(
            f"{t.label}={c}" for t, c in counts.items()))
    else:
        for name, wit in (("c4_witness", c4), ("non_directed_witness", c4s)):
            payload[name] = wit.render() if wit else None
            if wit:
                lines.append(f"{name}: {wit.render()}")
    _emit(args, payload, lines)
    return _EXIT_OK


# ---------------------------------------------------------------------------
# embed
# ---------------------------------------------------------------------------

def cmd_embed(args) -> int:
    T = load_tree(_read(args.tree))
    D = load_digraph(_read(args.digraph))
    budget = args.budget
    if args.oracle:
        budget = max(budget, 10**9)
    options = EmbedOptions(fallback_budget=budget,
                           assert_constructive=args.assert_constructive,
                           seed=args.seed)
    report = embed_tree(T, D, _MODES[args.mode], options)
    payload = _base_payload(args.seed)
    payload.update(report.to_json())
    status = report.status
    lines = [f"status {status.value}"]
    if status is EmbedStatus.NotEmbeddable:
        lines[0] += " (oracle-confirmed)"
    if report.embedding is not None:
        lines.extend(f"{tv} {hv}" for tv, hv in report.embedding.pairs)
    _emit(args, payload, lines)
    if args.certificate and report.embedding is not None:
        with open(args.certificate, "w") as fh:
            fh.write("\n".join(f"{tv} {hv}"
                               for tv, hv in report.embedding.pairs) + "\n")
    if status is EmbedStatus.Embedded:
        return _EXIT_OK
    if status is EmbedStatus.HypothesisViolation:
        return _EXIT_VIOLATION
    return _EXIT_NOT_EMBEDDED


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _pick_digon_q(k):
    for q in (2, 3, 4):
        if 2 * (q + 1) >= k:
            return q
    return None


def _pick_oriented_q(k):
    for q, kmax in ((3, 4), (5, 6), (7, 8)):
        if k <= kmax:
            return q
    return None


def _bounded_tree(k, kind, seed, degree_cap):
    attempt = 0
    while True:
        T = gen_random_tree(k, kind, derive_seed(seed, "bounded", attempt))
        if max(T.deg(v) for v in range(T.n)) <= degree_cap:
            return T
        attempt += 1


def _verify_trial(mode, k, trial, seed, budget, hosts):
    trial_seed = derive_seed(seed, "verify", trial)
    if mode is EmbedMode.GeneralOriented:
        q, host = hosts["digon"]
        if k <= 6:
            cat = hosts["catalog"]
            T = cat[trial % len(cat)]
        else:
            T = _bounded_tree(k, "any", trial_seed, q)
    elif mode is EmbedMode.Antidirected:
        q, host = hosts["digon"]
        T = _bounded_tree(k, "antidirected", trial_seed, q)
    else:
        if hosts.get("oriented") and trial % 2 == 1:
            q, host = hosts["oriented"]
        else:
            q, host = hosts["digon"]
        T = _bounded_tree(k, "out_arborescence", trial_seed, q)
    report = embed_tree(T, host, mode,
                        EmbedOptions(fallback_budget=budget, seed=trial_seed))
    return trial, trial_seed, report


def cmd_verify(args) -> int:
    config = ExperimentConfig(command="verify", mode=args.mode, k=args.k,
                              trials=args.trials, seed=args.seed,
                              budget=args.budget, out=args.out,
                              format=args.format)
    mode = _MODES[args.mode]
    k = args.k
    q = _pick_digon_q(k)
    if q is None:
        raise errors.BadParams(f"no stored host family covers k={k}")
    if mode is EmbedMode.Antidirected:
        q = max(q, 3)  # headroom so sampled trees are not only paths
    hosts = {"digon": (q, gen_girth6_digon_host(q))}
    if mode is EmbedMode.GeneralOriented and k <= 6:
        cat = [T for T in enumerate_oriented_trees(k).trees
               if max(T.deg(v) for v in range(T.n)) <= q]
        hosts["catalog"] = cat
    if mode is EmbedMode.Arborescence:
        oq = _pick_oriented_q(k)
        if oq is not None:
            hosts["oriented"] = (oq, gen_oriented_girth6_host(oq))

    def run(trial):
        return _verify_trial(mode, k, trial, args.seed, args.budget, hosts)

    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        results = list(pool.map(run, range(args.trials)))

    counts = {}
    failures = []
    for trial, trial_seed, report in results:
        counts[report.status.value] = counts.get(report.status.value, 0) + 1
        if report.status is not EmbedStatus.Embedded:
            failures.append({"trial": trial, "seed": trial_seed,
                             "status": report.status.value})
    payload = _base_payload(args.seed)
    payload.update({"config": config.to_json(), "host_q": q,
                    "counts": counts, "failures": failures})
    lines = [f"mode={args.mode} k={k} trials={args.trials} host_q={q}"]
    lines.extend(f"{s}: {c}" for s, c in sorted(counts.items()))
    for f in failures:
        lines.append(f"failure trial={f['trial']} seed={f['seed']} "
                     f"status={f['status']}")
    _emit(args, payload, lines)
    if counts.get(EmbedStatus.HypothesisViolation.value, 0) > 0:
        return _EXIT_VIOLATION
    return _EXIT_OK


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------

def cmd_generate(args) -> int:
    kind = args.kind
    if kind == "two_clique":
        D = gen_two_clique_host(args.k)
        body = save_digraph(D, header_comment=f"two_clique k={args.k}")
    elif kind == "blowup":
        D = gen_blowup_cycle(args.len, args.s)
        body = save_digraph(D, f"blowup len={args.len} s={args.s}")
    elif kind == "girth6":
        D = gen_girth6_digon_host(args.q)
        assert is_c4_free(D)
        body = save_digraph(D, f"girth6 digon q={args.q}")
    elif kind == "oriented_girth6":
        D = gen_oriented_girth6_host(args.q)
        assert is_c4_free(D)
        body = save_digraph(D, f"oriented girth6 q={args.q}")
    elif kind == "random_digraph":
        D = gen_random_digraph(args.n, args.m, args.constraint, args.seed)
        body = save_digraph(
            D, f"random n={args.n} m={args.m} {args.constraint} "
               f"seed={args.seed}")
    elif kind == "tree":
        T = gen_random_tree(args.k, args.tree_kind, args.seed)
        body = save_tree(T)
    else:
        raise errors.BadKind(kind)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return _EXIT_OK


# ---------------------------------------------------------------------------
# peel
# ---------------------------------------------------------------------------

def _parse_threshold(text):
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def cmd_peel(args) -> int:
    D = load_digraph(_read(args.digraph))
    d = _parse_threshold(args.d)
    sub, trace = peel_to_pseudo_semidegree(D, d)
    body = save_digraph(sub, header_comment=f"peeled d={d}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    if args.trace:
        payload = _base_payload()
        payload.update(trace.to_json())
        with open(args.trace, "w") as fh:
            fh.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return _EXIT_OK


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def cmd_catalog(args) -> int:
    cat = enumerate_oriented_trees(args.k)
    os.makedirs(args.out_dir, exist_ok=True)
    files = []
    for i, T in enumerate(cat.trees):
        name = f"k{args.k}_t{i:04d}.tree"
        with open(os.path.join(args.out_dir, name), "w") as fh:
            fh.write(save_tree(T))
        files.append(name)
    index = _base_payload()
    index.update({"k": args.k, "count": len(cat), "files": files})
    with open(os.path.join(args.out_dir, "index.json"), "w") as fh:
        fh.write(json.dumps(index, sort_keys=True, indent=2) + "\n")
    sys.stdout.write(f"wrote {len(cat)} trees to {args.out_dir}\n")
    return _EXIT_OK


# ---------------------------------------------------------------------------
# explore
# ---------------------------------------------------------------------------

def _host_avoiding_k2s(n, m, s, seed):
    """Random digraph whose underlying graph has no K_{2,s}."""
    import random as _random
    for attempt in range(20):
        rng = _random.Random(derive_seed(seed, "k2s", n, m, s, attempt))
        universe = [(u, v) for u in range(n) for v in range(n) if u != v]
        rng.shuffle(universe)
        und = [set() for _ in range(n)]
        out = [set() for _ in range(n)]
        arcs = []
        for u, v in universe:
            if len(arcs) == m:
                break
            if v in und[u]:  # digon: underlying graph unchanged
                out[u].add(v)
                arcs.append((u, v))
                continue
            # pairs gaining a common neighbour: (u, x) for x in und(v),
            # (v, y) for y in und(u)
            ok = True
            for x in und[v]:
                if x != u and len(und[u] & und[x]) + 1 >= s:
                    ok = False
                    break
            if ok:
                for y in und[u]:
                    if y != v and len(und[v] & und[y]) + 1 >= s:
                        ok = False
                        break
            if ok:
                und[u].add(v)
                und[v].add(u)
                out[u].add(v)
                arcs.append((u, v))
        if len(arcs) == m:
            return build_digraph(n, arcs)
    raise errors.InfeasibleAfterRetries(f"k2s host n={n} m={m} s={s}")


def _host_with_girth(n, m, girth, seed):
    """Random oriented digraph of underlying girth >= `girth`."""
    import random as _random
    for attempt in range(20):
        rng = _random.Random(derive_seed(seed, "girth", n, m, girth, attempt))
        universe = [(u, v) for u in range(n) for v in range(n) if u != v]
        rng.shuffle(universe)
        und = [set() for _ in range(n)]
        arcs = []
        for u, v in universe:
            if len(arcs) == m:
                break
            if v in und[u]:  # keep it oriented: no digons
                continue
            D_partial = und
            if _und_distance(D_partial, u, v) >= girth - 1:
                und[u].add(v)
                und[v].add(u)
                arcs.append((u, v))
        if len(arcs) == m:
            return build_digraph(n, arcs)
    raise errors.InfeasibleAfterRetries(f"girth host n={n} m={m} g={girth}")


def _und_distance(und, u, v):
    from collections import deque
    if u == v:
        return 0
    dist = {u: 0}
    dq = deque([u])
    while dq:
        x = dq.popleft()
        for y in und[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                if y == v:
                    return dist[y]
                dq.append(y)
    return 10**9


def cmd_explore(args) -> int:
    k = args.k
    cat = enumerate_oriented_trees(k)
    findings = []
    hosts_tried = 0
    for trial in range(args.trials):
        trial_seed = derive_seed(args.seed, "explore", trial)
        try:
            if args.problem == "forbidden_family":
                if args.hosts == "blowup":
                    host = gen_blowup_cycle(3, args.s)
                else:
                    forbid = frozenset(FourCycleType[t] for t in
                                       args.forbid.split(","))
                    host = gen_random_digraph(args.n, args.m, forbid,
                                              trial_seed)
            elif args.problem == "k2s":
                host = _host_avoiding_k2s(args.n, args.m, args.s, trial_seed)
            else:  # girth
                host = _host_with_girth(args.n, args.m, 2 * args.ell + 1,
                                        trial_seed)
        except errors.InfeasibleAfterRetries:
            continue
        hosts_tried += 1
        prof = degree_profile(host)
        if 2 * prof.delta_zero < k:
            continue
        for ti, T in enumerate(cat.trees):
            tree_max = max(T.deg(v) for v in range(T.n))
            if prof.Delta_pm < tree_max:
                continue
            res = oracle_embed(T, host, args.budget)
            if res.is_no:
                findings.append({
                    "trial": trial, "seed": trial_seed, "tree_index": ti,
                    "tree_arcs": [list(a) for a in T.arcs],
                    "host_n": host.n,
                    "host_arcs": [list(a) for a in host.arcs],
                    "delta_strict": prof.Delta_pm > tree_max,
                    "oracle_nodes": res.nodes_expanded,
                })
    payload = _base_payload(args.seed)
    payload.update({"problem": args.problem, "k": k, "trials": args.trials,
                    "hosts_tried": hosts_tried, "findings": findings})
    lines = [f"problem={args.problem} k={k} hosts_tried={hosts_tried} "
             f"findings={len(findings)}"]
    for f in findings:
        lines.append(f"finding trial={f['trial']} tree={f['tree_index']} "
                     f"delta_strict={f['delta_strict']}")
    _emit(args, payload, lines)
    return _EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser():
    p = argparse.ArgumentParser(
        prog="oritree",
        description="Oriented-tree embeddings in digraphs without "
                    "oriented 4-cycles")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out=True):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        if out:
            sp.add_argument("--out", default=None)

    sp = sub.add_parser("stats", help="degree profile and 4-cycle summary")
    sp.add_argument("digraph")
    common(sp)
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("embed", help="embed a tree file into a digraph file")
    sp.add_argument("tree")
    sp.add_argument("digraph")
    sp.add_argument("--mode", choices=sorted(_MODES), default="general")
    sp.add_argument("--budget", type=int, default=10**6)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--assert-constructive", action="store_true")
    sp.add_argument("--oracle", action="store_true",
                    help="raise the fallback budget for a decisive answer")
    sp.add_argument("--certificate", default=None)
    common(sp)
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("verify",
                        help="randomized verification over built-in families")
    sp.add_argument("--mode", choices=sorted(_MODES), default="general")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=10**6)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("generate", help="write instance files")
    sp.add_argument("--kind", required=True,
                    choices=("two_clique", "blowup", "girth6",
                             "oriented_girth6", "random_digraph", "tree"))
    sp.add_argument("--k", type=int, default=6)
    sp.add_argument("--len", type=int, default=3)
    sp.add_argument("--s", type=int, default=2)
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--n", type=int, default=10)
    sp.add_argument("--m", type=int, default=20)
    sp.add_argument("--constraint", default="none",
                    choices=("none", "c4_free", "c4_star_free"))
    sp.add_argument("--tree-kind", default="any",
                    choices=("any", "antidirected", "out_arborescence",
                             "path", "spider"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("peel", help="peel to a pseudo-semidegree threshold")
    sp.add_argument("digraph")
    sp.add_argument("--d", required=True, help="threshold, e.g. 2 or 5/2")
    sp.add_argument("--out", default=None)
    sp.add_argument("--trace", default=None, help="JSON trace path")
    sp.set_defaults(func=cmd_peel)

    sp = sub.add_parser("catalog", help="write all k-arc oriented trees")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--out-dir", required=True)
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("explore",
                        help="counterexample search harnesses (no ground "
                             "truth asserted)")
    sp.add_argument("--problem", required=True,
                    choices=("forbidden_family", "k2s", "girth"))
    sp.add_argument("--k", type=int, default=4)
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--m", type=int, default=20)
    sp.add_argument("--s", type=int, default=3)
    sp.add_argument("--ell", type=int, default=2)
    sp.add_argument("--forbid", default="Directed",
                    help="comma-separated cycle types hosts must avoid")
    sp.add_argument("--hosts", choices=("random", "blowup"), default="random")
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=10**6)
    common(sp)
    sp.set_defaults(func=cmd_explore)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_INPUT
    except errors.OritreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
