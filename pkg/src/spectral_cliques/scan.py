"""Corpus generation/ingestion and bulk inequality scanning.

A scan walks a corpus (exhaustive labeled graphs, a graph6 file, or a
seeded random family), evaluates a configured set of checks with parameter
grids on every graph passing the filters, and aggregates violations,
equality cases, and the tightest instances.  Work is split into fixed-size
chunks whose partial results merge in chunk order, so the outcome is
byte-identical no matter how many workers run.

Check names: wilf, maxmu, maxmu1, polyn, theorem1, theorem2, theorem3,
conjecture, oldin, momo, edge_corollary, stability.  All are hard claims
except ``conjecture``: its violations are discoveries to persist, not test
failures.
"""

from __future__ import annotations

import bisect
import multiprocessing
import time
from dataclasses import dataclass, field

from . import bounds
from .bounds import DEFAULT_TOLS, Tolerances
from .cliques import CliqueProfile, clique_counts, is_kfree, moon_moser_check
from .graphs import (Graph, graph_from_edge_mask, is_bipartite, is_connected,
                     emit_graph6, mask_members, mix64, parse_graph6, random_graph)
from .spectral import WalkOverflowError, WalkProfile
from .stability import EXHAUSTIVE_MAX_N, alpha_limit, stability_premise, stability_report

EXHAUSTIVE_LIMIT = 7
EXHAUSTIVE_OVERRIDE_LIMIT = 8
_CHUNK_MASKS = 4096
_CHUNK_ITEMS = 512

# outcome statuses
OOD = "ood"
HOLDS = "holds"
EQUALITY = "equality"
VIOLATION = "violation"
INCONCLUSIVE = "inconclusive"

CHECK_AXES: dict[str, tuple[str, ...]] = {
    "wilf": (),
    "maxmu": ("s",),
    "maxmu1": (),
    "polyn": (),
    "theorem1": ("r",),
    "theorem2": ("r",),
    "theorem3": ("r", "s", "alpha"),
    "conjecture": ("r",),
    "oldin": ("s", "l"),
    "momo": (),
    "edge_corollary": ("r", "alpha"),
    "stability": ("r", "alpha"),
}

CHECK_DEFAULTS: dict[str, dict[str, tuple | None]] = {
    "maxmu": {"s": (1, 2, 3, 4)},
    "theorem1": {"r": (2, 3, 4)},
    "theorem2": {"r": (2, 3)},
    "theorem3": {"r": (2, 3), "s": None, "alpha": (0,)},
    "conjecture": {"r": (2, 3)},
    "oldin": {"s": None, "l": (2, 3)},
    "edge_corollary": {"r": (2, 3), "alpha": (0,)},
    "stability": {"r": (2, 3), "alpha": None},
}

#: checks whose failures are discoveries rather than bugs
CONJECTURE_CHECKS = frozenset({"conjecture"})


@dataclass(frozen=True)
class CorpusSpec:
    """What to scan.

    kind "exhaustive" (all labeled graphs of order n, edge-mask order),
    "file" (graph6 lines), or "random" (n, p, count, seed; item i is seeded
    by mix64(seed, i) so corpora are order-independent).  Filters:
    "connected", "nonbipartite", "kfree:R" (clique number at most R).
    """

    kind: str
    n: int | None = None
    path: str | None = None
    p: float | None = None
    count: int | None = None
    seed: int | None = None
    filters: tuple[str, ...] = ()
    allow_n8: bool = False


@dataclass
class ScanConfig:
    """Named checks with parameter grids, plus ranking and tolerance knobs.

    ``checks`` maps a check name to {axis: values}; missing axes fall back
    to per-check defaults (oldin expands s over 2..omega per graph,
    stability takes the largest admissible alpha per r).
    """

    checks: dict[str, dict]
    top_k: int = 10
    tol_scale: float = 1.0
    stability_mode: str = "exhaustive"


@dataclass
class ScanResult:
    graphs_checked: int = 0
    violations: list[dict] = field(default_factory=list)
    equalities: list[dict] = field(default_factory=list)
    tightest: list[dict] = field(default_factory=list)
    out_of_domain: int = 0
    timing_s: float = 0.0

    def theorem_violations(self) -> list[dict]:
        return [v for v in self.violations if v["check"] not in CONJECTURE_CHECKS]

    def conjecture_violations(self) -> list[dict]:
        return [v for v in self.violations if v["check"] in CONJECTURE_CHECKS]

    def to_json_dict(self, deterministic_timing: bool = False) -> dict:
        return {
            "graphs_checked": self.graphs_checked,
            "violations": self.violations,
            "equalities": self.equalities,
            "tightest": self.tightest,
            "out_of_domain": self.out_of_domain,
            "timing_s": None if deterministic_timing else self.timing_s,
        }


@dataclass
class CheckOutcome:
    """One evaluation, normalized for aggregation."""

    check: str
    params: dict
    status: str
    lhs: float | None
    rhs: float | None
    slack: float | None
    report: object | None = None

    def record(self, graph6: str) -> dict:
        return {
            "graph6": graph6,
            "check": self.check,
            "params": dict(self.params),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
        }


# ---------------------------------------------------------------------------
# corpora


def enumerate_labeled(n: int, allow_n8: bool = False):
    """Yield all 2^(n(n-1)/2) labeled graphs of order n in edge-mask order."""
    limit = EXHAUSTIVE_OVERRIDE_LIMIT if allow_n8 else EXHAUSTIVE_LIMIT
    if not 1 <= n <= limit:
        raise ValueError(f"exhaustive enumeration limited to 1..{limit} vertices")
    for mask in range(1 << (n * (n - 1) // 2)):
        yield graph_from_edge_mask(n, mask)


def read_graph6_lines(path: str) -> list[str]:
    """graph6 lines from a file; blanks and '#' comments are skipped, and a
    leading '>>graph6<<' marker is tolerated."""
    lines = []
    with open(path, "r", encoding="ascii") as fh:
        for raw in fh:
            line = raw.strip()
            if line.startswith(">>graph6<<"):
                line = line[len(">>graph6<<"):]
            if not line or line.startswith("#"):
                continue
            lines.append(line)
    return lines


def _passes_filters(g: Graph, filters: tuple[str, ...]) -> bool:
    for f in filters:
        if f == "connected":
            if not is_connected(g):
                return False
        elif f == "nonbipartite":
            if is_bipartite(g):
                return False
        elif f.startswith("kfree:"):
            r = int(f.split(":", 1)[1])
            if not is_kfree(g, r + 1):
                return False
        else:
            raise ValueError(f"unknown corpus filter {f!r}")
    return True


# ---------------------------------------------------------------------------
# check dispatch


def _outcome(rep: bounds.BoundReport) -> CheckOutcome:
    if not rep.in_domain:
        status = OOD
    elif not rep.holds:
        status = VIOLATION
    elif rep.equality:
        status = EQUALITY
    else:
        status = HOLDS
    return CheckOutcome(rep.name, rep.params, status, rep.lhs, rep.rhs,
                        rep.slack, rep)


def run_check(name: str, g: Graph, params: dict, tols: Tolerances = DEFAULT_TOLS,
              stability_mode: str = "exhaustive") -> list[CheckOutcome]:
    """Evaluate one named check on one graph; oldin with s=None expands over
    every valid clique size."""
    if name == "wilf":
        return [_outcome(bounds.wilf_bound(g, tols))]
    if name == "maxmu":
        return [_outcome(bounds.walk_power_bound(g, params["s"], tols))]
    if name == "maxmu1":
        return [_outcome(bounds.turan_edge_bound(g, tols))]
    if name == "polyn":
        return [_outcome(bounds.polyn_bound(g, tols))]
    if name == "theorem1":
        return [_outcome(bounds.theorem1_bound(g, params["r"], tols))]
    if name == "theorem2":
        return [_outcome(bounds.theorem2_lower(g, params["r"], tols))]
    if name == "theorem3":
        return [_theorem3_outcome(g, params, tols)]
    if name == "conjecture":
        return [_outcome(bounds.conjecture_check(g, params["r"], tols))]
    if name == "oldin":
        return _oldin_outcomes(g, params, tols)
    if name == "momo":
        return [_momo_outcome(g)]
    if name == "edge_corollary":
        return [_outcome(bounds.edge_corollary_check(g, params["r"], params["alpha"], tols))]
    if name == "stability":
        return [_stability_outcome(g, params, tols, stability_mode)]
    raise ValueError(f"unknown check {name!r}")


def _theorem3_outcome(g: Graph, params: dict, tols: Tolerances) -> CheckOutcome:
    rep = bounds.theorem3_conditional(g, params["r"], params["s"], params["alpha"], tols)
    con = rep.conclusion
    if not rep.in_domain:
        status = OOD
    elif not rep.implication_holds:
        status = VIOLATION
    elif rep.premise_holds:
        status = EQUALITY if con.equality else HOLDS
    else:
        status = HOLDS  # vacuously; no slack to rank
    slack = con.slack if rep.premise_holds else None
    return CheckOutcome("theorem3", rep.params, status, con.lhs, con.rhs, slack, rep)


def _oldin_outcomes(g: Graph, params: dict, tols: Tolerances) -> list[CheckOutcome]:
    omega = clique_counts(g).omega
    l = params["l"]
    s_values = range(2, omega + 1) if params.get("s") is None else [params["s"]]
    out = []
    for s in s_values:
        if not 2 <= s <= omega:
            out.append(CheckOutcome("oldin", {"s": s, "l": l}, OOD, None, None, None))
            continue
        out.append(_outcome(bounds.oldin_check(g, s, l, tols)))
    return out


def _momo_outcome(g: Graph) -> CheckOutcome:
    rep = moon_moser_check(g)
    if rep.monotone:
        return CheckOutcome("momo", {}, HOLDS, None, None, None, rep)
    for t, (a, b) in enumerate(zip(rep.ratios, rep.ratios[1:]), start=1):
        if b < a:
            return CheckOutcome("momo", {"t": t}, VIOLATION, float(a), float(b),
                                float(b - a), rep)
    raise AssertionError("non-monotone chain without a descent")


def _stability_outcome(g: Graph, params: dict, tols: Tolerances,
                       mode: str) -> CheckOutcome:
    r = params["r"]
    alpha = params["alpha"]
    if alpha is None:
        alpha = alpha_limit(r)
    out_params = {"r": r, "alpha": float(alpha)}
    if not stability_premise(g, r, alpha, tols):
        return CheckOutcome("stability", out_params, OOD, None, None, None)
    if mode == "exhaustive" and g.n > EXHAUSTIVE_MAX_N:
        mode = "heuristic"
    rep = stability_report(g, r, alpha, mode, tols)
    if rep.verdict == "witnessed":
        status = HOLDS
    elif rep.verdict == "exhaustive-miss":
        status = VIOLATION
    else:
        status = INCONCLUSIVE
    order = rep.witness.order if rep.witness else 0
    return CheckOutcome("stability", out_params, status, rep.order_min,
                        float(order), None, rep)


def expand_param_grid(name: str, grid: dict) -> list[dict]:
    """Materialize the parameter combinations for one check."""
    axes = CHECK_AXES[name]
    if not axes:
        return [{}]
    defaults = CHECK_DEFAULTS.get(name, {})
    values: list[tuple] = []
    for axis in axes:
        vals = grid.get(axis, defaults.get(axis))
        if vals is None:
            values.append((None,))
        else:
            vals = tuple(vals)
            if not vals:
                raise ValueError(f"empty grid for axis {axis!r} of check {name!r}")
            values.append(vals)
    combos = []
    for combo in _product(values):
        params = dict(zip(axes, combo))
        if name == "theorem3":
            if params["s"] is None:
                for s in range(1, params["r"] + 1):
                    combos.append({**params, "s": s})
                continue
            if params["s"] > params["r"]:
                continue
        combos.append(params)
    return combos


def _product(values: list[tuple]) -> list[tuple]:
    out = [()]
    for vals in values:
        out = [prev + (v,) for prev in out for v in vals]
    return out


# ---------------------------------------------------------------------------
# scanning


_WORKER: dict = {}


def _init_scan_worker(corpus: CorpusSpec, config: ScanConfig) -> None:
    plan = [(name, expand_param_grid(name, grid))
            for name, grid in config.checks.items()]
    _WORKER.update(
        corpus=corpus,
        config=config,
        plan=plan,
        tols=DEFAULT_TOLS.scaled(config.tol_scale),
    )


def _chunk_graphs(chunk: tuple):
    corpus: CorpusSpec = _WORKER["corpus"]
    kind = chunk[0]
    if kind == "exhaustive":
        _, n, start, stop = chunk
        for mask in range(start, stop):
            yield graph_from_edge_mask(n, mask)
    elif kind == "lines":
        for line in chunk[1]:
            yield parse_graph6(line)
    else:
        _, start, stop = chunk
        for i in range(start, stop):
            yield random_graph(corpus.n, corpus.p, mix64(corpus.seed, i))


def _params_key(params: dict) -> tuple:
    return tuple(sorted(params.items()))


def _scan_chunk(chunk: tuple) -> dict:
    corpus: CorpusSpec = _WORKER["corpus"]
    config: ScanConfig = _WORKER["config"]
    tols: Tolerances = _WORKER["tols"]
    plan = _WORKER["plan"]
    top_k = config.top_k
    checked = 0
    ood = 0
    errors = 0
    violations: list[dict] = []
    equalities: list[dict] = []
    top: list[tuple] = []  # ((slack, graph6, check, params), record) ascending
    for g in _chunk_graphs(chunk):
        if not _passes_filters(g, corpus.filters):
            continue
        checked += 1
        g6: str | None = None
        for name, param_list in plan:
            for params in param_list:
                try:
                    outcomes = run_check(name, g, params, tols, config.stability_mode)
                except WalkOverflowError:
                    errors += 1
                    continue
                for oc in outcomes:
                    if oc.status == OOD:
                        ood += 1
                        continue
                    if oc.status == INCONCLUSIVE:
                        continue
                    if oc.status == VIOLATION:
                        if g6 is None:
                            g6 = emit_graph6(g)
                        violations.append(oc.record(g6))
                        continue
                    if oc.slack is None:
                        continue
                    slack = max(oc.slack, 0.0)
                    # reject clearly loose candidates before emitting graph6
                    if oc.status != EQUALITY and len(top) == top_k and slack > top[-1][0][0]:
                        continue
                    if g6 is None:
                        g6 = emit_graph6(g)
                    rec = oc.record(g6)
                    if oc.status == EQUALITY:
                        equalities.append(rec)
                    key = (slack, g6, oc.check, _params_key(oc.params))
                    if len(top) == top_k and key >= top[-1][0]:
                        continue
                    bisect.insort(top, (key, rec))
                    del top[top_k:]
    return {
        "checked": checked,
        "ood": ood,
        "errors": errors,
        "violations": violations,
        "equalities": equalities,
        "cands": top,
    }


def tightness_rank(records: list[dict], k: int) -> list[dict]:
    """The k holding evaluations with the smallest slack (clamped at zero);
    ties break on graph6 string, then check name, then parameters."""
    if k < 1:
        raise ValueError("k must be >= 1")
    items = sorted(
        ((max(rec["slack"], 0.0), rec["graph6"], rec["check"],
          _params_key(rec["params"])), rec)
        for rec in records if rec.get("slack") is not None)
    return [rec for _, rec in items[:k]]


def _make_chunks(corpus: CorpusSpec) -> list[tuple]:
    if corpus.kind == "exhaustive":
        n = corpus.n
        limit = EXHAUSTIVE_OVERRIDE_LIMIT if corpus.allow_n8 else EXHAUSTIVE_LIMIT
        if n is None or not 1 <= n <= limit:
            raise ValueError(f"exhaustive scans limited to 1..{limit} vertices")
        total = 1 << (n * (n - 1) // 2)
        return [("exhaustive", n, lo, min(lo + _CHUNK_MASKS, total))
                for lo in range(0, total, _CHUNK_MASKS)]
    if corpus.kind == "file":
        lines = read_graph6_lines(corpus.path)
        return [("lines", tuple(lines[lo:lo + _CHUNK_ITEMS]))
                for lo in range(0, len(lines), _CHUNK_ITEMS)] or [("lines", ())]
    if corpus.kind == "random":
        if corpus.n is None or corpus.p is None or corpus.count is None or corpus.seed is None:
            raise ValueError("random corpus needs n, p, count and seed")
        return [("random", lo, min(lo + _CHUNK_ITEMS, corpus.count))
                for lo in range(0, corpus.count, _CHUNK_ITEMS)] or [("random", 0, 0)]
    raise ValueError(f"unknown corpus kind {corpus.kind!r}")


def scan(corpus: CorpusSpec, config: ScanConfig, jobs: int = 1) -> ScanResult:
    """Run every configured check on every corpus graph passing the filters.

    Results are identical for any ``jobs``: chunk boundaries are fixed and
    partials merge in chunk order, with the tightest-instance ranking
    recomputed after the merge.
    """
    for name in config.checks:
        if name not in CHECK_AXES:
            raise ValueError(f"unknown check {name!r}")
    if config.top_k < 1:
        raise ValueError("top_k must be >= 1")
    started = time.perf_counter()
    chunks = _make_chunks(corpus)
    if jobs <= 1 or len(chunks) <= 1:
        _init_scan_worker(corpus, config)
        partials = [_scan_chunk(c) for c in chunks]
    else:
        with multiprocessing.Pool(processes=jobs, initializer=_init_scan_worker,
                                  initargs=(corpus, config)) as pool:
            partials = list(pool.imap(_scan_chunk, chunks, chunksize=1))
    result = ScanResult()
    cands: list[tuple] = []
    for part in partials:
        result.graphs_checked += part["checked"]
        result.out_of_domain += part["ood"] + part["errors"]
        result.violations.extend(part["violations"])
        result.equalities.extend(part["equalities"])
        cands.extend(part["cands"])
    cands.sort(key=lambda item: item[0])
    result.tightest = [rec for _, rec in cands[:config.top_k]]
    result.timing_s = time.perf_counter() - started
    return result


# ---------------------------------------------------------------------------
# brute-force oracles (independent of the production counting paths)


def brute_force_cliques(g: Graph) -> CliqueProfile:
    """Clique counts by enumerating all vertex subsets and testing
    pairwise adjacency."""
    if g.n > 20:
        raise ValueError("subset enumeration limited to n <= 20")
    counts = [0] * g.n
    for mask in range(1, 1 << g.n):
        bits = mask
        complete = True
        while bits:
            low = bits & -bits
            v = low.bit_length() - 1
            bits ^= low
            if g.adj[v] & mask != mask ^ low:
                complete = False
                break
        if complete:
            counts[mask.bit_count() - 1] += 1
    omega = max(s + 1 for s, c in enumerate(counts) if c > 0)
    return CliqueProfile(tuple(counts), omega)


def brute_force_walks(g: Graph, L: int) -> WalkProfile:
    """Walk counts by explicit enumeration of vertex sequences."""
    if L > 8 or g.n > 10:
        raise ValueError("walk enumeration limited to L <= 8 and n <= 10")
    if L < 1:
        raise ValueError("walk length must be >= 1")
    totals = [0] * L
    per = [[0] * g.n for _ in range(L)]
    nbrs = [mask_members(g.adj[u]) for u in range(g.n)]

    def extend(start: int, last: int, length: int) -> None:
        totals[length - 1] += 1
        per[length - 1][start] += 1
        if length == L:
            return
        for v in nbrs[last]:
            extend(start, v, length + 1)

    for u in range(g.n):
        extend(u, u, 1)
    return WalkProfile(tuple(totals), tuple(tuple(row) for row in per))
