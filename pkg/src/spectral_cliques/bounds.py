"""Inequality evaluators producing auditable reports.

Every report is normalized so that "holds" means slack = rhs - lhs is not
below -eps, regardless of the direction the inequality is usually written
in.  Clique and walk quantities are exact integers; powers of the spectral
radius are floating point; premise products with rational alpha stay in
exact rationals, so holds/equality verdicts of the exact checks carry no
tolerance at all.

Verdicts that land inside the tolerance band (or below it) are recomputed
with the independent Jacobi eigensolver at a 100x tighter sweep threshold
before being classified; such reports carry ``refined=True``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .cliques import clique_counts, is_kfree, vertex_clique_counts
from .graphs import Graph
from .spectral import JACOBI_SWEEP_TOL, Spectrum, spectrum, walk_counts


@dataclass(frozen=True)
class Tolerances:
    """Relative epsilons: ``hold`` for violation detection, ``equality``
    for tight-case detection.  Both scale with max(1, |lhs|, |rhs|)."""

    hold: float = 1e-7
    equality: float = 1e-6

    def scaled(self, factor: float) -> "Tolerances":
        return Tolerances(self.hold * factor, self.equality * factor)


DEFAULT_TOLS = Tolerances()


@dataclass
class BoundReport:
    """One inequality evaluation with slack oriented so >= 0 means holds."""

    name: str
    params: dict
    lhs: float | None
    rhs: float | None
    slack: float | None
    scale: float
    holds: bool
    equality: bool
    in_domain: bool = True
    exact: bool = False
    refined: bool = False

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": dict(self.params),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "scale": self.scale,
            "holds": self.holds,
            "equality": self.equality,
            "in_domain": self.in_domain,
            "exact": self.exact,
            "refined": self.refined,
        }


def _report(name: str, params: dict, lhs: float, rhs: float, tols: Tolerances,
            *, exact_slack: Fraction | int | None = None, in_domain: bool = True,
            refined: bool = False) -> BoundReport:
    lhs_f = float(lhs)
    rhs_f = float(rhs)
    slack = rhs_f - lhs_f
    scale = max(1.0, abs(lhs_f), abs(rhs_f))
    if exact_slack is not None:
        holds = exact_slack >= 0
        equality = exact_slack == 0
        exact = True
    else:
        holds = slack >= -tols.hold * scale
        equality = abs(slack) <= tols.equality * scale
        exact = False
    return BoundReport(name, params, lhs_f, rhs_f, slack, scale, holds,
                       equality, in_domain=in_domain, exact=exact, refined=refined)


def _skipped(name: str, params: dict) -> BoundReport:
    """Out-of-domain placeholder; no sides are computed."""
    return BoundReport(name, params, None, None, None, 1.0, True, False,
                       in_domain=False)


def _refined_spectrum(g: Graph) -> Spectrum:
    return spectrum(g, solver="jacobi", sweep_tol=0.01 * JACOBI_SWEEP_TOL * g.n)


def _mu_report(name: str, params: dict, g: Graph, tols: Tolerances,
               build: Callable[[Spectrum], tuple[float, float]]) -> BoundReport:
    """Build an eigenvalue-dependent report; re-verify near misses with the
    second solver before classifying them."""
    lhs, rhs = build(spectrum(g))
    rep = _report(name, params, lhs, rhs, tols)
    if rep.slack < tols.hold * rep.scale:
        lhs, rhs = build(_refined_spectrum(g))
        rep = _report(name, params, lhs, rhs, tols, refined=True)
    return rep


# ---------------------------------------------------------------------------
# spectral radius vs clique counts


def wilf_bound(g: Graph, tols: Tolerances = DEFAULT_TOLS) -> BoundReport:
    """mu <= (1 - 1/omega) n."""
    omega = clique_counts(g).omega
    return _mu_report("wilf", {}, g, tols,
                      lambda sp: (sp.mu, (omega - 1) / omega * g.n))


def walk_power_bound(g: Graph, s: int, tols: Tolerances = DEFAULT_TOLS) -> BoundReport:
    """mu^s <= (1 - 1/omega) w_s; reduces to the Wilf bound at s = 1."""
    if s < 1:
        raise ValueError("walk power s must be >= 1")
    omega = clique_counts(g).omega
    ws = walk_counts(g, s).total(s)
    return _mu_report("maxmu", {"s": s}, g, tols,
                      lambda sp: (sp.mu ** s, (omega - 1) / omega * ws))


def turan_edge_bound(g: Graph, tols: Tolerances = DEFAULT_TOLS) -> BoundReport:
    """m <= (1 - 1/omega) n^2 / 2; tight when omega divides n."""
    omega = clique_counts(g).omega
    rhs = Fraction(omega - 1, 2 * omega) * g.n * g.n
    return _report("maxmu1", {}, g.m, rhs, tols, exact_slack=rhs - g.m)


def polyn_bound(g: Graph, tols: Tolerances = DEFAULT_TOLS) -> BoundReport:
    """mu^omega <= sum_{s=2}^{omega} (s-1) k_s mu^(omega-s).

    Equality characterizes complete multipartite graphs with possibly some
    isolated vertices; the cross-check lives with the recognizer.
    """
    prof = clique_counts(g)
    omega = prof.omega
    if omega == 1:
        return _report("polyn", {"omega": 1}, 0.0, 0.0, tols)

    def build(sp: Spectrum) -> tuple[float, float]:
        mu = sp.mu
        rhs = sum((s - 1) * prof.count(s) * mu ** (omega - s)
                  for s in range(2, omega + 1))
        return mu ** omega, rhs

    return _mu_report("polyn", {"omega": omega}, g, tols, build)


def theorem1_bound(g: Graph, r: int, tols: Tolerances = DEFAULT_TOLS) -> BoundReport:
    """mu^(r+1) <= (r+1) k_{r+1} + sum_{s=2}^{r} (s-1) k_s mu^(r+1-s),
    for any r >= 2 (sizes above omega contribute nothing)."""
    if r < 2:
        raise ValueError("r must be >= 2")
    prof = clique_counts(g)

    def build(sp: Spectrum) -> tuple[float, float]:
        mu = sp.mu
        rhs = (r + 1) * prof.count(r + 1) + sum(
            (s - 1) * prof.count(s) * mu ** (r + 1 - s) for s in range(2, r + 1))
        return mu ** (r + 1), rhs

    return _mu_report("theorem1", {"r": r}, g, tols, build)


def theorem2_lower(g: Graph, r: int, tols: Tolerances = DEFAULT_TOLS) -> BoundReport:
    """k_{r+1} >= (mu/n - 1 + 1/r) (r(r-1)/(r+1)) (n/r)^(r+1).

    Oriented with the bound expression on the lhs, so slack >= 0 still
    means the count is large enough; negative bounds are reported as-is.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    k = clique_counts(g).count(r + 1)
    n = g.n

    def build(sp: Spectrum) -> tuple[float, float]:
        bound = (sp.mu / n - 1.0 + 1.0 / r) * (r * (r - 1) / (r + 1)) * (n / r) ** (r + 1)
        return bound, float(k)

    return _mu_report("theorem2", {"r": r}, g, tols, build)


# ---------------------------------------------------------------------------
# conditional clique-count lower bound


@dataclass
class Theorem3Report:
    """Premise/conclusion pair of the conditional clique-count bound.

    The hypothesis r < omega is reported as a domain gate rather than mixed
    into the implication, so vacuous cases stay visible.
    """

    params: dict
    premise_holds: bool
    in_domain: bool
    conclusion: BoundReport
    implication_holds: bool
    name: str = "theorem3"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": dict(self.params),
            "premise_holds": self.premise_holds,
            "in_domain": self.in_domain,
            "implication_holds": self.implication_holds,
            "conclusion": self.conclusion.to_dict(),
        }


def _as_fraction(alpha) -> Fraction:
    """Exact rational view of alpha.

    Fractions, ints and decimal strings convert exactly; floats are taken
    at their exact binary value.
    """
    if isinstance(alpha, Fraction):
        return alpha
    if isinstance(alpha, int):
        return Fraction(alpha)
    if isinstance(alpha, str):
        return Fraction(alpha)
    return Fraction(alpha)


@lru_cache(maxsize=65536)
def _premise_threshold(n: int, r: int, s: int, alpha: Fraction) -> Fraction:
    prod = Fraction(1)
    for t in range(1, s + 1):
        prod *= Fraction(r - t, r * t) + alpha
    return prod * Fraction(n) ** (s + 1)


@lru_cache(maxsize=65536)
def _conclusion_threshold(n: int, r: int, alpha: Fraction) -> Fraction:
    return alpha * Fraction(r * r, r + 1) * Fraction(n, r) ** (r + 1)


def theorem3_conditional(g: Graph, r: int, s: int, alpha,
                         tols: Tolerances = DEFAULT_TOLS) -> Theorem3Report:
    """If (s+1) k_{s+1} >= n^(s+1) prod_{t=1..s} ((r-t)/(rt) + alpha), then
    k_{r+1} >= alpha (r^2/(r+1)) (n/r)^(r+1).

    Both sides are evaluated in exact rationals.  in_domain is r < omega.
    """
    if not 1 <= s <= r:
        raise ValueError("need 1 <= s <= r")
    if r < 1:
        raise ValueError("r must be >= 1")
    a = _as_fraction(alpha)
    if a < 0:
        raise ValueError("alpha must be >= 0")
    prof = clique_counts(g)
    n = g.n
    premise_lhs = (s + 1) * prof.count(s + 1)
    premise_rhs = _premise_threshold(n, r, s, a)
    premise = premise_lhs >= premise_rhs
    bound = _conclusion_threshold(n, r, a)
    k = prof.count(r + 1)
    conclusion = _report("theorem3", {"r": r, "s": s, "alpha": float(a)},
                         bound, k, tols, exact_slack=k - bound)
    in_domain = r < prof.omega
    implication = (not premise) or conclusion.holds
    return Theorem3Report(
        params={"r": r, "s": s, "alpha": float(a)},
        premise_holds=premise,
        in_domain=in_domain,
        conclusion=conclusion,
        implication_holds=implication,
    )


# ---------------------------------------------------------------------------
# two-eigenvalue strengthening (open conjecture: violations are discoveries)


def conjecture_check(g: Graph, r: int, tols: Tolerances = DEFAULT_TOLS) -> BoundReport:
    """mu_1^2 + mu_2^2 <= (1 - 1/r) 2m for K_{r+1}-free graphs of order
    at least r+1.

    Graphs with a K_{r+1} or with fewer than r+1 vertices are out of
    domain (on order r the complete graph already exceeds the bound, so the
    claim starts one vertex later).  Near misses are re-verified with the
    second eigensolver before being reported.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    params = {"r": r}
    prof = clique_counts(g)
    if prof.omega > r or g.n < r + 1:
        return _skipped("conjecture", params)
    rhs = (r - 1) / r * 2.0 * g.m

    def build(sp: Spectrum) -> tuple[float, float]:
        return sp.mu ** 2 + sp.mu2 ** 2, rhs

    return _mu_report("conjecture", params, g, tols, build)


# ---------------------------------------------------------------------------
# per-vertex walk/clique inequality (exact integers)


def oldin_check(g: Graph, s: int, l: int, tols: Tolerances = DEFAULT_TOLS) -> BoundReport:
    """sum_u (k_s(u) w_{l+1}(u) - k_{s+1}(u) w_l(u)) <= (s-1) k_s w_l,
    exact on both sides (tolerance zero).

    Needs 2 <= s <= omega and l >= 2.
    """
    if l < 2:
        raise ValueError("walk length l must be >= 2")
    prof = clique_counts(g)
    if not 2 <= s <= prof.omega:
        raise ValueError(f"clique size s={s} outside 2..omega={prof.omega}")
    per = vertex_clique_counts(g)
    walks = walk_counts(g, l + 1)
    lhs = sum(per.count(u, s) * walks.at(l + 1, u) - per.count(u, s + 1) * walks.at(l, u)
              for u in range(g.n))
    rhs = (s - 1) * prof.count(s) * walks.total(l)
    return _report("oldin", {"s": s, "l": l}, lhs, rhs, tols, exact_slack=rhs - lhs)


# ---------------------------------------------------------------------------
# edge-count corollary of the walk-power bound under a spectral premise


def edge_corollary_check(g: Graph, r: int, alpha,
                         tols: Tolerances = DEFAULT_TOLS) -> BoundReport:
    """Under mu >= (1 - 1/r - alpha) n and K_{r+1}-freeness:
    m >= ((r-1)/(2r) - 2 alpha) n^2."""
    if r < 2:
        raise ValueError("r must be >= 2")
    a = _as_fraction(alpha)
    if a < 0:
        raise ValueError("alpha must be >= 0")
    params = {"r": r, "alpha": float(a)}
    if not is_kfree(g, r + 1):
        return _skipped("edge_corollary", params)
    thr = (1.0 - 1.0 / r - float(a)) * g.n
    if spectrum(g).mu < thr - tols.hold * max(1.0, abs(thr)):
        return _skipped("edge_corollary", params)
    bound = (Fraction(r - 1, 2 * r) - 2 * a) * g.n * g.n
    return _report("edge_corollary", params, bound, g.m, tols,
                   exact_slack=g.m - bound)
