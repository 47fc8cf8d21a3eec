"""Canonical network families, closed-form costs and brute-force optima.

Ownership conventions (fixed for reproducibility):

* ``DG_n``: both instances of every pair exist, one owned by each endpoint.
* ``DG_{n,k}``: the first ``k`` pairs in lexicographic order are doubled (one
  instance per endpoint); single pairs belong to the smaller endpoint.
* ``G_n``: every pair single, owned by the smaller endpoint.
* ``DS_n``: center ``0`` owns both instances toward every leaf.  A leaf that
  owns one of its two center edges can swap it to another leaf and save 1/2
  in expected distance, so leaf ownership never gives an equilibrium.
* ``F_n``: hub ``0``; triangles ``(0, 2i-1, 2i)``; each rim node owns its hub
  edge and the odd rim node owns the rim edge.
* ``C_n``: node ``i`` owns ``{i, i+1 mod n}``.
* ``P_n`` / ``DP_n`` (path / double path): node ``i`` owns the edge(s) to
  ``i+1``; in the double path both instances belong to ``i``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable, Sequence

from .cost import Model, social_distance
from .errors import PreconditionError, check_budget
from .extcost import INF, ExtCost, parse_alpha
from .graph import DEFAULT_CAP, Edge, OwnedMultiGraph, from_mults, mults_two_edge_connected, pairs

KINDS = ("DG", "DGk", "G", "DS", "F", "C", "P", "DP")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: int
    k: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown family {self.kind!r}; expected one of {KINDS}")
        n, k = self.n, self.k
        if n < 1:
            raise PreconditionError("family needs at least one node")
        if self.kind == "DGk":
            if k is None or not 0 <= k <= comb(n, 2):
                raise PreconditionError(f"DG_{{n,k}} needs 0 <= k <= {comb(n, 2)}")
        elif k is not None:
            raise PreconditionError(f"family {self.kind} takes no k")
        if self.kind == "F" and (n < 3 or n % 2 == 0):
            raise PreconditionError("fan graph needs odd n >= 3")
        if self.kind == "C" and n < 3:
            raise PreconditionError("cycle needs n >= 3")
        if self.kind == "DS" and n < 2:
            raise PreconditionError("double star needs n >= 2")

    @property
    def label(self) -> str:
        if self.kind == "DGk":
            return f"DG_{{{self.n},{self.k}}}"
        return f"{self.kind}_{self.n}"


def _parse_kind(text: str) -> FamilySpec:
    """Parse short names such as ``dg4``, ``dg4-2``, ``ds5``, ``c6``, ``path3``."""
    m = re.fullmatch(r"([a-z\-]+?)-?(\d+)(?:[-,](\d+))?", text.strip().lower())
    if not m:
        raise PreconditionError(f"cannot parse family name {text!r}")
    name, n, k = m.group(1), int(m.group(2)), m.group(3)
    table = {"dg": "DG", "g": "G", "k": "G", "ds": "DS", "f": "F", "c": "C",
             "p": "P", "path": "P", "dp": "DP", "double-path": "DP", "dpath": "DP"}
    if name not in table:
        raise PreconditionError(f"unknown family name {text!r}")
    kind = table[name]
    if k is not None:
        if kind != "DG":
            raise PreconditionError(f"family {kind} takes no k")
        return FamilySpec("DGk", n, int(k))
    return FamilySpec(kind, n)


def parse_family(text: str) -> FamilySpec:
    return _parse_kind(text)


def build_family(spec: FamilySpec | str) -> OwnedMultiGraph:
    if isinstance(spec, str):
        spec = parse_family(spec)
    n, kind = spec.n, spec.kind
    edges = []
    if kind in ("DG", "DGk", "G"):
        doubled = {"DG": comb(n, 2), "G": 0, "DGk": spec.k}[kind]
        for i, (a, b) in enumerate(pairs(n)):
            edges.append(Edge(a, b, a))
            if i < doubled:
                edges.append(Edge(a, b, b))
    elif kind == "DS":
        for leaf in range(1, n):
            edges += [Edge(0, leaf, 0), Edge(0, leaf, 0)]
    elif kind == "F":
        for i in range(1, n, 2):
            a, b = i, i + 1
            edges += [Edge(0, a, a), Edge(0, b, b), Edge(a, b, a)]
    elif kind == "C":
        for i in range(n):
            edges.append(Edge(i, (i + 1) % n, i))
    elif kind == "P":
        edges = [Edge(i, i + 1, i) for i in range(n - 1)]
    elif kind == "DP":
        for i in range(n - 1):
            edges += [Edge(i, i + 1, i), Edge(i, i + 1, i)]
    return OwnedMultiGraph(n, tuple(edges))


def double_clique(n):
    return build_family(FamilySpec("DG", n))


def partially_doubled_clique(n, k):
    return build_family(FamilySpec("DGk", n, k))


def clique(n):
    return build_family(FamilySpec("G", n))


def double_star(n):
    return build_family(FamilySpec("DS", n))


def fan(n):
    return build_family(FamilySpec("F", n))


def cycle(n):
    return build_family(FamilySpec("C", n))


def path(n):
    return build_family(FamilySpec("P", n))


def double_path(n):
    return build_family(FamilySpec("DP", n))


def family_label(n: int, mults: Sequence[int]) -> str:
    """Name the known family this multigraph belongs to, up to relabeling, else ``"other"``."""
    mults = tuple(mults)
    ps = pairs(n)
    if n >= 2 and all(m >= 1 for m in mults) and max(mults) <= 2:
        k = sum(1 for m in mults if m == 2)
        if k == len(ps):
            return f"DG_{n}"
        if k == 0:
            return f"G_{n}"
        return f"DG_{{{n},{k}}}"
    deg = [0] * n
    present = [[] for _ in range(n)]
    for (a, b), m in zip(ps, mults):
        if m:
            present[a].append((b, m))
            present[b].append((a, m))
            deg[a] += 1
            deg[b] += 1
    if n >= 3:
        for h in range(n):
            if deg[h] != n - 1:
                continue
            hub_m = {m for _, m in present[h]}
            rest = [x for x in range(n) if x != h]
            if hub_m == {2} and all(deg[x] == 1 for x in rest):
                return f"DS_{n}"
            if hub_m == {1} and n % 2 == 1 and all(
                deg[x] == 2 and all(m == 1 for _, m in present[x]) for x in rest
            ):
                return f"F_{n}"
    if n >= 3 and all(m <= 1 for m in mults) and sum(mults) == n and all(d == 2 for d in deg):
        if mults_two_edge_connected(n, mults):
            return f"C_{n}"
    return "other"


def analytic_cost_dgnk(n: int, k: int, alpha) -> Fraction:
    """Closed-form social cost of ``DG_{n,k}`` with ``|E| = C(n,2) + k``."""
    c = comb(n, 2)
    if not 0 <= k <= c:
        raise PreconditionError(f"k must lie in 0..{c}")
    alpha = parse_alpha(alpha)
    return alpha * (c + k) + n * (n - 1) + Fraction(2 * (c - k), c + k)


def dg_deletion_distance(n: int, k: int) -> Fraction:
    """Expected distance cost in ``DG_n`` of an agent after deleting ``k`` owned edges."""
    return (n - 1) + Fraction(k, n * (n - 1) - k)


def ds_purchase_distance(n: int, k: int) -> Fraction:
    """Expected distance cost of a ``DS_n`` leaf after buying ``k`` single leaf edges."""
    return 2 * n - 3 - k + Fraction(k, 2 * (n - 1) + k)


def partial_doubling_window(n: int, k: int) -> tuple:
    """Edge-price interval in which ``DG_{n,k}`` is optimal (``1 <= k < C(n,2)``)."""
    c = comb(n, 2)
    top = 2 * n * (n - 1)
    return Fraction(top, (c + k) * (c + k + 1)), Fraction(top, (c + k) * (c + k - 1))


def double_clique_optimal_bound(n: int) -> Fraction:
    return Fraction(2, n * (n - 1) - 1)


def clique_window(n: int) -> tuple:
    """``[4/(C(n,2)+1), 2 - 2/C(n,2))``; the upper end is open."""
    c = comb(n, 2)
    return Fraction(4, c + 1), 2 - Fraction(2, c)


# -- brute-force optimum -------------------------------------------------------

@dataclass
class OptimumResult:
    n: int
    alpha: Fraction
    cap: int
    cost: ExtCost
    minimizers: list  # pair-multiplicity vectors in enumeration order

    @property
    def edge_counts(self) -> list:
        return sorted({sum(m) for m in self.minimizers})

    def graphs(self) -> list:
        return [from_mults(self.n, m) for m in self.minimizers]

    def labels(self) -> list:
        return [family_label(self.n, m) for m in self.minimizers]


def all_multigraphs(n: int, cap: int) -> Iterable[tuple]:
    return product(range(cap + 1), repeat=len(pairs(n)))


def optimum_bruteforce(n: int, alpha, cap: int = DEFAULT_CAP, budget: int | None = None,
                       model: Model = Model.ADV) -> OptimumResult:
    """Every social-cost minimizer among all multigraphs with multiplicities <= cap.

    Candidates are visited by increasing edge count; a class is skipped once
    ``alpha*|E| + n(n-1)`` (every ordered pair at distance >= 1) already exceeds
    the best cost, which never discards a minimizer.
    """
    alpha = parse_alpha(alpha)
    check_budget((cap + 1) ** len(pairs(n)), budget)
    by_edges = {}
    for mults in all_multigraphs(n, cap):
        by_edges.setdefault(sum(mults), []).append(mults)
    best = INF
    minimizers = []
    floor = n * (n - 1) if model is not Model.KLIEMANN else 0
    for e_count in sorted(by_edges):
        if alpha * e_count + floor > best:
            if alpha > 0:
                break
            continue
        for mults in by_edges[e_count]:
            c = alpha * e_count + social_distance(model, n, mults)
            if c < best:
                best, minimizers = c, [mults]
            elif c == best and c != INF:
                minimizers.append(mults)
    minimizers.sort()
    return OptimumResult(n, alpha, cap, best, minimizers)


@dataclass
class MonotonicityRow:
    alpha: Fraction
    cost: ExtCost
    min_edges: int
    max_edges: int
    minimizer_count: int


def check_edge_monotonicity(n: int, alphas: Iterable, cap: int = DEFAULT_CAP,
                            budget: int | None = None) -> tuple:
    """Check that optimum edge counts never grow as the edge price grows.

    Any optimum at a smaller price must have at least as many edges as any
    optimum at a larger price, so the check compares the *fewest* edges at
    each price with the *most* edges at the next price.
    Returns ``(holds, rows)``.
    """
    grid = sorted({parse_alpha(a) for a in alphas})
    rows = []
    for a in grid:
        res = optimum_bruteforce(n, a, cap, budget)
        counts = [sum(m) for m in res.minimizers]
        rows.append(MonotonicityRow(a, res.cost, min(counts), max(counts), len(counts)))
    holds = all(lo.min_edges >= hi.max_edges for lo, hi in zip(rows, rows[1:]))
    return holds, rows
