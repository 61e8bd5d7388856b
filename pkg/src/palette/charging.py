"""Executable charging ledgers: certify ratio floors on concrete runs.

The scheme: every edge starts with its probability of being colored by the
run (0 or 1 for deterministic runs).  Relative to a target ratio C, an edge
keeps a surplus (value above C if the offline optimum colors it, its full
value otherwise), the surplus is moved around by a redistribution strategy,
and the certificate holds if every optimum edge ends with at least C.  Each
strategy here mirrors one guarantee: first-fit on trees at (k-1)/k, any
fair algorithm on trees at (2*sqrt(k)-2)/(2*sqrt(k)-1), and the biased
random pair strategy on two-colorable paths.

All ledger arithmetic is exact (fractions, extended with sqrt(5) where the
bias parameter needs it); the tight instances end with zero margin, which
floating point would turn into coin flips.
"""

from __future__ import annotations

import csv
import io
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from . import engine
from .adversaries import RevealSequence
from .exact import Sqrt5
from .graph import Graph, GraphError, path_positions
from .oracle import OptWitness, audit_witness


class ChargingError(RuntimeError):
    """An internal consistency rule of a charging strategy was violated."""


# ---------------------------------------------------------------------------
# the plain ledger


@dataclass
class ChargeLedger:
    """Initial values, surpluses and the running redistribution state."""

    C: object
    initial: dict[int, object]
    surplus: dict[int, object]
    plus: frozenset[int]  # edges with positive surplus
    minus: frozenset[int]  # edges with negative surplus (optimum-only edges)
    final: dict[int, object] = field(default_factory=dict)
    transfers: list[tuple[object, object, object]] = field(default_factory=list)

    def total_initial(self):
        return sum(self.initial.values())


def build_ledger(trace: engine.Trace, witness: OptWitness, C) -> ChargeLedger:
    """Ledger for a deterministic trace: per-edge values in {0, 1}."""
    if not 0 <= C <= 1:
        raise ValueError(f"target ratio must lie in [0, 1], got {C}")
    initial: dict[int, object] = {}
    surplus: dict[int, object] = {}
    for step in trace.steps:
        v = Fraction(1) if step.color is not None else Fraction(0)
        initial[step.edge] = v
        surplus[step.edge] = v - C if step.edge in witness.edges else v
    plus = frozenset(e for e, s in surplus.items() if s > 0)
    minus = frozenset(e for e, s in surplus.items() if s < 0)
    ledger = ChargeLedger(
        C=C,
        initial=initial,
        surplus=surplus,
        plus=plus,
        minus=minus,
        final=dict(initial),
    )
    return ledger


# ---------------------------------------------------------------------------
# verdict reports


@dataclass
class EdgeReport:
    edge: int
    klass: str  # double / single / opt-only / neither / critical / noncritical
    v_i: object
    v_f: object
    margin: object | None  # v_f - C for optimum edges, None otherwise
    case: str = ""


@dataclass
class VerdictReport:
    strategy: str
    C: object
    rows: list[EdgeReport]
    passed: bool
    min_margin: object | None

    def failures(self) -> list[EdgeReport]:
        return [r for r in self.rows if r.margin is not None and r.margin < 0]

    def write_csv(self, out) -> None:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["edge", "class", "v_i", "v_f", "margin", "case"])
        for r in self.rows:
            w.writerow(
                [
                    r.edge,
                    r.klass,
                    float(r.v_i),
                    float(r.v_f),
                    "" if r.margin is None else float(r.margin),
                    r.case,
                ]
            )

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


# ---------------------------------------------------------------------------
# tree machinery shared by the two tree strategies


@dataclass
class RootedView:
    """Parent relations of a tree from a chosen root."""

    root: int
    parent_vertex: list[int]  # -1 at the root
    parent_edge: list[int]  # -1 at the root
    children: list[list[int]]  # child edge ids per vertex

    def parent_side(self, g: Graph, eid: int) -> tuple[int, int]:
        """Endpoints of eid ordered (parent, child)."""
        u, v = g.endpoints(eid)
        return (u, v) if self.parent_edge[v] == eid else (v, u)


def rooted_view(g: Graph, root: int) -> RootedView:
    n = g.num_vertices
    if not 0 <= root < n:
        raise GraphError(f"root {root} out of range")
    if not g.is_tree():
        raise GraphError("charging strategies for trees require a tree")
    parent_vertex = [-1] * n
    parent_edge = [-1] * n
    children: list[list[int]] = [[] for _ in range(n)]
    stack = [root]
    seen = [False] * n
    seen[root] = True
    while stack:
        x = stack.pop()
        for f in g.incident[x]:
            y = g.other_end(f, x)
            if not seen[y]:
                seen[y] = True
                parent_vertex[y] = x
                parent_edge[y] = f
                children[x].append(f)
                stack.append(y)
    return RootedView(root, parent_vertex, parent_edge, children)


def largest_available_color(coloring, v: int, k: int) -> int:
    """Largest color in 1..k unused at v in the final coloring, else 0."""
    used = coloring.used_mask(v)
    for c in range(k, 0, -1):
        if not used >> (c - 1) & 1:
            return c
    return 0


def edge_classes(trace: engine.Trace, witness: OptWitness):
    """Split edges into double / single / opt-only and tally them per vertex.

    Returns (klass, tallies): klass maps edge id to one of 'double',
    'single', 'opt-only', 'neither'; tallies[v] is a dict with the counts
    d_c, d_d, d_s, d_r of incident colored / double / single / opt-only
    edges.
    """
    g = trace.graph
    klass: dict[int, str] = {}
    for step in trace.steps:
        e = step.edge
        if step.color is not None:
            klass[e] = "double" if e in witness.edges else "single"
        else:
            klass[e] = "opt-only" if e in witness.edges else "neither"
    tallies = [
        {"d_c": 0, "d_d": 0, "d_s": 0, "d_r": 0} for _ in range(g.num_vertices)
    ]
    for e, kl in klass.items():
        for v in g.endpoints(e):
            t = tallies[v]
            if kl == "double":
                t["d_c"] += 1
                t["d_d"] += 1
            elif kl == "single":
                t["d_c"] += 1
                t["d_s"] += 1
            elif kl == "opt-only":
                t["d_r"] += 1
    return klass, tallies


def _check_tree_preconditions(trace, witness):
    g = trace.graph
    if not g.is_tree():
        raise GraphError("charging strategies for trees require a tree")
    audit_witness(g, trace.k, witness)


def _first_fit_replay_matches(trace: engine.Trace) -> bool:
    replay = engine.run(
        engine.FirstFit(), RevealSequence(edges=trace.reveal_order(), k=trace.k)
    )
    return [s.color for s in replay.steps] == [s.color for s in trace.steps]


def ff_tree_charge(
    trace: engine.Trace, witness: OptWitness, *, root: int = 0
) -> VerdictReport:
    """Certify a first-fit run on a tree at ratio C = (k-1)/k.

    Redistribution: each colored edge sends 1/k up past its parent edge when
    that edge is double-colored with a higher color, and the rest of its
    surplus to its parent vertex; each vertex then settles its own rejected
    parent edge (up to C) and splits the rest among its rejected optimum
    child edges.  Two structural facts about first-fit (a vertex holds at
    least c/k after seeing color c; high-colored double edges are fed by
    their children) are checked on the way.
    """
    if not _first_fit_replay_matches(trace):
        raise ValueError("trace was not produced by first-fit; refusing to certify")
    _check_tree_preconditions(trace, witness)
    g, k = trace.graph, trace.k
    C = Fraction(k - 1, k)
    view = rooted_view(g, root)
    klass, tallies = edge_classes(trace, witness)
    color_of = {s.edge: s.color for s in trace.steps if s.color is not None}

    m = defaultdict(Fraction)  # value parked at each vertex after step 1
    via_credit = defaultdict(Fraction)  # step-1(a) value routed past each edge
    unit = Fraction(1, k)
    for e, c in color_of.items():
        x, _y = view.parent_side(g, e)
        surplus = 1 - C if klass[e] == "double" else Fraction(1)
        pe = view.parent_edge[x]
        if pe != -1 and klass[pe] == "double" and color_of[pe] > c:
            w = view.parent_vertex[x]
            m[w] += unit
            via_credit[pe] += unit
            surplus -= unit
        m[x] += surplus

    v_f: dict[int, object] = {}
    for e in klass:
        if klass[e] == "double":
            v_f[e] = C
        elif klass[e] == "single":
            v_f[e] = Fraction(0)
        else:
            v_f[e] = Fraction(0)
    received_from: dict[int, dict[int, object]] = defaultdict(dict)
    residual = defaultdict(Fraction)
    for v in range(g.num_vertices):
        rem = m[v]
        pe = view.parent_edge[v]
        if pe != -1 and klass[pe] == "opt-only":
            t = min(rem, C)
            v_f[pe] += t
            received_from[pe][v] = t
            rem -= t
        minus_children = [f for f in view.children[v] if klass[f] == "opt-only"]
        if minus_children and rem > 0:
            share = rem / len(minus_children)
            for f in minus_children:
                v_f[f] += share
                received_from[f][v] = share
            rem = Fraction(0)
        residual[v] = rem

    # structural facts of the strategy (violations mean a bug, not a bad run);
    # the vertex-holdings fact is checked where the guarantee invokes it:
    # below an uncolored (or absent) parent edge -- a merely single-colored
    # parent edge may itself hold one of the counted colors
    for e, c in color_of.items():
        x, _ = view.parent_side(g, e)
        pe = view.parent_edge[x]
        if pe == -1 or pe not in color_of:
            if m[x] < Fraction(c, k):
                raise ChargingError(
                    f"vertex {x} holds {m[x]} < {c}/{k} despite color {c} at a "
                    "child edge with no colored parent edge"
                )
    for e, c in color_of.items():
        if klass[e] != "double":
            continue
        x, _ = view.parent_side(g, e)
        if c > largest_available_color(trace.coloring, x, k):
            need = Fraction(k - tallies[x]["d_c"], k)
            if via_credit[e] < need:
                raise ChargingError(
                    f"high-colored double edge {e} routed only {via_credit[e]} "
                    f"< {need} past itself"
                )

    total_initial = sum(Fraction(1) for _ in color_of)
    total_final = sum(v_f.values()) + sum(residual.values())
    if total_final != total_initial:
        raise ChargingError("ledger leaked value during redistribution")

    # rejected non-optimum parent edges move no value, same as absent ones
    case_of_parent = {"double": "1", "single": "2", "opt-only": "3",
                      "neither": "2", "": "2"}
    rows = []
    for step in trace.steps:
        e = step.edge
        kl = klass[e]
        v_i = Fraction(1) if step.color is not None else Fraction(0)
        margin = v_f[e] - C if e in witness.edges else None
        case = ""
        if kl == "opt-only":
            x, _ = view.parent_side(g, e)
            pe = view.parent_edge[x]
            case = case_of_parent[klass[pe] if pe != -1 else ""]
        rows.append(EdgeReport(e, kl, v_i, v_f[e], margin, case))
    margins = [r.margin for r in rows if r.margin is not None]
    return VerdictReport(
        strategy="ff-tree",
        C=C,
        rows=rows,
        passed=all(mg >= 0 for mg in margins),
        min_margin=min(margins) if margins else None,
    )


def fair_ratio(k: int):
    """(2*sqrt(k)-2)/(2*sqrt(k)-1): exact for square k, float otherwise."""
    s = math.isqrt(k)
    if s * s == k:
        return Fraction(2 * s - 2, 2 * s - 1)
    r = math.sqrt(k)
    return (2 * r - 2) / (2 * r - 1)


def fair_tree_charge(
    trace: engine.Trace, witness: OptWitness, *, root: int = 0
) -> VerdictReport:
    """Certify any fair run on a tree at C = (2*sqrt(k)-2)/(2*sqrt(k)-1).

    Redistribution: every colored edge sends its whole surplus to its parent
    vertex; each vertex settles its rejected-optimum parent edge up to C and
    splits the rest among its rejected-optimum child edges.  For each
    rejected optimum edge whose child endpoint cannot already cover C, the
    case inequalities behind the guarantee are re-checked numerically on the
    run's actual vertex tallies.
    """
    if not engine.audit_fair(trace):
        raise ValueError("trace is not fair; refusing to certify")
    _check_tree_preconditions(trace, witness)
    g, k = trace.graph, trace.k
    C = fair_ratio(k)
    exact = isinstance(C, Fraction)
    zero = Fraction(0) if exact else 0.0
    view = rooted_view(g, root)
    klass, tallies = edge_classes(trace, witness)
    color_of = {s.edge: s.color for s in trace.steps if s.color is not None}

    # fairness facts on the final coloring
    for v in range(g.num_vertices):
        t = tallies[v]
        if t["d_d"] + t["d_r"] > k:
            raise ChargingError(f"optimum keeps more than k edges at vertex {v}")
    for step in trace.steps:
        if step.color is None:
            if tallies[step.u]["d_c"] + tallies[step.v]["d_c"] < k:
                raise ChargingError(
                    f"rejected edge {step.edge} sees fewer than k colored "
                    "edges in total; the run cannot have been fair"
                )

    m = defaultdict(lambda: zero)
    for e in color_of:
        x, _ = view.parent_side(g, e)
        m[x] += 1 - C if klass[e] == "double" else 1

    v_f: dict[int, object] = {
        e: (C if kl == "double" else zero) for e, kl in klass.items()
    }
    received_from: dict[int, dict[int, object]] = defaultdict(dict)
    residual = defaultdict(lambda: zero)
    for v in range(g.num_vertices):
        rem = m[v]
        pe = view.parent_edge[v]
        if pe != -1 and klass[pe] == "opt-only":
            t = min(rem, C)
            v_f[pe] += t
            received_from[pe][v] = t
            rem -= t
        minus_children = [f for f in view.children[v] if klass[f] == "opt-only"]
        if minus_children and rem > 0:
            share = rem / len(minus_children)
            for f in minus_children:
                v_f[f] += share
                received_from[f][v] = share
            rem = zero
        residual[v] = rem

    total_initial = len(color_of)
    total_final = sum(v_f.values()) + sum(residual.values())
    if exact:
        if total_final != total_initial:
            raise ChargingError("ledger leaked value during redistribution")
    elif abs(float(total_final) - total_initial) > 1e-9:
        raise ChargingError("ledger drifted by more than 1e-9")

    # rejected non-optimum parent edges move no value, same as absent ones
    case_of_parent = {"opt-only": "1", "single": "2", "double": "3",
                      "neither": "4", "": "4"}
    rows = []
    for step in trace.steps:
        e = step.edge
        kl = klass[e]
        v_i = Fraction(1) if step.color is not None else Fraction(0)
        margin = v_f[e] - C if e in witness.edges else None
        case = ""
        if kl == "opt-only":
            x, y = view.parent_side(g, e)
            pe = view.parent_edge[x]
            case = case_of_parent[klass[pe] if pe != -1 else ""]
            _check_fair_case(k, C, case, tallies[x], tallies[y], m[y], e)
        rows.append(EdgeReport(e, kl, v_i, v_f[e], margin, case))
    margins = [r.margin for r in rows if r.margin is not None]
    return VerdictReport(
        strategy="fair-tree",
        C=C,
        rows=rows,
        passed=all(mg >= 0 for mg in margins),
        min_margin=min(margins) if margins else None,
    )


def _check_fair_case(k, C, case, tx, ty, m_y, e):
    """Re-derive the case inequalities on the run's actual tallies.

    Only binding when the child endpoint cannot already pay C by itself; in
    that regime every colored edge there must be double-colored, and the
    three inequalities of the matching case must hold.
    """
    if m_y >= C:
        return
    if ty["d_c"] != ty["d_d"]:
        raise ChargingError(
            f"edge {e}: child endpoint holds less than C yet has a "
            "single-colored edge"
        )
    dcx, ddx, dcy = tx["d_c"], tx["d_d"], ty["d_c"]
    if case == "1":
        chain = [
            dcx + (1 - C) * dcy * (k - ddx - 1) >= C * k,
            dcx + (1 - C) * dcy * (k - dcx - 1) >= C * k,
            dcx + (1 - C) * (k - dcx) * (k - dcx - 1) >= C * k,
        ]
    elif case == "2":
        chain = [
            dcx - 1 + (1 - C) * dcy * (k - ddx) >= C * k,
            dcx - 1 + (1 - C) * dcy * (k - (dcx - 1)) >= C * k,
            dcx - 1 + (1 - C) * (k - dcx) * (k - (dcx - 1)) >= C * k,
        ]
    else:  # cases 3 and 4 share the calculation
        chain = [
            dcx + C - 1 + (1 - C) * dcy * (k - ddx) >= C * k,
            dcx + C - 1 + (1 - C) * dcy * (k - dcx) >= C * k,
            dcx + C - 1 + (1 - C) * (k - dcx) * (k - dcx) >= C * k,
        ]
    if not all(chain):
        raise ChargingError(f"edge {e}: case-{case} inequality chain failed {chain}")


def case1_polynomial(k: int, z, C=None):
    """The case-1 quadratic in the colored-degree variable z.

    Evaluates (1-C) z^2 + ((2k-1)C - (2k-2)) z + (1-C)(k^2-k); its minimum
    over the reals is C*k, attained at z = k - sqrt(k) when k is square.
    """
    if C is None:
        C = fair_ratio(k)
    return (1 - C) * z * z + ((2 * k - 1) * C - (2 * k - 2)) * z + (1 - C) * (
        k * k - k
    )


# ---------------------------------------------------------------------------
# randomized pair strategy on paths: analytic ledger


def _as_exact(p):
    if isinstance(p, Sqrt5):
        return p
    if isinstance(p, (int, Fraction)):
        return Fraction(p)
    if isinstance(p, float):
        return Fraction(p)  # exact binary expansion of the float
    raise TypeError(f"unsupported bias parameter type {type(p).__name__}")


def rp_competitive_ratio(p):
    """min(p^2 - p + 1, (2/3)(-p^2 + p + 1)), exactly."""
    p = _as_exact(p)
    same = p * p - p + 1
    mixed = Fraction(2, 3) * (-(p * p) + p + 1)
    return same if same <= mixed else mixed


def critical_edges(order) -> set[int]:
    """Steps (edge ids) whose path edge already had both neighbors revealed."""
    edges = order.edges if isinstance(order, RevealSequence) else list(order)
    positions = path_positions(edges)
    m = len(edges)
    reveal_of_pos = {pos: step for step, pos in enumerate(positions)}
    crit = set()
    for step, pos in enumerate(positions):
        if (
            pos - 1 in reveal_of_pos
            and pos + 1 in reveal_of_pos
            and reveal_of_pos[pos - 1] < step
            and reveal_of_pos[pos + 1] < step
        ):
            crit.add(step)
    return crit


def _component_depths(positions, crit):
    """Distance-plus-one from each run's earliest-revealed edge.

    Non-critical edges form contiguous runs of path positions; within a run
    the depth of an edge is its distance from the run's earliest edge plus
    one, so depths alternate parity along the run.
    """
    by_pos = {pos: step for step, pos in enumerate(positions)}
    noncrit_pos = sorted(pos for step, pos in enumerate(positions) if step not in crit)
    depth_by_step: dict[int, int] = {}
    run: list[int] = []

    def flush(run):
        if not run:
            return
        first = min(run, key=lambda pos: by_pos[pos])
        for pos in run:
            depth_by_step[by_pos[pos]] = abs(pos - first) + 1

    for pos in noncrit_pos:
        if run and pos != run[-1] + 1:
            flush(run)
            run = []
        run.append(pos)
    flush(run)
    return depth_by_step


def compute_l(order, step: int) -> int:
    """Depth of a non-critical edge in its non-critical run (1 = earliest)."""
    edges = order.edges if isinstance(order, RevealSequence) else list(order)
    crit = critical_edges(edges)
    if step in crit:
        raise ValueError(f"edge at step {step} is critical; depth is undefined")
    positions = path_positions(edges)
    return _component_depths(positions, crit)[step]


def rp_path_charge(order, p, *, C=None) -> VerdictReport:
    """Certify the biased random pair strategy on a path reveal order.

    Initial values are analytic: non-critical edges are always colored;
    a critical edge survives exactly when its two (independent) neighbors
    drew the same color, which depends only on their depth parities.  The
    redistribution moves half the slack from the neighbors (same-parity
    case) or the full slack of the even neighbor plus halves from the odd
    neighbor and the even neighbor's far mate (mixed case).  Over-drafts
    are checked, not assumed.
    """
    edges = order.edges if isinstance(order, RevealSequence) else list(order)
    if isinstance(order, RevealSequence) and order.k != 2:
        raise ValueError("the random pair strategy needs k = 2")
    p = _as_exact(p)
    if not (Fraction(1, 2) <= p <= 1):
        raise ValueError(f"p must lie in [1/2, 1], got {p}")
    target = rp_competitive_ratio(p) if C is None else C
    positions = path_positions(edges)
    by_pos = {pos: step for step, pos in enumerate(positions)}
    crit = critical_edges(edges)
    depth = _component_depths(positions, crit)

    one = Fraction(1)
    v_i: dict[int, object] = {}
    for step in range(len(edges)):
        if step not in crit:
            v_i[step] = one
            continue
        pos = positions[step]
        dl = depth[by_pos[pos - 1]]
        dr = depth[by_pos[pos + 1]]
        if dl % 2 != dr % 2:
            v_i[step] = 2 * p * (1 - p)
        else:
            v_i[step] = p * p + (1 - p) * (1 - p)

    slack = 1 - target
    outgoing = defaultdict(lambda: Fraction(0))
    received = defaultdict(lambda: Fraction(0))
    case_of: dict[int, str] = {}
    for step in sorted(crit):
        pos = positions[step]
        left, right = by_pos[pos - 1], by_pos[pos + 1]
        dl, dr = depth[left], depth[right]
        if dl % 2 == dr % 2:
            case_of[step] = "2"
            for n in (left, right):
                outgoing[n] += slack / 2
                received[step] += slack / 2
        else:
            case_of[step] = "1"
            odd_n, even_n = (left, right) if dl % 2 == 1 else (right, left)
            even_pos = positions[even_n]
            far_pos = even_pos + (even_pos - pos)
            if far_pos not in by_pos or by_pos[far_pos] in crit:
                raise ChargingError(
                    f"even-depth neighbor at position {even_pos} has no "
                    "non-critical far mate; the parity analysis is broken"
                )
            far = by_pos[far_pos]
            outgoing[even_n] += slack
            outgoing[odd_n] += slack / 2
            outgoing[far] += slack / 2
            received[step] += 2 * slack

    for step, out in outgoing.items():
        if out > slack:
            raise ChargingError(
                f"non-critical edge at step {step} was asked for {out} "
                f"> its surplus {slack}"
            )

    rows = []
    for step in range(len(edges)):
        if step in crit:
            vf = v_i[step] + received[step]
            klass = "critical"
        else:
            vf = v_i[step] - outgoing[step]
            klass = "noncritical"
        rows.append(
            EdgeReport(step, klass, v_i[step], vf, vf - target, case_of.get(step, ""))
        )
    if sum(r.v_f for r in rows) != sum(r.v_i for r in rows):
        raise ChargingError("ledger leaked value during redistribution")
    margins = [r.margin for r in rows]
    return VerdictReport(
        strategy="rp-path",
        C=target,
        rows=rows,
        passed=all(mg >= 0 for mg in margins),
        min_margin=min(margins) if margins else None,
    )
