"""Experiment drivers: seeded ratio reports, exhaustive small-instance sweeps,
random instance generators, and the charging verification loops.

Everything here is reproducible: a report built twice from the same config
and seed serializes to identical CSV bytes.  Per-trial randomness is derived
from (seed, trial index), so results do not depend on evaluation order.
"""

from __future__ import annotations

import hashlib
import heapq
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

import numpy as np

from . import adversaries, charging, engine
from .adversaries import RevealSequence, path_edges
from .graph import Graph, build_graph
from .oracle import opt_path, opt_tree, opt_value

ORDER_EXHAUSTIVE_LIMIT = 8


# ---------------------------------------------------------------------------
# configuration and reports


@dataclass
class ExperimentConfig:
    algorithm: str = "ff"
    p: float | None = None
    adversary: str = ""
    k: int = 2
    m: int | None = None
    n: int | None = None
    N: int | None = None
    b: int | None = None
    trials: int = 1
    seed: object = 0
    out: str | None = None


@dataclass
class RatioReport:
    construction: str
    algorithm: str
    k: int
    params: dict
    trials: int
    seed: object
    colored_mean: float
    colored_stderr: float | None  # None for deterministic runs
    opt: float
    ratio: float
    bound: float | None
    per_trial: list[tuple[int, int]] = field(default_factory=list)  # (colored, opt)

    @property
    def margin(self) -> float | None:
        return None if self.bound is None else self.bound - self.ratio

    def violates_bound(self) -> bool:
        """True when the observed ratio exceeds the construction's ceiling."""
        if self.bound is None:
            return False
        slack = 0.0
        if self.colored_stderr is not None and self.opt > 0:
            slack = 3 * self.colored_stderr / self.opt
        return self.ratio > self.bound + slack

    def write_csv(self, out) -> None:
        import csv

        w = csv.writer(out, lineterminator="\n")
        w.writerow(["construction", "algorithm", "k", "trial", "colored", "opt", "ratio"])
        for t, (colored, opt) in enumerate(self.per_trial):
            ratio = colored / opt if opt else 0.0
            w.writerow([self.construction, self.algorithm, self.k, t, colored, opt, ratio])

    def summary(self) -> str:
        parts = [
            f"{self.construction} vs {self.algorithm} (k={self.k}",
            ", ".join(f"{key}={val}" for key, val in self.params.items()),
        ]
        head = parts[0] + (", " + parts[1] if parts[1] else "") + ")"
        body = f"colored {self.colored_mean:g}"
        if self.colored_stderr is not None:
            body += f" +- {self.colored_stderr:.3g} (stderr, {self.trials} trials)"
        body += f", opt {self.opt:g}, ratio {self.ratio:.6f}"
        if self.bound is not None:
            body += f", bound {float(self.bound):.6f}, margin {float(self.margin):+.6f}"
        return head + ": " + body


# ---------------------------------------------------------------------------
# construction registry


def _require(config: ExperimentConfig, *names):
    got = {}
    for name in names:
        val = getattr(config, name)
        if val is None:
            raise ValueError(
                f"construction {config.adversary!r} needs --{name}"
            )
        got[name] = val
    return got


def _build_nf_path_killer(config, rng):
    p = _require(config, "m")
    return adversaries.nf_path_killer(p["m"])


def _build_rp_mod3(config, rng):
    p = _require(config, "m")
    return adversaries.rp_strategy_mod3(p["m"])


def _build_rp_oddeven(config, rng):
    p = _require(config, "m")
    return adversaries.rp_strategy_oddeven(p["m"])


def _build_det_path_killer(config, rng):
    p = _require(config, "n")
    return adversaries.det_path_killer(p["n"], _algorithm_for(config))


def _build_star_chain(config, rng):
    p = _require(config, "N")
    return adversaries.star_chain(config.k, p["N"], _algorithm_for(config))


def _build_path_then_stars(config, rng):
    p = _require(config, "m")
    return adversaries.path_then_stars(
        config.k, p["m"], _algorithm_for(config), trials=config.trials,
        seed=config.seed,
    )


def _build_nf_tree(config, rng):
    p = _require(config, "N")
    return adversaries.nf_tree_worstcase(config.k, p["N"])


def _build_nf_tree_rounded(config, rng):
    p = _require(config, "N")
    return adversaries.nf_tree_worstcase_rounded(config.k, p["N"])


def _build_yao(config, rng):
    p = _require(config, "b")
    return adversaries.yao_sample(p["b"], rng).reveal_sequence()


def _bound_nf_path_killer(config, opt):
    m = config.m
    return Fraction(m + 1, 2 * m + 1)


def _bound_det_path_killer(config, opt):
    n = config.n
    return Fraction(2 * n, 3 * n - 1)


def _bound_rp_mod3(config, opt):
    p = config.p
    return (Fraction(2, 3) * (-p * p + p + 1) * (config.m - 1) + 1) / opt


def _bound_rp_oddeven(config, opt):
    p = config.p
    return ((p * p - p + 1) * (config.m - 1) + 1) / opt


def _bound_star_chain(config, opt):
    return Fraction(config.N * (config.k - 1) + 1, config.N * config.k)


def _bound_path_then_stars(config, opt):
    k = config.k
    return Fraction(k, k + 1) + Fraction(k, (k + 1) * int(opt))


def _bound_nf_tree(config, opt, star_size=None):
    k = config.k
    s = star_size if star_size is not None else math.isqrt(k)
    colored = k * config.N * (k + s * s - 2 * s) + k - 1
    return Fraction(colored, int(opt))


def _bound_nf_tree_rounded(config, opt):
    s = math.isqrt(config.k)
    if s * s != config.k:
        s += 1
    return _bound_nf_tree(config, opt, star_size=s)


def yao_colored_bound(b: int) -> Fraction:
    """Expected-colored ceiling for any deterministic algorithm: 4a/5 + 1/(5*2^b) + 1."""
    a = 3**b
    return Fraction(4 * a, 5) + Fraction(1, 5 * 2**b) + 1


def _bound_yao(config, opt):
    return yao_colored_bound(config.b) / opt


@dataclass(frozen=True)
class Construction:
    name: str
    build: object  # (config, rng) -> script
    needed: tuple[str, ...]
    bound: object  # (config, opt) -> Fraction | None
    resamples: bool = False  # a fresh instance per trial
    algorithms: tuple[str, ...] = ("ff", "nf", "rp")
    note: str = ""


CONSTRUCTIONS: dict[str, Construction] = {
    c.name: c
    for c in [
        Construction(
            "nf-path-killer", _build_nf_path_killer, ("m",), _bound_nf_path_killer,
            note="path order that pins next-fit at (m+1)/(2m+1)",
        ),
        Construction(
            "det-path-killer", _build_det_path_killer, ("n",), _bound_det_path_killer,
            algorithms=("ff", "nf"),
            note="adaptive path capping deterministic algorithms at 2n/(3n-1)",
        ),
        Construction(
            "rp-mod3", _build_rp_mod3, ("m",), _bound_rp_mod3,
            note="path order hitting the mixed-parity branch of the rp ratio",
        ),
        Construction(
            "rp-oddeven", _build_rp_oddeven, ("m",), _bound_rp_oddeven,
            note="path order hitting the equal-parity branch of the rp ratio",
        ),
        Construction(
            "star-chain", _build_star_chain, ("N",), _bound_star_chain,
            note="adaptive tree capping deterministic-or-fair algorithms at (k-1)/k",
        ),
        Construction(
            "path-then-stars", _build_path_then_stars, ("m",), _bound_path_then_stars,
            note="adaptive tree capping any algorithm at k/(k+1)",
        ),
        Construction(
            "nf-tree", _build_nf_tree, ("N",), _bound_nf_tree,
            algorithms=("nf",),
            note="square-k tree family pinning next-fit at its fair floor",
        ),
        Construction(
            "nf-tree-rounded", _build_nf_tree_rounded, ("N",), _bound_nf_tree_rounded,
            algorithms=("nf",),
            note="non-square variant of nf-tree using rounded-up star sizes",
        ),
        Construction(
            "yao", _build_yao, ("b",), _bound_yao, resamples=True,
            algorithms=("ff", "nf"),
            note="randomized path-order distribution; 4/5 ceiling for deterministic algorithms",
        ),
    ]
}


def _algorithm_for(config: ExperimentConfig):
    return engine.make_algorithm(config.algorithm, config.p)


def run_experiment(config: ExperimentConfig) -> RatioReport:
    """Play the configured matchup and aggregate colored/opt over trials.

    Deterministic algorithm on a fixed construction runs once; anything
    randomized runs config.trials times with per-trial derived seeds.  A
    biased-pair run on a fixed path order is delegated to the vectorized
    path runner, which is decision-for-decision equivalent to the engine.
    """
    if config.adversary not in CONSTRUCTIONS:
        raise ValueError(
            f"unknown construction {config.adversary!r}; "
            f"choices: {', '.join(sorted(CONSTRUCTIONS))}"
        )
    spec = CONSTRUCTIONS[config.adversary]
    if config.algorithm not in spec.algorithms:
        raise ValueError(
            f"construction {config.adversary!r} does not accept algorithm "
            f"{config.algorithm!r} (allowed: {', '.join(spec.algorithms)})"
        )
    algorithm = _algorithm_for(config)
    randomized = not algorithm.deterministic or spec.resamples
    trials = config.trials if randomized else 1

    params = {
        name: getattr(config, name)
        for name in ("m", "n", "N", "b")
        if getattr(config, name) is not None
    }
    if config.p is not None:
        params["p"] = config.p

    per_trial: list[tuple[int, int]] = []
    fixed_script = None
    if not spec.resamples:
        fixed_script = spec.build(config, None)

    if (
        isinstance(fixed_script, RevealSequence)
        and not algorithm.deterministic
        and isinstance(algorithm, engine.RandomParity)
        and fixed_script.graph().classify() == "path"
    ):
        opt = opt_value(fixed_script.graph(), fixed_script.k)
        counts = engine.rp_path_colored_counts(
            fixed_script.edges, config.p, trials, seed=_int_seed(config.seed)
        )
        per_trial = [(int(c), opt) for c in counts]
    else:
        for t in range(trials):
            script = fixed_script
            if spec.resamples:
                script = spec.build(config, engine.derive_rng(config.seed, "adv", t))
            trace = engine.run(
                algorithm.clone(), script, rng=engine.derive_rng(config.seed, "alg", t)
            )
            per_trial.append((trace.colored_count, opt_value(trace.graph, trace.k)))

    colored = np.array([c for c, _ in per_trial], dtype=float)
    opts = np.array([o for _, o in per_trial], dtype=float)
    mean = float(colored.mean())
    stderr = (
        float(colored.std(ddof=1) / math.sqrt(len(colored)))
        if randomized and len(colored) > 1
        else None
    )
    ratio = float((colored / opts).mean())
    mean_opt = float(opts.mean())
    bound = spec.bound(config, Fraction(int(opts[0])) if len(set(opts)) == 1 else mean_opt)
    return RatioReport(
        construction=config.adversary,
        algorithm=config.algorithm,
        k=config.k,
        params=params,
        trials=trials,
        seed=config.seed,
        colored_mean=mean,
        colored_stderr=stderr,
        opt=mean_opt,
        ratio=ratio,
        bound=float(bound) if bound is not None else None,
        per_trial=per_trial,
    )


def _int_seed(seed) -> int:
    if seed is None:
        return 0
    if isinstance(seed, int):
        return seed
    digest = hashlib.sha256(str(seed).encode()).digest()
    return int.from_bytes(digest[:4], "big")


# ---------------------------------------------------------------------------
# the randomized path-order distribution, with per-round memoization


def yao_experiment(
    b: int, algorithms=("ff", "nf"), trials: int = 100_000, seed=0
) -> list[RatioReport]:
    """Sample the path-order distribution and report each algorithm's mean.

    The sampled instance depends only on the round count L, and the
    algorithms allowed here are deterministic, so each distinct L is played
    once and weighted by its empirical frequency; the result is identical to
    running every sample, including the spread.
    """
    if b < 1:
        raise ValueError(f"b must be >= 1, got {b}")
    for name in algorithms:
        if not engine.make_algorithm(name, 0.5).deterministic:
            raise ValueError("the distribution experiment needs deterministic algorithms")
    rng = engine.derive_rng(seed, "yao", b)
    draws = Counter(
        adversaries.sample_subphase_count(b, rng) for _ in range(trials)
    )
    a = 3**b
    opt = a - 2
    bound = yao_colored_bound(b)
    reports = []
    for name in algorithms:
        colored_by_round = {}
        for L in sorted(draws):
            seq = adversaries.yao_instance(b, L).reveal_sequence()
            colored_by_round[L] = engine.run(name, seq).colored_count
        values = np.array(
            [colored_by_round[L] for L in sorted(draws) for _ in range(draws[L])],
            dtype=float,
        )
        mean = float(values.mean())
        stderr = float(values.std(ddof=1) / math.sqrt(trials))
        reports.append(
            RatioReport(
                construction="yao",
                algorithm=name,
                k=2,
                params={"b": b},
                trials=trials,
                seed=seed,
                colored_mean=mean,
                colored_stderr=stderr,
                opt=float(opt),
                ratio=mean / opt,
                bound=float(bound / opt),
                per_trial=[(colored_by_round[L], opt) for L in sorted(draws)],
            )
        )
    return reports


# ---------------------------------------------------------------------------
# exhaustive small-instance sweeps


@dataclass
class ExhaustiveSummary:
    mode: str
    max_edges: int
    k: int
    algorithm: str
    instances: int
    min_ratio: Fraction
    bound: Fraction
    witness: list[tuple[int, int]]  # a reveal order attaining min_ratio
    charge_failures: int = 0

    @property
    def passed(self) -> bool:
        return self.min_ratio >= self.bound and self.charge_failures == 0

    def summary(self) -> str:
        return (
            f"{self.mode} exhaustive, m<={self.max_edges}, k={self.k}, "
            f"{self.algorithm}: {self.instances} instances, min ratio "
            f"{self.min_ratio} (= {float(self.min_ratio):.6f}) vs floor "
            f"{self.bound} (= {float(self.bound):.6f}); "
            f"{self.charge_failures} charge failures"
        )


def exhaustive_paths(max_edges: int, k: int, algorithm: str = "ff") -> ExhaustiveSummary:
    """Minimum colored/opt of a deterministic algorithm over every reveal
    order of every path with up to max_edges edges."""
    if max_edges > ORDER_EXHAUSTIVE_LIMIT:
        raise ValueError(f"order-exhaustive mode is limited to {ORDER_EXHAUSTIVE_LIMIT} edges")
    alg = engine.make_algorithm(algorithm, None)
    if not alg.deterministic:
        raise ValueError("exhaustive path mode enumerates deterministic algorithms only")
    best: tuple[Fraction, list] | None = None
    instances = 0
    for m in range(1, max_edges + 1):
        opt = opt_path(m, k)
        for perm in permutations(range(1, m + 1)):
            edges = [(i - 1, i) for i in perm]
            trace = engine.run(alg.clone(), RevealSequence(edges=edges, k=k))
            ratio = Fraction(trace.colored_count, opt)
            instances += 1
            if best is None or ratio < best[0]:
                best = (ratio, edges)
    bound = Fraction(k, 2 * k - 1) if algorithm == "ff" else Fraction(1, 2)
    return ExhaustiveSummary(
        mode="path",
        max_edges=max_edges,
        k=k,
        algorithm=algorithm,
        instances=instances,
        min_ratio=best[0],
        bound=bound,
        witness=best[1],
    )


def exhaustive_fair_paths(max_edges: int, k: int = 2) -> ExhaustiveSummary:
    """Minimum ratio over every reveal order and every fair decision branch.

    Fair means: color whenever any color is open at both endpoints (the
    choice of color is the branch), reject only when forced.  Runs on a
    flat per-position array rather than the engine, so it doubles as an
    independent check of the fair floor.
    """
    if max_edges > ORDER_EXHAUSTIVE_LIMIT:
        raise ValueError(f"order-exhaustive mode is limited to {ORDER_EXHAUSTIVE_LIMIT} edges")
    best: tuple[Fraction, list] | None = None
    instances = 0

    def explore(order, colors, i, colored):
        nonlocal best, instances
        if i == len(order):
            instances += 1
            ratio = Fraction(colored, opt)
            if best is None or ratio < best[0]:
                best = (ratio, [(p - 1, p) for p in order])
            return
        pos = order[i]
        used = set()
        for npos in (pos - 1, pos + 1):
            c = colors.get(npos)
            if c:
                used.add(c)
        open_colors = [c for c in range(1, k + 1) if c not in used]
        if not open_colors:
            explore(order, colors, i + 1, colored)
            return
        for c in open_colors:
            colors[pos] = c
            explore(order, colors, i + 1, colored + 1)
            del colors[pos]

    for m in range(1, max_edges + 1):
        opt = opt_path(m, k)
        for perm in permutations(range(1, m + 1)):
            explore(perm, {}, 0, 0)
    return ExhaustiveSummary(
        mode="fair-path",
        max_edges=max_edges,
        k=k,
        algorithm="any-fair",
        instances=instances,
        min_ratio=best[0],
        bound=Fraction(1, 2),
        witness=best[1],
    )


# -- canonical enumeration of tree reveal orders ----------------------------


def _canonical_form(seq) -> tuple:
    """Lexicographically least relabeling of an ordered edge sequence.

    Relabelings must map the i-th edge to the i-th edge; labels are forced
    to appear in first-use order, so the only freedom is which endpoint of
    each fresh-fresh edge gets the smaller label.
    """
    m = len(seq)
    best: list[tuple[int, int] | None] = [None]

    def rec(i, mapping, acc):
        if i == m:
            cand = tuple(acc)
            if best[0] is None or cand < best[0]:
                best[0] = cand
            return
        u, v = seq[i]
        mu, mv = mapping.get(u), mapping.get(v)
        options = []
        if mu is not None and mv is not None:
            options.append(((min(mu, mv), max(mu, mv)), ()))
        elif mu is not None:
            nv = len(mapping)
            options.append(((min(mu, nv), max(mu, nv)), ((v, nv),)))
        elif mv is not None:
            nu = len(mapping)
            options.append(((min(mv, nu), max(mv, nu)), ((u, nu),)))
        else:
            n1, n2 = len(mapping), len(mapping) + 1
            options.append(((n1, n2), ((u, n1), (v, n2))))
            options.append(((n1, n2), ((u, n2), (v, n1))))
        for pair, additions in options:
            if best[0] is not None:
                prefix = best[0][: i + 1]
                if tuple(acc) + (pair,) > prefix:
                    continue
            for key, val in additions:
                mapping[key] = val
            acc.append(pair)
            rec(i + 1, mapping, acc)
            acc.pop()
            for key, _ in additions:
                del mapping[key]

    rec(0, {}, [])
    return best[0]


def _is_canonical(seq) -> bool:
    normalized = tuple((min(u, v), max(u, v)) for u, v in seq)
    return _canonical_form(seq) == normalized


def tree_reveal_orders(m: int):
    """Every reveal order of every tree with m edges, one per isomorphism class.

    Sequences are canonical: vertices are numbered by first appearance and
    each prefix is the lexicographically least relabeling of itself (prefixes
    of canonical sequences are canonical, so growing only canonical prefixes
    reaches every class exactly once).  Two labeled (tree, order) pairs
    related by a vertex bijection behave identically for any online
    algorithm, so enumerating classes covers all labeled instances.
    """
    if m == 0:
        return

    def rec(seq, comp):
        if len(seq) == m:
            if len(set(comp)) == 1:
                yield list(seq)
            return
        remaining = m - len(seq)
        nverts = len(comp)
        candidates = []
        for u in range(nverts):  # attach a fresh leaf
            candidates.append(((u, nverts), comp + [comp[u]]))
        fresh = max(comp, default=-1) + 1  # isolated fresh edge
        candidates.append(((nverts, nverts + 1), comp + [fresh, fresh]))
        for u in range(nverts):  # join two components
            for v in range(u + 1, nverts):
                if comp[u] != comp[v]:
                    merged = [comp[u] if c == comp[v] else c for c in comp]
                    candidates.append(((u, v), merged))
        for edge, comp2 in candidates:
            if len(set(comp2)) - 1 > remaining - 1:
                continue  # not enough edges left to connect everything
            seq.append(edge)
            if _is_canonical(seq):
                yield from rec(seq, comp2)
            seq.pop()

    yield from rec([], [])


def exhaustive_trees(
    max_edges: int,
    ks=(2, 3),
    *,
    charge: bool = True,
    all_roots: bool = False,
    algorithm: str = "ff",
) -> list[ExhaustiveSummary]:
    """First-fit over every tree reveal order (up to isomorphism) per k.

    Checks the colored count against the (k-1)/k floor and, when charge is
    set, certifies every instance where the optimum keeps a rejected edge
    (instances without such edges pass vacuously).  all_roots re-certifies
    from every root, covering every labeled instance's default-root run.
    """
    if max_edges > ORDER_EXHAUSTIVE_LIMIT:
        raise ValueError(f"order-exhaustive mode is limited to {ORDER_EXHAUSTIVE_LIMIT} edges")
    if algorithm != "ff":
        raise ValueError("the tree sweep certifies first-fit")
    summaries = []
    for k in ks:
        bound = Fraction(k - 1, k)
        best: tuple[Fraction, list] | None = None
        instances = 0
        failures = 0
        for m in range(1, max_edges + 1):
            for edges in tree_reveal_orders(m):
                seq = RevealSequence(edges=edges, k=k)
                trace = engine.run("ff", seq)
                witness = opt_tree(trace.graph, k)
                ratio = Fraction(trace.colored_count, witness.count)
                instances += 1
                if best is None or ratio < best[0]:
                    best = (ratio, edges)
                if charge and (witness.edges - set(trace.coloring.colored_edges())):
                    roots = range(trace.graph.num_vertices) if all_roots else (0,)
                    for root in roots:
                        report = charging.ff_tree_charge(trace, witness, root=root)
                        if not report.passed:
                            failures += 1
        summaries.append(
            ExhaustiveSummary(
                mode="tree",
                max_edges=max_edges,
                k=k,
                algorithm="ff",
                instances=instances,
                min_ratio=best[0],
                bound=bound,
                witness=best[1],
                charge_failures=failures,
            )
        )
    return summaries


# ---------------------------------------------------------------------------
# random instances


def random_tree_edges(rng, m: int) -> list[tuple[int, int]]:
    """Uniform labeled tree with m edges (sequence-decoded), natural order."""
    n = m + 1
    if m <= 0:
        return []
    if n == 2:
        return [(0, 1)]
    code = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in code:
        degree[x] += 1
    edges = []
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in code:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x) if leaf < x else (x, leaf))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v) if u < v else (v, u))
    return edges


def random_reveal(rng, edges) -> list[tuple[int, int]]:
    order = list(edges)
    rng.shuffle(order)
    return order


def estimate_initial_values(alg, script, trials: int, seed=0) -> list[float]:
    """Per-step colored frequency of a randomized algorithm over fresh seeds."""
    counts = None
    for t in range(trials):
        trace = engine.run(
            alg.clone() if not isinstance(alg, str) else alg,
            script,
            rng=engine.derive_rng(seed, "vi", t),
        )
        if counts is None:
            counts = [0] * len(trace.steps)
        for i, step in enumerate(trace.steps):
            if step.color is not None:
                counts[i] += 1
    return [c / trials for c in counts]


# ---------------------------------------------------------------------------
# charging verification loops


@dataclass
class VerifySummary:
    strategy: str
    instances: int
    failures: int
    min_margin: object | None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def summary(self) -> str:
        mm = "n/a" if self.min_margin is None else f"{float(self.min_margin):.6f}"
        return (
            f"{self.strategy}: {self.instances} instances, "
            f"{self.failures} failures, min margin {mm}"
        )


def _merge_margin(current, margin):
    if margin is None:
        return current
    if current is None or margin < current:
        return margin
    return current


def verify_ff_trees(
    count: int, max_edges: int, k: int, seed=0, *, all_roots: bool = False
) -> VerifySummary:
    """Charge first-fit runs on random trees with random reveal orders."""
    failures = 0
    min_margin = None
    for t in range(count):
        rng = engine.derive_rng(seed, "ff-tree", t)
        m = rng.randrange(1, max_edges + 1)
        edges = random_reveal(rng, random_tree_edges(rng, m))
        trace = engine.run("ff", RevealSequence(edges=edges, k=k))
        witness = opt_tree(trace.graph, k)
        roots = range(trace.graph.num_vertices) if all_roots else (0,)
        for root in roots:
            report = charging.ff_tree_charge(trace, witness, root=root)
            min_margin = _merge_margin(min_margin, report.min_margin)
            if not report.passed:
                failures += 1
    return VerifySummary("ff-tree", count, failures, min_margin)


def verify_fair_trees(
    count: int,
    max_edges: int,
    k: int,
    seed=0,
    *,
    algorithm="nf",
    all_roots: bool = False,
) -> VerifySummary:
    """Charge fair runs (next-fit by default) on random trees."""
    failures = 0
    min_margin = None
    for t in range(count):
        rng = engine.derive_rng(seed, "fair-tree", t)
        m = rng.randrange(1, max_edges + 1)
        edges = random_reveal(rng, random_tree_edges(rng, m))
        trace = engine.run(
            algorithm, RevealSequence(edges=edges, k=k),
            rng=engine.derive_rng(seed, "fair-alg", t),
        )
        witness = opt_tree(trace.graph, k)
        roots = range(trace.graph.num_vertices) if all_roots else (0,)
        for root in roots:
            report = charging.fair_tree_charge(trace, witness, root=root)
            min_margin = _merge_margin(min_margin, report.min_margin)
            if not report.passed:
                failures += 1
    return VerifySummary("fair-tree", count, failures, min_margin)


def verify_rp_paths(count: int, max_edges: int, p, seed=0) -> VerifySummary:
    """Run the analytic pair-strategy ledger on random path reveal orders."""
    failures = 0
    min_margin = None
    for t in range(count):
        rng = engine.derive_rng(seed, "rp-path", t)
        m = rng.randrange(1, max_edges + 1)
        edges = random_reveal(rng, path_edges(m))
        report = charging.rp_path_charge(RevealSequence(edges=edges, k=2), p)
        min_margin = _merge_margin(min_margin, report.min_margin)
        if not report.passed:
            failures += 1
    return VerifySummary("rp-path", count, failures, min_margin)


def verify_nf_tree_tightness(k: int, N: int) -> charging.VerdictReport:
    """Charge the next-fit worst-case tree; the minimum margin should be zero."""
    seq = adversaries.nf_tree_worstcase(k, N)
    trace = engine.run("nf", seq)
    witness = opt_tree(trace.graph, k)
    return charging.fair_tree_charge(trace, witness)
