"""Exact desk-scale searches: collapsibility, optimal gradient fields and N(K).

Every search counts nodes against a budget.  A search that runs out of budget
still returns its best result, flagged ``exact=False``; nothing inexact is
reported as exact.

Searches over gradient fields (complexes of dimension <= 2) are split into a
fixed list of tasks, each a prefix of choices for the first few triangles.
Tasks never share state, and budgets are charged in task order, so the
output is the same for any number of worker processes.
"""

from __future__ import annotations

import itertools
import sys
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .complex import Simplex, SimplicialComplex, barycentric_subdivision, is_connected
from .field import DiscreteVectorField, creates_cycle, critical_report, field_from_partner, validate_field
from .analysis import CriticalIncidenceGraph, HallViolation, hall_matching, reachable_level
from .homology import homology, relaxed_hypotheses_hold
from .normalization import nkf

DEFAULT_BUDGET = 10**7
PREFIX_TASKS = 16
WITNESS_CAP = 8


class BudgetExceeded(RuntimeError):
    pass


class NotCollapsible(ValueError):
    pass


# -- collapses ---------------------------------------------------------------------

@dataclass(frozen=True)
class CollapseSequence:
    steps: tuple[tuple[Simplex, Simplex], ...]  # (free face, its unique coface)
    remaining: tuple[Simplex, ...]

    @property
    def full(self) -> bool:
        return len(self.remaining) == 1


@dataclass(frozen=True)
class CollapseResult:
    collapsible: bool
    exact: bool
    sequence: CollapseSequence | None
    note: str
    nodes: int

    def __bool__(self) -> bool:
        return self.collapsible


def free_faces(K: SimplicialComplex) -> list[tuple[Simplex, Simplex]]:
    """Free faces of ``K`` with their unique cofaces, in cell order."""
    return [(K.cells[v], K.cells[K.cofaces_of[v][0]])
            for v in range(len(K)) if len(K.cofaces_of[v]) == 1]


def is_collapsible(K: SimplicialComplex, budget: int = DEFAULT_BUDGET) -> CollapseResult:
    """Backtracking over elementary collapses, memoizing dead-end subcomplexes."""
    n = len(K)
    if not is_connected(K):
        return CollapseResult(False, True, None, "complex is disconnected", 0)
    if n == 1:
        return CollapseResult(True, True, CollapseSequence((), K.cells), "", 0)
    faces_of, cofaces_of = K.faces_of, K.cofaces_of
    alive = [True] * n
    count = [len(cs) for cs in cofaces_of]
    state = (1 << n) - 1
    n_alive = n

    def moves():
        out = []
        for v in range(n):
            if alive[v] and count[v] == 1:
                s = next(t for t in cofaces_of[v] if alive[t])
                out.append((v, s))
        return out

    def toggle(v, s, delta):
        nonlocal state, n_alive
        alive[v] = alive[s] = delta > 0
        for f in faces_of[s]:
            count[f] += delta
        for f in faces_of[v]:
            count[f] += delta
        state ^= (1 << v) | (1 << s)
        n_alive += 2 * delta

    initial = moves()
    if not initial:
        dims = sorted({K.dim_of[v] for v in range(n) if cofaces_of[v]})
        return CollapseResult(False, True, None,
                              "no free faces: every non-maximal cell of dimension "
                              f"{', '.join(map(str, dims))} has at least two cofaces", 0)
    failed: set[int] = set()
    stack = [initial]
    cursor = [0]
    path: list[tuple[int, int]] = []
    nodes = 0
    while stack:
        if n_alive == 1:
            steps = tuple((K.cells[v], K.cells[s]) for v, s in path)
            remaining = tuple(K.cells[i] for i in range(n) if alive[i])
            return CollapseResult(True, True, CollapseSequence(steps, remaining), "", nodes)
        if cursor[-1] < len(stack[-1]):
            v, s = stack[-1][cursor[-1]]
            cursor[-1] += 1
            nodes += 1
            if nodes > budget:
                return CollapseResult(False, False, None, f"budget of {budget} nodes exhausted", nodes)
            toggle(v, s, -1)
            if state in failed:
                toggle(v, s, +1)
                continue
            path.append((v, s))
            stack.append(moves())
            cursor.append(0)
        else:
            failed.add(state)
            stack.pop()
            cursor.pop()
            if path:
                toggle(*path.pop(), +1)
    return CollapseResult(False, True, None,
                          f"all {len(failed)} reachable collapse states end above a vertex", nodes)


def prop3_witness(K: SimplicialComplex, result: CollapseResult | None = None,
                  budget: int = DEFAULT_BUDGET) -> DiscreteVectorField:
    """Gradient field of a full collapse: a single critical vertex, so N(K,f) = 0."""
    if result is None:
        result = is_collapsible(K, budget)
    if not result.collapsible:
        raise NotCollapsible(result.note)
    V = validate_field(K, result.sequence.steps)
    crit = V.critical
    if len(crit) != 1 or len(crit[0]) != 1:
        raise AssertionError(f"collapse left critical cells {crit}")
    if nkf(V).value != 0:
        raise AssertionError("single-vertex field with nonzero alternating sum")
    return V


def _collapse_field(K: SimplicialComplex, budget: int) -> tuple[DiscreteVectorField, int]:
    result = is_collapsible(K, budget)
    if not result.collapsible:
        raise ValueError("gradient-field search supports dimension <= 2; "
                         "higher-dimensional complexes only when collapsible")
    return prop3_witness(K, result), result.nodes


# -- task runner -------------------------------------------------------------------

@dataclass
class TaskResult:
    nodes: int
    truncated: bool
    payload: object = None
    stop: bool = False  # later tasks are irrelevant (e.g. N(K) = 0 found)


def _run_tasks(fn: Callable, tasks: Sequence, budget: int, jobs: int) -> tuple[list[TaskResult], bool]:
    """Run ``fn(task, cap)`` in order with the budget charged sequentially.

    With ``jobs > 1`` tasks run speculatively with the whole budget; a task
    whose run exceeded its sequential allowance is rerun with that allowance,
    so results match a single-process run exactly.
    """
    results: list[TaskResult] = []
    remaining = budget
    truncated = False
    pool = ProcessPoolExecutor(jobs) if jobs > 1 and len(tasks) > 1 else None
    try:
        futures = [pool.submit(fn, t, budget) for t in tasks] if pool else None
        for i, task in enumerate(tasks):
            if futures is not None:
                r = futures[i].result()
                if r.truncated or r.nodes > remaining:
                    r = fn(task, remaining)
            else:
                r = fn(task, remaining)
            results.append(r)
            remaining -= r.nodes
            if r.truncated:
                truncated = True
                break
            if r.stop:
                break
    finally:
        if pool:
            pool.shutdown(cancel_futures=True)
    return results, truncated


# -- gradient-field search (dimension <= 2) -----------------------------------------

class _Stop(Exception):
    pass


def _components(n_vertices_ids: range, edges: Sequence[tuple[int, int]]) -> int:
    parent = {v: v for v in n_vertices_ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    c = len(parent)
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            c -= 1
    return c


class _FieldSearch:
    """Branch and bound over acyclic matchings, triangles first.

    Triangles are decided in cell order: matched to one of their free edges
    (in cell order) or made critical (last).  Once all triangles are decided,
    the remaining graph ``G'`` of edges not matched upward determines the
    best lower part in closed form: one critical vertex per component and a
    spanning forest, so ``m0 + m2`` is exact at the leaf.  Since
    ``m0 - m1 + m2 = chi``, the number of critical cells is ``2 (m0 + m2) - chi``.
    """

    def __init__(self, K: SimplicialComplex):
        if K.dimension > 2:
            raise ValueError("gradient-field search supports complexes of dimension <= 2")
        self.K = K
        self.tris = list(K.ids_of_dim(2))
        self.verts = K.ids_of_dim(0)
        self.edge_ends = {e: K.faces_of[e][::-1] for e in K.ids_of_dim(1)}  # (first, second) vertex ids
        h = homology(K)
        self.b2 = h.betti[2] if len(h.betti) > 2 else 0
        self.chi = h.euler
        self.partner = [-1] * len(K)
        self.state = {}  # triangle -> edge or -1 (critical)
        self.n_crit = 0
        self.nodes = 0
        self.cap = 0

    # bounds ----------------------------------------------------------------
    def _core_bound(self, depth: int) -> int | None:
        """0/1 lower bound on further critical triangles; None if infeasible."""
        K = self.K
        alive = {t for t in self.tris if self.state.get(t, 0) != -1}
        if not alive:
            return 0
        degree: dict[int, int] = {}
        for t in alive:
            for e in K.faces_of[t]:
                degree[e] = degree.get(e, 0) + 1
        queue = [e for e, d in degree.items() if d == 1]
        while queue:
            e = queue.pop()
            if degree[e] != 1:
                continue
            t = next(t for t in K.cofaces_of[e] if t in alive)
            alive.discard(t)
            for f in K.faces_of[t]:
                degree[f] -= 1
                if degree[f] == 1:
                    queue.append(f)
        if not alive:
            return 0
        undecided = set(self.tris[depth:])
        return 1 if alive & undecided else None

    def _components_left(self) -> int:
        p = self.partner
        return _components(self.verts, [self.edge_ends[e] for e in self.edge_ends if p[e] < 0])

    def lower_bound(self, depth: int) -> int | None:
        core = self._core_bound(depth)
        if core is None:
            return None
        return max(self.b2, self.n_crit + core) + self._components_left()

    # branching ---------------------------------------------------------------
    def options(self, t: int) -> list[int]:
        p = self.partner
        out = [e for e in self.K.faces_of[t] if p[e] < 0 and not creates_cycle(self.K, p, e, t)]
        return sorted(out) + [-1]

    def assign(self, t: int, e: int) -> None:
        self.state[t] = e
        if e < 0:
            self.n_crit += 1
        else:
            self.partner[e], self.partner[t] = t, e

    def unassign(self, t: int) -> None:
        e = self.state.pop(t)
        if e < 0:
            self.n_crit -= 1
        else:
            self.partner[e] = self.partner[t] = -1

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.cap:
            raise BudgetExceeded

    def apply_prefix(self, prefix: Sequence[int]) -> bool:
        for t, e in zip(self.tris, prefix):
            if e not in self.options(t):
                return False
            self.assign(t, e)
        return True

    def prefixes(self) -> list[tuple[int, ...]]:
        """Fixed task decomposition, independent of budget and worker count."""
        level: list[tuple[int, ...]] = [()]
        depth = 0
        while depth < len(self.tris) and len(level) < PREFIX_TASKS:
            nxt = []
            for pre in level:
                if not self.apply_prefix(pre):
                    raise AssertionError("invalid prefix")
                nxt.extend(pre + (e,) for e in self.options(self.tris[depth]))
                for t in reversed(self.tris[:len(pre)]):
                    self.unassign(t)
            level = nxt
            depth += 1
        return level

    def leaf_value(self) -> int:
        return self.n_crit + self._components_left()

    def dfs(self, depth: int, bound_ok: Callable[[int], bool], leaf: Callable[[], None]) -> None:
        self.tick()
        lb = self.lower_bound(depth)
        if lb is None or not bound_ok(lb):
            return
        if depth == len(self.tris):
            leaf()
            return
        t = self.tris[depth]
        for e in self.options(t):
            self.assign(t, e)
            try:
                self.dfs(depth + 1, bound_ok, leaf)
            finally:
                self.unassign(t)

    # lower part ----------------------------------------------------------------
    def lower_completions(self) -> Iterator[tuple[list[tuple[int, int]], dict[int, int], list[int]]]:
        """Every optimal vertex/edge matching on top of the current triangle matching.

        Yields ``(pairs, depth, critical_edges)``: vertex/edge pairs of a rooted
        spanning forest of the leftover graph, each vertex's tree depth, and
        the leftover edges outside the forest.
        """
        p = self.partner
        free_edges = [e for e in self.edge_ends if p[e] < 0]
        parent = {v: v for v in self.verts}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for e in free_edges:
            a, b = self.edge_ends[e]
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        comps: dict[int, tuple[list[int], list[int]]] = {}
        for v in self.verts:
            comps.setdefault(find(v), ([], []))[0].append(v)
        for e in free_edges:
            comps[find(self.edge_ends[e][0])][1].append(e)
        per_comp = []
        for root in sorted(comps):
            vs, es = comps[root]
            choices = []
            for drop in itertools.combinations(es, len(es) - len(vs) + 1):
                tree = [e for e in es if e not in drop]
                if _is_forest(vs, [self.edge_ends[e] for e in tree]):
                    for r in vs:
                        pairs, depth = _orient(vs, tree, r, self.edge_ends)
                        choices.append((pairs, depth, list(drop)))
            per_comp.append(choices)
        for combo in itertools.product(*per_comp):
            if len(combo) == 1:
                yield combo[0]
                continue
            pairs, depth, crit = [], {}, []
            for pr, dp, cr in combo:
                pairs += pr
                depth.update(dp)
                crit += cr
            yield pairs, depth, crit

    def full_partner(self, lower) -> list[int]:
        full = list(self.partner)
        for v, e in lower[0]:
            full[v], full[e] = e, v
        return full

    def top_evaluator(self) -> Callable:
        """Alternating sum of the normalization as a function of a lower completion.

        With the triangle matching fixed, the normalization of the vertex/edge
        part is the tree depth (a forest edge shares its child's value, a
        leftover edge sits one above its deeper end), and the edge/triangle
        part is a longest-path pass in a fixed order.
        """
        K, p = self.K, self.partner
        ends = self.edge_ends
        order = _level_order_edges(K, p)
        nodes = []  # (edge, triangle, end a, end b, other faces)
        for e in reversed(order):  # h decreases along V-paths
            t = p[e]
            if t >= 0 and K.dim_of[t] == 2:
                a, b = ends[e]
                nodes.append((e, t, a, b, [f for f in K.faces_of[t] if f != e]))
        crit_tris = [(t, K.faces_of[t]) for t in self.tris if p[t] < 0]
        free = [(e,) + ends[e] for e in ends if p[e] < 0]

        def evaluate(lower) -> tuple[int, dict[int, int]]:
            _, depth, crit_edges = lower
            h = {}
            for e, a, b in free:
                da, db = depth[a], depth[b]
                h[e] = da if da > db else db
            value = 0
            for e in crit_edges:
                h[e] += 1
                value -= h[e]
            for e, t, a, b, others in nodes:
                x = max(depth[a], depth[b], h[others[0]], h[others[1]]) + 1
                h[e] = h[t] = x
            for t, fs in crit_tris:
                h[t] = max(h[f] for f in fs) + 1
                value += h[t]
            return value, h

        return evaluate

    def gap_checker(self) -> Callable:
        """Per-completion replay of the matching argument for the current triangles.

        Gradient paths between edges run through matched triangles only, so the
        critical incidence graph minus its edge side is fixed at the leaf.
        """
        K, p = self.K, self.partner
        reach = {t: reachable_level(K, p, K.faces_of[t]) for t in self.tris if p[t] < 0}

        single = next(iter(reach.items())) if len(reach) == 1 else None

        def check(crit_edges, h, value) -> None:
            if single and len(crit_edges) == 1:
                t, r = single
                e = crit_edges[0]
                if e not in r:
                    cert = hall_matching(CriticalIncidenceGraph((e,), (t,), frozenset()))
                    raise HallViolation(cert)
                if not 0 < h[t] - h[e] == value:
                    raise AssertionError(f"gap certificate fails: gap {h[t] - h[e]}, value {value}")
                return
            edges = frozenset((e, t) for t, r in reach.items() for e in crit_edges if e in r)
            cert = hall_matching(CriticalIncidenceGraph(tuple(crit_edges), tuple(reach), edges))
            if not cert.complete:
                raise HallViolation(cert)
            gaps = [h[t] - h[e] for e, t in cert.matching]
            if min(gaps) <= 0 or sum(gaps) != value:
                raise AssertionError(f"gap certificate fails: gaps {gaps}, value {value}")

        return check


def _level_order_edges(K: SimplicialComplex, partner: Sequence[int]) -> list[int]:
    """Edges in an order compatible with V-paths through matched triangles."""
    edges = K.ids_of_dim(1)
    succ = {e: [] for e in edges}
    indeg = {e: 0 for e in edges}
    for e in edges:
        t = partner[e]
        if t >= 0 and K.dim_of[t] == 2:
            for f in K.faces_of[t]:
                if f != e:
                    succ[e].append(f)
                    indeg[f] += 1
    order = [e for e in edges if indeg[e] == 0]
    for e in order:
        for f in succ[e]:
            indeg[f] -= 1
            if indeg[f] == 0:
                order.append(f)
    assert len(order) == len(edges)
    return order


def _is_forest(vs: list[int], edges: list[tuple[int, int]]) -> bool:
    parent = {v: v for v in vs}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def _orient(vs, tree, root, edge_ends) -> tuple[list[tuple[int, int]], dict[int, int]]:
    """Pair each non-root vertex with the tree edge leading towards ``root``."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in vs}
    for e in tree:
        a, b = edge_ends[e]
        adj[a].append((b, e))
        adj[b].append((a, e))
    pairs = []
    depth = {root: 0}
    stack = [root]
    while stack:
        u = stack.pop()
        for w, e in sorted(adj[u]):
            if w not in depth:
                depth[w] = depth[u] + 1
                pairs.append((w, e))
                stack.append(w)
    return pairs, depth


@dataclass
class OptimalityResult:
    critical_vector: tuple[int, ...]
    total: int
    witnesses: list[DiscreteVectorField]
    exact: bool
    lower_bound: int
    nodes: int


def _min_task(args, cap):
    K, prefix = args
    s = _FieldSearch(K)
    s.cap = cap
    if not s.apply_prefix(prefix):
        return TaskResult(0, False, None)
    root_lb = s.lower_bound(len(prefix))
    best = {"value": None, "partner": None}

    def bound_ok(lb):
        return best["value"] is None or lb < best["value"]

    def leaf():
        v = s.leaf_value()
        if best["value"] is None or v < best["value"]:
            best["value"] = v
            best["partner"] = s.full_partner(next(s.lower_completions()))
            if root_lb is not None and v <= root_lb:
                raise _Stop

    truncated = False
    try:
        s.dfs(len(prefix), bound_ok, leaf)
    except _Stop:
        pass
    except BudgetExceeded:
        truncated = True
    return TaskResult(min(s.nodes, cap), truncated, (best["value"], best["partner"]))


def _global_lower_bound(K: SimplicialComplex) -> int:
    s = _FieldSearch(K)
    lb = s.lower_bound(0)
    return lb if lb is not None else 0


def min_critical_cells(K: SimplicialComplex, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> OptimalityResult:
    """Fewest critical cells over all gradient fields on ``K``.

    The branch and bound covers dimension <= 2.  Higher-dimensional complexes
    are handled only when collapsible: a single critical vertex is optimal.
    """
    if K.dimension > 2:
        V, nodes = _collapse_field(K, budget)
        return OptimalityResult(critical_report(V).counts, 1, [V], True, 1, nodes)
    search = _FieldSearch(K)
    prefixes = search.prefixes()
    chi = search.chi
    results, truncated = _run_tasks(_min_task, [(K, p) for p in prefixes], budget, jobs)
    found = [r.payload for r in results if r.payload and r.payload[0] is not None]
    nodes = sum(r.nodes for r in results)
    lb = _global_lower_bound(K)
    if not found:
        return OptimalityResult((), -1, [], False, 2 * lb - chi, nodes)
    best = min(v for v, _ in found)
    witnesses = [field_from_partner(K, p) for v, p in found if v == best][:WITNESS_CAP]
    exact = not truncated or best <= lb
    vector = critical_report(witnesses[0]).counts
    return OptimalityResult(vector, 2 * best - chi, witnesses, exact, 2 * lb - chi, nodes)


def _enum_task(args, cap):
    K, prefix, target, early_zero, collect, certify = args
    s = _FieldSearch(K)
    s.cap = cap
    if not s.apply_prefix(prefix):
        return TaskResult(0, False, (None, None, 0, []))
    best = {"abs": None, "partner": None}
    count = 0
    collected = []

    def leaf():
        nonlocal count
        if s.leaf_value() != target:
            return
        evaluate = s.top_evaluator()
        check = s.gap_checker() if certify else None
        for lower in s.lower_completions():
            s.tick()
            count += 1
            value, h = evaluate(lower)
            if check:
                check(lower[2], h, value)
            if collect:
                collected.append((tuple(s.full_partner(lower)), value))
            if best["abs"] is None or abs(value) < best["abs"]:
                best["abs"], best["partner"] = abs(value), tuple(s.full_partner(lower))
                if value == 0 and early_zero:
                    raise _Stop

    truncated = stop = False
    try:
        s.dfs(len(prefix), lambda lb: lb <= target, leaf)
    except _Stop:
        stop = True
    except BudgetExceeded:
        truncated = True
    return TaskResult(min(s.nodes, cap), truncated, (best["abs"], best["partner"], count, collected), stop)


@dataclass
class NKResult:
    value: int | None
    witness: DiscreteVectorField | None
    exact: bool
    optimal_total: int
    critical_vector: tuple[int, ...]
    fields_examined: int
    nodes: int
    note: str = ""
    certified: int | None = None  # enumerated fields whose value-gap certificate was checked


def nk(K: SimplicialComplex, budget: int = DEFAULT_BUDGET, jobs: int = 1,
       certify: bool = False) -> NKResult:
    """Least |N(K,f)| over optimal gradient fields, by exhaustive enumeration.

    Equivalent Morse functions share a normalization, so enumerating optimal
    fields covers every optimal function.  Stops early once 0 is found.

    With ``certify`` set, and when the complex is connected with Euler
    characteristic 1 and no second homology, every enumerated field also gets
    the value-gap check of :func:`theorem_gap_certificate` (a failure raises).
    """
    if K.dimension > 2:
        V, nodes = _collapse_field(K, budget)
        return NKResult(0, V, True, 1, critical_report(V).counts, 1, nodes, "collapse witness")
    opt = min_critical_cells(K, budget, jobs)
    if not opt.witnesses:
        return NKResult(None, None, False, opt.total, (), 0, opt.nodes, "no optimal field found within budget")
    chi = homology(K).euler
    target = (opt.total + chi) // 2
    search = _FieldSearch(K)
    certify = certify and opt.total > 1 and relaxed_hypotheses_hold(K)
    tasks = [(K, p, target, True, False, certify) for p in search.prefixes()]
    results, truncated = _run_tasks(_enum_task, tasks, max(budget - opt.nodes, 0), jobs)
    nodes = opt.nodes + sum(r.nodes for r in results)
    examined = sum(r.payload[2] for r in results)
    found = [(r.payload[0], r.payload[1]) for r in results if r.payload[0] is not None]
    if not found:
        return NKResult(None, None, False, opt.total, opt.critical_vector, examined, nodes,
                        "enumeration truncated before any optimal field")
    value, partner = min(found, key=lambda x: x[0])  # first task wins ties
    witness = field_from_partner(K, partner)
    if abs(nkf(witness).value) != value:
        raise AssertionError("fast evaluation disagrees with the normalization")
    exact = opt.exact and (not truncated or value == 0)
    note = "" if exact else "value is an upper bound: search truncated"
    return NKResult(value, witness, exact, opt.total, critical_report(witness).counts, examined, nodes, note,
                    examined if certify else None)


def optimal_fields(K: SimplicialComplex, budget: int = DEFAULT_BUDGET) -> Iterator[tuple[DiscreteVectorField, int]]:
    """Yield every optimal field with its N(K,f); raises BudgetExceeded if truncated."""
    opt = min_critical_cells(K, budget)
    if not opt.exact:
        raise BudgetExceeded("optimum not certified within budget")
    chi = homology(K).euler
    target = (opt.total + chi) // 2
    search = _FieldSearch(K)
    remaining = budget - opt.nodes
    for prefix in search.prefixes():
        r = _enum_task((K, prefix, target, False, True, False), remaining)
        remaining -= r.nodes
        for partner, value in r.payload[3]:
            yield field_from_partner(K, partner, check=False), value
        if r.truncated:
            raise BudgetExceeded("enumeration truncated")


@dataclass
class GraphVerdict:
    result: NKResult
    is_tree: bool
    tree_witness: DiscreteVectorField | None


def nk_graph(G: SimplicialComplex, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> GraphVerdict:
    if G.dimension != 1 or not is_connected(G):
        raise ValueError("nk_graph expects a connected 1-dimensional complex")
    result = nk(G, budget, jobs)
    tree = G.f_vector[1] == G.f_vector[0] - 1
    if result.exact and (result.value == 0) != tree:
        raise AssertionError("graph verdict contradicts the tree criterion")
    witness = prop3_witness(G, budget=budget) if tree else None
    return GraphVerdict(result, tree, witness)


@dataclass
class PLProbe:
    depths: list[dict] = field(default_factory=list)
    best: int | None = None
    exact: bool = True
    caveat: str = ("minimum over barycentric subdivisions sd^j K, j <= depth only; "
                   "an upper bound for the minimum over all subdivisions")


def pl_probe(K: SimplicialComplex, depth: int, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> PLProbe:
    if K.dimension > 2:
        raise ValueError("pl_probe supports complexes of dimension <= 2")
    if not 0 <= depth <= 2:
        raise ValueError("depth must be between 0 and 2")
    probe = PLProbe()
    L = K
    for j in range(depth + 1):
        if j:
            L = barycentric_subdivision(L)
        r = nk(L, budget, jobs)
        probe.depths.append({"depth": j, "f_vector": list(L.f_vector), "value": r.value,
                             "exact": r.exact, "optimal_total": r.optimal_total})
        probe.exact = probe.exact and r.exact
        if r.value is not None and (probe.best is None or r.value < probe.best):
            probe.best = r.value
    return probe


sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
