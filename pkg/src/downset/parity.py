"""Parity game solving through downsets of visit counters.

Vertices carry priorities; the even player wins a play iff the maximum
priority seen infinitely often is even.  The solver tracks, per vertex, a
downset of counter vectors over the odd priorities: component i is the
number of further visits to priority 2i-1 vertices the even player can
still afford, ranging over [-1, n_i] where n_i is the number of such
vertices.  Counters are stored shifted by +1 so the antichain machinery
stays over the naturals; logical -1 is stored 0.

Stepping backwards through a vertex of odd priority 2i-1 decrements
component i (floored at logical -1); through an even priority 2i it tops
components 1..i back up to their caps (a dominating even visit resets the
smaller odd debts).  Iterating the controllable-predecessor refinement from
the all-caps downset converges to its greatest fixpoint; a vertex is
even-winning iff its final downset contains a fully non-negative counter.

The module also carries a pgsolver-format parser, co-lexicographic strategy
extraction for the even player, and an independent Zielonka-style oracle
used by tests and the CLI's --check mode.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .adaptive import get_backend
from .core import Antichain, maxac

EVEN = 0
ODD = 1


class ParityParseError(ValueError):
    pass


@dataclass
class ParityGame:
    owners: List[int]             # 0 even, 1 odd
    priorities: List[int]
    succs: List[List[int]]        # dense indices
    ids: List[int]                # dense index -> original id
    names: List[Optional[str]] = field(default_factory=list)

    def __post_init__(self) -> None:
        nv = len(self.owners)
        if not (len(self.priorities) == len(self.succs) == len(self.ids) == nv):
            raise ValueError("inconsistent vertex table lengths")
        if not self.names:
            self.names = [None] * nv
        for v in range(nv):
            if self.owners[v] not in (EVEN, ODD):
                raise ValueError(f"vertex {self.ids[v]}: owner must be 0 or 1")
            if self.priorities[v] < 0:
                raise ValueError(f"vertex {self.ids[v]}: negative priority")
            if not self.succs[v]:
                raise ValueError(f"vertex {self.ids[v]} has no successors")
            for w in self.succs[v]:
                if not 0 <= w < nv:
                    raise ValueError(f"vertex {self.ids[v]}: successor index {w} out of range")

    def __len__(self) -> int:
        return len(self.owners)

    def predecessors(self) -> List[List[int]]:
        preds: List[List[int]] = [[] for _ in range(len(self))]
        for u, out in enumerate(self.succs):
            for v in out:
                preds[v].append(u)
        return preds


def parse_pgsolver(text: str) -> ParityGame:
    """Parse the line-based interchange format.

    Optional header ``parity N;`` then one record per statement:
    ``id priority owner successors[ name];`` with comma-separated successor
    ids and owner 0 for the even player.  Statements end with a semicolon;
    several may share a line.
    """
    records: Dict[int, Tuple[int, int, List[int], Optional[str]]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if not line.endswith(";"):
            raise ParityParseError(f"line {lineno}: statement missing terminating semicolon")
        for stmt in line.split(";"):
            stmt = stmt.strip()
            if not stmt:
                continue
            if stmt.startswith("parity"):
                parts = stmt.split()
                if len(parts) != 2 or not parts[1].isdigit():
                    raise ParityParseError(f"line {lineno}: malformed header {stmt!r}")
                continue
            parts = stmt.split(None, 3)
            if len(parts) < 4:
                raise ParityParseError(
                    f"line {lineno}: record {stmt!r} needs id, priority, owner and successors")
            try:
                vid, prio, owner = int(parts[0]), int(parts[1]), int(parts[2])
            except ValueError:
                raise ParityParseError(f"line {lineno}: malformed record {stmt!r}") from None
            rest = parts[3].split(None, 1)
            succ_field = rest[0]
            name = rest[1].strip().strip('"') if len(rest) > 1 else None
            if owner not in (0, 1):
                raise ParityParseError(f"line {lineno}: owner must be 0 or 1, got {owner}")
            if prio < 0:
                raise ParityParseError(f"line {lineno}: negative priority")
            if vid in records:
                raise ParityParseError(f"line {lineno}: duplicate vertex id {vid}")
            succ_ids: List[int] = []
            for tok in succ_field.split(","):
                tok = tok.strip()
                if not tok.isdigit():
                    raise ParityParseError(f"line {lineno}: bad successor entry {tok!r}")
                succ_ids.append(int(tok))
            if not succ_ids:
                raise ParityParseError(f"line {lineno}: vertex {vid} has no successors")
            records[vid] = (prio, owner, succ_ids, name)
    if not records:
        raise ParityParseError("no vertex records found")
    ids = sorted(records)
    index = {vid: i for i, vid in enumerate(ids)}
    owners, priorities, succs, names = [], [], [], []
    for vid in ids:
        prio, owner, succ_ids, name = records[vid]
        out: List[int] = []
        seen = set()
        for s in succ_ids:
            if s not in index:
                raise ParityParseError(f"vertex {vid}: successor {s} does not exist")
            if s not in seen:
                seen.add(s)
                out.append(index[s])
        owners.append(owner)
        priorities.append(prio)
        succs.append(out)
        names.append(name)
    return ParityGame(owners, priorities, succs, ids, names)


def format_pgsolver(game: ParityGame) -> str:
    lines = [f"parity {len(game) - 1};"]
    for v in range(len(game)):
        succ = ",".join(str(game.ids[w]) for w in game.succs[v])
        name = f' "{game.names[v]}"' if game.names[v] else ""
        lines.append(f"{game.ids[v]} {game.priorities[v]} {game.owners[v]} {succ}{name};")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Counter downsets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CounterSpace:
    """Shifted counter domain: component i (0-based) tracks odd priority
    2(i+1)-1; stored values range over [0, caps[i]+1], logical = stored-1."""

    d: int
    caps: Tuple[int, ...]


def counter_space(game: ParityGame) -> CounterSpace:
    maxp = max(game.priorities)
    d = max(1, (maxp + 1) // 2)
    caps = tuple(sum(1 for p in game.priorities if p == 2 * i - 1) for i in range(1, d + 1))
    return CounterSpace(d, caps)


def bwd_counter(stored: Tuple[int, ...], priority: int, caps: Sequence[int]) -> Tuple[int, ...]:
    """One-step backward update of a stored counter through a vertex of the
    given priority; total and saturating on both ends.

    Odd priority 2i-1 decrements component i, flooring at logical -1
    (stored 0), which is absorbing: once the odd player can force the bad
    cycle, nothing recovers the component.  Even priority 2i tops the live
    components 1..i back up to their caps; dead components stay dead, since
    an even visit ahead of an already-lost continuation does not change the
    continuation.
    """
    if priority % 2 == 1:
        idx = (priority - 1) // 2
        s = stored[idx]
        return stored[:idx] + (s - 1 if s > 0 else 0,) + stored[idx + 1:]
    i = priority // 2
    if i == 0:
        return stored
    head = tuple(stored[j] if stored[j] == 0 else min(stored[j] + caps[j], caps[j] + 1)
                 for j in range(min(i, len(stored))))
    return head + stored[len(head):]


def down_bwd(ac: Antichain, priority: int, space: CounterSpace) -> Antichain:
    """Closure of the backward image of a counter downset: apply the update
    to the maximal elements and re-reduce (the update is monotone)."""
    if not ac.vectors:
        return ac
    return maxac([bwd_counter(c, priority, space.caps) for c in ac.vectors], dim=space.d)


def initial_counters(space: CounterSpace) -> Antichain:
    """The all-caps downset: the worst still-live situation for the even
    player, one saturated counter per odd priority."""
    return Antichain._from_maximal(space.d, [tuple(c + 1 for c in space.caps)])


def _has_nonnegative(ac: Antichain) -> bool:
    return any(all(s >= 1 for s in c) for c in ac.vectors)


def _cpre_vertex(mu: List[Antichain], u: int, game: ParityGame, space: CounterSpace, ops) -> Antichain:
    parts = [down_bwd(mu[v], game.priorities[u], space) for v in game.succs[u]]
    combined = parts[0]
    if game.owners[u] == EVEN:
        for p in parts[1:]:
            combined = ops.union(combined, p)
    else:
        for p in parts[1:]:
            combined = ops.intersect(combined, p)
    return ops.intersect(mu[u], combined)


def cpre_step(mu: List[Antichain], game: ParityGame, backend: str = "list"):
    """One synchronous refinement of the whole map; returns the new map and
    the set of vertices whose downset shrank."""
    ops = get_backend(backend)
    space = counter_space(game)
    nu = [_cpre_vertex(mu, u, game, space, ops) for u in range(len(game))]
    changed = {u for u in range(len(game)) if nu[u] != mu[u]}
    return nu, changed


@dataclass
class SolveResult:
    winners: List[int]            # per vertex: EVEN or ODD
    iterations: int               # vertex refinements performed
    final: List[Antichain]        # greatest fixpoint of the refinement
    space: CounterSpace


def solve(game: ParityGame, backend: str = "list",
          order: Optional[Sequence[int]] = None) -> SolveResult:
    """Worklist iteration to the greatest fixpoint, then the winner test.

    The worklist starts with every vertex (in ``order`` if given); a change
    at a vertex re-enqueues its predecessors.  The fixpoint is independent
    of the processing order.
    """
    ops = get_backend(backend)
    space = counter_space(game)
    nv = len(game)
    init = initial_counters(space)
    mu: List[Antichain] = [init] * nv
    preds = game.predecessors()
    queue = deque(order if order is not None else range(nv))
    queued = [False] * nv
    for u in queue:
        queued[u] = True
    iterations = 0
    while queue:
        u = queue.popleft()
        queued[u] = False
        iterations += 1
        new = _cpre_vertex(mu, u, game, space, ops)
        if new != mu[u]:
            mu[u] = new
            for p in preds[u]:
                if not queued[p]:
                    queued[p] = True
                    queue.append(p)
    winners = [EVEN if _has_nonnegative(mu[v]) else ODD for v in range(nv)]
    return SolveResult(winners, iterations, mu, space)


def synthesize_even_strategy(game: ParityGame, result: SolveResult) -> Dict[int, int]:
    """Positional strategy for the even player on its winning, even-owned
    vertices.

    For each candidate successor, take the best fully non-negative counter
    guaranteed after stepping back through the current vertex, compared
    co-lexicographically over the counter components that the current
    priority does not dominate; move to the successor with the greatest
    such guarantee, ties broken by successor order.
    """
    space = result.space
    strategy: Dict[int, int] = {}
    for u in range(len(game)):
        if game.owners[u] != EVEN or result.winners[u] != EVEN:
            continue
        pu = game.priorities[u]
        kept = [i for i in range(space.d) if 2 * (i + 1) >= pu]
        best_key = None
        best_succ = None
        for v in game.succs[u]:
            image = down_bwd(result.final[v], pu, space)
            keys = [tuple(c[i] for i in reversed(kept))
                    for c in image.vectors if all(s >= 1 for s in c)]
            if not keys:
                continue
            key = max(keys)
            if best_key is None or key > best_key:
                best_key = key
                best_succ = v
        if best_succ is None:
            raise RuntimeError(f"no viable successor for winning vertex {game.ids[u]}")
        strategy[u] = best_succ
    return strategy


# ---------------------------------------------------------------------------
# Independent oracle and strategy validation
# ---------------------------------------------------------------------------

def _attract(game: ParityGame, preds, target, player: int, alive) -> set:
    result = set(target)
    deg = {v: sum(1 for w in game.succs[v] if w in alive) for v in alive}
    stack = list(target)
    while stack:
        v = stack.pop()
        for p in preds[v]:
            if p not in alive or p in result:
                continue
            if game.owners[p] == player:
                result.add(p)
                stack.append(p)
            else:
                deg[p] -= 1
                if deg[p] == 0:
                    result.add(p)
                    stack.append(p)
    return result


def zielonka(game: ParityGame) -> List[int]:
    """Classic recursive attractor decomposition; winners per vertex."""
    preds = game.predecessors()

    def win(alive: frozenset) -> Tuple[set, set]:
        if not alive:
            return set(), set()
        p = max(game.priorities[v] for v in alive)
        player = p % 2
        target = {v for v in alive if game.priorities[v] == p}
        a = _attract(game, preds, target, player, alive)
        w = win(frozenset(alive - a))
        if not w[1 - player]:
            full = (set(alive), set()) if player == EVEN else (set(), set(alive))
            return full
        b = _attract(game, preds, w[1 - player], 1 - player, alive)
        w2 = win(frozenset(alive - b))
        if player == EVEN:
            return w2[0], w2[1] | b
        return w2[0] | b, w2[1]

    w0, w1 = win(frozenset(range(len(game))))
    return [EVEN if v in w0 else ODD for v in range(len(game))]


def _sccs(vertices, edges) -> List[List[int]]:
    """Tarjan's strongly connected components, iterative."""
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    on_stack = set()
    stack: List[int] = []
    out: List[List[int]] = []
    counter = [0]

    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(edges.get(root, ())))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(edges.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def check_even_strategy(game: ParityGame, winners: Sequence[int],
                        strategy: Dict[int, int]) -> bool:
    """Validate a strategy: inside the even winning region, with even moves
    fixed and odd moves free, every cycle must have an even maximum
    priority."""
    region = {v for v in range(len(game)) if winners[v] == EVEN}
    edges: Dict[int, List[int]] = {}
    for u in region:
        if game.owners[u] == EVEN:
            if u not in strategy:
                return False
            v = strategy[u]
            if v not in game.succs[u] or v not in region:
                return False
            edges[u] = [v]
        else:
            if any(w not in region for w in game.succs[u]):
                return False
            edges[u] = list(game.succs[u])
    odd_priorities = sorted({game.priorities[v] for v in region if game.priorities[v] % 2 == 1})
    for p in odd_priorities:
        sub = {v for v in region if game.priorities[v] <= p}
        sub_edges = {v: [w for w in edges[v] if w in sub] for v in sub}
        for comp in _sccs(sorted(sub), sub_edges):
            nontrivial = len(comp) > 1 or comp[0] in sub_edges.get(comp[0], ())
            if nontrivial and any(game.priorities[v] == p for v in comp):
                return False
    return True
