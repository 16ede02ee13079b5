"""DIMACS ``sp`` instances and JSON result records.

Weights may be negative in both directions of the round trip.  Vertex ids are
1-based on disk and 0-based in :class:`Graph`; arcs are numbered from 1 in
file order, which is also the edge id plus one.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .certificate import NegCycleCertificate, verify_cycle
from .driver import UNREACHABLE, ShortestPathTree, verify_tree
from .errors import LoadError, ParseError
from .graph import Graph


def parse_dimacs(text: str) -> Graph:
    n = m = None
    src, dst, w = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise ParseError("second problem line", lineno)
            if len(parts) != 4 or parts[1] != "sp":
                raise ParseError("expected 'p sp <n> <m>'", lineno)
            n, m = _ints(parts[2:], lineno)
            if n < 1 or m < 0:
                raise ParseError("need n >= 1 and m >= 0", lineno)
        elif tag == "a":
            if n is None:
                raise ParseError("arc before the problem line", lineno)
            if len(parts) != 4:
                raise ParseError("expected 'a <src> <dst> <weight>'", lineno)
            u, v, wt = _ints(parts[1:], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex id out of range 1..{n}", lineno)
            src.append(u - 1)
            dst.append(v - 1)
            w.append(wt)
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise ParseError("missing problem line")
    if len(src) != m:
        raise ParseError(f"problem line announces {m} arcs, found {len(src)}")
    try:
        return Graph(n, np.array(src, np.int64), np.array(dst, np.int64), np.array(w, object).astype(np.int64))
    except OverflowError as exc:
        raise LoadError(str(exc)) from None


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"not an integer in {' '.join(tokens)!r}", lineno) from None


def emit_dimacs(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"c {c}" for c in comment.splitlines()]
    lines.append(f"p sp {g.n} {g.m}")
    lines += [f"a {u + 1} {v + 1} {w}" for u, v, w in g.edges()]
    return "\n".join(lines) + "\n"


def read_dimacs(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_dimacs(fh.read())


@dataclass
class ResultRecord:
    """What ``solve`` prints.

    ``dist`` has ``None`` for unreachable vertices; ``parent`` holds the arc
    number entering each vertex (0 for none).  ``cycle`` lists
    ``[arc, u, v, w]`` with 1-based arcs and vertices.
    """

    kind: str  # "tree" | "cycle"
    seed: int
    ops: int
    attempts: int
    source: int | None = None
    dist: list | None = None
    parent: list | None = None
    cycle: list | None = None
    cycle_weight: int | None = None
    timings: dict | None = None
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_outcome(cls, g: Graph, outcome, seed: int, ops: int, attempts: int,
                     timings: dict | None = None) -> "ResultRecord":
        if isinstance(outcome, NegCycleCertificate):
            cyc = [[e + 1, int(g.src[e]) + 1, int(g.dst[e]) + 1, int(g.w[e])] for e in outcome.edges]
            return cls("cycle", seed, ops, attempts, cycle=cyc, cycle_weight=int(outcome.weight),
                       timings=timings)
        dist = [None if d >= UNREACHABLE else int(d) for d in outcome.dist.tolist()]
        parent = [int(p) + 1 for p in outcome.parent.tolist()]
        return cls("tree", seed, ops, attempts, source=outcome.source + 1, dist=dist,
                   parent=parent, timings=timings)

    def to_json(self) -> str:
        body = {"kind": self.kind, "seed": self.seed, "ops": self.ops, "attempts": self.attempts}
        if self.kind == "tree":
            body.update(source=self.source, dist=self.dist, parent=self.parent)
        else:
            body.update(cycle=self.cycle, cycle_weight=self.cycle_weight)
        if self.timings is not None:
            body["timings"] = self.timings
        body.update(self.extra)
        return json.dumps(body, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ResultRecord":
        try:
            body = json.loads(text)
            rec = cls(kind=body.pop("kind"), seed=body.pop("seed"), ops=body.pop("ops"),
                      attempts=body.pop("attempts"))
        except (ValueError, KeyError, TypeError) as exc:
            raise LoadError(f"malformed result record: {exc}") from None
        if rec.kind not in ("tree", "cycle"):
            raise LoadError(f"unknown result kind {rec.kind!r}")
        for name in ("source", "dist", "parent", "cycle", "cycle_weight", "timings"):
            if name in body:
                setattr(rec, name, body.pop(name))
        rec.extra = body
        return rec

    def outcome(self, g: Graph):
        """Back to a tree or certificate over ``g`` (ids checked loosely;
        use :func:`negsssp.verify_record` for a real check)."""
        if self.kind == "cycle":
            return NegCycleCertificate(tuple(int(a) - 1 for a, *_ in self.cycle), int(self.cycle_weight))
        dist = np.array([UNREACHABLE if d is None else d for d in self.dist], np.int64)
        parent = np.array(self.parent, np.int64) - 1
        return ShortestPathTree(int(self.source) - 1, dist, parent)


def verify_record(g: Graph, rec: ResultRecord) -> tuple[bool, str]:
    """Check a record against its instance without trusting any of it.

    Returns ``(ok, reason)``.
    """
    if rec.kind == "cycle":
        if not rec.cycle:
            return False, "empty cycle"
        for arc, u, v, w in rec.cycle:
            if not 1 <= arc <= g.m:
                return False, f"arc {arc} does not exist"
            e = arc - 1
            if (int(g.src[e]) + 1, int(g.dst[e]) + 1, int(g.w[e])) != (u, v, w):
                return False, f"arc {arc} is listed as ({u}, {v}, {w}) but reads " \
                              f"({int(g.src[e]) + 1}, {int(g.dst[e]) + 1}, {int(g.w[e])})"
        if not verify_cycle(g, rec.outcome(g)):
            return False, "arcs do not close a negative walk of the stated weight"
        return True, "negative cycle verified"
    if rec.dist is None or rec.parent is None or rec.source is None:
        return False, "tree record lacks dist, parent or source"
    if len(rec.dist) != g.n or len(rec.parent) != g.n or not 1 <= rec.source <= g.n:
        return False, "tree record does not match the instance size"
    if any(not 0 <= p <= g.m for p in rec.parent):
        return False, "parent arc out of range"
    if not verify_tree(g, rec.outcome(g)):
        return False, "distances are not tight shortest-path distances"
    return True, "shortest path tree verified"
