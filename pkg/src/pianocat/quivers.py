"""Gentle quivers from dissections, keyboard and piano quivers, graded path algebra.

A keyboard quiver is the gentle quiver of the induced admissible dissection
of an extended one, remembering which vertices came from binding arcs (the
sharp vertices).  The piano quiver adds a degree -1 loop at every vertex and
a degree +1 loop at every non-sharp vertex; words in the resulting graded
path algebra are normalised by a small confluent rewriting system.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .dissections import (
    ChordArc,
    DissectionSet,
    induced_admissible,
    is_admissible_dissection,
)


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    src: int
    tgt: int
    meet: int  # boundary position where the two chords meet


@dataclass(frozen=True)
class GentleQuiver:
    """Finite quiver with length-two relations given as pairs of arrow indices."""

    num_vertices: int
    labels: tuple
    arrows: tuple[Arrow, ...]
    relations: frozenset[tuple[int, int]]

    def arrows_out(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.arrows) if e.src == v]

    def arrows_in(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.arrows) if e.tgt == v]

    def to_json(self) -> dict:
        return {
            "vertices": list(range(self.num_vertices)),
            "labels": [list(l.endpoints()) if isinstance(l, ChordArc) else l for l in self.labels],
            "arrows": [[e.src, e.tgt] for e in self.arrows],
            "relations": sorted(
                [self.arrows[a].src, self.arrows[a].tgt, self.arrows[b].tgt]
                for a, b in self.relations
            ),
        }


def gentle_from_dissection(
    d: DissectionSet, vertex_order: list[ChordArc] | None = None
) -> GentleQuiver:
    """Quiver of an admissible dissection.

    One vertex per red arc; an arrow i -> j for each red point where arc i
    immediately precedes arc j anticlockwise; a relation for each pair of
    consecutive arrows meeting at the two distinct endpoints of the middle
    arc.
    """
    if d.binding:
        raise QuiverError("dissection must be red only; extend via induced_admissible")
    if not is_admissible_dissection(d):
        raise QuiverError("dissection is not admissible")
    chords = list(vertex_order) if vertex_order is not None else list(d.red)
    if sorted(chords, key=ChordArc.endpoints) != sorted(d.red, key=ChordArc.endpoints):
        raise QuiverError("vertex order must list exactly the dissection arcs")
    size = d.disc.size
    index = {c: i for i, c in enumerate(chords)}
    arrows: list[Arrow] = []
    for point in range(size):
        incident = [c for c in chords if point in c.endpoints()]
        if len(incident) < 2:
            continue

        def far(c: ChordArc) -> int:
            a, b = c.endpoints()
            other = b if a == point else a
            return (other - point) % size

        incident.sort(key=far)
        for c1, c2 in zip(incident, incident[1:]):
            arrows.append(Arrow(index[c1], index[c2], point))
    relations = set()
    for i, e1 in enumerate(arrows):
        middle = chords[e1.tgt]
        other_end = middle.q if middle.p == e1.meet else middle.p
        for j, e2 in enumerate(arrows):
            if e2.src == e1.tgt and e2.meet == other_end:
                relations.add((i, j))
    return GentleQuiver(len(chords), tuple(chords), tuple(arrows), frozenset(relations))


def is_locally_gentle(q: GentleQuiver) -> bool:
    """At most two arrows in and out per vertex, length-two relations, and
    unique continuations both inside and outside the relation ideal."""
    if q.num_vertices < 1:
        return False
    # Weak connectivity.
    if q.num_vertices > 1:
        adj: dict[int, set[int]] = {v: set() for v in range(q.num_vertices)}
        for e in q.arrows:
            adj[e.src].add(e.tgt)
            adj[e.tgt].add(e.src)
        seen, stack = {0}, [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != q.num_vertices:
            return False
    for v in range(q.num_vertices):
        if len(q.arrows_out(v)) > 2 or len(q.arrows_in(v)) > 2:
            return False
    for a, b in q.relations:
        if q.arrows[a].tgt != q.arrows[b].src:
            return False
    for i, e in enumerate(q.arrows):
        before = [j for j in q.arrows_in(e.src)]
        after = [j for j in q.arrows_out(e.tgt)]
        if sum(1 for j in before if (j, i) in q.relations) > 1:
            return False
        if sum(1 for j in after if (i, j) in q.relations) > 1:
            return False
        if sum(1 for j in before if (j, i) not in q.relations) > 1:
            return False
        if sum(1 for j in after if (i, j) not in q.relations) > 1:
            return False
    return True


@dataclass(frozen=True)
class KeyboardQuiver:
    """Gentle quiver of the induced dissection plus the set of sharp vertices."""

    gentle: GentleQuiver
    sharp: frozenset[int]

    @property
    def num_vertices(self) -> int:
        return self.gentle.num_vertices

    def to_json(self) -> dict:
        obj = self.gentle.to_json()
        obj["sharp"] = sorted(self.sharp)
        return obj


def keyboard_from_extended(
    d: DissectionSet, vertex_order: list[ChordArc] | None = None
) -> KeyboardQuiver:
    """Keyboard quiver of an extended admissible dissection.

    Vertices follow ``vertex_order`` (default: red arcs then binding arcs);
    binding-arc vertices are sharp.
    """
    chords = list(vertex_order) if vertex_order is not None else list(d.all_chords())
    _, induced = induced_admissible(d)
    doubled = [ChordArc(2 * c.p, 2 * c.q) for c in chords]
    gentle = gentle_from_dissection(induced, vertex_order=doubled)
    relabelled = GentleQuiver(
        gentle.num_vertices, tuple(chords), gentle.arrows, gentle.relations
    )
    sharp = frozenset(i for i, c in enumerate(chords) if c.is_binding)
    return KeyboardQuiver(relabelled, sharp)


# Word symbols of the graded path algebra: ("a", v) is the degree -1 loop at
# v, ("b", v) the degree +1 loop, ("d", k) the k-th keyboard arrow.
Symbol = tuple[str, int]


class Shape(Enum):
    DELTA_ALPHA = "delta_alpha"
    DELTA_BETA = "delta_beta"
    DELTA_BETA_DELTA = "delta_beta_delta"
    ZERO = "zero"


@dataclass(frozen=True)
class PathNormalForm:
    source: int | None
    target: int | None
    degree: int | None
    shape: Shape
    word: tuple[Symbol, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.shape == Shape.ZERO


ZERO_FORM = PathNormalForm(None, None, None, Shape.ZERO)


@dataclass(frozen=True)
class PianoQuiver:
    """Keyboard quiver with graded loops and the induced relation data."""

    keyboard: KeyboardQuiver
    beta_runs: tuple[tuple[int, tuple[int, ...], int], ...]

    @property
    def num_vertices(self) -> int:
        return self.keyboard.num_vertices

    @property
    def sharp(self) -> frozenset[int]:
        return self.keyboard.sharp

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.keyboard.gentle.arrows

    @property
    def relations(self) -> frozenset[tuple[int, int]]:
        return self.keyboard.gentle.relations

    def has_beta(self, v: int) -> bool:
        return v not in self.sharp

    def symbol_ends(self, s: Symbol) -> tuple[int, int]:
        tag, k = s
        if tag in ("a", "b"):
            return k, k
        e = self.arrows[k]
        return e.src, e.tgt

    def symbol_degree(self, s: Symbol) -> int:
        return {"a": -1, "b": 1, "d": 0}[s[0]]

    def to_json(self) -> dict:
        obj = self.keyboard.to_json()
        obj["loops"] = {
            "alpha": list(range(self.num_vertices)),
            "beta": sorted(v for v in range(self.num_vertices) if self.has_beta(v)),
        }
        obj["commutation_runs"] = [
            [start, list(run), end] for start, run, end in self.beta_runs
        ]
        return obj

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def piano_from_keyboard(kb: KeyboardQuiver) -> PianoQuiver:
    """Attach the graded loops and instantiate the commutation runs.

    A commutation run is a relation-free arrow path between non-sharp
    vertices whose interior vertices are all sharp; since sharp vertices are
    never adjacent, runs have length one or two.
    """
    runs: list[tuple[int, tuple[int, ...], int]] = []
    arrows = kb.gentle.arrows
    for i, e in enumerate(arrows):
        if e.src in kb.sharp:
            continue
        if e.tgt not in kb.sharp:
            runs.append((e.src, (i,), e.tgt))
            continue
        for j, f in enumerate(arrows):
            if f.src != e.tgt or (i, j) in kb.gentle.relations:
                continue
            if f.tgt not in kb.sharp:
                runs.append((e.src, (i, j), f.tgt))
    return PianoQuiver(kb, tuple(runs))


def piano_from_extended(
    d: DissectionSet, vertex_order: list[ChordArc] | None = None
) -> PianoQuiver:
    return piano_from_keyboard(keyboard_from_extended(d, vertex_order))


def validate_word(p: PianoQuiver, word: tuple[Symbol, ...]) -> tuple[int, int]:
    """Return (source, target) of a composable word; raise otherwise."""
    if not word:
        raise QuiverError("empty word needs a base vertex; use a loop power instead")
    for s in word:
        tag, k = s
        if tag == "b" and not p.has_beta(k):
            raise QuiverError(f"no degree +1 loop at sharp vertex {k}")
        if tag == "d" and not (0 <= k < len(p.arrows)):
            raise QuiverError(f"no arrow {k}")
        if tag == "a" and not (0 <= k < p.num_vertices):
            raise QuiverError(f"no vertex {k}")
    for s, t in zip(word, word[1:]):
        if p.symbol_ends(s)[1] != p.symbol_ends(t)[0]:
            raise QuiverError(f"word is not composable at {s} -> {t}")
    return p.symbol_ends(word[0])[0], p.symbol_ends(word[-1])[1]


def word_degree(p: PianoQuiver, word: tuple[Symbol, ...]) -> int:
    return sum(p.symbol_degree(s) for s in word)


def _skeleton_dead(p: PianoQuiver, word: tuple[Symbol, ...]) -> bool:
    skeleton = [k for tag, k in word if tag == "d"]
    return any((a, b) in p.relations for a, b in zip(skeleton, skeleton[1:]))


def one_step_rewrites(
    p: PianoQuiver, word: tuple[Symbol, ...]
) -> list[tuple[Symbol, ...] | None]:
    """All single applications of a rewrite rule; None stands for zero.

    Rules: cancel adjacent inverse loop pairs at a vertex, move a degree -1
    loop right across an arrow, cancel a loop pair across one arrow into a
    sharp vertex, move a degree +1 loop right along a commutation run, and
    collapse any word whose arrow skeleton meets a length-two relation.
    """
    out: list[tuple[Symbol, ...] | None] = []
    if _skeleton_dead(p, word):
        out.append(None)
    run_by_start: dict[tuple[int, int], tuple[int, ...]] = {}
    for start, run, _ in p.beta_runs:
        run_by_start[(start, run[0])] = run
    for i, s in enumerate(word):
        tag, k = s
        nxt = word[i + 1] if i + 1 < len(word) else None
        if nxt is not None and tag in ("a", "b") and nxt[0] in ("a", "b"):
            if nxt[1] == k and nxt[0] != tag:
                out.append(word[:i] + word[i + 2 :])
        if nxt is not None and tag == "a" and nxt[0] == "d":
            e = p.arrows[nxt[1]]
            out.append(word[:i] + (nxt, ("a", e.tgt)) + word[i + 2 :])
        if tag == "b" and nxt is not None and nxt[0] == "d":
            run = run_by_start.get((k, nxt[1]))
            if run is not None and i + 1 + len(run) <= len(word):
                piece = word[i + 1 : i + 1 + len(run)]
                if piece == tuple(("d", a) for a in run):
                    end = p.arrows[run[-1]].tgt
                    out.append(
                        word[:i] + piece + (("b", end),) + word[i + 1 + len(run) :]
                    )
            # One arrow into a sharp vertex followed by the inverse loop.
            if i + 2 < len(word):
                third = word[i + 2]
                e = p.arrows[nxt[1]]
                if e.src == k and third == ("a", e.tgt):
                    out.append(word[:i] + (nxt,) + word[i + 3 :])
    return out


def normal_form(
    p: PianoQuiver, word: tuple[Symbol, ...], base: int | None = None
) -> PathNormalForm:
    """Deterministic normal form of a composable word.

    Words whose arrow skeleton hits a relation are zero; every other word
    reduces to a unique canonical representative consisting of the arrow
    path, a power of one loop, and at most one trailing arrow.  An empty
    word denotes the identity at ``base``.
    """
    if not word:
        if base is None:
            raise QuiverError("empty word needs a base vertex")
        return PathNormalForm(base, base, 0, Shape.DELTA_ALPHA, ())
    src, tgt = validate_word(p, word)
    degree = word_degree(p, word)
    if _skeleton_dead(p, word):
        return ZERO_FORM
    current = tuple(word)
    while True:
        steps = [w for w in one_step_rewrites(p, current) if w is not None]
        if not steps:
            break
        current = steps[0]
    shape = Shape.DELTA_ALPHA
    beta_positions = [i for i, s in enumerate(current) if s[0] == "b"]
    if beta_positions:
        after = current[beta_positions[-1] + 1 :]
        shape = Shape.DELTA_BETA_DELTA if any(s[0] == "d" for s in after) else Shape.DELTA_BETA
    return PathNormalForm(src, tgt, degree, shape, current)


@lru_cache(maxsize=4096)
def _point_chains(p: PianoQuiver) -> dict[int, list[int]]:
    """Vertices in radial order at each meet point, following the arrows."""
    chains: dict[int, list[int]] = {}
    by_point: dict[int, list[Arrow]] = {}
    for e in p.arrows:
        by_point.setdefault(e.meet, []).append(e)
    for point, es in by_point.items():
        nxt = {e.src: e.tgt for e in es}
        sources = set(nxt) - set(nxt.values())
        if len(sources) != 1:
            raise QuiverError("meet point without a linear radial chain")
        chain = [sources.pop()]
        while chain[-1] in nxt:
            chain.append(nxt[chain[-1]])
        chains[point] = chain
    return chains


def zero_degree_pairs(p: PianoQuiver) -> set[tuple[int, int]]:
    """Ordered vertex pairs joined by a nonzero arrow path (a radial run)."""
    pairs: set[tuple[int, int]] = set()
    for chain in _point_chains(p).values():
        for i in range(len(chain)):
            for j in range(i + 1, len(chain)):
                pairs.add((chain[i], chain[j]))
    return pairs


def arrow_path(p: PianoQuiver, a: int, b: int) -> tuple[int, ...] | None:
    """The unique nonzero arrow path from a to b, or None."""
    if a == b:
        return ()
    for point, chain in _point_chains(p).items():
        if a in chain and b in chain and chain.index(a) < chain.index(b):
            ia, ib = chain.index(a), chain.index(b)
            arrows = []
            for u, v in zip(chain[ia:ib], chain[ia + 1 : ib + 1]):
                (k,) = [
                    i
                    for i, e in enumerate(p.arrows)
                    if e.src == u and e.tgt == v and e.meet == point
                ]
                arrows.append(k)
            return tuple(arrows)
    return None


def graded_dim(p: PianoQuiver, a: int, b: int, m: int) -> int:
    """Dimension (0 or 1) of the degree-m piece of paths from a to b."""
    if a == b:
        if m <= 0 or p.has_beta(a):
            return 1
        return 0
    return 1 if arrow_path(p, a, b) is not None else 0


def canonical_word(p: PianoQuiver, a: int, b: int, m: int) -> tuple[Symbol, ...] | None:
    """A representative word of the class (a, b, m), or None when the class is zero."""
    if graded_dim(p, a, b, m) != 1:
        return None
    if a == b:
        if m <= 0:
            return tuple(("a", a) for _ in range(-m))
        return tuple(("b", a) for _ in range(m))
    path = arrow_path(p, a, b)
    assert path is not None
    deltas = tuple(("d", k) for k in path)
    if m == 0:
        return deltas
    if m < 0:
        return deltas + tuple(("a", b) for _ in range(-m))
    if p.has_beta(b):
        return deltas + tuple(("b", b) for _ in range(m))
    park = p.arrows[path[-1]].src
    return deltas[:-1] + tuple(("b", park) for _ in range(m)) + deltas[-1:]


def degree_component_structure(p: PianoQuiver, degree: int) -> list[list[int]]:
    """Dimension matrix of one graded component over the keyboard algebra.

    Non-positive components copy the keyboard path matrix.  A positive
    component keeps exactly the nonzero path classes: a class into a sharp
    vertex reaches its positive degrees by parking the degree +1 loop at the
    unique non-sharp vertex in front of the final arrow, so only the sharp
    diagonal (and with it every sharp source column) drops out.
    """
    nv = p.num_vertices
    pairs = zero_degree_pairs(p)
    keyboard = [[1 if (a == b or (a, b) in pairs) else 0 for b in range(nv)] for a in range(nv)]
    if degree <= 0:
        return [row[:] for row in keyboard]
    out = [row[:] for row in keyboard]
    for b in range(nv):
        if p.has_beta(b):
            continue
        incoming = [e.src for e in p.arrows if e.tgt == b]
        if len(incoming) > 1 or any(v in p.sharp for v in incoming):
            raise QuiverError("sharp vertex with unexpected incoming arrows")
        out[b][b] = 0
    return out


def quiver_to_dot(kb: KeyboardQuiver) -> str:
    """DOT rendering: solid arrows, dotted relation edges, filled sharp nodes."""
    lines = ["digraph keyboard {"]
    for v in range(kb.num_vertices):
        if v in kb.sharp:
            lines.append(f'    v{v} [label="{v}", shape=circle, style=filled, fillcolor=black, fontcolor=white];')
        else:
            lines.append(f'    v{v} [label="{v}", shape=circle];')
    for e in kb.gentle.arrows:
        lines.append(f"    v{e.src} -> v{e.tgt} [style=solid];")
    for a, b in sorted(kb.gentle.relations):
        i, l = kb.gentle.arrows[a].src, kb.gentle.arrows[b].tgt
        lines.append(f"    v{i} -> v{l} [style=dotted, arrowhead=none, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
