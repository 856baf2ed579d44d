"""Chord diagrams as canonical double-occurrence words.

A chord diagram of degree n is an oriented circle with n chords whose 2n
endpoints are distinct; the whole datum is the cyclic order of the endpoints.
We encode a diagram as a word of length 2n in which every chord label occurs
exactly twice, and keep one canonical representative per rotation class:
relabel chords 1, 2, 3, ... in order of first appearance, then take the
lexicographically least word over all 2n rotations.  Reflections are *not*
quotiented out; the circle is oriented.

The degree-0 diagram (empty word) is allowed and is the unit of the connect
sum product.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Sequence

#: Enumeration refuses degrees above this unless explicitly overridden.
#: The number of linear chord words is (2n-1)!!, which is 2 027 025 at n=8.
DEGREE_LIMIT = 8


class DegreeLimitError(ValueError):
    """Raised when an operation would exceed the configured degree cap."""


def canonical_word(seq: Sequence[int]) -> tuple[int, ...]:
    """Canonical form of a double-occurrence word.

    Relabels chords by first appearance and minimizes lexicographically over
    all rotations.  The input is not validated; see ``validate_word``.
    """
    seq = tuple(seq)
    length = len(seq)
    if length == 0:
        return ()
    doubled = seq + seq
    best: tuple[int, ...] | None = None
    for r in range(length):
        labels: dict[int, int] = {}
        nxt = 1
        out = []
        smaller = best is None
        ok = True
        for i in range(length):
            v = doubled[r + i]
            code = labels.get(v)
            if code is None:
                code = nxt
                labels[v] = nxt
                nxt += 1
            out.append(code)
            if not smaller:
                b = best[i]  # type: ignore[index]
                if code > b:
                    ok = False
                    break
                if code < b:
                    smaller = True
        if ok and smaller:
            best = tuple(out)
    assert best is not None
    return best


def validate_word(seq: Sequence[int]) -> None:
    """Raise ValueError unless ``seq`` is a double-occurrence word."""
    if len(seq) % 2 != 0:
        raise ValueError("chord word has odd length %d" % len(seq))
    counts: dict[int, int] = {}
    for v in seq:
        counts[v] = counts.get(v, 0) + 1
    bad = sorted(v for v, c in counts.items() if c != 2)
    if bad:
        raise ValueError(
            "labels must occur exactly twice; offending labels: %s"
            % ", ".join(str(v) for v in bad)
        )


@dataclass(frozen=True, order=True)
class ChordDiagram:
    """A canonical chord diagram.  ``word`` is always in canonical form."""

    word: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.word) // 2

    @property
    def labels(self) -> range:
        """Chord labels of the canonical word, 1..n."""
        return range(1, self.degree + 1)

    @classmethod
    def from_word(cls, seq: Iterable[int]) -> "ChordDiagram":
        seq = tuple(seq)
        validate_word(seq)
        return cls(canonical_word(seq))

    @classmethod
    def empty(cls) -> "ChordDiagram":
        return cls(())

    def endpoints(self, chord: int) -> tuple[int, int]:
        """Positions of the two endpoints of ``chord`` in the word."""
        hits = [i for i, v in enumerate(self.word) if v == chord]
        if len(hits) != 2:
            raise ValueError("unknown chord label %r" % (chord,))
        return hits[0], hits[1]

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.word)


def parse_and_canonicalize(text: str) -> ChordDiagram:
    """Parse a chord word and return its canonical diagram.

    Accepts whitespace-separated labels ("1 2 1 2", "b a b a") or the compact
    all-letter form ("abab").  The empty string parses to the degree-0
    diagram.  Output labels are always 1..n.
    """
    text = text.strip()
    if not text:
        return ChordDiagram.empty()
    if any(ch.isspace() for ch in text):
        tokens = text.split()
    elif all(ch in string.ascii_letters for ch in text):
        tokens = list(text)
    else:
        tokens = [text]
    ids: dict[str, int] = {}
    seq = []
    for tok in tokens:
        if tok not in ids:
            ids[tok] = len(ids) + 1
        seq.append(ids[tok])
    return ChordDiagram.from_word(seq)


def _partition_words(n: int, j: int) -> list[tuple[int, ...]]:
    """Canonical degree-n words whose chord 1 pairs position 0 with position j.

    Generates every first-occurrence-labelled pairing in the partition and
    keeps exactly the self-canonical ones, so the union over j = 1..2n-1 is
    the full canonical enumeration with no cross-partition deduplication.
    """
    size = 2 * n
    word = [0] * size
    word[0] = word[j] = 1
    out: list[tuple[int, ...]] = []

    def fill(next_label: int) -> None:
        try:
            i = word.index(0)
        except ValueError:
            w = tuple(word)
            if canonical_word(w) == w:
                out.append(w)
            return
        word[i] = next_label
        for k in range(i + 1, size):
            if word[k] == 0:
                word[k] = next_label
                fill(next_label + 1)
                word[k] = 0
        word[i] = 0

    fill(2)
    return out


_ENUM_CACHE: dict[int, tuple[ChordDiagram, ...]] = {}


def enumerate_diagrams(
    n: int, *, override_limits: bool = False, jobs: int = 1
) -> tuple[ChordDiagram, ...]:
    """All canonical chord diagrams of degree ``n``, sorted.

    The linear-word space is partitioned by the position of chord 1's second
    endpoint; partitions may be enumerated in parallel and the merged result
    is independent of ``jobs``.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n > DEGREE_LIMIT and not override_limits:
        raise DegreeLimitError(
            "degree %d exceeds the enumeration cap %d; pass override_limits"
            % (n, DEGREE_LIMIT)
        )
    cached = _ENUM_CACHE.get(n)
    if cached is not None:
        return cached
    if n == 0:
        result: tuple[ChordDiagram, ...] = (ChordDiagram.empty(),)
    else:
        parts = [(n, j) for j in range(1, 2 * n)]
        if jobs > 1 and n >= 5:
            import multiprocessing

            with multiprocessing.get_context("fork").Pool(jobs) as pool:
                chunks = pool.starmap(_partition_words, parts)
        else:
            chunks = [_partition_words(n, j) for (n, j) in parts]
        words = sorted(w for chunk in chunks for w in chunk)
        result = tuple(ChordDiagram(w) for w in words)
    _ENUM_CACHE[n] = result
    return result


def chords_intersect(d: ChordDiagram, c1: int, c2: int) -> bool:
    """True iff the endpoints of the two chords alternate around the circle."""
    if c1 == c2:
        raise ValueError("chords must be distinct")
    p1, p2 = d.endpoints(c1)
    q1, q2 = d.endpoints(c2)
    return (p1 < q1 < p2) != (p1 < q2 < p2)


def has_isolated_chord(d: ChordDiagram) -> bool:
    """True iff some chord crosses no other chord (the 1-term configuration)."""
    for c in d.labels:
        if not any(chords_intersect(d, c, o) for o in d.labels if o != c):
            return True
    return False


@dataclass(frozen=True)
class ChordSubset:
    """A subset of the chords of a diagram."""

    diagram: ChordDiagram
    members: frozenset[int]

    def __post_init__(self):
        bad = self.members - set(self.diagram.labels)
        if bad:
            raise ValueError("labels %s are not chords of the diagram" % sorted(bad))

    def complement(self) -> "ChordSubset":
        return ChordSubset(self.diagram, frozenset(self.diagram.labels) - self.members)


def _member_runs(word: tuple[int, ...], members: frozenset[int]) -> list[tuple[int, int]]:
    """Maximal circular runs of member endpoints, as (start, length) pairs."""
    length = len(word)
    mark = [v in members for v in word]
    if all(mark) or not any(mark):
        return [(0, length)] if any(mark) else []
    runs = []
    for i in range(length):
        if mark[i] and not mark[i - 1]:
            l = 0
            while mark[(i + l) % length]:
                l += 1
            runs.append((i, l))
    return runs


def is_share(s: ChordSubset) -> bool:
    """Whether the subset's endpoints can be cut off by four circle points.

    Equivalently: the member endpoints form at most two maximal circular
    blocks, so no chord joins adjacent arcs of the induced 4-arc division.
    The empty subset and the full chord set are both shares.
    """
    return len(_member_runs(s.diagram.word, s.members)) <= 2


def _adjacency(d: ChordDiagram) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {c: set() for c in d.labels}
    labels = list(d.labels)
    for i, c1 in enumerate(labels):
        for c2 in labels[i + 1 :]:
            if chords_intersect(d, c1, c2):
                adj[c1].add(c2)
                adj[c2].add(c1)
    return adj


def _components(adj: dict[int, set[int]], skip: set[int]) -> list[set[int]]:
    seen: set[int] = set(skip)
    comps = []
    for start in adj:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    comp.add(u)
                    stack.append(u)
        comps.append(comp)
    return comps


def boughs(d: ChordDiagram, trunk: int) -> list[ChordSubset]:
    """Connected components of the intersection graph minus the trunk vertex.

    Requires a connected intersection graph on at least two chords; every
    returned subset is a share (each bough crosses the trunk).  Boughs are
    listed by their smallest endpoint position in the word.
    """
    if trunk not in d.labels:
        raise ValueError("trunk %r is not a chord of the diagram" % (trunk,))
    if d.degree < 2:
        raise ValueError("bough decomposition needs at least two chords")
    adj = _adjacency(d)
    if len(_components(adj, set())) != 1:
        raise ValueError(
            "intersection graph is disconnected; restrict to a component first"
        )
    comps = _components(adj, {trunk})

    def min_pos(comp: set[int]) -> int:
        return min(i for i, v in enumerate(d.word) if v in comp)

    comps.sort(key=min_pos)
    return [ChordSubset(d, frozenset(comp)) for comp in comps]


def connect_sum(d1: ChordDiagram, d2: ChordDiagram, at: int = 0) -> ChordDiagram:
    """Splice ``d2`` into gap ``at`` of ``d1`` (gap g sits before position g).

    The degree-0 diagram has the single gap 0.  Degrees add; the result is
    canonical.  Modulo the 4-term relation the gap choice does not matter.
    """
    gaps = len(d1.word) if d1.word else 1
    if not 0 <= at < gaps:
        raise ValueError("gap index %d out of range 0..%d" % (at, gaps - 1))
    shift = d1.degree
    spliced = d1.word[:at] + tuple(v + shift for v in d2.word) + d1.word[at:]
    return ChordDiagram.from_word(spliced)


@dataclass(frozen=True)
class ElementaryMove:
    """A trunk-based rewrite of a chord diagram.

    kind 'permute-boughs': payload is a tuple p, a bijection of bough-list
    indices; the slot holding bough i receives bough p[i].
    kind 'reflect-bough': payload is the index of the bough to reflect; its
    endpoint blocks are reversed in place within each trunk arc.
    kind 'rotate-share-180': payload is a ChordSubset that must be a share;
    its two endpoint blocks swap contents (orientation preserved), a single
    block is reversed.  ``trunk`` is unused for this kind and may be None.
    """

    kind: str
    trunk: int | None
    payload: object

    KINDS = ("permute-boughs", "reflect-bough", "rotate-share-180")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError("unknown move kind %r" % (self.kind,))


def _bough_blocks(d: ChordDiagram, trunk: int):
    """Rotate so the trunk opens the word; return per-bough arc blocks."""
    t1, t2 = d.endpoints(trunk)
    word = d.word[t1:] + d.word[:t1]
    t2 -= t1
    arc_a = list(range(1, t2))
    arc_b = list(range(t2 + 1, len(word)))
    bl = boughs(d, trunk)
    blocks = []
    for b in bl:
        a_pos = [p for p in arc_a if word[p] in b.members]
        b_pos = [p for p in arc_b if word[p] in b.members]
        for pos in (a_pos, b_pos):
            if not pos or pos != list(range(pos[0], pos[0] + len(pos))):
                raise RuntimeError("bough endpoints are not contiguous blocks")
        blocks.append((a_pos, b_pos))
    a_order = sorted(range(len(bl)), key=lambda i: blocks[i][0][0])
    b_order = sorted(range(len(bl)), key=lambda i: blocks[i][1][0])
    if b_order != list(reversed(a_order)):
        raise RuntimeError("bough blocks do not interleave as parallel bands")
    return word, t2, bl, blocks, a_order


def apply_elementary(d: ChordDiagram, m: ElementaryMove) -> ChordDiagram:
    """Apply an elementary transformation and canonicalize.

    The rewrite preserves the intersection graph up to isomorphism; this is
    self-checked and a violation raises RuntimeError.
    """
    if m.kind == "rotate-share-180":
        s = m.payload
        if not isinstance(s, ChordSubset) or s.diagram != d:
            raise ValueError("payload must be a ChordSubset of the diagram")
        if m.trunk is not None and m.trunk not in d.labels:
            raise ValueError("trunk %r is not a chord of the diagram" % (m.trunk,))
        if not is_share(s):
            raise ValueError("subset is not a share")
        word = d.word
        length = len(word)
        runs = _member_runs(word, s.members)
        if not runs:
            raise ValueError("empty share cannot be rotated")
        if runs[0][1] == length:
            return d  # rotating the whole diagram is the identity
        # rotate the raw word so no member block wraps position 0 (labels kept)
        anchor = next(i for i in range(length) if word[i] not in s.members)
        word = word[anchor:] + word[:anchor]
        runs = _member_runs(word, s.members)
        if len(runs) == 2:
            (p0, pl), (q0, ql) = runs
            p_items = list(word[p0 : p0 + pl])
            q_items = list(word[q0 : q0 + ql])
            new_word: list[int] = []
            i = 0
            while i < length:
                if i == p0:
                    new_word.extend(q_items)
                    i += pl
                elif i == q0:
                    new_word.extend(p_items)
                    i += ql
                else:
                    new_word.append(word[i])
                    i += 1
        else:
            (r0, rl) = runs[0]
            new_word = list(word)
            new_word[r0 : r0 + rl] = reversed(new_word[r0 : r0 + rl])
        result_d = ChordDiagram.from_word(new_word)
    else:
        if m.trunk is None or m.trunk not in d.labels:
            raise ValueError("trunk %r is not a chord of the diagram" % (m.trunk,))
        word, t2, bl, blocks, a_order = _bough_blocks(d, m.trunk)
        k = len(bl)
        if m.kind == "permute-boughs":
            perm = tuple(m.payload)  # type: ignore[arg-type]
            if sorted(perm) != list(range(k)):
                raise ValueError("payload is not a permutation of %d boughs" % k)
            new_a_order = [perm[i] for i in a_order]
            a_content = []
            for i in new_a_order:
                a_pos, _ = blocks[i]
                a_content.extend(word[p] for p in a_pos)
            b_content = []
            for i in reversed(new_a_order):
                _, b_pos = blocks[i]
                b_content.extend(word[p] for p in b_pos)
            new_word = [word[0]] + a_content + [word[t2]] + b_content
        elif m.kind == "reflect-bough":
            idx = m.payload
            if not isinstance(idx, int) or not 0 <= idx < k:
                raise ValueError("bough index %r out of range" % (idx,))
            new_word = list(word)
            a_pos, b_pos = blocks[idx]
            for pos in (a_pos, b_pos):
                seg = [word[p] for p in pos]
                for p, v in zip(pos, reversed(seg)):
                    new_word[p] = v
        else:  # pragma: no cover - guarded in ElementaryMove
            raise ValueError("unknown move kind %r" % (m.kind,))
        result_d = ChordDiagram.from_word(new_word)

    from .graphs import graph_class_key, intersection_graph

    if graph_class_key(intersection_graph(result_d)) != graph_class_key(
        intersection_graph(d)
    ):
        raise RuntimeError(
            "elementary move changed the intersection graph: %s -> %s" % (d, result_d)
        )
    return result_d
