"""The algebra of chord diagrams modulo the 1-term and 4-term relations.

Linear combinations carry exact rational coefficients over the canonical
diagram basis of one degree.  Relation spans are echelonized once per
(degree, with/without 1T) and reused; quotient elements are always handled
through reduced normal forms, so equivalence is plain equality of normal
forms.  The coproduct, the primitive elements built from path and tadpole
graphs, and the intersection-graph kernel check live here too.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import elimination
from .diagrams import (
    ChordDiagram,
    ChordSubset,
    DEGREE_LIMIT,
    DegreeLimitError,
    _member_runs,
    canonical_word,
    connect_sum,
    enumerate_diagrams,
    has_isolated_chord,
    is_share,
)
from .graphs import (
    Graph,
    graph_class_key,
    intersection_graph,
    path_graph,
    realize_graph,
    tadpole_graph,
)

#: Bump when relation generation changes; invalidates persistent caches.
GENERATOR_TAG = "4t-ccw-1"


def _coerce(coeff) -> Fraction:
    return coeff if isinstance(coeff, Fraction) else Fraction(coeff)


class DiagramCombo:
    """Formal rational combination of canonical diagrams of one degree."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.degree = degree
        clean: dict[tuple[int, ...], Fraction] = {}
        for word, coeff in (terms or {}).items():
            if len(word) != 2 * degree:
                raise ValueError("term %s is not homogeneous of degree %d" % (word, degree))
            c = _coerce(coeff)
            if c:
                clean[word] = c
        self.terms = clean

    @classmethod
    def from_diagram(cls, d: ChordDiagram, coeff=1) -> "DiagramCombo":
        return cls(d.degree, {d.word: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items())

    def __add__(self, other: "DiagramCombo") -> "DiagramCombo":
        if self.degree != other.degree:
            raise ValueError("degree mismatch: %d vs %d" % (self.degree, other.degree))
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, Fraction(0)) + c
        return DiagramCombo(self.degree, terms)

    def __sub__(self, other: "DiagramCombo") -> "DiagramCombo":
        return self + other.scale(-1)

    def __neg__(self) -> "DiagramCombo":
        return self.scale(-1)

    def scale(self, coeff) -> "DiagramCombo":
        c = _coerce(coeff)
        return DiagramCombo(self.degree, {w: v * c for w, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DiagramCombo)
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        body = " ".join("%s*(%s)" % (c, " ".join(map(str, w))) for w, c in self.items())
        return "<DiagramCombo deg=%d %s>" % (self.degree, body or "0")

    def coefficient_sum(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [
                {"coeff": str(c), "word": " ".join(map(str, w))} for w, c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data) -> "DiagramCombo":
        if isinstance(data, str):
            data = json.loads(data)
        terms: dict[tuple[int, ...], Fraction] = {}
        for t in data["terms"]:
            word = ChordDiagram.from_word(int(v) for v in t["word"].split()).word
            terms[word] = terms.get(word, Fraction(0)) + Fraction(t["coeff"])
        return cls(data["degree"], terms)


class TensorCombo:
    """Rational combination of ordered diagram pairs with fixed total degree."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms=None):
        self.degree = degree
        clean: dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction] = {}
        for (w1, w2), coeff in (terms or {}).items():
            if len(w1) + len(w2) != 2 * degree:
                raise ValueError("pair has total degree != %d" % degree)
            c = _coerce(coeff)
            if c:
                clean[(w1, w2)] = c
        self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items())

    def __add__(self, other: "TensorCombo") -> "TensorCombo":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + c
        return TensorCombo(self.degree, terms)

    def __sub__(self, other: "TensorCombo") -> "TensorCombo":
        return self + other.scale(-1)

    def scale(self, coeff) -> "TensorCombo":
        c = _coerce(coeff)
        return TensorCombo(self.degree, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorCombo)
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def blocks(self) -> dict[tuple[int, int], dict]:
        out: dict[tuple[int, int], dict] = {}
        for (w1, w2), c in self.terms.items():
            out.setdefault((len(w1) // 2, len(w2) // 2), {})[(w1, w2)] = c
        return out


class GraphCombo:
    """Rational combination of intersection-graph classes of one degree."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms=None):
        self.degree = degree
        self.terms = {k: _coerce(v) for k, v in (terms or {}).items() if v}

    def items(self):
        return sorted(self.terms.items())


def basis_words(n: int, *, override_limits: bool = False) -> tuple[tuple[int, ...], ...]:
    """The ordered canonical-diagram basis of degree n (column order)."""
    return tuple(d.word for d in enumerate_diagrams(n, override_limits=override_limits))


def _normalized_relation_key(terms: dict[tuple[int, ...], int]):
    items = tuple(sorted(terms.items()))
    if items[0][1] < 0:
        items = tuple((w, -c) for w, c in items)
    return items


def four_term_relations(n: int, *, override_limits: bool = False) -> list[DiagramCombo]:
    """All distinct 4-term relation generators in degree n.

    For each canonical diagram, each moving chord endpoint e and each fixed
    chord a with endpoints u, v, the generator is
    D(e just ccw of u) - D(e just cw of u) + D(e just ccw of v) - D(e just cw
    of v); cancelling combinations are dropped and duplicates (up to sign)
    removed.  Every generator has coefficient sum zero and at most 4 terms.
    """
    if n < 2:
        raise ValueError("4-term relations need degree >= 2")
    seen: dict[tuple, dict] = {}
    for d in enumerate_diagrams(n, override_limits=override_limits):
        word = d.word
        size = len(word)
        for e_pos in range(size):
            b = word[e_pos]
            rest = word[:e_pos] + word[e_pos + 1 :]
            for a in range(1, n + 1):
                if a == b:
                    continue
                u = rest.index(a)
                v = rest.index(a, u + 1)
                terms: dict[tuple[int, ...], int] = {}
                for gap, sign in ((u + 1, 1), (u, -1), (v + 1, 1), (v, -1)):
                    w = canonical_word(rest[:gap] + (b,) + rest[gap:])
                    c = terms.get(w, 0) + sign
                    if c:
                        terms[w] = c
                    else:
                        terms.pop(w, None)
                if terms:
                    seen.setdefault(_normalized_relation_key(terms), terms)
    return [DiagramCombo(n, seen[k]) for k in sorted(seen)]


def one_term_relations(n: int, *, override_limits: bool = False) -> list[DiagramCombo]:
    """One singleton relation per diagram with an isolated chord."""
    if n < 1:
        raise ValueError("1-term relations need degree >= 1")
    return [
        DiagramCombo.from_diagram(d)
        for d in enumerate_diagrams(n, override_limits=override_limits)
        if has_isolated_chord(d)
    ]


@dataclass
class RelationBasis:
    """Echelonized relation span over the canonical-diagram basis."""

    degree: int
    with_1t: bool
    words: tuple[tuple[int, ...], ...]
    pivots: dict[int, dict[int, int]]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def quotient_dim(self) -> int:
        return len(self.words) - self.rank

    def index(self) -> dict[tuple[int, ...], int]:
        return {w: i for i, w in enumerate(self.words)}


_BASIS_CACHE: dict[tuple[int, bool], RelationBasis] = {}


def relation_basis(
    n: int, with_1t: bool = True, *, override_limits: bool = False
) -> RelationBasis:
    """Echelonized span of the degree-n relations (4T, plus 1T if requested)."""
    cached = _BASIS_CACHE.get((n, with_1t))
    if cached is not None:
        return cached
    words = basis_words(n, override_limits=override_limits)
    index = {w: i for i, w in enumerate(words)}
    combos: list[DiagramCombo] = []
    if n >= 2:
        combos.extend(four_term_relations(n, override_limits=override_limits))
    if with_1t and n >= 1:
        combos.extend(one_term_relations(n, override_limits=override_limits))
    rows = [{index[w]: c for w, c in combo.terms.items()} for combo in combos]
    basis = RelationBasis(n, with_1t, words, elimination.echelonize(rows))
    _BASIS_CACHE[(n, with_1t)] = basis
    return basis


def reduce_combo(c: DiagramCombo, b: RelationBasis) -> DiagramCombo:
    """Normal form of ``c`` modulo the relation span; zero iff c lies in it."""
    if c.degree != b.degree:
        raise ValueError("degree mismatch: combo %d vs basis %d" % (c.degree, b.degree))
    index = b.index()
    vec = {index[w]: coeff for w, coeff in c.terms.items()}
    nf = elimination.reduce_vector(vec, b.pivots)
    return DiagramCombo(c.degree, {b.words[i]: coeff for i, coeff in nf.items()})


def equivalent(d1: ChordDiagram, d2: ChordDiagram, b: RelationBasis) -> bool:
    """Whether the two diagrams are equal in the quotient defined by ``b``."""
    diff = DiagramCombo.from_diagram(d1) - DiagramCombo.from_diagram(d2)
    return reduce_combo(diff, b).is_zero()


def generalized_four_term(
    d: ChordDiagram, s: ChordSubset, moving_chord: int
) -> DiagramCombo:
    """The generalized 4-term combination of a chord endpoint moving around a
    fixed share.

    The moving endpoint of ``moving_chord`` (the one adjacent to the share's
    endpoint blocks) is placed at the four gaps flanking the share's two arc
    groups, with alternating signs; for a single-chord share this is a plain
    4-term generator.  When the share occupies a single block the two inner
    placements coincide and cancel, leaving a two-term combination.  Every
    result lies in the span of the plain 4-term relations.
    """
    if s.diagram != d:
        raise ValueError("subset does not belong to the diagram")
    if moving_chord in s.members:
        raise ValueError("moving chord must not belong to the share")
    if moving_chord not in d.labels:
        raise ValueError("unknown chord %r" % (moving_chord,))
    if not s.members:
        raise ValueError("share must be nonempty")
    if not is_share(s):
        raise ValueError("subset is not a share")
    word = d.word
    size = len(word)
    e_pos = None
    for pos in d.endpoints(moving_chord):
        if word[(pos - 1) % size] in s.members or word[(pos + 1) % size] in s.members:
            e_pos = pos
            break
    if e_pos is None:
        raise ValueError("no endpoint of the moving chord is adjacent to the share")
    b = word[e_pos]
    rest = word[:e_pos] + word[e_pos + 1 :]
    runs = _member_runs(rest, s.members)
    gaps: list[tuple[int, int]] = []
    for start, length in runs:
        gaps.append(((start + length) % len(rest), 1))  # just after the block
        gaps.append((start, -1))  # just before the block
    terms: dict[tuple[int, ...], Fraction] = {}
    for gap, sign in gaps:
        w = canonical_word(rest[:gap] + (b,) + rest[gap:])
        c = terms.get(w, Fraction(0)) + sign
        if c:
            terms[w] = c
        else:
            terms.pop(w, None)
    return DiagramCombo(d.degree, terms)


def coproduct(d: ChordDiagram) -> TensorCombo:
    """Sum over chord subsets J of (D - J) tensor (D restricted to J)."""
    n = d.degree
    chords = list(d.labels)
    terms: dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction] = {}
    for mask in range(1 << n):
        inside = {chords[i] for i in range(n) if mask >> i & 1}
        left = canonical_word([v for v in d.word if v not in inside])
        right = canonical_word([v for v in d.word if v in inside])
        key = (left, right)
        terms[key] = terms.get(key, Fraction(0)) + 1
    return TensorCombo(n, terms)


def coproduct_combo(c: DiagramCombo) -> TensorCombo:
    out = TensorCombo(c.degree)
    for w, coeff in c.terms.items():
        out = out + coproduct(ChordDiagram(w)).scale(coeff)
    return out


def tensor_product(t1: TensorCombo, t2: TensorCombo) -> TensorCombo:
    """Factorwise connect sum (at gap 0); well-defined after reduction."""
    terms: dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction] = {}
    for (a1, b1), c1 in t1.terms.items():
        for (a2, b2), c2 in t2.terms.items():
            left = connect_sum(ChordDiagram(a1), ChordDiagram(a2)).word
            right = connect_sum(ChordDiagram(b1), ChordDiagram(b2)).word
            key = (left, right)
            terms[key] = terms.get(key, Fraction(0)) + c1 * c2
    return TensorCombo(t1.degree + t2.degree, terms)


def reduce_tensor(t: TensorCombo, with_1t: bool = False) -> TensorCombo:
    """Reduce every bidegree block modulo relations tensor span plus span
    tensor relations."""
    out_terms: dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction] = {}
    for (p, q), block in t.blocks().items():
        bp = relation_basis(p, with_1t) if p >= 1 else None
        bq = relation_basis(q, with_1t) if q >= 1 else None
        # reduce left factors, then right factors
        mid: dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction] = {}
        by_right: dict[tuple[int, ...], dict[tuple[int, ...], Fraction]] = {}
        for (w1, w2), c in block.items():
            by_right.setdefault(w2, {})[w1] = c
        for w2, left in by_right.items():
            reduced = (
                reduce_combo(DiagramCombo(p, left), bp).terms if bp else left
            )
            for w1, c in reduced.items():
                mid[(w1, w2)] = mid.get((w1, w2), Fraction(0)) + c
        by_left: dict[tuple[int, ...], dict[tuple[int, ...], Fraction]] = {}
        for (w1, w2), c in mid.items():
            by_left.setdefault(w1, {})[w2] = c
        for w1, right in by_left.items():
            reduced = (
                reduce_combo(DiagramCombo(q, right), bq).terms if bq else right
            )
            for w2, c in reduced.items():
                key = (w1, w2)
                out_terms[key] = out_terms.get(key, Fraction(0)) + c
    return TensorCombo(t.degree, out_terms)


def primitive_defect(c: DiagramCombo, with_1t: bool = False) -> TensorCombo:
    """Delta(c) minus 1 tensor c minus c tensor 1, reduced blockwise.

    A zero result certifies that ``c`` is primitive in the quotient algebra.
    The empty-factor blocks cancel exactly, so only blocks with both factors
    of positive degree are reduced (modulo 4T by default).
    """
    n = c.degree
    defect = coproduct_combo(c)
    for w, coeff in c.terms.items():
        unit = TensorCombo(n, {((), w): coeff, (w, ()): coeff})
        defect = defect - unit
    return reduce_tensor(defect, with_1t)


def build_primitive(kind: str, n: int, k: int | None = None) -> DiagramCombo:
    """The alternating edge-deletion sum over a path or tadpole graph.

    kind 'path': over the path on n vertices (the tree primitive p_n).
    kind 'tadpole': over the cycle of length k with a pendant path of n - k
    vertices (p_{n,k}); needs 3 <= k <= n.  Every edge-deleted graph is a
    forest or unicyclic, hence realizable.
    """
    if kind == "path":
        if n < 1:
            raise ValueError("path primitive needs n >= 1")
        g = path_graph(n)
    elif kind == "tadpole":
        if k is None or not 3 <= k <= n:
            raise ValueError("tadpole primitive needs 3 <= k <= n")
        g = tadpole_graph(n, k)
    else:
        raise ValueError("kind must be 'path' or 'tadpole'")
    edges = sorted(g.edges)
    terms: dict[tuple[int, ...], Fraction] = {}
    for mask in range(1 << len(edges)):
        removed = {edges[i] for i in range(len(edges)) if mask >> i & 1}
        sub = Graph(g.n, g.edges - removed)
        word = realize_graph(sub).word
        sign = -1 if bin(mask).count("1") % 2 else 1
        coeff = terms.get(word, Fraction(0)) + sign
        if coeff:
            terms[word] = coeff
        else:
            terms.pop(word, None)
    return DiagramCombo(n, terms)


@dataclass(frozen=True)
class KernelCheck:
    degree: int
    with_1t: bool
    diagram_dim: int
    graph_dim: int
    kernel_trivial: bool


def graph_kernel_check(
    n: int, with_1t: bool = True, *, override_limits: bool = False
) -> KernelCheck:
    """Compare the diagram quotient with the intersection-graph quotient.

    The graph space is spanned by the realized graph classes of degree n; the
    relations are the images of all diagram relations under the class map.
    The kernel of the class map is trivial exactly when the two quotient
    dimensions agree.
    """
    basis = relation_basis(n, with_1t, override_limits=override_limits)
    diagram_dim = basis.quotient_dim
    keys = {}
    for w in basis.words:
        keys[w] = graph_class_key(intersection_graph(ChordDiagram(w)))
    classes = sorted(set(keys.values()))
    col = {key: i for i, key in enumerate(classes)}
    combos: list[DiagramCombo] = []
    if n >= 2:
        combos.extend(four_term_relations(n, override_limits=override_limits))
    if with_1t and n >= 1:
        combos.extend(one_term_relations(n, override_limits=override_limits))
    rows = []
    for combo in combos:
        row: dict[int, Fraction] = {}
        for w, c in combo.terms.items():
            i = col[keys[w]]
            row[i] = row.get(i, Fraction(0)) + c
        row = {i: v for i, v in row.items() if v}
        if row:
            rows.append(row)
    graph_dim = len(classes) - elimination.rank(rows)
    return KernelCheck(n, with_1t, diagram_dim, graph_dim, diagram_dim == graph_dim)
