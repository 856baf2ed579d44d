"""The weight system derived from the Kauffman polynomial.

A chord diagram is evaluated by resolving one chord at a time through the
skein relation W(L!) = y W(L-) + x W(L*) - x W(L#), on states made of
disjoint circles carrying the remaining chord endpoints and orientation
reversal dots (which always come in pairs per circle).  An extra bare circle
contributes the factor 1 - y/x; the last circle evaluates to 1.

Of the two smoothings of a chord, exactly one can be rewired without
disturbing orientations and the other needs two new reversal dots; which of
the split/merge rewirings is which depends on the dot parity along an arc
joining the endpoints.  The orientation-consistent smoothing takes +x and
the dot-inserting one takes -x.  This assignment is pinned by overdetermined
anchors: W vanishes on an isolated chord, the two-dot one-chord state
evaluates to 2y, W of the degree-2 primitive is -y(x+y), and the path
primitives obey W(p_n) = -y(x+y)^(n-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

from .algebra import DiagramCombo
from .diagrams import ChordDiagram
from .laurent import CIRCLE_FACTOR, LaurentPoly, X, Y, Y_TIMES_X_PLUS_Y

#: Reversal-dot marker inside circle item sequences; chords are labels >= 1.
DOT = 0


class ConventionError(AssertionError):
    """An evaluation invariant failed, indicating a smoothing-convention bug."""


@dataclass(frozen=True)
class SkeinState:
    """Disjoint oriented circles of chord endpoints and reversal dots."""

    circles: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        counts: dict[int, int] = {}
        for circ in self.circles:
            dots = 0
            for item in circ:
                if item == DOT:
                    dots += 1
                else:
                    counts[item] = counts.get(item, 0) + 1
            if dots % 2:
                raise ValueError("circle %r carries an odd number of dots" % (circ,))
        bad = sorted(c for c, k in counts.items() if k != 2)
        if bad:
            raise ValueError("chords %s do not have exactly two endpoints" % bad)

    def chords(self) -> list[int]:
        out = set()
        for circ in self.circles:
            for item in circ:
                if item != DOT:
                    out.add(item)
        return sorted(out)


def state_from_diagram(d: ChordDiagram) -> SkeinState:
    """One circle holding the diagram's endpoints in cyclic order, no dots."""
    return SkeinState((d.word,))


def _locate(state: SkeinState, c: int):
    hits = []
    for ci, circ in enumerate(state.circles):
        for i, item in enumerate(circ):
            if item == c:
                hits.append((ci, i))
    if len(hits) != 2:
        raise ValueError("chord %r not in state" % (c,))
    return hits


def resolve_chord(state: SkeinState, c: int) -> list[tuple[LaurentPoly, SkeinState]]:
    """The three weighted skein terms for resolving chord ``c``.

    Returns [(y, delete), (+x, orientation-consistent smoothing),
    (-x, dot-inserting smoothing)].  Rewiring two endpoints on one circle
    either splits it or merges the two arcs with a reversal; across two
    circles both smoothings merge.  The dot parity of the connecting arc
    decides which rewiring needs the two new dots.
    """
    (c1, i1), (c2, i2) = _locate(state, c)
    others = tuple(circ for ci, circ in enumerate(state.circles) if ci not in (c1, c2))
    if c1 == c2:
        circ = state.circles[c1]
        alpha = circ[i1 + 1 : i2]
        beta = circ[i2 + 1 :] + circ[:i1]
        deleted = others + (alpha + beta,)
        if sum(1 for v in alpha if v == DOT) % 2 == 0:
            consistent = others + (alpha, beta)
            dotted = others + (beta + (DOT,) + tuple(reversed(alpha)) + (DOT,),)
        else:
            consistent = others + (beta + tuple(reversed(alpha)),)
            dotted = others + (alpha + (DOT,), beta + (DOT,))
    else:
        ca, cb = state.circles[c1], state.circles[c2]
        alpha = ca[i1 + 1 :] + ca[:i1]
        beta = cb[i2 + 1 :] + cb[:i2]
        deleted = others + (alpha, beta)
        consistent = others + (alpha + beta,)
        dotted = others + (alpha + (DOT,) + tuple(reversed(beta)) + (DOT,),)
    return [
        (Y, SkeinState(deleted)),
        (X, SkeinState(consistent)),
        (-X, SkeinState(dotted)),
    ]


def _cancel_dots(circ: tuple[int, ...]) -> tuple[int, ...]:
    lst = list(circ)
    changed = True
    while changed and len(lst) >= 2:
        changed = False
        size = len(lst)
        for i in range(size):
            j = (i + 1) % size
            if i != j and lst[i] == DOT and lst[j] == DOT:
                for k in sorted((i, j), reverse=True):
                    lst.pop(k)
                changed = True
                break
    return tuple(lst)


def normalize_state(state: SkeinState) -> tuple[LaurentPoly, SkeinState]:
    """Cancel adjacent dot pairs and strip bare circles.

    Each removed bare circle contributes the factor 1 - y/x, except that a
    final lone circle is retained (it evaluates to 1).  Idempotent on states
    with no cancellable dots and no bare circles.
    """
    circles = tuple(_cancel_dots(c) for c in state.circles)
    bare = sum(1 for c in circles if not c)
    factor = LaurentPoly.one()
    if bare:
        kept = tuple(c for c in circles if c)
        if kept:
            factor = CIRCLE_FACTOR**bare
            circles = kept
        else:
            factor = CIRCLE_FACTOR ** (bare - 1)
            circles = ((),)
    return factor, SkeinState(circles)


def _circle_profile(circ, partner_same, dist):
    """Label-free per-item code used to pick canonical rotations."""
    out = []
    for i, item in enumerate(circ):
        if item == DOT:
            out.append((-1, 0))
        elif partner_same[i]:
            out.append((1, dist[i]))
        else:
            out.append((2, 0))
    return out


def canonical_state_key(state: SkeinState):
    """A deterministic encoding equal for rotated/relabelled copies.

    Per circle, rotations minimizing a label-free profile are candidates;
    circles are ordered by that profile and remaining ties are broken by the
    fully relabelled encoding, searched over a capped product of choices.
    Distinct keys may occasionally be produced for isomorphic states beyond
    the cap, which only costs cache hits, never correctness.
    """
    per_circle = []
    for circ in state.circles:
        size = len(circ)
        if size == 0:
            per_circle.append((((-2, 0),), [0]))
            continue
        pos: dict[int, list[int]] = {}
        for i, item in enumerate(circ):
            if item != DOT:
                pos.setdefault(item, []).append(i)
        partner_same = [False] * size
        dist = [0] * size
        for item, hits in pos.items():
            if len(hits) == 2:
                a, b = hits
                partner_same[a] = partner_same[b] = True
                dist[a] = (b - a) % size
                dist[b] = (a - b) % size
        profile = _circle_profile(circ, partner_same, dist)
        best = None
        rots: list[int] = []
        for r in range(size):
            cand = profile[r:] + profile[:r]
            if best is None or cand < best:
                best, rots = cand, [r]
            elif cand == best:
                rots.append(r)
        per_circle.append((tuple(best), rots))

    order = sorted(
        range(len(state.circles)),
        key=lambda i: (len(state.circles[i]), per_circle[i][0]),
    )
    groups: list[list[int]] = []
    last_sig = None
    for i in order:
        sig = (len(state.circles[i]), per_circle[i][0])
        if sig == last_sig:
            groups[-1].append(i)
        else:
            groups.append([i])
            last_sig = sig

    def encode(arrangement) -> tuple:
        labels: dict[int, int] = {}
        out = []
        for ci, r in arrangement:
            circ = state.circles[ci]
            seq = []
            for k in range(len(circ)):
                item = circ[(r + k) % len(circ)]
                if item == DOT:
                    seq.append(0)
                else:
                    if item not in labels:
                        labels[item] = len(labels) + 1
                    seq.append(labels[item])
            out.append(tuple(seq))
        return tuple(out)

    choices_per_group = []
    total = 1
    for grp in groups:
        variants = []
        for perm in permutations(grp):
            rot_options = [per_circle[i][1] for i in perm]
            for rots in product(*rot_options):
                variants.append(tuple(zip(perm, rots)))
        choices_per_group.append(variants)
        total *= len(variants)
        if total > 96:
            # deterministic fallback: first candidate everywhere
            arrangement = [(i, per_circle[i][1][0]) for grp2 in groups for i in grp2]
            return encode(arrangement)
    best_key = None
    for combo in product(*choices_per_group):
        arrangement = [pair for grp in combo for pair in grp]
        key = encode(arrangement)
        if best_key is None or key < best_key:
            best_key = key
    return best_key


class WeightEvaluator:
    """Memoized recursive evaluator for the Kauffman-derived weight system.

    ``flip_convention`` swaps the +x/-x assignment of the two smoothings and
    exists as a negative control: the flipped system violates the anchor
    identities.
    """

    def __init__(self, flip_convention: bool = False, resolve_order: str = "min"):
        if resolve_order not in ("min", "max"):
            raise ValueError("resolve_order must be 'min' or 'max'")
        self.flip_convention = flip_convention
        self.resolve_order = resolve_order
        self._state_memo: dict = {}
        self._diagram_memo: dict[tuple[int, ...], LaurentPoly] = {}

    def eval_state(self, state: SkeinState) -> LaurentPoly:
        factor, state = normalize_state(state)
        chords = state.chords()
        if not chords:
            return factor
        key = canonical_state_key(state)
        value = self._state_memo.get(key)
        if value is None:
            c = chords[0] if self.resolve_order == "min" else chords[-1]
            terms = resolve_chord(state, c)
            if self.flip_convention:
                (wy, sd), (wa, sa), (wb, sb) = terms
                terms = [(wy, sd), (wa, sb), (wb, sa)]
            value = LaurentPoly.zero()
            for coeff, sub in terms:
                value = value + coeff * self.eval_state(sub)
            self._state_memo[key] = value
        return factor * value

    def eval_diagram(self, d: ChordDiagram) -> LaurentPoly:
        cached = self._diagram_memo.get(d.word)
        if cached is not None:
            return cached
        value = self.eval_state(state_from_diagram(d))
        if d.degree >= 1 and not self.flip_convention:
            if value.min_x_power() < 0:
                raise ConventionError(
                    "W(%s) has negative x powers: %s" % (d, value)
                )
            if not value.divisible_by(Y_TIMES_X_PLUS_Y):
                raise ConventionError(
                    "W(%s) = %s is not divisible by y(x+y)" % (d, value)
                )
        self._diagram_memo[d.word] = value
        return value

    def eval(self, item) -> LaurentPoly:
        if isinstance(item, ChordDiagram):
            return self.eval_diagram(item)
        if isinstance(item, DiagramCombo):
            total = LaurentPoly.zero()
            for w, coeff in item.terms.items():
                total = total + self.eval_diagram(ChordDiagram(w)).scale(coeff)
            return total
        raise TypeError("expected a ChordDiagram or DiagramCombo")


_DEFAULT_EVALUATOR = WeightEvaluator()


def eval_weight(item) -> LaurentPoly:
    """Evaluate the weight system on a diagram or combination (shared memo)."""
    return _DEFAULT_EVALUATOR.eval(item)
