"""Exact sparse row echelon over the rationals.

Rows are sparse ``{column: coefficient}`` maps.  Pivot rows are stored with
integer entries, content-stripped (gcd 1) and a positive leading coefficient,
keyed by their pivot column (the smallest column with a nonzero entry).  The
column order is fixed by the caller, so results are deterministic and
independent of generator order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping


def _to_int_row(row: Mapping[int, object]) -> dict[int, int]:
    denom = 1
    for v in row.values():
        if isinstance(v, Fraction):
            denom = denom * v.denominator // gcd(denom, v.denominator)
    out = {}
    for c, v in row.items():
        iv = int(v * denom) if isinstance(v, Fraction) else int(v) * denom
        if iv:
            out[c] = iv
    return out


def _strip(row: dict[int, int]) -> None:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        for c in row:
            row[c] //= g


def echelonize(rows: Iterable[Mapping[int, object]]) -> dict[int, dict[int, int]]:
    """Forward-eliminate ``rows`` into a pivot map {pivot column: row}."""
    pivots: dict[int, dict[int, int]] = {}
    for raw in rows:
        row = _to_int_row(raw)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                _strip(row)
                if row[c] < 0:
                    for k in row:
                        row[k] = -row[k]
                pivots[c] = row
                break
            a, b = row[c], piv[c]
            g = gcd(a, b)
            m, f = b // g, a // g
            if m != 1:
                for k in row:
                    row[k] *= m
            for k, v in piv.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            _strip(row)
    return pivots


def rank(rows: Iterable[Mapping[int, object]]) -> int:
    return len(echelonize(rows))


def reduce_vector(
    vec: Mapping[int, Fraction], pivots: Mapping[int, Mapping[int, int]]
) -> dict[int, Fraction]:
    """Normal form of ``vec`` modulo the pivot span.

    Eliminates every pivot column; the result is the unique coset
    representative supported on non-pivot columns, so two vectors are
    congruent iff their normal forms are equal.
    """
    work = {c: Fraction(v) for c, v in vec.items() if v}
    out: dict[int, Fraction] = {}
    while work:
        c = min(work)
        piv = pivots.get(c)
        if piv is None:
            out[c] = work.pop(c)
            continue
        t = work.pop(c) / piv[c]
        for k, v in piv.items():
            if k == c:
                continue
            nv = work.get(k, Fraction(0)) - t * v
            if nv:
                work[k] = nv
            else:
                work.pop(k, None)
    return out
