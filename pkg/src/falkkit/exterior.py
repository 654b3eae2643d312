"""Exact exterior algebra in degrees 2 and 3 over an edge ground set.

Vectors are sparse maps from strictly increasing index tuples to rational
coefficients.  Ranks are computed by rational Gaussian elimination with a
deterministic pivot rule (first nonzero column in lexicographic order), so
every dimension reported here is exact.

Only degrees 2 and 3 are materialized as vector spaces; that is all the
degree-3 invariant needs.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

Pair = tuple[int, int]
Triple = tuple[int, int, int]
Vec2 = dict[Pair, Fraction]
Vec3 = dict[Triple, Fraction]

_ONE = Fraction(1)


def _check_increasing(indices: Sequence[int]) -> None:
    if any(a >= b for a, b in zip(indices, indices[1:])):
        raise ValueError(f"index tuple must be strictly increasing, got {tuple(indices)}")


def boundary3(triple: Sequence[int]) -> Vec2:
    """Boundary of a degree-3 monomial: e_ijk -> e_jk - e_ik + e_ij."""
    i, j, k = triple
    _check_increasing((i, j, k))
    return {(j, k): _ONE, (i, k): -_ONE, (i, j): _ONE}


def boundary2(vec: Vec2) -> dict[int, Fraction]:
    """Linear extension of e_ij -> e_j - e_i.  Composed with boundary3 it is 0."""
    out: dict[int, Fraction] = {}
    for (i, j), c in vec.items():
        for idx, term in ((j, c), (i, -c)):
            value = out.get(idx, 0) + term
            if value:
                out[idx] = value
            else:
                out.pop(idx, None)
    return out


def pair_vector(a: int, b: int) -> Vec2:
    """e_a wedge e_b as a signed degree-2 basis vector (empty when a == b)."""
    if a == b:
        return {}
    return {(a, b): _ONE} if a < b else {(b, a): -_ONE}


def wedge1(t: int, vec: Vec2) -> Vec3:
    """Left-multiply a degree-2 vector by e_t; terms containing t vanish."""
    out: Vec3 = {}
    for (a, b), c in vec.items():
        if t == a or t == b:
            continue
        if t < a:
            key, coeff = (t, a, b), c
        elif t < b:
            key, coeff = (a, t, b), -c
        else:
            key, coeff = (a, b, t), c
        value = out.get(key, 0) + coeff
        if value:
            out[key] = value
        else:
            out.pop(key, None)
    return out


def rank(rows: Iterable[Mapping]) -> int:
    """Exact rank of sparse rational rows keyed by comparable column labels."""
    pivots: dict = {}
    found = 0
    for row in rows:
        work = {k: Fraction(v) for k, v in row.items() if v}
        while work:
            lead = min(work)
            pivot = pivots.get(lead)
            if pivot is None:
                inv = 1 / work[lead]
                pivots[lead] = {k: v * inv for k, v in work.items()}
                found += 1
                break
            coeff = work[lead]
            for k, v in pivot.items():
                value = work.get(k, 0) - coeff * v
                if value:
                    work[k] = value
                else:
                    work.pop(k, None)
    return found


def _triples(triangles: Iterable) -> list[Triple]:
    out = []
    for t in triangles:
        ids = tuple(getattr(t, "edge_ids", t))
        _check_increasing(ids)
        if len(ids) != 3:
            raise ValueError(f"expected an edge triple, got {ids}")
        out.append(ids)
    return out


def dim_I2(triangles: Iterable) -> int:
    """Rank of the boundaries of the dependent triples (degree-2 ideal slice)."""
    return rank(boundary3(t) for t in _triples(triangles))


def dim_A2(n: int, triangles: Iterable) -> int:
    """C(n,2) minus :func:`dim_I2`."""
    return comb(n, 2) - dim_I2(triangles)


def span_F3(n: int, triangles: Iterable) -> tuple[int, int]:
    """Size and exact rank of {e_t * boundary(e_S)} over t outside S."""
    rows = []
    for s in _triples(triangles):
        b = boundary3(s)
        inside = set(s)
        rows.extend(wedge1(t, b) for t in range(1, n + 1) if t not in inside)
    return len(rows), rank(rows)


def dim_I3_2(n: int, triangles: Iterable) -> int:
    """Rank of the full degree-3 slice of the 2-adic ideal, by elimination.

    Spans e_t * boundary(e_S) for every dependent triple S and every t in
    1..n; no decomposition shortcut is assumed.
    """
    rows = []
    for s in _triples(triangles):
        b = boundary3(s)
        rows.extend(wedge1(t, b) for t in range(1, n + 1))
    return rank(rows)
