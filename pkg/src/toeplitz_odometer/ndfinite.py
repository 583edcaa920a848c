"""Exact N_d computations on finite rotations ``x -> x + r`` of ``Z/N``.

``N_d`` is the orbit of the diagonal point ``(x, ..., x)`` under the group
generated by ``sigma = T x ... x T`` and ``tau = T x T^2 x ... x T^d``.  On a
finite set the orbit is its own closure, so every statement here is decided
exactly by breadth-first search.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional

Tuple = tuple[int, ...]


@dataclass(frozen=True)
class FiniteRotation:
    modulus: int
    step: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        object.__setattr__(self, "step", self.step % self.modulus)

    @property
    def is_minimal(self) -> bool:
        return gcd(self.step, self.modulus) == 1

    def power(self, n: int) -> "FiniteRotation":
        return FiniteRotation(self.modulus, n * self.step)


@dataclass(frozen=True)
class TupleSet:
    dimension: int
    modulus: int
    tuples: frozenset

    def __len__(self) -> int:
        return len(self.tuples)

    def __contains__(self, t) -> bool:
        return tuple(t) in self.tuples

    def __iter__(self):
        return iter(sorted(self.tuples))

    def translate(self, shift: Tuple) -> "TupleSet":
        N = self.modulus
        return TupleSet(
            self.dimension,
            N,
            frozenset(tuple((x + s) % N for x, s in zip(t, shift)) for t in self.tuples),
        )


def _generators(sys: FiniteRotation, d: int) -> list[Tuple]:
    r = sys.step
    sigma = tuple(r for _ in range(d))
    tau = tuple(i * r for i in range(1, d + 1))
    inv = [tuple(-x for x in g) for g in (sigma, tau)]
    return [sigma, tau, *inv]


def nd_set(sys: FiniteRotation, d: int, base: int = 0) -> TupleSet:
    """BFS orbit of ``(base, ..., base)`` under ``<sigma_d, tau_d>``."""
    if d < 1:
        raise ValueError("d must be >= 1")
    N = sys.modulus
    gens = _generators(sys, d)
    start = tuple(base % N for _ in range(d))
    seen = {start}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        for g in gens:
            u = tuple((x + s) % N for x, s in zip(t, g))
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return TupleSet(d, N, frozenset(seen))


def nd_closed_form(sys: FiniteRotation, d: int, base: int = 0) -> TupleSet:
    """``{(base + a*r + b*i*r)_{i=1..d} : a, b in Z/N}``."""
    N, r = sys.modulus, sys.step
    return TupleSet(
        d,
        N,
        frozenset(
            tuple((base + a * r + b * i * r) % N for i in range(1, d + 1)) for a in range(N) for b in range(N)
        ),
    )


def is_closed(ts: TupleSet, sys: FiniteRotation) -> bool:
    """Applying sigma, tau and their inverses adds nothing."""
    return all(ts.translate(g).tuples == ts.tuples for g in _generators(sys, ts.dimension))


def nd_power(sys: FiniteRotation, n: int, d: int, base: int = 0) -> TupleSet:
    return nd_set(sys.power(n), d, base)


@dataclass(frozen=True)
class Decomposition:
    cells: dict  # (i, j) -> frozenset
    classes: list  # lists of (i, j) with identical cells
    covers: bool
    identical_or_disjoint: bool

    @property
    def ok(self) -> bool:
        return self.covers and self.identical_or_disjoint


def decomposition_check(N: int, r: int, n: int, d: int) -> Decomposition:
    """Cells ``(id x T x ... x T^{d-1})^i (T x ... x T)^j N_d(T^n)`` for ``0 <= i, j < n``."""
    sys = FiniteRotation(N, r)
    full = nd_set(sys, d)
    sub = nd_power(sys, n, d)
    rr = sys.step
    cells = {}
    for i in range(n):
        for j in range(n):
            shift = tuple(i * k * rr + j * rr for k in range(d))
            cells[(i, j)] = sub.translate(shift).tuples
    union = frozenset().union(*cells.values())
    classes: dict[frozenset, list] = {}
    for key, cell in cells.items():
        classes.setdefault(cell, []).append(key)
    distinct = list(classes)
    disjoint = all(not (x & y) for a, x in enumerate(distinct) for y in distinct[a + 1 :])
    return Decomposition(cells, list(classes.values()), union == full.tuples, disjoint)


@dataclass(frozen=True)
class TheoremARow:
    N: int
    r: int
    n: int
    d: int
    size_T: int
    size_Tn: int
    equal: bool
    gcd: int

    def as_record(self) -> dict:
        return {
            "N": self.N,
            "r": self.r,
            "n": self.n,
            "d": self.d,
            "size_T": self.size_T,
            "size_Tn": self.size_Tn,
            "equal": self.equal,
            "gcd": self.gcd,
        }


def theorem_a_check(n_max: int, d_max: int) -> tuple[list[TheoremARow], list[TheoremARow]]:
    """Scan ``N <= n_max``, coprime ``r``, ``1 <= n <= N``, ``d <= d_max``.

    Returns all rows and the counterexamples to
    ``N_d(T^n) == N_d(T)  <=>  gcd(n, N) == 1``.
    """
    rows, bad = [], []
    for N in range(1, n_max + 1):
        for r in range(N):
            if gcd(r, N) != 1:
                continue
            sys = FiniteRotation(N, r)
            for n in range(1, N + 1):
                g = gcd(n, N)
                for d in range(1, d_max + 1):
                    full = nd_set(sys, d)
                    sub = nd_power(sys, n, d)
                    row = TheoremARow(N, r, n, d, len(full), len(sub), full.tuples == sub.tuples, g)
                    rows.append(row)
                    if row.equal != (g == 1):
                        bad.append(row)
    return rows, bad


def condition_three_check(N: int, r: int, n: int, d: int) -> bool:
    """For all x and l there is q with ``T^{inq} x = T^{il} x`` for ``i = 1..d``."""
    sys = FiniteRotation(N, r)
    step = sys.step
    for x in range(N):
        for l in range(N):
            if not any(
                all((x + i * n * q * step) % N == (x + i * l * step) % N for i in range(1, d + 1))
                for q in range(N)
            ):
                return False
    return True


# ---------------------------------------------------------------------------
# set arithmetic in Z/N


def rational_multiple_set(p: int, q: int, A: Iterable[int], N: int) -> frozenset:
    """``{g : q*g = p*a (mod N) for some a in A}``."""
    if q == 0:
        raise ValueError("denominator must be nonzero")
    targets = {(p * a) % N for a in A}
    return frozenset(g for g in range(N) if (q * g) % N in targets)


def difference_set(X: Iterable[int], Y: Iterable[int], N: int) -> frozenset:
    Y = list(Y)
    return frozenset((x - y) % N for x in X for y in Y)


def combo_set(c1: Fraction, c2: Fraction, A: Iterable[int], N: int) -> frozenset:
    """``c1*A - c2*A`` with rational multiples taken as preimage sets."""
    A = list(A)
    X = rational_multiple_set(c1.numerator, c1.denominator, A, N)
    Y = rational_multiple_set(c2.numerator, c2.denominator, A, N)
    return difference_set(X, Y, N)


def two_a_minus_a(A: Iterable[int], N: int) -> frozenset:
    return combo_set(Fraction(2), Fraction(1), A, N)


def b_d_set(A: Iterable[int], d: int, N: int) -> frozenset:
    """Union over ``1 <= i < j <= d`` of ``j/(j-i) A - i/(j-i) A`` (fractions reduced)."""
    if d < 2:
        raise ValueError("d must be >= 2")
    A = list(A)
    out: set = set()
    for j in range(2, d + 1):
        for i in range(1, j):
            out |= combo_set(Fraction(j, j - i), Fraction(i, j - i), A, N)
    return frozenset(out)


def show(N: int, r: int, d: int, power: Optional[int] = None) -> dict:
    """Summary record used by the CLI."""
    sys = FiniteRotation(N, r)
    full = nd_set(sys, d)
    rec = {"N": N, "r": sys.step, "d": d, "size_T": len(full), "tuples_T": [list(t) for t in full]}
    if power is not None:
        sub = nd_power(sys, power, d)
        dec = decomposition_check(N, r, power, d)
        rec.update(
            {
                "n": power,
                "size_Tn": len(sub),
                "tuples_Tn": [list(t) for t in sub],
                "equal": full.tuples == sub.tuples,
                "gcd": gcd(power, N),
                "distinct_cells": len(dec.classes),
                "cells_cover": dec.covers,
                "cells_identical_or_disjoint": dec.identical_or_disjoint,
            }
        )
    return rec
