"""Orbit-closure points as (odometer element, fill symbol) pairs.

A point over ``g`` agrees with ``T^{g_i} eta`` on the ``p_i``-skeleton for
every ``i``, and is constant (equal to ``fill``) on the positions no
skeleton reaches.  Evaluation is therefore tri-state: a position is forced
by some skeleton, certified aperiodic by the tail rule of ``g``, or left
undetermined at the working depth.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .odometer import (
    ConstantDigits,
    DepthExhausted,
    IntegerEmbed,
    OdometerElement,
    add,
    embed,
    undefined_from,
)
from .toeplitz import ALPHABET


@dataclass(frozen=True)
class OrbitPoint:
    g: OdometerElement
    fill: int

    def __post_init__(self):
        if self.fill not in ALPHABET:
            raise ValueError(f"fill must be one of {ALPHABET}, got {self.fill}")


@dataclass(frozen=True)
class Forced:
    symbol: int
    level: int


@dataclass(frozen=True)
class AperiodicCertified:
    fill: int


@dataclass(frozen=True)
class Undetermined:
    horizon: int


EvalResult = Union[Forced, AperiodicCertified, Undetermined]


def _forcing(g: OdometerElement, n: int, max_level: Optional[int]) -> EvalResult:
    """Fill-independent part of :func:`point_eval`; ``fill`` reported as -1."""
    ps = g.structure
    if max_level is None:
        max_level = ps.depth
    if max_level > ps.depth:
        raise DepthExhausted(f"max_level {max_level} exceeds depth {ps.depth}")
    h = add(g, embed(ps, n))
    top = max_level if h.horizon is None else min(max_level, h.horizon)
    for j in range(top):
        sym = ps.symbol_of_digit(h.digit(j), j + 1)
        if sym is not None:
            return Forced(sym, j + 1)
    if h.horizon is not None and max_level > h.horizon:
        raise DepthExhausted(f"no defined digit within horizon {h.horizon}")
    if undefined_from(h, max_level) is True:
        return AperiodicCertified(-1)
    return Undetermined(max_level)


def point_eval(point: OrbitPoint, n: int, max_level: Optional[int] = None) -> EvalResult:
    """Symbol of ``point`` at position ``n``.

    ``Forced(sym, level)`` when digit ``level-1`` of ``g + n`` is the first
    defined one; ``AperiodicCertified(fill)`` when the tail rule proves no
    digit is ever defined; ``Undetermined`` otherwise.
    """
    res = _forcing(point.g, n, max_level)
    if isinstance(res, AperiodicCertified):
        return AperiodicCertified(point.fill)
    return res


def point_window(point: OrbitPoint, a: int, b: int, max_level: Optional[int] = None) -> list[Optional[int]]:
    """Symbols on ``[a, b]``; None where undetermined."""
    out = []
    for n in range(a, b + 1):
        r = point_eval(point, n, max_level)
        out.append(r.symbol if isinstance(r, Forced) else r.fill if isinstance(r, AperiodicCertified) else None)
    return out


# ---------------------------------------------------------------------------
# fibers


@dataclass(frozen=True)
class SingletonCertified:
    witness_levels: tuple[int, ...]


@dataclass(frozen=True)
class FiveCertified:
    defined_levels: tuple[int, ...]


@dataclass(frozen=True)
class UnknownAt:
    level: int
    defined_seen: int


FiberCertificate = Union[SingletonCertified, FiveCertified, UnknownAt]


def fiber_certificate(g: OdometerElement, max_level: Optional[int] = None) -> FiberCertificate:
    """Classify the fiber size of ``g`` from its tail rule.

    The fiber is a singleton iff infinitely many digits are defined.  Integer
    tails end in 0s or maximal digits (always defined); a constant tail ``c``
    is defined infinitely often iff ``c`` is 1 or 2 (``c >= 3`` can match
    ``q/2+1`` or ``q-1`` at only finitely many levels since ``q`` grows).
    A finite prefix alone never certifies anything.
    """
    ps = g.structure
    if max_level is None:
        max_level = ps.depth
    max_level = min(max_level, ps.depth)
    seen = g.defined_levels(max_level)
    if isinstance(g.tail, IntegerEmbed):
        return SingletonCertified(seen)
    if isinstance(g.tail, ConstantDigits):
        if g.tail.digit in (1, 2):
            return SingletonCertified(seen)
        return FiveCertified(seen)
    return UnknownAt(min(max_level, g.horizon), len(seen))


def separating_position(g: OdometerElement, a: int, b: int, max_level: Optional[int] = None) -> Optional[int]:
    """First certified-aperiodic position in ``[a, b]``; there the five fill
    points over ``g`` read five different symbols."""
    for n in range(a, b + 1):
        if isinstance(_forcing(g, n, max_level), AperiodicCertified):
            return n
    return None


@dataclass
class Partition:
    forced: dict[int, Forced] = field(default_factory=dict)
    certified: list[int] = field(default_factory=list)
    undetermined: list[int] = field(default_factory=list)


def aper_positions(g: OdometerElement, a: int, b: int, max_level: Optional[int] = None) -> Partition:
    """Split ``[a, b]`` into forced, certified-aperiodic and undetermined positions."""
    part = Partition()
    for n in range(a, b + 1):
        r = _forcing(g, n, max_level)
        if isinstance(r, Forced):
            part.forced[n] = r
        elif isinstance(r, AperiodicCertified):
            part.certified.append(n)
        else:
            part.undetermined.append(n)
    return part


# ---------------------------------------------------------------------------
# proximality


@dataclass(frozen=True)
class NotFound:
    bound: int


def proximal_witness(
    p1: OrbitPoint,
    p2: OrbitPoint,
    radius: int,
    bound: int,
    max_level: Optional[int] = None,
) -> Union[int, NotFound]:
    """Least ``|k| <= bound`` (ties: positive first) such that every position
    of ``[k-radius, k+radius]`` is forced, so the two points agree there."""
    if p1.g != p2.g:
        raise ValueError("proximal_witness needs two points over the same odometer element")
    if p1 == p2:
        return 0
    cache: dict[int, bool] = {}

    def forced(n: int) -> bool:
        if n not in cache:
            cache[n] = isinstance(_forcing(p1.g, n, max_level), Forced)
        return cache[n]

    for mag in range(bound + 1):
        for k in ((0,) if mag == 0 else (mag, -mag)):
            if all(forced(n) for n in range(k - radius, k + radius + 1)):
                return k
    return NotFound(bound)


def rho_distance(w1: Sequence[int], w2: Sequence[int]) -> Fraction:
    """Truncated metric ``sum |x(n) - y(n)| / 2^|n|`` over windows centred at 0."""
    if len(w1) != len(w2) or len(w1) % 2 == 0:
        raise ValueError("windows must have equal odd length (centred at 0)")
    r = len(w1) // 2
    return sum(
        (Fraction(abs(x - y), 2 ** abs(i - r)) for i, (x, y) in enumerate(zip(w1, w2))),
        Fraction(0),
    )
