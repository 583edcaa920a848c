"""The five-symbol Toeplitz sequence built from a period structure.

Position ``n`` receives its symbol at the first mixed-radix digit of ``n``
that lies in the level's defined set ``{0, 1, 2, q/2+1, q-1}``; the symbol
is the index of that digit in the set.  Skeletons, densities and the
essential-period check are all derived from this rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .odometer import DepthExhausted, PeriodStructure

ALPHABET = (0, 1, 2, 3, 4)


def min_defined_level(ps: PeriodStructure, n: int) -> tuple[int, int]:
    """Return ``(j, digit)`` for the smallest digit index ``j`` of ``n`` whose
    digit is defined at level ``j+1``.

    ``n`` lies in the ``p_{j+1}``-skeleton and in no coarser one.
    """
    m = n
    for j, qi in enumerate(ps.q):
        m, s = divmod(m, qi)
        if ps.symbol_of_digit(s, j + 1) is not None:
            return j, s
    raise DepthExhausted(f"no defined digit of {n} within {ps.depth} levels")


def eta(ps: PeriodStructure, n: int) -> int:
    j, s = min_defined_level(ps, n)
    return ps.symbol_of_digit(s, j + 1)


def window(ps: PeriodStructure, a: int, b: int) -> tuple[int, ...]:
    if a > b:
        raise ValueError(f"empty window [{a}, {b}]")
    return tuple(eta(ps, n) for n in range(a, b + 1))


@dataclass(frozen=True)
class SkeletonTable:
    """The ``p_level``-skeleton: symbol or None for each residue mod ``p_level``."""

    level: int
    period: int
    cells: tuple[Optional[int], ...]

    @property
    def defined_count(self) -> int:
        return sum(c is not None for c in self.cells)

    @property
    def undefined_residues(self) -> tuple[int, ...]:
        return tuple(r for r, c in enumerate(self.cells) if c is None)

    def symbol_at(self, n: int) -> Optional[int]:
        return self.cells[n % self.period]

    def extends(self, coarser: "SkeletonTable") -> bool:
        """Every cell defined in ``coarser`` is defined identically here."""
        if self.period % coarser.period:
            return False
        return all(
            c is None or self.cells[r] == c
            for r in range(self.period)
            for c in (coarser.cells[r % coarser.period],)
        )


def skeleton(ps: PeriodStructure, level: int) -> SkeletonTable:
    """Residues mod ``p_level`` whose minimal defined digit index is < level."""
    period = ps.period(level)
    cells: list[Optional[int]] = []
    for r in range(period):
        sym = None
        m = r
        for j in range(level):
            m, s = divmod(m, ps.q[j])
            sym = ps.symbol_of_digit(s, j + 1)
            if sym is not None:
                break
        cells.append(sym)
    return SkeletonTable(level, period, tuple(cells))


@dataclass(frozen=True)
class DensityReport:
    level: int
    defined_count: int
    period: int
    density: Fraction
    recursion_value: Fraction
    recursion_constant: int
    alt_constant: int
    alt_recursion_value: Fraction
    classification: str

    @property
    def constant_discrepancy(self) -> bool:
        return self.alt_recursion_value != self.density

    def as_record(self) -> dict:
        return {
            "level": self.level,
            "defined_count": self.defined_count,
            "p_i": self.period,
            "d_i_num": self.density.numerator,
            "d_i_den": self.density.denominator,
            "classification": self.classification,
            "recursion_constant": self.recursion_constant,
            "recursion_num": self.recursion_value.numerator,
            "recursion_den": self.recursion_value.denominator,
            "alt_constant": self.alt_constant,
            "alt_recursion_num": self.alt_recursion_value.numerator,
            "alt_recursion_den": self.alt_recursion_value.denominator,
            "constant_discrepancy": self.constant_discrepancy,
        }


def classify(ps: PeriodStructure) -> str:
    """``regular`` iff the reciprocal sum of the q_i diverges."""
    converges = ps.reciprocal_sum_converges
    if converges is None:
        return "undecidable-from-prefix"
    return "irregular" if converges else "regular"


def density(ps: PeriodStructure, level: int, alt_constant: int = 4) -> DensityReport:
    """Exact density of the ``p_level``-skeleton.

    Also evaluates the one-step recursion
    ``d_i = d_{i-1} + (1 - d_{i-1}) * c / q_i`` from the enumerated
    ``d_{i-1}`` (with ``d_0 = 0``), once with ``c = |defined set|`` and once
    with ``alt_constant`` for comparison.
    """
    if level < 0:
        raise ValueError("level must be >= 0")
    table = skeleton(ps, level)
    d = Fraction(table.defined_count, table.period)
    if level == 0:
        rec = alt = d
        c = len(set(ps.defined_set(1)))
    else:
        prev = skeleton(ps, level - 1)
        d_prev = Fraction(prev.defined_count, prev.period)
        c = len(set(ps.defined_set(level)))
        qi = ps.q_at(level)
        rec = d_prev + (1 - d_prev) * Fraction(c, qi)
        alt = d_prev + (1 - d_prev) * Fraction(alt_constant, qi)
    return DensityReport(level, table.defined_count, table.period, d, rec, c, alt_constant, alt, classify(ps))


def is_essential(cells: Sequence[Optional[int]]) -> bool:
    """True iff the periodic partial table has no smaller period.

    A smaller period of a table of length p always divides p, and invariance
    under d implies invariance under its multiples, so it is enough to test
    p/l for each prime l dividing p.
    """
    p = len(cells)
    for ell in _prime_factors(p):
        d = p // ell
        if all(cells[r] == cells[(r + d) % p] for r in range(p)):
            return False
    return True


def essential_period_check(ps: PeriodStructure, level: int) -> bool:
    if level > ps.depth - 1:
        raise DepthExhausted(f"essential period check needs level <= {ps.depth - 1}")
    return is_essential(skeleton(ps, level).cells)


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def aperiodicity_witness(ps: PeriodStructure, level: int) -> Optional[tuple[int, int]]:
    """Find ``n = m (mod p_level)``, ``n != m (mod p_{level+1})`` with different
    symbols, showing ``p_level`` is not a period of the sequence."""
    if level > ps.depth - 1:
        raise DepthExhausted(f"witness search needs level <= {ps.depth - 1}")
    p, q_next = ps.period(level), ps.q_at(level + 1)
    for r in skeleton(ps, level).undefined_residues:
        base = eta(ps, r)
        for k in range(1, q_next):
            m = r + k * p
            if eta(ps, m) != base:
                return r, m
    return None
