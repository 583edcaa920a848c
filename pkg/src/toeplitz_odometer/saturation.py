"""Digit-doubling analysis behind the non-saturation of ``(x, x)`` under ``T x T^2``.

If the shift ``k`` lands the fiber over ``a`` on fill 0 (its first defined
digit above level ``r`` is 0), then ``2k`` never lands the fiber over
``2a`` on fill 2.  :func:`claim_check_exhaustive` checks this over every
digit block; :func:`nonsat_demo` shows it on actual windows of the sequence.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .odometer import (
    DepthExhausted,
    OdometerElement,
    PeriodStructure,
    scalar_multiple,
)
from .orbit import FiveCertified, aper_positions, fiber_certificate
from .toeplitz import ALPHABET, eta


class CertificateMissing(ValueError):
    """The element has no tail rule certifying a five-point fiber."""


class Offset(enum.Enum):
    PLAIN = "plain"  # l' = 2l
    SHIFTED = "shifted"  # l' = 2l - p_r


def _first_defined(ps: PeriodStructure, start: int, digits: Sequence[int]) -> Optional[int]:
    for j, s in enumerate(digits):
        if ps.symbol_of_digit(s, start + j + 1) is not None:
            return j
    return None


@dataclass(frozen=True)
class DigitSequence:
    """Digits ``s_0..s_m`` above level ``start``: ``s_j`` is the coefficient of
    ``p_{start+j}`` and lies in ``[0, q_{start+j+1})``."""

    structure: PeriodStructure
    start: int
    digits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(self.digits))
        top = self.start + len(self.digits)
        if top > self.structure.depth:
            raise DepthExhausted(f"digit block reaches level {top} > {self.structure.depth}")
        for j, s in enumerate(self.digits):
            q = self.structure.q[self.start + j]
            if not 0 <= s < q:
                raise ValueError(f"digit {s} out of range at position {j} (q={q})")

    @property
    def t(self) -> Optional[int]:
        """Index of the first defined digit."""
        return _first_defined(self.structure, self.start, self.digits)

    @property
    def value(self) -> int:
        """Block value in units of ``p_start``."""
        ps, r = self.structure, self.start
        return sum(s * (ps.p[r + j] // ps.p[r]) for j, s in enumerate(self.digits))


@dataclass(frozen=True)
class DoubledSequence:
    start: int
    digits: tuple[int, ...]
    carries: tuple[int, ...]  # carry into each digit; -1 is a borrow
    offset: Offset
    carry_in: int
    carry_out: int
    t_prime: Optional[int]


def double_digits(s: DigitSequence, offset: Offset = Offset.PLAIN, carry_in: int = 0) -> DoubledSequence:
    """Digits of ``2*l + carry_in`` (PLAIN) or ``2*l + carry_in - 1`` (SHIFTED),
    in units of ``p_start``, with the carry trace.

    ``carry_in`` is the unit pushed up from doubling the part below level
    ``start``.  A SHIFTED block with even leading digit 0 borrows through the
    maximal digit ``q - 1``.
    """
    if carry_in not in (0, 1):
        raise ValueError("carry_in must be 0 or 1")
    ps, r = s.structure, s.start
    carry = carry_in - (1 if offset is Offset.SHIFTED else 0)
    digits, carries = [], []
    for j, sj in enumerate(s.digits):
        carries.append(carry)
        carry, d = divmod(2 * sj + carry, ps.q[r + j])
        digits.append(d)
    return DoubledSequence(
        r, tuple(digits), tuple(carries), offset, carry_in, carry, _first_defined(ps, r, digits)
    )


@dataclass
class ClaimReport:
    depth: int
    start: int
    cases: tuple[str, ...]
    carry_ins: tuple[int, ...]
    scanned: int = 0
    eligible: int = 0
    checked: int = 0
    no_defined_digit: int = 0
    plain_t_prime_exceeds_t: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.plain_t_prime_exceeds_t

    def as_record(self) -> dict:
        return {
            "depth": self.depth,
            "start_level": self.start,
            "cases": list(self.cases),
            "carry_ins": list(self.carry_ins),
            "scanned": self.scanned,
            "eligible": self.eligible,
            "checked": self.checked,
            "no_defined_digit": self.no_defined_digit,
            "plain_t_prime_exceeds_t": self.plain_t_prime_exceeds_t,
            "violations": self.violations,
        }


def claim_check_exhaustive(
    ps: PeriodStructure,
    depth: int,
    cases: Iterable[Offset] = (Offset.PLAIN, Offset.SHIFTED),
    start: int = 0,
    carry_ins: Iterable[int] = (0, 1),
) -> ClaimReport:
    """Enumerate every block ``(s_0..s_depth)`` whose first defined digit is 0
    and check that no doubled block has first defined digit 2."""
    cases = tuple(cases)
    carry_ins = tuple(carry_ins)
    if start + depth + 1 > ps.depth:
        raise DepthExhausted(f"levels {start + 1}..{start + depth + 1} exceed depth {ps.depth}")
    report = ClaimReport(depth, start, tuple(c.value for c in cases), carry_ins)
    ranges = [range(ps.q[start + j]) for j in range(depth + 1)]
    for digits in itertools.product(*ranges):
        report.scanned += 1
        seq = DigitSequence(ps, start, digits)
        t = seq.t
        if t is None or digits[t] != 0:
            continue
        report.eligible += 1
        for case in cases:
            for cin in carry_ins:
                dbl = double_digits(seq, case, cin)
                report.checked += 1
                tp = dbl.t_prime
                if tp is None:
                    report.no_defined_digit += 1
                    continue
                if case is Offset.PLAIN and tp > t:
                    report.plain_t_prime_exceeds_t += 1
                if dbl.digits[tp] == 2:
                    report.violations.append(
                        {"digits": list(digits), "case": case.value, "carry_in": cin, "doubled": list(dbl.digits)}
                    )
    return report


# ---------------------------------------------------------------------------
# window demonstration


@dataclass
class LevelRow:
    m: int
    k: int
    a_forced_checked: int
    a_side_mismatches: list[int]
    a_fill_symbols: list[int]
    b_symbols: list[int]
    b_symbol_2_positions: list[int]
    realized_fill_pairs: list[tuple[int, int]]
    fill_control: dict[int, list[int]]

    def as_record(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "a_forced_checked": self.a_forced_checked,
            "a_side_mismatches": self.a_side_mismatches,
            "a_fill_symbols": self.a_fill_symbols,
            "b_symbols": self.b_symbols,
            "b_symbol_2_positions": self.b_symbol_2_positions,
            "realized_fill_pairs": [list(p) for p in self.realized_fill_pairs],
            "fill_control": {str(c): v for c, v in self.fill_control.items()},
        }


@dataclass
class DemoReport:
    a: str
    b: str
    window: int
    a_aperiodic: list[int]
    b_aperiodic: list[int]
    rows: list[LevelRow]

    @property
    def realized_fill_pairs(self) -> list[tuple[int, int]]:
        return sorted({p for row in self.rows for p in row.realized_fill_pairs})

    @property
    def violations(self) -> list[dict]:
        out = []
        for row in self.rows:
            for n in row.a_side_mismatches:
                out.append({"m": row.m, "kind": "a-side mismatch", "position": n})
            if row.a_fill_symbols != [0]:
                out.append({"m": row.m, "kind": "a-side fill not 0", "symbols": row.a_fill_symbols})
            for n in row.b_symbol_2_positions:
                out.append({"m": row.m, "kind": "b-side reads 2", "position": n})
        if (0, 2) in self.realized_fill_pairs:
            out.append({"kind": "fill pair (0, 2) realized"})
        return out

    @property
    def control_ok(self) -> bool:
        pairs = set(self.realized_fill_pairs)
        covered = all(
            sorted({s for syms in row.fill_control.values() for s in syms}) == list(ALPHABET)
            for row in self.rows
        )
        return covered and bool(pairs & {(0, 0), (0, 1)})

    def as_record(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "window": self.window,
            "a_aperiodic": self.a_aperiodic,
            "b_aperiodic": self.b_aperiodic,
            "rows": [r.as_record() for r in self.rows],
            "realized_fill_pairs": [list(p) for p in self.realized_fill_pairs],
            "control_ok": self.control_ok,
            "violations": self.violations,
        }


def nonsat_demo(
    a: OdometerElement,
    window: int,
    levels: Iterable[int],
    variant_levels: int = 1,
) -> DemoReport:
    """Compare ``T^k eta`` and ``T^{2k} eta`` with the fibers over ``a`` and
    ``b = 2a`` on ``[-window, window]``.

    For each ``m``: ``k = a_m`` (residue of ``a`` at level ``m``), and
    variants ``k + s*p_m`` for every ``s`` spanning ``variant_levels``
    further digits supply the realized (a-side, b-side) fill pairs.
    """
    ps = a.structure
    if not isinstance(fiber_certificate(a), FiveCertified):
        raise CertificateMissing(f"{a} does not carry a five-point fiber certificate")
    b = scalar_multiple(2, a)
    if not isinstance(fiber_certificate(b), FiveCertified):
        raise CertificateMissing(f"2a = {b} does not carry a five-point fiber certificate")

    part_a = aper_positions(a, -window, window)
    part_b = aper_positions(b, -window, window)
    fill0 = {n: r.symbol for n, r in part_a.forced.items()}

    rows = []
    for m in levels:
        if m + variant_levels + 1 > ps.depth:
            raise DepthExhausted(f"level {m} with {variant_levels} variant levels exceeds depth {ps.depth}")
        k = a.residue(m)
        mismatches = [n for n, sym in fill0.items() if eta(ps, n + k) != sym]
        a_fill = sorted({eta(ps, n + k) for n in part_a.certified})
        b_syms = {n: eta(ps, n + 2 * k) for n in part_b.certified}
        b_two = [n for n, sym in b_syms.items() if sym == 2]

        pm = ps.period(m)
        span = 1
        for lvl in range(m + 1, m + variant_levels + 1):
            span *= ps.q_at(lvl)
        pairs = set()
        for s in range(span):
            kk = k + s * pm
            a_side = {eta(ps, n + kk) for n in part_a.certified}
            b_side = {eta(ps, n + 2 * kk) for n in part_b.certified}
            if len(a_side) == 1 and len(b_side) == 1:
                pairs.add((a_side.pop(), b_side.pop()))
        control = {
            c: sorted({eta(ps, n + k + c * pm) for n in part_a.certified})
            for c in ps.defined_set(m + 1)
        }
        rows.append(
            LevelRow(
                m, k, len(fill0), mismatches, a_fill, sorted(set(b_syms.values())), b_two, sorted(pairs), control
            )
        )
    return DemoReport(str(a), str(b), window, part_a.certified, part_b.certified, rows)
