"""Mixed-radix arithmetic on the odometer group lim Z/p_iZ.

A :class:`PeriodStructure` fixes the level moduli ``q_1, q_2, ...`` and the
cumulative periods ``p_i = q_1 * ... * q_i``.  Elements of the inverse limit
are :class:`OdometerElement` values: a finite digit prefix plus a tail rule
that says what (if anything) is known about the remaining digits.

Digit ``j`` (0-based) is the coefficient of ``p_j`` and lives in
``[0, q_{j+1})``.  Levels are 1-based, so digit ``j`` belongs to level
``j + 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union


class DepthExhausted(ValueError):
    """The period structure does not have enough levels for the request."""


class PeriodStructureError(ValueError):
    """Invalid level moduli or generator rule."""


# ---------------------------------------------------------------------------
# generator rules


@dataclass(frozen=True)
class GeometricRule:
    """q_i = base * ratio**(i-1)."""

    base: int = 6
    ratio: int = 2

    def q(self, i: int) -> int:
        return self.base * self.ratio ** (i - 1)

    @property
    def reciprocal_sum_converges(self) -> bool:
        return self.ratio > 1

    def describe(self) -> str:
        return f"geometric base={self.base} ratio={self.ratio}"


@dataclass(frozen=True)
class ArithmeticRule:
    """q_i = start + step*(i-1)."""

    start: int = 6
    step: int = 2

    def q(self, i: int) -> int:
        return self.start + self.step * (i - 1)

    @property
    def reciprocal_sum_converges(self) -> bool:
        # harmonic-type tail
        return False

    def describe(self) -> str:
        return f"arithmetic start={self.start} step={self.step}"


Rule = Union[GeometricRule, ArithmeticRule]

_RULE_DEFAULTS = {
    "geometric": (GeometricRule, {"base": 6, "ratio": 2}),
    "arithmetic": (ArithmeticRule, {"start": 6, "step": 2}),
}


def parse_rule(text: str) -> Rule:
    """Parse ``"geometric base=6 ratio=2"`` or ``"arithmetic start=6 step=2"``.

    Parameters may be separated by spaces, commas or colons; omitted
    parameters take the stock defaults.
    """
    tokens = [t for t in re.split(r"[\s,:]+", text.strip()) if t]
    if not tokens or tokens[0] not in _RULE_DEFAULTS:
        raise PeriodStructureError(f"unknown generator rule: {text!r}")
    cls, defaults = _RULE_DEFAULTS[tokens[0]]
    params = dict(defaults)
    for tok in tokens[1:]:
        key, sep, value = tok.partition("=")
        if not sep or key not in params:
            raise PeriodStructureError(f"bad rule parameter {tok!r} in {text!r}")
        try:
            params[key] = int(value)
        except ValueError as exc:
            raise PeriodStructureError(f"non-integer rule parameter {tok!r}") from exc
    return cls(**params)


# ---------------------------------------------------------------------------
# period structure


@dataclass(frozen=True)
class PeriodStructure:
    """Level moduli ``q`` (length K) with cumulative periods ``p``.

    ``rule`` records the generator the moduli came from, if any; it is what
    decides whether the reciprocal sum converges, and it lets certification
    look past level K.
    """

    q: tuple[int, ...]
    rule: Optional[Rule] = None
    p: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        q = tuple(int(x) for x in self.q)
        object.__setattr__(self, "q", q)
        if not q:
            raise PeriodStructureError("need at least one level")
        if q[0] < 6:
            raise PeriodStructureError(f"q_1 must be >= 6, got {q[0]}")
        for i, qi in enumerate(q, start=1):
            if qi % 2:
                raise PeriodStructureError(f"q_{i} = {qi} is odd")
            if i > 1 and qi <= q[i - 2]:
                raise PeriodStructureError(f"q must be strictly increasing (q_{i} = {qi})")
            if self.rule is not None and self.rule.q(i) != qi:
                raise PeriodStructureError(f"q_{i} = {qi} disagrees with {self.rule.describe()}")
        p = [1]
        for qi in q:
            p.append(p[-1] * qi)
        object.__setattr__(self, "p", tuple(p))

    @classmethod
    def from_rule(cls, rule: Rule, depth: int) -> "PeriodStructure":
        if depth < 1:
            raise PeriodStructureError("depth must be >= 1")
        return cls(tuple(rule.q(i) for i in range(1, depth + 1)), rule)

    @classmethod
    def geometric(cls, base: int = 6, ratio: int = 2, depth: int = 8) -> "PeriodStructure":
        return cls.from_rule(GeometricRule(base, ratio), depth)

    @classmethod
    def arithmetic(cls, start: int = 6, step: int = 2, depth: int = 8) -> "PeriodStructure":
        return cls.from_rule(ArithmeticRule(start, step), depth)

    @property
    def depth(self) -> int:
        return len(self.q)

    def with_depth(self, depth: int) -> "PeriodStructure":
        if self.rule is None:
            if depth > self.depth:
                raise DepthExhausted(f"explicit q-list has only {self.depth} levels")
            return PeriodStructure(self.q[:depth])
        return PeriodStructure.from_rule(self.rule, depth)

    @property
    def reciprocal_sum_converges(self) -> Optional[bool]:
        """None when only a finite q-list is known."""
        return None if self.rule is None else self.rule.reciprocal_sum_converges

    def q_at(self, level: int) -> int:
        """q_level, 1-based; raises :class:`DepthExhausted` past K."""
        if not 1 <= level <= self.depth:
            raise DepthExhausted(f"level {level} outside 1..{self.depth}")
        return self.q[level - 1]

    def period(self, level: int) -> int:
        if not 0 <= level <= self.depth:
            raise DepthExhausted(f"level {level} outside 0..{self.depth}")
        return self.p[level]

    # defined digits -------------------------------------------------------

    def defined_set(self, level: int) -> tuple[int, int, int, int, int]:
        """Residues of ``Z/q_level`` that receive a symbol, ordered by symbol."""
        q = self.q_at(level)
        return (0, 1, 2, q // 2 + 1, q - 1)

    def is_defined_digit(self, s: int, level: int) -> bool:
        q = self.q_at(level)
        if not 0 <= s < q:
            raise ValueError(f"digit {s} out of range for level {level} (q={q})")
        return s in self.defined_set(level)

    def symbol_of_digit(self, s: int, level: int) -> Optional[int]:
        """Symbol assigned to digit ``s`` at ``level``, or None if undefined."""
        q = self.q_at(level)
        if s in (0, 1, 2):
            return s
        if s == q // 2 + 1:
            return 3
        if s == q - 1:
            return 4
        return None

    # integers <-> digits --------------------------------------------------

    def digits_of_integer(self, n: int, k: int) -> tuple[int, ...]:
        """Mixed-radix digits of ``n mod p_k``."""
        if k > self.depth:
            raise DepthExhausted(f"depth {k} exceeds available {self.depth} levels")
        out = []
        for qi in self.q[:k]:
            n, s = divmod(n, qi)
            out.append(s)
        return tuple(out)

    def value_of_digits(self, digits: Sequence[int]) -> int:
        if len(digits) > self.depth:
            raise DepthExhausted(f"{len(digits)} digits exceed available {self.depth} levels")
        total = 0
        for j, s in enumerate(digits):
            if not 0 <= s < self.q[j]:
                raise ValueError(f"digit {s} out of range at position {j} (q={self.q[j]})")
            total += s * self.p[j]
        return total

    def stable_level(self, n: int) -> int:
        """Smallest L with every digit of ``n`` at index >= L equal to 0 (n >= 0)
        or to the maximal digit (n < 0)."""
        bound = n if n >= 0 else -n - 1
        L = 0
        while L <= self.depth and self.p[L] <= bound:
            L += 1
        if L > self.depth:
            raise DepthExhausted(f"{n} does not stabilise within {self.depth} levels")
        return L

    def constant_tail_certificate(self, c: int, start: int) -> Optional[bool]:
        """Is digit ``c`` undefined at every index ``j >= start``?

        Returns True/False when decidable and None when neither the q-list nor
        the rule reaches far enough.  Beyond level K only the strict growth of
        ``q`` is used, unless a rule is present.
        """
        if c in (0, 1, 2):
            return False
        bad = {c + 1, 2 * c - 2}  # q with c == q-1 or c == q/2+1
        level = start + 1
        while level <= self.depth:
            if self.q[level - 1] in bad:
                return False
            level += 1
        if self.q[-1] >= max(bad):
            return True
        if self.rule is None:
            return None
        while True:
            qi = self.rule.q(level)
            if qi in bad:
                return False
            if qi >= max(bad):
                return True
            level += 1


# ---------------------------------------------------------------------------
# odometer elements


@dataclass(frozen=True)
class IntegerEmbed:
    """The element is the image of the integer ``value``."""

    value: int


@dataclass(frozen=True)
class ConstantDigits:
    """Every digit past the prefix equals ``digit``."""

    digit: int


@dataclass(frozen=True)
class Unknown:
    """Nothing is known past the prefix."""


Tail = Union[IntegerEmbed, ConstantDigits, Unknown]


@dataclass(frozen=True)
class OdometerElement:
    """An element of lim Z/p_iZ: a digit prefix plus a tail rule.

    Construct through :func:`embed` and :func:`from_digits`, which put the
    element in canonical form (so ``==`` compares group elements whenever the
    tail rule is not :class:`Unknown`).
    """

    structure: PeriodStructure
    prefix: tuple[int, ...]
    tail: Tail

    @property
    def horizon(self) -> Optional[int]:
        """Number of known digits; None means all of them."""
        return len(self.prefix) if isinstance(self.tail, Unknown) else None

    def digit(self, j: int) -> int:
        tail = self.tail
        if isinstance(tail, IntegerEmbed):
            if j >= self.structure.depth:
                raise DepthExhausted(f"digit {j} needs level {j + 1} > {self.structure.depth}")
            return (tail.value // self.structure.p[j]) % self.structure.q[j]
        if j < len(self.prefix):
            return self.prefix[j]
        if isinstance(tail, ConstantDigits):
            return tail.digit
        raise DepthExhausted(f"digit {j} is beyond the knowledge horizon {len(self.prefix)}")

    def digits(self, k: int) -> tuple[int, ...]:
        return tuple(self.digit(j) for j in range(k))

    def residue(self, level: int) -> int:
        """g_level = s_0 + s_1 p_1 + ... + s_{level-1} p_{level-1}."""
        if isinstance(self.tail, IntegerEmbed):
            return self.tail.value % self.structure.period(level)
        return sum(self.digit(j) * self.structure.p[j] for j in range(level))

    def truncate(self, k: int) -> "OdometerElement":
        return OdometerElement(self.structure, self.digits(k), Unknown())

    def defined_levels(self, max_level: int) -> tuple[int, ...]:
        """Levels ``<= max_level`` whose digit is defined (within the horizon)."""
        top = max_level if self.horizon is None else min(max_level, self.horizon)
        return tuple(
            j + 1 for j in range(top) if self.structure.symbol_of_digit(self.digit(j), j + 1) is not None
        )

    def __str__(self) -> str:
        if isinstance(self.tail, IntegerEmbed):
            return f"int:{self.tail.value}"
        body = ",".join(map(str, self.prefix))
        if isinstance(self.tail, ConstantDigits):
            return f"digits:{body}+const:{self.tail.digit}"
        return f"digits:{body}+unknown"


def embed(structure: PeriodStructure, m: int) -> OdometerElement:
    return OdometerElement(structure, (), IntegerEmbed(int(m)))


def from_digits(structure: PeriodStructure, digits: Sequence[int], tail: Tail = Unknown()) -> OdometerElement:
    """Build an element from a prefix and a tail rule, validating digit ranges."""
    digits = tuple(int(s) for s in digits)
    structure.value_of_digits(digits)  # range + depth check
    if isinstance(tail, IntegerEmbed):
        raise ValueError("use embed() for integer elements")
    if isinstance(tail, ConstantDigits):
        c = tail.digit
        # q strictly increases, so checking the first tail level (or q_K) covers all later ones
        q_bound = structure.q_at(min(len(digits) + 1, structure.depth))
        if not 0 <= c < q_bound:
            raise ValueError(f"constant digit {c} out of range (q={q_bound})")
        if c == 0:
            return embed(structure, structure.value_of_digits(digits))
        while digits and digits[-1] == c:
            digits = digits[:-1]
    return OdometerElement(structure, digits, tail)


def _check_same(g: OdometerElement, h: OdometerElement) -> PeriodStructure:
    if g.structure != h.structure:
        raise ValueError("elements belong to different period structures")
    return g.structure


def _add_prefix(g: OdometerElement, h: OdometerElement, length: int) -> tuple[list[int], int]:
    ps = g.structure
    out, carry = [], 0
    for j in range(length):
        carry, s = divmod(g.digit(j) + h.digit(j) + carry, ps.q[j])
        out.append(s)
    return out, carry


def add(g: OdometerElement, h: OdometerElement) -> OdometerElement:
    """Group sum with carry propagation.

    Unknown tails stay unknown (horizon = smaller horizon).  Constant-digit
    tails combined with integers or other constant tails are resolved exactly
    whenever the carries settle within the available depth.
    """
    ps = _check_same(g, h)
    gt, ht = g.tail, h.tail
    if isinstance(gt, IntegerEmbed) and isinstance(ht, IntegerEmbed):
        return embed(ps, gt.value + ht.value)

    if isinstance(gt, Unknown) or isinstance(ht, Unknown):
        horizons = [x for x in (g.horizon, h.horizon) if x is not None]
        length = min(min(horizons), ps.depth)
        digits, _ = _add_prefix(g, h, length)
        return OdometerElement(ps, tuple(digits), Unknown())

    if isinstance(gt, IntegerEmbed):
        g, h = h, g
        gt, ht = ht, gt
    c = gt.digit

    if isinstance(ht, IntegerEmbed):
        m = ht.value
        L = max(len(g.prefix) + 1, ps.stable_level(m))
        if L >= ps.depth:
            return _unknown_sum(g, h)
        digits, carry = _add_prefix(g, h, L)
        if m >= 0:
            if carry:
                digits.append(c + 1)
        elif not carry:
            # c + (q-1) with no incoming carry leaves c-1 and carries on
            digits.append(c - 1)
        return from_digits(ps, digits, ConstantDigits(c))

    # constant + constant
    s = c + ht.digit
    L = max(len(g.prefix), len(h.prefix)) + 1
    while L < ps.depth and ps.q[L] <= s + 1:
        L += 1
    if L >= ps.depth or ps.q[L] <= s + 1:
        return _unknown_sum(g, h)
    digits, carry = _add_prefix(g, h, L)
    if carry:
        digits.append(s + 1)
    return from_digits(ps, digits, ConstantDigits(s))


def _unknown_sum(g: OdometerElement, h: OdometerElement) -> OdometerElement:
    digits, _ = _add_prefix(g, h, g.structure.depth)
    return OdometerElement(g.structure, tuple(digits), Unknown())


def negate(g: OdometerElement) -> OdometerElement:
    """Additive inverse.  A constant-digit tail has no constant-digit negative,
    so the result is known only up to level K."""
    ps = g.structure
    if isinstance(g.tail, IntegerEmbed):
        return embed(ps, -g.tail.value)
    length = ps.depth if g.horizon is None else min(g.horizon, ps.depth)
    value = (-g.residue(length)) % ps.p[length]
    return OdometerElement(ps, ps.digits_of_integer(value, length), Unknown())


def scalar_multiple(m: int, g: OdometerElement) -> OdometerElement:
    """m*g by double-and-add."""
    ps = g.structure
    if isinstance(g.tail, IntegerEmbed):
        return embed(ps, m * g.tail.value)
    if m == 0:
        return embed(ps, 0)
    if m < 0:
        return scalar_multiple(-m, negate(g))
    result = None
    power = g
    while m:
        if m & 1:
            result = power if result is None else add(result, power)
        m >>= 1
        if m:
            power = add(power, power)
    return result


def undefined_from(g: OdometerElement, start: int) -> Optional[bool]:
    """Is every digit of ``g`` at index ``>= start`` undefined?

    True/False when the tail rule decides it, None otherwise.  Integer tails
    always end in defined digits (0 or q-1), so they give False.
    """
    ps = g.structure
    if isinstance(g.tail, IntegerEmbed):
        return False
    if isinstance(g.tail, Unknown):
        return None
    for j in range(start, len(g.prefix)):
        if ps.symbol_of_digit(g.prefix[j], j + 1) is not None:
            return False
    return ps.constant_tail_certificate(g.tail.digit, max(start, len(g.prefix)))


_SPEC_RE = re.compile(r"^digits:([0-9,\s]*)(?:\+(const):(\d+)|\+(unknown))?$")


def parse_element(structure: PeriodStructure, text: str) -> OdometerElement:
    """Parse ``int:<m>`` or ``digits:<s0,s1,...>[+const:<c>|+unknown]``."""
    text = text.strip()
    if text.startswith("int:"):
        try:
            return embed(structure, int(text[4:]))
        except ValueError as exc:
            raise ValueError(f"bad integer in element spec {text!r}") from exc
    match = _SPEC_RE.match(text)
    if not match:
        raise ValueError(f"bad element spec {text!r}")
    body = [t for t in match.group(1).replace(" ", "").split(",") if t]
    digits = [int(t) for t in body]
    tail: Tail = ConstantDigits(int(match.group(3))) if match.group(2) else Unknown()
    return from_digits(structure, digits, tail)


DEFAULT_STRUCTURE = PeriodStructure.geometric(6, 2, 8)
