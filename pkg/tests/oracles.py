"""Independent reference computations used to freeze expected values.

Nothing here calls the digit machinery under test.
"""

from __future__ import annotations


def fill_sequence(q, lo, hi):
    """Run the step-by-step filling on positions ``[lo, hi]``.

    Step 1 assigns residues mod q_1; step i+1 assigns, inside each block
    ``(k p_i, (k+1) p_i)``, every still-empty cell the symbol picked by
    ``k mod q_{i+1}``.  Returns a dict position -> symbol (missing = never
    filled within the available steps).
    """
    seq = {}
    q1 = q[0]
    rule1 = {0: 0, 1: 1, 2: 2, q1 // 2 + 1: 3, q1 - 1: 4}
    for n in range(lo, hi + 1):
        r = n % q1
        if r in rule1:
            seq[n] = rule1[r]
    p = q1
    for qn in q[1:]:
        rule = {0: 0, 1: 1, 2: 2, qn // 2 + 1: 3, qn - 1: 4}
        for n in range(lo, hi + 1):
            if n in seq:
                continue
            k = n // p
            if k * p < n < (k + 1) * p and (k % qn) in rule:
                seq[n] = rule[k % qn]
        p *= qn
    return seq


def mixed_radix_by_counting(n, q):
    """Digits of ``n mod prod(q)`` by counting up from 0 like an odometer."""
    total = 1
    for x in q:
        total *= x
    n %= total
    digits = [0] * len(q)
    for _ in range(n):
        i = 0
        while True:
            digits[i] += 1
            if digits[i] < q[i]:
                break
            digits[i] = 0
            i += 1
            if i == len(q):
                break
    return tuple(digits)


def orbit_by_words(N, r, d, base=0):
    """All sigma^a tau^b applied to the diagonal point, enumerated as words."""
    out = set()
    pt = tuple(base % N for _ in range(d))
    for a in range(N):
        for b in range(N):
            t = pt
            for _ in range(a):
                t = tuple((x + r) % N for x in t)
            for _ in range(b):
                t = tuple((x + (i + 1) * r) % N for i, x in enumerate(t))
            out.add(t)
    return out


def combo_by_triples(num1, den1, num2, den2, A, N):
    """``{u - v : den1*u = num1*a, den2*v = num2*a'}`` by enumerating (a, a', u, v)."""
    out = set()
    for a in A:
        for a2 in A:
            for u in range(N):
                if (den1 * u - num1 * a) % N:
                    continue
                for v in range(N):
                    if (den2 * v - num2 * a2) % N == 0:
                        out.add((u - v) % N)
    return out
