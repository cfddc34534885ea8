"""Exact arithmetic in small finite fields F_q, q = p^n with p an odd prime.

Elements are represented by their enumeration index: the element with
power-basis coordinates (c0, ..., c_{n-1}) has index c0 + c1*p + ... +
c_{n-1}*p^(n-1).  Indices 0..p-1 therefore coincide with the prime
subfield, and 0/1 are the additive/multiplicative identities in every
field.  All products and sums go through precomputed tables, which keeps
the polynomial kernels fast and exact for the supported range q <= 81.

A FieldCtx is immutable after construction; every operation is a pure
function of its arguments, so contexts can be shared freely across
threads.
"""

from __future__ import annotations

import itertools

# Desk-scale verification cap; raise only via an explicit max_q override.
DEFAULT_MAX_Q = 81


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


# ----------------------------------------------------------------------
# Univariate polynomials over F_p (modulus search only, so plain tuples
# of residues, constant term first, no leading-zero trimming guarantees).
# ----------------------------------------------------------------------

def _poly_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _poly_mod(num, den, p):
    """Remainder of num modulo den (den monic), coefficients mod p."""
    num = [v % p for v in num]
    dn = len(_poly_trim(den)) - 1
    for i in range(len(num) - 1, dn - 1, -1):
        f = num[i] % p
        if f:
            for j in range(dn + 1):
                num[i - dn + j] = (num[i - dn + j] - f * den[j]) % p
    return _poly_trim(num)


def _poly_is_irreducible(coeffs, p):
    """Trial-division irreducibility for a monic polynomial over F_p.

    Degree >= 2 requires no root in F_p; degree >= 4 additionally requires
    no monic factor of degree 2..deg/2.
    """
    deg = len(coeffs) - 1
    if deg == 1:
        return True
    for r in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * r + c) % p
        if acc == 0:
            return False
    for d in range(2, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            den = tuple(tail) + (1,)
            if not _poly_mod(coeffs, den, p):
                return False
    return True


def _smallest_irreducible(p: int, n: int):
    """Lexicographically smallest monic irreducible of degree n over F_p.

    Candidates are ordered by their coefficient tuple (c0, ..., c_{n-1}),
    low-degree coefficient most significant.
    """
    for tail in itertools.product(range(p), repeat=n):
        cand = tuple(tail) + (1,)
        if _poly_is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldCtx:
    """A concrete realization of F_{p^n} with full operation tables.

    Attributes:
        p, n, q: characteristic, extension degree, order.
        modulus: monic degree-n irreducible over F_p, constant term first.
        omega:   smallest generator of the multiplicative group.
    """

    __slots__ = ("p", "n", "q", "modulus", "omega",
                 "_add", "_mul", "_neg", "_inv")

    def __init__(self, p: int, n: int = 1, max_q: int = DEFAULT_MAX_Q):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if p == 2:
            raise ValueError("characteristic 2 unsupported (odd p required)")
        if n <= 0:
            raise ValueError(f"extension degree n={n} must be positive")
        q = p ** n
        if q > max_q:
            raise ValueError(f"q={q} exceeds the supported bound {max_q}")
        self.p = p
        self.n = n
        self.q = q
        self.modulus = _smallest_irreducible(p, n)
        self._build_tables()
        self.omega = self._find_generator()

    # -- construction helpers ------------------------------------------

    def _build_tables(self):
        p, n, q = self.p, self.n, self.q
        mod = self.modulus
        coords = [self.coords(x) for x in range(q)]
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        neg = [0] * q
        for x in range(q):
            cx = coords[x]
            neg[x] = self._encode(tuple((-c) % p for c in cx))
            for y in range(x, q):
                cy = coords[y]
                s = self._encode(tuple((a + b) % p for a, b in zip(cx, cy)))
                add[x][y] = s
                add[y][x] = s
                prod = [0] * (2 * n - 1)
                for i, a in enumerate(cx):
                    if a:
                        for j, b in enumerate(cy):
                            prod[i + j] += a * b
                r = _poly_mod(prod, mod, p)
                m = self._encode(tuple(r) + (0,) * (n - len(r)))
                mul[x][y] = m
                mul[y][x] = m
        inv = [0] * q
        for x in range(1, q):
            inv[x] = self._pow_raw(x, q - 2, mul)
            if mul[x][inv[x]] != 1:
                raise AssertionError(f"inverse table broken at {x}")
        self._add = add
        self._mul = mul
        self._neg = neg
        self._inv = inv

    @staticmethod
    def _pow_raw(x, k, mul):
        acc = 1
        while k:
            if k & 1:
                acc = mul[acc][x]
            x = mul[x][x]
            k >>= 1
        return acc

    def _find_generator(self) -> int:
        # Brute-force order check, smallest unit first.
        for x in range(1, self.q):
            y = x
            order = 1
            while y != 1:
                y = self._mul[y][x]
                order += 1
            if order == self.q - 1:
                return x
        raise AssertionError("no multiplicative generator found")

    def _encode(self, coords) -> int:
        idx = 0
        for c in reversed(coords):
            idx = idx * self.p + c
        return idx

    # -- element views --------------------------------------------------

    def coords(self, x: int):
        """Power-basis coordinates (c0, ..., c_{n-1}) of element index x."""
        out = []
        for _ in range(self.n):
            x, r = divmod(x, self.p)
            out.append(r)
        return tuple(out)

    def from_coords(self, coords) -> int:
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} coordinates")
        return self._encode(tuple(c % self.p for c in coords))

    def from_int(self, k: int) -> int:
        """Image of the integer k under Z -> F_p <= F_q."""
        return k % self.p

    def elem_str(self, x: int) -> str:
        if self.n == 1:
            return str(x)
        return "[" + ",".join(str(c) for c in self.coords(x)) + "]"

    # -- arithmetic -------------------------------------------------------

    def add(self, x: int, y: int) -> int:
        return self._add[x][y]

    def sub(self, x: int, y: int) -> int:
        return self._add[x][self._neg[y]]

    def neg(self, x: int) -> int:
        return self._neg[x]

    def mul(self, x: int, y: int) -> int:
        return self._mul[x][y]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[x]

    def div(self, x: int, y: int) -> int:
        return self._mul[x][self.inv(y)]

    def pow(self, x: int, k: int) -> int:
        if k < 0:
            raise ValueError("negative exponent")
        return self._pow_raw(x, k, self._mul)

    # -- enumeration and residue classification ---------------------------

    def elements(self):
        """All q elements in enumeration (index) order."""
        return list(range(self.q))

    def units(self):
        """The q-1 nonzero elements in enumeration order."""
        return list(range(1, self.q))

    def is_quadratic_residue(self, x: int) -> bool:
        """True iff x is an even power of omega (x nonzero)."""
        if x == 0:
            raise ValueError("0 is neither a residue nor a nonresidue")
        return self.pow(x, (self.q - 1) // 2) == 1

    def quadratic_residues(self):
        return [x for x in self.units() if self.is_quadratic_residue(x)]

    def quadratic_nonresidues(self):
        return [x for x in self.units() if not self.is_quadratic_residue(x)]

    # ----------------------------------------------------------------------

    def modulus_str(self) -> str:
        parts = []
        for i in range(self.n, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                v = "x" if i == 1 else f"x^{i}"
                parts.append(v if c == 1 else f"{c}*{v}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        if self.n == 1:
            return f"GF({self.q})"
        return f"GF({self.q}) = GF({self.p})[x]/({self.modulus_str()})"


def make_field(p: int, n: int = 1, max_q: int = DEFAULT_MAX_Q) -> FieldCtx:
    """Build F_{p^n} with the smallest modulus and smallest generator."""
    return FieldCtx(p, n, max_q=max_q)
