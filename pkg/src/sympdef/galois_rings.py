"""Exact arithmetic in F_q = F_{p^M} and the truncated Witt ring W(F_q)/p^m.

The ring W(F_q)/p^m (a Galois ring of characteristic p^m with residue
field F_q) is represented as (Z/p^m)[x] / (f~), where f~ is the fixed
monic lift of the defining modulus of F_q with coefficients in
{0, ..., p-1}.  With this choice every reduction map W(F_q)/p^m ->
W(F_q)/p^m' is coefficient-wise, and the Teichmuller section is the
stabilising iterate of y -> y^q.

All values are immutable; operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence, Tuple


class NotPrime(ValueError):
    """Raised when a field characteristic is not an odd prime."""


class ReducibleModulus(ValueError):
    """Raised when the defining polynomial is reducible over F_p."""


class PrecisionIncrease(ValueError):
    """Raised when reduce_precision is asked to raise the precision."""


DEFAULT_PRECISION_CAP = 8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primitive_root(p: int) -> int:
    """Smallest primitive root modulo the odd prime p."""
    factors = []
    n, d = p - 1, 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    for w in range(2, p):
        if all(pow(w, (p - 1) // r, p) != 1 for r in factors):
            return w
    raise ValueError(f"no primitive root mod {p}")


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (coefficient tuples, low degree first)


def _poly_trim(c: Sequence[int]) -> Tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mulmod(a, b, mod, p):
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _poly_divmod(res, mod, p)


def _poly_divmod(a, mod, p):
    # remainder of a by the monic polynomial mod
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            c = (c * inv_lead) % p
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return _poly_trim(a[:dm])


def _poly_powmod(base, e, mod, p):
    result = (1,)
    base = _poly_divmod(base, mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        # reduce a modulo b (b made monic on the fly)
        inv = pow(b[-1], p - 2, p)
        bm = tuple((c * inv) % p for c in b)
        a = _poly_divmod(a, bm, p) if len(a) >= len(bm) else a
        a, b = b, _poly_trim(a)
    return a


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin irreducibility test for a monic polynomial over F_p."""
    M = len(modulus) - 1
    if M == 1:
        return True
    x = (0, 1)
    # x^(p^M) == x mod f
    xq = _poly_powmod(x, p ** M, modulus, p)
    if _poly_trim(xq) != _poly_trim(x):
        return False
    prime_divs = set()
    n, d = M, 2
    while d * d <= n:
        if n % d == 0:
            prime_divs.add(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        prime_divs.add(n)
    for r in prime_divs:
        xe = _poly_powmod(x, p ** (M // r), modulus, p)
        diff = list(xe) + [0] * (2 - len(xe))
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(_poly_trim(diff), modulus, p)
        if len(g) > 1:
            return False
    return True


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """The residue field F_{p^M} given by a monic irreducible modulus.

    ``modulus`` has length M+1, low degree first, coefficients in
    {0,...,p-1}; the same integer tuple also serves as the fixed monic
    lift defining W(F_q)/p^m at every precision.
    """

    p: int
    M: int
    modulus: Tuple[int, ...]
    precision_cap: int = field(default=DEFAULT_PRECISION_CAP, compare=False)

    @property
    def q(self) -> int:
        return self.p ** self.M

    def element(self, coeffs: Sequence[int], m: int = 1) -> "GRElement":
        self._check_precision(m)
        pm = self.p ** m
        c = [int(x) % pm for x in coeffs]
        if len(c) > self.M:
            raise ValueError(f"coefficient vector longer than degree {self.M}")
        c += [0] * (self.M - len(c))
        return GRElement(self, m, tuple(c))

    def from_int(self, a: int, m: int = 1) -> "GRElement":
        return self.element([a], m)

    def zero(self, m: int = 1) -> "GRElement":
        return self.element([], m)

    def one(self, m: int = 1) -> "GRElement":
        return self.element([1], m)

    def gen(self, m: int = 1) -> "GRElement":
        """The class of x, an F_p-algebra generator of F_q (needs M > 1)."""
        if self.M == 1:
            raise ValueError("prime field has no proper generator")
        return self.element([0, 1], m)

    def residue_elements(self) -> Iterator["GRElement"]:
        """All q elements of the residue field (precision 1)."""
        def rec(prefix):
            if len(prefix) == self.M:
                yield self.element(prefix, 1)
                return
            for c in range(self.p):
                yield from rec(prefix + [c])
        yield from rec([])

    def _check_precision(self, m: int) -> None:
        if not 1 <= m <= self.precision_cap:
            raise ValueError(
                f"precision {m} outside [1, {self.precision_cap}]"
            )

    def to_dict(self) -> dict:
        return {"p": self.p, "M": self.M, "modulus": list(self.modulus)}


def make_field(p: int, M: int, modulus: Sequence[int],
               precision_cap: int = DEFAULT_PRECISION_CAP) -> FieldSpec:
    """Validate and build a FieldSpec.

    ``modulus`` is monic of degree M over F_p; for M == 1 any monic
    degree-1 polynomial (canonically x) is accepted.
    """
    if not is_prime(p) or p == 2:
        raise NotPrime(f"{p} is not an odd prime")
    if M < 1:
        raise ValueError("extension degree must be >= 1")
    mod = tuple(int(c) % p for c in modulus)
    if len(mod) != M + 1 or mod[-1] != 1:
        raise ValueError(f"modulus must be monic of degree {M}")
    if not _is_irreducible(mod, p):
        raise ReducibleModulus(f"{list(mod)} is reducible over F_{p}")
    return FieldSpec(p, M, mod, precision_cap)


def prime_field(p: int, precision_cap: int = DEFAULT_PRECISION_CAP) -> FieldSpec:
    return make_field(p, 1, (0, 1), precision_cap)


class GRElement:
    """An element of W(F_q)/p^m; m == 1 gives the field F_q itself."""

    __slots__ = ("spec", "m", "coeffs")

    def __init__(self, spec: FieldSpec, m: int, coeffs: Tuple[int, ...]):
        self.spec = spec
        self.m = m
        self.coeffs = coeffs

    # -- basics ------------------------------------------------------------

    def __repr__(self):
        if self.spec.M == 1:
            return f"GR({self.coeffs[0]} mod {self.spec.p}^{self.m})"
        return f"GR({list(self.coeffs)} mod {self.spec.p}^{self.m})"

    def __eq__(self, other):
        return (isinstance(other, GRElement) and self.m == other.m
                and self.coeffs == other.coeffs and self.spec == other.spec)

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _coerce(self, other) -> "GRElement":
        if isinstance(other, int):
            return self.spec.from_int(other, self.m)
        if not isinstance(other, GRElement):
            raise TypeError(f"cannot mix GRElement with {type(other)!r}")
        if other.spec != self.spec or other.m != self.m:
            raise ValueError("mixed rings or precisions; reduce/lift first")
        return other

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        pm = self.spec.p ** self.m
        return GRElement(self.spec, self.m, tuple(
            (a + b) % pm for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        pm = self.spec.p ** self.m
        return GRElement(self.spec, self.m,
                         tuple((-a) % pm for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        spec, m = self.spec, self.m
        pm = spec.p ** m
        M = spec.M
        if M == 1:
            return GRElement(spec, m, ((self.coeffs[0] * other.coeffs[0]) % pm,))
        prod = [0] * (2 * M - 1)
        for i, ai in enumerate(self.coeffs):
            if ai:
                for j, bj in enumerate(other.coeffs):
                    prod[i + j] = (prod[i + j] + ai * bj) % pm
        # reduce by the monic modulus lift
        mod = spec.modulus
        for i in range(2 * M - 2, M - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(M):
                    prod[i - M + j] = (prod[i - M + j] - c * mod[j]) % pm
        return GRElement(spec, m, tuple(prod[:M]))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.spec.one(self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- structure ---------------------------------------------------------

    def reduce(self, m2: int) -> "GRElement":
        if m2 > self.m:
            raise PrecisionIncrease(f"cannot reduce precision {self.m} to {m2}")
        pm = self.spec.p ** m2
        return GRElement(self.spec, m2, tuple(a % pm for a in self.coeffs))

    def lift(self, m2: int) -> "GRElement":
        """Coefficient-wise lift (a set-theoretic section of reduce)."""
        if m2 < self.m:
            return self.reduce(m2)
        self.spec._check_precision(m2)
        return GRElement(self.spec, m2, self.coeffs)

    def residue(self) -> "GRElement":
        return self.reduce(1)

    def is_unit(self) -> bool:
        return any(a % self.spec.p for a in self.coeffs)

    def valuation(self) -> int:
        """p-adic valuation; m for the zero element."""
        v = self.m
        for a in self.coeffs:
            if a:
                w = 0
                while a % self.spec.p == 0:
                    a //= self.spec.p
                    w += 1
                v = min(v, w)
        return v

    def divide_p(self, k: int = 1) -> "GRElement":
        """Exact division by p^k, landing in precision m-k."""
        if self.valuation() < k:
            raise ValueError("not divisible by p^k")
        pk = self.spec.p ** k
        return GRElement(self.spec, self.m - k,
                         tuple(a // pk for a in self.coeffs))

    def inverse(self) -> "GRElement":
        if not self.is_unit():
            raise ZeroDivisionError("not a unit")
        spec, m = self.spec, self.m
        # invert in the residue field, then Newton-lift
        r = self.residue()
        inv = r ** (spec.q - 2)
        b = inv.lift(m)
        prec = 1
        while prec < m:
            b = b * (spec.from_int(2, m) - self * b)
            prec *= 2
        return b

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def frobenius(self) -> "GRElement":
        return self ** self.spec.p

    def sqrt(self) -> "GRElement":
        """A square root of a unit, if one exists (desk-scale search)."""
        if not self.is_unit():
            raise ValueError("sqrt implemented for units only")
        r = self.residue()
        root = None
        for c in self.spec.residue_elements():
            if c * c == r:
                root = c
                break
        if root is None:
            raise ValueError("not a square in the residue field")
        z = root.lift(self.m)
        inv2 = self.spec.from_int(2, self.m).inverse()
        prec = 1
        while prec < self.m:
            z = (z + self * z.inverse()) * inv2
            prec *= 2
        return z

    def to_int(self) -> int:
        if self.spec.M != 1:
            raise ValueError("to_int needs M == 1")
        return self.coeffs[0]


def teichmuller(a: GRElement, m: int) -> GRElement:
    """The Teichmuller lift of a residue-field element to precision m.

    Characterised by x^q = x with x = a mod p; computed by iterating
    y -> y^q from the coefficient-wise lift, which gains one p-digit of
    accuracy per step.
    """
    if a.m != 1:
        a = a.residue()
    x = a.lift(m)
    q = a.spec.q
    for _ in range(m):
        nxt = x ** q
        if nxt == x:
            break
        x = nxt
    return x


def reduce_precision(x: GRElement, m2: int) -> GRElement:
    """Ring-homomorphic reduction W(F_q)/p^m -> W(F_q)/p^m'."""
    return x.reduce(m2)


def multiplication_matrix(c: GRElement):
    """Columns of multiplication by c on the F_p-basis 1, x, ..., x^(M-1).

    Only meaningful at precision 1; returns an MxM list of ints used for
    restriction of scalars from F_q to F_p.
    """
    spec = c.spec
    M = spec.M
    cols = []
    for i in range(M):
        basis = spec.element([0] * i + [1], 1)
        cols.append((c * basis).coeffs)
    return [[cols[j][i] for j in range(M)] for i in range(M)]
