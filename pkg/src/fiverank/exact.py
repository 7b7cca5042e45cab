"""Exact arithmetic substrate: rationals, polynomials, rational functions,
residue classes, and the modular toolkit used by the rest of the package.

Rationals are ``fractions.Fraction`` (always in lowest terms, positive
denominator), re-exported here as ``Rational``.  Polynomials store their
coefficients lowest degree first; the zero polynomial has an empty
coefficient tuple.  Coefficients may be ``Fraction`` or any field-like
object with the usual operators (``RatFunc`` instances are used as
coefficients when working over Q(u)).
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from dataclasses import dataclass

from .errors import (
    BadReductionError,
    FactorizationIncompleteError,
    NoSolutionError,
    PoleError,
)

Rational = Fraction

INF = math.inf


def rational_to_string(q: Fraction) -> str:
    """Serialize as "num/den" ("num" when the denominator is 1)."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rational_from_string(s: str) -> Fraction:
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


# ---------------------------------------------------------------------------
# primality / factoring helpers (trial division only, per the module scope)
# ---------------------------------------------------------------------------

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Miller-Rabin with these bases is deterministic below 3.317e24.
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin primality test.

    Deterministic for n < 3.317e24; above that, 64 fixed extra bases are
    used, which is overwhelming for the sizes this package ever meets.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    bases = list(_SMALL_PRIMES)
    if n >= _MR_DETERMINISTIC_LIMIT:
        rng = random.Random(0xF1BE5)
        bases += [rng.randrange(2, n - 1) for _ in range(64)]
    for a in bases:
        a %= n
        if a in (0, 1, n - 1):
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def trial_factor(n: int, bound: int) -> tuple[dict[int, int], int]:
    """Factor |n| by trial division up to ``bound``.

    Returns (factors, cofactor) where cofactor collects whatever is left;
    a cofactor of 1 means the factorization is complete.  A prime cofactor
    (Miller-Rabin) is folded into the factor dict.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    p = 5
    step = 2
    while p <= bound and p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step
    if n > 1:
        if n <= bound * bound or is_probable_prime(n):
            # any remaining n <= bound^2 with no divisor <= bound is prime
            factors[n] = factors.get(n, 0) + 1
            n = 1
    return factors, n


def factor_completely(n: int, bound: int) -> dict[int, int]:
    factors, cofactor = trial_factor(n, bound)
    if cofactor != 1:
        raise FactorizationIncompleteError(
            f"unfactored cofactor {cofactor} beyond trial bound {bound}")
    return factors


def is_square(q) -> bool:
    """True when the rational (or integer) q is a perfect square."""
    q = Fraction(q)
    if q < 0:
        return False
    return (math.isqrt(q.numerator) ** 2 == q.numerator
            and math.isqrt(q.denominator) ** 2 == q.denominator)


def rational_sqrt(q) -> Fraction:
    q = Fraction(q)
    if not is_square(q):
        raise ValueError(f"{q} is not a rational square")
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


def integer_nth_root(n: int, e: int) -> int:
    """Floor of the e-th root of a nonnegative integer (Newton on big ints)."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2 or e == 1:
        return n
    r = 1 << ((n.bit_length() + e - 1) // e)
    while True:
        nr = ((e - 1) * r + n // r ** (e - 1)) // e
        if nr >= r:
            break
        r = nr
    while r ** e > n:
        r -= 1
    while (r + 1) ** e <= n:
        r += 1
    return r


def squarefree_part(n: int, trial_bound: int = 10**6) -> tuple[int, bool]:
    """Squarefree kernel of n by trial division.

    Returns (s, complete).  When complete, s is squarefree, sign(s) =
    sign(n) and n/s is a perfect square.  Otherwise s is the best-effort
    kernel (all square factors detectable below the bound removed) and the
    flag reports the failure honestly.
    """
    if n == 0:
        raise ValueError("squarefree_part(0) is undefined")
    sign = -1 if n < 0 else 1
    factors, cofactor = trial_factor(n, trial_bound)
    s = sign
    for p, e in factors.items():
        if e % 2:
            s *= p
    if cofactor == 1:
        return s, True
    # The cofactor's prime factors all exceed the bound; a perfect power is
    # still recognizable without factoring it.
    for e in range(2, cofactor.bit_length() + 1):
        root = integer_nth_root(cofactor, e)
        if root ** e == cofactor:
            if e % 2 == 0:
                return s, True
            sub, complete = squarefree_part(root, trial_bound)
            return s * sub, complete
    return s * cofactor, False


def valuation(r, p: int):
    """p-adic valuation of a rational; +inf for zero.

    Raises ValueError when p is not prime.
    """
    if p < 2 or not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    r = Fraction(r)
    if r == 0:
        return INF

    def _ival(n: int) -> int:
        v = 0
        while n % p == 0:
            n //= p
            v += 1
        return v

    return _ival(abs(r.numerator)) - _ival(r.denominator)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol requires odd positive n")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def rational_mod(q, m: int) -> int:
    """Residue of a rational mod m; requires the denominator invertible."""
    q = Fraction(q)
    if math.gcd(q.denominator, m) != 1:
        raise BadReductionError(f"denominator of {q} not invertible mod {m}")
    return q.numerator * pow(q.denominator, -1, m) % m


# ---------------------------------------------------------------------------
# residue classes and CRT
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResidueClass:
    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        if not 0 <= self.residue < self.modulus:
            object.__setattr__(self, "residue", self.residue % self.modulus)

    def contains(self, n: int) -> bool:
        return n % self.modulus == self.residue

    def __str__(self):
        return f"{self.residue} mod {self.modulus}"


def crt(constraints) -> ResidueClass:
    """Merge congruence constraints into a single residue class.

    Coprime moduli always merge; non-coprime moduli merge when consistent
    and raise NoSolutionError otherwise.
    """
    constraints = list(constraints)
    if not constraints:
        raise ValueError("need at least one constraint")
    r, m = constraints[0].residue, constraints[0].modulus
    for cls in constraints[1:]:
        r2, m2 = cls.residue, cls.modulus
        g = math.gcd(m, m2)
        if (r - r2) % g != 0:
            raise NoSolutionError(f"{r} mod {m} and {r2} mod {m2} are incompatible")
        lcm = m // g * m2
        step = (r2 - r) // g * pow(m // g, -1, m2 // g) % (m2 // g)
        r = (r + m * step) % lcm
        m = lcm
    return ResidueClass(r, m)


# ---------------------------------------------------------------------------
# polynomials over a field
# ---------------------------------------------------------------------------

def _coerce(c):
    return Fraction(c) if isinstance(c, int) else c


class Poly:
    """Univariate polynomial; coefficients lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        cs = [_coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.c = tuple(cs)

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, value):
        return cls((value,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots):
        out = cls.const(1)
        for r in roots:
            out = out * cls((-_coerce(r), 1))
        return out

    # -- structure ---------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else Fraction(0)

    def leading(self):
        if not self.c:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.c[-1]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c == Poly((other,)).c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        if not self.c:
            return "Poly(0)"
        terms = [f"{c}*X^{i}" for i, c in enumerate(self.c) if c]
        return "Poly(" + " + ".join(terms) + ")"

    # -- arithmetic ---------------------------------------------------------
    def __neg__(self):
        return Poly([-a for a in self.c])

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        n = max(len(self.c), len(other.c))
        return Poly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else Poly((-_coerce(other),)))

    def __rsub__(self, other):
        return Poly((other,)) - self

    def __mul__(self, other):
        if isinstance(other, Poly):
            if not self.c or not other.c:
                return Poly()
            out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
            for i, a in enumerate(self.c):
                if not a:
                    continue
                for j, b in enumerate(other.c):
                    out[i + j] = out[i + j] + a * b
            return Poly(out)
        return Poly([a * _coerce(other) for a in self.c])

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        scalar = _coerce(scalar)
        return Poly([a / scalar for a in self.c])

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.c[0] * 0 + 1 if self.c else 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        if not isinstance(other, Poly) or other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq = other.degree
        lead = other.c[-1]
        if len(rem) <= dq:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        for i in range(len(rem) - dq - 1, -1, -1):
            f = rem[i + dq] / lead
            if f:
                quot[i] = f
                for j, b in enumerate(other.c):
                    rem[i + j] = rem[i + j] - f * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other) -> bool:
        return (other % self).is_zero()

    # -- calculus / helpers --------------------------------------------------
    def derivative(self):
        return Poly([i * a for i, a in enumerate(self.c)][1:])

    def monic(self):
        if self.is_zero():
            return self
        return self / self.c[-1]

    def __call__(self, x):
        """Evaluate by Horner; x may live in any commutative ring extension."""
        if not self.c:
            return x * 0
        acc = self.c[-1] + x * 0
        for a in reversed(self.c[:-1]):
            acc = acc * x + a
        return acc

    def gcd(self, other):
        a, b = self, other
        if a.is_zero():
            return b.monic() if not b.is_zero() else b
        if b.is_zero():
            return a.monic()
        if (all(isinstance(c, Fraction) for c in a.c)
                and all(isinstance(c, Fraction) for c in b.c)):
            return _gcd_primitive_prs(a, b)
        while not b.is_zero():
            a, b = b, (a % b)
            if not b.is_zero():
                b = b.monic()      # tame coefficient growth over towers
        return a.monic()

    def resultant(self, other):
        """Resultant via the Euclidean remainder sequence (field coefficients)."""
        a, b = self, other
        if a.is_zero() or b.is_zero():
            return Fraction(0)
        sign = 1
        acc = Fraction(1) + a.c[0] * 0
        while True:
            if b.degree == 0:
                return acc * sign * b.c[0] ** a.degree
            r = a % b
            if r.is_zero():
                return acc * 0
            if (a.degree * b.degree) % 2:
                sign = -sign
            acc = acc * b.leading() ** (a.degree - r.degree)
            a, b = b, r

    def discriminant(self):
        n = self.degree
        if n < 1:
            raise ValueError("discriminant needs degree >= 1")
        res = self.resultant(self.derivative())
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        return sign * res / self.leading()

    def clear_denominators(self) -> tuple[list[int], int]:
        """Return (integer coefficient list lowest-first, common denominator)."""
        den = 1
        for a in self.c:
            den = den * a.denominator // math.gcd(den, a.denominator)
        return [int(a * den) for a in self.c], den

    def primitive_integer(self) -> list[int]:
        """Integer coefficients with content removed, positive leading."""
        ints, _ = self.clear_denominators()
        g = 0
        for a in ints:
            g = math.gcd(g, abs(a))
        if g:
            ints = [a // g for a in ints]
        if ints and ints[-1] < 0:
            ints = [-a for a in ints]
        return ints

    def to_json(self):
        return [rational_to_string(a) for a in self.c]

    @classmethod
    def from_json(cls, data):
        return cls([rational_from_string(s) for s in data])


def _int_pseudo_rem(A: list[int], B: list[int]) -> list[int]:
    """Pseudo-remainder of integer coefficient lists (B nonzero)."""
    A = list(A)
    lb = B[-1]
    db = len(B) - 1
    while len(A) - 1 >= db:
        da = len(A) - 1
        la = A[-1]
        A = [c * lb for c in A]
        for j, bj in enumerate(B):
            A[j + da - db] -= la * bj
        while A and A[-1] == 0:
            A.pop()
        if not A:
            return []
    return A


def _gcd_primitive_prs(a: "Poly", b: "Poly") -> "Poly":
    """Polynomial gcd over Q via the primitive pseudo-remainder sequence."""
    A = a.primitive_integer()
    B = b.primitive_integer()
    if len(A) < len(B):
        A, B = B, A
    while len(B) > 1:
        R = _int_pseudo_rem(A, B)
        if not R:
            return Poly(B).monic()
        g = 0
        for c in R:
            g = math.gcd(g, abs(c))
        A, B = B, [c // g for c in R]
    return Poly.const(Fraction(1))


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RatFunc:
    """Quotient of two polynomials, kept with gcd 1 and monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = Poly((num,))
        if den is None:
            den = Poly((1,))
        elif isinstance(den, (int, Fraction)):
            den = Poly((den,))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly((1,))
            return
        if den.degree > 0 and num.degree > 0:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
        lead = den.leading()
        if lead != 1:
            num, den = num / lead, den / lead
        self.num, self.den = num, den

    # -- structure -----------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def as_constant(self):
        if not self.is_constant():
            raise ValueError(f"{self!r} is not constant")
        return self.num[0] / self.den[0] if self.num.c else Fraction(0)

    def __eq__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_ratfunc(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(self.den, self.num) ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    # -- analysis ----------------------------------------------------------------
    def derivative(self):
        return RatFunc(self.num.derivative() * self.den - self.num * self.den.derivative(),
                       self.den * self.den)

    def __call__(self, z):
        dz = self.den(z)
        if isinstance(dz, (int, Fraction)) and dz == 0:
            raise PoleError(f"evaluation at pole z={z}")
        return self.num(z) / dz

    def is_pole(self, z) -> bool:
        return self.den(z) == 0

    def degree_pair(self) -> tuple[int, int]:
        return self.num.degree, self.den.degree

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def _as_ratfunc(value):
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, (int, Fraction, Poly)):
        return RatFunc(value if isinstance(value, Poly) else Poly((value,)))
    return NotImplemented


def ratfunc_substitute(f: Poly, s: RatFunc) -> RatFunc:
    """Compose f(s(z)) as a normalized rational function."""
    return _as_ratfunc(f(s))


# ---------------------------------------------------------------------------
# polynomials over F_p (plain int lists, lowest degree first)
# ---------------------------------------------------------------------------

def pm_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def pm_from_poly(f: Poly, p: int) -> list[int]:
    """Reduce a rational-coefficient polynomial mod p (degree may drop).

    Raises BadReductionError when p divides a coefficient denominator.
    """
    out = []
    for a in f.c:
        a = Fraction(a)
        if a.denominator % p == 0:
            raise BadReductionError(f"coefficient denominator divisible by {p}")
        out.append(a.numerator * pow(a.denominator, -1, p) % p)
    return pm_trim(out)


def pm_add(f, g, p):
    n = max(len(f), len(g))
    return pm_trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p
                    for i in range(n)])


def pm_sub(f, g, p):
    n = max(len(f), len(g))
    return pm_trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p
                    for i in range(n)])


def pm_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return pm_trim(out)


def pm_divmod(f, g, p):
    if not g:
        raise ZeroDivisionError("mod-p polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    if len(f) <= dg:
        return [], pm_trim(f)
    q = [0] * (len(f) - dg)
    for i in range(len(f) - dg - 1, -1, -1):
        c = f[i + dg] * inv % p
        if c:
            q[i] = c
            for j, b in enumerate(g):
                f[i + j] = (f[i + j] - c * b) % p
    return pm_trim(q), pm_trim(f[:dg])


def pm_mod(f, g, p):
    return pm_divmod(f, g, p)[1]


def pm_gcd(f, g, p):
    a, b = list(f), list(g)
    while b:
        a, b = b, pm_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def pm_pow_mod(base, e: int, mod, p):
    result = [1]
    base = pm_mod(base, mod, p)
    while e:
        if e & 1:
            result = pm_mod(pm_mul(result, base, p), mod, p)
        base = pm_mod(pm_mul(base, base, p), mod, p)
        e >>= 1
    return result


def pm_derivative(f, p):
    return pm_trim([i * a % p for i, a in enumerate(f)][1:])


def pm_monic(f, p):
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return [a * inv % p for a in f]


def _pm_pth_root(f, p):
    # f = g(X^p) over F_p; return g (Frobenius fixes prime-field coefficients)
    return [f[i] for i in range(0, len(f), p)]


def pm_squarefree_decomposition(f, p):
    """Return a list of (multiplicity, squarefree factor product)."""
    out = []
    f = pm_monic(f, p)

    def recurse(g, mult):
        if len(g) <= 1:
            return
        d = pm_derivative(g, p)
        if not d:
            recurse(_pm_pth_root(g, p), mult * p)
            return
        c = pm_gcd(g, d, p)
        w = pm_divmod(g, c, p)[0]
        # w = product of squarefree factors with multiplicity not divisible by p
        i = 1
        while len(w) > 1:
            y = pm_gcd(w, c, p)
            z = pm_divmod(w, y, p)[0]
            if len(z) > 1:
                out.append((mult * i, z))
            c = pm_divmod(c, y, p)[0]
            w = y
            i += 1
        if len(c) > 1:
            recurse(_pm_pth_root(c, p), mult * p)

    recurse(f, 1)
    return out


def pm_distinct_degree(f, p):
    """Distinct-degree split of a squarefree monic f: list of (d, product)."""
    out = []
    h = [0, 1]  # X
    g = list(f)
    d = 0
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        h = pm_pow_mod(h, p, g, p)
        gd = pm_gcd(pm_sub(h, [0, 1], p), g, p)
        if len(gd) > 1:
            out.append((d, gd))
            g = pm_divmod(g, gd, p)[0]
            h = pm_mod(h, g, p)
    if len(g) > 1:
        out.append((len(g) - 1, g))
    return out


def pm_equal_degree_split(f, d, p, rng) -> list[list[int]]:
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles (p odd)."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = pm_trim(a)
        if len(a) <= 1:
            continue
        g = pm_gcd(a, f, p)
        if 1 < len(g) < len(f):
            pass
        else:
            b = pm_pow_mod(a, (p ** d - 1) // 2, f, p)
            g = pm_gcd(pm_sub(b, [1], p), f, p)
            if not (1 < len(g) < len(f)):
                continue
        rest = pm_divmod(f, g, p)[0]
        return pm_equal_degree_split(g, d, p, rng) + pm_equal_degree_split(rest, d, p, rng)


def pm_factor(f, p, seed: int = 1) -> list[tuple[list[int], int]]:
    """Full factorization mod p: list of (monic irreducible, multiplicity)."""
    rng = random.Random((seed, p, tuple(f)).__hash__() & 0x7FFFFFFF)
    out = []
    for mult, g in pm_squarefree_decomposition(f, p):
        for d, prod in pm_distinct_degree(g, p):
            for irr in pm_equal_degree_split(prod, d, p, rng):
                out.append((pm_monic(irr, p), mult))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def pm_resultant(f, g, p) -> int:
    a, b = list(f), list(g)
    if not a or not b:
        return 0
    acc = 1
    sign = 1
    while True:
        if len(b) == 1:
            return acc * sign * pow(b[0], len(a) - 1, p) % p
        r = pm_mod(a, b, p)
        if not r:
            return 0
        if ((len(a) - 1) * (len(b) - 1)) % 2:
            sign = -sign
        acc = acc * pow(b[-1], (len(a) - 1) - (len(r) - 1), p) % p
        a, b = b, r


def splitting_profile(f: Poly, p: int) -> list[int]:
    """Degrees of the irreducible factors of f mod p, sorted.

    Distinct-degree factorization only; repeated factors are resolved
    through the squarefree decomposition, so the degrees always sum to
    deg f.  Requires p an odd prime not dividing the leading coefficient
    or any coefficient denominator.
    """
    if p == 2 or not is_probable_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if f.is_zero():
        raise ValueError("zero polynomial has no profile")
    if Fraction(f.leading()).numerator % p == 0:
        raise BadReductionError(f"leading coefficient vanishes mod {p}")
    fm = pm_from_poly(f, p)
    profile = []
    for mult, g in pm_squarefree_decomposition(fm, p):
        for d, prod in pm_distinct_degree(g, p):
            profile.extend([d] * (((len(prod) - 1) // d) * mult))
    return sorted(profile)


# ---------------------------------------------------------------------------
# exact linear algebra (used for rational-function interpolation)
# ---------------------------------------------------------------------------

def nullspace_vector(rows: list[list[Fraction]]) -> list[Fraction] | None:
    """One nonzero rational kernel vector of the matrix, or None."""
    if not rows:
        return None
    ncols = len(rows[0])
    mat = [list(map(Fraction, row)) for row in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][col]
        mat[r] = [v / inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    sol = [Fraction(0)] * ncols
    sol[free[0]] = Fraction(1)
    for row, col in zip(mat, pivots):
        sol[col] = -row[free[0]]
    return sol
