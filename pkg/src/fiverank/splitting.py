"""Frobenius data for the three degree-5 extensions and the certificates.

For an admissible z, each test prime l in {163, 701, 1277} splits in
K = Q(sqrt(radicand)) as two conjugate primes.  Their behavior in the
degree-5 extension L_j = K(preimage abscissas of the j-th quotient
point) is read off from the factorization profile of the rational
preimage quintic mod l: all-linear means split, irreducible means inert.
The two primes above l share one verdict because their Frobenius
elements are conjugate in the Galois closure and conjugation preserves
order in the cyclic quotient; no arithmetic over K itself is ever
needed.  The certificate asserts the class-group consequence only when
the sieve conditions, the full splitting pattern and the independence
test all hold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    BadReductionError,
    FiverankError,
    InvalidCertificateError,
    ProtocolViolationError,
    RamifiedPrimeError,
)
from .exact import (
    Poly,
    is_probable_prime,
    jacobi,
    pm_derivative,
    pm_gcd,
    rational_to_string,
    splitting_profile,
)
from .family import CONSTANTS, Specialization, specialize
from .isogeny import preimage_quintic
from .sieve import SieveReport, check_z

SPLIT = "split"
INERT = "inert"
RAMIFIED = "ramified"


def prime_split_in_K(l: int, radicand: Fraction) -> str:
    """Behavior of l in Q(sqrt(radicand)): split, inert or ramified."""
    if l == 2 or not is_probable_prime(l):
        raise ValueError("only odd primes are supported")
    radicand = Fraction(radicand)
    if radicand == 0:
        raise ValueError("zero radicand")
    m = radicand.numerator * radicand.denominator
    while m % (l * l) == 0:
        m //= l * l
    if m % l == 0:
        return RAMIFIED
    return SPLIT if jacobi(m, l) == 1 else INERT


def frobenius_order_in_L(quintic: Poly, l: int) -> str:
    """Split/inert verdict for a prime (split in K) in the quintic field.

    Requires l unramified: l must not divide the discriminant or leading
    coefficient of the integer form of the quintic.  Any profile other
    than five linears or one quintic contradicts a cyclic degree-5
    Galois action and raises ProtocolViolationError.
    """
    ints = quintic.primitive_integer()
    if ints[-1] % l == 0:
        raise RamifiedPrimeError(f"leading coefficient vanishes mod {l}")
    fm = [c % l for c in ints]
    if len(pm_gcd(fm, pm_derivative(fm, l), l)) != 1:
        raise RamifiedPrimeError(f"{l} divides the quintic discriminant")
    try:
        profile = splitting_profile(quintic, l)
    except BadReductionError as exc:
        raise RamifiedPrimeError(str(exc)) from exc
    if profile == [1, 1, 1, 1, 1]:
        return SPLIT
    if profile == [5]:
        return INERT
    raise ProtocolViolationError(
        f"profile {profile} mod {l} is impossible for a cyclic quintic")


@dataclass(frozen=True)
class SplittingPattern:
    """3x3 matrix entry(i, j) = behavior of l_i in L_j, plus K-verdicts."""

    primes: tuple[int, int, int]
    entries: tuple[tuple[str, str, str], ...]    # entries[i][j]
    k_verdicts: tuple[str, str, str]

    def entry(self, i: int, j: int) -> str:
        return self.entries[i - 1][j - 1]

    def validate(self) -> None:
        if any(v != SPLIT for v in self.k_verdicts):
            raise InvalidCertificateError(
                f"not all primes split in K: {self.k_verdicts}")
        for j in range(3):
            if not any(self.entries[i][j] == INERT for i in range(3)):
                raise InvalidCertificateError(
                    f"no inert prime for extension {j + 1}")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except InvalidCertificateError:
            return False
        return True

    def to_json(self):
        return {
            "primes": [str(p) for p in self.primes],
            "k_split": list(self.k_verdicts),
            "matrix": [list(row) for row in self.entries],
        }


def independence_certificate(pattern: SplittingPattern) -> bool:
    """Whether the pattern forces three independent order-5 characters.

    For each extension j there must be a prime inert in L_j and split in
    both others: evaluating a vanishing linear combination of the three
    characters at the Frobenius of that prime kills the j-th coefficient.
    """
    pattern.validate()
    for j in range(3):
        witness = False
        for i in range(3):
            if (pattern.entries[i][j] == INERT
                    and all(pattern.entries[i][k] == SPLIT
                            for k in range(3) if k != j)):
                witness = True
                break
        if not witness:
            return False
    return True


# the pattern items (ii)-(iv) of the construction assert for admissible z
EXPECTED_PATTERN = (
    (SPLIT, INERT, SPLIT),
    (SPLIT, SPLIT, INERT),
    (INERT, SPLIT, SPLIT),
)


@dataclass(frozen=True)
class FieldCertificate:
    z: int
    radicand: Fraction
    sign: int
    sieve_report: SieveReport
    pattern: SplittingPattern | None
    independence: bool
    conclusion: bool                     # 5-rank of Cl(K) >= 3 certified
    failures: tuple[str, ...] = field(default=())

    def to_json(self):
        return {
            "record": "field-certificate",
            "schema": 1,
            "z": str(self.z),
            "radicand": rational_to_string(self.radicand),
            "sign": self.sign,
            "sieve": self.sieve_report.to_json(),
            "pattern": None if self.pattern is None else self.pattern.to_json(),
            "independence": self.independence,
            "conclusion": self.conclusion,
            "failures": list(self.failures),
        }


def splitting_pattern(z: int, sp: Specialization | None = None) -> SplittingPattern:
    """Compute the full 3x3 pattern for one z."""
    from .errors import FieldCollapseError
    from .exact import is_square

    sp = sp or specialize()
    primes = CONSTANTS["z_one_mod"]
    r = sp.radicand(z)
    if is_square(r):
        raise FieldCollapseError(f"radicand at z={z} is a rational square")
    k_verdicts = tuple(prime_split_in_K(l, r) for l in primes)
    x = sp.x_of_z(Fraction(z))
    quintics = []
    for model, phi in zip(sp.F_models, sp.isogenies):
        quintics.append(preimage_quintic(phi, model.to_long_x(x)))
    entries = tuple(
        tuple(frobenius_order_in_L(quintics[j], l) for j in range(3))
        for l in primes)
    return SplittingPattern(primes, entries, k_verdicts)


def verify_instance(z: int, sp: Specialization | None = None) -> FieldCertificate:
    """Assemble the complete certificate for one z.

    All sub-errors are folded into a failed certificate with reasons;
    the conclusion flag is set only when everything holds.
    """
    sp = sp or specialize()
    failures = []
    report = check_z(z, sp)
    r = sp.radicand(z)
    if not report.passed:
        failures.append("sieve conditions failed")
    pattern = None
    independence = False
    try:
        pattern = splitting_pattern(z, sp)
        pattern.validate()
        independence = independence_certificate(pattern)
        if not independence:
            failures.append("splitting pattern does not force independence")
    except FiverankError as exc:
        failures.append(f"{type(exc).__name__}: {exc}")
    conclusion = not failures
    return FieldCertificate(
        z=z, radicand=r, sign=report.radicand_sign, sieve_report=report,
        pattern=pattern, independence=independence,
        conclusion=conclusion, failures=tuple(failures))


def fields_distinct(r1: Fraction, r2: Fraction) -> bool:
    """Whether two radicands define distinct quadratic fields."""
    from .exact import is_square
    prod = Fraction(r1) * Fraction(r2)
    return not is_square(prod)
