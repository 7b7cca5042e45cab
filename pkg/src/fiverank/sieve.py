"""Admissible-parameter generation and the Neron extension conditions.

A value of z is admissible when z = 0 mod 11*19*29, z = 1 mod
163*701*1277 and z is not +-86 mod 419.  For each admissible z the three
quotient-curve points must avoid the singular point of the reduction at
every prime where the special fiber has 5-divisible component count.
Two independent formulations run on every candidate:

* the verbatim criterion: per-curve valuation bounds v_p(x) <= -2 and a
  single excluded residue mod one prime, straight from the constants
  table;
* the general rule: for every five-component prime, map the abscissa
  forward to the minimal model and check that it does not reduce onto
  the node (negative valuation reduces to the smooth point at infinity).

Their agreement on every emitted z is asserted by the acceptance suite.
The congruences do not quite force the conditions: a sparse subset of
the class (v_29(z) = 1 with z/29 = 6 or 10 mod 29) suffers 29-adic
cancellation in the numerator of x(z) and reduces onto the node, which
is why every report carries an explicit pass flag instead of assuming
success.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .curves import (
    ReductionInfo,
    Transform,
    WeierstrassCurve,
    bad_primes,
    minimal_model,
    reduction_info,
)
from .errors import NoSingularPointError
from .exact import ResidueClass, crt, rational_mod, valuation
from .family import CONSTANTS, CubicModel, Specialization, specialize


# ---------------------------------------------------------------------------
# admissible z stream
# ---------------------------------------------------------------------------

def _congruence_class() -> ResidueClass:
    m1 = math.prod(CONSTANTS["z_zero_mod"])
    m2 = math.prod(CONSTANTS["z_one_mod"])
    return crt([ResidueClass(0, m1), ResidueClass(1, m2)])


def _excluded_mod_419(z: int) -> bool:
    p, a = CONSTANTS["z_exclusion"]
    return z % p in (a % p, -a % p)


def admissible_z(start: int = 0, count: int | None = None, sign: str = "both"):
    """Admissible z in increasing |z|, starting at |z| >= start.

    sign is "pos", "neg" or "both"; both signs interleave by absolute
    value.  A count of None streams forever.
    """
    if sign not in ("pos", "neg", "both"):
        raise ValueError(f"bad sign {sign!r}")
    cls = _congruence_class()
    M = cls.modulus
    z0 = cls.residue            # in (0, M); z0 != 0 since z = 1 mod m2

    def positives():
        z = z0
        while True:
            yield z
            z += M

    def negatives():
        z = z0 - M
        while True:
            yield z
            z -= M

    if sign == "pos":
        stream = positives()
    elif sign == "neg":
        stream = negatives()
    else:
        def interleave():
            pos, neg = positives(), negatives()
            p, n = next(pos), next(neg)
            while True:
                if abs(p) <= abs(n):
                    yield p
                    p = next(pos)
                else:
                    yield n
                    n = next(neg)
        stream = interleave()

    emitted = 0
    for z in stream:
        if abs(z) < start or _excluded_mod_419(z):
            continue
        yield z
        emitted += 1
        if count is not None and emitted >= count:
            return


# ---------------------------------------------------------------------------
# per-curve reduction data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurveReductionData:
    """Everything needed to test the extension conditions on one curve."""

    index: int                       # 1-based curve index
    model: CubicModel                # y^2 = g(x) coordinates (the criterion's x)
    minimal: WeierstrassCurve
    to_minimal: Transform            # from the long form of `model`
    five_primes: tuple[int, ...]     # primes with 5 | component count
    reductions: dict[int, ReductionInfo]
    valuation_primes: tuple[int, ...] = ()   # verbatim criterion, when stated
    congruence_prime: int | None = None
    excluded_residue: int | None = None

    def x_minimal(self, x_g: Fraction) -> Fraction:
        return self.to_minimal.new_x(self.model.to_long_x(x_g))


def reduction_data_for_model(model: CubicModel, index: int = 0,
                             criterion=None) -> CurveReductionData:
    """Minimal model, five-component primes and node data for one model."""
    F = model.curve()
    Fmin, trans = minimal_model(F)
    reds = {p: reduction_info(Fmin, p) for p in bad_primes(Fmin)}
    five = tuple(sorted(p for p, info in reds.items()
                        if info.component_count % 5 == 0))
    val_primes, cong_p, cong_res = (), None, None
    if criterion is not None:
        val_primes, (cong_p, cong_res) = criterion
    return CurveReductionData(
        index=index, model=model, minimal=Fmin, to_minimal=trans,
        five_primes=five, reductions=reds,
        valuation_primes=val_primes, congruence_prime=cong_p,
        excluded_residue=cong_res)


@lru_cache(maxsize=None)
def sieve_data() -> tuple[CurveReductionData, ...]:
    sp = specialize()
    return tuple(
        reduction_data_for_model(model, i, CONSTANTS["criterion"][i - 1])
        for i, model in enumerate(sp.F_models, 1))


def singular_abscissa(data: CurveReductionData, p: int) -> int:
    """Node abscissa mod p in the y^2 = g(x) coordinates of the criterion.

    Maps the minimal-model node back through the coordinate change;
    raises NoSingularPointError at good primes and BadReductionError when
    the back-mapped value is not p-integral.
    """
    info = data.reductions.get(p)
    if info is None or info.singular_x is None:
        raise NoSingularPointError(f"curve {data.index} has good reduction at {p}")
    x_long = data.to_minimal.old_x(Fraction(info.singular_x))
    return rational_mod(data.model.from_long_x(x_long), p)


# ---------------------------------------------------------------------------
# extension conditions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionRecord:
    curve: int
    kind: str          # "valuation" | "congruence" | "singular-avoidance"
    prime: int
    required: str
    observed: str
    passed: bool

    def to_json(self):
        return {
            "curve": self.curve,
            "kind": self.kind,
            "prime": str(self.prime),
            "required": self.required,
            "observed": self.observed,
            "pass": self.passed,
        }


def _congruent_to_residue(x: Fraction, residue: int, p: int) -> bool:
    """x = residue mod p, treating negative valuation as 'not congruent'."""
    if valuation(x, p) < 0:
        return False
    return rational_mod(x, p) == residue % p


def extension_check(data: CurveReductionData, x: Fraction) -> list[ConditionRecord]:
    """The verbatim per-curve criterion plus the general singular-point rule."""
    records = []
    for p in data.valuation_primes:
        v = valuation(x, p)
        records.append(ConditionRecord(
            data.index, "valuation", p, "v <= -2", f"v = {v}", v <= -2))
    if data.congruence_prime is not None:
        p = data.congruence_prime
        hit = _congruent_to_residue(x, data.excluded_residue, p)
        records.append(ConditionRecord(
            data.index, "congruence", p,
            f"x != {data.excluded_residue} mod {p}",
            "congruent" if hit else "not congruent", not hit))
    for p in data.five_primes:
        records.append(_singular_avoidance_record(data, x, p))
    return records


def singular_avoidance_passes(data: CurveReductionData, x: Fraction) -> bool:
    """The general rule alone: no five-component prime sees the node."""
    return all(_singular_avoidance_record(data, x, p).passed
               for p in data.five_primes)


def _singular_avoidance_record(data: CurveReductionData, x: Fraction,
                               p: int) -> ConditionRecord:
    """Reduction of the point on the minimal model misses the node."""
    info = data.reductions[p]
    x_min = data.x_minimal(x)
    v = valuation(x_min, p)
    if v < 0:
        return ConditionRecord(data.index, "singular-avoidance", p,
                               "reduction != node", "reduces to infinity", True)
    res = rational_mod(x_min, p)
    hit = res == info.singular_x
    return ConditionRecord(data.index, "singular-avoidance", p,
                           "reduction != node",
                           "node" if hit else f"x = {res} mod {p}", not hit)


@dataclass(frozen=True)
class SieveReport:
    z: int
    radicand_sign: int
    records: tuple[ConditionRecord, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def verbatim_passed(self) -> bool:
        return all(r.passed for r in self.records
                   if r.kind in ("valuation", "congruence"))

    def general_rule_passed(self) -> bool:
        return all(r.passed for r in self.records
                   if r.kind == "singular-avoidance")

    def to_json(self):
        return {
            "record": "sieve-report",
            "schema": 1,
            "z": str(self.z),
            "radicand_sign": self.radicand_sign,
            "pass": self.passed,
            "conditions": [r.to_json() for r in self.records],
        }


def check_z(z: int, sp: Specialization | None = None) -> SieveReport:
    """Evaluate every extension condition for one z."""
    sp = sp or specialize()
    x = sp.x_of_z(Fraction(z))
    r = sp.radicand(z)
    records = []
    for data in sieve_data():
        records.extend(extension_check(data, x))
    return SieveReport(z, 1 if r > 0 else (-1 if r < 0 else 0), tuple(records))
