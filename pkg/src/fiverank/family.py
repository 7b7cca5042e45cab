"""The X_1(10) curve family, its degree-5 quotients, and the fixed
specialization that drives the whole construction.

Every literal constant of the construction lives in the CONSTANTS table
below; all identities the package relies on are replayed from that table
by `Specialization.verify_identities`, so a transcription error anywhere
fails the suite.

The order-10 point of the family is handled with care: the abscissa one
might copy for it from the classical parametrization literature turns
out to be a root of the linear factor of the cubic, i.e. a 2-torsion
abscissa.  Nothing here depends on that value: the kernel of the
canonical 5-isogeny is recovered from the 5-division polynomial, and the
correct order-10 abscissa is re-derived symbolically (sampled and
interpolated, then verified over the function field) by
`symbolic_order10_abscissa`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .curves import WeierstrassCurve, CurvePoint, point_add
from .errors import (
    DegenerateParameterError,
    FieldCollapseError,
    PoleError,
)
from .exact import Poly, RatFunc, is_square, rational_sqrt
from .isogeny import (
    IsogenyMap,
    duplication_map,
    five_division_kernel,
    five_division_polynomial,
    interpolate_ratfunc,
    rational_roots,
    velu_onto_model,
)

# All integer data of the construction, in one place.
CONSTANTS = {
    "t": Fraction(4),
    # x(z) = (c4 z^4 + ... + c0) / (scale * (a1 z + b1)(a2 z + b2) z)
    "x_num": (343898806423252015354080,
              -411804539876837130626339,
              -642297925780193483509181,
              826467660375890872281118,
              1385160622615364964251520),
    "x_den_scale": 5167944494559,
    "x_den_linear1": (4883562662, 922989409),
    "x_den_linear2": (11, -29),
    # v(z) = (29/19) (A z^2 + C) / (A z^2 + Bv z - C),
    # w(z) = (11/19) (A z^2 + C) / (A z^2 + Bw z - C)
    "vw_quad": 53719189282,
    "vw_const": 26766692861,
    "v_mid": -283246634396,
    "w_mid": 20305766998,
    "v_prefactor": (29, 19),
    "w_prefactor": (11, 19),
    # hyperelliptic model y^2 = outer * (m1 x + m0) * (q2 x^2 + q0)
    "model_outer": 42,
    "model_linear": (44876601, -133597561),
    "model_quad": (9261, -6061),
    # admissibility congruences for z
    "z_zero_mod": (11, 19, 29),
    "z_exclusion": (419, 86),
    "z_one_mod": (163, 701, 1277),
    # per-curve extension criteria: valuation primes and excluded residue
    "criterion": (
        ((11, 29), (419, 77)),
        ((11, 19), (709, 677)),
        ((19, 29), (151, 36)),
    ),
    # expected Neron five-component primes per curve
    "five_component_primes": ((11, 29, 419), (11, 19, 709), (19, 29, 151)),
}


# ---------------------------------------------------------------------------
# quadratic surds a + b sqrt(r)
# ---------------------------------------------------------------------------

class SurdElement:
    """Element a + b*sqrt(r) of the quadratic field with fixed radicand r.

    The radicand stays unfactored; two surds only combine when their
    radicands are literally equal.  r must be a non-square nonzero
    rational.
    """

    __slots__ = ("a", "b", "r")

    def __init__(self, a, b, r):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.r = Fraction(r)
        if self.r == 0 or is_square(self.r):
            raise ValueError(f"radicand {self.r} does not define a quadratic field")

    def _coerce(self, other):
        if isinstance(other, SurdElement):
            if other.r != self.r:
                raise ValueError("mixed radicands")
            return other
        if isinstance(other, (int, Fraction)):
            return SurdElement(other, 0, self.r)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SurdElement(self.a + o.a, self.b + o.b, self.r)

    __radd__ = __add__

    def __neg__(self):
        return SurdElement(-self.a, -self.b, self.r)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SurdElement(self.a * o.a + self.b * o.b * self.r,
                           self.a * o.b + self.b * o.a, self.r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.a * o.a - o.b * o.b * self.r
        if norm == 0:
            raise ZeroDivisionError("division by zero surd")
        conj = SurdElement(o.a, -o.b, self.r)
        res = self * conj
        return SurdElement(res.a / norm, res.b / norm, self.r)

    def __rtruediv__(self, other):
        return SurdElement(other, 0, self.r) / self

    def __pow__(self, n: int):
        out = SurdElement(1, 0, self.r)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, SurdElement):
            return self.r == other.r and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __bool__(self):
        return bool(self.a or self.b)

    def __hash__(self):
        return hash((self.a, self.b, self.r))

    def is_rational(self) -> bool:
        return self.b == 0

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("surd has a nonzero irrational part")
        return self.a

    def square(self) -> Fraction:
        sq = self * self
        return sq.as_rational() if sq.is_rational() else sq

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.r}))"


# ---------------------------------------------------------------------------
# curve models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CubicModel:
    """A curve presented as y^2 = cubic(x), with its long-form companion.

    The long form substitutes X = c3 x, Y = c3 y where c3 is the leading
    coefficient, giving Y^2 = X^3 + c2 X^2 + c1 c3 X + c0 c3^2.
    """

    poly: Poly

    def __post_init__(self):
        if self.poly.degree != 3:
            raise DegenerateParameterError(f"not a cubic: {self.poly!r}")

    @property
    def lead(self):
        return self.poly[3]

    def curve(self) -> WeierstrassCurve:
        c0, c1, c2, c3 = (self.poly[i] for i in range(4))
        try:
            return WeierstrassCurve(0, c2, 0, c1 * c3, c0 * c3 * c3)
        except ValueError as exc:
            raise DegenerateParameterError(str(exc)) from exc

    def to_long_x(self, x):
        return self.lead * x

    def from_long_x(self, X):
        return X / self.lead

    def to_long_point(self, x, y) -> CurvePoint:
        return CurvePoint(self.lead * x, self.lead * y)

    def rhs(self, x):
        return self.poly(x)

    def to_json(self):
        return {"cubic": self.poly.to_json(), "long": self.curve().to_json()}


def kubert_curve(u) -> CubicModel:
    """The universal curve with a point of order 10, at parameter u.

    y^2 = (x^2 - u(u^2+u-1)) * (8u^2 x + (u^2+1)(u^4-2u^3-6u^2+2u+1)).
    Raises DegenerateParameterError when the model is singular.
    """
    u = Fraction(u) if isinstance(u, int) else u
    A = u * (u * u + u - 1)
    c3 = 8 * u * u
    lin = (u * u + 1) * (u ** 4 - 2 * u ** 3 - 6 * u * u + 2 * u + 1)
    if not c3:
        raise DegenerateParameterError("leading coefficient vanishes at u=0")
    model = CubicModel(Poly([-A * lin, -A * c3, lin, c3]))
    model.curve()           # force the discriminant check
    return model


def quotient_model(u) -> tuple[Poly, Poly]:
    """(g_u, h_u) with g_u(x) = (x^2 - u(u^2+u-1)) h_u(x)."""
    u = Fraction(u) if isinstance(u, int) else u
    A = u * (u * u + u - 1)
    h = Poly([(u * u + 1) * (u ** 4 + 22 * u ** 3 - 6 * u * u - 22 * u + 1),
              8 * (u * u + u - 1) ** 2])
    g = Poly([-A, 0, 1]) * h
    return g, h


def quotient_cubic(u) -> CubicModel:
    g, _ = quotient_model(u)
    model = CubicModel(g)
    model.curve()
    return model


def triple_u(t):
    """The three parameters sharing one value of u(u^2+u-1)."""
    t = Fraction(t) if isinstance(t, int) else t
    den = t * t + t + 1
    return ((t * t + t - 1) / den,
            -(t * t + 3 * t + 1) / den,
            -(t * t - t - 1) / den)


def c_parametrization() -> tuple[RatFunc, RatFunc, RatFunc]:
    """x(z), v(z), w(z) parametrizing the genus-0 curve of the construction."""
    C = CONSTANTS
    z = Poly.x()
    num = Poly(C["x_num"])
    a1, b1 = C["x_den_linear1"]
    a2, b2 = C["x_den_linear2"]
    den = C["x_den_scale"] * Poly([b1, a1]) * Poly([b2, a2]) * z
    x_of_z = RatFunc(num, den)

    A, Cc = C["vw_quad"], C["vw_const"]
    shared = Poly([Cc, 0, A])
    pv, qv = C["v_prefactor"]
    v_of_z = RatFunc(pv * shared, qv * Poly([-Cc, C["v_mid"], A]))
    pw, qw = C["w_prefactor"]
    w_of_z = RatFunc(pw * shared, qw * Poly([-Cc, C["w_mid"], A]))
    return x_of_z, v_of_z, w_of_z


def model_poly() -> Poly:
    """The hyperelliptic right-hand side f with y^2 = f(x(z)) on the family."""
    C = CONSTANTS
    m1, m0 = C["model_linear"]
    q2, q0 = C["model_quad"]
    return C["model_outer"] * Poly([m0, m1]) * Poly([q0, 0, q2])


# ---------------------------------------------------------------------------
# the t = 4 specialization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Specialization:
    """Everything derived from one rational value of t (fixed to 4 here)."""

    t: Fraction
    u: tuple[Fraction, Fraction, Fraction]
    E_models: tuple[CubicModel, CubicModel, CubicModel]
    F_models: tuple[CubicModel, CubicModel, CubicModel]
    isogenies: tuple[IsogenyMap, IsogenyMap, IsogenyMap]
    x_of_z: RatFunc
    v_of_z: RatFunc
    w_of_z: RatFunc
    f_model: Poly
    scale: Fraction              # f_model = scale^2 * g_{u_1}

    # -- per-z data ----------------------------------------------------------
    def radicand(self, z) -> Fraction:
        """f(x(z)); the field of the construction is Q(sqrt(radicand))."""
        z = Fraction(z) if isinstance(z, int) else z
        if self.x_of_z.is_pole(z):
            raise PoleError(f"z={z} is a pole of x(z)")
        return self.f_model(self.x_of_z(z))

    def points_on_quotients(self, z):
        """The three points (x(z), y_i) with y_i^2 = g_{u_i}(x(z)).

        y_1 = sqrt(radicand)/scale and the others divide out v(z), w(z).
        Raises FieldCollapseError when the radicand is a rational square.
        """
        z = Fraction(z) if isinstance(z, int) else z
        r = self.radicand(z)
        if is_square(r):
            raise FieldCollapseError(f"radicand {r} is a square; field collapses")
        x = self.x_of_z(z)
        y1 = SurdElement(0, 1 / self.scale, r)
        y2 = y1 / self.v_of_z(z)
        y3 = y1 / self.w_of_z(z)
        points = ((x, y1), (x, y2), (x, y3))
        for (xi, yi), model in zip(points, self.F_models):
            if yi.square() != model.rhs(xi):
                raise AssertionError("ordinate does not satisfy its quotient model")
        return points

    # -- identity suite --------------------------------------------------------
    def verify_identities(self) -> dict[str, bool]:
        """Replay every constant-bearing identity from the CONSTANTS table."""
        out = {}
        tt = RatFunc(Poly.x())
        u1, u2, u3 = triple_u(tt)

        def common(u):
            return u * (u * u + u - 1)

        out["triple-common-value-over-Q(t)"] = (
            common(u1) == common(u2) and common(u2) == common(u3))
        u_spec = triple_u(self.t)
        out["triple-at-t"] = u_spec == self.u
        out["common-value-at-t"] = (
            common(self.u[0]) == Fraction(6061, 9261)
            and 6061 == 11 * 19 * 29 and 9261 == 21 ** 3)

        gs = [quotient_model(ui) for ui in self.u]
        h1_of_x = _compose(gs[0][1], self.x_of_z)
        h2_of_x = _compose(gs[1][1], self.x_of_z)
        h3_of_x = _compose(gs[2][1], self.x_of_z)
        out["transfer-v"] = h1_of_x == self.v_of_z * self.v_of_z * h2_of_x
        out["transfer-w"] = h1_of_x == self.w_of_z * self.w_of_z * h3_of_x

        g1 = gs[0][0]
        out["model-vs-quotient-square-ratio"] = (
            self.f_model == self.scale ** 2 * g1)

        out["v-at-infinity"] = (
            self.v_of_z.num.leading() / self.v_of_z.den.leading()
            == Fraction(*CONSTANTS["v_prefactor"]))

        poles = [Fraction(0), Fraction(29, 11),
                 Fraction(-922989409, 4883562662)]
        out["x-poles"] = (self.x_of_z.den.degree == 3
                          and all(self.x_of_z.is_pole(p) for p in poles))

        for i, (model, phi) in enumerate(zip(self.F_models, self.isogenies), 1):
            out[f"velu-onto-quotient-{i}"] = (
                phi.codomain == model.curve() and phi.verify_codomain_identity())
        return out


def _compose(f: Poly, s: RatFunc) -> RatFunc:
    return RatFunc(Poly([1])) * f(s)


@lru_cache(maxsize=None)
def specialize(t=None) -> Specialization:
    """Build (and cache) the full specialization at t (default 4)."""
    t = CONSTANTS["t"] if t is None else Fraction(t)
    u = triple_u(t)
    E_models = tuple(kubert_curve(ui) for ui in u)
    F_models = tuple(quotient_cubic(ui) for ui in u)
    isogenies = []
    for Em, Fm in zip(E_models, F_models):
        E = Em.curve()
        kernel = five_division_kernel(E)
        isogenies.append(velu_onto_model(E, kernel, Fm.curve()))
    if t == CONSTANTS["t"]:
        x_of_z, v_of_z, w_of_z = c_parametrization()
        f = model_poly()
        g1, _ = quotient_model(u[0])
        ratio = _exact_poly_ratio(f, g1)
        scale = rational_sqrt(ratio)
    else:
        raise DegenerateParameterError(
            "only the distinguished specialization carries a parametrization")
    return Specialization(t, u, E_models, F_models, tuple(isogenies),
                          x_of_z, v_of_z, w_of_z, f, scale)


def _exact_poly_ratio(f: Poly, g: Poly) -> Fraction:
    q, r = divmod(f, g)
    if not r.is_zero() or q.degree != 0:
        raise ValueError("polynomials are not proportional")
    return q[0]


def radicand(z) -> Fraction:
    """f(x(z)) for the distinguished specialization (module-level shorthand)."""
    return specialize().radicand(z)


def points_on_quotients(z):
    """Quotient points at z for the distinguished specialization."""
    return specialize().points_on_quotients(z)


# ---------------------------------------------------------------------------
# symbolic derivations over the function field Q(u)
# ---------------------------------------------------------------------------

def symbolic_parameter() -> RatFunc:
    return RatFunc(Poly.x())


@lru_cache(maxsize=1)
def symbolic_family_curve() -> WeierstrassCurve:
    """The family curve as a Weierstrass model over Q(u)."""
    return kubert_curve(symbolic_parameter()).curve()


def _kernel_sample_values(count: int):
    samples_A, samples_B = [], []
    u0 = Fraction(2)
    while len(samples_A) < count:
        u0 += 1
        try:
            E = kubert_curve(u0).curve()
            k = five_division_kernel(E)
        except Exception:
            continue
        samples_A.append((u0, k[1]))
        samples_B.append((u0, k[0]))
    return samples_A, samples_B


@lru_cache(maxsize=1)
def symbolic_family_kernel() -> Poly:
    """Kernel quadratic of the canonical 5-isogeny over Q(u).

    Derived by exact interpolation from numeric specializations, then
    verified symbolically: it divides the symbolic 5-division polynomial
    and is stable under the symbolic duplication map.
    """
    sA, sB = _kernel_sample_values(34)
    A = interpolate_ratfunc(sA)
    B = interpolate_ratfunc(sB)
    kernel = Poly([B, A, Fraction(1)])
    E = symbolic_family_curve()
    psi5 = five_division_polynomial(E)
    if not (psi5 % kernel).is_zero():
        raise AssertionError("interpolated kernel does not divide psi_5 over Q(u)")
    dup = duplication_map(E)
    lifted = dup.num * dup.num + dup.num * dup.den * A + dup.den * dup.den * B
    if not (lifted % kernel).is_zero():
        raise AssertionError("interpolated kernel is not duplication-stable")
    return kernel


@lru_cache(maxsize=1)
def symbolic_order10_abscissa() -> RatFunc:
    """Long-model abscissa of an order-10 generator, as a function of u.

    Certified symbolically: doubling it lands on the 5-torsion kernel,
    while the abscissa itself is neither 2-torsion (not a root of the
    cubic) nor 5-torsion (psi_5 does not vanish on it).  The derivation
    yields -4u^4 - 4u^3 + 12u^2 + 4u on the long model, that is,
    -(u^3 + u^2 - 3u - 1)/(2u) in the coordinates of the defining cubic.
    """
    samples = []
    u0 = Fraction(2)
    while len(samples) < 34:
        u0 += 1
        try:
            model = kubert_curve(u0)
            E = model.curve()
            k = five_division_kernel(E)
            s = rational_roots(k)[0]
            Squartic = E.rhs_quartic()
            y = rational_sqrt(Squartic(s)) / 2
            T = CurvePoint(s, y)
            two_tors_x = [r for r in rational_roots(Poly([E.a6, E.a4, E.a2, Fraction(1)]))]
            T2 = CurvePoint(two_tors_x[0], Fraction(0))
            P0 = point_add(E, T, T2)
        except Exception:
            continue
        samples.append((u0, P0.x))
    x0 = interpolate_ratfunc(samples)
    E = symbolic_family_curve()
    kernel = symbolic_family_kernel()
    dup = duplication_map(E)
    doubled = dup.num(x0) / dup.den(x0)
    if kernel(doubled) != 0:
        raise AssertionError("doubled abscissa misses the 5-torsion kernel")
    cubic = Poly([E.a6, E.a4, E.a2, Fraction(1)])
    if cubic(x0) == 0:
        raise AssertionError("order-10 abscissa degenerates to 2-torsion")
    if five_division_polynomial(E)(x0) == 0:
        raise AssertionError("order-10 abscissa degenerates to 5-torsion")
    return x0
