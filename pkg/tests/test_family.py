import random
from fractions import Fraction as F

import pytest

from fiverank.curves import is_semistable, transform_between
from fiverank.errors import (
    DegenerateParameterError,
    FieldCollapseError,
    PoleError,
)
from fiverank.exact import Poly, RatFunc, rational_mod
from fiverank.family import (
    SurdElement,
    c_parametrization,
    kubert_curve,
    model_poly,
    quotient_cubic,
    quotient_model,
    specialize,
    symbolic_family_curve,
    symbolic_family_kernel,
    symbolic_order10_abscissa,
    triple_u,
)
from fiverank.isogeny import (
    five_division_kernel,
    five_division_polynomial,
    velu_quotient,
)


# ----------------------------------------------------------------- surds

def test_surd_rejects_square_radicand():
    with pytest.raises(ValueError):
        SurdElement(0, 1, F(4))
    with pytest.raises(ValueError):
        SurdElement(0, 1, 0)


def test_surd_arithmetic():
    s = SurdElement(1, 2, 5)            # 1 + 2 sqrt5
    t = SurdElement(0, 1, 5)
    assert (s * t) == SurdElement(10, 1, 5)
    assert (s - 1) / t == SurdElement(2, 0, 5)
    assert (t * t).as_rational() == 5
    assert (1 / t) * t == 1
    assert (s ** 2) == SurdElement(21, 4, 5)
    with pytest.raises(ValueError):
        s + SurdElement(0, 1, 7)


# ------------------------------------------------------------ family models

def test_kubert_curve_at_4():
    model = kubert_curve(4)
    assert model.poly == Poly([-76 * 697, -76 * 128, 697, 128])


def test_kubert_degenerate_parameters():
    for bad in (F(1), F(0), F(-1)):
        with pytest.raises(DegenerateParameterError):
            kubert_curve(bad)


def test_kubert_semistable_at_family_parameters():
    assert is_semistable(kubert_curve(F(19, 21)).curve())
    # the congruence that guarantees it: 19/21 = -1 mod 5
    assert rational_mod(F(19, 21), 5) == 4


def test_quotient_model_values():
    g, h = quotient_model(4)
    assert h == Poly([25177, 2888])
    assert g == Poly([-F(6061, 9261) * 0 - 76, 0, 1]) * h + Poly() or True
    # definitional product
    assert g == Poly([-76, 0, 1]) * h
    g2, h2 = quotient_model(F(19, 21))
    ratio = F(8, 21 ** 6)
    assert h2 == Poly([-133597561 * ratio, 44876601 * ratio])


def test_triple_u():
    assert triple_u(4) == (F(19, 21), F(-29, 21), F(-11, 21))
    u1, u2, u3 = triple_u(RatFunc(Poly.x()))

    def common(u):
        return u * (u * u + u - 1)

    assert common(u1) == common(u2) == common(u3)


def test_common_value_at_4():
    u1, _, _ = triple_u(4)
    assert u1 * (u1 * u1 + u1 - 1) == F(6061, 9261)


def test_three_quotients_share_quadratic_factor():
    # each g_{u_i} is (x^2 - 6061/9261) times its linear part
    shared = Poly([F(-6061, 9261), 0, 1])
    for ui in triple_u(4):
        g, h = quotient_model(ui)
        assert g == shared * h


# --------------------------------------------------------- parametrization

def test_parametrization_identities():
    x_of_z, v_of_z, w_of_z = c_parametrization()
    u1, u2, u3 = triple_u(4)
    _, h1 = quotient_model(u1)
    _, h2 = quotient_model(u2)
    _, h3 = quotient_model(u3)
    lhs = h1(x_of_z)
    assert lhs == v_of_z * v_of_z * h2(x_of_z)
    assert lhs == w_of_z * w_of_z * h3(x_of_z)


def test_parametrization_poles_and_leading():
    x_of_z, v_of_z, _ = c_parametrization()
    for pole in (F(0), F(29, 11), F(-922989409, 4883562662)):
        assert x_of_z.is_pole(pole)
    assert x_of_z.den.degree == 3 and x_of_z.num.degree == 4
    assert v_of_z.num.leading() / v_of_z.den.leading() == F(29, 19)


def test_model_composition_structure():
    # f(x(z)) has a degree-12 numerator over the cube of the pole structure
    x_of_z, _, _ = c_parametrization()
    f = model_poly()
    composed = f(x_of_z)
    assert composed.num.degree == 12
    assert composed.den.degree == 9
    cube = (x_of_z.den.monic()) ** 3
    assert composed.den == cube


def test_model_is_square_multiple_of_quotient():
    sp = specialize()
    g1, _ = quotient_model(sp.u[0])
    assert sp.f_model == sp.scale ** 2 * g1
    assert sp.scale == F(21 ** 5, 2)


# ----------------------------------------------------------- specialization

def test_specialize_builds_and_verifies():
    sp = specialize()
    results = sp.verify_identities()
    assert all(results.values()), {k: v for k, v in results.items() if not v}


def test_radicand_signs_near_zero():
    sp = specialize()
    # small positive z -> negative radicand (imaginary field)
    assert sp.radicand(F(1, 10)) < 0
    assert sp.radicand(F(1, 100)) < 0
    # small negative z -> positive radicand (real field)
    assert sp.radicand(F(-1, 10)) > 0
    assert sp.radicand(F(-1, 100)) > 0


def test_radicand_pole():
    sp = specialize()
    with pytest.raises(PoleError):
        sp.radicand(F(29, 11))


def test_points_on_quotients():
    sp = specialize()
    z = F(7)
    pts = sp.points_on_quotients(z)
    x = sp.x_of_z(z)
    for (xi, yi), model in zip(pts, sp.F_models):
        assert xi == x
        assert yi.square() == model.rhs(x)
    # transfer relations between the ordinates
    assert pts[1][1] * sp.v_of_z(z) == pts[0][1]
    assert pts[2][1] * sp.w_of_z(z) == pts[0][1]


def test_points_on_quotients_field_collapse(monkeypatch):
    # no small rational z produces a square radicand (the branch points of
    # the cover are complex), so force one through the radicand hook and
    # check the guard fires
    from fiverank.family import Specialization
    sp = specialize()
    monkeypatch.setattr(Specialization, "radicand", lambda self, z: F(49))
    with pytest.raises(FieldCollapseError):
        sp.points_on_quotients(F(7))


def test_splitting_pattern_field_collapse(monkeypatch):
    from fiverank.family import Specialization
    from fiverank.splitting import splitting_pattern
    sp = specialize()
    monkeypatch.setattr(Specialization, "radicand", lambda self, z: F(4))
    with pytest.raises(FieldCollapseError):
        splitting_pattern(874461709044, sp)


def test_velu_matches_quotient_model_random_congruent_u():
    # quotient of the family curve agrees with the stated model for 50
    # random parameters in the semistable congruence class
    rng = random.Random(20260808)
    checked = 0
    while checked < 50:
        u = F(rng.randrange(-20, 21), rng.randrange(1, 21))
        if u.denominator % 5 == 0 or rational_mod(u, 5) not in (1, 4):
            continue
        try:
            E = kubert_curve(u).curve()
            target = quotient_cubic(u).curve()
        except DegenerateParameterError:
            continue
        k = five_division_kernel(E)
        phi = velu_quotient(E, k)
        assert phi.codomain.j_invariant() == target.j_invariant()
        trans = transform_between(phi.codomain, target)
        assert trans.apply(phi.codomain) == target
        checked += 1


# ------------------------------------------------------- symbolic derivations

def test_symbolic_family_curve_and_kernel():
    E = symbolic_family_curve()
    kernel = symbolic_family_kernel()
    psi5 = five_division_polynomial(E)
    assert (psi5 % kernel).is_zero()
    # specializing the symbolic kernel reproduces the numeric kernels,
    # including at the three construction parameters
    for u in (F(4), F(19, 21), F(-29, 21), F(-11, 21)):
        k_num = five_division_kernel(kubert_curve(u).curve())
        at_u = Poly([c(u) if isinstance(c, RatFunc) else c for c in kernel.c])
        assert at_u.monic() == k_num, u


def test_symbolic_order10_abscissa():
    x0 = symbolic_order10_abscissa()
    # at sample parameters, the abscissa carries a rational point of order 10
    from fiverank.curves import CurvePoint, torsion_order
    from fiverank.exact import rational_sqrt
    for u in (F(4), F(6), F(19, 21)):
        E = kubert_curve(u).curve()
        xv = x0(u)
        y = rational_sqrt(E.rhs_quartic()(xv)) / 2
        P0 = CurvePoint(xv, y)
        assert E.contains(P0)
        assert torsion_order(E, P0) == 10
    # closed form (long coordinates): -4u^4 - 4u^3 + 12u^2 + 4u
    from fiverank.exact import RatFunc as RF
    assert x0 == RF(Poly([0, 4, 12, -4, -4]))


def test_symbolic_j_invariant_agreement():
    # quotient of the family curve has the j-invariant of y^2 = g_u(x), as
    # functions of u
    E = symbolic_family_curve()
    kernel = symbolic_family_kernel()
    phi = velu_quotient(E, kernel)
    u = RatFunc(Poly.x())
    target = quotient_cubic(u).curve()
    assert phi.codomain.j_invariant() == target.j_invariant()
    assert phi.verify_codomain_identity()
