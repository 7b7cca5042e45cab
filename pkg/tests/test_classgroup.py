import random
from fractions import Fraction as F

import pytest

from fiverank.classgroup import (
    BinaryQuadraticForm,
    class_number,
    compose,
    enumerate_reduced,
    form_pow,
    fundamental_discriminant,
    group_structure,
    identity_form,
    oracle_scan,
    p_rank,
    reduce_form,
    small_instance_oracle,
)
from fiverank.errors import OutOfBudgetError


def test_form_validation():
    with pytest.raises(ValueError):
        BinaryQuadraticForm(1, 0, -1)          # positive discriminant
    with pytest.raises(ValueError):
        BinaryQuadraticForm(-1, 0, -1)         # not positive definite
    with pytest.raises(ValueError):
        BinaryQuadraticForm(2, 2, 4)           # imprimitive


def test_reduce_examples():
    assert reduce_form(BinaryQuadraticForm(1, 1, 6)) == BinaryQuadraticForm(1, 1, 6)
    assert reduce_form(BinaryQuadraticForm(6, 1, 1)) == BinaryQuadraticForm(1, 1, 6)
    # |b| < a and a < c: already reduced even with negative b
    assert reduce_form(BinaryQuadraticForm(2, -1, 3)) == BinaryQuadraticForm(2, -1, 3)


def test_reduced_representative_unique():
    # all forms in one class reduce to the same representative
    f = BinaryQuadraticForm(2, 1, 3)
    g = compose(compose(f, f), compose(f, f.inverse()))
    assert g == compose(f, f)


def test_compose_identity_and_inverse():
    D = -23
    e = identity_form(D)
    f = BinaryQuadraticForm(2, 1, 3)
    assert compose(e, f) == reduce_form(f)
    assert compose(f, f.inverse()) == e
    assert compose(f, f) == BinaryQuadraticForm(2, -1, 3)


def test_compose_rejects_mismatched_discriminants():
    with pytest.raises(ValueError):
        compose(identity_form(-23), identity_form(-47))


def test_enumerate_golden_values():
    assert class_number(-4) == 1
    assert class_number(-23) == 3
    assert class_number(-47) == 5
    forms = set(enumerate_reduced(-23))
    assert forms == {BinaryQuadraticForm(1, 1, 6),
                     BinaryQuadraticForm(2, 1, 3),
                     BinaryQuadraticForm(2, -1, 3)}


def test_enumerate_rejects_bad_discriminant():
    with pytest.raises(ValueError):
        enumerate_reduced(-7 + 1)      # -6 = 2 mod 4
    with pytest.raises(ValueError):
        enumerate_reduced(5)


def test_group_law_properties_random_discriminants():
    rng = random.Random(5)
    tried = 0
    while tried < 20:
        D = -rng.randrange(3, 10**5)
        if D % 4 not in (0, 1):
            continue
        tried += 1
        forms = enumerate_reduced(D)
        e = identity_form(D)
        sample = forms if len(forms) <= 6 else rng.sample(forms, 6)
        for f in sample:
            assert compose(f, e) == f
            assert compose(f, f.inverse()) == e
        for _ in range(6):
            a, b, c = (rng.choice(forms) for _ in range(3))
            assert compose(compose(a, b), c) == compose(a, compose(b, c))
            assert compose(a, b) == compose(b, a)


def test_group_structure_golden():
    assert group_structure(-23).invariant_factors == (3,)
    assert group_structure(-47).invariant_factors == (5,)
    assert group_structure(-4).invariant_factors == ()
    assert p_rank(-47, 5) == 1 and p_rank(-47, 3) == 0
    assert p_rank(-4, 7) == 0


def test_group_structure_noncyclic():
    # h(-84) = 4 with group C2 x C2 (three ambiguous classes)
    st = group_structure(-84)
    assert st.class_number == 4
    assert st.invariant_factors == (2, 2)
    assert st.p_rank(2) == 2


def test_group_structure_matches_order_count():
    rng = random.Random(17)
    tried = 0
    while tried < 8:
        D = -rng.randrange(3, 3 * 10**4)
        if D % 4 not in (0, 1):
            continue
        tried += 1
        st = group_structure(D)
        forms = enumerate_reduced(D)
        for p in (2, 3, 5):
            ident = identity_form(D)
            count = sum(1 for f in forms if form_pow(f, p) == ident)
            # p-torsion subgroup has order p^(p-rank)
            assert count == p ** st.p_rank(p)
        assert len(forms) == st.class_number


def test_group_structure_budget():
    with pytest.raises(OutOfBudgetError):
        group_structure(-(10**7 + 7) * 4, disc_bound=10**7)


def test_fundamental_discriminant():
    assert fundamental_discriminant(-1) == -4
    assert fundamental_discriminant(-3) == -3
    assert fundamental_discriminant(-478363) in (-478363, -478363 * 4)


def kronecker(D, n):
    """Kronecker symbol (D/n) for n >= 1, as an independent oracle."""
    from fiverank.exact import jacobi
    if n == 0:
        return 0
    result = 1
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            result = -result
    return result * jacobi(D, n) if n > 1 else result


def test_class_number_matches_dirichlet_formula():
    # for fundamental D < -4: h(D) = |sum a*chi_D(a)| / |D| with unit count 2
    from fiverank.exact import squarefree_part
    rng = random.Random(31)
    checked = 0
    while checked < 12:
        s = -rng.randrange(5, 6000)
        sf, complete = squarefree_part(s, 10**6)
        if not complete:
            continue
        D = fundamental_discriminant(sf)
        if D >= -4:
            continue
        checked += 1
        total = sum(a * kronecker(D, a) for a in range(1, -D))
        assert class_number(D) == abs(total) // (-D), D


# ------------------------------------------------------------------ oracle

def test_oracle_requires_congruence():
    with pytest.raises(ValueError):
        small_instance_oracle(F(2), F(1))      # 2 is not +-1 mod 5


def test_oracle_pass_instance():
    out = small_instance_oracle(F(2, 3), F(1))
    assert out.status == "pass"
    assert out.fundamental_d == -120660
    assert out.class_number == 80
    assert out.five_rank >= 1
    assert out.witness_prime is not None


def test_oracle_skip_real_field():
    out = small_instance_oracle(F(2, 3), F(0))
    assert out.status == "skip" and "real" in out.reason


def test_oracle_skip_over_budget():
    out = small_instance_oracle(F(2, 3), F(7))
    assert out.status == "skip" and "over budget" in out.reason


def test_oracle_skip_node_hit():
    # every 19-integral abscissa reduces onto the node for this parameter
    out = small_instance_oracle(F(4), F(1))
    assert out.status == "skip" and "extension" in out.reason


def test_oracle_scan_five_instances_all_pass():
    decided = [o for o in oracle_scan(5) if o.status != "skip"]
    assert len(decided) == 5
    assert all(o.status == "pass" for o in decided)
    assert all(o.class_number % 5 == 0 for o in decided)


def test_oracle_json_shape():
    out = small_instance_oracle(F(2, 3), F(1))
    data = out.to_json()
    assert data["record"] == "oracle-outcome"
    assert data["status"] == "pass"
    assert isinstance(data["class_number"], str)


def test_oracle_scan_deterministic():
    first = [o.to_json() for o in oracle_scan(3)]
    second = [o.to_json() for o in oracle_scan(3)]
    assert first == second
