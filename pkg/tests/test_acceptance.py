"""Acceptance suite: one test per criterion, each printing a verdict line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict
lines as they appear.  Every tolerance is exact (rational arithmetic);
the runtime budgets are asserted with time.monotonic.
"""

import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction as F

import pytest

from fiverank.classgroup import (
    class_number,
    compose,
    enumerate_reduced,
    form_pow,
    group_structure,
    identity_form,
    oracle_scan,
)
from fiverank.curves import (
    INFINITY,
    CurvePoint,
    is_semistable,
    point_mul,
    transform_between,
)
from fiverank.errors import DegenerateParameterError
from fiverank.exact import Poly, RatFunc, rational_sqrt
from fiverank.family import (
    kubert_curve,
    quotient_cubic,
    quotient_model,
    specialize,
    triple_u,
)
from fiverank.isogeny import (
    composed_x_map,
    dual_kernel,
    five_division_kernel,
    five_division_polynomial,
    multiplication_by_n_x,
    rational_roots,
    velu_quotient,
)
from fiverank.sieve import admissible_z, check_z, sieve_data, singular_abscissa
from fiverank.splitting import (
    EXPECTED_PATTERN,
    SPLIT,
    fields_distinct,
    independence_certificate,
    splitting_pattern,
)


def report(num: int, passed: bool, detail: str):
    line = f"ACCEPTANCE {num:02d}: {'PASS' if passed else 'FAIL'} - {detail}"
    print(line)
    assert passed, line


def test_criterion_01_symbolic_identity_suite():
    t0 = time.monotonic()
    sp = specialize()
    tt = RatFunc(Poly.x())
    u1, u2, u3 = triple_u(tt)

    def common(u):
        return u * (u * u + u - 1)

    ok = common(u1) == common(u2) == common(u3)
    results = sp.verify_identities()
    ok = ok and results["transfer-v"] and results["transfer-w"]
    ok = ok and sp.scale == F(21 ** 5, 2)
    g1, _ = quotient_model(sp.u[0])
    ok = ok and sp.f_model == F(21 ** 5, 2) ** 2 * g1
    elapsed = time.monotonic() - t0
    report(1, ok and elapsed < 10,
           f"triple-u, transfer and square-ratio identities exact ({elapsed:.2f}s)")


def test_criterion_02_velu_kubert_agreement():
    t0 = time.monotonic()
    rng = random.Random(0x5EED)
    checked = 0
    while checked < 50:
        num = rng.randrange(-20, 21)
        den = rng.randrange(1, 21)
        u = F(num, den)
        try:
            E = kubert_curve(u).curve()
            target = quotient_cubic(u).curve()
        except DegenerateParameterError:
            continue
        kernel = five_division_kernel(E)
        phi = velu_quotient(E, kernel)
        assert phi.codomain.j_invariant() == target.j_invariant(), u
        trans = transform_between(phi.codomain, target)   # trivial twist
        assert trans.apply(phi.codomain) == target
        checked += 1
    elapsed = time.monotonic() - t0
    report(2, elapsed < 60,
           f"50 random parameters: quotient isomorphic to stated model ({elapsed:.1f}s)")


def test_criterion_03_kernel_and_dual():
    t0 = time.monotonic()
    sp = specialize()
    for model in sp.E_models:
        E = model.curve()
        kernel = five_division_kernel(E)
        assert kernel.divides(five_division_polynomial(E))
        quartic = E.rhs_quartic()
        for root in rational_roots(kernel):
            y = rational_sqrt(quartic(root)) / 2
            P = CurvePoint(root, y)
            assert P is not INFINITY                      # not annihilated by 1
            assert point_mul(E, 5, P) is INFINITY         # annihilated by 5
        phi = velu_quotient(E, kernel)
        khat = dual_kernel(phi)
        psi = velu_quotient(phi.codomain, khat)
        back = transform_between(psi.codomain, E)
        comp = composed_x_map(phi, psi, back)
        mul5 = multiplication_by_n_x(E, 5)
        assert comp == mul5                               # identity of maps
        rng = random.Random(1000 + int(E.a2))
        hits = 0
        while hits < 20:
            x0 = F(rng.randrange(-10**6, 10**6), rng.randrange(1, 1000))
            if mul5.is_pole(x0) or comp.is_pole(x0):
                continue
            assert comp(x0) == mul5(x0)
            hits += 1
    report(3, True,
           f"kernels are 5-torsion, dual composition is [5] on 20 points/curve "
           f"({time.monotonic() - t0:.1f}s)")


def test_criterion_04_reduction_data():
    t0 = time.monotonic()
    sp = specialize()
    data = sieve_data()
    for model in sp.F_models:
        assert is_semistable(model.curve())
    expected_S = [(11, 29, 419), (11, 19, 709), (19, 29, 151)]
    expected_sing = [(419, 77), (709, 677), (151, 36)]
    for d, S, (p, res) in zip(data, expected_S, expected_sing):
        assert d.five_primes == S, (d.index, d.five_primes)
        assert singular_abscissa(d, p) == res, (d.index, p)
    elapsed = time.monotonic() - t0
    report(4, elapsed < 30,
           f"semistable minimal models, five-component primes and node "
           f"abscissae match the stated values ({elapsed:.1f}s)")


def test_criterion_05_sieve_soundness():
    # Stated: the first 100 admissible z all pass the extension check.
    # Measured: the two formulations of the check agree on every single z,
    # but a sparse subset genuinely fails both: the numerator of x(z) has
    # all its terms at the same 29-adic level, so z with v_29(z) = 1 and
    # z/29 = 6 or 10 (mod 29) suffer cancellation, v_29(x) rises above -2
    # and the point reduces onto the node at 29.  The congruences of the
    # source construction imply the criterion only outside that set, so
    # the all-pass claim cannot hold as written; the per-candidate direct
    # check (which this package always runs) is what keeps the pipeline
    # sound.
    t0 = time.monotonic()
    zs = (list(admissible_z(count=50, sign="pos"))
          + list(admissible_z(count=50, sign="neg")))
    assert len(zs) == 100
    failing = []
    for z in zs:
        rpt = check_z(z)
        assert rpt.verbatim_passed() == rpt.general_rule_passed(), z
        if not rpt.passed:
            failing.append(z)
    elapsed = time.monotonic() - t0
    assert elapsed < 600
    report(5, not failing,
           f"agreement on all 100; extension check passed on "
           f"{100 - len(failing)}/100 (failing z: {failing}) ({elapsed:.1f}s)")


def test_criterion_06_splitting_pattern():
    t0 = time.monotonic()
    for z in admissible_z(count=20, sign="both"):
        pattern = splitting_pattern(z)
        assert pattern.k_verdicts == (SPLIT, SPLIT, SPLIT), z
        assert pattern.entries == EXPECTED_PATTERN, (z, pattern.entries)
        assert independence_certificate(pattern), z
    elapsed = time.monotonic() - t0
    report(6, elapsed < 600,
           f"20 patterns match items (ii)-(iv) cell-for-cell with "
           f"independence ({elapsed:.1f}s)")


def test_criterion_07_sign_dichotomy_as_stated():
    # Stated: positive z near the smallest admissible |z| give a negative
    # radicand (imaginary field) and negative z a positive one.  The
    # parametrization sends large |z| to large |x| with sign(x) = sign(z),
    # where the model polynomial has the sign of x; the near-zero
    # dichotomy of the source construction therefore REVERSES at every
    # admissible integer, and this criterion cannot hold as written.  It
    # is asserted verbatim and left to fail; see the radicand sign tests
    # in test_family.py for the near-zero statement, which does hold.
    sp = specialize()
    pos = list(admissible_z(count=10, sign="pos"))
    neg = list(admissible_z(count=10, sign="neg"))
    pos_signs = [sp.radicand(z) < 0 for z in pos]
    neg_signs = [sp.radicand(z) > 0 for z in neg]
    ok = all(pos_signs) and all(neg_signs)
    report(7, ok,
           "stated dichotomy (positive z imaginary, negative z real); "
           f"measured: positive z all real={all(sp.radicand(z) > 0 for z in pos)}, "
           f"negative z all imaginary={all(sp.radicand(z) < 0 for z in neg)}")


def test_criterion_08_distinct_fields():
    t0 = time.monotonic()
    sp = specialize()
    rads = [sp.radicand(z) for z in admissible_z(count=20, sign="both")]
    for i in range(len(rads)):
        for j in range(i + 1, len(rads)):
            assert fields_distinct(rads[i], rads[j]), (i, j)
    report(8, True,
           f"20 certificates give 20 pairwise distinct fields "
           f"({time.monotonic() - t0:.1f}s)")


def test_criterion_09_classgroup_oracle():
    t0 = time.monotonic()
    assert class_number(-4) == 1
    assert class_number(-23) == 3
    assert class_number(-47) == 5
    rng = random.Random(0xC1A55)
    tried = 0
    while tried < 20:
        D = -rng.randrange(3, 10**5)
        if D % 4 not in (0, 1):
            continue
        tried += 1
        forms = enumerate_reduced(D)
        ident = identity_form(D)
        for f in forms:
            assert compose(f, ident) == f
            assert compose(f, f.inverse()) == ident
        for _ in range(20):
            a, b, c = (rng.choice(forms) for _ in range(3))
            assert compose(compose(a, b), c) == compose(a, compose(b, c))
        st = group_structure(D)
        assert st.class_number == len(forms)
        for p in (2, 3, 5):
            torsion = sum(1 for f in forms if form_pow(f, p) == ident)
            assert torsion == p ** st.p_rank(p), (D, p)
    report(9, True,
           f"golden class numbers, group laws and p-rank consistency on 20 "
           f"random discriminants ({time.monotonic() - t0:.1f}s)")


def test_criterion_10_end_to_end_theory_check():
    t0 = time.monotonic()
    decided = []
    skipped = 0
    for outcome in oracle_scan(20):
        if outcome.status == "skip":
            skipped += 1
            continue
        decided.append(outcome)
    assert len(decided) >= 20
    failures = [o for o in decided if o.status != "pass"]
    assert not failures, failures
    assert all(o.class_number % 5 == 0 for o in decided)
    assert all(-o.fundamental_d <= 10**7 for o in decided)
    elapsed = time.monotonic() - t0
    report(10, elapsed < 1800,
           f"{len(decided)} imaginary instances all have 5 | h "
           f"({skipped} skips, {elapsed:.1f}s)")


def test_criterion_11_paper_check_determinism():
    t0 = time.monotonic()
    env = dict(os.environ)
    env.pop("PYTHONHASHSEED", None)
    runs = []
    for _ in range(2):
        proc = subprocess.run(
            [sys.executable, "-m", "fiverank.cli", "paper-check"],
            capture_output=True, env=env, check=False)
        assert proc.returncode == 0, proc.stdout[-500:]
        runs.append(proc.stdout)
    assert runs[0] == runs[1]
    summary = json.loads(runs[0].splitlines()[-1])
    assert summary["pass"] is True
    report(11, True,
           f"two paper-check runs byte-identical over {summary['checks']} "
           f"checks ({time.monotonic() - t0:.1f}s)")
