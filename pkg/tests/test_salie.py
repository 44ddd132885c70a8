from fractions import Fraction

import pytest

from plusforms.salie import (
    SalieParams,
    admissible,
    bessel_correction_factor,
    poincare_coeff,
    salie_h,
    salie_h_raw,
    spectral_average,
)

from oracles import salie_direct


def test_admissibility():
    assert admissible("13/2", 1) and admissible("13/2", 4)
    assert not admissible("13/2", 2) and not admissible("13/2", 3)
    assert admissible("15/2", 3) and not admissible("15/2", 1)
    with pytest.raises(ValueError):
        SalieParams(1, 2, 1, Fraction(13, 2))


def test_salie_h_1_1_1():
    """H_1(1,1) = -1 at k = 13/2: the delta in {1,3} sum evaluates by hand to
    (1-i)/2 * (-1 - i) = -1."""
    v = salie_h_raw(1, 1, 1, "13/2")
    assert v == pytest.approx(-1.0 + 0j, abs=1e-13)


def test_salie_against_direct_oracle():
    for c, n, m, k in ((1, 1, 1, "13/2"), (2, 1, 1, "13/2"), (3, 4, 4, "13/2"),
                       (5, 1, 5, "13/2"), (4, 3, 3, "15/2"), (7, 4, 8, "17/2")):
        mine = salie_h_raw(c, n, m, k)
        from plusforms.arith import half_integer

        ref = salie_direct(c, n, m, half_integer(k))
        assert mine == pytest.approx(ref, abs=1e-12)


def test_salie_even_c_prefactor_weight():
    # even c carries prefactor weight 1 (the (4|c) symbol vanishes);
    # odd c, including c = 3 mod 4, carries weight 2 and does contribute
    assert salie_h_raw(3, 1, 1, "13/2") != 0
    assert salie_h_raw(2, 1, 1, "13/2") != 0


def test_poincare_delta_limit():
    """For k large and n = m the Bessel tail vanishes: g -> 2/3."""
    g = poincare_coeff("61/2", 1, 1, tol=1e-12)
    assert g.value.to_float() == pytest.approx(2.0 / 3.0, rel=1e-10)
    g = poincare_coeff("13/2", 1, 1, tol=1e-12)
    assert abs(g.value.to_float() - 2.0 / 3.0) > 0.02  # small k is not degenerate


def test_poincare_reality():
    for m in (1, 4, 5):
        g = poincare_coeff("13/2", m, m, tol=1e-10)
        # the certified error absorbs any residual imaginary part
        assert g.value.value.sign != 0
        assert g.value.err < 1e-9


def test_poincare_truncation_honesty():
    """Refining the truncation moves the value by less than the reported bound."""
    for (k, m) in (("13/2", 1), ("13/2", 9), ("17/2", 4)):
        g = poincare_coeff(k, m, m, tol=1e-6)
        g_fine = poincare_coeff(k, m, m, tol=1e-13)
        assert abs(g.value.to_float() - g_fine.value.to_float()) <= g.value.err + 1e-15


def test_poincare_offdiagonal_ratio(eigenform_13_2):
    """g(m, n)/g(n, n)-style consistency against exact coefficients: the
    coefficients of the index-m Poincare series are proportional to
    conj(fhat(m)) fhat(n) in a one-dimensional space."""
    f = eigenform_13_2
    g_11_4 = poincare_coeff("13/2", 1, 4, tol=1e-10)  # index m=1, coefficient n=4
    g_11_1 = poincare_coeff("13/2", 1, 1, tol=1e-10)
    ratio = g_11_4.value.to_float() / g_11_1.value.to_float()
    expect = float(f.coeff(4)) / float(f.coeff(1))
    assert ratio == pytest.approx(expect, rel=1e-7)


def test_spectral_average_positivity_and_ratios(eigenform_13_2):
    f = eigenform_13_2
    s1 = spectral_average("13/2", 1, rel_tol=1e-7)
    assert s1.value.sign == 1
    for m in (4, 5, 9):
        sm = spectral_average("13/2", m, rel_tol=1e-7)
        assert sm.value.sign == 1
        ratio = (sm.value / s1.value).to_float()
        assert ratio == pytest.approx(float(f.coeff(m)) ** 2, rel=1e-6)


def test_norm_consistency_across_m(eigenform_13_2):
    """<f,f> inferred as fhat(m)^2 / spectral_average(m) is m-independent."""
    f = eigenform_13_2
    values = []
    m = 1
    while len(values) < 10:
        if admissible("13/2", m) and float(f.coeff(m)) != 0:
            sa = spectral_average("13/2", m, rel_tol=1e-7)
            values.append(float(f.coeff(m)) ** 2 / sa.to_float())
        m += 1
    mid = sorted(values)[len(values) // 2]
    assert all(abs(v - mid) / mid < 1e-5 for v in values)


def test_bessel_correction_factor_large_k():
    assert bessel_correction_factor("45/2") == pytest.approx(1.0, abs=1e-6)
