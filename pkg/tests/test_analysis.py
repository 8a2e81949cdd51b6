import csv
import io
import math
from fractions import Fraction

import pytest
import sympy

from idcodes import analysis
from idcodes.analysis import (
    FIGURES,
    REFERENCE_Q_VALUES,
    bench_tag,
    emit_figure_data,
    format_lambda2,
    nearest_prime,
    rate_comparison,
)
from idcodes.capacity import capacity_conditions, concat_family, single_rs_family
from idcodes.concat import derive_params, false_id_bound
from idcodes.errors import InsufficientPoints


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


# -- rates ----------------------------------------------------------------------------


def test_rate_single_rs():
    r = rate_comparison("single-rs", 23, 3)
    assert r.ratio == Fraction(3, 2)
    assert r.exponential_form is None


def test_rate_double_rs():
    assert rate_comparison("double-rs", 3, 2, 1).ratio == Fraction(3, 2)
    r = rate_comparison("double-rs", 23, 3, 2)
    assert r.ratio == Fraction(69, 5) and float(r.ratio) == 13.8
    assert r.exponential_form == "exp((3-2)*n*r_T)"
    assert r.r_T == 5 and r.r_T_description == "log(q^5)/n"


def test_rate_errors():
    with pytest.raises(ValueError):
        rate_comparison("double-rs", 23, 3)
    with pytest.raises(ValueError):
        rate_comparison("triple-rs", 23, 3, 2)


# -- reference values --------------------------------------------------------------------


def test_reference_q_values_are_prime():
    assert all(sympy.isprime(q) for q in REFERENCE_Q_VALUES)


def test_log10_identities_formula():
    for q in REFERENCE_Q_VALUES:
        p = derive_params(q, 3, 2)
        assert p.log10_identities == pytest.approx(3 * q * math.log10(q), rel=1e-12)


def test_lambda2_decades():
    vals = [float(false_id_bound(derive_params(q, 3, 2))) for q in (23, 193, 1009, 10007)]
    by_hand = [2 / q + 1 / q**2 - 3 / q**3 + 2 / q**4 for q in (23, 193, 1009, 10007)]
    assert vals == pytest.approx(by_hand, rel=1e-12)
    assert [math.floor(math.log10(v)) for v in vals] == [-2, -2, -3, -4]
    assert round(vals[0], 3) == 0.089
    assert vals[2] == pytest.approx(2.0e-3, rel=0.01)


@pytest.mark.parametrize("q1", [1009, 10007, 100003, 1000037])
def test_tenfold_q_gives_tenth_lambda2(q1):
    q2 = nearest_prime(10 * q1)
    ratio = false_id_bound(derive_params(q2, 3, 2)) / false_id_bound(derive_params(q1, 3, 2))
    assert float(ratio) == pytest.approx(0.1, rel=0.02)


def test_reference_list_lambda2_scales_inversely_with_q():
    qs = [q for q in REFERENCE_Q_VALUES if q >= 1000]
    for q1, q2 in zip(qs, qs[1:]):
        ratio = false_id_bound(derive_params(q2, 3, 2)) / false_id_bound(derive_params(q1, 3, 2))
        assert float(ratio) * q2 / q1 == pytest.approx(1.0, rel=0.01)


def test_format_lambda2():
    assert format_lambda2(Fraction(13, 27)) == "0.481481"
    assert format_lambda2(1.5e-7) == "1.500000e-07"


# -- bench ----------------------------------------------------------------------------------


def test_bench_record():
    rec = bench_tag(23, 3, 2, repetitions=1, seed=4)
    assert rec.wall_time_one_tag > 0
    assert rec.lambda2_bound == float(false_id_bound(derive_params(23, 3, 2)))
    assert round(rec.log10_identities, 1) == 94.0
    assert rec.repetitions == 1 and rec.host


def test_bench_rejects_zero_repetitions():
    with pytest.raises(ValueError):
        bench_tag(23, 3, 2, repetitions=0)


def test_bench_uses_median(monkeypatch):
    times = iter([9.0, 3.0, 1.0, 2.0])  # warm-up, then three timed runs
    monkeypatch.setattr(analysis, "_pipeline", lambda *a: next(times))
    assert bench_tag(23, 3, 2, repetitions=3).wall_time_one_tag == 2.0


# -- figure data --------------------------------------------------------------------------


def test_empty_param_list_gives_header_only():
    for name, cols in FIGURES.items():
        assert emit_figure_data(name, []) == ",".join(cols) + "\n"


def test_lambda2_figure_is_byte_stable(tmp_path):
    plist = [(q, 3, 2) for q in (23, 193, 1009, 10007)]
    out = tmp_path / "l2.csv"
    a = emit_figure_data("lambda2-vs-params", plist, out)
    assert out.read_text() == a == emit_figure_data("lambda2-vs-params", plist)
    r = rows(a)
    assert [row["lambda2"] for row in r][0] == "0.088607"
    assert int(r[0]["n_c"]) == 23**4


def test_fixed_randomness_figure_is_reproducible():
    plist = [(3, 2, 1), (5, 3, 2)]
    a = emit_figure_data("fixed-randomness", plist, trials=200, seed=3)
    assert a == emit_figure_data("fixed-randomness", plist, trials=200, seed=3)
    r = rows(a)
    assert float(r[0]["lambda2"]) == pytest.approx(13 / 27, abs=1e-6)
    assert all(float(row["ratio"]) <= float(row["lambda2"]) for row in r)


def test_identities_vs_time_columns():
    r = rows(emit_figure_data("identities-vs-time", [(23, 3, 2), (193, 3, 2)], repetitions=1))
    for row in r:
        q = int(row["q"])
        assert float(row["log10_identities"]) == pytest.approx(3 * q * math.log10(q), abs=1e-4)
        assert float(row["time_s"]) > 0


def test_tradeoff_figure():
    r = rows(emit_figure_data("tradeoff", [(23, 3, 2)], repetitions=1))
    assert r[0]["lambda2"] == "0.088607"


def test_unknown_figure():
    with pytest.raises(ValueError):
        emit_figure_data("pie", [])


def test_nearest_prime_helper():
    assert nearest_prime(23) == 23
    assert nearest_prime(10**4) == 10007
    assert nearest_prime(100600999) == 100600999


# -- capacity ------------------------------------------------------------------------------


def test_single_rs_family_fails_tag_condition():
    rep = capacity_conditions(single_rs_family([23, 193, 1009], 3))
    assert rep["tag"].ratios == (1.0, 1.0, 1.0)
    assert not rep["tag"].satisfied
    assert "tag" in rep.failing


def test_concat_family_distance_increases():
    qs = [23, 193, 1009]
    rep = capacity_conditions(concat_family(qs, 3, 2))
    d = rep["distance"]
    assert d.trend == "increasing" and d.toward_limit
    for q, r in zip(qs, d.ratios):
        assert r == pytest.approx(1 - float(false_id_bound(derive_params(q, 3, 2))), rel=1e-12)
    assert rep["tag"].ratios == pytest.approx((0.25, 0.25, 0.25))


def test_concat_family_matches_params():
    for (M, k, d, q), q0 in zip(concat_family([5, 7, 11], 3, 2), [5, 7, 11]):
        p = derive_params(q0, 3, 2)
        assert (M, k, d, q) == (p.n_c, p.k_c, p.d_c, p.q)


def test_constant_family_is_flat():
    rep = capacity_conditions([(27, 6, 14, 3)] * 3)
    assert all(c.trend == "flat" for c in rep.conditions)


def test_capacity_errors():
    with pytest.raises(InsufficientPoints):
        capacity_conditions([(27, 6, 14, 3)] * 2)
    with pytest.raises(ValueError):
        capacity_conditions([(27, 6, 14, 3), (9, 2, 3, 3), (81, 6, 14, 3)])


def test_capacity_report_dict():
    d = capacity_conditions(single_rs_family([5, 7, 11], 2)).to_dict()
    assert [c["name"] for c in d["conditions"]] == ["size", "tag", "distance"]
    assert d["failing"] and len(d["points"]) == 3
