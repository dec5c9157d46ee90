import json

import numpy as np
import pytest

from zerocycles import depezzo
from zerocycles.depezzo import ModelParams, build_X, build_X0, build_X1, named_loci
from zerocycles.ffgeom import MultiPoly, SchemeSpec, enumerate_points, field_make

P3 = ModelParams(p=3)
F3, F9 = field_make(3), field_make(3, 2, 2)


def check(report, cid):
    return next(c for c in report.checks if c.check_id == cid)


# -- parameters ---------------------------------------------------------------------

def test_default_params():
    assert (P3.d, P3.beta, P3.gamma, P3.e_max) == (2, 1, 1, 2)
    assert ModelParams(p=7).d == 3
    assert [f.q for f in ModelParams(p=7).fields()] == [7, 49]


@pytest.mark.parametrize("kw", [dict(p=3, d=1), dict(p=7, d=2), dict(p=3, beta=0), dict(p=5, gamma=5),
                                dict(p=2), dict(p=9), dict(p=3, e_max=0)])
def test_params_rejected(kw):
    with pytest.raises(ValueError):
        ModelParams(**kw)


# -- schemes --------------------------------------------------------------------------

def test_equation_counts():
    assert len(build_X0(P3).equations) == 2
    assert len(build_X1(P3).equations) == 6
    assert len(build_X(P3).equations) == 13
    for sch in (build_X0(P3), build_X1(P3), build_X(P3)):
        assert sch.expected_dim == 3
    assert [build_X0(P3).codim, build_X1(P3).codim, build_X(P3).codim] == [2, 4, 7]


def test_rank_matrix_row():
    eq = depezzo.Equations(P3)
    g = eq.g
    assert eq.row2 == [g["P"], g["t"] - g["u"], g["t"] + g["w"], g["t"] * (2 * g["r"] ** 2 - g["s"] ** 2)]


def test_bilinear_equations_vanish_on_proportional_fiber():
    eq = depezzo.Equations(P3)
    g = eq.g
    for f in eq.blowup1[:3]:
        assert f.substitute({"P": g["pi"], "R": g["r"], "T": g["t"]}) == 0


def test_fiber_weights_are_forced():
    eq = depezzo.Equations(P3)
    for w in [(0, 0, 0), (1, 1, 1), (0, 1, 2), (1, 0, 0)]:
        amb = depezzo.ambient_E1(w)
        assert not all(amb.is_consistent(f) for f in eq.blowup1)
    assert all(depezzo.ambient_E1().is_consistent(f) for f in eq.blowup1)
    for w in [(0, 1, 1, 1), (0, 1, 1, 2), (1, 1, 1, 3)]:
        amb = depezzo.ambient_E2(w)
        assert not all(amb.is_consistent(f) for f in eq.minors + [eq.quadric])


def test_named_loci_transcriptions():
    loci = {l.name: l for l in named_loci(P3)}
    g = depezzo.Equations(P3).g
    assert set(loci["center1"].system) == {g["pi"], g["r"], g["t"]}
    assert list(loci["center2"].system) == depezzo.Equations(P3).row2
    assert loci["conic_CD"].system[-1] == (2 * g["R"] ** 2 - g["T"] ** 2) - g["P"] ** 2 * g["s"] ** 2
    assert set(loci["M1"].system) == {g["P"], g["t"], g["u"], g["w"]}
    assert {l.stage for l in loci.values()} == {0, 1, 2}


@pytest.mark.parametrize("params", [P3, ModelParams(p=7), ModelParams(p=5, beta=2, gamma=3)])
def test_every_locus_is_scaling_consistent(params):
    for loc in named_loci(params):
        sch = depezzo.locus_scheme(params, loc.name)  # raises if inconsistent
        assert isinstance(sch, SchemeSpec)
    with pytest.raises(KeyError):
        depezzo.locus_scheme(params, "nope")


@pytest.mark.parametrize("params", [P3, ModelParams(p=5, beta=2, gamma=3)])
def test_special_fiber_of_X0_is_system_3(params):
    for fld in params.fields():
        a = enumerate_points(build_X0(params), fld, {"pi": 0})
        b = enumerate_points(depezzo.special_fiber_system(params), fld)
        assert a == b


def project(ps, names):
    idx = [ps.variables.index(v) for v in names]
    return [tuple(int(x) for x in r[idx]) for r in ps.array]


E0_COORDS = ("pi",) + depezzo.BASE
E1_COORDS = E0_COORDS + depezzo.FIB1


@pytest.mark.parametrize("fld", [F3, F9])
def test_blow_ups_map_into_targets_and_are_bijective_off_centers(fld):
    x0 = enumerate_points(build_X0(P3), fld).to_set()
    x1 = enumerate_points(build_X1(P3), fld)
    x = enumerate_points(build_X(P3), fld)
    img1 = project(x1, E0_COORDS)
    assert set(img1) <= x0
    center1 = {v for v in x0 if v[0] == 0 and v[1] == 0 and v[3] == 0}
    off1 = [v for v in img1 if v not in center1]
    assert len(off1) == len(set(off1)) and set(off1) == x0 - center1
    img2 = project(x, E1_COORDS)
    assert set(img2) <= x1.to_set()
    c2 = enumerate_points(depezzo.locus_scheme(P3, "center2"), fld).to_set()
    off2 = [v for v in img2 if v not in c2]
    assert len(off2) == len(set(off2)) and set(off2) == x1.to_set() - c2


def test_center_of_second_blow_up_is_three_pairs():
    c2 = enumerate_points(depezzo.locus_scheme(P3, "center2"), F9)
    assert len(c2) == 6
    assert len(enumerate_points(depezzo.locus_scheme(P3, "center2"), F3)) == 0


# -- reports ----------------------------------------------------------------------------

EXPECTED_IDS = ["V0a", "V0b", "V0c", "V1a", "V1b", "V1c", "V1d", "V1e",
                "V2a", "V2b", "V2c", "V2d", "CH1", "CH2", "CH3"]


def test_run_all_default_passes(suite3):
    rep, _ = suite3
    assert [c.check_id for c in rep.checks] == EXPECTED_IDS
    assert rep.passed, [c.check_id for c in rep.checks if not c.passed]


def test_v0c_detects_R0_pair(suite3):
    c = check(suite3[0], "V0c")
    assert c.details["F_3^2"]["R0,S0 geometric points"] == 4
    assert c.details["F_3"]["R0,S0 geometric points"] == 0


def test_v1e_three_conjugate_pairs(suite3):
    c = check(suite3[0], "V1e")
    info = c.details["F_3^2"]
    assert info["singular points on pi=0"] == 6
    assert info["conjugate pairs"] is True


def test_v1c_degenerate_fibers(suite3):
    c = check(suite3[0], "V1c")
    for key in ("C1 F_3", "C1 F_3^2", "D1 F_3", "D1 F_3^2"):
        assert c.details[key]["degenerate fibers over"] == ["(0:1)", "(1:2)"]


def test_v2a_no_singular_point_on_model(suite3):
    c = check(suite3[0], "V2a")
    assert c.passed
    assert all(c.details[f]["singular points on pi=0"] == 0 for f in ("F_3", "F_3^2"))


def test_v2c_fibers_nonempty(suite3):
    c = check(suite3[0], "V2c")
    for name in ("R", "S", "M"):
        assert c.details["F_3^2"][name]["fiber sizes"] == [100, 100]


def test_p7_examples(suite7):
    rep, _ = suite7
    assert check(rep, "V0b").passed
    assert check(rep, "V1d").details["F_7^2"]["equal"] is True
    assert rep.passed


def test_every_report_names_its_fields(suite3):
    rep, _ = suite3
    for c in rep.checks[:12]:
        assert c.fields == ["F_3", "F_9 = F_3[x]/(x^2 + 1)"]
    assert "F_p[[pi]]" in rep.caveat
    assert "fields searched" in rep.to_text()


def test_reports_are_deterministic(suite3):
    again = depezzo.run_all(P3)
    assert again.to_json() == suite3[0].to_json()
    obj = json.loads(again.to_json())
    assert "seconds" not in obj["checks"][0]
    assert "seconds" in json.loads(again.to_json(include_timing=True))["checks"][0]


def test_stage_reports_standalone():
    for fn, n in ((depezzo.verify_stage0, 3), (depezzo.verify_stage1, 5), (depezzo.verify_stage2, 4)):
        rep = fn(ModelParams(p=3, e_max=1))
        assert len(rep.checks) == n


def test_failure_is_reported_with_witnesses():
    rep = depezzo.verify_scheme(SchemeSpec(depezzo.ambient_E0(), build_X0(P3).equations, 3, "X0"), P3)
    (c,) = rep.checks
    assert not c.passed and c.witnesses
    assert "FAIL" in rep.to_text()


def test_fixture_checks():
    rep = depezzo.verify_fixture()
    assert [c.status for c in rep.checks] == ["pass"] * 3
