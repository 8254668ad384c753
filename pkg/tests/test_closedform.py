from importlib import resources

import numpy as np
import pytest

import helpers
from trischeme import closedform as cf
from trischeme.actions import ConstraintError


def test_sym_alt():
    assert cf.predict_sym_alt(7) == cf.PredictedScheme(7, 5, (5,))
    assert cf.predict_sym_alt(4, True) == cf.PredictedScheme(4, 6, (1, 1))
    assert cf.predict_sym_alt(5, True).size == 5
    with pytest.raises(ConstraintError):
        cf.predict_sym_alt(3, True)


def test_projective_sizes():
    assert cf.predict_projective(2, 8) == cf.PredictedScheme(9, 5, (7,))
    assert cf.predict_projective(3, 2, "PSL") == cf.PredictedScheme(7, 6, (1, 4))
    assert cf.predict_projective(2, 11, "PSL") == cf.PredictedScheme(12, 6, (5, 5))
    with pytest.raises(ConstraintError):
        cf.predict_projective(2, 9, "PSigmaL")
    with pytest.raises(ConstraintError):
        cf.predict_projective(2, 10)


def test_pgl_tensor_values():
    t = cf.predict_pgl_tensor(3, 2)
    assert t.value("x", "x", "x", "w") == 4
    assert t.value("x", "x", "x", "x") == 1
    for order in (("w", "x", "x"), ("x", "w", "x"), ("x", "x", "w")):
        assert t.value(*order, "x") == 1
    for order in (("w", "w", "x"), ("w", "x", "w"), ("x", "w", "w")):
        assert all(t.value(*order, l) == 0 for l in t.all_names)


def test_psl2_tensor_values():
    assert cf.predict_psl2_tensor(13).value("w", "w", "w", "w") == 2
    assert cf.predict_psl2_tensor(7).value("w", "w", "w", "s") == 2
    assert cf.predict_psl2_tensor(5).value("w", "w", "w", "w") == 0
    with pytest.raises(ConstraintError):
        cf.predict_psl2_tensor(8)


@pytest.mark.parametrize("n", [5, 7, 9, 11, 13, 25, 27])
def test_psl2_tensor_symmetric(n):
    vals, _ = cf.predict_psl2_tensor(n).dense()
    nt = vals[4:, 4:, 4:, :]
    for axes in ((1, 0, 2, 3), (0, 2, 1, 3), (2, 1, 0, 3)):
        assert np.array_equal(nt, nt.transpose(axes))


def test_agl_h_sizes():
    assert cf.predict_agl_h(1, 2, 3, 1) == cf.PredictedScheme(8, 6, (3, 3))
    assert cf.predict_agl_h(1, 5) == cf.PredictedScheme(5, 7, (1, 1, 1))
    assert cf.predict_agl_h(2, 3) == cf.PredictedScheme(9, 6, (1, 6))
    assert cf.agl_h_orbit_count(2, 3, 1) == 4
    with pytest.raises(ConstraintError):
        cf.predict_agl_h(1, 2, 4, 3)


def test_agl_h_tensor_corrected_examples():
    t = cf.predict_agl_h_tensor(1, 5)
    names = {c: n for n, c in t.field_codes.items()}
    three, four = names[3], names[4]
    assert t.value(three, "I2", four, "I2") == 1
    assert t.value(three, three, "I3", "I3") == 1
    t2 = cf.predict_agl_h_tensor(2, 3)
    a = [n for n in t2.names if n != cf.STAR]
    for b in a:
        for c in a:
            for order in ((b, c, cf.STAR), (b, cf.STAR, c), (cf.STAR, b, c)):
                assert all(t2.value(*order, l) == 0 for l in t2.all_names)


def test_unitary_symplectic_and_rank_one():
    assert cf.predict_pgu3(2) == cf.PredictedScheme(9, 7, (1, 3, 3))
    assert cf.predict_psu3(2) == cf.PredictedScheme(9, 11, (1,) * 7)
    assert cf.predict_pgu3(4) == cf.PredictedScheme(65, 9, (3, 15, 15, 15, 15))
    with pytest.raises(ConstraintError):
        cf.predict_psu3(3)
    assert cf.predict_sp(2, "-") == cf.PredictedScheme(6, 5, (4,))
    assert cf.predict_sp(2, "+") == cf.PredictedScheme(10, 6, (4, 4))
    assert cf.predict_sp(3, "-").valencies == (10, 16)
    assert cf.predict_suzuki(8).size == 13
    ree = cf.predict_ree(3)
    assert ree.size == 18 and ree.valency_pairs() == [(1, 2), (2, 12)]
    ree27 = cf.predict_ree(27)
    assert ree27.size == 762 and dict(ree27.valency_pairs())[13] == 2
    for bad in (lambda: cf.predict_suzuki(4), lambda: cf.predict_ree(9), lambda: cf.predict_sp(1, "+")):
        with pytest.raises(ConstraintError):
            bad()


def test_predicted_scheme_rejects_bad_sums():
    with pytest.raises(ValueError):
        cf.PredictedScheme(10, 6, (4, 3))
    with pytest.raises(ValueError):
        cf.PredictedScheme(10, 5, (4, 4))


def test_predicted_tensor_validation():
    with pytest.raises(ValueError):
        cf.PredictedTensor(("w",), {("w", "w", "q", "w"): 1})
    with pytest.raises(ValueError):
        cf.PredictedTensor(("w",), {("w", "w", "w", "w"): -1})
    with pytest.raises(ValueError):
        cf.PredictedTensor(("w",), {("I1", "I2", "w", "w"): 1})


def test_sporadic_rows():
    m23 = cf.sporadic_row("M(23)")
    assert m23.scheme == cf.PredictedScheme(23, 5, (21,))
    hs = cf.sporadic_row("HS")
    assert hs.scheme.valencies == (12, 72, 90)
    assert hs.tensor.value("R4", "R4", "R6", "R5") == 4
    assert cf.sporadic_row("Co3").tensor.value("R5", "R5", "R5", "R5") == 30
    with pytest.raises(KeyError):
        cf.sporadic_row("J2")
    assert len(cf.table_rows(1)) == 10
    with pytest.raises(KeyError):
        cf.table_rows(6)


def test_every_predicted_scheme_sums_correctly():
    for row in cf.sporadic_table().values():
        assert sum(row.scheme.valencies) == row.scheme.degree - 2


def test_embedded_tables_match_text_copy():
    text = (resources.files("trischeme") / "data" / "sporadic_tables.txt").read_text()
    sizes, entries = {}, {}
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        kind, name, key, value = line.split("\t")
        if kind == "size":
            sizes[name] = (int(key), tuple(int(v) for v in value.split(",")))
        else:
            i, j, k, l = key.split()
            entries.setdefault(name, {})[f"{i}{j}{k}^{l}"] = int(value)
    assert sizes == {n: (size, vals) for n, (_, size, vals) in cf.SPORADIC_SIZES.items()}
    assert entries == {n: e for n, (_, e) in cf.SPORADIC_ENTRIES.items()}


def test_single_relation_tensor():
    t = cf.predict_single_relation_tensor(24)
    assert t.value("R4", "R4", "R4", "R4") == 21
    assert t.value("I1", "R4", "R4", "I1") == 22


def test_match_reports_perturbation():
    s, t = helpers.scheme("PGL(3,2)"), helpers.tensor("PGL(3,2)")
    act = helpers.action("PGL(3,2)")
    pred = cf.predict_pgl_tensor(3, 2)
    anchors = cf.anchor_labels(s, act, pred)
    ok = cf.match_predicted(s, t, cf.predict_projective(3, 2), pred, anchors)
    assert ok.passed and ok.entries_compared > 0
    bad = cf.match_predicted(s, t, cf.predict_projective(3, 2), pred.perturbed(("x", "x", "x", "x")), anchors)
    assert not bad.passed and bad.discrepancy


def test_match_without_anchors_finds_bijection():
    row = cf.sporadic_row("PSL(2,11) deg 11")
    rep = cf.match_predicted(helpers.scheme(row.name), helpers.tensor(row.name), row.scheme, row.tensor)
    assert rep.passed
    assert sorted(rep.mapping) == ["R4", "R5"]


def test_size_mismatch_reported():
    rep = cf.match_predicted(helpers.scheme("S5"), None, cf.predict_sym_alt(6))
    assert not rep.passed and not rep.size_ok
