import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import helpers
from trischeme import closedform as cf
from trischeme.actions import build_agl_h, build_projective, suzuki_stabilizer, unitary_stabilizer
from trischeme.permgrp import PermGroup, random_element, symmetric_group
from trischeme.scheme import (
    S3,
    TRIVIAL,
    CapExceeded,
    IntersectionTensor,
    NotTwoTransitive,
    build_scheme,
    build_scheme_from_stabilizer,
    classify_many,
    classify_triple,
    intersection_number,
    intersection_tensor,
    is_commutative,
    label_cube,
    s3_image,
    same_partition,
    scheme_to_dict,
    triple_orbit_oracle,
    valencies,
    valency_multiset,
    verify_axioms,
)

PROPERTY_SCHEMES = helpers.SMALL + ["PGL(3,3)", "AGL_H(1,16;2)", "M(11)", "PSL(2,11) deg 11", "A7 deg 15"]
ALL_TENSORS = PROPERTY_SCHEMES + ["HS", "Co3", "Sp(6,2)+", "PGL(4,2)"]


def counts_at(s, x, y, z):
    """Direct count of p_ijk at one triple, over every w."""
    w = np.arange(s.degree)
    out = np.zeros((s.size,) * 3, dtype=np.int64)
    i = classify_many(s, w, np.full_like(w, y), np.full_like(w, z))
    j = classify_many(s, np.full_like(w, x), w, np.full_like(w, z))
    k = classify_many(s, np.full_like(w, x), np.full_like(w, y), w)
    np.add.at(out, (i, j, k), 1)
    return out


def matched(name):
    row = cf.sporadic_row(name)
    rep = cf.match_predicted(helpers.scheme(name), helpers.tensor(name), row.scheme, row.tensor)
    assert rep.passed
    return {int(k[1:]): v for k, v in rep.mapping.items() if k.startswith("R")}


# --- construction ------------------------------------------------------------------


def test_symmetric_group_scheme():
    s = helpers.scheme("S5")
    assert s.max_label == 4
    assert s.third_valency[4] == 3
    assert valencies(s)[4] == (3, 3, 3)


def test_pgl32_and_agl17_shapes():
    s = helpers.scheme("PGL(3,2)")
    assert s.max_label == 5 and valency_multiset(s) == [1, 4]
    assert build_scheme(build_agl_h(1, 7).group).size == 9


def test_agl23_size_frozen_from_oracle():
    # class count of the brute-force orbit partition, recorded once: 6
    oracle = triple_orbit_oracle(helpers.action("AGL(2,3)").group)
    assert int(oracle.max()) + 1 == 6
    s = helpers.scheme("AGL(2,3)")
    assert s.size == 6 and valency_multiset(s) == [1, 6]


def test_labels_follow_discovery_order():
    s = helpers.scheme("PGL(3,3)")
    firsts = [min(s.orbit(i)) for i in s.nontrivial]
    assert firsts == sorted(firsts)
    assert s.base == (0, 1)
    assert list(s.orbit_label[:2]) == [-1, -1]


def test_valency_sums_in_every_position():
    for name in PROPERTY_SCHEMES:
        s = helpers.scheme(name)
        vals = valencies(s)[TRIVIAL:]
        for pos in range(3):
            assert sum(v[pos] for v in vals) == s.degree - 2, name


def test_not_two_transitive():
    c5 = PermGroup.from_images(5, [[1, 2, 3, 4, 0]])
    with pytest.raises(NotTwoTransitive):
        build_scheme(c5)


@pytest.mark.parametrize(
    "st, size, vals",
    [
        (suzuki_stabilizer(8), 13, [7] * 9),
        (unitary_stabilizer(2), 7, [1, 3, 3]),
    ],
)
def test_stabilizer_route(st, size, vals):
    s = build_scheme_from_stabilizer(st)
    assert s.size == size and valency_multiset(s) == vals
    assert not s.full
    a, b = s.base
    c = s.orbit(4)[0]
    assert classify_triple(s, a, b, c) == 4
    assert classify_triple(s, a, a, a) == 0
    with pytest.raises(ValueError):
        intersection_tensor(s)


def test_stabilizer_route_rejects_non_group():
    st = suzuki_stabilizer(8)
    with pytest.raises(ValueError):
        build_scheme_from_stabilizer(type(st)(st.domain, st.base, st.maps[:3]))


# --- classification ----------------------------------------------------------------


def test_trivial_patterns():
    s = helpers.scheme("S5")
    assert classify_triple(s, 4, 4, 4) == 0
    assert classify_triple(s, 0, 3, 3) == 1
    assert classify_triple(s, 3, 0, 3) == 2
    assert classify_triple(s, 3, 3, 0) == 3
    with pytest.raises(ValueError):
        classify_triple(s, 0, 1, 5)


def test_base_triples_get_orbit_labels():
    s = helpers.scheme("PGL(3,3)")
    a, b = s.base
    for c in range(2, s.degree):
        assert classify_triple(s, a, b, c) == s.orbit_label[c]


@pytest.mark.parametrize("name", ["S4", "AGL(1,5)", "PSL(2,9)"])
def test_oracle_orbit_counts(name):
    # S4: 3-transitive, so 4 trivial + 1; AGL(1,5): n + 2; PSL(2,9): 6 for odd n
    expected = {"S4": 5, "AGL(1,5)": 7, "PSL(2,9)": 6}[name]
    oracle = triple_orbit_oracle(helpers.action(name).group)
    assert int(oracle.max()) + 1 == expected
    assert same_partition(label_cube(helpers.scheme(name)), oracle)


def test_psl24_and_pgl24_give_the_same_partition():
    a = build_scheme(build_projective(2, 4, "PSL").group)
    b = build_scheme(build_projective(2, 4, "PGL").group)
    assert same_partition(label_cube(a), label_cube(b))


def test_same_partition_detects_merge():
    p = np.array([0, 0, 1, 2])
    assert same_partition(p, np.array([5, 5, 3, 4]))
    assert not same_partition(p, np.array([0, 0, 1, 1]))
    assert not same_partition(p, np.array([0, 1, 1, 2]))


def test_caps():
    s = helpers.scheme("PGL(2,13)")
    with pytest.raises(CapExceeded):
        label_cube(s, cap=10)
    with pytest.raises(CapExceeded):
        triple_orbit_oracle(helpers.action("PGL(2,13)").group, cap=10)
    with pytest.raises(CapExceeded):
        verify_axioms(helpers.scheme("HS"), exhaustive=True)


@settings(max_examples=60)
@given(st.sampled_from(PROPERTY_SCHEMES), st.integers(0, 2**32 - 1))
def test_labels_are_group_invariant(name, seed):
    rng = np.random.default_rng(seed)
    s, g = helpers.scheme(name), helpers.action(name).group
    x, y, z = rng.integers(0, s.degree, size=(3, 25))
    h = random_element(g, rng).images
    assert np.array_equal(classify_many(s, x, y, z), classify_many(s, h[x], h[y], h[z]))


@given(st.sampled_from(PROPERTY_SCHEMES), st.sampled_from(S3), st.sampled_from(S3))
def test_coordinate_permutations_form_an_action(name, sigma, tau):
    s = helpers.scheme(name)
    composed = tuple(sigma[tau[i]] for i in range(3))
    for i in s.labels:
        assert s3_image(s, s3_image(s, i, sigma), tau) == s3_image(s, i, composed)
    assert all(s3_image(s, i, (0, 1, 2)) == i for i in s.labels)


def test_trivial_relations_permute_among_themselves():
    s = helpers.scheme("PGL(2,7)")
    assert s3_image(s, 1, (1, 2, 0)) in (2, 3)
    assert {s3_image(s, i, sig) for i in range(TRIVIAL) for sig in S3} == {0, 1, 2, 3}


# --- intersection numbers -----------------------------------------------------------


def test_intersection_number_examples():
    assert intersection_number(helpers.scheme("S5"), 4, 4, 4, 4) == 2
    m = matched("Co3")
    assert helpers.tensor("Co3")[m[4], m[4], m[4], m[4]] == 105


def test_pgl27_w_cube():
    act, s, t = helpers.action("PGL(2,7)"), helpers.scheme("PGL(2,7)"), helpers.tensor("PGL(2,7)")
    w = cf.anchor_labels(s, act, cf.predict_pgl_tensor(2, 7))["w"]
    assert t[w, w, w, w] == 5


def test_sporadic_table_entries():
    m = matched("HS")
    t = helpers.tensor("HS")
    assert t[m[5], m[5], m[5], m[5]] == 41 and t[m[5], m[5], m[5], m[6]] == 60
    m = matched("A7 deg 15")
    t = helpers.tensor("A7 deg 15")
    assert t[m[5], m[5], m[5], m[4]] == 12 and t[m[5], m[5], m[5], m[5]] == 9


@settings(max_examples=30)
@given(st.sampled_from(PROPERTY_SCHEMES), st.integers(0, 2**32 - 1))
def test_representative_independence(name, seed):
    rng = np.random.default_rng(seed)
    s, t = helpers.scheme(name), helpers.tensor(name)
    cube = label_cube(s)
    for _ in range(4):
        x, y, z = rng.integers(0, s.degree, size=3)
        l = int(cube[x, y, z])
        assert np.array_equal(counts_at(s, x, y, z), t.values[..., l])


def test_tensor_bounds_and_subalgebra_closure():
    for name in ALL_TENSORS:
        s, v = helpers.scheme(name), helpers.tensor(name).values
        assert v.min() >= 0 and v.max() <= s.degree
        assert not v[TRIVIAL:, TRIVIAL:, TRIVIAL:, :TRIVIAL].any(), name


def test_trivial_product_pattern():
    for name in ALL_TENSORS:
        v = helpers.tensor(name).values
        nt = slice(TRIVIAL, None)
        for pos, trivial in ((0, 1), (1, 2), (2, 3)):
            for t in range(TRIVIAL):
                idx = [nt, nt, nt]
                idx[pos] = t
                block = v[tuple(idx)]
                allowed = np.zeros(block.shape[-1], dtype=bool)
                if t == trivial:
                    allowed[trivial] = True
                assert not block[..., ~allowed].any(), (name, pos, t)


def test_commutativity_check():
    assert is_commutative(helpers.tensor("HS"))
    assert is_commutative(helpers.tensor("PGL(3,2)"))
    vals = np.zeros((6,) * 4, dtype=np.int64)
    vals[4, 4, 5, 5] = 1
    assert not is_commutative(IntersectionTensor(5, 5, vals))


# --- axioms --------------------------------------------------------------------------


@pytest.mark.parametrize("name", ["PGL(2,5)", "AGL(2,3)", "Sp(4,2)-"])
def test_axioms_pass_exhaustively(name):
    rep = verify_axioms(helpers.scheme(name), helpers.action(name).group, exhaustive=True)
    assert rep.passed and rep.exhaustive
    assert set(rep.checks) >= {"condition1_valency", "condition2_regularity", "condition3_s3", "condition4_trivial"}


def test_axioms_sampled_on_large_scheme():
    rep = verify_axioms(helpers.scheme("HS"), helpers.action("HS").group, exhaustive=False, samples=30, seed=7)
    assert rep.passed and rep.seed == 7


def _corrupted(name):
    s = helpers.scheme(name)
    lab = s.orbit_label.copy()
    i4, i5 = np.flatnonzero(lab == 4)[0], np.flatnonzero(lab == 5)[0]
    lab[i4], lab[i5] = 5, 4
    return dataclasses.replace(s, orbit_label=lab)


@pytest.mark.parametrize("exhaustive", [True, False])
def test_corrupted_label_map_fails_regularity(exhaustive):
    bad = _corrupted("PGL(3,3)")
    rep = verify_axioms(bad, helpers.action("PGL(3,3)").group, exhaustive=exhaustive, samples=100)
    assert not rep.passed
    assert not rep.checks["condition2_regularity"]
    assert "condition2_regularity" in rep.details


def test_scheme_to_dict_is_plain():
    d = scheme_to_dict(helpers.scheme("PSL(2,7)"))
    assert d["size"] == 6 and d["base"] == [0, 1]
    assert [r["label"] for r in d["relations"]] == list(range(6))
    assert d["relations"][0]["representative"] == [0, 0, 0]
    assert sum(r["valencies"][2] for r in d["relations"][TRIVIAL:]) == 6


def test_symmetric_group_small():
    s = build_scheme(symmetric_group(3))
    assert s.size == 5 and valency_multiset(s) == [1]
