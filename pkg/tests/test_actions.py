import math

import numpy as np
import pytest

from trischeme.actions import (
    ActionSpec,
    ConstraintError,
    Family,
    GroupFileError,
    build_agl_h,
    build_pgu3,
    build_projective,
    build_psu3,
    build_sp2k2,
    build_sym_alt,
    load_group_file,
    load_sporadic,
    ree_stabilizer,
    suzuki_stabilizer,
    unitary_stabilizer,
    write_group_file,
)
from trischeme.permgrp import group_order, is_two_transitive


def gl_order(k, n):
    return math.prod(n**k - n**i for i in range(k))


def sp_order(k):
    return 2 ** (k * k) * math.prod(4**i - 1 for i in range(1, k + 1))


@pytest.mark.parametrize(
    "build, degree, order",
    [
        (lambda: build_sym_alt(6), 6, 720),
        (lambda: build_sym_alt(6, True), 6, 360),
        (lambda: build_projective(2, 7), 8, gl_order(2, 7) // 6),
        (lambda: build_projective(2, 9, "PSL"), 10, gl_order(2, 9) // 8 // 2),
        (lambda: build_projective(3, 4, "PSL"), 21, gl_order(3, 4) // 3 // 3),
        (lambda: build_projective(2, 8, "PGammaL"), 9, gl_order(2, 8) // 7 * 3),
        (lambda: build_projective(2, 9, "PSigmaL"), 10, gl_order(2, 9) // 8 // 2 * 2),
        (lambda: build_projective(4, 2), 15, gl_order(4, 2)),
        (lambda: build_agl_h(1, 7), 7, 42),
        (lambda: build_agl_h(2, 3), 9, 9 * gl_order(2, 3)),
        (lambda: build_agl_h(1, 2, 4, 1), 16, 16 * 15 * 4),
        (lambda: build_agl_h(1, 2, 4, 2), 16, 16 * 15 * 2),
        (lambda: build_pgu3(3), 28, 27 * 28 * 8),
        (lambda: build_psu3(5), 126, 125 * 126 * 24 // 3),
        (lambda: build_sp2k2(2, "+"), 10, sp_order(2)),
        (lambda: build_sp2k2(3, "-"), 28, sp_order(3)),
    ],
)
def test_orders_and_two_transitivity(build, degree, order):
    act = build()
    assert act.degree == degree
    assert group_order(act.group) == order
    assert is_two_transitive(act.group)


@pytest.mark.parametrize(
    "st, degree, order",
    [
        (suzuki_stabilizer(8), 65, 7),
        (suzuki_stabilizer(32), 1025, 31),
        (ree_stabilizer(3), 28, 2),
        (ree_stabilizer(27), 19684, 26),
        (unitary_stabilizer(4), 65, 15),
        (unitary_stabilizer(5, special=True), 126, 8),
    ],
)
def test_stabilizer_map_sets(st, degree, order):
    assert len(st.domain) == degree
    assert len(st.maps) == order
    assert st.is_closed()


def test_stabilizer_closure_detects_missing_map():
    st = suzuki_stabilizer(8)
    broken = type(st)(st.domain, st.base, st.maps[:-1])
    assert not broken.is_closed()


def test_projective_points_are_named():
    assert set(build_projective(3, 3).points) == {"u", "v", "w", "x"}
    assert set(build_projective(2, 5, "PSL").points) == {"u", "v", "w", "s"}
    for k, n in ((3, 3), (2, 5)):
        pts = build_projective(k, n).points
        assert len(set(pts.values())) == len(pts)


@pytest.mark.parametrize(
    "call",
    [
        lambda: build_sym_alt(2),
        lambda: build_sym_alt(3, True),
        lambda: build_projective(1, 5),
        lambda: build_projective(2, 6),
        lambda: build_agl_h(1, 4),
        lambda: build_agl_h(1, 2, 4, 3),
        lambda: build_sp2k2(1, "+"),
        lambda: build_sp2k2(2, "x"),
        lambda: suzuki_stabilizer(16),
        lambda: ree_stabilizer(9),
    ],
)
def test_constraint_errors(call):
    with pytest.raises(ConstraintError):
        call()


def test_group_file_roundtrip(tmp_path):
    g = build_projective(2, 5).group
    path = tmp_path / "pgl25.txt"
    write_group_file(path, g)
    act = load_group_file(path)
    assert act.degree == 6
    assert group_order(act.group) == group_order(g)


@pytest.mark.parametrize(
    "text",
    ["", "deg 3\n0 1 2\n", "degree 3\n0 1\n", "degree 3\n0 0 1\n", "degree 3\n0 x 1\n"],
)
def test_group_file_errors(tmp_path, text):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    with pytest.raises(GroupFileError):
        load_group_file(path)
    with pytest.raises(GroupFileError):
        load_group_file(tmp_path / "missing.txt")


@pytest.mark.parametrize(
    "name, degree, order",
    [
        ("M(11)", 11, 7920),
        ("M(11) deg 12", 12, 7920),
        ("M(12)", 12, 95040),
        ("M(22)", 22, 443520),
        ("M(23)", 23, 10200960),
        ("M(24)", 24, 244823040),
        ("PSL(2,11) deg 11", 11, 660),
        ("A7 deg 15", 15, 2520),
        ("HS", 176, 44352000),
        ("Co3", 276, 495766656000),
    ],
)
def test_bundled_sporadic_actions(name, degree, order):
    act = load_sporadic(name)
    assert act.degree == degree
    assert group_order(act.group) == order
    assert is_two_transitive(act.group)


def test_unknown_sporadic():
    with pytest.raises(KeyError):
        load_sporadic("Monster")


def test_action_spec_builds_and_validates():
    act = ActionSpec(Family.AGL, k=1, p=2, alpha=3, frak_a=1).build()
    assert group_order(act.group) == 8 * 7 * 3
    st = ActionSpec(Family.PGU, q=3, route="stabilizer").build()
    assert st.group is None and st.stabilizer is not None
    for bad in (
        ActionSpec(Family.PGL, k=2),
        ActionSpec(Family.AGL, k=1, p=4),
        ActionSpec(Family.SP, k=2, epsilon="0"),
        ActionSpec(Family.SPORADIC, name="J1"),
        ActionSpec(Family.PGU, q=3, route="sideways"),
    ):
        with pytest.raises(ConstraintError):
            bad.validate()


def test_labeled_domain_inverse():
    act = build_agl_h(2, 3)
    dom = act.domain
    assert all(dom.index_of(dom[i]) == i for i in range(len(dom)))
    assert np.array_equal(np.sort([dom.index_of(e) for e in dom.elements]), np.arange(9))
