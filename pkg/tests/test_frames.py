import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eigenlift.errors import AmbiguousMatch, DegenerateSpectrum, PunctureHit, SizeMismatch, TooLarge
from eigenlift.families import random_hermitian_family
from eigenlift.frames import (
    HERMITIAN,
    EigenFrame,
    Permutation,
    SpectralFamily,
    apply_permutation,
    enumerate_fiber,
    frame_at,
    match_frames,
    overlap_matrix,
)
from eigenlift.spin import bloch_projector, projector_to_bloch

perms = st.integers(1, 6).flatmap(lambda n: st.permutations(range(n)).map(Permutation))


def same_size_perms(k):
    return st.integers(1, 6).flatmap(
        lambda n: st.tuples(*[st.permutations(range(n)).map(Permutation)] * k)
    )


@given(same_size_perms(3))
def test_group_laws(triple):
    a, b, c = triple
    e = Permutation.identity(a.size)
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ e == a == e @ a
    assert a @ a.inverse() == e == a.inverse() @ a
    assert (a @ b).inverse() == b.inverse() @ a.inverse()
    assert a ** a.order() == e


def test_permutation_basics():
    t = Permutation.transposition(3, 0, 2)
    assert t.images == (2, 1, 0) and t(0) == 2 and str(t) == "(0 2)"
    assert Permutation.cycle(3).images == (1, 2, 0) and str(Permutation.cycle(3)) == "(0 1 2)"
    assert Permutation.cycle(3) ** -1 == Permutation.cycle(3, -1)
    assert Permutation.transposition(2, 0, 1) ** 5 == Permutation((1, 0))
    with pytest.raises(ValueError):
        Permutation((0, 0))
    with pytest.raises(SizeMismatch):
        Permutation((1, 0)) @ Permutation((0, 1, 2))


def diag_family(values):
    return SpectralFamily(HERMITIAN, lambda x: np.diag(values).astype(complex), dim=1)


def test_frame_at_diagonal():
    f = frame_at(diag_family([0.0, 1.0]), [0.3])
    np.testing.assert_array_equal(f.projectors[0], np.diag([1, 0]))
    np.testing.assert_array_equal(f.eigenvalues, [0.0, 1.0])
    assert f.completeness_error() == 0.0 and f.orthogonality_error() == 0.0


def test_frame_at_degenerate():
    with pytest.raises(DegenerateSpectrum) as err:
        frame_at(diag_family([1.0, 1.0]), [0.0])
    assert err.value.gap == 0.0


def test_spin_frame_at_reference_point(spin):
    f = frame_at(spin, (np.pi, 0.0))
    np.testing.assert_allclose(f.eigenvalues, [-np.pi / 2, np.pi / 2], atol=1e-15)
    np.testing.assert_allclose(projector_to_bloch(f[0]), [1, 0, 0], atol=1e-14)
    np.testing.assert_allclose(projector_to_bloch(f[1]), [-1, 0, 0], atol=1e-14)
    np.testing.assert_allclose(f.operator(), spin((np.pi, 0.0)), atol=1e-12)


def test_spin_origin_is_puncture(spin):
    with pytest.raises(PunctureHit):
        frame_at(spin, (0.0, 0.0))


def test_frames_are_immutable(spin):
    f = frame_at(spin, (1.0, 2.0))
    with pytest.raises(ValueError):
        f.projectors[0, 0, 0] = 0.0


def test_apply_permutation_slots(spin):
    f = frame_at(spin, (1.0, 2.0))
    assert apply_permutation(f, Permutation.identity(2)).same_as(f, atol=0.0)
    g = apply_permutation(f, Permutation((1, 0)))
    assert np.array_equal(g[0], f[1]) and np.array_equal(g[1], f[0])
    np.testing.assert_array_equal(g.eigenvalues, f.eigenvalues[::-1])
    with pytest.raises(SizeMismatch):
        apply_permutation(f, Permutation.identity(3))


def test_apply_then_inverse_restores(rng):
    fam = random_hermitian_family(rng, 5)
    f = frame_at(fam, (0.2, -0.4))
    for _ in range(100):
        s = Permutation(tuple(rng.permutation(5)))
        assert apply_permutation(apply_permutation(f, s), s.inverse()).same_as(f, atol=0.0)


def test_action_composes(rng):
    fam = random_hermitian_family(rng, 4)
    f = frame_at(fam, (0.1, 0.1))
    for _ in range(50):
        s1 = Permutation(tuple(rng.permutation(4)))
        s2 = Permutation(tuple(rng.permutation(4)))
        lhs = apply_permutation(apply_permutation(f, s1), s2)
        assert lhs.same_as(apply_permutation(f, s1 @ s2), atol=0.0)


@pytest.mark.parametrize("n,count", [(2, 2), (3, 6), (4, 24)])
def test_fiber_size_and_uniqueness(rng, n, count):
    f = frame_at(random_hermitian_family(rng, n), (0.0, 0.0))
    fiber = enumerate_fiber(f)
    assert len(fiber) == count
    keys = {tuple(np.round(fr.eigenvalues, 12)) for _, fr in fiber}
    assert len(keys) == count
    for sigma, member in fiber:
        assert np.array_equal(member.point, f.point)
        hits = [s for s, _ in fiber if apply_permutation(f, s).same_as(member, atol=0.0)]
        assert hits == [sigma]


def test_fiber_too_large(rng):
    f = frame_at(random_hermitian_family(rng, 7), (0.0, 0.0))
    with pytest.raises(TooLarge):
        enumerate_fiber(f)


def test_match_identity_and_relabeling(rng):
    f = frame_at(random_hermitian_family(rng, 4), (0.3, 0.1))
    sigma, ov = match_frames(f, f)
    assert sigma.is_identity() and ov == pytest.approx(1.0, abs=1e-12)
    for tau in itertools.permutations(range(4)):
        tau = Permutation(tau)
        sigma, ov = match_frames(f, apply_permutation(f, tau))
        assert sigma == tau and ov == pytest.approx(1.0, abs=1e-12)


def test_match_small_spin_step(spin):
    a = frame_at(spin, (np.pi, 0.0))
    b = frame_at(spin, (np.pi * np.cos(0.1), np.pi * np.sin(0.1)))
    sigma, ov = match_frames(a, b)
    assert sigma.is_identity() and ov > 0.99


def test_match_inverse_symmetry(spin, rng):
    for _ in range(50):
        x = rng.uniform(-4, 4, 2)
        y = x + rng.normal(scale=0.3, size=2)
        a, b = frame_at(spin, x), frame_at(spin, y)
        try:
            s_ab, _ = match_frames(a, b)
            s_ba, _ = match_frames(b, a)
        except AmbiguousMatch:
            continue
        assert s_ab == s_ba.inverse()


def test_match_ambiguous():
    pa = bloch_projector([1.0, 0.0, 0.0])
    pz = bloch_projector([0.0, 0.0, 1.0])
    a = EigenFrame((0.0,), [pa, np.eye(2) - pa], [0.0, 1.0])
    b = EigenFrame((0.0,), [pz, np.eye(2) - pz], [0.0, 1.0])
    with pytest.raises(AmbiguousMatch) as err:
        match_frames(a, b)
    np.testing.assert_allclose(err.value.overlaps, 0.5)


def test_overlaps_doubly_stochastic(rng):
    for n in (2, 3, 5):
        fam = random_hermitian_family(rng, n)
        for _ in range(20):
            a = frame_at(fam, rng.normal(size=2))
            b = frame_at(fam, rng.normal(size=2))
            o = overlap_matrix(a, b)
            assert np.all(o >= -1e-12)
            np.testing.assert_allclose(o.sum(axis=0), 1.0, atol=1e-9)
            np.testing.assert_allclose(o.sum(axis=1), 1.0, atol=1e-9)
