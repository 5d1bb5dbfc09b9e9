import itertools

import numpy as np
import pytest

from eigenlift.errors import (
    DegeneracyOnPath,
    DepthExceeded,
    EndpointMismatch,
    InvalidPath,
    NonAbelianGenerators,
    NotClosed,
    PunctureOnPath,
)
from eigenlift.families import clock_family, random_hermitian_family
from eigenlift.frames import Permutation, apply_permutation, frame_at, match_frames
from eigenlift.paths import (
    Path,
    circle,
    compare_paths,
    concat,
    equivariance_holds,
    lift_path,
    line,
    monodromy,
    predict_monodromy,
    random_loop,
    random_open_path,
    reverse,
    winding_number,
)
from eigenlift.spin import projector_to_bloch

SWAP = Permutation((1, 0))
ID2 = Permutation.identity(2)


def test_concat_joins_once():
    p = concat(Path([(0, 1), (1, 1)]), Path([(1, 1), (1, 2)]))
    np.testing.assert_array_equal(p.samples, [(0, 1), (1, 1), (1, 2)])
    with pytest.raises(EndpointMismatch):
        concat(Path([(0, 1), (1, 1)]), Path([(1, 2), (1, 3)]))


def test_reverse():
    c = Path([(0, 0), (1, 0), (2, 1)])
    assert reverse(reverse(c)) == c
    two = reverse(Path([(0, 0), (1, 0)]))
    np.testing.assert_array_equal(two.samples, [(1, 0), (0, 0)])
    assert concat(c, reverse(c)).is_closed
    assert not c.is_closed


def test_path_validation():
    with pytest.raises(InvalidPath):
        Path([(0, 0)])
    with pytest.raises(InvalidPath):
        Path([(0, 0), (0, 0), (1, 0)])
    with pytest.raises(InvalidPath):
        Path([(0, 0), (np.nan, 0)])
    assert Path([(1, 2), (1, 2)]).is_constant


def test_points_at_and_refinement():
    p = Path([(0, 0), (1, 0), (1, 3)])
    np.testing.assert_allclose(p.points_at([0, 0.25, 0.5, 1]), [(0, 0), (1, 0), (1, 1), (1, 3)])
    r = p.refined(4)
    assert len(r) == 9 and r.length() == pytest.approx(4.0)
    np.testing.assert_array_equal(r.samples[::4], p.samples)
    loop = circle(1.0, n=16)
    assert loop.refined(3).is_closed


def test_comparison_loop_of_presets(presets):
    loop = concat(presets["C_a"], reverse(presets["C_c"]))
    assert loop.is_closed and abs(winding_number(loop)) == 1
    assert winding_number(concat(presets["C_a"], reverse(presets["C_a'"]))) == 0
    np.testing.assert_array_equal(presets["C_a"].start, (np.pi, 0))
    np.testing.assert_array_equal(presets["C_a"].end, (-np.pi, 0))


class TestWinding:
    def test_unit_circle(self):
        assert winding_number(circle(1.0, n=64)) == 1
        assert winding_number(circle(1.0, n=64, turns=-1)) == -1
        assert winding_number(circle(1.0, n=64, turns=3)) == 3

    def test_far_square(self):
        sq = Path([(5, 5), (6, 5), (6, 6), (5, 6), (5, 5)])
        assert winding_number(sq) == 0

    def test_other_puncture(self):
        assert winding_number(circle(1.0, n=64, center=(3, 0)), puncture=(3, 0.5)) == 1
        assert winding_number(circle(1.0, n=64, center=(3, 0)), puncture=(0, 0)) == 0

    def test_errors(self):
        with pytest.raises(NotClosed):
            winding_number(Path([(1, 0), (0, 1)]))
        with pytest.raises(PunctureOnPath):
            winding_number(Path([(-1, 0), (1, 0), (0, 1), (-1, 0)]))
        with pytest.raises(PunctureOnPath):
            winding_number(Path([(0, 0), (1, 0), (0, 1), (0, 0)]))

    def test_random_loops_have_requested_winding(self, rng):
        for _ in range(50):
            w = int(rng.integers(-3, 4))
            assert winding_number(random_loop(rng, w)) == w


class TestPrediction:
    def test_spin_cases(self):
        assert predict_monodromy([0], [SWAP]) == ID2
        assert predict_monodromy([1], [SWAP]) == SWAP
        assert predict_monodromy([5], [SWAP]) == SWAP
        assert predict_monodromy([-2], [SWAP]) == ID2

    def test_commuting_pair(self):
        g = Permutation.cycle(3)
        assert predict_monodromy([1, 1], [g, g]) == g ** 2

    def test_non_abelian(self):
        with pytest.raises(NonAbelianGenerators):
            predict_monodromy([1, 1], [Permutation((1, 0, 2)), Permutation((0, 2, 1))])


class TestSpinLifts:
    def test_constant_path(self, spin):
        p = Path([(1.0, 2.0), (1.0, 2.0)])
        init = frame_at(spin, p.start)
        r = lift_path(spin, p, init)
        assert r.permutation.is_identity() and r.final_frame.same_as(init, atol=0.0)
        assert r.steps_used == 0

    def test_fig3_endpoints(self, spin, presets):
        init = frame_at(spin, (np.pi, 0.0))
        np.testing.assert_allclose(projector_to_bloch(init[0]), [1, 0, 0], atol=1e-12)
        final_a = lift_path(spin, presets["C_a"], init).final_frame
        final_c = lift_path(spin, presets["C_c"], init).final_frame
        np.testing.assert_allclose(projector_to_bloch(final_a[0]), [0, 1, 0], atol=1e-6)
        np.testing.assert_allclose(projector_to_bloch(final_a[1]), [0, -1, 0], atol=1e-6)
        np.testing.assert_allclose(projector_to_bloch(final_c[0]), [0, -1, 0], atol=1e-6)

    def test_monodromy_examples(self, spin):
        contractible = circle(1.0, n=64, center=(3.0, 1.0))
        assert monodromy(spin, contractible) == ID2
        assert monodromy(spin, circle(np.pi)) == SWAP
        assert monodromy(spin, circle(np.pi, turns=-1)) == SWAP
        assert monodromy(spin, circle(np.pi, turns=2)) == ID2
        five = circle(np.pi, turns=5)
        assert monodromy(spin, five) == predict_monodromy([winding_number(five)], [SWAP]) == SWAP

    def test_monodromy_requires_loop(self, spin, presets):
        with pytest.raises(NotClosed):
            monodromy(spin, presets["C_a"])

    def test_closed_lift_permutation_matches_frames(self, spin):
        loop = circle(2.0, n=100, start_angle=0.3)
        init = frame_at(spin, loop.start)
        r = lift_path(spin, loop, init)
        assert r.permutation == match_frames(init, r.final_frame)[0]
        assert r.final_frame.same_as(apply_permutation(init, r.permutation), atol=1e-9)

    def test_compare_presets(self, spin, presets):
        same = compare_paths(spin, presets["C_a"], presets["C_a'"])
        assert same.discrepancy == same.composite_monodromy == ID2
        differ = compare_paths(spin, presets["C_a"], presets["C_c"])
        assert differ.discrepancy == differ.composite_monodromy == SWAP
        self_cmp = compare_paths(spin, presets["C_c"], presets["C_c"])
        assert self_cmp.discrepancy == self_cmp.composite_monodromy == ID2

    def test_compare_endpoint_mismatch(self, spin, presets):
        with pytest.raises(EndpointMismatch):
            compare_paths(spin, presets["C_a"], line((np.pi, 0), (0, -np.pi), n=20))

    def test_homotopy_invariance(self, spin, rng):
        for _ in range(30):
            w = int(rng.integers(-3, 4))
            loop = random_loop(rng, w)
            assert monodromy(spin, loop) == SWAP ** w

    def test_inverse_path_is_trivial(self, spin, rng):
        for _ in range(10):
            c = random_open_path(rng, 0.0, rng.uniform(-3, 3), 2.0, 3.0, turns=int(rng.integers(-1, 2)))
            assert monodromy(spin, concat(c, reverse(c))) == ID2

    def test_composition_law(self, spin, rng):
        for _ in range(10):
            end = rng.uniform(-np.pi, np.pi)
            c1 = random_open_path(rng, 0.5, end, 2.0, 4.0, turns=int(rng.integers(-1, 2)))
            c2 = random_open_path(rng, 0.5, end, 2.0, 4.0, turns=int(rng.integers(-1, 2)))
            cmp = compare_paths(spin, c1, c2, strict=True)
            loop = concat(c1, reverse(c2))
            assert cmp.discrepancy == SWAP ** winding_number(loop)

    def test_refinement_stability(self, spin, presets, rng):
        loops = [random_loop(rng, int(rng.integers(-3, 4)), n=60) for _ in range(5)]
        for path in [*presets.values(), *loops]:
            init = frame_at(spin, path.start)
            base = lift_path(spin, path, init).permutation
            assert lift_path(spin, path.refined(2), init).permutation == base

    def test_equivariance(self, spin, presets):
        for path in presets.values():
            init = frame_at(spin, path.start)
            for tau in (ID2, SWAP):
                assert equivariance_holds(spin, path, init, tau)


class TestFailures:
    def test_path_through_degeneracy(self, spin):
        # the spin operator is -1 at B = (2 pi, 0)
        with pytest.raises(DegeneracyOnPath):
            lift_path(spin, line((5.0, 0.0), (7.5, 0.0), n=3), frame_at(spin, (5.0, 0.0)))
        crossing = Path([(5.0, 0.0), (2 * np.pi + 1e-3, 1e-9), (7.5, 0.0)])
        with pytest.raises(DegeneracyOnPath):
            lift_path(spin, crossing, frame_at(spin, (5.0, 0.0)))

    def test_path_through_puncture(self, spin):
        with pytest.raises(DegeneracyOnPath):
            lift_path(spin, line((-1.0, 0.0), (1.0, 0.0)), frame_at(spin, (-1.0, 0.0)))

    def test_depth_cap(self, spin):
        with pytest.raises(DepthExceeded):
            lift_path(spin, Path([(np.pi, 0.0), (0.0, np.pi)]), frame_at(spin, (np.pi, 0.0)), max_depth=0)

    def test_initial_must_sit_at_start(self, spin, presets):
        with pytest.raises(EndpointMismatch):
            lift_path(spin, presets["C_a"], frame_at(spin, (1.0, 1.0)))


class TestOtherFamilies:
    def test_clock_generator(self):
        fam = clock_family(3)
        g = Permutation.cycle(3)
        for w in (-2, -1, 1, 2, 3):
            assert monodromy(fam, circle(1.5, n=64, turns=w)) == g ** w

    def test_clock_conjugation_by_initial_order(self):
        fam = clock_family(3)
        loop = circle(1.5, n=64)
        g = Permutation.cycle(3)
        for tau in itertools.permutations(range(3)):
            tau = Permutation(tau)
            init = frame_at(fam, loop.start, order=tau)
            assert monodromy(fam, loop, init) == tau.inverse() @ g @ tau

    def test_hermitian_loops_are_trivial(self, rng):
        fam = random_hermitian_family(rng, 3)
        for _ in range(5):
            loop = random_loop(rng, int(rng.integers(-2, 3)), r_min=0.2, r_max=1.0, n=80)
            assert monodromy(fam, loop).is_identity()

    def test_equivariance_s3(self, rng):
        fam = random_hermitian_family(rng, 3)
        path = random_open_path(rng, 0.0, 2.0, 0.5, 1.0, n=80)
        init = frame_at(fam, path.start)
        for tau in itertools.permutations(range(3)):
            assert equivariance_holds(fam, path, init, Permutation(tau))
