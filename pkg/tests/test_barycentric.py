"""Half-space barycentric representation and the three coordinate forms."""

import numpy as np
import pytest
import scipy.stats

from liftzonoid import (
    BarycentricCoords,
    CoordKind,
    Direction,
    DomainError,
    EmpiricalMeasure,
    GaussianMeasure,
    HalfSpace,
    MeanPoint,
    NoSolution,
    NotConverged,
    OutsideSupport,
    convert_coords,
    coords_from_point,
    g_inverse,
    gaussian_depth,
    normal_cdf,
    point_from_coords,
    represent,
    verify_uniqueness,
)

G_INV_HALF = 0.5179127159921794137   # G(u) = 1/2 at this u
TAIL_MEAN_13 = 1.770327832359651066  # E[Z | Z >= 1.3]
# symmetric difference of {z1 >= 0.4} and {z2 >= -0.2} under N(0, I2),
# frozen from the independent-orthant closed form
ORTHANT_SYMMDIFF = 0.5246373641611072829


class TestCoordsValidation:
    def test_depth_scalar_range(self):
        with pytest.raises(DomainError):
            BarycentricCoords(CoordKind.DEPTH, 0.0, Direction([1.0]))
        with pytest.raises(DomainError):
            BarycentricCoords(CoordKind.DEPTH, 1.2, Direction([1.0]))
        BarycentricCoords(CoordKind.DEPTH, 1.0, Direction([1.0]))  # allowed

    def test_support_scalar_finite(self):
        with pytest.raises(DomainError):
            BarycentricCoords(CoordKind.SUPPORT, np.inf, Direction([1.0]))

    def test_offset_allows_neg_inf(self):
        c = BarycentricCoords(CoordKind.OFFSET, float("-inf"), Direction([1.0]))
        assert c.to_json_dict()["scalar"] == "-inf"
        with pytest.raises(DomainError):
            BarycentricCoords(CoordKind.OFFSET, float("inf"), Direction([1.0]))


class TestEmpiricalRepresent:
    def test_two_atom_caveat(self, two_atom):
        # the LP answers depth 2/3 with offset -1; the closed half-line
        # {v >= -1} carries both atoms, so its true barycenter is the mean
        # and the residual is honest about the gap
        res = represent(two_atom, [0.5])
        assert res.alpha == pytest.approx(2.0 / 3.0, abs=1e-12)
        assert res.halfspace.offset == pytest.approx(-1.0, abs=1e-12)
        assert res.residual == pytest.approx(0.5, abs=1e-12)
        assert not res.unique
        assert res.method == "lp-dual"

    def test_mean_whole_space(self, square):
        res = represent(square, [0.0, 0.0])
        assert res.halfspace.is_whole_space
        assert res.alpha == 1.0
        assert res.unique

    def test_outside_raises(self, square):
        with pytest.raises(OutsideSupport):
            represent(square, [5.0, 0.0])

    def test_residual_small_on_smooth_cloud(self, cloud):
        # with many atoms in generic position the fractional tie is thin and
        # the full-atom barycenter lands near the query
        mu = cloud(5, n=250, d=2, weighted=False)
        x = 0.25 * mu.points[3]
        res = represent(mu, x)
        assert res.residual < 0.2
        b = mu.halfspace_barycenter(res.halfspace)
        np.testing.assert_allclose(b, x, atol=res.residual + 1e-12)

    def test_refine_never_hurts(self, cloud):
        mu = cloud(6, n=400, d=2, weighted=False)
        x = 0.3 * mu.points[7]
        base = represent(mu, x)
        tuned = represent(mu, x, refine=True)
        assert tuned.residual <= base.residual + 1e-15
        assert tuned.method in ("lp-dual", "refined")

    def test_residual_tol_enforced(self, two_atom):
        with pytest.raises(NotConverged):
            represent(two_atom, [0.5], residual_tol=1e-6)
        res = represent(two_atom, [0.5], residual_tol=0.75)
        assert res.residual <= 0.75


class TestGaussianRepresentDispatch:
    def test_routes_to_closed_form(self, std2):
        res = represent(std2, [0.4, 0.3])
        assert res.method == "closed-form"
        assert res.unique
        b = std2.halfspace_barycenter(res.halfspace)
        np.testing.assert_allclose(b, [0.4, 0.3], atol=1e-9)


class TestCoordsFromPoint:
    def test_gaussian_three_forms(self, std2):
        x = [0.5, 0.0]
        off = coords_from_point(std2, x, CoordKind.OFFSET)
        sup = coords_from_point(std2, x, CoordKind.SUPPORT)
        dep = coords_from_point(std2, x, CoordKind.DEPTH)
        np.testing.assert_allclose(off.direction.vec, [1.0, 0.0], atol=1e-12)
        # offset a solves tailmean(a) = |x|: a = -G^{-1}(1/2)
        assert off.scalar == pytest.approx(-G_INV_HALF, abs=1e-9)
        assert sup.scalar == pytest.approx(0.5, abs=1e-12)
        assert dep.scalar == pytest.approx(gaussian_depth(std2, x), abs=1e-12)

    def test_mean_point_raises(self, std2, square):
        with pytest.raises(MeanPoint):
            coords_from_point(std2, [0.0, 0.0], CoordKind.DEPTH)
        with pytest.raises(MeanPoint):
            coords_from_point(square, [0.0, 0.0], CoordKind.OFFSET)

    def test_empirical_support_form(self, two_atom):
        c = coords_from_point(two_atom, [0.5], CoordKind.SUPPORT)
        assert c.scalar == pytest.approx(0.5, abs=1e-12)
        np.testing.assert_allclose(c.direction.vec, [1.0], atol=1e-12)


class TestPointFromCoords:
    def test_depth_form_gaussian(self, std2):
        from liftzonoid import radius

        c = BarycentricCoords(CoordKind.DEPTH, 0.3, Direction([0.0, 1.0]))
        pt = point_from_coords(std2, c)
        np.testing.assert_allclose(pt, [0.0, radius(0.3)], atol=1e-12)

    def test_depth_one_is_mean(self, std2, cloud):
        c = BarycentricCoords(CoordKind.DEPTH, 1.0, Direction([1.0, 0.0]))
        np.testing.assert_allclose(point_from_coords(std2, c), [0.0, 0.0],
                                   atol=1e-15)
        mu = cloud(9, n=11)
        np.testing.assert_allclose(point_from_coords(mu, c), mu.mean(),
                                   atol=1e-12)

    def test_offset_form_is_halfspace_barycenter(self, std1):
        c = BarycentricCoords(CoordKind.OFFSET, 1.3, Direction([1.0]))
        pt = point_from_coords(std1, c)
        assert pt[0] == pytest.approx(TAIL_MEAN_13, rel=1e-12)

    def test_support_form_gaussian(self, std2):
        # h = 0.5 along e1 identifies the same point as the offset route
        c = BarycentricCoords(CoordKind.SUPPORT, 0.5, Direction([1.0, 0.0]))
        pt = point_from_coords(std2, c)
        np.testing.assert_allclose(pt, [0.5, 0.0], atol=1e-9)

    def test_support_form_out_of_range(self, std2, two_atom):
        # support value below the mean projection belongs to no trimmed region
        c = BarycentricCoords(CoordKind.SUPPORT, -0.2, Direction([1.0, 0.0]))
        with pytest.raises(NoSolution):
            point_from_coords(std2, c)
        c1 = BarycentricCoords(CoordKind.SUPPORT, 1.5, Direction([1.0]))
        with pytest.raises(NoSolution):
            point_from_coords(two_atom, c1)


class TestRoundTrips:
    @pytest.mark.parametrize("kind", list(CoordKind))
    def test_gaussian_point_coords_point(self, kind):
        mu = GaussianMeasure.from_covariance([1.0, -1.0],
                                             [[2.0, 0.4], [0.4, 1.0]])
        rng = np.random.default_rng(77)
        for _ in range(10):
            x = mu.location + rng.standard_normal(2)
            if np.linalg.norm(mu.whiten(x)) < 0.05:
                continue
            c = coords_from_point(mu, x, kind)
            back = point_from_coords(mu, c)
            np.testing.assert_allclose(back, x, rtol=1e-7, atol=1e-9)

    def test_convert_cycle_gaussian(self, std2):
        x = [0.8, -0.4]
        c0 = coords_from_point(std2, x, CoordKind.OFFSET)
        c1 = convert_coords(std2, c0, CoordKind.SUPPORT)
        c2 = convert_coords(std2, c1, CoordKind.DEPTH)
        c3 = convert_coords(std2, c2, CoordKind.OFFSET)
        assert c3.scalar == pytest.approx(c0.scalar, abs=1e-9)
        np.testing.assert_allclose(c3.direction.vec, c0.direction.vec,
                                   atol=1e-12)
        # every form pins the same spatial point
        np.testing.assert_allclose(point_from_coords(std2, c1), x, atol=1e-9)
        np.testing.assert_allclose(point_from_coords(std2, c2), x, atol=1e-9)

    def test_convert_two_atom_links(self, two_atom):
        # depth 2/3 along +1 corresponds to offset -1 (the upper quantile);
        # the reverse direction saturates at mass 1, exposing the atom jump
        dep = BarycentricCoords(CoordKind.DEPTH, 2.0 / 3.0, Direction([1.0]))
        off = convert_coords(two_atom, dep, CoordKind.OFFSET)
        assert off.scalar == pytest.approx(-1.0, abs=1e-12)
        back = convert_coords(two_atom, off, CoordKind.DEPTH)
        assert back.scalar == pytest.approx(1.0, abs=1e-12)

    def test_identity_conversion(self, std2):
        c = coords_from_point(std2, [0.3, 0.3], CoordKind.DEPTH)
        same = convert_coords(std2, c, CoordKind.DEPTH)
        assert same.scalar == c.scalar


class TestFormConsistency:
    def test_three_scalars_describe_one_point(self, std2):
        # support scalar = <x, u>; offset has mass alpha; depth = alpha
        x = np.array([0.9, 0.2])
        off = coords_from_point(std2, x, CoordKind.OFFSET)
        sup = coords_from_point(std2, x, CoordKind.SUPPORT)
        dep = coords_from_point(std2, x, CoordKind.DEPTH)
        u = off.direction.vec
        assert sup.scalar == pytest.approx(float(x @ u), abs=1e-12)
        mass = std2.halfspace_mass(HalfSpace(off.direction, off.scalar))
        assert mass == pytest.approx(dep.scalar, abs=1e-10)

    def test_offset_scalar_chain(self, std2):
        # for the standard Gaussian: a = -G^{-1}(|x|) and alpha = cdf(-a)
        x = np.array([0.0, 0.65])
        off = coords_from_point(std2, x, CoordKind.OFFSET)
        dep = coords_from_point(std2, x, CoordKind.DEPTH)
        assert off.scalar == pytest.approx(-g_inverse(0.65), abs=1e-9)
        assert dep.scalar == pytest.approx(normal_cdf(-off.scalar), abs=1e-9)


class TestVerifyUniqueness:
    def test_identical_halfspaces(self, std2):
        h = HalfSpace(Direction([1.0, 0.0]), 0.3)
        assert verify_uniqueness(std2, h, h) == 0.0

    def test_parallel_closed_form(self, std2):
        # same direction, offsets 0 and 1: symmetric difference is the slab,
        # mass cdf(1) - cdf(0)
        a = HalfSpace(Direction([1.0, 0.0]), 0.0)
        b = HalfSpace(Direction([1.0, 0.0]), 1.0)
        expected = normal_cdf(1.0) - 0.5
        assert verify_uniqueness(std2, a, b) == pytest.approx(expected,
                                                              abs=1e-12)

    def test_antiparallel_closed_form(self, std2):
        # {x1 >= 0} vs {-x1 >= 0}: overlap only on the null set {x1 = 0},
        # so the symmetric difference has full mass
        a = HalfSpace(Direction([1.0, 0.0]), 0.0)
        b = HalfSpace(Direction([-1.0, 0.0]), 0.0)
        assert verify_uniqueness(std2, a, b) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_monte_carlo(self, std2):
        a = HalfSpace(Direction([1.0, 0.0]), 0.4)
        b = HalfSpace(Direction([0.0, 1.0]), -0.2)
        est, se = verify_uniqueness(std2, a, b, seed=3, samples=400_000,
                                    with_stderr=True)
        assert se < 2e-3
        assert est == pytest.approx(ORTHANT_SYMMDIFF, abs=5 * se)

    def test_oblique_against_scipy_orthant(self, std2):
        # correlated projections: P(A cap B) from the bivariate normal cdf
        u1 = Direction([1.0, 0.0])
        u2 = Direction.of([1.0, 1.0])
        a, b = 0.2, -0.1
        rho = float(u1.vec @ u2.vec)
        cov = [[1.0, rho], [rho, 1.0]]
        both = scipy.stats.multivariate_normal(mean=[0.0, 0.0], cov=cov).cdf(
            [-a, -b]
        )  # P(proj1 < a, proj2 < b) reflected to P(>= a, >= b)
        pa = 1.0 - normal_cdf(a)
        pb = 1.0 - normal_cdf(b)
        exact = pa + pb - 2.0 * both
        ha = HalfSpace(u1, a)
        hb = HalfSpace(u2, b)
        est, se = verify_uniqueness(std2, ha, hb, seed=9, samples=400_000,
                                    with_stderr=True)
        assert est == pytest.approx(exact, abs=5 * se)

    def test_empirical_exact(self, square):
        # atom measure: the difference mass is a finite sum, no sampling
        a = HalfSpace(Direction([1.0, 0.0]), 0.5)
        b = HalfSpace(Direction([0.0, 1.0]), 0.5)
        # A = right pair, B = top pair; symmetric difference holds 2 atoms
        assert verify_uniqueness(square, a, b) == pytest.approx(0.5, abs=1e-15)

    def test_empirical_identical_sets(self, square):
        # different offsets that capture the same atoms are equivalent
        a = HalfSpace(Direction([1.0, 0.0]), 0.5)
        b = HalfSpace(Direction([1.0, 0.0]), 0.9)
        assert verify_uniqueness(square, a, b) == 0.0

    def test_whole_space_vs_halfspace(self, std2):
        w = HalfSpace.whole_space(2)
        h = HalfSpace(Direction([1.0, 0.0]), 0.0)
        assert verify_uniqueness(std2, w, h) == pytest.approx(0.5, abs=1e-12)

    def test_seed_reproducibility(self, std2):
        a = HalfSpace(Direction([1.0, 0.0]), 0.1)
        b = HalfSpace(Direction([0.0, 1.0]), 0.2)
        x = verify_uniqueness(std2, a, b, seed=5, samples=100_000)
        y = verify_uniqueness(std2, a, b, seed=5, samples=100_000)
        assert x == y
