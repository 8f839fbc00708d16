# -*- coding: utf-8 -*-
'''
    latentplex.tests.test_diagnostics
    ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

    :license: MIT, see LICENSE for more details.
'''

import itertools

import numpy as np
import pytest

import latentplex.diagnostics as diagnostics
from latentplex.exceptions import DimensionError, DomainError
from latentplex.model import CovariateSet, Multiplex, distance_matrix, \
    log_likelihood
from latentplex.sampler import ChainOutput

from . import binary_covariates, hyper, random_multiplex, state_for


def rotation(angle):
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


def enumerate_nearest(coords, i, r):
    # the r-subset of other nodes all closer to i than every node left out
    d = [float(np.sum((coords[j] - coords[i]) ** 2))
         for j in range(len(coords))]
    others = [j for j in range(len(coords)) if j != i]
    for subset in itertools.combinations(others, r):
        rest = [d[j] for j in others if j not in subset]
        if not rest or max(d[j] for j in subset) < min(rest):
            return set(subset)
    raise AssertionError('no strict neighbourhood')


def chain_of(m, states, X=None):
    X = X if X is not None else CovariateSet(n=m.n)
    chain = ChainOutput(hyper(), m.n, m.K, X.F)
    for it, state in enumerate(states):
        chain.draws.append(state)
        chain.iterations.append(it)
        chain.revert_trace.append(False)
        chain.deviance_trace.append(-2.0 * log_likelihood(
            m, state, distance_matrix(state.z), X))
    return chain


class TestProcrustes(object):
    def test_similarity_transforms(self):
        A = np.random.default_rng(0).standard_normal((12, 2))
        B = 3.0 * A.dot(rotation(0.7)) + np.array([5.0, -2.0])
        assert diagnostics.procrustes_correlation(A, B) == \
            pytest.approx(1.0)
        reflected = A * np.array([-1.0, 1.0])
        assert diagnostics.procrustes_correlation(A, reflected) == \
            pytest.approx(1.0)

    def test_unrelated(self):
        rng = np.random.default_rng(1)
        A = rng.standard_normal((200, 2))
        B = rng.standard_normal((200, 2))
        assert 0.0 <= diagnostics.procrustes_correlation(A, B) < 0.5

    def test_degenerate(self):
        A = np.ones((5, 2))
        B = np.random.default_rng(0).standard_normal((5, 2))
        with pytest.raises(DomainError):
            diagnostics.procrustes_correlation(A, B)

    def test_shapes(self):
        with pytest.raises(DimensionError):
            diagnostics.procrustes_correlation(np.zeros((5, 2)),
                                               np.zeros((4, 2)))

    def test_align_to(self):
        reference = np.random.default_rng(2).standard_normal((10, 2))
        moved = reference.dot(rotation(2.0)) + 4.0
        aligned = diagnostics.align_to(reference, moved)
        assert np.allclose(aligned, reference)
        assert np.allclose(distance_matrix(aligned),
                           distance_matrix(moved))


class TestDic(object):
    def test_from_trace(self):
        rv = diagnostics.dic_from_trace([10.0, 14.0], 11.0)
        assert rv.dic == 13.0
        assert rv.p_d == 1.0
        assert rv.d_bar == 12.0
        assert rv.d_hat == 11.0

    def test_empty_trace(self):
        with pytest.raises(DomainError):
            diagnostics.dic_from_trace([], 1.0)

    def test_constant_chain(self):
        m = random_multiplex(n=8, K=2, seed=3)
        state = state_for(m)
        chain = chain_of(m, [state.copy() for _ in range(3)])
        rv = diagnostics.dic_components(chain, m, CovariateSet(n=m.n))
        assert rv.p_d == pytest.approx(0.0, abs=1e-8)
        assert rv.dic == pytest.approx(chain.deviance_trace[0])
        assert diagnostics.dic(chain, m, CovariateSet(n=m.n)) == rv.dic

    def test_empty_chain(self):
        m = random_multiplex()
        with pytest.raises(DomainError):
            diagnostics.dic_components(chain_of(m, []), m,
                                       CovariateSet(n=m.n))


class TestAssociation(object):
    def test_identical_and_complementary(self):
        m = random_multiplex(n=6, K=1, seed=0)
        off = 1 - np.eye(6, dtype=np.int8)
        Y = np.stack([m.Y[0], m.Y[0], (1 - m.Y[0]) * off])
        m = Multiplex(Y)
        assert diagnostics.association(m, 0, 1) == 1.0
        assert diagnostics.association(m, 0, 2) == 0.0
        A = diagnostics.association_matrix(m)
        assert np.array_equal(A, A.T)
        assert np.all(np.diag(A) == 1.0)

    def test_absent_dyads_count_as_non_edges(self):
        Y = np.zeros((2, 4, 4), dtype=np.int8)
        H = np.ones((2, 4, 4), dtype=np.int8)
        H[:, np.arange(4), np.arange(4)] = 0
        H[1, 0, :] = 0
        H[1, :, 0] = 0
        assert diagnostics.association(Multiplex(Y, H), 0, 1) == 1.0

    def test_covariate(self):
        X = binary_covariates(7, seed=4)
        off = 1 - np.eye(7, dtype=np.int8)
        m = Multiplex(((1 - X.X[0]) * off).astype(np.int8))
        assert diagnostics.covariate_association(m, X, 0, 0) == 1.0


class TestNeighbors(object):
    def test_tie_breaking(self):
        coords = np.array([[0.0], [1.0], [2.0]])
        nn = diagnostics.nearest_neighbors(coords, 1)
        assert nn[:, 0].tolist() == [1, 0, 1]

    def test_identical_configurations(self):
        coords = np.random.default_rng(0).standard_normal((9, 2))
        rv = diagnostics.neighbor_overlap(coords, coords * 2.0, 3)
        assert rv.average == 1.0
        assert rv.footnote_average == 9.0
        assert rv.maximum == 3
        assert rv.sizes.tolist() == [3] * 9

    def test_partial_overlap(self):
        latent = np.array([[0.0], [1.0], [10.0], [11.0]])
        external = np.array([[0.0], [10.0], [1.0], [11.0]])
        rv = diagnostics.neighbor_overlap(latent, external, 1)
        assert rv.sizes.tolist() == [0, 0, 0, 0]
        assert rv.average == 0.0

    @pytest.mark.parametrize('r', [0, 5])
    def test_bad_r(self, r):
        coords = np.zeros((5, 2))
        with pytest.raises(DomainError):
            diagnostics.neighbor_overlap(coords, coords, r)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            diagnostics.neighbor_overlap(np.zeros((5, 2)), np.zeros((4, 2)),
                                         1)

    @pytest.mark.parametrize('seed', range(6))
    def test_enumeration(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(3, 7))
        latent = rng.standard_normal((n, 2))
        external = rng.standard_normal((n, 2))
        for r in range(1, n):
            nn = diagnostics.nearest_neighbors(latent, r)
            sizes = []
            for i in range(n):
                expected = enumerate_nearest(latent, i, r)
                assert set(nn[i]) == expected
                sizes.append(len(expected &
                                 enumerate_nearest(external, i, r)))
            rv = diagnostics.neighbor_overlap(latent, external, r)
            assert rv.sizes.tolist() == sizes
            assert rv.average == pytest.approx(sum(sizes) / float(n * r))
            assert rv.footnote_average == pytest.approx(sum(sizes) /
                                                        float(r))
            assert rv.maximum == max(sizes)


class TestBorderOverlap(object):
    latent = np.array([[0.0, 0.0], [0.1, 0.0], [5.0, 0.0], [5.1, 0.0],
                       [10.0, 0.0]])

    def borders(self, *pairs):
        B = np.zeros((5, 5))
        for i, j in pairs:
            B[i, j] = B[j, i] = 1
        return B

    def test_paired(self):
        rv = diagnostics.border_overlap(self.latent,
                                        self.borders((0, 1), (2, 3)))
        assert rv.ratios[:4].tolist() == [1.0] * 4
        assert np.isnan(rv.ratios[4])
        assert rv.average == 1.0
        assert rv.mean_neighbors == 1.0

    def test_distant_borders(self):
        rv = diagnostics.border_overlap(self.latent,
                                        self.borders((0, 2)))
        assert rv.ratios[0] == 0.0
        assert rv.average == 0.0

    def test_no_borders(self):
        with pytest.raises(DomainError):
            diagnostics.border_overlap(self.latent, np.zeros((5, 5)))

    def test_asymmetric(self):
        B = np.zeros((5, 5))
        B[0, 1] = 1
        with pytest.raises(DomainError):
            diagnostics.border_overlap(self.latent, B)

    def test_unweighted_average(self):
        # per node: 0 -> 2/2, 1 -> 1/1, 2 -> 0/1
        rv = diagnostics.border_overlap(self.latent,
                                        self.borders((0, 1), (0, 2)))
        assert rv.ratios[:3].tolist() == [1.0, 1.0, 0.0]
        assert rv.average == pytest.approx(2 / 3.)
        assert rv.mean_neighbors == pytest.approx(4 / 3.)

    @pytest.mark.parametrize('seed', range(6))
    def test_enumeration(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 7))
        latent = rng.standard_normal((n, 2))
        B = np.triu(rng.uniform(size=(n, n)) < 0.5, 1).astype(int)
        B[0, 1] = 1
        B = B + B.T
        ratios = []
        for i in range(n):
            mine = set(np.flatnonzero(B[i]))
            if mine:
                nearest = enumerate_nearest(latent, i, len(mine))
                ratios.append(len(nearest & mine) / float(len(mine)))
        rv = diagnostics.border_overlap(latent, B)
        assert rv.average == pytest.approx(np.mean(ratios))
        assert np.sum(~np.isnan(rv.ratios)) == len(ratios)


class TestSummarize(object):
    def test_aligned_means(self):
        m = random_multiplex(n=8, K=2, seed=1)
        base = state_for(m, seed=2)
        states = []
        for angle in (0.0, 0.5, 1.5, 3.0):
            state = base.copy()
            state.z = base.z.dot(rotation(angle)) + angle
            states.append(state)
        summary = diagnostics.summarize(chain_of(m, states))
        assert summary.draws == 4
        assert np.allclose(summary.z_mean, base.z)
        assert np.allclose(summary.z_sd, 0.0, atol=1e-10)
        assert np.allclose(summary.alpha_mean, base.alpha)
        assert np.allclose(summary.alpha_sd, 0.0)
        assert np.allclose(summary.distance_mean, distance_matrix(base.z))
        assert summary.probability_mean is None
        assert np.isnan(summary.acceptance['alpha_beta']).all()

    def test_intervals(self):
        m = random_multiplex(n=6, K=2, seed=1)
        states = []
        for value in np.linspace(0.0, 1.0, 41):
            state = state_for(m, seed=0)
            state.alpha[1] = value
            states.append(state)
        summary = diagnostics.summarize(chain_of(m, states))
        low, high = summary.alpha_interval
        assert low[1] == pytest.approx(0.025)
        assert high[1] == pytest.approx(0.975)
        assert summary.alpha_mean[1] == pytest.approx(0.5)

    def test_probabilities(self):
        m = random_multiplex(n=6, K=2, seed=1)
        X = binary_covariates(6)
        state = state_for(m, X)
        summary = diagnostics.summarize(chain_of(m, [state], X), X)
        P = summary.probability_mean
        assert P.shape == (2, 6, 6)
        assert np.all(np.diag(P[0]) == 0)
        mean = summary.mean_state()
        assert np.allclose(mean.z, state.z)
        assert np.array_equal(mean.alpha, state.alpha)
        assert np.array_equal(mean.lam, state.lam)

    def test_empty(self):
        m = random_multiplex()
        with pytest.raises(DomainError):
            diagnostics.summarize(chain_of(m, []))
