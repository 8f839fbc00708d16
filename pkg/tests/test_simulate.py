# -*- coding: utf-8 -*-
'''
    latentplex.tests.test_simulate
    ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

    :license: MIT, see LICENSE for more details.
'''

import numpy as np
import pytest

import latentplex.simulate as simulate
from latentplex.exceptions import ConfigurationError, DomainError
from latentplex.model import lb_alpha

from . import binary_covariates


def test_mixture_components():
    assert simulate.mixture_components(50) == 7
    assert simulate.mixture_components(25) == 4
    assert simulate.mixture_components(3) == 1


def test_tabulated_params():
    alpha, beta = simulate.tabulated_params(50, 5)
    assert alpha.tolist() == [0.0, 1.10, 0.23, 0.47, -0.52]
    assert beta.tolist() == [1.0, 1.36, 0.45, 0.07, 0.95]
    with pytest.raises(DomainError):
        simulate.tabulated_params(40, 3)


def test_common_beta_params():
    n, alpha, beta = simulate.common_beta_params(2)
    assert n == 70
    assert alpha.tolist() == [-0.73, -1.12]
    assert beta.tolist() == [1.0, 1.0]
    with pytest.raises(DomainError):
        simulate.common_beta_params(4)


class TestScenarioSpec(object):
    def test_from_number(self):
        assert simulate.ScenarioSpec.from_number(3).kind == 'hotelling'
        spec = simulate.ScenarioSpec.from_number(4, K=10)
        assert spec.kind == 'large_K_gaussian'
        assert spec.K == 10

    def test_unknown_scenario(self):
        with pytest.raises(ConfigurationError):
            simulate.ScenarioSpec.from_number(5)

    def test_unknown_setting(self):
        with pytest.raises(TypeError):
            simulate.ScenarioSpec(colour='red')

    def test_case_fixes_size(self):
        spec = simulate.ScenarioSpec.from_number(1, n=10, K=5, case=3)
        assert (spec.n, spec.K) == (25, 3)
        with pytest.raises(DomainError):
            simulate.ScenarioSpec(case=4)

    @pytest.mark.parametrize('kwargs', [
        dict(n=1), dict(K=1), dict(p=0), dict(presence='partial'),
        dict(kind='uniform'),
    ])
    def test_validate(self, kwargs):
        with pytest.raises(ConfigurationError):
            simulate.ScenarioSpec(**kwargs).validate()


class TestDrawLatents(object):
    @pytest.mark.parametrize('kind', ['gaussian', 'mixture', 'hotelling',
                                      'large_K_gaussian'])
    def test_shape(self, kind):
        spec = simulate.ScenarioSpec(kind=kind, n=30, p=2)
        z = simulate.draw_latents(spec, np.random.default_rng(0))
        assert z.shape == (30, 2)
        assert np.all(np.isfinite(z))

    def test_hotelling_dimensions(self):
        spec = simulate.ScenarioSpec(kind='hotelling', n=10, p=5)
        with pytest.raises(ConfigurationError):
            simulate.draw_latents(spec, np.random.default_rng(0))


class TestGenerate(object):
    def test_reference_and_bounds(self):
        spec = simulate.ScenarioSpec.from_number(1, n=40, K=4, seed=3)
        truth = simulate.generate(spec)
        assert truth.alpha_true[0] == 0.0
        assert truth.beta_true[0] == 1.0
        assert np.all(truth.alpha_true[1:] > lb_alpha(40))
        assert np.all(truth.beta_true[1:] >= 0)
        m = truth.multiplex
        assert (m.K, m.n) == (4, 40)
        assert truth.z_true.shape == (40, 2)
        assert m.labels[0] == 'n001'
        assert m.names == ['1', '2', '3', '4']

    def test_deterministic(self):
        spec = simulate.ScenarioSpec.from_number(2, n=30, K=3, seed=11)
        a = simulate.generate(spec)
        b = simulate.generate(spec)
        assert np.array_equal(a.multiplex.Y, b.multiplex.Y)
        assert np.array_equal(a.z_true, b.z_true)
        assert np.array_equal(a.alpha_true, b.alpha_true)
        c = simulate.generate(simulate.ScenarioSpec.from_number(
            2, n=30, K=3, seed=12))
        assert not np.array_equal(a.z_true, c.z_true)

    def test_tabulated(self):
        spec = simulate.ScenarioSpec.from_number(1, n=25, K=3, seed=0,
                                                 tabulated=True)
        truth = simulate.generate(spec)
        assert truth.alpha_true.tolist() == [0.0, -0.22, 0.69]
        assert truth.beta_true.tolist() == [1.0, 0.91, 0.22]

    def test_common_beta_case(self):
        spec = simulate.ScenarioSpec.from_number(3, seed=1, case=1)
        truth = simulate.generate(spec)
        assert truth.alpha_true.tolist() == [-0.66, -0.70, -0.54]
        assert truth.beta_true.tolist() == [1.0, 1.0, 1.0]
        assert (truth.multiplex.n, truth.multiplex.K) == (50, 3)

    def test_truth_override(self):
        z = np.zeros((10, 2))
        spec = simulate.ScenarioSpec(n=10, K=2, seed=0, truth={
            'z': z, 'alpha': [0.0, 2.0], 'beta': [1.0, 0.0]})
        truth = simulate.generate(spec)
        assert np.array_equal(truth.z_true, z)
        assert truth.alpha_true.tolist() == [0.0, 2.0]

    def test_truth_shapes(self):
        spec = simulate.ScenarioSpec(n=10, K=2, truth={'z': np.zeros((9, 2))})
        with pytest.raises(ConfigurationError):
            simulate.generate(spec)
        spec = simulate.ScenarioSpec(n=10, K=2, truth={'alpha': [0.0]})
        with pytest.raises(ConfigurationError):
            simulate.generate(spec)

    def test_edges_respect_presence(self):
        spec = simulate.ScenarioSpec.from_number(1, n=49, K=6, seed=4,
                                                 presence='euro_like')
        m = simulate.generate(spec).multiplex
        assert np.all(m.Y <= m.H)
        assert np.all(m.H[:, np.arange(49), np.arange(49)] == 0)
        absent = [np.sum(~m.H[k].any(axis=0) & ~m.H[k].any(axis=1))
                  for k in range(m.K)]
        assert sum(absent) > 0
        assert max(absent) <= 47

    def test_full_presence(self):
        spec = simulate.ScenarioSpec.from_number(1, n=12, K=2, seed=4)
        m = simulate.generate(spec).multiplex
        assert m.dyad_count(0) == 12 * 11

    def test_covariates(self):
        X = binary_covariates(20, seed=1)
        spec = simulate.ScenarioSpec(n=20, K=2, seed=5, truth={
            'z': np.zeros((20, 2)), 'alpha': [0.0, 3.0], 'beta': [1.0, 1.0]})
        truth = simulate.generate(spec, covariates=X, lam=[50.0])
        Y = truth.multiplex.Y
        assert np.all(Y[:, X.X[0] == 1] == 0)
        assert truth.lambda_true.tolist() == [50.0]


class TestPresenceMasks(object):
    def test_full(self):
        H = simulate.presence_masks(5, 2, 'full', np.random.default_rng(0))
        assert np.array_equal(H[1], 1 - np.eye(5))

    def test_cap(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            H = simulate.presence_masks(3, 4, 'euro_like', rng)
            present = H.any(axis=2) | H.any(axis=1)
            assert np.all(present.sum(axis=1) >= 2)

    def test_unknown(self):
        with pytest.raises(ConfigurationError):
            simulate.presence_masks(5, 2, 'partial',
                                    np.random.default_rng(0))
