# -*- coding: utf-8 -*-
'''
    latentplex.tests
    ~~~~~~~~~~~~~~~~

    This module contains tests for latentplex.
    This particular file contains tools for testing.

    :license: MIT, see LICENSE for more details.
'''

import numpy as np

from latentplex.model import CovariateSet, HyperConfig, ModelState, \
    Multiplex, distance_matrix, edge_probability


def random_multiplex(n=8, K=2, density=0.4, seed=0):
    rng = np.random.default_rng(seed)
    Y = (rng.uniform(size=(K, n, n)) < density).astype(np.int8)
    Y[:, np.arange(n), np.arange(n)] = 0
    return Multiplex(Y)


def latent_multiplex(n=30, alpha=(0.0, 0.5), beta=(1.0, 0.8), seed=0):
    '''A multiplex drawn from the model with Gaussian positions. Returns
    the multiplex and the true positions.'''
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, 2))
    D = distance_matrix(z)
    alpha = np.asarray(alpha)[:, None, None]
    beta = np.asarray(beta)[:, None, None]
    P = edge_probability(alpha, beta, D[None])
    Y = (rng.uniform(size=P.shape) < P).astype(np.int8)
    Y[:, np.arange(n), np.arange(n)] = 0
    return Multiplex(Y), z


def state_for(m, X=None, seed=0, lam=None):
    '''A valid state for ``m`` with the first network as reference.'''
    rng = np.random.default_rng(seed)
    F = 0 if X is None else X.F
    alpha = np.concatenate([[0.0], rng.uniform(0.0, 1.0, m.K - 1)])
    beta = np.concatenate([[1.0], rng.uniform(0.2, 1.0, m.K - 1)])
    lam = np.full(F, 0.3) if lam is None else lam
    return ModelState(z=rng.standard_normal((m.n, 2)), alpha=alpha,
                      beta=beta, lam=lam, mu_alpha=0.3, sigma2_alpha=1.2,
                      mu_beta=0.6, sigma2_beta=0.8,
                      mu_lambda=np.full(F, 0.2),
                      sigma2_lambda=np.full(F, 0.9))


def binary_covariates(n, seed=0, names=('border',)):
    rng = np.random.default_rng(seed)
    X = (rng.uniform(size=(len(names), n, n)) < 0.5).astype(float)
    X = np.maximum(X, np.transpose(X, (0, 2, 1)))
    return CovariateSet(X, names=list(names))


def hyper(**kwargs):
    kwargs.setdefault('alpha_ref', 0.0)
    return HyperConfig(**kwargs)
