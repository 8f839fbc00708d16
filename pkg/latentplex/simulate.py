# -*- coding: utf-8 -*-
'''
    latentplex.simulate
    ~~~~~~~~~~~~~~~~~~~

    Synthetic multiplexes with known latent positions, intercepts and
    coefficients.

    :license: MIT, see LICENSE for more details.
'''
import logging

import numpy as np

from .exceptions import ConfigurationError, DomainError
from .model import CovariateSet, Multiplex, covariate_term, \
    distance_matrix, edge_probability, lb_alpha
from .sampler import truncated_normal

logger = logging.getLogger(__name__)

#: scenario numbers and the latent designs they stand for
SCENARIOS = {
    1: 'gaussian',
    2: 'mixture',
    3: 'hotelling',
    4: 'large_K_gaussian',
}

PRESENCE_KINDS = ('full', 'euro_like')

#: known (alpha, beta) per (n, K), reference network first
TABULATED = {
    (25, 3): ((0.0, -0.22, 0.69), (1.0, 0.91, 0.22)),
    (50, 3): ((0.0, 0.51, -0.83), (1.0, 0.68, 0.12)),
    (100, 3): ((0.0, 0.21, -0.74), (1.0, 0.70, 1.09)),
    (50, 5): ((0.0, 1.10, 0.23, 0.47, -0.52),
              (1.0, 1.36, 0.45, 0.07, 0.95)),
}

#: designs with a common coefficient of 1 across networks, (n, alpha)
COMMON_BETA_CASES = {
    1: (50, (-0.66, -0.70, -0.54)),
    2: (70, (-0.73, -1.12)),
    3: (25, (0.00, 1.02, 0.28)),
}

#: share of absent nodes per network in the euro-like design
ABSENCE_RATE = 14.0 / 49.0

#: degrees of freedom of the Hotelling design
HOTELLING_DOF = 4


class ScenarioSpec(object):
    '''What to simulate.

    ``truth`` may hold any of ``alpha``, ``beta`` and ``z`` to override the
    random draws.'''

    kind = 'gaussian'
    n = 50
    K = 3
    p = 2
    presence = 'full'
    truth = None
    seed = None

    #: use the values in TABULATED when (n, K) has an entry
    tabulated = False

    #: key of COMMON_BETA_CASES; fixes n, K and the network parameters
    case = None

    def __init__(self, **kwargs):
        for k, v in kwargs.items():
            if not hasattr(type(self), k):
                raise TypeError('Unknown scenario setting: {}'.format(k))
            setattr(self, k, v)
        if self.case is not None:
            self.n, alpha, _ = common_beta_params(self.case)
            self.K = len(alpha)

    @classmethod
    def from_number(cls, number, **kwargs):
        try:
            kind = SCENARIOS[number]
        except KeyError:
            raise ConfigurationError('Unknown scenario {}, expected one of {}'
                                     .format(number, sorted(SCENARIOS)))
        return cls(kind=kind, **kwargs)

    def validate(self):
        if self.kind not in SCENARIOS.values():
            raise ConfigurationError('Unknown scenario kind: {}'
                                     .format(self.kind))
        if self.presence not in PRESENCE_KINDS:
            raise ConfigurationError('Unknown presence design: {}'
                                     .format(self.presence))
        if self.n < 2:
            raise ConfigurationError('Need at least two nodes')
        if self.K < 2:
            raise ConfigurationError('Need at least two networks')
        if self.p < 1:
            raise ConfigurationError('Need at least one latent dimension')
        return self

    def __repr__(self):
        return 'latentplex.simulate.ScenarioSpec(kind={!r}, n={}, K={})' \
            .format(self.kind, self.n, self.K)


class GroundTruth(object):
    def __init__(self, z_true, alpha_true, beta_true, multiplex,
                 lambda_true=None, covariates=None):
        self.z_true = z_true
        self.alpha_true = alpha_true
        self.beta_true = beta_true
        self.multiplex = multiplex
        self.lambda_true = lambda_true
        self.covariates = covariates

    def __repr__(self):
        return 'latentplex.simulate.GroundTruth({!r})'.format(
            self.multiplex)


def mixture_components(n):
    return max(1, int(np.floor(n / 7.0 + 0.5)))


def draw_latents(spec, rng):
    '''Latent positions for ``spec``, an ``(n, p)`` array.'''
    n, p = spec.n, spec.p
    if spec.kind in ('gaussian', 'large_K_gaussian'):
        return rng.standard_normal((n, p))
    if spec.kind == 'mixture':
        G = mixture_components(n)
        means = rng.standard_normal((G, p))
        variances = rng.uniform(0.1, 1.0, (G, p))
        component = rng.integers(G, size=n)
        return means[component] + np.sqrt(variances[component]) \
            * rng.standard_normal((n, p))
    if spec.kind == 'hotelling':
        dof = HOTELLING_DOF
        if dof - p + 1 < 1:
            raise ConfigurationError('The Hotelling design supports at most '
                                     '{} dimensions'.format(dof))
        direction = rng.standard_normal((n, p))
        direction /= np.linalg.norm(direction, axis=1)[:, None]
        f = rng.f(p, dof - p + 1, size=n)
        t2 = dof * p / float(dof - p + 1) * f
        return direction * np.sqrt(t2)[:, None]
    raise ConfigurationError('Unknown scenario kind: {}'.format(spec.kind))


def tabulated_params(n, K):
    try:
        alpha, beta = TABULATED[(n, K)]
    except KeyError:
        raise DomainError('No tabulated parameters for n={}, K={}'
                          .format(n, K))
    return np.array(alpha), np.array(beta)


def common_beta_params(case):
    '''(n, alpha, beta) of a design with a common coefficient of 1. The
    first intercept is not pinned to 0.'''
    try:
        n, alpha = COMMON_BETA_CASES[case]
    except KeyError:
        raise DomainError('Unknown case {}, expected one of {}'
                          .format(case, sorted(COMMON_BETA_CASES)))
    return n, np.array(alpha), np.ones(len(alpha))


def draw_network_params(spec, rng):
    '''(alpha, beta) with the reference network at (0, 1) and the others
    drawn from standard normals truncated to their admissible ranges.
    ``spec.case`` and ``spec.tabulated`` replace the draws with fixed
    designs.'''
    truth = spec.truth or {}
    if spec.case is not None:
        _, alpha, beta = common_beta_params(spec.case)
    elif spec.tabulated and (spec.n, spec.K) in TABULATED:
        alpha, beta = tabulated_params(spec.n, spec.K)
    else:
        lb = lb_alpha(spec.n)
        alpha = np.zeros(spec.K)
        beta = np.ones(spec.K)
        for k in range(1, spec.K):
            alpha[k] = truncated_normal(0.0, 1.0, lb, rng)
        for k in range(1, spec.K):
            beta[k] = truncated_normal(0.0, 1.0, 0.0, rng)
    if 'alpha' in truth:
        alpha = np.array(truth['alpha'], dtype=np.float64)
    if 'beta' in truth:
        beta = np.array(truth['beta'], dtype=np.float64)
    if len(alpha) != spec.K or len(beta) != spec.K:
        raise ConfigurationError('Need {} intercepts and coefficients'
                                 .format(spec.K))
    return alpha, beta


def presence_masks(n, K, presence, rng):
    '''``(K, n, n)`` presence masks. ``euro_like`` removes a binomial
    number of nodes per network, favouring nodes with low inclusion
    weight.'''
    H = np.ones((K, n, n), dtype=np.int8)
    diag = np.arange(n)
    H[:, diag, diag] = 0
    if presence == 'full':
        return H
    if presence != 'euro_like':
        raise ConfigurationError('Unknown presence design: {}'
                                 .format(presence))
    weight = rng.uniform(0.5, 1.0, n)
    propensity = (1.0 - weight) / np.sum(1.0 - weight)
    for k in range(K):
        count = min(int(rng.binomial(n, ABSENCE_RATE)), n - 2)
        absent = rng.choice(n, size=count, replace=False, p=propensity)
        H[k, absent, :] = 0
        H[k, :, absent] = 0
    return H


def generate(spec, rng=None, covariates=None, lam=None):
    '''Simulate a multiplex for ``spec``. Covariates with effects ``lam``
    enter the edge probabilities when given.'''
    spec.validate()
    rng = np.random.default_rng(spec.seed if rng is None else rng)
    n, K = spec.n, spec.K

    truth = spec.truth or {}
    if 'z' in truth:
        z = np.array(truth['z'], dtype=np.float64)
        if z.shape != (n, spec.p):
            raise ConfigurationError('Latent truth is {}, expected {}'
                                     .format(z.shape, (n, spec.p)))
    else:
        z = draw_latents(spec, rng)
    alpha, beta = draw_network_params(spec, rng)
    H = presence_masks(n, K, spec.presence, rng)

    if covariates is None:
        covariates = CovariateSet(n=n)
        lam = np.zeros(0)
    lam = np.zeros(covariates.F) if lam is None else np.asarray(lam)
    C = covariate_term(lam, covariates)

    P = edge_probability(alpha[:, None, None], beta[:, None, None],
                         distance_matrix(z)[None], C[None])
    Y = ((rng.uniform(size=(K, n, n)) < P) & (H == 1)).astype(np.int8)
    labels = [u'n{:03d}'.format(i + 1) for i in range(n)]
    names = [u'{}'.format(k + 1) for k in range(K)]
    multiplex = Multiplex(Y, H, labels=labels, names=names)
    logger.info('Simulated {} networks on {} nodes ({} design)'
                .format(K, n, spec.kind))
    return GroundTruth(z, alpha, beta, multiplex, lambda_true=lam,
                       covariates=covariates)
