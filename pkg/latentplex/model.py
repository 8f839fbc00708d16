# -*- coding: utf-8 -*-
'''
    latentplex.model
    ~~~~~~~~~~~~~~~~

    This module provides the datastructures of the latent space model for
    multiplexes and all of its closed-form mathematics: distances, edge
    probabilities, the masked log-likelihood and the log-posterior.

    A distance matrix is a plain ``(n, n)`` float array holding squared
    Euclidean distances between latent coordinates, with a zero diagonal.

    :license: MIT, see LICENSE for more details.
'''
import logging
import math

import numpy as np
from scipy.spatial.distance import pdist, squareform
from scipy.special import expit, logit

from .exceptions import ConfigurationError, DimensionError, DomainError, \
    ValidationError

logger = logging.getLogger(__name__)

LOG_2PI = math.log(2 * math.pi)


class Multiplex(object):
    '''K binary directed networks on a common node set.

    ``Y`` holds the adjacency matrices and ``H`` the presence masks, both
    of shape ``(K, n, n)``. ``H`` defaults to full presence.'''

    #: node identifiers, in matrix order
    labels = None

    #: network identifiers, in matrix order
    names = None

    def __init__(self, Y, H=None, labels=None, names=None):
        Y = np.asarray(Y)
        if Y.ndim == 2:
            Y = Y[np.newaxis]
        if Y.ndim != 3 or Y.shape[1] != Y.shape[2]:
            raise DimensionError('Adjacency matrices must have shape '
                                 '(K, n, n), got {}'.format(Y.shape))
        K, n, _ = Y.shape
        if K < 1:
            raise DimensionError('A multiplex needs at least one network.')

        if H is None:
            H = np.ones((K, n, n), dtype=np.int8)
            H[:, np.arange(n), np.arange(n)] = 0
        H = np.asarray(H)
        if H.ndim == 2:
            H = H[np.newaxis]
        if H.shape != Y.shape:
            raise DimensionError('Presence masks have shape {}, adjacency '
                                 'matrices {}'.format(H.shape, Y.shape))

        self.labels = list(labels) if labels is not None else \
            [u'{}'.format(i + 1) for i in range(n)]
        self.names = list(names) if names is not None else \
            [u'{}'.format(k + 1) for k in range(K)]
        if len(self.labels) != n:
            raise DimensionError('Got {} labels for {} nodes'
                                 .format(len(self.labels), n))
        if len(self.names) != K:
            raise DimensionError('Got {} names for {} networks'
                                 .format(len(self.names), K))

        self._check_binary(Y, 'Adjacency')
        self._check_binary(H, 'Presence')
        self.Y = Y.astype(np.int8)
        self.H = H.astype(np.int8)
        self.validate()

    @staticmethod
    def _check_binary(A, what):
        if not np.all((A == 0) | (A == 1)):
            raise ValidationError('{} matrices must be binary'.format(what))

    @property
    def K(self):
        return self.Y.shape[0]

    @property
    def n(self):
        return self.Y.shape[1]

    def validate(self):
        diag = np.arange(self.n)
        loops = np.argwhere(self.Y[:, diag, diag] != 0)
        if len(loops):
            raise ValidationError(
                'Self-loops are not allowed',
                [(self.names[k], self.labels[i]) for k, i in loops])
        self.H[:, diag, diag] = 0

        ineligible = np.argwhere((self.Y == 1) & (self.H == 0))
        if len(ineligible):
            raise ValidationError(
                'Edges between absent nodes',
                [(self.names[k], self.labels[i], self.labels[j])
                 for k, i, j in ineligible])

    def edge_count(self, k):
        '''Masked edge count E of network ``k``.'''
        return int(np.sum(self.H[k] * self.Y[k]))

    def dyad_count(self, k):
        '''Number of eligible ordered dyads of network ``k``.'''
        return int(np.sum(self.H[k]))

    def __repr__(self):
        return 'latentplex.model.Multiplex(n={}, K={})'.format(self.n,
                                                                 self.K)


class CovariateSet(object):
    '''F edge-level covariates, negative-effect coded: a larger value means
    a lower edge probability. The diagonal is never read.'''

    def __init__(self, X=None, names=None, n=None):
        if X is None:
            if n is None:
                raise DimensionError('An empty covariate set needs n.')
            X = np.zeros((0, n, n))
        X = np.array(X, dtype=np.float64)
        if X.ndim == 2:
            X = X[np.newaxis]
        if X.ndim != 3 or X.shape[1] != X.shape[2]:
            raise DimensionError('Covariates must have shape (F, n, n), '
                                 'got {}'.format(X.shape))
        if n is not None and X.shape[1] != n:
            raise DimensionError('Covariates are {0}x{0}, expected {1}x{1}'
                                 .format(X.shape[1], n))
        diag = np.arange(X.shape[1])
        X[:, diag, diag] = 0.0
        if not np.all(np.isfinite(X)):
            raise ValidationError('Covariates must be finite')
        if np.any(X < 0):
            raise ValidationError('Covariates must be non-negative')

        self.X = X
        self.names = list(names) if names is not None else \
            [u'x{}'.format(f + 1) for f in range(X.shape[0])]
        if len(self.names) != X.shape[0]:
            raise DimensionError('Got {} names for {} covariates'
                                 .format(len(self.names), X.shape[0]))

    @property
    def F(self):
        return self.X.shape[0]

    @property
    def n(self):
        return self.X.shape[1]

    def subset(self, names):
        '''Covariate set restricted to ``names``, in that order.'''
        missing = [name for name in names if name not in self.names]
        if missing:
            raise ValidationError('Unknown covariates', missing)
        idx = [self.names.index(name) for name in names]
        return CovariateSet(self.X[idx], names=list(names), n=self.n)

    def __repr__(self):
        return 'latentplex.model.CovariateSet(F={}, names={})'.format(
            self.F, self.names)


class ModelState(object):
    '''One point of the posterior. ``lam`` holds the covariate effects.'''

    _fields = ('z', 'alpha', 'beta', 'lam', 'mu_alpha', 'sigma2_alpha',
               'mu_beta', 'sigma2_beta', 'mu_lambda', 'sigma2_lambda')

    def __init__(self, z, alpha, beta, lam=(), mu_alpha=0.0,
                 sigma2_alpha=1.0, mu_beta=0.0, sigma2_beta=1.0,
                 mu_lambda=None, sigma2_lambda=None):
        self.z = np.array(z, dtype=np.float64, ndmin=2)
        self.alpha = np.array(alpha, dtype=np.float64, ndmin=1)
        self.beta = np.array(beta, dtype=np.float64, ndmin=1)
        self.lam = np.array(lam, dtype=np.float64).reshape(-1)
        F = len(self.lam)
        self.mu_alpha = float(mu_alpha)
        self.sigma2_alpha = float(sigma2_alpha)
        self.mu_beta = float(mu_beta)
        self.sigma2_beta = float(sigma2_beta)
        self.mu_lambda = np.zeros(F) if mu_lambda is None else \
            np.array(mu_lambda, dtype=np.float64).reshape(-1)
        self.sigma2_lambda = np.ones(F) if sigma2_lambda is None else \
            np.array(sigma2_lambda, dtype=np.float64).reshape(-1)
        if len(self.alpha) != len(self.beta):
            raise DimensionError('alpha and beta differ in length')
        if len(self.mu_lambda) != F or len(self.sigma2_lambda) != F:
            raise DimensionError('lambda nuisance parameters differ in '
                                 'length from lambda')

    @property
    def n(self):
        return self.z.shape[0]

    @property
    def p(self):
        return self.z.shape[1]

    @property
    def K(self):
        return len(self.alpha)

    @property
    def F(self):
        return len(self.lam)

    def copy(self):
        return ModelState(**dict((name, np.copy(getattr(self, name)))
                                 for name in self._fields))

    def violations(self, lower_alpha):
        '''List the bound invariants this state breaks.'''
        rv = []
        if not np.all(np.isfinite(self.z)):
            rv.append('latent coordinates must be finite')
        if np.any(self.beta < 0):
            rv.append('beta must be non-negative')
        if np.any(self.alpha <= lower_alpha):
            rv.append('alpha must exceed {:.6g}'.format(lower_alpha))
        if np.any(self.lam < 0):
            rv.append('lambda must be non-negative')
        if self.mu_alpha <= lower_alpha:
            rv.append('mu_alpha must exceed {:.6g}'.format(lower_alpha))
        if self.mu_beta < 0:
            rv.append('mu_beta must be non-negative')
        if np.any(self.mu_lambda < 0):
            rv.append('mu_lambda must be non-negative')
        if self.sigma2_alpha <= 0 or self.sigma2_beta <= 0 or \
                np.any(self.sigma2_lambda <= 0):
            rv.append('variances must be positive')
        return rv

    def __eq__(self, other):
        return isinstance(other, type(self)) and all(
            np.array_equal(getattr(self, name), getattr(other, name))
            for name in self._fields)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return 'latentplex.model.ModelState({})'.format({
            'alpha': self.alpha.tolist(),
            'beta': self.beta.tolist(),
            'lambda': self.lam.tolist(),
            'n': self.n,
            'p': self.p
        })


class HyperConfig(object):
    '''Hyperparameters, identifiability constraints and chain controls.

    Values left at ``None`` are resolved against a multiplex with
    :meth:`resolve`.'''

    #: latent dimension
    p = 2

    #: index of the reference network
    reference = 0

    #: intercept of the reference network; None means
    #: ``reference_intercept`` of its observed density
    alpha_ref = None

    #: degrees of freedom of the variance priors
    nu_alpha = 3.0
    nu_beta = 3.0
    nu_lambda = 3.0

    #: variance scales of the mean priors; None means (K - 1) / K
    tau_alpha = None
    tau_beta = None
    tau_lambda = None

    #: prior locations of the mean parameters; None for m_alpha and
    #: m_beta means the sample means of the starting values
    m_alpha = None
    m_beta = None
    m_lambda = 0.0

    #: sweeps whose Procrustes correlation with the previous configuration
    #: is above this value are discarded; 1.0 disables the check
    procrustes_threshold = 0.85

    seed = None
    iters = 10000

    #: None means 10% of iters
    burnin = None
    thin = 1

    #: False fixes beta to zero everywhere (random graph variants)
    latent_space = True

    #: network used for the geodesic starting distances; None draws one
    geodesic_network = None

    _keys = ('p', 'reference', 'alpha_ref', 'nu_alpha', 'nu_beta',
             'nu_lambda', 'tau_alpha', 'tau_beta', 'tau_lambda', 'm_alpha',
             'm_beta', 'm_lambda', 'procrustes_threshold', 'seed', 'iters',
             'burnin', 'thin', 'latent_space', 'geodesic_network')

    def __init__(self, **kwargs):
        for k, v in kwargs.items():
            if k not in self._keys:
                raise TypeError('Unknown hyperparameter: {}'.format(k))
            setattr(self, k, v)

    def as_dict(self):
        return dict((k, getattr(self, k)) for k in self._keys)

    def copy(self, **kwargs):
        rv = HyperConfig(**self.as_dict())
        for k, v in kwargs.items():
            setattr(rv, k, v)
        return rv

    def resolve(self, m, state=None):
        '''Fill in every ``None`` that depends on the data or on the
        starting state.'''
        rv = self.copy()
        K = m.K
        tau_default = (K - 1.0) / K if K > 1 else 1.0
        for name in ('tau_alpha', 'tau_beta', 'tau_lambda'):
            if getattr(rv, name) is None:
                setattr(rv, name, tau_default)
        if rv.burnin is None:
            rv.burnin = int(rv.iters) // 10
        if rv.alpha_ref is None and rv.latent_space and \
                0 <= rv.reference < K:
            density = observed_density(m, rv.reference)
            rv.alpha_ref = reference_intercept(
                clip_density(density, m.dyad_count(rv.reference)))
        if state is not None:
            if rv.m_alpha is None:
                rv.m_alpha = float(np.mean(state.alpha))
            if rv.m_beta is None:
                rv.m_beta = float(np.mean(state.beta))
        return rv

    def validate(self, m=None):
        problems = []
        if not 0 <= self.procrustes_threshold <= 1:
            problems.append('procrustes_threshold must lie in [0, 1]')
        if self.burnin is not None and \
                not 0 <= self.burnin <= self.iters:
            problems.append('burnin must lie in [0, iters]')
        if self.iters < 0:
            problems.append('iters must be non-negative')
        if self.thin < 1:
            problems.append('thin must be at least 1')
        if self.p < 1:
            problems.append('p must be at least 1')
        for name in ('nu_alpha', 'nu_beta', 'nu_lambda', 'tau_alpha',
                     'tau_beta', 'tau_lambda'):
            value = getattr(self, name)
            if value is not None and not value > 0:
                problems.append('{} must be positive'.format(name))
        if m is not None:
            if not 0 <= self.reference < m.K:
                problems.append('reference must index one of the {} '
                                'networks'.format(m.K))
            elif self.latent_space and self.alpha_ref is not None and \
                    not self.alpha_ref > lb_alpha(m.n):
                problems.append('alpha_ref must exceed LB(alpha) = {:.6g}'
                                .format(lb_alpha(m.n)))
            if self.geodesic_network is not None and \
                    not 0 <= self.geodesic_network < m.K:
                problems.append('geodesic_network must index one of the {} '
                                'networks'.format(m.K))
        if problems:
            raise ConfigurationError('; '.join(problems))
        return self

    def free_networks(self, K):
        '''Networks whose intercept and coefficient are sampled.'''
        if not self.latent_space:
            return list(range(K)), []
        free = [k for k in range(K) if k != self.reference]
        return free, free

    def __repr__(self):
        return 'latentplex.model.HyperConfig({})'.format(self.as_dict())


def clip_density(density, dyads):
    # Empty or complete networks have no finite logit.
    eps = 0.5 / max(dyads, 1)
    return min(max(density, eps), 1 - eps)


def squared_distance(zi, zj):
    zi = np.asarray(zi, dtype=np.float64)
    zj = np.asarray(zj, dtype=np.float64)
    if zi.shape != zj.shape:
        raise DimensionError('Cannot compare points of shape {} and {}'
                             .format(zi.shape, zj.shape))
    return float(np.sum((zi - zj) ** 2))


def distance_matrix(z):
    z = np.asarray(z, dtype=np.float64)
    if z.ndim != 2:
        raise DimensionError('Latent coordinates must be an (n, p) array')
    if not np.all(np.isfinite(z)):
        raise DomainError('Latent coordinates must be finite')
    if z.shape[0] < 2:
        return np.zeros((z.shape[0], z.shape[0]))
    return squareform(pdist(z, 'sqeuclidean'))


def edge_probability(alpha, beta, d, cov_term=0.0):
    '''Probability of an edge with intercept ``alpha``, coefficient
    ``beta``, squared distance ``d`` and covariate term ``cov_term``.
    Works elementwise on arrays.'''
    return expit(alpha - beta * d - cov_term)


def covariate_term(lam, X):
    '''The ``(n, n)`` matrix of sum_f lambda_f x_ijf.'''
    lam = np.asarray(lam, dtype=np.float64).reshape(-1)
    if len(lam) != X.F:
        raise DimensionError('Got {} effects for {} covariates'
                             .format(len(lam), X.F))
    if X.F == 0:
        return np.zeros((X.n, X.n))
    return np.tensordot(lam, X.X, axes=1)


def edge_probabilities(state, D, X):
    '''``(K, n, n)`` edge probabilities of every network.'''
    C = covariate_term(state.lam, X)
    P = edge_probability(state.alpha[:, None, None],
                         state.beta[:, None, None], D[None], C[None])
    diag = np.arange(D.shape[0])
    P[:, diag, diag] = 0.0
    return P


def _bernoulli_terms(y, eta):
    # log(1 + exp(eta)) without overflow
    return y * eta - np.logaddexp(0.0, eta)


def network_log_likelihood(m, k, alpha, beta, D, C):
    '''Masked log-likelihood of network ``k``. ``C`` is the covariate
    term from :func:`covariate_term`.'''
    eta = alpha - beta * D - C
    return float(np.sum(m.H[k] * _bernoulli_terms(m.Y[k], eta)))


def _check_dimensions(m, state, D, X):
    n = m.n
    if D.shape != (n, n):
        raise DimensionError('Distance matrix is {}, expected {}'
                             .format(D.shape, (n, n)))
    if X.n != n:
        raise DimensionError('Covariates describe {} nodes, the multiplex {}'
                             .format(X.n, n))
    if state.K != m.K:
        raise DimensionError('State has {} networks, the multiplex {}'
                             .format(state.K, m.K))
    if state.F != X.F:
        raise DimensionError('State has {} covariate effects for {} '
                             'covariates'.format(state.F, X.F))


def log_likelihood(m, state, D, X):
    _check_dimensions(m, state, D, X)
    C = covariate_term(state.lam, X)
    total = 0.0
    for k in range(m.K):
        total += network_log_likelihood(m, k, state.alpha[k], state.beta[k],
                                        D, C)
    return total


def normal_kernel(x, mu, sigma2):
    '''Gaussian log density up to -log(2 pi) / 2.'''
    return -0.5 * (x - mu) ** 2 / sigma2 - 0.5 * math.log(sigma2)


def nuisance_log_prior(mu, sigma2, m, tau, nu):
    '''Log prior of a (mean, variance) pair: truncated normal mean with
    variance tau * sigma2 and a scaled inverse chi-squared variance.'''
    return (-0.5 * math.log(tau * sigma2)
            - 0.5 * (mu - m) ** 2 / (tau * sigma2)
            - (0.5 * nu + 1) * math.log(sigma2)
            - 0.5 / sigma2)


def log_posterior(m, state, D, X, hyper):
    '''Log-posterior up to a constant depending on ``hyper`` only. Returns
    ``-inf`` outside the prior support.'''
    lb = lb_alpha(m.n)
    if state.violations(lb):
        return -np.inf
    hyper = hyper.resolve(m, state)
    free_alpha, free_beta = hyper.free_networks(m.K)

    rv = log_likelihood(m, state, D, X)
    rv -= 0.5 * float(np.sum(state.z ** 2)) + 0.5 * state.z.size * LOG_2PI

    # The hierarchy spans all K networks, the fixed reference included,
    # so the mean and variance conditionals sum over K values.
    if free_alpha:
        for k in range(m.K):
            rv += normal_kernel(state.alpha[k], state.mu_alpha,
                                state.sigma2_alpha)
        rv += nuisance_log_prior(state.mu_alpha, state.sigma2_alpha,
                                 hyper.m_alpha, hyper.tau_alpha,
                                 hyper.nu_alpha)
    if free_beta:
        for k in range(m.K):
            rv += normal_kernel(state.beta[k], state.mu_beta,
                                state.sigma2_beta)
        rv += nuisance_log_prior(state.mu_beta, state.sigma2_beta,
                                 hyper.m_beta, hyper.tau_beta,
                                 hyper.nu_beta)
    for f in range(state.F):
        rv += normal_kernel(state.lam[f], state.mu_lambda[f],
                            state.sigma2_lambda[f])
        rv += nuisance_log_prior(state.mu_lambda[f], state.sigma2_lambda[f],
                                 hyper.m_lambda, hyper.tau_lambda,
                                 hyper.nu_lambda)
    return rv


def lb_alpha(n):
    '''Lower bound on the intercepts: below it the implied random graph is
    not almost surely connected.'''
    if n < 2:
        raise DomainError('LB(alpha) needs at least two nodes, got {}'
                          .format(n))
    log_n = math.log(n)
    return math.log(log_n / (n - log_n))


def reference_intercept(density):
    '''Intercept of the reference network for an observed density, taking
    the typical squared distance between Gaussian coordinates to be 2.'''
    if not 0 < density < 1:
        raise DomainError('Density must lie strictly between 0 and 1, got {}'
                          .format(density))
    return float(logit(density)) + 2.0


def observed_density(m, k):
    dyads = m.dyad_count(k)
    if dyads == 0:
        raise DomainError('Network {} has no eligible dyads'
                          .format(m.names[k]))
    return m.edge_count(k) / float(dyads)
