# -*- coding: utf-8 -*-
'''
    latentplex.initial
    ~~~~~~~~~~~~~~~~~~

    Starting values: latent positions from classical scaling of geodesic
    distances, intercepts and coefficients from one logistic regression per
    network, nuisance parameters from the sample moments of those.

    :license: MIT, see LICENSE for more details.
'''
import logging

import numpy as np
from scipy.optimize import minimize
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path
from scipy.special import expit, logit

from .exceptions import DimensionError, DomainError
from .model import ModelState, clip_density, distance_matrix, \
    lb_alpha, observed_density, reference_intercept

logger = logging.getLogger(__name__)

#: starting value of every covariate effect
LAMBDA_START = 0.01

#: floor on starting nuisance variances
VARIANCE_FLOOR = 0.01

#: clamped intercepts land this far above LB(alpha)
CLAMP_MARGIN = 1e-6


class InitReport(object):
    '''What :func:`initialize` decided and which fallbacks it took.'''

    #: network whose geodesic distances seeded the latent positions
    geodesic_network = None

    #: longest finite geodesic in that network
    geodesic_diameter = None

    def __init__(self):
        self.clamped_alpha = []
        self.clamped_beta = []
        self.separated = []
        self.notes = []

    def note(self, message):
        logger.info(message)
        self.notes.append(message)

    def __repr__(self):
        return 'latentplex.initial.InitReport({})'.format(self.notes)


def _geodesics(m, k):
    A = ((m.Y[k] + m.Y[k].T) > 0).astype(np.int8)
    if not A.any():
        logger.warning('Network {} has no edges, all geodesic distances '
                       'are 1'.format(m.names[k]))
    G = shortest_path(csr_matrix(A), directed=False, unweighted=True)
    finite = np.isfinite(G)
    longest = G[finite].max() if finite.any() else 0.0
    G[~finite] = longest + 1
    np.fill_diagonal(G, 0.0)
    return G, float(longest)


def geodesic_distances(m, k):
    '''Shortest path lengths of network ``k``, ignoring edge direction.
    Disconnected pairs get one more than the longest finite path.'''
    return _geodesics(m, k)[0]


def classical_mds(D, p):
    '''Classical scaling of a dissimilarity matrix holding squared
    distances. Dimensions with non-positive eigenvalues come out as zero.'''
    D = np.asarray(D, dtype=np.float64)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise DimensionError('Dissimilarities must be square, got {}'
                             .format(D.shape))
    n = D.shape[0]
    if not 1 <= p <= n:
        raise DimensionError('Cannot embed {} points in {} dimensions'
                             .format(n, p))
    J = np.eye(n) - 1.0 / n
    B = -0.5 * J.dot(D).dot(J)
    values, vectors = np.linalg.eigh(B)
    order = np.argsort(values)[::-1][:p]
    scale = np.sqrt(np.clip(values[order], 0.0, None))
    return vectors[:, order] * scale


def _separated(y, d):
    ones = d[y == 1]
    zeros = d[y == 0]
    if len(ones) == 0 or len(zeros) == 0:
        return True
    return ones.max() <= zeros.min() or ones.min() >= zeros.max()


def _negative_log_likelihood(params, y, d):
    a, b = params
    eta = a + b * d
    p = expit(eta)
    value = np.sum(np.logaddexp(0.0, eta) - y * eta)
    grad = np.array([np.sum(p - y), np.sum((p - y) * d)])
    return value, grad


def _fit_logistic(y, d):
    density = y.mean()
    res = minimize(_negative_log_likelihood, [logit(density), 0.0],
                   args=(y, d), jac=True, method='BFGS')
    if not res.success:
        logger.debug('Logistic fit did not converge: {}'.format(res.message))
    return res.x


def logistic_starts(m, D0, hyper, report=None):
    '''Starting (alpha, beta) per network from a logistic regression of the
    observed dyads on the starting distances ``D0``.'''
    report = report if report is not None else InitReport()
    lb = lb_alpha(m.n)
    alpha0 = np.zeros(m.K)
    beta0 = np.zeros(m.K)
    for k in range(m.K):
        if hyper.latent_space and k == hyper.reference:
            alpha0[k], beta0[k] = hyper.alpha_ref, 1.0
            continue
        mask = m.H[k] > 0
        y = m.Y[k][mask].astype(np.float64)
        dyads = len(y)
        if dyads == 0:
            raise DomainError('Network {} has no eligible dyads'
                              .format(m.names[k]))
        density = clip_density(y.mean(), dyads)

        if not hyper.latent_space:
            a, b = logit(density), 0.0
        elif _separated(y, D0[mask]):
            report.separated.append(k)
            report.note('Network {} is separated by the starting distances, '
                        'using density based starts'.format(m.names[k]))
            a, b = reference_intercept(density), 1.0
        else:
            a, slope = _fit_logistic(y, D0[mask])
            b = -slope

        if a <= lb:
            report.clamped_alpha.append(k)
            report.note('Clamping starting alpha of network {} from {:.4g}'
                        .format(m.names[k], a))
            a = lb + CLAMP_MARGIN
        if b < 0:
            report.clamped_beta.append(k)
            report.note('Clamping starting beta of network {} from {:.4g}'
                        .format(m.names[k], b))
            b = 0.0
        alpha0[k], beta0[k] = a, b
    return alpha0, beta0


def _start_variance(values, report, what):
    if len(values) < 2:
        report.note('Single value for {}, starting variance is 1'
                    .format(what))
        return 1.0
    return max(float(np.var(values, ddof=1)), VARIANCE_FLOOR)


def initialize(m, X, hyper, rng=None):
    '''Starting :class:`ModelState` and the :class:`InitReport` describing
    how it was obtained.'''
    hyper = hyper.resolve(m).validate(m)
    rng = np.random.default_rng(rng)
    report = InitReport()

    if hyper.latent_space:
        if hyper.geodesic_network is None:
            chosen = int(rng.integers(m.K))
        else:
            chosen = hyper.geodesic_network
        report.geodesic_network = chosen
        report.note('Starting positions from the geodesics of network {}'
                    .format(m.names[chosen]))
        G, report.geodesic_diameter = _geodesics(m, chosen)
        z = classical_mds(G, hyper.p)
    else:
        z = np.zeros((m.n, hyper.p))

    alpha0, beta0 = logistic_starts(m, distance_matrix(z), hyper, report)
    lam = np.full(X.F, LAMBDA_START)
    state = ModelState(
        z=z, alpha=alpha0, beta=beta0, lam=lam,
        mu_alpha=float(np.mean(alpha0)),
        sigma2_alpha=_start_variance(alpha0, report, 'alpha'),
        mu_beta=float(np.mean(beta0)),
        sigma2_beta=_start_variance(beta0, report, 'beta'),
        mu_lambda=lam.copy(),
        sigma2_lambda=np.ones(X.F))
    return state, report


def density_summary(m):
    '''Observed densities of all networks, for logging.'''
    return [observed_density(m, k) for k in range(m.K)]
