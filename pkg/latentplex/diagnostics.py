# -*- coding: utf-8 -*-
'''
    latentplex.diagnostics
    ~~~~~~~~~~~~~~~~~~~~~~

    Posterior summaries and model diagnostics: Procrustes alignment and
    correlation, the deviance information criterion, association between
    networks and overlap between latent and external neighbourhoods.

    :license: MIT, see LICENSE for more details.
'''
import collections
import logging

import numpy as np
from scipy.linalg import orthogonal_procrustes
from scipy.spatial import procrustes

from .exceptions import DimensionError, DomainError
from .model import ModelState, distance_matrix, edge_probabilities, \
    log_likelihood

logger = logging.getLogger(__name__)

#: default neighbourhood sizes for overlap reports
NEIGHBOR_SIZES = (1, 2, 3, 5, 10, 15)

DicComponents = collections.namedtuple(
    'DicComponents', ['dic', 'd_hat', 'd_bar', 'p_d'])

NeighborOverlap = collections.namedtuple(
    'NeighborOverlap', ['sizes', 'average', 'footnote_average', 'maximum'])

BorderOverlap = collections.namedtuple(
    'BorderOverlap', ['ratios', 'average', 'mean_neighbors'])


class PosteriorSummary(object):
    '''Posterior means, standard deviations and 95% intervals of a chain.

    Latent draws are aligned to the first stored draw before averaging.'''

    def __init__(self, **kwargs):
        self.__dict__.update(kwargs)

    def mean_state(self):
        '''The state at the posterior means.'''
        return ModelState(
            z=self.z_mean, alpha=self.alpha_mean, beta=self.beta_mean,
            lam=self.lambda_mean, mu_alpha=self.mu_alpha_mean,
            sigma2_alpha=self.sigma2_alpha_mean, mu_beta=self.mu_beta_mean,
            sigma2_beta=self.sigma2_beta_mean,
            mu_lambda=self.mu_lambda_mean,
            sigma2_lambda=self.sigma2_lambda_mean)

    def __repr__(self):
        return 'latentplex.diagnostics.PosteriorSummary(draws={})'.format(
            self.draws)


def _check_configurations(A, B):
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if A.ndim != 2 or A.shape != B.shape:
        raise DimensionError('Configurations must be (n, p) arrays of the '
                             'same shape, got {} and {}'
                             .format(A.shape, B.shape))
    if A.shape[0] < 2:
        raise DimensionError('Configurations need at least two points')
    return A, B


def procrustes_correlation(A, B):
    '''Similarity of two configurations after translation, rotation,
    reflection and scaling, between 0 and 1.'''
    A, B = _check_configurations(A, B)
    try:
        _, _, disparity = procrustes(A, B)
    except ValueError as e:
        raise DomainError('Degenerate configuration: {}'.format(e))
    return float(np.sqrt(np.clip(1.0 - disparity, 0.0, 1.0)))


def align_to(reference, z):
    '''Translate and rotate ``z`` onto ``reference``. Distances within
    ``z`` are preserved.'''
    reference, z = _check_configurations(reference, z)
    ref_center = reference.mean(axis=0)
    centered = z - z.mean(axis=0)
    R, _ = orthogonal_procrustes(centered, reference - ref_center)
    return np.dot(centered, R) + ref_center


def _interval(values):
    return (np.percentile(values, 2.5, axis=0),
            np.percentile(values, 97.5, axis=0))


def summarize(chain, X=None):
    '''Summarize the stored draws of ``chain``. Mean edge probabilities are
    only computed when the covariates are known, either from ``X`` or from
    the chain itself.'''
    if len(chain) == 0:
        raise DomainError('Cannot summarize an empty chain')
    draws = chain.draws
    X = X if X is not None else chain.covariates

    rv = {'draws': len(draws)}
    for name in ('alpha', 'beta', 'lam', 'mu_alpha', 'sigma2_alpha',
                 'mu_beta', 'sigma2_beta', 'mu_lambda', 'sigma2_lambda'):
        values = np.array([getattr(d, name) for d in draws],
                          dtype=np.float64)
        key = 'lambda' if name == 'lam' else name
        rv[key + '_mean'] = values.mean(axis=0)
        rv[key + '_sd'] = values.std(axis=0)
        rv[key + '_interval'] = _interval(values)

    reference = draws[0].z
    aligned = np.array([align_to(reference, d.z) for d in draws])
    rv['z_mean'] = aligned.mean(axis=0)
    rv['z_sd'] = aligned.std(axis=0)

    distances = [distance_matrix(d.z) for d in draws]
    rv['distance_mean'] = np.mean(distances, axis=0)

    if X is not None:
        rv['probability_mean'] = np.mean(
            [edge_probabilities(d, D, X) for d, D in zip(draws, distances)],
            axis=0)
    else:
        rv['probability_mean'] = None

    rv['acceptance'] = chain.acceptance_rates()
    return PosteriorSummary(**rv)


def dic_from_trace(deviances, d_hat):
    '''DIC from a deviance trace and the deviance at the posterior means.'''
    deviances = np.asarray(deviances, dtype=np.float64)
    if deviances.size == 0:
        raise DomainError('DIC needs at least one stored draw')
    d_bar = float(deviances.mean())
    p_d = d_bar - d_hat
    return DicComponents(d_hat + 2 * p_d, d_hat, d_bar, p_d)


def dic_components(chain, m, X):
    if len(chain) == 0:
        raise DomainError('DIC needs at least one stored draw')
    state = summarize(chain, X).mean_state()
    d_hat = -2.0 * log_likelihood(m, state, distance_matrix(state.z), X)
    return dic_from_trace(chain.deviance_trace, d_hat)


def dic(chain, m, X):
    return dic_components(chain, m, X).dic


def _off_diagonal(n):
    return ~np.eye(n, dtype=bool)


def association(m, k, l):
    '''Share of ordered dyads on which networks ``k`` and ``l`` agree,
    counting absent dyads as non-edges.'''
    observed = m.H * m.Y
    mask = _off_diagonal(m.n)
    return float(np.mean((observed[k] == observed[l])[mask]))


def association_matrix(m):
    rv = np.ones((m.K, m.K))
    for k in range(m.K):
        for l in range(k + 1, m.K):
            rv[k, l] = rv[l, k] = association(m, k, l)
    return rv


def covariate_association(m, X, k, f):
    '''Share of ordered dyads on which network ``k`` agrees with the binary
    covariate ``f``, read as 1 - x.'''
    observed = (m.H[k] * m.Y[k]).astype(np.float64)
    mask = _off_diagonal(m.n)
    return float(np.mean((observed == 1.0 - X.X[f])[mask]))


def nearest_neighbors(coordinates, r):
    '''The ``r`` nearest other nodes of every node, ties broken by the
    lower index.'''
    D = distance_matrix(np.asarray(coordinates, dtype=np.float64))
    np.fill_diagonal(D, np.inf)
    return np.argsort(D, axis=1, kind='stable')[:, :r]


def neighbor_overlap(latent, external, r):
    '''Overlap of the ``r``-nearest neighbourhoods in two configurations.

    ``average`` divides the summed overlap by n * r, ``footnote_average``
    by r alone.'''
    latent = np.asarray(latent, dtype=np.float64)
    external = np.asarray(external, dtype=np.float64)
    if latent.ndim != 2 or external.ndim != 2 or \
            latent.shape[0] != external.shape[0]:
        raise DimensionError('Both configurations must describe the same '
                             'nodes')
    n = latent.shape[0]
    if not 1 <= r <= n - 1:
        raise DomainError('r must lie between 1 and {}, got {}'
                          .format(n - 1, r))
    ln = nearest_neighbors(latent, r)
    gn = nearest_neighbors(external, r)
    sizes = np.array([len(set(a) & set(b)) for a, b in zip(ln, gn)])
    total = float(sizes.sum())
    return NeighborOverlap(sizes, total / (n * r), total / r,
                           int(sizes.max()))


def border_overlap(latent, borders):
    '''For every node with at least one bordering node, the share of its
    borders among its equally many nearest latent neighbours.

    ``borders`` is symmetric with 1 for nodes sharing a border. Nodes
    without borders get NaN and are left out of the average.

    ``average`` is the unweighted mean of the per-node ratios, so a node
    with one border counts as much as a node with six. The pooled ratio
    (all shared borders over all borders) is not reported; it equals
    ``average`` only when every included node has the same number of
    borders.'''
    latent = np.asarray(latent, dtype=np.float64)
    borders = np.asarray(borders)
    n = latent.shape[0]
    if borders.shape != (n, n):
        raise DimensionError('Border matrix is {}, expected {}'
                             .format(borders.shape, (n, n)))
    borders = borders * _off_diagonal(n)
    if not np.array_equal(borders, borders.T):
        raise DomainError('Border matrix must be symmetric')
    counts = borders.sum(axis=1).astype(int)
    if not counts.any():
        raise DomainError('No node shares a border')

    D = distance_matrix(latent)
    np.fill_diagonal(D, np.inf)
    order = np.argsort(D, axis=1, kind='stable')
    ratios = np.full(n, np.nan)
    for i in np.flatnonzero(counts):
        nearest = order[i, :counts[i]]
        ratios[i] = borders[i, nearest].sum() / float(counts[i])
    included = counts > 0
    return BorderOverlap(ratios, float(np.mean(ratios[included])),
                         float(np.mean(counts[included])))
