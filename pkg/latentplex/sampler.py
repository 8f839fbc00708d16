# -*- coding: utf-8 -*-
'''
    latentplex.sampler
    ~~~~~~~~~~~~~~~~~~

    Metropolis-within-Gibbs sampler for the multiplex latent space model.

    Nuisance means and variances are drawn exactly from their conditionals.
    Intercepts and coefficients are moved jointly, latent positions one
    node at a time and covariate effects one at a time, all with Gaussian
    proposals built from second-order expansions of the log-likelihood.

    :license: MIT, see LICENSE for more details.
'''
import logging
import math

import numpy as np
from scipy.special import expit, ndtr, ndtri
from scipy.stats import invgamma, truncnorm
from tqdm import tqdm

from .diagnostics import procrustes_correlation
from .exceptions import ConfigurationError, DimensionError, DomainError
from .model import covariate_term, distance_matrix, lb_alpha, \
    log_likelihood, network_log_likelihood, normal_kernel

logger = logging.getLogger(__name__)

#: standardized truncation points beyond this use rejection sampling
TAIL_CUTOFF = 5.0


class ProposalParams(object):
    '''Mean and variance of a Gaussian proposal. For latent positions the
    mean is a vector and the variance is shared by all coordinates.'''

    def __init__(self, mean, variance):
        if not (np.isfinite(variance) and variance > 0):
            raise DomainError('Proposal variance must be positive and '
                              'finite, got {}'.format(variance))
        self.mean = mean
        self.variance = float(variance)

    @property
    def sd(self):
        return math.sqrt(self.variance)

    def logpdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        sq = np.sum((x - self.mean) ** 2)
        return float(-0.5 * sq / self.variance
                     - 0.5 * x.size * math.log(2 * math.pi * self.variance))

    def __repr__(self):
        return 'latentplex.sampler.ProposalParams(mean={!r}, variance={!r})' \
            .format(self.mean, self.variance)


class ChainOutput(object):
    '''Stored draws of one chain together with its bookkeeping.'''

    #: ModelState snapshots in storage order
    draws = None

    #: -2 log-likelihood of every stored draw
    deviance_trace = None

    #: iteration number of every stored draw
    iterations = None

    #: one flag per iteration, set when the latent sweep was discarded by
    #: the Procrustes check
    revert_trace = None

    def __init__(self, hyper, n, K, F, covariates=None, labels=None,
                 names=None, covariate_names=None):
        self.hyper = hyper
        self.covariates = covariates
        if covariate_names is None:
            covariate_names = covariates.names if covariates is not None \
                else []
        self.covariate_names = list(covariate_names)
        self.labels = labels
        self.names = names
        self.draws = []
        self.deviance_trace = []
        self.iterations = []
        self.revert_trace = []
        self.accepted = {
            'alpha_beta': np.zeros(K, dtype=np.int64),
            'latent': np.zeros(n, dtype=np.int64),
            'lambda': np.zeros(F, dtype=np.int64),
        }
        self.proposed = {
            'alpha_beta': np.zeros(K, dtype=np.int64),
            'latent': np.zeros(n, dtype=np.int64),
            'lambda': np.zeros(F, dtype=np.int64),
        }

    def __len__(self):
        return len(self.draws)

    @property
    def reverts(self):
        return int(np.sum(self.revert_trace))

    def acceptance_rates(self):
        '''Per-block acceptance rates, NaN for blocks never proposed.'''
        rv = {}
        for block, accepted in self.accepted.items():
            proposed = self.proposed[block]
            with np.errstate(invalid='ignore', divide='ignore'):
                rv[block] = np.where(proposed > 0,
                                     accepted / np.maximum(proposed, 1),
                                     np.nan)
        iters = len(self.revert_trace)
        rv['revert'] = self.reverts / float(iters) if iters else np.nan
        return rv

    def __repr__(self):
        return 'latentplex.sampler.ChainOutput(draws={})'.format(len(self))


def truncated_normal(mean, sd, lower, rng):
    '''One draw from N(mean, sd^2) restricted to [lower, inf).

    Uses the inverse CDF near the bulk and exponential rejection in the far
    tail.'''
    if sd <= 0 or not np.isfinite(sd):
        raise DomainError('Standard deviation must be positive, got {}'
                          .format(sd))
    if not np.isfinite(lower):
        return float(rng.normal(mean, sd))
    a = (lower - mean) / sd
    if a <= TAIL_CUTOFF:
        u = rng.uniform()
        x = -ndtri(u * ndtr(-a))
        x = max(x, a)
    else:
        rate = 0.5 * (a + math.sqrt(a * a + 4))
        while True:
            x = a + rng.exponential(1.0 / rate)
            if rng.uniform() <= math.exp(-0.5 * (x - rate) ** 2):
                break
    return float(mean + sd * x)


def truncated_normal_logpdf(x, mean, sd, lower):
    a = (lower - mean) / sd
    return float(truncnorm.logpdf(x, a, np.inf, loc=mean, scale=sd))


def _check_values(values):
    values = np.asarray(values, dtype=np.float64).reshape(-1)
    if len(values) == 0:
        raise DimensionError('Need at least one value to update from')
    if not np.all(np.isfinite(values)):
        raise DomainError('Values must be finite')
    return values


def sigma2_conditional(values, mu, tau, nu, m=0.0):
    '''Shape and scale of the inverse gamma conditional of a variance.'''
    values = _check_values(values)
    if not (tau > 0 and nu > 0):
        raise DomainError('tau and nu must be positive')
    shape = 0.5 * (nu + len(values) + 1)
    scale = (tau + tau * np.sum((values - mu) ** 2) + (mu - m) ** 2) \
        / (2.0 * tau)
    return shape, float(scale)


def gibbs_sigma2(values, mu, tau, nu, rng, m=0.0):
    shape, scale = sigma2_conditional(values, mu, tau, nu, m=m)
    return float(invgamma.rvs(shape, scale=scale, random_state=rng))


def mu_conditional(values, sigma2, tau, m):
    '''Mean and variance of the (untruncated) normal conditional of a mean
    parameter.'''
    values = _check_values(values)
    if not (tau > 0 and sigma2 > 0):
        raise DomainError('tau and sigma2 must be positive')
    K = len(values)
    mean = (tau * np.sum(values) + m) / (1.0 + K * tau)
    var = tau * sigma2 / (1.0 + K * tau)
    return float(mean), float(var)


def gibbs_mu(values, sigma2, tau, m, lower, rng):
    mean, var = mu_conditional(values, sigma2, tau, m)
    return truncated_normal(mean, math.sqrt(var), lower, rng)


def alpha_proposal(m, k, beta_k, mu_alpha, sigma2_alpha, D, C):
    '''Proposal for alpha_k, expanding the log-likelihood around mu_alpha
    with beta_k held at its given value.'''
    h = m.H[k]
    p = expit(mu_alpha - beta_k * D - C)
    var = 1.0 / (np.sum(h * p * (1 - p)) + 1.0 / sigma2_alpha)
    mean = var * (m.edge_count(k) - np.sum(h * p)) + mu_alpha
    return ProposalParams(float(mean), var)


def beta_proposal(m, k, alpha_k, mu_beta, sigma2_beta, D, C):
    '''Proposal for beta_k, expanding around mu_beta with alpha_k held at
    its given value.'''
    h = m.H[k]
    p = expit(alpha_k - mu_beta * D - C)
    var = 1.0 / (np.sum(h * D ** 2 * p * (1 - p)) + 1.0 / sigma2_beta)
    mean = var * np.sum(h * D * (p - m.Y[k])) + mu_beta
    return ProposalParams(float(mean), var)


def propose_alpha(m, state, D, X, k, rng, C=None):
    if C is None:
        C = covariate_term(state.lam, X)
    q = alpha_proposal(m, k, state.beta[k], state.mu_alpha,
                       state.sigma2_alpha, D, C)
    return float(rng.normal(q.mean, q.sd)), q


def propose_beta(m, state, D, X, k, rng, C=None):
    if C is None:
        C = covariate_term(state.lam, X)
    q = beta_proposal(m, k, state.alpha[k], state.mu_beta,
                      state.sigma2_beta, D, C)
    return float(rng.normal(q.mean, q.sd)), q


def joint_log_ratio(m, state, D, C, k, alpha_new, beta_new, fix_beta=False):
    '''Log Metropolis-Hastings ratio of moving network ``k`` from its
    current (alpha, beta) to the given candidate.'''
    alpha, beta = state.alpha[k], state.beta[k]
    if alpha_new <= lb_alpha(m.n) or beta_new < 0:
        return -np.inf

    rv = network_log_likelihood(m, k, alpha_new, beta_new, D, C) \
        - network_log_likelihood(m, k, alpha, beta, D, C)
    rv += normal_kernel(alpha_new, state.mu_alpha, state.sigma2_alpha) \
        - normal_kernel(alpha, state.mu_alpha, state.sigma2_alpha)

    forward = alpha_proposal(m, k, beta, state.mu_alpha, state.sigma2_alpha,
                             D, C)
    reverse = alpha_proposal(m, k, beta_new, state.mu_alpha,
                             state.sigma2_alpha, D, C)
    rv += reverse.logpdf(alpha) - forward.logpdf(alpha_new)

    if not fix_beta:
        rv += normal_kernel(beta_new, state.mu_beta, state.sigma2_beta) \
            - normal_kernel(beta, state.mu_beta, state.sigma2_beta)
        forward = beta_proposal(m, k, alpha, state.mu_beta,
                                state.sigma2_beta, D, C)
        reverse = beta_proposal(m, k, alpha_new, state.mu_beta,
                                state.sigma2_beta, D, C)
        rv += reverse.logpdf(beta) - forward.logpdf(beta_new)
    return rv


def mh_alpha_beta_joint(m, state, D, X, k, rng, C=None, fix_beta=False):
    '''Joint Metropolis-Hastings move of (alpha_k, beta_k).

    Returns the new pair and whether the candidate was accepted. With
    ``fix_beta`` only alpha_k moves.'''
    if C is None:
        C = covariate_term(state.lam, X)
    alpha_new, _ = propose_alpha(m, state, D, X, k, rng, C=C)
    if fix_beta:
        beta_new = state.beta[k]
    else:
        beta_new, _ = propose_beta(m, state, D, X, k, rng, C=C)

    log_ratio = joint_log_ratio(m, state, D, C, k, alpha_new, beta_new,
                                fix_beta=fix_beta)
    if np.log(rng.uniform()) < log_ratio:
        return alpha_new, beta_new, True
    return state.alpha[k], state.beta[k], False


def _row_distances(z, i, z_i):
    d = np.sum((z - z_i) ** 2, axis=1)
    d[i] = 0.0
    return d


def latent_proposal(m, z, alpha, beta, C, i):
    '''Proposal for z_i given the other positions in ``z``.

    A dyad counts as predicted present when its linear predictor is
    strictly positive. Only the row of node i enters.'''
    d = _row_distances(z, i, z[i])
    eta = alpha[:, None] - beta[:, None] * d[None, :] - C[i][None, :]
    predicted = (eta > 0).astype(np.float64)
    h = m.H[:, i, :].astype(np.float64)
    h[:, i] = 0.0
    residual = h * (m.Y[:, i, :] - predicted)
    precision = 1.0 + 2.0 * np.sum(beta * np.sum(np.abs(residual), axis=1))
    weights = 2.0 * np.dot(beta, residual)
    mean = np.dot(weights, z) / precision
    return ProposalParams(mean, 1.0 / precision)


def propose_latent(m, state, X, i, rng, C=None):
    if C is None:
        C = covariate_term(state.lam, X)
    q = latent_proposal(m, state.z, state.alpha, state.beta, C, i)
    return rng.normal(q.mean, q.sd), q


def node_log_posterior(m, z, alpha, beta, C, i, z_i):
    '''Terms of the log-posterior that involve z_i: the dyads sent and
    received by node i plus its standard normal prior.'''
    d = _row_distances(z, i, z_i)
    a = alpha[:, None]
    b = beta[:, None]
    eta_out = a - b * d[None, :] - C[i][None, :]
    eta_in = a - b * d[None, :] - C[:, i][None, :]
    rv = np.sum(m.H[:, i, :] * (m.Y[:, i, :] * eta_out
                                - np.logaddexp(0.0, eta_out)))
    rv += np.sum(m.H[:, :, i] * (m.Y[:, :, i] * eta_in
                                 - np.logaddexp(0.0, eta_in)))
    return float(rv - 0.5 * np.dot(z_i, z_i))


def latent_log_ratio(m, z, alpha, beta, C, i, candidate):
    forward = latent_proposal(m, z, alpha, beta, C, i)
    moved = z.copy()
    moved[i] = candidate
    reverse = latent_proposal(m, moved, alpha, beta, C, i)
    return (node_log_posterior(m, z, alpha, beta, C, i, candidate)
            - node_log_posterior(m, z, alpha, beta, C, i, z[i])
            + reverse.logpdf(z[i]) - forward.logpdf(candidate))


def mh_latent_sweep(m, state, X, rng, threshold=0.85, C=None):
    '''Move every latent position once, in node order.

    Returns the new configuration, the per-node acceptance flags and
    whether the sweep was discarded because the new configuration was too
    similar to the old one.'''
    if C is None:
        C = covariate_term(state.lam, X)
    before = state.z
    z = before.copy()
    accepted = np.zeros(m.n, dtype=bool)
    for i in range(m.n):
        q = latent_proposal(m, z, state.alpha, state.beta, C, i)
        candidate = rng.normal(q.mean, q.sd)
        log_ratio = latent_log_ratio(m, z, state.alpha, state.beta, C, i,
                                     candidate)
        if np.log(rng.uniform()) < log_ratio:
            z[i] = candidate
            accepted[i] = True

    if not accepted.any() or threshold >= 1.0:
        return z, accepted, False
    try:
        correlation = procrustes_correlation(before, z)
    except DomainError as e:
        logger.debug('Skipping Procrustes check: {}'.format(e))
        return z, accepted, False
    if correlation > threshold:
        return before.copy(), accepted, True
    return z, accepted, False


def lambda_proposal(m, state, D, X, f, C=None):
    '''Proposal for lambda_f, expanding around mu_lambda_f with every
    other parameter held at its current value. Independent of the current
    lambda_f.'''
    if C is None:
        C = covariate_term(state.lam, X)
    x = X.X[f]
    mu = state.mu_lambda[f]
    base = C - state.lam[f] * x + mu * x
    eta = state.alpha[:, None, None] - state.beta[:, None, None] * D[None] \
        - base[None]
    p = expit(eta)
    h = m.H
    var = 1.0 / (np.sum(h * x[None] ** 2 * p * (1 - p))
                 + 1.0 / state.sigma2_lambda[f])
    mean = var * np.sum(h * x[None] * (p - m.Y)) + mu
    return ProposalParams(float(mean), var)


def _lambda_log_likelihood(m, state, D, C):
    total = 0.0
    for k in range(m.K):
        total += network_log_likelihood(m, k, state.alpha[k], state.beta[k],
                                        D, C)
    return total


def lambda_log_ratio(m, state, D, X, f, candidate, C=None):
    '''Log Metropolis-Hastings ratio of moving lambda_f to ``candidate``.'''
    if C is None:
        C = covariate_term(state.lam, X)
    if candidate < 0:
        return -np.inf
    q = lambda_proposal(m, state, D, X, f, C=C)
    current = state.lam[f]
    moved = C + (candidate - current) * X.X[f]
    rv = _lambda_log_likelihood(m, state, D, moved) \
        - _lambda_log_likelihood(m, state, D, C)
    rv += normal_kernel(candidate, state.mu_lambda[f],
                        state.sigma2_lambda[f]) \
        - normal_kernel(current, state.mu_lambda[f], state.sigma2_lambda[f])
    rv += truncated_normal_logpdf(current, q.mean, q.sd, 0.0) \
        - truncated_normal_logpdf(candidate, q.mean, q.sd, 0.0)
    return rv


def mh_lambda(m, state, D, X, f, rng, C=None):
    '''Independence Metropolis-Hastings move of lambda_f on [0, inf).

    Returns the new value and whether the candidate was accepted.'''
    if C is None:
        C = covariate_term(state.lam, X)
    q = lambda_proposal(m, state, D, X, f, C=C)
    candidate = truncated_normal(q.mean, q.sd, 0.0, rng)
    log_ratio = lambda_log_ratio(m, state, D, X, f, candidate, C=C)
    if np.log(rng.uniform()) < log_ratio:
        return candidate, True
    return state.lam[f], False


def gibbs_lambda_nuisance(state, f, hyper, rng):
    '''Draw (mu_lambda_f, sigma2_lambda_f) given lambda_f.'''
    if hyper.tau_lambda is None:
        raise ConfigurationError('tau_lambda is unresolved')
    sigma2 = gibbs_sigma2([state.lam[f]], state.mu_lambda[f],
                          hyper.tau_lambda, hyper.nu_lambda, rng,
                          m=hyper.m_lambda)
    mu = gibbs_mu([state.lam[f]], sigma2, hyper.tau_lambda, hyper.m_lambda,
                  0.0, rng)
    return mu, sigma2


def _check_start(m, X, hyper, init):
    if init.n != m.n or init.K != m.K or init.F != X.F or \
            init.p != hyper.p:
        raise DimensionError('Starting state does not match the data')
    problems = init.violations(lb_alpha(m.n))
    r = hyper.reference
    if hyper.latent_space:
        if init.beta[r] != 1.0:
            problems.append('reference beta must be 1')
        if hyper.alpha_ref is not None and init.alpha[r] != hyper.alpha_ref:
            problems.append('reference alpha must be {}'
                            .format(hyper.alpha_ref))
    elif np.any(init.beta != 0):
        problems.append('beta must be 0 without a latent space')
    if problems:
        raise ConfigurationError('Invalid starting state: {}'
                                 .format('; '.join(problems)))


def run_chain(m, X, hyper, init, progress=False):
    '''Run one chain from ``init`` and return its :class:`ChainOutput`.'''
    hyper = hyper.resolve(m, init).validate(m)
    _check_start(m, X, hyper, init)

    rng = np.random.default_rng(hyper.seed)
    lb = lb_alpha(m.n)
    free_alpha, free_beta = hyper.free_networks(m.K)
    fix_beta = not hyper.latent_space

    state = init.copy()
    D = distance_matrix(state.z)
    C = covariate_term(state.lam, X)
    out = ChainOutput(hyper, m.n, m.K, X.F, covariates=X, labels=m.labels,
                      names=m.names)

    logger.info('Running {} iterations ({} burn-in, thinning {})'
                .format(hyper.iters, hyper.burnin, hyper.thin))
    for it in tqdm(range(hyper.iters), disable=not progress,
                   desc='latentplex', unit='it'):
        # all K values, the fixed reference included
        if free_alpha:
            state.sigma2_alpha = gibbs_sigma2(
                state.alpha, state.mu_alpha, hyper.tau_alpha,
                hyper.nu_alpha, rng, m=hyper.m_alpha)
        if free_beta:
            state.sigma2_beta = gibbs_sigma2(
                state.beta, state.mu_beta, hyper.tau_beta, hyper.nu_beta,
                rng, m=hyper.m_beta)
        if free_alpha:
            state.mu_alpha = gibbs_mu(state.alpha, state.sigma2_alpha,
                                      hyper.tau_alpha, hyper.m_alpha, lb,
                                      rng)
        if free_beta:
            state.mu_beta = gibbs_mu(state.beta, state.sigma2_beta,
                                     hyper.tau_beta, hyper.m_beta, 0.0, rng)
        for f in range(X.F):
            state.mu_lambda[f], state.sigma2_lambda[f] = \
                gibbs_lambda_nuisance(state, f, hyper, rng)

        for k in free_alpha:
            state.alpha[k], state.beta[k], accepted = mh_alpha_beta_joint(
                m, state, D, X, k, rng, C=C, fix_beta=fix_beta)
            out.proposed['alpha_beta'][k] += 1
            out.accepted['alpha_beta'][k] += accepted

        reverted = False
        if hyper.latent_space:
            z, accepted, reverted = mh_latent_sweep(
                m, state, X, rng, threshold=hyper.procrustes_threshold, C=C)
            out.proposed['latent'] += 1
            out.accepted['latent'] += accepted
            if accepted.any() and not reverted:
                state.z = z
                D = distance_matrix(z)
        out.revert_trace.append(reverted)

        for f in range(X.F):
            state.lam[f], accepted = mh_lambda(m, state, D, X, f, rng, C=C)
            out.proposed['lambda'][f] += 1
            out.accepted['lambda'][f] += accepted
            C = covariate_term(state.lam, X)

        if it >= hyper.burnin and (it - hyper.burnin + 1) % hyper.thin == 0:
            out.draws.append(state.copy())
            out.iterations.append(it)
            out.deviance_trace.append(
                -2.0 * log_likelihood(m, state, D, X))

    logger.info('Stored {} draws, {} latent sweeps discarded'
                .format(len(out), out.reverts))
    for block, rates in sorted(out.acceptance_rates().items()):
        if block != 'revert' and len(rates):
            logger.info('Acceptance of {}: {}'.format(
                block, u' '.join('{:.2f}'.format(x) for x in rates)))
    return out
