# -*- coding: utf-8 -*-
'''
    latentplex.cli
    ~~~~~~~~~~~~~~

    This module contains both helper functions and main() for the CLI
    interface.

    :license: MIT, see LICENSE for more details.
'''

import functools
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from configparser import ConfigParser

import click
import numpy as np

from . import formats
from .cli_utils import ensure_directory, expand_path, parse_flag, parse_list
from .diagnostics import NEIGHBOR_SIZES, association_matrix, \
    border_overlap, covariate_association, dic_components, neighbor_overlap, \
    procrustes_correlation, summarize
from .exceptions import CliError, ConfigurationError, ParsingError, \
    ValidationError
from .initial import density_summary, initialize
from .model import HyperConfig
from .sampler import run_chain
from .simulate import ScenarioSpec, generate

logger = logging.getLogger(__name__)

#: errors caused by the user's input, reported with exit code 1
USER_ERRORS = (CliError, ConfigurationError, ParsingError, ValidationError)

PRESENCE_CHOICES = {'full': 'full', 'euro': 'euro_like'}

DEFAULT_OUTDIR = 'latentplex-out'


class LatentplexGroup(click.Group):
    '''Exit with 1 for usage errors and bad input, 2 for anything else.'''

    def main(self, args=None, prog_name=None, **extra):
        extra['standalone_mode'] = False
        try:
            rv = click.Group.main(self, args=args, prog_name=prog_name,
                                  **extra)
        except click.ClickException as e:
            e.show()
            sys.exit(1)
        except click.Abort:
            click.echo('Aborted!', err=True)
            sys.exit(1)
        except USER_ERRORS as e:
            click.echo('Error: {}'.format(e), err=True)
            sys.exit(1)
        except Exception as e:
            logger.debug('Unhandled failure', exc_info=True)
            click.echo('Error: {}'.format(e), err=True)
            sys.exit(2)
        sys.exit(rv if isinstance(rv, int) else 0)


def catch_errors(f):
    @functools.wraps(f)
    def inner(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except CliError as e:
            click.echo(str(e), err=True)
            sys.exit(1)
    return inner


def get_config_parser(env):
    fname = env.get('LATENTPLEX_CONFIG')
    parser = ConfigParser(interpolation=None, inline_comment_prefixes=('#',))
    parser.add_section('latentplex')
    if fname is None:
        fname = expand_path('~/.latentplex/config')
        if not os.path.exists(fname):
            return {}
    elif not os.path.exists(fname):
        raise CliError('Config file {} doesn\'t exist. Please create it or '
                       'unset the LATENTPLEX_CONFIG environment variable.'
                       .format(fname))

    parser.read(fname)
    return dict(parser.items('latentplex'))


def _setting(cfg, key, value, convert, default=None):
    if value is not None:
        return value
    raw = cfg.get(key)
    if raw is None:
        return default
    try:
        return convert(raw)
    except ValueError:
        raise CliError('Invalid value for {} in the config file: {}'
                       .format(key, raw))


def _outdir(cfg, out):
    return ensure_directory(out or os.environ.get('LATENTPLEX_OUTDIR') or
                            cfg.get('outdir') or DEFAULT_OUTDIR)


def _network_index(m, value, option):
    '''Resolve a network given by identifier or by 1-based position.'''
    if value is None:
        return None
    if value in m.names:
        return m.names.index(value)
    try:
        k = int(value) - 1
    except ValueError:
        k = -1
    if not 0 <= k < m.K:
        raise CliError('{}: no network {}'.format(option, value))
    return k


def _select_covariates(X, selection):
    if not selection:
        return X.subset([])
    if selection.strip() == 'all':
        return X
    return X.subset(parse_list(selection))


def _estimate(values, sd, interval):
    return [values, sd, interval[0], interval[1]]


def summary_sections(summary, names, covariate_names, components=None):
    rv = [('draws', [('count', summary.draws)])]
    for block in ('alpha', 'beta'):
        rv.append((block, [
            (name, _estimate(getattr(summary, block + '_mean')[k],
                             getattr(summary, block + '_sd')[k],
                             [x[k] for x in
                              getattr(summary, block + '_interval')]))
            for k, name in enumerate(names)]))
    rv.append(('lambda', [
        (name, _estimate(summary.lambda_mean[f], summary.lambda_sd[f],
                         [x[f] for x in summary.lambda_interval]))
        for f, name in enumerate(covariate_names)]))
    rv.append(('nuisance', [
        (name, [getattr(summary, name + '_mean'),
                getattr(summary, name + '_sd')])
        for name in ('mu_alpha', 'sigma2_alpha', 'mu_beta', 'sigma2_beta',
                     'mu_lambda', 'sigma2_lambda')]))
    rates = summary.acceptance
    rv.append(('acceptance', [
        ('alpha_beta', rates['alpha_beta']),
        ('latent', float(np.mean(rates['latent']))
         if len(rates['latent']) else None),
        ('lambda', rates['lambda']),
        ('revert', rates['revert']),
    ]))
    if components is not None:
        rv.append(('dic', list(components._asdict().items())))
    return rv


def _fit_chain(job):
    m, X, hyper, directory, progress = job
    ensure_directory(directory)
    state, report = initialize(m, X, hyper, rng=hyper.seed)
    formats.save_init_report(os.path.join(directory, 'init.cfg'), report)
    chain = run_chain(m, X, hyper, state, progress=progress)
    if len(chain) == 0:
        formats.save_chain(directory, chain)
        return directory, 0, None
    summary = summarize(chain, X)
    components = dic_components(chain, m, X)
    formats.save_chain(directory, chain, latent=summary.z_mean)
    formats.write_report(
        os.path.join(directory, 'summary.cfg'),
        summary_sections(summary, m.names, X.names, components))
    return directory, len(chain), components.dic


def _chain_seeds(seed, chains):
    if seed is None:
        seed = int(np.random.SeedSequence().generate_state(1)[0])
    if chains == 1:
        return seed, [seed]
    children = np.random.SeedSequence(seed).spawn(chains)
    return seed, [int(child.generate_state(1)[0]) for child in children]


def _get_cli():
    @click.group(cls=LatentplexGroup)
    @click.option('--verbose', '-v', is_flag=True,
                  help='Log what the sampler and the loaders are doing.')
    @click.pass_context
    @catch_errors
    def cli(ctx, verbose):
        if verbose:
            logging.basicConfig(
                level=logging.INFO,
                format='%(asctime)s - %(levelname)s - %(message)s')
        ctx.obj = get_config_parser(os.environ)

    @cli.command()
    @click.option('--data', 'manifest', required=True,
                  type=click.Path(exists=True, dir_okay=False),
                  help='The dataset manifest.')
    @click.option('--iters', type=int, help='Number of MCMC iterations.')
    @click.option('--burnin', type=int,
                  help='Iterations discarded before storing draws.')
    @click.option('--thin', type=int, help='Store every n-th iteration.')
    @click.option('--seed', type=int, help='Seed of the random generator.')
    @click.option('--dims', type=int, help='Latent dimension.')
    @click.option('--ref-network', default=None,
                  help='Identifier or position of the reference network.')
    @click.option('--alpha-ref', type=float,
                  help='Intercept of the reference network.')
    @click.option('--procrustes-threshold', type=float,
                  help='Discard latent sweeps more similar than this.')
    @click.option('--covariates', default=None,
                  help='Comma separated covariates to use, or "all".')
    @click.option('--out', default=None, help='Output directory.')
    @click.option('--chains', type=click.IntRange(1, None), default=1,
                  help='Number of independent chains.')
    @click.option('--no-latent', is_flag=True,
                  help='Fit the random graph variant without latent space.')
    @click.option('--geodesic-network', default=None,
                  help='Network whose geodesics seed the latent positions.')
    @click.option('--progress/--no-progress', default=None,
                  help='Show a progress bar.')
    @click.pass_context
    @catch_errors
    def fit(ctx, manifest, iters, burnin, thin, seed, dims, ref_network,
            alpha_ref, procrustes_threshold, covariates, out, chains,
            no_latent, geodesic_network, progress):
        '''Fit the model to a dataset.'''
        cfg = ctx.obj
        m, X, _ = formats.load_multiplex(manifest)
        X = _select_covariates(X, covariates)
        logger.info('Observed densities: {}'.format(
            u', '.join('{:.3f}'.format(x) for x in density_summary(m))))

        iters = _setting(cfg, 'iters', iters, int, HyperConfig.iters)
        burnin = _setting(cfg, 'burnin', burnin, int, iters // 10)
        if iters <= burnin:
            raise CliError('The number of iterations ({}) must exceed the '
                           'burn-in ({}).'.format(iters, burnin))
        seed, seeds = _chain_seeds(seed, chains)
        hyper = HyperConfig(
            iters=iters, burnin=burnin,
            thin=_setting(cfg, 'thin', thin, int, HyperConfig.thin),
            p=_setting(cfg, 'dims', dims, int, HyperConfig.p),
            procrustes_threshold=_setting(
                cfg, 'procrustes_threshold', procrustes_threshold, float,
                HyperConfig.procrustes_threshold),
            nu_alpha=_setting(cfg, 'nu_alpha', None, float,
                              HyperConfig.nu_alpha),
            nu_beta=_setting(cfg, 'nu_beta', None, float,
                             HyperConfig.nu_beta),
            nu_lambda=_setting(cfg, 'nu_lambda', None, float,
                               HyperConfig.nu_lambda),
            reference=_network_index(m, ref_network, '--ref-network') or 0,
            alpha_ref=alpha_ref,
            latent_space=not no_latent,
            geodesic_network=_network_index(m, geodesic_network,
                                            '--geodesic-network'),
            seed=seed,
        ).resolve(m).validate(m)
        progress = _setting(cfg, 'progress', progress, parse_flag, False)
        out = _outdir(cfg, out)

        if chains == 1:
            jobs = [(m, X, hyper, out, progress)]
        else:
            jobs = [(m, X, hyper.copy(seed=s),
                     os.path.join(out, 'chain-{}'.format(c + 1)), False)
                    for c, s in enumerate(seeds)]
        click.echo('Fitting {} chain(s) with seed {}'.format(chains, seed))
        if chains == 1:
            results = [_fit_chain(jobs[0])]
        else:
            with ProcessPoolExecutor(max_workers=chains) as pool:
                results = list(pool.map(_fit_chain, jobs))

        for directory, draws, dic in results:
            if dic is None:
                click.echo('{}: {} draws'.format(directory, draws))
            else:
                click.echo('{}: {} draws, DIC {:.2f}'.format(directory,
                                                              draws, dic))

    @cli.command()
    @click.option('--scenario', required=True, type=click.IntRange(1, 4),
                  help='1 Gaussian, 2 mixture, 3 Hotelling, 4 many '
                  'networks.')
    @click.option('--n', 'n', type=int, default=50, help='Number of nodes.')
    @click.option('--k', 'K', type=int, default=3,
                  help='Number of networks.')
    @click.option('--dims', type=int, default=2, help='Latent dimension.')
    @click.option('--presence', type=click.Choice(sorted(PRESENCE_CHOICES)),
                  default='full', help='Presence design.')
    @click.option('--seed', type=int, help='Seed of the random generator.')
    @click.option('--tabulated', is_flag=True,
                  help='Use the tabulated parameters where available.')
    @click.option('--case', type=click.IntRange(1, 3), default=None,
                  help='Common-coefficient design; overrides --n and --k.')
    @click.option('--out', default=None, help='Output directory.')
    @click.pass_context
    @catch_errors
    def simulate(ctx, scenario, n, K, dims, presence, seed, tabulated, case,
                 out):
        '''Simulate a multiplex with known parameters.'''
        spec = ScenarioSpec.from_number(
            scenario, n=n, K=K, p=dims, presence=PRESENCE_CHOICES[presence],
            seed=seed, tabulated=tabulated, case=case)
        truth = generate(spec)
        out = _outdir(ctx.obj, out)
        manifest = formats.save_multiplex(out, truth.multiplex)
        formats.save_truth(out, truth)
        click.echo('Dataset written to {}'.format(manifest))

    @cli.command()
    @click.option('--chain', 'chain_dir', required=True,
                  type=click.Path(exists=True, file_okay=False),
                  help='A chain directory written by fit.')
    @click.option('--data', 'manifest', required=True,
                  type=click.Path(exists=True, dir_okay=False),
                  help='The dataset manifest the chain was fitted to.')
    @click.option('--geo', type=click.Path(exists=True, dir_okay=False),
                  help='External coordinates, one "label v1 v2" per line.')
    @click.option('--borders', type=click.Path(exists=True, dir_okay=False),
                  help='Dense border matrix, 0 for bordering nodes.')
    @click.option('--truth', type=click.Path(exists=True, dir_okay=False),
                  help='Truth file written by simulate.')
    @click.option('--neighbors', default=None,
                  help='Neighbourhood sizes for the overlap report.')
    @click.option('--out', default=None, help='Output directory.')
    @click.pass_context
    @catch_errors
    def diagnose(ctx, chain_dir, manifest, geo, borders, truth, neighbors,
                 out):
        '''Compute DIC, association and neighbourhood diagnostics.'''
        m, X, coordinates = formats.load_multiplex(manifest)
        chain = formats.load_chain(chain_dir)
        if chain.labels != m.labels or chain.names != m.names:
            raise CliError('The chain in {} was not fitted to {}'
                           .format(chain_dir, manifest))
        if len(chain) == 0:
            raise CliError('The chain in {} has no stored draws'
                           .format(chain_dir))
        X = X.subset(chain.covariate_names)
        summary = summarize(chain, X)
        components = dic_components(chain, m, X)
        sections = [('dic', list(components._asdict().items()))]

        A = association_matrix(m)
        items = [(u'{}-{}'.format(m.names[k], m.names[l]), A[k, l])
                 for k in range(m.K) for l in range(k + 1, m.K)]
        for f, name in enumerate(X.names):
            if np.all(np.isin(X.X[f], (0.0, 1.0))):
                items.extend((u'{}-{}'.format(m.names[k], name),
                              covariate_association(m, X, k, f))
                             for k in range(m.K))
        sections.append(('association', items))

        if geo is not None:
            coordinates = formats.load_coordinates(geo, m.labels)
        if coordinates is not None:
            sizes = parse_list(neighbors) if neighbors else NEIGHBOR_SIZES
            items = []
            for r in sizes:
                try:
                    r = int(r)
                except ValueError:
                    raise CliError('--neighbors: not a size: {}'.format(r))
                if r > m.n - 1:
                    continue
                overlap = neighbor_overlap(summary.z_mean, coordinates, r)
                items.append((u'{}'.format(r), [overlap.average,
                                                overlap.footnote_average,
                                                overlap.maximum]))
            sections.append(('neighbors', items))

        if borders is not None:
            overlap = border_overlap(summary.z_mean,
                                     formats.load_borders(borders, m.n))
            sections.append(('borders', [
                ('average', overlap.average),
                ('mean_neighbors', overlap.mean_neighbors),
            ]))

        correlation = None
        if truth is not None:
            values = formats.load_truth(truth, m.labels)
            correlation = procrustes_correlation(values['z'], summary.z_mean)
            items = [('procrustes_correlation', correlation),
                     ('alpha_error', summary.alpha_mean - values['alpha']),
                     ('beta_error', summary.beta_mean - values['beta'])]
            if len(values['lambda']) == X.F and X.F:
                items.append(('lambda_error',
                              summary.lambda_mean - values['lambda']))
            sections.append(('truth', items))

        out = _outdir(ctx.obj, out)
        formats.write_report(os.path.join(out, 'diagnostics.cfg'), sections)
        click.echo('DIC {:.2f} (pD {:.2f})'.format(components.dic,
                                                   components.p_d))
        if correlation is not None:
            click.echo('Procrustes correlation with truth {:.3f}'
                       .format(correlation))

    @cli.command('summarize')
    @click.option('--chain', 'chain_dir', required=True,
                  type=click.Path(exists=True, file_okay=False),
                  help='A chain directory written by fit.')
    @click.option('--out', default=None, help='Output directory.')
    @click.pass_context
    @catch_errors
    def summarize_chain(ctx, chain_dir, out):
        '''Summarize the draws of a chain.'''
        chain = formats.load_chain(chain_dir)
        if len(chain) == 0:
            raise CliError('The chain in {} has no stored draws'
                           .format(chain_dir))
        summary = summarize(chain)
        out = _outdir(ctx.obj, out)
        formats.write_report(
            os.path.join(out, 'summary.cfg'),
            summary_sections(summary, chain.names, chain.covariate_names))
        formats.save_coordinates(os.path.join(out, 'latent.txt'),
                                 chain.labels, summary.z_mean)
        click.echo('Summary of {} draws written to {}'.format(summary.draws,
                                                               out))

    return cli

main = _get_cli()
