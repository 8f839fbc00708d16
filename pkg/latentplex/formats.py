# -*- coding: utf-8 -*-
'''
    latentplex.formats
    ~~~~~~~~~~~~~~~~~~

    Plain text formats for datasets, ground truth, chains and reports.

    A dataset is described by an INI manifest::

        [dataset]
        labels = labels.txt
        networks = 1998 1999 2000
        edges = edges.txt
        absences = absences.txt
        coordinates = coordinates.txt

        [covariate border]
        matrix = border.txt
        binary = true

    ``labels.txt`` holds one node label per line, ``edges.txt`` lines of
    ``network voter votee``, ``absences.txt`` lines of
    ``network node [absent|passive]`` and ``coordinates.txt`` lines of
    ``label v1 v2 ...``. Covariate matrices are dense, one row per line in
    label order. Everything after a ``#`` is ignored. Relative paths are
    taken relative to the manifest.

    :license: MIT, see LICENSE for more details.
'''
import io
import logging
import os
from configparser import ConfigParser, Error as ConfigParserError

import numpy as np
from atomicwrites import atomic_write

from .cli_utils import parse_flag, parse_list
from .exceptions import ParsingError, ValidationError
from .model import CovariateSet, HyperConfig, ModelState, Multiplex
from .sampler import ChainOutput

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '%.17g'

MANIFEST_NAME = 'manifest.cfg'

PRESENCE_RECORDS = ('absent', 'passive')

#: blocks of draws.txt holding one value per stored draw
SCALAR_BLOCKS = ('mu_alpha', 'sigma2_alpha', 'mu_beta', 'sigma2_beta',
                 'deviance')

#: blocks of draws.txt holding one value per network or covariate
VECTOR_BLOCKS = ('alpha', 'beta', 'lambda', 'mu_lambda', 'sigma2_lambda')

_INT_HYPER = ('p', 'reference', 'seed', 'iters', 'burnin', 'thin',
              'geodesic_network')


def format_value(x):
    if x is None:
        return u'none'
    if isinstance(x, (bool, np.bool_)):
        return u'true' if x else u'false'
    if isinstance(x, (int, np.integer)):
        return u'{}'.format(x)
    if isinstance(x, (float, np.floating)):
        return FLOAT_FORMAT % x
    if isinstance(x, (list, tuple, np.ndarray)):
        return u' '.join(format_value(v) for v in np.asarray(x).tolist())
    return u'{}'.format(x)


def _write_text(path, lines):
    with atomic_write(path, mode='w', overwrite=True) as f:
        for line in lines:
            f.write(line)
            f.write(u'\n')


def _write_config(path, parser):
    buf = io.StringIO()
    parser.write(buf)
    with atomic_write(path, mode='w', overwrite=True) as f:
        f.write(buf.getvalue())


def _new_parser():
    parser = ConfigParser(interpolation=None)
    parser.optionxform = str
    return parser


def _read_config(path):
    parser = _new_parser()
    try:
        if not parser.read(path):
            raise ParsingError('Cannot read {}'.format(path))
    except ConfigParserError as e:
        raise ParsingError('{}: {}'.format(path, e))
    return parser


def iter_records(path):
    '''Yield ``(lineno, fields)`` for every non-empty line of ``path``.'''
    with io.open(path, encoding='utf-8') as f:
        for lineno, line in enumerate(f, start=1):
            fields = line.split(u'#', 1)[0].split()
            if fields:
                yield lineno, fields


def _parse_records(path, parse):
    rv = []
    for lineno, fields in iter_records(path):
        try:
            rv.append(parse(fields))
        except ParsingError as e:
            raise ParsingError('{}: Line {}: {}'.format(path, lineno, str(e)))
    return rv


def _float(field):
    try:
        return float(field)
    except ValueError:
        raise ParsingError('Not a number: {}'.format(field))


def _lookup(index, key, what):
    try:
        return index[key]
    except KeyError:
        raise ParsingError('Unknown {}: {}'.format(what, key))


class DatasetManifest(object):
    '''Where the parts of a dataset live.'''

    #: paths, absolute after loading
    labels = None
    edges = None
    absences = None
    coordinates = None

    def __init__(self, labels, networks, edges, absences=None,
                 coordinates=None, covariates=()):
        self.labels = labels
        self.networks = list(networks)
        self.edges = edges
        self.absences = absences
        self.coordinates = coordinates
        #: (name, matrix path, binary) per covariate
        self.covariates = list(covariates)

    @classmethod
    def from_file(cls, filepath):
        parser = _read_config(filepath)
        base = os.path.dirname(os.path.abspath(filepath))
        if not parser.has_section('dataset'):
            raise ParsingError('{}: Missing [dataset] section'
                               .format(filepath))
        section = dict(parser.items('dataset'))

        def resolve(key, required=True):
            value = section.get(key)
            if value is None:
                if required:
                    raise ParsingError('{}: Missing key {!r} in [dataset]'
                                       .format(filepath, key))
                return None
            return os.path.join(base, os.path.expanduser(value))

        if 'networks' not in section:
            raise ParsingError('{}: Missing key \'networks\' in [dataset]'
                               .format(filepath))
        covariates = []
        for name in parser.sections():
            if not name.startswith('covariate '):
                continue
            items = dict(parser.items(name))
            if 'matrix' not in items:
                raise ParsingError('{}: Missing key \'matrix\' in [{}]'
                                   .format(filepath, name))
            try:
                binary = parse_flag(items.get('binary', 'false'))
            except ValueError as e:
                raise ParsingError('{}: [{}] {}'.format(filepath, name, e))
            covariates.append((
                name[len('covariate '):].strip(),
                os.path.join(base, os.path.expanduser(items['matrix'])),
                binary
            ))

        rv = cls(labels=resolve('labels'),
                 networks=parse_list(section['networks']),
                 edges=resolve('edges'),
                 absences=resolve('absences', required=False),
                 coordinates=resolve('coordinates', required=False),
                 covariates=covariates)
        rv.validate()
        return rv

    def validate(self):
        if not self.networks:
            raise ValidationError('A dataset needs at least one network')
        if len(set(self.networks)) != len(self.networks):
            raise ValidationError('Duplicate network identifiers',
                                  self.networks)
        paths = [self.labels, self.edges, self.absences, self.coordinates]
        paths.extend(p for _, p, _ in self.covariates)
        missing = [p for p in paths if p is not None and
                   not os.path.isfile(p)]
        if missing:
            raise ValidationError('Missing files', missing)

    def write(self, filepath):
        base = os.path.dirname(os.path.abspath(filepath))

        def rel(p):
            return os.path.relpath(p, base)

        parser = _new_parser()
        parser.add_section('dataset')
        parser.set('dataset', 'labels', rel(self.labels))
        parser.set('dataset', 'networks', u' '.join(self.networks))
        parser.set('dataset', 'edges', rel(self.edges))
        if self.absences is not None:
            parser.set('dataset', 'absences', rel(self.absences))
        if self.coordinates is not None:
            parser.set('dataset', 'coordinates', rel(self.coordinates))
        for name, matrix, binary in self.covariates:
            section = 'covariate {}'.format(name)
            parser.add_section(section)
            parser.set(section, 'matrix', rel(matrix))
            parser.set(section, 'binary', format_value(bool(binary)))
        _write_config(filepath, parser)

    def __repr__(self):
        return 'latentplex.formats.DatasetManifest(networks={})'.format(
            self.networks)


def load_labels(filepath):
    def parse(fields):
        if len(fields) != 1:
            raise ParsingError('Expected a single label')
        return fields[0]

    labels = _parse_records(filepath, parse)
    seen = set()
    duplicates = [x for x in labels if x in seen or seen.add(x)]
    if duplicates:
        raise ParsingError('{}: Duplicate labels: {}'
                           .format(filepath, u', '.join(duplicates)))
    if len(labels) < 2:
        raise ParsingError('{}: Need at least two labels'.format(filepath))
    return labels


def load_matrix(filepath, n):
    '''Dense ``(n, n)`` matrix, one row per line.'''
    def parse(fields):
        if len(fields) != n:
            raise ParsingError('Expected {} values, got {}'
                               .format(n, len(fields)))
        return [_float(x) for x in fields]

    rows = _parse_records(filepath, parse)
    if len(rows) != n:
        raise ParsingError('{}: Expected {} rows, got {}'
                           .format(filepath, n, len(rows)))
    return np.array(rows)


def save_matrix(filepath, A):
    _write_text(filepath, (format_value(row) for row in np.asarray(A)))


def load_coordinates(filepath, labels):
    '''``label v1 v2 ...`` lines as an array in the order of ``labels``.'''
    index = dict((label, i) for i, label in enumerate(labels))

    def parse(fields):
        if len(fields) < 2:
            raise ParsingError('Expected a label and coordinates')
        return (_lookup(index, fields[0], 'label'),
                [_float(x) for x in fields[1:]])

    records = _parse_records(filepath, parse)
    dims = set(len(v) for _, v in records)
    if len(dims) != 1:
        raise ParsingError('{}: Coordinates differ in dimension'
                           .format(filepath))
    rv = np.full((len(labels), dims.pop()), np.nan)
    for i, values in records:
        rv[i] = values
    missing = [labels[i] for i in np.flatnonzero(np.isnan(rv).any(axis=1))]
    if missing:
        raise ValidationError('Missing coordinates', missing)
    return rv


def save_coordinates(filepath, labels, z):
    _write_text(filepath, (u'{} {}'.format(label, format_value(row))
                           for label, row in zip(labels, np.asarray(z))))


def load_borders(filepath, n):
    '''A model coded border covariate (0 for bordering nodes) as a
    0/1 adjacency of bordering nodes.'''
    X = load_matrix(filepath, n)
    off = ~np.eye(n, dtype=bool)
    if not np.all(np.isin(X[off], (0.0, 1.0))):
        raise ValidationError('Border matrix must be binary')
    rv = (1 - X).astype(np.int8)
    np.fill_diagonal(rv, 0)
    return rv


def load_multiplex(manifest):
    '''Load the dataset described by ``manifest`` (a path or a
    :class:`DatasetManifest`). Returns the multiplex, its covariates and
    the external coordinates, which may be None.'''
    if not isinstance(manifest, DatasetManifest):
        manifest = DatasetManifest.from_file(manifest)

    labels = load_labels(manifest.labels)
    names = manifest.networks
    label_index = dict((label, i) for i, label in enumerate(labels))
    network_index = dict((name, k) for k, name in enumerate(names))
    n, K = len(labels), len(names)

    def parse_edge(fields):
        if len(fields) != 3:
            raise ParsingError('Expected network, voter and votee')
        k = _lookup(network_index, fields[0], 'network')
        i = _lookup(label_index, fields[1], 'label')
        j = _lookup(label_index, fields[2], 'label')
        if i == j:
            raise ParsingError('Self-loop on {}'.format(fields[1]))
        return k, i, j

    Y = np.zeros((K, n, n), dtype=np.int8)
    for k, i, j in _parse_records(manifest.edges, parse_edge):
        Y[k, i, j] = 1

    H = np.ones((K, n, n), dtype=np.int8)
    if manifest.absences is not None:
        def parse_absence(fields):
            if len(fields) not in (2, 3):
                raise ParsingError('Expected network, node and an optional '
                                   'record kind')
            kind = fields[2] if len(fields) == 3 else u'absent'
            if kind not in PRESENCE_RECORDS:
                raise ParsingError('Unknown presence record: {}'
                                   .format(kind))
            return (_lookup(network_index, fields[0], 'network'),
                    _lookup(label_index, fields[1], 'label'), kind)

        for k, i, kind in _parse_records(manifest.absences, parse_absence):
            H[k, :, i] = 0
            if kind == u'absent':
                H[k, i, :] = 0

    m = Multiplex(Y, H, labels=labels, names=names)

    matrices = []
    for name, filepath, binary in manifest.covariates:
        x = load_matrix(filepath, n)
        off = ~np.eye(n, dtype=bool)
        if binary and not np.all(np.isin(x[off], (0.0, 1.0))):
            raise ValidationError('Covariate {} must be binary'.format(name))
        matrices.append(x)
    X = CovariateSet(np.array(matrices) if matrices else None,
                     names=[name for name, _, _ in manifest.covariates], n=n)

    coordinates = None
    if manifest.coordinates is not None:
        coordinates = load_coordinates(manifest.coordinates, labels)

    logger.info('Loaded {} networks on {} nodes with {} covariates'
                .format(K, n, X.F))
    return m, X, coordinates


def presence_records(m):
    '''``(network, label, kind)`` records reproducing the presence masks of
    ``m``.'''
    full = np.ones((m.n, m.n), dtype=np.int8)
    np.fill_diagonal(full, 0)
    rv = []
    for k in range(m.K):
        H = m.H[k]
        rebuilt = full.copy()
        for i in range(m.n):
            row_off = not H[i].any()
            column_off = not H[:, i].any()
            if column_off:
                kind = u'absent' if row_off else u'passive'
                rv.append((m.names[k], m.labels[i], kind))
                rebuilt[:, i] = 0
                if row_off:
                    rebuilt[i, :] = 0
        if not np.array_equal(rebuilt, H):
            raise ValidationError('Presence mask of network {} cannot be '
                                  'written as node records'
                                  .format(m.names[k]))
    return rv


def save_multiplex(directory, m, X=None, coordinates=None):
    '''Write ``m`` as a dataset into ``directory`` and return the manifest
    path.'''
    bad = [x for x in list(m.labels) + list(m.names)
           if not x or len(x.split()) != 1 or u'#' in x]
    if bad:
        raise ValidationError('Identifiers must be non-empty and free of '
                              'whitespace and \'#\'', bad)

    labels = os.path.join(directory, 'labels.txt')
    edges = os.path.join(directory, 'edges.txt')
    absences = os.path.join(directory, 'absences.txt')
    _write_text(labels, m.labels)
    _write_text(edges, (u'{} {} {}'.format(m.names[k], m.labels[i],
                                           m.labels[j])
                        for k, i, j in np.argwhere(m.H * m.Y)))
    _write_text(absences, (u' '.join(record)
                           for record in presence_records(m)))

    covariates = []
    if X is not None:
        for f, name in enumerate(X.names):
            filepath = os.path.join(directory, 'covariate-{}.txt'
                                    .format(name))
            save_matrix(filepath, X.X[f])
            binary = bool(np.all(np.isin(X.X[f], (0.0, 1.0))))
            covariates.append((name, filepath, binary))

    coordinate_path = None
    if coordinates is not None:
        coordinate_path = os.path.join(directory, 'coordinates.txt')
        save_coordinates(coordinate_path, m.labels, coordinates)

    manifest = DatasetManifest(labels, m.names, edges, absences=absences,
                               coordinates=coordinate_path,
                               covariates=covariates)
    filepath = os.path.join(directory, MANIFEST_NAME)
    manifest.write(filepath)
    return filepath


def save_truth(directory, truth):
    '''Write the parameters of a :class:`~latentplex.simulate.GroundTruth`
    next to its dataset.'''
    m = truth.multiplex
    latent = os.path.join(directory, 'truth-latent.txt')
    save_coordinates(latent, m.labels, truth.z_true)
    parser = _new_parser()
    parser.add_section('truth')
    parser.set('truth', 'networks', u' '.join(m.names))
    parser.set('truth', 'alpha', format_value(truth.alpha_true))
    parser.set('truth', 'beta', format_value(truth.beta_true))
    if truth.lambda_true is not None and len(truth.lambda_true):
        parser.set('truth', 'lambda', format_value(truth.lambda_true))
    parser.set('truth', 'latent', os.path.basename(latent))
    filepath = os.path.join(directory, 'truth.cfg')
    _write_config(filepath, parser)
    return filepath


def load_truth(filepath, labels):
    '''The true parameters as a dict with ``alpha``, ``beta``, ``lambda``
    and ``z``, the latter in the order of ``labels``.'''
    parser = _read_config(filepath)
    if not parser.has_section('truth'):
        raise ParsingError('{}: Missing [truth] section'.format(filepath))
    section = dict(parser.items('truth'))
    try:
        rv = {
            'alpha': np.array([_float(x) for x in
                               parse_list(section['alpha'])]),
            'beta': np.array([_float(x) for x in
                              parse_list(section['beta'])]),
            'lambda': np.array([_float(x) for x in
                                parse_list(section.get('lambda', ''))]),
        }
        latent = section['latent']
    except KeyError as e:
        raise ParsingError('{}: Missing key {}'.format(filepath, e))
    except ParsingError as e:
        raise ParsingError('{}: {}'.format(filepath, e))
    base = os.path.dirname(os.path.abspath(filepath))
    rv['z'] = load_coordinates(os.path.join(base, latent), labels)
    return rv


def _hyper_value(key, raw):
    raw = raw.strip()
    if raw.lower() == 'none':
        return None
    try:
        if key == 'latent_space':
            return parse_flag(raw)
        return int(raw) if key in _INT_HYPER else float(raw)
    except ValueError:
        raise ParsingError('Bad value for {}: {}'.format(key, raw))


def hyper_from_items(items):
    return HyperConfig(**dict((k, _hyper_value(k, v)) for k, v in items
                              if k in HyperConfig._keys))


def _draw_rows(it, state, deviance):
    def row(block, index, value):
        return u'{} {} {} {}'.format(it, block, index, FLOAT_FORMAT % value)

    for block in ('mu_alpha', 'sigma2_alpha', 'mu_beta', 'sigma2_beta'):
        yield row(block, 0, getattr(state, block))
    yield row('deviance', 0, deviance)
    for block, attr in (('alpha', 'alpha'), ('beta', 'beta'),
                        ('lambda', 'lam'), ('mu_lambda', 'mu_lambda'),
                        ('sigma2_lambda', 'sigma2_lambda')):
        for index, value in enumerate(getattr(state, attr)):
            yield row(block, index, value)
    for i, point in enumerate(state.z):
        for l, value in enumerate(point):
            yield row('z', u'{}:{}'.format(i, l), value)


def save_chain(directory, chain, latent=None):
    '''Write ``chain`` into ``directory``: ``chain.cfg`` with the settings
    and acceptance counts, ``draws.txt`` with every stored value and, when
    given, the summarized positions ``latent`` to ``latent.txt``.'''
    hyper = chain.hyper
    n = len(chain.accepted['latent'])
    labels = chain.labels or [u'{}'.format(i + 1) for i in range(n)]
    names = chain.names or [u'{}'.format(k + 1) for k in
                            range(len(chain.accepted['alpha_beta']))]
    covariates = chain.covariate_names

    parser = _new_parser()
    parser.add_section('chain')
    parser.set('chain', 'n', format_value(n))
    parser.set('chain', 'K', format_value(len(names)))
    parser.set('chain', 'p', format_value(hyper.p))
    parser.set('chain', 'F', format_value(len(covariates)))
    for key in ('seed', 'iters', 'burnin', 'thin', 'reference', 'alpha_ref',
                'latent_space'):
        parser.set('chain', key, format_value(getattr(hyper, key)))
    parser.set('chain', 'networks', u' '.join(names))
    parser.set('chain', 'labels', u' '.join(labels))
    parser.set('chain', 'covariates', u' '.join(covariates))
    parser.set('chain', 'draws', format_value(len(chain)))
    parser.set('chain', 'iterations', format_value(len(chain.revert_trace)))
    parser.add_section('hyper')
    for key, value in sorted(hyper.as_dict().items()):
        parser.set('hyper', key, format_value(value))
    parser.add_section('acceptance')
    rates = chain.acceptance_rates()
    for block in sorted(chain.accepted):
        parser.set('acceptance', block, format_value(rates[block]))
        parser.set('acceptance', block + '_accepted',
                   format_value(chain.accepted[block]))
        parser.set('acceptance', block + '_proposed',
                   format_value(chain.proposed[block]))
    parser.set('acceptance', 'revert', format_value(rates['revert']))
    _write_config(os.path.join(directory, 'chain.cfg'), parser)

    def rows():
        for it, flag in enumerate(chain.revert_trace):
            yield u'{} revert 0 {}'.format(it, int(flag))
        for it, state, deviance in zip(chain.iterations, chain.draws,
                                       chain.deviance_trace):
            for row in _draw_rows(it, state, deviance):
                yield row

    _write_text(os.path.join(directory, 'draws.txt'), rows())
    if latent is not None:
        save_coordinates(os.path.join(directory, 'latent.txt'), labels,
                         latent)


def _counts(section, key, size):
    values = parse_list(section.get(key, ''))
    if len(values) != size:
        raise ParsingError('Expected {} counts for {}'.format(size, key))
    try:
        return np.array([int(x) for x in values], dtype=np.int64)
    except ValueError:
        raise ParsingError('Bad counts for {}'.format(key))


def load_chain(directory):
    '''Read a chain written by :func:`save_chain`.'''
    config = os.path.join(directory, 'chain.cfg')
    parser = _read_config(config)
    for name in ('chain', 'hyper', 'acceptance'):
        if not parser.has_section(name):
            raise ParsingError('{}: Missing [{}] section'
                               .format(config, name))
    section = dict(parser.items('chain'))
    labels = parse_list(section.get('labels', ''))
    names = parse_list(section.get('networks', ''))
    covariates = parse_list(section.get('covariates', ''))
    hyper = hyper_from_items(parser.items('hyper'))
    n, K, F, p = len(labels), len(names), len(covariates), hyper.p

    chain = ChainOutput(hyper, n, K, F, labels=labels, names=names,
                        covariate_names=covariates)
    acceptance = dict(parser.items('acceptance'))
    sizes = {'alpha_beta': K, 'latent': n, 'lambda': F}
    try:
        for block, size in sizes.items():
            chain.accepted[block] = _counts(acceptance, block + '_accepted',
                                            size)
            chain.proposed[block] = _counts(acceptance, block + '_proposed',
                                            size)
    except ParsingError as e:
        raise ParsingError('{}: {}'.format(config, e))

    iterations = int(section.get('iterations', 0))
    chain.revert_trace = [False] * iterations
    draws = {}
    order = []
    lengths = dict(alpha=K, beta=K, mu_lambda=F, sigma2_lambda=F)
    lengths['lambda'] = F

    def parse(fields):
        if len(fields) != 4:
            raise ParsingError('Expected iteration, block, index and value')
        try:
            it = int(fields[0])
        except ValueError:
            raise ParsingError('Bad iteration: {}'.format(fields[0]))
        block, index, value = fields[1], fields[2], _float(fields[3])
        if block == 'revert':
            if not 0 <= it < iterations:
                raise ParsingError('Iteration {} out of range'.format(it))
            chain.revert_trace[it] = bool(value)
            return
        if block != 'z' and block not in VECTOR_BLOCKS and \
                block not in SCALAR_BLOCKS:
            raise ParsingError('Unknown block: {}'.format(block))
        if it not in draws:
            draws[it] = {
                'z': np.full((n, p), np.nan),
                'deviance': np.nan,
            }
            for name in VECTOR_BLOCKS:
                draws[it][name] = np.full(lengths[name], np.nan)
            order.append(it)
        draw = draws[it]
        try:
            if block == 'z':
                i, l = (int(x) for x in index.split(':'))
                draw['z'][i, l] = value
            elif block in VECTOR_BLOCKS:
                draw[block][int(index)] = value
            else:
                draw[block] = value
        except (ValueError, IndexError):
            raise ParsingError('Bad index {} for block {}'
                               .format(index, block))

    _parse_records(os.path.join(directory, 'draws.txt'), parse)

    for it in order:
        draw = draws[it]
        try:
            state = ModelState(
                z=draw['z'], alpha=draw['alpha'], beta=draw['beta'],
                lam=draw['lambda'], mu_alpha=draw['mu_alpha'],
                sigma2_alpha=draw['sigma2_alpha'], mu_beta=draw['mu_beta'],
                sigma2_beta=draw['sigma2_beta'],
                mu_lambda=draw['mu_lambda'],
                sigma2_lambda=draw['sigma2_lambda'])
        except KeyError as e:
            raise ParsingError('Draw {} lacks {}'.format(it, e))
        values = np.concatenate([state.z.ravel(), state.alpha, state.beta,
                                 state.lam, [draw['deviance']]])
        if np.isnan(values).any():
            raise ParsingError('Draw {} is incomplete'.format(it))
        chain.draws.append(state)
        chain.iterations.append(it)
        chain.deviance_trace.append(draw['deviance'])
    return chain


def write_report(filepath, sections):
    '''Write ``sections``, a list of ``(name, [(key, value), ...])``, as an
    INI file.'''
    parser = _new_parser()
    for name, items in sections:
        parser.add_section(name)
        for key, value in items:
            parser.set(name, key, format_value(value))
    _write_config(filepath, parser)


def read_report(filepath):
    parser = _read_config(filepath)
    return dict((name, dict(parser.items(name)))
                for name in parser.sections())


def save_init_report(filepath, report):
    '''Record how the starting values were obtained.'''
    parser = _new_parser()
    parser.add_section('init')
    parser.set('init', 'geodesic_network',
               format_value(report.geodesic_network))
    parser.set('init', 'geodesic_diameter',
               format_value(report.geodesic_diameter))
    parser.set('init', 'clamped_alpha', format_value(report.clamped_alpha))
    parser.set('init', 'clamped_beta', format_value(report.clamped_beta))
    parser.set('init', 'separated', format_value(report.separated))
    parser.add_section('notes')
    for i, note in enumerate(report.notes):
        parser.set('notes', u'{}'.format(i + 1), note)
    _write_config(filepath, parser)
