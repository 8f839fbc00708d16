# -*- coding: utf-8 -*-
'''
    latentplex.exceptions
    ~~~~~~~~~~~~~~~~~~~~~

    :license: MIT, see LICENSE for more details.
'''


class LatentplexError(Exception):
    pass


class DimensionError(LatentplexError, ValueError):
    pass


class DomainError(LatentplexError, ValueError):
    pass


class ConfigurationError(LatentplexError, ValueError):
    pass


class ValidationError(LatentplexError, ValueError):
    '''Data violating a Multiplex or CovariateSet invariant. ``items`` holds
    the offending entries, e.g. ``(network, voter, votee)`` triples.'''

    def __init__(self, message, items=()):
        self.items = list(items)
        if self.items:
            shown = u', '.join(str(x) for x in self.items[:20])
            if len(self.items) > 20:
                shown += u', ...'
            message = u'{}: {}'.format(message, shown)
        LatentplexError.__init__(self, message)


class ParsingError(LatentplexError, ValueError):
    pass


class CliError(LatentplexError):
    pass
