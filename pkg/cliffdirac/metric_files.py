##########################################################################################
# cliffdirac/metric_files.py
##########################################################################################
"""Reader for metric files and resolution of metric references.

A metric file is line-oriented plain text. Blank lines are ignored and "#" starts a
comment. Recognized lines:
    name = <identifier>
    g[i][j] = <expression>              metric component, i,j in 0..3.
    box[i] = <lo>, <hi>                 sampling interval of coordinate x<i>.
    B[i][j] = <expression>              basis change field; the identity if absent.
    psi[I] = <expression>               spinor component, I in 0..15 (canonical order).
    theta[a][I][J] = <expression>       entry (I,J) of the force-field matrix theta_a.

Expressions use x0..x3, numbers, + - * / ^, unary minus, parentheses and the functions
sin cos tan exp log sqrt sinh cosh tanh.

A metric reference is either the name of a builtin metric (optionally "name:SEED") or
a path. Relative paths not found in the working directory are looked up in the
directories listed in the environment variable CLIFFDIRAC_METRIC_PATH, or in the
directories given to set_metric_path().
"""
##########################################################################################

import numpy as np
import os
import pathlib
import re

from cliffdirac._exceptions         import MetricNotFound, ParseError
from cliffdirac.expression_pyparser import parse_expression
from cliffdirac.expressions         import format_expression
from cliffdirac.metrics             import MetricSpec, builtin_metric, is_builtin

_NAME_REGEX  = re.compile(r'name\s*=\s*([A-Za-z_][A-Za-z0-9_.:+-]*)$')
_G_REGEX     = re.compile(r'g\s*\[\s*(\d+)\s*\]\s*\[\s*(\d+)\s*\]\s*=(.*)$')
_BOX_REGEX   = re.compile(r'box\s*\[\s*(\d+)\s*\]\s*=\s*([^,]+),(.+)$')
_B_REGEX     = re.compile(r'B\s*\[\s*(\d+)\s*\]\s*\[\s*(\d+)\s*\]\s*=(.*)$')
_PSI_REGEX   = re.compile(r'psi\s*\[\s*(\d+)\s*\]\s*=(.*)$')
_THETA_REGEX = re.compile(r'theta\s*\[\s*(\d+)\s*\]\s*\[\s*(\d+)\s*\]\s*\[\s*(\d+)\s*\]'
                          r'\s*=(.*)$')

##########################################################################################
# ExpressionFile
##########################################################################################

class ExpressionFile(object):
    """The contents of a metric file.

    Attributes:
        spec            MetricSpec.
        basis_change    4x4 object array of Expressions (None entries are zero), or None
                        if the file has no B section.
        psi             object array of 16 Expressions, or None.
        theta           object array of shape (4,16,16), or None.
        path            the file path, or None for a builtin metric.
    """

    def __init__(self, spec, basis_change=None, psi=None, theta=None, path=None):
        self.spec = spec
        self.basis_change = basis_change
        self.psi = psi
        self.theta = theta
        self.path = path

    def __repr__(self):
        return f'ExpressionFile({self.spec.name!r})'

##########################################################################################
# Parser
##########################################################################################

def _index(text, limit, lineno, line):
    k = int(text)
    if k >= limit:
        raise ParseError(f'index {k} is out of range 0..{limit-1}', text=line,
                         line=lineno)
    return k


def _expression(text, lineno):
    """Parse the right side of an assignment, reporting the line number on failure."""

    try:
        return parse_expression(text.strip())
    except ParseError as err:
        raise ParseError(err.detail, text=err.text, offset=err.offset,
                         expected=err.expected, line=lineno) from None


def _store(table, key, value, label, lineno, line):
    if key in table:
        raise ParseError(f'duplicate definition of {label}', text=line, line=lineno)
    table[key] = value


def parse_metric_text(text, default_name='metric', path=None):
    """Parse the text of a metric file.

    Input:
        text            the file contents.
        default_name    name to use if the text has no "name =" line.
        path            file path to record in the result, if any.

    Return              ExpressionFile.

    Raises ParseError, with the 1-based line number, for any malformed line or
    expression; AsymmetricMetric if g[i][j] and g[j][i] differ.
    """

    name = None
    g_entries = {}
    boxes = {}
    b_entries = {}
    psi_entries = {}
    theta_entries = {}

    for (lineno, raw) in enumerate(text.splitlines(), start=1):
        line = raw.partition('#')[0].strip()
        if not line:
            continue

        if match := _NAME_REGEX.match(line):
            if name is not None:
                raise ParseError('duplicate name', text=line, line=lineno)
            name = match.group(1)

        elif match := _G_REGEX.match(line):
            i = _index(match.group(1), 4, lineno, line)
            j = _index(match.group(2), 4, lineno, line)
            _store(g_entries, (i,j), _expression(match.group(3), lineno),
                   f'g[{i}][{j}]', lineno, line)

        elif match := _BOX_REGEX.match(line):
            i = _index(match.group(1), 4, lineno, line)
            try:
                (lo, hi) = (float(match.group(2)), float(match.group(3)))
            except ValueError:
                raise ParseError('box limits must be numbers', text=line,
                                 line=lineno) from None
            if not lo <= hi:
                raise ParseError(f'empty box for x{i}', text=line, line=lineno)
            _store(boxes, i, (lo, hi), f'box[{i}]', lineno, line)

        elif match := _B_REGEX.match(line):
            i = _index(match.group(1), 4, lineno, line)
            j = _index(match.group(2), 4, lineno, line)
            _store(b_entries, (i,j), _expression(match.group(3), lineno),
                   f'B[{i}][{j}]', lineno, line)

        elif match := _PSI_REGEX.match(line):
            k = _index(match.group(1), 16, lineno, line)
            _store(psi_entries, k, _expression(match.group(2), lineno),
                   f'psi[{k}]', lineno, line)

        elif match := _THETA_REGEX.match(line):
            a = _index(match.group(1), 4, lineno, line)
            i = _index(match.group(2), 16, lineno, line)
            j = _index(match.group(3), 16, lineno, line)
            _store(theta_entries, (a,i,j), _expression(match.group(4), lineno),
                   f'theta[{a}][{i}][{j}]', lineno, line)

        else:
            raise ParseError(f'unrecognized line "{line}"', text=line, line=lineno)

    if not g_entries:
        raise ParseError('no metric components g[i][j] were given', text=text)

    box = [boxes.get(i, (-1.,1.)) for i in range(4)]
    spec = MetricSpec(name or default_name, g_entries, box)

    basis_change = None
    if b_entries:
        basis_change = np.full((4,4), None, dtype='object')
        for (key, expr) in b_entries.items():
            basis_change[key] = expr

    psi = None
    if psi_entries:
        psi = np.full(16, None, dtype='object')
        for (key, expr) in psi_entries.items():
            psi[key] = expr

    theta = None
    if theta_entries:
        theta = np.full((4,16,16), None, dtype='object')
        for (key, expr) in theta_entries.items():
            theta[key] = expr

    return ExpressionFile(spec, basis_change, psi, theta, path)


def read_metric_file(path):
    """Read and parse a metric file given by a string or Path."""

    path = pathlib.Path(path)
    with open(path, 'r', encoding='utf-8') as f:
        text = f.read()

    return parse_metric_text(text, default_name=path.stem, path=path)

##########################################################################################
# Resolution of metric references
##########################################################################################

_METRIC_PATH = None         # overrides CLIFFDIRAC_METRIC_PATH when not None


def set_metric_path(directories=None):
    """Define the directories searched for relative metric file paths.

    Input:
        directories     a directory, a list of directories, or a string of directories
                        separated by os.pathsep; None to revert to the environment
                        variable CLIFFDIRAC_METRIC_PATH.
    """

    global _METRIC_PATH

    if directories is None:
        _METRIC_PATH = None
    elif isinstance(directories, (str, pathlib.Path)):
        _METRIC_PATH = [pathlib.Path(d) for d in str(directories).split(os.pathsep) if d]
    else:
        _METRIC_PATH = [pathlib.Path(d) for d in directories]


def _search_directories():

    if _METRIC_PATH is not None:
        return list(_METRIC_PATH)

    value = os.environ.get('CLIFFDIRAC_METRIC_PATH', '')
    return [pathlib.Path(d) for d in value.split(os.pathsep) if d]


def find_metric_file(ref):
    """The Path of a metric file reference; raise MetricNotFound if it does not exist."""

    path = pathlib.Path(ref)
    if path.is_file():
        return path

    if not path.is_absolute():
        for directory in _search_directories():
            candidate = directory / path
            if candidate.is_file():
                return candidate

    raise MetricNotFound(f'metric not found: "{ref}"')


def resolve_metric(ref):
    """The ExpressionFile of a builtin metric name or a metric file path.

    Raises MetricNotFound if the reference is neither; ParseError if the file is
    malformed.
    """

    if isinstance(ref, str) and is_builtin(ref):
        return ExpressionFile(builtin_metric(ref))

    return read_metric_file(find_metric_file(ref))

##########################################################################################
# Formatter
##########################################################################################

def format_metric_file(exfile):
    """The normalized text of an ExpressionFile or MetricSpec."""

    if isinstance(exfile, MetricSpec):
        exfile = ExpressionFile(exfile)

    spec = exfile.spec
    lines = [f'name = {spec.name}']
    for i in range(4):
        for j in range(i,4):
            if spec.components[i,j] is not None:
                lines.append(f'g[{i}][{j}] = {format_expression(spec.components[i,j])}')

    for i in range(4):
        (lo, hi) = spec.box[i]
        lines.append(f'box[{i}] = {float(lo)!r}, {float(hi)!r}')

    if exfile.basis_change is not None:
        for (key, expr) in np.ndenumerate(exfile.basis_change):
            if expr is not None:
                lines.append(f'B[{key[0]}][{key[1]}] = {format_expression(expr)}')

    if exfile.psi is not None:
        for (k, expr) in enumerate(exfile.psi):
            if expr is not None:
                lines.append(f'psi[{k}] = {format_expression(expr)}')

    if exfile.theta is not None:
        for (key, expr) in np.ndenumerate(exfile.theta):
            if expr is not None:
                lines.append('theta[{}][{}][{}] = {}'.format(*key,
                                                             format_expression(expr)))

    return '\n'.join(lines) + '\n'

##########################################################################################
