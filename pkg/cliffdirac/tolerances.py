##########################################################################################
# cliffdirac/tolerances.py
##########################################################################################
"""Global numeric tolerances used by the identity checks.

Each check compares two quantities using a scaled error,
    err = max|a - b| / max(1, max|a|, max|b|),
and passes if err does not exceed the tolerance registered under the check's category.
These are global settings for the entire library.
"""
##########################################################################################

_DEFAULT_TOLERANCES = {
    'algebra'         : 1.e-10,
    'geometry'        : 1.e-9,
    'curvature'       : 1.e-8,
    'transforms'      : 1.e-8,
    'spin'            : 1.e-10,
    'variational'     : 1.e-8,
    'metric_variation': 1.e-7,
    'coupling'        : 1.e-8,
    'singular'        : 1.e-12,     # floor on |det g| and |det B|
    'diagonal'        : 1.e-12,     # off-diagonal magnitude treated as zero
    'incompatibility' : 1.e-3,      # minimum spin-connection defect
}

_TOLERANCES = dict(_DEFAULT_TOLERANCES)


def get_tolerance(name):
    """The current tolerance registered under the given name.

    Input:
        name        one of the category names: 'algebra', 'geometry', 'curvature',
                    'transforms', 'spin', 'variational', 'metric_variation',
                    'coupling', 'singular', 'diagonal', or 'incompatibility'.
    """

    try:
        return _TOLERANCES[name]
    except KeyError:
        raise KeyError(f'unknown tolerance category: {name!r}')


def set_tolerance(name, value):
    """Set the tolerance for the given category.

    Note that this is a global setting for the entire cliffdirac library.
    """

    global _TOLERANCES

    if name not in _DEFAULT_TOLERANCES:
        raise KeyError(f'unknown tolerance category: {name!r}')

    value = float(value)
    if not value > 0.:
        raise ValueError(f'tolerance must be positive: {value!r}')

    _TOLERANCES[name] = value


def reset_tolerances():
    """Restore every tolerance to its default value."""

    global _TOLERANCES

    _TOLERANCES = dict(_DEFAULT_TOLERANCES)

##########################################################################################
