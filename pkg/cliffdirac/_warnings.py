##########################################################################################
# cliffdirac/_warnings.py
##########################################################################################
"""Warnings issued while running verification suites.

CliffordWarning is the base class. ResampledPointWarning reports that a sample point
fell outside the domain of a metric, field or basis change and was redrawn;
ToleranceOverrideWarning reports that a user tolerance replaced the per-check
thresholds. Each distinct (category, message) pair is issued once per session.
"""
##########################################################################################

import warnings


class CliffordWarning(UserWarning):
    pass


class ResampledPointWarning(CliffordWarning):
    pass


class ToleranceOverrideWarning(CliffordWarning):
    pass


_ISSUED = set()


def _warn(message, category=CliffordWarning):
    """Issue this warning unless the same category and message were issued before.

    Return          True if the warning was issued.
    """

    key = (category, message)
    if key in _ISSUED:
        return False

    _ISSUED.add(key)
    warnings.warn(message, category=category, stacklevel=3)
    return True


def _reset_warnings():
    """Forget every warning issued so far."""

    _ISSUED.clear()

##########################################################################################
