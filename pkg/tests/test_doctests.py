"""Keep the docstring examples executable."""

import doctest

import pytest

import ncfree.annular
import ncfree.cumulants
import ncfree.draw
import ncfree.perm
import ncfree.spaces

MODULES = [
    ncfree.perm,
    ncfree.annular,
    ncfree.spaces,
    ncfree.cumulants,
    ncfree.draw,
]


@pytest.mark.parametrize("module", MODULES, ids=lambda m: m.__name__)
def test_module_doctests(module):
    result = doctest.testmod(module, verbose=False)
    assert result.failed == 0
