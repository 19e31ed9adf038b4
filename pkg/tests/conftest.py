import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import CORPUS

from lctsing import gauss_manin_analysis, milnor_data, parse_polynomial
from lctsing.localalg import is_quasihomogeneous


class CorpusEntry:
    def __init__(self, name, expr, varnames, nonqh):
        self.name = name
        self.expr = expr
        self.varnames = varnames.split(",")
        self.nonqh = nonqh
        self.f = parse_polynomial(expr, self.varnames)
        self._md = None
        self._gm = None
        self._qh = None

    @property
    def md(self):
        if self._md is None:
            self._md = milnor_data(self.f)
        return self._md

    @property
    def gm(self):
        if self._gm is None:
            self._gm = gauss_manin_analysis(self.f, self.md)
        return self._gm

    @property
    def qh(self):
        if self._qh is None:
            self._qh = is_quasihomogeneous(self.f, self.md)
        return self._qh


_ENTRIES = {name: CorpusEntry(name, expr, vs, nonqh)
            for name, expr, vs, nonqh in CORPUS}


@pytest.fixture(scope="session")
def corpus():
    return _ENTRIES


@pytest.fixture(scope="session")
def quintic(corpus):
    return corpus["t55_susp5"]
