import os
import sys
import warnings

import pytest

HERE = os.path.dirname(__file__)
ROOT = os.path.dirname(HERE)
DATA = os.path.join(ROOT, "data")
GOLDEN = os.path.join(HERE, "golden")
sys.path.insert(0, os.path.join(ROOT, "src"))
sys.path.insert(0, HERE)

from clustertilt.cover import Cover  # noqa: E402
from clustertilt.inputs import modules_from_file, read_json, read_quiver  # noqa: E402
from clustertilt.quiver import path_basis  # noqa: E402
from clustertilt.slices import slice_from_modules  # noqa: E402
from clustertilt.strip import build_transjective, enumerate_fibre_quotients  # noqa: E402
from clustertilt.tube import insert_coray, knit_tube, tube_from_modules  # noqa: E402

CORPUS = ["a2", "a2tilde", "a4", "d4", "d4tilde", "d5", "ex47_C1", "point", "tube"]


def data(name):
    return os.path.join(DATA, name)


def load(name):
    return read_quiver(data(name + ".quiver"))


def slice_modules(name):
    C = load(name)
    return C, modules_from_file(path_basis(C), read_json(data(name + ".slice.json")))


def make_slice(name, seed=0):
    C, mods = slice_modules(name)
    return slice_from_modules(Cover(C, seed), mods)


@pytest.fixture(scope="session")
def ex47_slice():
    return make_slice("ex47_C1")


@pytest.fixture(scope="session")
def ex47_strip(ex47_slice):
    return build_transjective(ex47_slice)


@pytest.fixture(scope="session")
def ex47_fibres(ex47_slice):
    return enumerate_fibre_quotients(ex47_slice)


@pytest.fixture(scope="session")
def d4_slice():
    return make_slice("d4")


@pytest.fixture(scope="session")
def d4_strip(d4_slice):
    return build_transjective(d4_slice)


@pytest.fixture(scope="session")
def d4tilde_strip():
    return build_transjective(make_slice("d4tilde"), mode="infinite")


@pytest.fixture(scope="session")
def tube_pair():
    C = load("tube")
    A = path_basis(C)
    cfg = read_json(data("tube.tube.json"))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        tc = knit_tube(tube_from_modules(C, modules_from_file(A, cfg)), cfg["knit"])
        tct = insert_coray(tc, "1")
    return tc, tct
