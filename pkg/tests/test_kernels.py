import os
import subprocess
import sys

import pytest

from torusnef import build_root_system, kernels
from torusnef.kernels import compiled_backend, python_backend
from torusnef.oracles import corpus

needs_ext = pytest.mark.skipif(compiled_backend is None, reason="compiled extension not built")

LONG_WORDS = [
    ("A3", (1, 2, 1, 3, 2, 1)),
    ("B3", (3, 2, 3, 1, 2, 3, 1, 2, 1)),
    ("D4", (2, 1, 3, 4, 2, 1, 3, 4, 2)),
    ("F4", (1, 2, 3, 4, 1, 2, 3, 4)),
]


@needs_ext
@pytest.mark.parametrize("t,word", list(corpus(4)) + LONG_WORDS)
def test_backends_agree(t, word):
    rs = build_root_system(t)
    w = [a - 1 for a in word]
    assert compiled_backend.curve_degree_table(rs.cartan, w) == python_backend.curve_degree_table(rs.cartan, w)


@needs_ext
def test_backends_share_overflow_guard():
    # huge off-diagonal entries make weights grow geometrically
    fake = [[2, -1000], [-1000, 2]]
    for backend in (python_backend, compiled_backend):
        with pytest.raises(OverflowError):
            backend.curve_degree_table(fake, [0, 1, 0, 1, 0, 1])


def test_empty_word():
    assert kernels.curve_degree_table([[2]], []) == ([], [])


def test_curve_index_layout():
    # earliest non-moving slot is the most significant bit
    assert python_backend.curve_bits(3, 0) == (0, [0, 0, 0])
    assert python_backend.curve_bits(3, 1) == (0, [0, 0, 1])
    assert python_backend.curve_bits(3, 6) == (1, [1, 0, 0])
    assert python_backend.curve_bits(3, 11) == (2, [1, 1, 0])


def test_pure_python_override():
    env = dict(os.environ, TORUSNEF_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import torusnef.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
