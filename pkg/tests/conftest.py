import math

import pytest

from rsdm import _backend


class ScriptedStream:
    """Stand-in RandomStream that replays fixed deviates.

    ``uniforms`` feed :meth:`uniform01`; ``normals`` are standard-normal
    values that :meth:`gaussian` shifts and scales. Once a script runs out
    it keeps returning ``default``.
    """

    def __init__(self, uniforms=(), normals=(), default_u=0.5, default_z=0.0):
        self.uniforms = list(uniforms)
        self.normals = list(normals)
        self.default_u = default_u
        self.default_z = default_z
        self.calls = []

    def uniform01(self):
        self.calls.append("u")
        return self.uniforms.pop(0) if self.uniforms else self.default_u

    def gaussian(self, mean, sd):
        self.calls.append("n")
        z = self.normals.pop(0) if self.normals else self.default_z
        return mean + sd * z


# u making -ln(1-u) == 1, i.e. the exponential draw equals its mean
U_MEAN = 1.0 - math.exp(-1.0)


@pytest.fixture
def scripted():
    return ScriptedStream


@pytest.fixture(params=_backend.available())
def backend(request):
    previous = _backend.use(request.param)
    yield _backend.get()
    _backend.use(previous)
