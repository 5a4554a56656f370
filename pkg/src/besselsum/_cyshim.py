"""Stand-in for the ``cython`` module when the real package is absent.

The kernels module is written in Cython pure-Python mode.  When it runs
uncompiled and the ``cython`` package is not installed, backend.py places
this module in ``sys.modules["cython"]`` first.  Only the names the kernels
actually use are provided.
"""


class _Type:
    """Callable type marker; ``double[:]`` style subscripts return self."""

    def __init__(self, conv):
        self._conv = conv

    def __getitem__(self, item):
        return self

    def __call__(self, value):
        return self._conv(value)


compiled = False

_int = int
_float = float

double = _Type(_float)
int = _Type(_int)  # noqa: A001  (mirrors the cython module's attribute name)
long = _Type(_int)
bint = _Type(bool)
Py_ssize_t = _Type(_int)
doublecomplex = _Type(complex)


def cast(ctype, value, **kwargs):
    return ctype(value)


def cfunc(func):
    return func


def ccall(func):
    return func


def inline(func):
    return func
