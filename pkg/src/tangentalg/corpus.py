"""Named examples, each given as source text in the input language."""

from __future__ import annotations

import re

__all__ = ["CORPUS_NAMES", "UnknownExample", "example_source"]


class UnknownExample(KeyError):
    pass


_FIXED = {
    "veronese": (
        "# cone over the Veronese surface: 2-minors of a generic symmetric 3x3 matrix\n"
        "char 32003;\nring x1..x6;\nideal I = minors 2 symmetric 3;\n"
    ),
    "cusp": (
        "# plane cusp, weighted so that y^2 - x^3 is homogeneous\n"
        "char 0;\nring x:2 y:3;\nideal I = y^2 - x^3;\n"
    ),
    "generic-2x3": (
        "# maximal minors of a generic 2x3 matrix (codimension 2, Cohen-Macaulay)\n"
        "char 32003;\nring x1..x6;\nideal I = minors 2 generic 2 3;\n"
    ),
    "node": (
        "# affine nodal cubic; not homogeneous, so graded checks are unavailable\n"
        "char 32003;\nring x y;\nideal I = y^2 - x^2 - x^3;\n"
    ),
}

# the families that the full corpus run expands to
CORPUS_NAMES = (
    "veronese",
    "catalecticant-1",
    "catalecticant-2",
    "catalecticant-3",
    "catalecticant-4",
    "cusp",
    "fermat-5-5",
    "generic-2x3",
    "node",
)


def example_source(name: str) -> str:
    """Source text of a named example.

    ``catalecticant-r`` (r >= 1) is the 2-minor ideal of the 2x4 matrix with
    rows x1..x4 and x(r+1)..x(r+4); ``fermat-d-n`` is x1^d + ... + xn^d.
    """
    if name in _FIXED:
        return _FIXED[name]
    m = re.fullmatch(r"catalecticant-(\d+)", name)
    if m and int(m.group(1)) >= 1:
        r = int(m.group(1))
        return (f"# 2-minors of the catalecticant matrix with shift {r}\n"
                f"char 32003;\nring x1..x{r + 4};\nideal I = minors 2 catalecticant {r};\n")
    m = re.fullmatch(r"fermat-(\d+)-(\d+)", name)
    if m and int(m.group(1)) >= 1 and int(m.group(2)) >= 1:
        d, n = int(m.group(1)), int(m.group(2))
        poly = " + ".join(f"x{i}^{d}" for i in range(1, n + 1))
        return f"# Fermat hypersurface of degree {d} in {n} variables\nchar 32003;\nring x1..x{n};\nideal I = {poly};\n"
    raise UnknownExample(name)
