"""Exact computation of smooth and topological slice genus bounds.

The package combines four bound-producing tools: a p-adic obstruction on the
symmetrized Seifert form, an integer lattice embedding obstruction on Goeritz
matrices, randomized subgroup searches on the Seifert form (isotropic and
Alexander-trivial), and a diagram move search that propagates genus bounds
through genus-one concordances.  All core arithmetic is exact.
"""

from importlib import resources


def default_db_path() -> str:
    """Path of the bundled knot table."""
    return str(resources.files("slicetool").joinpath("data", "knots.csv"))


__all__ = ["default_db_path"]
__version__ = "0.1.0"
