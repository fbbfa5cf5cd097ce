"""The built-in measure catalog used by the invariant suite."""
import numpy as np

from .measures import Atoms, Lebesgue, Mixture, TrigDensity


def catalog():
    """Seven measures covering every family: ``[(name, measure), ...]``."""
    return [
        ("zero", Lebesgue(0.0)),
        ("lebesgue1", Lebesgue(1.0)),
        ("lebesgue0.5", Lebesgue(0.5)),
        ("atom0", Atoms(((0.0, 1.0),))),
        ("atoms2", Atoms(((0.0, 0.5), (2 * np.pi / 3, 0.5)))),
        ("trig0.4", TrigDensity({0: 1.0, 1: 0.4})),
        ("mixture", Mixture((Lebesgue(0.5), Atoms(((np.pi, 0.5),))))),
    ]


def catalog_pairs():
    cat = catalog()
    return [((n1, m1), (n2, m2)) for n1, m1 in cat for n2, m2 in cat]
