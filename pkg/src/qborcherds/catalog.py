"""Named test data, mirrored by the JSON files under data/."""

from dataclasses import dataclass, field

from .cartan import CartanDatum

_SPECS = {
    "a1": ([[2]], [1], [0]),
    "a1_d2": ([[2]], [2], [0]),
    "a1_odd": ([[2]], [1], [1]),
    "a2": ([[2, -1], [-1, 2]], [2, 2], [0, 0]),
    "a2_d1": ([[2, -1], [-1, 2]], [1, 1], [0, 0]),
    "b2": ([[2, -2], [-1, 2]], [2, 4], [0, 0]),
    "borcherds_iso": ([[2, -1], [-1, 0]], [2, 2], [0, 0]),
    "borcherds_super": ([[2, -2], [-1, 0]], [1, 2], [1, 0]),
    "imaginary": ([[-2]], [2], [0]),
}

# sample dominant weights per datum (coroot values)
WEIGHTS = {
    "a1": [(0,), (1,), (2,), (3,)],
    "a1_d2": [(0,), (2,)],
    "a1_odd": [(0,), (2,)],
    "a2": [(1, 0), (1, 1)],
    "a2_d1": [(1, 0)],
    "b2": [(1, 0), (0, 1)],
    "borcherds_iso": [(1, 0), (1, 1), (0, 1)],
    "borcherds_super": [(2, 0), (2, 1), (0, 1)],
    "imaginary": [(0,), (1,)],
}

# data on which bar preserves the radical
BAR_CONSISTENT = ("a1_d2", "a1_odd", "a2", "b2", "borcherds_iso", "borcherds_super",
                  "imaginary")


def datum(name):
    A, D, p = _SPECS[name]
    return CartanDatum.make(A, D, p)


def names():
    return list(_SPECS)


@dataclass
class ExperimentConfig:
    data: list = field(default_factory=names)
    depth: int = 4
    seed: int = 0

    def items(self):
        return [(n, datum(n)) for n in self.data]
