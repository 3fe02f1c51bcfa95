"""Bundled scenarios reproducing the toolkit's reference examples.

Each preset is an ordinary scenario dictionary (the same JSON shape accepted
from files), so running a preset and running its serialised form are the
same code path.  Builders take keyword overrides: the torus-analog presets
accept ``resolution`` (the group is Z_{8 * resolution}).
"""

from __future__ import annotations

import copy

__all__ = ["PRESETS", "list_presets", "build_preset"]


def _indicator(scale: float = 1.0) -> dict:
    return {"window": "fourier_indicator", "set": list(range(8)), "scale": scale}


def _scaled(scale: float, of: dict) -> dict:
    return {"window": "scaled", "scale": scale, "of": of}


_ZERO = {"window": "zero"}


def _torus_group(resolution: int) -> dict:
    return {"factors": [8 * resolution], "weight_convention": "torus_like"}


def _torus_system(name: str, resolution: int, n: int, windows: list) -> dict:
    return {
        "name": name,
        "n": n,
        "lattice_gens": [[resolution]],
        "dual_lattice_gens": [[8]],
        "windows": windows,
    }


def _phi(l: int) -> dict:
    return _indicator(1.0 if l == 1 else 0.5)


# entry maps are row-major over the row-major vectorised matrix value
_COLUMN2_KEEPER = [[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]]
_F11_PROJECTOR = [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
_FLIP = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]
_PERT_THETA = [[0, 0, 0, 2], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]
_ZERO_MID_COLUMN_3 = [
    [1 if (i == j and i % 3 != 1) else 0 for j in range(9)] for i in range(9)
]


def _exb1(resolution: int = 2) -> dict:
    return {
        "description": "two scalar systems with tight constants 8 and 2",
        "task": "ordinary_bounds",
        "group": _torus_group(resolution),
        "systems": [
            _torus_system("phi1-system", resolution, 1, [_phi(1)]),
            _torus_system("phi2-system", resolution, 1, [_phi(2)]),
        ],
        "args": {},
    }


def _remark_theta0(resolution: int = 2) -> dict:
    windows = [
        {"matrix": [[_ZERO, _phi(1)], [_ZERO, _phi(1)]]},
        {"matrix": [[_ZERO, _phi(2)], [_ZERO, _phi(2)]]},
    ]
    return {
        "description": "rank-deficient matrix system: no ordinary frame, "
                       "20-tight under the column selector",
        "task": "theta_bounds",
        "group": _torus_group(resolution),
        "systems": [_torus_system("main", resolution, 2, windows)],
        "operators": [
            {"name": "selector", "kind": "entry_map", "n": 2, "matrix": _COLUMN2_KEEPER}
        ],
        "args": {"system": "main", "operator": "selector"},
    }


def _swap_windows(resolution: int) -> list:
    return [
        {"matrix": [[_ZERO, _phi(1)], [_phi(2), _ZERO]]},
        {"matrix": [[_ZERO, _phi(2)], [_phi(1), _ZERO]]},
    ]


def _exper1_negative(resolution: int = 2) -> dict:
    return {
        "description": "10-tight matrix system failing the two-sided "
                       "inequality for the f11 projector",
        "task": "theta_bounds",
        "group": _torus_group(resolution),
        "systems": [_torus_system("main", resolution, 2, _swap_windows(resolution))],
        "operators": [
            {"name": "projector", "kind": "entry_map", "n": 2, "matrix": _F11_PROJECTOR}
        ],
        "args": {"system": "main", "operator": "projector"},
    }


def _pert_windows(resolution: int) -> list:
    return [
        {"matrix": [[_scaled(0.2, _phi(1)), _phi(1)], [_phi(2), _scaled(0.2, _phi(2))]]},
        {"matrix": [[_scaled(0.2, _phi(2)), _phi(2)], [_phi(1), _scaled(0.2, _phi(1))]]},
    ]


def _pertexa(resolution: int = 2) -> dict:
    return {
        "description": "window perturbation of the 10-tight system: "
                       "hypothesis holds, predicted bounds (0.25, 22)",
        "task": "pert_check",
        "group": _torus_group(resolution),
        "systems": [
            _torus_system("main", resolution, 2, _swap_windows(resolution)),
            _torus_system("perturbed", resolution, 2, _pert_windows(resolution)),
        ],
        "operators": [
            {"name": "theta", "kind": "entry_map", "n": 2, "matrix": _PERT_THETA}
        ],
        "args": {
            "system": "main",
            "perturbed_system": "perturbed",
            "operator": "theta",
            "lambda": 0.0,
            "mu": 0.2,
            "eta": 0.2,
            "use_paper_bounds": False,
            "paper_bounds": [2.5, 10.0],
        },
    }


def _diag_windows(resolution: int) -> list:
    return [
        {"matrix": [[_scaled(0.2, _phi(1)), _ZERO], [_ZERO, _scaled(0.2, _phi(2))]]},
        {"matrix": [[_scaled(0.2, _phi(2)), _ZERO], [_ZERO, _scaled(0.2, _phi(1))]]},
    ]


def _sumexa(resolution: int = 2) -> dict:
    return {
        "description": "window-sum stability: condition 2.5 > 2 and "
                       "predicted interval around the summed system",
        "task": "sum_check",
        "group": _torus_group(resolution),
        "systems": [
            _torus_system("main", resolution, 2, _swap_windows(resolution)),
            _torus_system("second", resolution, 2, _diag_windows(resolution)),
        ],
        "operators": [
            {"name": "theta", "kind": "entry_map", "n": 2, "matrix": _PERT_THETA}
        ],
        "args": {
            "system": "main",
            "second_system": "second",
            "operator": "theta",
            "use_paper_bounds": False,
            "paper_bounds_first": [2.5, 10.0],
            "paper_bounds_second": [0.1, 0.4],
        },
    }


def _ex2_negative(resolution: int = 2) -> dict:
    return {
        "description": "operator image failing the composed two-sided "
                       "upper condition (commutation hypothesis broken)",
        "task": "image_check",
        "group": _torus_group(resolution),
        "systems": [_torus_system("main", resolution, 2, _swap_windows(resolution))],
        "operators": [
            {"name": "xi", "kind": "entry_map", "n": 2, "matrix": _COLUMN2_KEEPER},
            {"name": "theta", "kind": "entry_map", "n": 2, "matrix": _FLIP},
        ],
        "args": {"system": "main", "operator": "xi", "inner_operator": "theta"},
    }


def _prop1a_image(resolution: int = 2) -> dict:
    return {
        "description": "image of the 10-tight system under an adjointable "
                       "hyponormal selector keeps bounds (10, 10)",
        "task": "image_check",
        "group": _torus_group(resolution),
        "systems": [_torus_system("main", resolution, 2, _swap_windows(resolution))],
        "operators": [
            {"name": "selector", "kind": "entry_map", "n": 2, "matrix": _COLUMN2_KEEPER}
        ],
        "args": {"system": "main", "operator": "selector"},
    }


def _thm2_tight(order: int = 8, tightness: float = 1.0) -> dict:
    return {
        "description": "diagonal-window tight construction from a scalar "
                       "Parseval system (identity control)",
        "task": "tight_construct",
        "group": {"factors": [order], "weight_convention": "torus_like"},
        "systems": [
            {
                "name": "source",
                "n": 1,
                "lattice": "full",
                "dual_lattice": "full",
                "windows": [{"window": "delta"}],
            }
        ],
        "operators": [{"name": "control", "kind": "identity", "n": 2}],
        "args": {
            "tightness": tightness,
            "dimension": 2,
            "source_system": "source",
            "operator": "control",
        },
    }


def _ex_after_thm2(order: int = 8, tightness: float = 3.0) -> dict:
    return {
        "description": "3x3 tight construction with the zero-middle-column "
                       "selector (tightness 3)",
        "task": "tight_construct",
        "group": {"factors": [order], "weight_convention": "torus_like"},
        "systems": [
            {
                "name": "source",
                "n": 1,
                "lattice": "full",
                "dual_lattice": "full",
                "windows": [{"window": "delta"}],
            }
        ],
        "operators": [
            {"name": "selector", "kind": "entry_map", "n": 3, "matrix": _ZERO_MID_COLUMN_3}
        ],
        "args": {
            "tightness": tightness,
            "dimension": 3,
            "source_system": "source",
            "operator": "selector",
        },
    }


def _omega_check(resolution: int = 2) -> dict:
    return {
        "description": "synthesis-operator characterisation on the "
                       "perturbation example (bounds 5/2 and 10)",
        "task": "omega_check",
        "group": _torus_group(resolution),
        "systems": [_torus_system("main", resolution, 2, _swap_windows(resolution))],
        "operators": [
            {"name": "theta", "kind": "entry_map", "n": 2, "matrix": _PERT_THETA}
        ],
        "args": {"system": "main", "operator": "theta"},
    }


PRESETS = {
    "exb1": _exb1,
    "remark-theta0": _remark_theta0,
    "exper1-negative": _exper1_negative,
    "pertexa": _pertexa,
    "sumexa": _sumexa,
    "ex2-negative": _ex2_negative,
    "prop1a-image": _prop1a_image,
    "thm2-tight": _thm2_tight,
    "ex-after-thm2": _ex_after_thm2,
    "omega-check": _omega_check,
}


def build_preset(name: str, **overrides) -> dict:
    """Scenario dictionary for a named preset (deep-copied, safe to edit)."""
    try:
        builder = PRESETS[name]
    except KeyError:
        raise KeyError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None
    return copy.deepcopy(builder(**overrides))


def list_presets() -> list[tuple[str, str]]:
    """(name, one-line description) pairs in registry order."""
    return [(name, builder()["description"]) for name, builder in PRESETS.items()]
