"""Named field specs used by the CLI, the scripts and the tests."""

from __future__ import annotations

import copy
from typing import Optional

from .local_field import LocalField
from .serialize import field_from_dict

PRESETS: dict[str, dict] = {
    "q2": {"name": "Q_2", "p": 2, "f": 1, "eisenstein": [[-2], [1]]},
    "q2sqrt3": {"name": "Q_2(sqrt3)", "p": 2, "f": 1, "eisenstein": [[-2], [2], [1]]},
    "q2cbrt2": {"name": "Q_2(cbrt2)", "p": 2, "f": 1, "eisenstein": [[-2], [0], [0], [1]]},
    "q2i": {"name": "Q_2(i)", "p": 2, "f": 1, "eisenstein": [[2], [2], [1]]},
    "q2zeta8": {"name": "Q_2(zeta8)", "p": 2, "f": 1, "eisenstein": [[2], [-4], [6], [-4], [1]]},
    "q2sqrt5": {"name": "Q_2(sqrt5)", "p": 2, "f": 2, "eisenstein": [[-2, 0], [1, 0]]},
    "q2sqrt5i": {"name": "Q_2(sqrt5,i)", "p": 2, "f": 2, "eisenstein": [[2, 0], [2, 0], [1, 0]]},
    "q3": {"name": "Q_3", "p": 3, "f": 1, "eisenstein": [[-3], [1]]},
    "q3zeta3": {"name": "Q_3(zeta3)", "p": 3, "f": 1, "eisenstein": [[3], [-3], [1]]},
    "q3sqrt3": {"name": "Q_3(sqrt3)", "p": 3, "f": 1, "eisenstein": [[-3], [0], [1]]},
    "q3cbrt3": {"name": "Q_3(cbrt3)", "p": 3, "f": 1, "eisenstein": [[-3], [0], [0], [1]]},
    "q9sqrt3": {"name": "Q_9(sqrt3)", "p": 3, "f": 2, "eisenstein": [[-3, 0], [0, 0], [1, 0]]},
    "q5": {"name": "Q_5", "p": 5, "f": 1, "eisenstein": [[-5], [1]]},
    "q5sqrt5": {"name": "Q_5(sqrt5)", "p": 5, "f": 1, "eisenstein": [[-5], [0], [1]]},
    "q5root4of5": {"name": "Q_5(5^(1/4))", "p": 5, "f": 1, "eisenstein": [[-5], [0], [0], [0], [1]]},
    "q5zeta5": {"name": "Q_5(zeta5)", "p": 5, "f": 1, "eisenstein": [[5], [-10], [10], [-5], [1]]},
    "q7": {"name": "Q_7", "p": 7, "f": 1, "eisenstein": [[-7], [1]]},
}


def preset_spec(name: str) -> dict:
    key = name[:-5] if name.endswith(".json") else name
    return copy.deepcopy(PRESETS[key])


def preset(name: str, prec_pi: Optional[int] = None) -> LocalField:
    return field_from_dict(preset_spec(name), prec_pi)
