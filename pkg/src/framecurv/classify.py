"""Name the model space from sampled curvature values.

A Lorentzian surface with constant sectional curvature is locally one of
three model spaces; the verdict names them by the sign of the constant.
Constancy of the samples is judged by spread = max - min against 2*tol.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import EmptyInput

__all__ = ["ModelSpace", "ClassificationVerdict", "classify"]


class ModelSpace(str, Enum):
    DE_SITTER = "DeSitter"
    MINKOWSKI = "Minkowski"
    ANTI_DE_SITTER = "AntiDeSitter"
    NON_CONSTANT = "NonConstant"
    NOT_LORENTZIAN = "NotLorentzian"


@dataclass(frozen=True)
class ClassificationVerdict:
    kind: ModelSpace
    k_value: float | None  # mean of the samples; absent when non-constant
    spread: float  # max - min over the samples

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "kValue": self.k_value, "spread": self.spread}


def classify(
    samples: Sequence[tuple[dict[str, float], float]],
    lorentzian: bool,
    tol: float = 1e-6,
) -> ClassificationVerdict:
    """Classify sampled (point, K) pairs.

    Samples count as constant iff max - min <= 2*tol; the constant's sign
    (against tol) picks the name.  When lorentzian is False no model space
    is named, but mean and spread are still reported.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if len(samples) == 0:
        raise EmptyInput("no curvature samples to classify")
    values = [value for _, value in samples]
    spread = max(values) - min(values)
    mean = math.fsum(values) / len(values)
    if not lorentzian:
        return ClassificationVerdict(ModelSpace.NOT_LORENTZIAN, mean, spread)
    if spread > 2.0 * tol:
        return ClassificationVerdict(ModelSpace.NON_CONSTANT, None, spread)
    if mean > tol:
        kind = ModelSpace.DE_SITTER
    elif mean < -tol:
        kind = ModelSpace.ANTI_DE_SITTER
    else:
        kind = ModelSpace.MINKOWSKI
    return ClassificationVerdict(kind, mean, spread)
