"""
Payoff specification for multi-asset European options.
Serializes to/from JSON {family, strike, weights}.
"""
from enum import Enum
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class PayoffFamily(str, Enum):
    """Supported multi-asset payoffs"""
    BASKET_PUT = "BasketPut"
    CALL_ON_MIN = "CallOnMin"


class PayoffSpec(BaseModel):
    """Payoff family, strike and basket weights"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    family: PayoffFamily
    strike: float = Field(gt=0)
    d: int = Field(ge=1)
    weights: Tuple[float, ...]

    @model_validator(mode="before")
    @classmethod
    def _fill_dimension(cls, data):
        if not isinstance(data, dict):
            return data
        if data.get("d") is None and data.get("weights") is not None:
            data = {**data, "d": len(data["weights"])}
        if data.get("weights") is None and data.get("d") is not None:
            # equally weighted by default
            data = {**data, "weights": tuple([1.0 / int(data["d"])] * int(data["d"]))}
        return data

    @model_validator(mode="after")
    def _check_weights(self) -> "PayoffSpec":
        if len(self.weights) != self.d:
            raise ValueError(f"weights must have length d={self.d}")
        if not all(w > 0 for w in self.weights):
            raise ValueError("weights must be positive")
        return self

    @property
    def weights_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    @property
    def log_spot_shift(self) -> np.ndarray:
        """Shift of X_0 that turns the weighted payoff into the canonical one"""
        if self.family is PayoffFamily.BASKET_PUT:
            return np.log(self.weights_array)
        return np.zeros(self.d)

    def to_json(self) -> str:
        return self.model_dump_json(exclude={"d"})

    @classmethod
    def from_json(cls, payload: str) -> "PayoffSpec":
        return cls.model_validate_json(payload)
