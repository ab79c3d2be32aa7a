"""
Esquema de pesos por antigüedad de las referencias.

w(año) = scale_1(base ** scale_2(año)), donde scale_2 lleva los años a
[exp_lo, exp_hi] y scale_1 lleva el intervalo analítico
[base**exp_lo, base**exp_hi] a [w_lo, w_hi].
"""

from dataclasses import dataclass, replace
from typing import Any, Dict, Optional, Tuple

from ..utils.errors import InvalidScheme


@dataclass(frozen=True)
class WeightScheme:
    """Parámetros del peso exponencial; los años se resuelven con el corpus."""
    base: float = 30.0
    exp_lo: float = 1.0
    exp_hi: float = 10.0
    w_lo: float = 1.0
    w_hi: float = 100.0
    y_min: Optional[int] = None
    y_max: Optional[int] = None
    uniform: bool = False

    def __post_init__(self):
        if not self.base > 1:
            raise InvalidScheme(f"base debe ser > 1 (recibido {self.base})")
        if not self.exp_lo < self.exp_hi:
            raise InvalidScheme(f"exp_range inválido: [{self.exp_lo}, {self.exp_hi}]")
        if not self.w_lo < self.w_hi:
            raise InvalidScheme(f"weight_range inválido: [{self.w_lo}, {self.w_hi}]")
        if self.y_min is not None and self.y_max is not None and self.y_min > self.y_max:
            raise InvalidScheme(f"year_min {self.y_min} > year_max {self.y_max}")

    @property
    def is_resolved(self) -> bool:
        """True si el rango de años está fijado."""
        return self.y_min is not None and self.y_max is not None

    @property
    def year_span(self) -> Tuple[int, int]:
        if not self.is_resolved:
            raise InvalidScheme("el esquema no tiene rango de años resuelto")
        return self.y_min, self.y_max

    def with_years(self, y_min: int, y_max: int) -> 'WeightScheme':
        """Copia con el rango de años indicado en los extremos no fijados."""
        return replace(
            self,
            y_min=self.y_min if self.y_min is not None else y_min,
            y_max=self.y_max if self.y_max is not None else y_max,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "base": self.base,
            "exp_range": [self.exp_lo, self.exp_hi],
            "weight_range": [self.w_lo, self.w_hi],
            "year_min": self.y_min,
            "year_max": self.y_max,
            "uniform": self.uniform,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'WeightScheme':
        """Construye el esquema desde la sección [weighting] de la configuración."""
        defaults = cls()
        exp_range = data.get("exp_range", [defaults.exp_lo, defaults.exp_hi])
        weight_range = data.get("weight_range", [defaults.w_lo, defaults.w_hi])
        if len(exp_range) != 2 or len(weight_range) != 2:
            raise InvalidScheme("exp_range y weight_range deben tener dos valores")
        year_min = data.get("year_min")
        year_max = data.get("year_max")
        return cls(
            base=float(data.get("base", defaults.base)),
            exp_lo=float(exp_range[0]),
            exp_hi=float(exp_range[1]),
            w_lo=float(weight_range[0]),
            w_hi=float(weight_range[1]),
            y_min=int(year_min) if year_min is not None else None,
            y_max=int(year_max) if year_max is not None else None,
            uniform=bool(data.get("uniform", False)),
        )
