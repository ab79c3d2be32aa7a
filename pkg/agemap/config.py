"""
Configuración del pipeline.

Se lee de un archivo TOML con secciones que reflejan los módulos
([input], [filter], [weighting], [coupling], [clustering], [core],
[output]); cada opción de la CLI sobreescribe su clave.
"""

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from .analysis.ingest import CsvColumns, ExportFormat
from .models import Contribution, CutParams, WeightScheme
from .utils.errors import AgeMapError, ConfigError

DEFAULT_OUTPUT_DIR = "agemap_output"


@dataclass(frozen=True)
class PipelineConfig:
    """Parámetros completos de una ejecución."""
    inputs: List[str] = field(default_factory=list)
    input_format: ExportFormat = ExportFormat.WOS_PLAINTEXT
    csv_columns: CsvColumns = CsvColumns()
    year_min: Optional[int] = None
    year_max: Optional[int] = None
    scheme: WeightScheme = WeightScheme()
    contribution: Contribution = Contribution.SQUARED
    dump_matrix: bool = False
    cut: CutParams = CutParams()
    bin_width: int = 5
    thresholds: Dict[int, float] = field(default_factory=dict)
    output_dir: str = DEFAULT_OUTPUT_DIR
    log_file: Optional[str] = None

    @classmethod
    def load(cls, path: Union[str, Path]) -> 'PipelineConfig':
        """Lee el archivo TOML."""
        try:
            with open(path, "rb") as f:
                data = tomllib.load(f)
        except FileNotFoundError:
            raise ConfigError(f"no existe el archivo de configuración: {path}")
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f"configuración TOML inválida en {path}: {e}")
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'PipelineConfig':
        def section(name: str) -> Dict[str, Any]:
            return data.get(name, {}) or {}

        input_section = section("input")
        filter_section = section("filter")
        coupling = section("coupling")
        clustering = section("clustering")
        core = section("core")
        output = section("output")

        try:
            cut_defaults = CutParams()
            cut_height = clustering.get("cut_height")
            return cls(
                inputs=[str(p) for p in input_section.get("paths", [])],
                input_format=ExportFormat(input_section.get("format", ExportFormat.WOS_PLAINTEXT.value)),
                csv_columns=CsvColumns.from_dict(input_section.get("csv", {})),
                year_min=_optional_int(filter_section.get("year_min")),
                year_max=_optional_int(filter_section.get("year_max")),
                scheme=WeightScheme.from_dict(section("weighting")),
                contribution=Contribution(coupling.get("contribution", Contribution.SQUARED.value)),
                dump_matrix=bool(coupling.get("dump_matrix", False)),
                cut=CutParams(
                    min_cluster_size=int(clustering.get("min_cluster_size", cut_defaults.min_cluster_size)),
                    cut_quantile=float(clustering.get("cut_quantile", cut_defaults.cut_quantile)),
                    deep_split=bool(clustering.get("deep_split", cut_defaults.deep_split)),
                    cut_height=float(cut_height) if cut_height is not None else None,
                ),
                bin_width=int(core.get("bin_width", 5)),
                thresholds={int(k): float(v) for k, v in (core.get("thresholds", {}) or {}).items()},
                output_dir=str(output.get("directory", DEFAULT_OUTPUT_DIR)),
                log_file=output.get("log_file"),
            )
        except ConfigError:
            raise
        except (AgeMapError, ValueError, TypeError) as e:
            raise ConfigError(f"configuración inválida: {getattr(e, 'message', e)}")

    def with_overrides(self, **overrides: Any) -> 'PipelineConfig':
        """
        Copia con las claves indicadas reemplazadas; los valores None se
        ignoran. Las claves de esquema y corte se reparten a sus dataclasses.
        """
        values = {k: v for k, v in overrides.items() if v is not None}
        scheme_keys = {"base", "exp_lo", "exp_hi", "w_lo", "w_hi", "y_min", "y_max", "uniform"}
        cut_keys = {"min_cluster_size", "cut_quantile", "deep_split", "cut_height"}

        scheme_values = {k: values.pop(k) for k in list(values) if k in scheme_keys}
        cut_values = {k: values.pop(k) for k in list(values) if k in cut_keys}
        try:
            if "input_format" in values:
                values["input_format"] = ExportFormat(values["input_format"])
            if "contribution" in values:
                values["contribution"] = Contribution(values["contribution"])
            config = replace(self, **values)
            if scheme_values:
                config = replace(config, scheme=replace(config.scheme, **scheme_values))
            if cut_values:
                config = replace(config, cut=replace(config.cut, **cut_values))
        except AgeMapError as e:
            raise ConfigError(f"parámetro inválido: {e.message}")
        except ValueError as e:
            raise ConfigError(f"parámetro inválido: {e}")
        return config

    def validate(self, require_inputs: bool = True) -> 'PipelineConfig':
        """
        Comprueba las invariantes de la configuración.

        Raises:
            ConfigError: con la primera violación encontrada
        """
        if require_inputs and not self.inputs:
            raise ConfigError("no se indicó ningún archivo de entrada")
        for path in self.inputs:
            if not Path(path).is_file():
                raise ConfigError(f"no existe el archivo de entrada: {path}")
        if self.year_min is not None and self.year_max is not None and self.year_min > self.year_max:
            raise ConfigError(f"filtro de años invertido: {self.year_min} > {self.year_max}")
        if self.bin_width < 1:
            raise ConfigError("bin_width debe ser >= 1")
        if self.cut.cut_height is not None and self.cut.cut_height < 0:
            raise ConfigError("cut_height debe ser >= 0")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "inputs": list(self.inputs),
            "input_format": self.input_format.value,
            "filter": {"year_min": self.year_min, "year_max": self.year_max},
            "weighting": self.scheme.to_dict(),
            "coupling": {"contribution": self.contribution.value, "dump_matrix": self.dump_matrix},
            "clustering": self.cut.to_dict(),
            "core": {
                "bin_width": self.bin_width,
                "thresholds": {str(k): v for k, v in sorted(self.thresholds.items())},
            },
            "output": {"directory": self.output_dir, "log_file": self.log_file},
        }


def _optional_int(value: Any) -> Optional[int]:
    return int(value) if value is not None else None
