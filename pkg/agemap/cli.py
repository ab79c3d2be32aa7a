"""
Punto de entrada de la línea de comandos.

    agemap <subcomando> [--config PATH] [opciones]

Subcomandos: parse, run, compare, core, weights, subcluster.
Códigos de salida: 0 éxito, 1 uso, 2 datos, 3 interno.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from . import __version__
from .config import PipelineConfig
from .handlers import Command, CommandHandlerRegistry
from .utils.errors import EXIT_INTERNAL, AgeMapError, UsageError
from .utils.logger import configure, get_logger


class _ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser que convierte los errores de uso en UsageError."""

    def error(self, message: str):
        raise UsageError(message)


def _threshold(text: str):
    """CLUSTER=VALOR, p. ej. 1=150."""
    try:
        cluster, value = text.split("=", 1)
        return int(cluster), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"umbral inválido {text!r} (se espera CLUSTER=VALOR)")


def _common_options() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--config", help="Archivo de configuración TOML")
    common.add_argument("-v", "--verbose", action="store_true", help="Logs de depuración")
    common.add_argument("-q", "--quiet", action="store_true", help="Solo advertencias y errores")
    common.add_argument("--log-file", help="Copia de los logs en un archivo")
    return common


def _weighting_options() -> argparse.ArgumentParser:
    weighting = _ArgumentParser(add_help=False)
    group = weighting.add_argument_group("pesos por antigüedad")
    group.add_argument("--base", type=float, help="Base de la exponencial (30)")
    group.add_argument("--exp-range", type=float, nargs=2, metavar=("LO", "HI"), help="Intervalo del exponente (1 10)")
    group.add_argument("--weight-range", type=float, nargs=2, metavar=("LO", "HI"), help="Intervalo de pesos (1 100)")
    group.add_argument("--weight-year-min", type=int, help="Año que recibe el peso mínimo")
    group.add_argument("--weight-year-max", type=int, help="Año que recibe el peso máximo")
    group.add_argument("--uniform", action="store_true", help="Todos los pesos valen 1")
    return weighting


def _core_options() -> argparse.ArgumentParser:
    core = _ArgumentParser(add_help=False)
    core.add_argument("--bin-width", type=int, help="Ancho en años de los intervalos del histograma (5)")
    return core


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    weighting = _weighting_options()
    core = _core_options()

    parser = _ArgumentParser(
        prog="agemap",
        description="Acoplamiento bibliográfico clásico y sensible a la antigüedad",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="SUBCOMANDO")

    p = subparsers.add_parser(Command.PARSE.value, parents=[common], help="Lee exportaciones y escribe corpus.jsonl")
    p.add_argument("inputs", nargs="*", help="Archivos exportados")
    p.add_argument("--format", choices=["wos_plaintext", "csv"], help="Formato de entrada")
    p.add_argument("-o", "--output", help="Directorio de salida")

    p = subparsers.add_parser(Command.RUN.value, parents=[common, weighting, core], help="Pipeline completo")
    p.add_argument("inputs", nargs="*", help="Archivos exportados")
    p.add_argument("--format", choices=["wos_plaintext", "csv"], help="Formato de entrada")
    p.add_argument("-o", "--output", help="Directorio de salida")
    p.add_argument("--year-min", type=int, help="Primer año de publicación admitido")
    p.add_argument("--year-max", type=int, help="Último año de publicación admitido")
    p.add_argument("--contribution", choices=["squared", "linear"], help="Aporte de cada referencia compartida")
    p.add_argument("--dump-matrix", action="store_true", help="Escribe las matrices de similitud en CSV")
    p.add_argument("--min-cluster-size", type=int, help="Tamaño mínimo de cluster (10)")
    p.add_argument("--cut-quantile", type=float, help="Cuantil de alturas para el corte (0.99)")
    p.add_argument("--cut-height", type=float, help="Altura de corte fija (reemplaza al cuantil)")
    p.add_argument("--no-deep-split", action="store_true", help="Desactiva la división recursiva de ramas")
    p.add_argument("--threshold", type=_threshold, action="append", metavar="CLUSTER=CDM",
                   help="Umbral manual de CDM para un cluster asBC (repetible)")

    p = subparsers.add_parser(Command.COMPARE.value, parents=[common], help="Compara dos archivos de etiquetas")
    p.add_argument("labels_a", help="clusters_*.csv (filas)")
    p.add_argument("labels_b", help="clusters_*.csv (columnas)")
    p.add_argument("--table", action="store_true", help="Tabla de texto en lugar de JSON")

    p = subparsers.add_parser(Command.CORE.value, parents=[common, weighting, core], help="Núcleos de referencias")
    p.add_argument("--corpus", required=True, help="corpus.jsonl")
    p.add_argument("--labels", required=True, help="clusters_*.csv")
    p.add_argument("--meta", help="run_meta.json de la ejecución (por defecto, junto al corpus)")
    p.add_argument("-o", "--output", help="Directorio de salida")
    p.add_argument("--threshold", type=_threshold, action="append", metavar="CLUSTER=CDM",
                   help="Umbral manual de CDM para un cluster (repetible)")

    subparsers.add_parser(Command.WEIGHTS.value, parents=[common, weighting], help="Curva de pesos (CSV por stdout)")

    p = subparsers.add_parser(Command.SUBCLUSTER.value, parents=[common, weighting, core],
                              help="Núcleo de una celda de la tabla cruzada")
    p.add_argument("--corpus", required=True, help="corpus.jsonl")
    p.add_argument("--rows", required=True, help="Etiquetas de las filas (clusters_cbc.csv)")
    p.add_argument("--cols", required=True, help="Etiquetas de las columnas (clusters_asbc.csv)")
    p.add_argument("--meta", help="run_meta.json de la ejecución (por defecto, junto al corpus)")
    p.add_argument("--cell", type=int, nargs=2, required=True, metavar=("FILA", "COLUMNA"), help="Celda de la tabla")
    p.add_argument("--threshold", type=float, help="Umbral manual de CDM")

    return parser


def _overrides(args: argparse.Namespace, config: PipelineConfig) -> Dict[str, Any]:
    """Opciones de la CLI traducidas a claves de PipelineConfig."""
    def get(name: str) -> Any:
        return getattr(args, name, None)

    overrides: Dict[str, Any] = {
        "inputs": get("inputs") or None,
        "input_format": get("format"),
        "output_dir": get("output"),
        "year_min": get("year_min"),
        "year_max": get("year_max"),
        "contribution": get("contribution"),
        "dump_matrix": True if get("dump_matrix") else None,
        "bin_width": get("bin_width"),
        "base": get("base"),
        "y_min": get("weight_year_min"),
        "y_max": get("weight_year_max"),
        "uniform": True if get("uniform") else None,
        "min_cluster_size": get("min_cluster_size"),
        "cut_quantile": get("cut_quantile"),
        "cut_height": get("cut_height"),
        "deep_split": False if get("no_deep_split") else None,
    }
    if get("exp_range"):
        overrides["exp_lo"], overrides["exp_hi"] = args.exp_range
    if get("weight_range"):
        overrides["w_lo"], overrides["w_hi"] = args.weight_range
    if isinstance(get("threshold"), list):
        overrides["thresholds"] = {**config.thresholds, **dict(args.threshold)}
    return overrides


def load_config(args: argparse.Namespace) -> PipelineConfig:
    config = PipelineConfig.load(args.config) if args.config else PipelineConfig()
    return config.with_overrides(**_overrides(args, config))


def main(argv: Optional[List[str]] = None) -> int:
    """Punto de entrada; devuelve el código de salida."""
    command = "agemap"
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
        config = load_config(args)
        configure(level, args.log_file or config.log_file)
        return CommandHandlerRegistry().handle(Command(args.command), args, config)
    except AgeMapError as e:
        print(f"❌ agemap: error [{e.stage or command}]: {e.message}", file=sys.stderr)
        return e.exit_code
    except KeyboardInterrupt:
        print("\n\n🛑 Ejecución interrumpida", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as e:
        get_logger().debug(f"Error interno: {e!r}")
        print(f"❌ agemap: error interno [{command}]: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
