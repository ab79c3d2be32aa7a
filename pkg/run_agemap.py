#!/usr/bin/env python3
"""
Script para ejecutar agemap.

Uso:
    python run_agemap.py <subcomando> [--config PATH] [opciones]

Ejemplos:
    python run_agemap.py run export.txt -o salida            # Pipeline completo
    python run_agemap.py run --config config/agemap.toml     # Con archivo de configuración
    python run_agemap.py weights > weightcurve.csv           # Curva de pesos por defecto
    python run_agemap.py compare salida/clusters_cbc.csv salida/clusters_asbc.csv --table
"""

import sys
import os

# Agregar directorio actual al path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from agemap.cli import main

if __name__ == "__main__":
    sys.exit(main())
