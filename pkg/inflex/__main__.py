"""
Inflex — Punto de entrada del módulo
Ejecutar con: python -m inflex <subcomando> ...
"""
import sys

from inflex.cli import main

if __name__ == "__main__":
    sys.exit(main())
