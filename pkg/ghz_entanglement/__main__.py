"""Allow running the package with python -m ghz_entanglement."""
from .cli import main

raise SystemExit(main())
