"""Allow ``python3 -m hopfgalois``."""

from .cli_report import main

raise SystemExit(main())
