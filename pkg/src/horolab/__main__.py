from .verify.cli import entry

raise SystemExit(entry())
