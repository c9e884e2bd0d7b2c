from . import compare, cv, evaluate, ingest, label, report, train

COMMANDS = (ingest, label, train, evaluate, cv, compare, report)

__all__ = ["COMMANDS"]
