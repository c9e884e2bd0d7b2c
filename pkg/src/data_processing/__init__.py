from .splitter import cv_roles, make_folds, split
from .wbcd_parser import clean, fingerprint, load_wbcd, parse_csv, parse_wbcd, read_csv, write_csv

__all__ = [
    "clean",
    "cv_roles",
    "fingerprint",
    "load_wbcd",
    "make_folds",
    "parse_csv",
    "parse_wbcd",
    "read_csv",
    "split",
    "write_csv",
]
