"""
Utils package initialization
Provides easy access to report writers
"""
from .reporting import CSV_COLUMNS, convergence_frame, write_csv, write_json

__all__ = ["CSV_COLUMNS", "convergence_frame", "write_csv", "write_json"]
