"""
Pytest configuration file to set up Python path correctly.
"""
import sys
from pathlib import Path

# Add project root and src directory to Python path
project_root = Path(__file__).parent
src_path = project_root / "src"

for path in (project_root, src_path):
    if str(path) not in sys.path:
        sys.path.insert(0, str(path))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running reference checks (deselect with -m 'not slow')")
