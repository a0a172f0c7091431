# skewrank test package
from pathlib import Path
import sys

# src modules are imported flat, as the CLI does
ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT / "tests"))
