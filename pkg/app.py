"""
SCQR - Main Entry Point

    python app.py fit --input data.csv --response y --lambda 0.05
    python app.py bench table1-desk
"""

import sys
from pathlib import Path

# Add project root to path if not present
project_root = Path(__file__).parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from cli import main

if __name__ == "__main__":
    main()
