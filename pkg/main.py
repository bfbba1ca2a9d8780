"""Run the latentem command line from a source checkout."""

import sys
from pathlib import Path

# Add src and workspace members to path for imports
_SRC = Path(__file__).parent / "src"
sys.path.insert(0, str(_SRC))
for member in ("contingency_table", "em_model", "latent_em", "colatent_em", "network_em"):
    sys.path.insert(0, str(_SRC / member / "src"))

from latentem.cli import main  # noqa: E402

if __name__ == "__main__":
    raise SystemExit(main())
