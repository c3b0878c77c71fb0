import os
from fractions import Fraction

from dotenv import load_dotenv

# load .env from repo root
load_dotenv(dotenv_path=os.path.join(os.path.dirname(__file__), ".env"))

# Defining-system search (can be overridden via environment variables)
SEARCH_MODE = os.getenv("MASSEY_SEARCH_MODE", "greedy")
SEARCH_BUDGET = int(os.getenv("MASSEY_SEARCH_BUDGET", "64"))
SEARCH_NODE_LIMIT = int(os.getenv("MASSEY_NODE_LIMIT", "20000"))
BACKTRACK_GRID = tuple(
    Fraction(x.strip()) for x in os.getenv("MASSEY_BACKTRACK_GRID", "0,1,-1,1/2,-1/2").split(",")
)

# Deformations
DEFORMATION_ORDER = int(os.getenv("DEFORMATION_ORDER", "4"))

# Reports and logging
REPORT_FORMAT = os.getenv("REPORT_FORMAT", "json")
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
LOG_DIR = os.getenv("LOG_DIR", "data/logs")
LOG_TO_FILE = os.getenv("LOG_TO_FILE", "0") == "1"
