import os

CACHE_DIR = os.getenv("CALOGERO_CACHE") or None
LOG_LEVEL = os.getenv("CALOGERO_LOG_LEVEL") or "WARNING"
JOBS = int(os.getenv("CALOGERO_JOBS") or 1)
SCHEMA_VERSION = 1

# Models
MODEL_A = "A"
MODEL_B = "B"

# Methods
THEOREM1 = "theorem1"
THEOREM2 = "theorem2"
BMODEL = "bmodel"
SUTHERLAND = "sutherland"
ALL_METHODS = "all"
METHODS = (THEOREM1, THEOREM2, BMODEL, SUTHERLAND)
A_METHODS = (THEOREM1, THEOREM2, SUTHERLAND)
B_METHODS = (BMODEL,)

# Modes
RECURSION = "recursion"
CLOSED = "closed"
EXPLICIT = "explicit"

# Orders
DOMINANCE = "dominance"
TAIL = "tail"

# Classical polynomials
HERMITE = "hermite"
LAGUERRE = "laguerre"

# f-expansion strategies
KAPPA = "kappa"
INDUCTION = "induction"
NAIVE = "naive"

# Commands
SOLVE = "solve"
TABLE = "table"
VERIFY = "verify"
BENCH = "bench"

# Formats
JSON = "json"
TEXT = "text"
LATEX = "latex"

# Variables
X_VAR = "x"
Z_VAR = "z"

# Serialization
MSYM_BASIS = "msym"
MONOMIAL_BASIS = "monomial"
CACHE_SUFFIX = ".json"
TEMP_SUFFIX = ".tmp"

# File options
WRITE_TEXT = "w"
READ_TEXT = "r"
ENCODING = "utf-8"

# Regexes
RATIONAL_REGEX = r"^[+-]?\d+(/\d+)?$"
LABEL_REGEX = r"^\s*[+-]?\d+(\s*,\s*[+-]?\d+)*\s*$"

# Exit codes
EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CACHE = 3

# Statuses
PASSED = "pass"
FAILED = "FAIL"
EQUAL = "equal"
PROPORTIONAL = "proportional"
UNRELATED = "unrelated"
CACHE_CORRUPT = "Cache entry is corrupt, ignoring"
CACHE_MISMATCH = "Cache entry key mismatch, ignoring"
CACHE_UNVERIFIED = "Cache entry failed re-verification, ignoring"
