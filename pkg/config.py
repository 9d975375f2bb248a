"""
Configuration file for the small-divisor AP toolkit

Modify these settings to customize the default behavior of the CLI and the
range verifier. Command-line flags win over the environment overrides
(APDIV_*), which win over the values below.
"""

import os

# Sieve Configuration
SEGMENT_SIZE = 1 << 22  # Numbers per sieve segment (cache-friendly default)
SIEVE_MEMORY_BUDGET = 1 << 30  # Bytes one worker may spend on sieve arrays
SIEVE_BYTES_PER_NUMBER = 24  # Planning estimate: offsets, fill cursor, ~4 listed primes
MAX_SEGMENT_SIZE = SIEVE_MEMORY_BUDGET // SIEVE_BYTES_PER_NUMBER  # Largest segment in numbers
FACTORIZATION_CHUNK = 1 << 16  # Table entries converted to Python ints at a time
MAX_BASE_SIEVE_LIMIT = 1 << 27  # Largest base-prime sieve, so hi <= 2**54
SMALL_PRIME_CUTOFF = 1 << 16  # Trial division bound before switching to rho
MAX_PRIME_LIST_LIMIT = 1 << 31  # Largest bound for an explicit list of primes

# Verification Configuration
DEFAULT_JOBS = os.cpu_count() or 1  # Worker processes for range verification
MISMATCH_CAP = 100  # Mismatches / tau violations kept with full witness data
EXTREMAL_CAP = 100  # AP instances with k >= 4 kept per k
SLOW_SEGMENT_SECONDS = 10.0  # Segments slower than this are logged as warnings
SHOW_PROGRESS = True  # Progress bar on stderr during verify

# Output Configuration
SCHEMA_VERSION = "1.0"  # Bump on any JSON field change
FILE_ENCODING = "utf-8"  # Encoding for HTML / JSON files written by the CLI

# Logging Configuration
LOG_LEVEL = "WARNING"  # DEBUG, INFO, WARNING or ERROR
LOG_FORMAT = "[%(levelname)s] %(asctime)s: %(message)s"

# Environment variable names
ENV_SEGMENT_SIZE = "APDIV_SEGMENT_SIZE"
ENV_JOBS = "APDIV_JOBS"
ENV_LOG_LEVEL = "APDIV_LOG_LEVEL"
