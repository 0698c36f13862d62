"""
Project-wide configuration constants.
"""
import os

# Field arithmetic: products of two residues must stay exact.
MAX_MODULUS = 2 ** 61

# Sweep configuration
SWEEP_CONFIG = {
    'pair_cap': 2 ** 24,        # exhaustive sweeps above this need a random sampler
    'random_samples': 10_000,
    'seed': 20240601,
    'workers': max(1, min(8, os.cpu_count() or 1)),
    'chunks_per_worker': 4,
}

DEFAULT_PAIR_CAP = SWEEP_CONFIG['pair_cap']
DEFAULT_RANDOM_SAMPLES = SWEEP_CONFIG['random_samples']
DEFAULT_SEED = SWEEP_CONFIG['seed']
DEFAULT_WORKERS = SWEEP_CONFIG['workers']

# HTTP verification service (waitress)
SERVER_CONFIG = {
    'host': '127.0.0.1',
    'port': 8080,
    'threads': 8,
    'channel_timeout': 30,
    'connection_limit': 100,
    'cleanup_interval': 10,
    'expose_tracebacks': False,
}

# Largest modulus the HTTP service will enumerate sumsets for.
SERVER_MAX_P = 10_007

# Request bodies above this are refused with 413.
SERVER_MAX_BODY = 4 * 1024 * 1024

# Exit codes (stable contract)
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
