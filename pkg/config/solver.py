import os

SOLVER_CONFIG = {
    'backend': os.environ.get('ZEN_SOLVER_BACKEND', 'scipy'),
    'executable': os.environ.get('ZEN_SOLVER_PATH'),
    'executables': {
        'highs': 'highs',
        'cbc': 'cbc',
    },
    'time_limit': 3600.0,
    'mip_rel_gap': 1e-6,
    'threads': 1,
}
