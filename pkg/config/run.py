import os

RUN_CONFIG = {
    'scenario': os.environ.get('ZEN_SCENARIO', 'data/scenario.json'),
    'out_dir': os.environ.get('ZEN_OUT_DIR', 'output'),
    'jobs': int(os.environ.get('ZEN_JOBS', '1')),
    'export_limits': [None, 100.0],
}
