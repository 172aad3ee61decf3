from dotenv import load_dotenv
import os
from pathlib import Path

# Load .env file (optional, missing file is fine)
load_dotenv()

#base directory for every artifact written by the pipeline
OUTPUT_BASE_PATH = Path(os.getenv('BEEHIVE_OUTPUT_DIR', 'output'))

#worker threads when --threads is 0 (auto); empty means one per cpu
DEFAULT_THREADS = os.getenv('BEEHIVE_THREADS')

#valid artifact types written by the loaders
VALID_ARTIFACT_TYPES = [
    'features', 'selection_report', 'eval_report', 'train_report', 'sweep_grid',
    'feature_count', 'mixed_validation', 'comparison', 'segments', 'segments_manifest', 'model',
]
