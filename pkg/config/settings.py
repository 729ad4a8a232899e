"""Configuration settings for the D* d-separation toolkit."""

import os
import logging
from dotenv import load_dotenv

load_dotenv()

# Paths
BASE_DIR = os.path.dirname(os.path.dirname(__file__))
LOG_PATH = os.getenv("DSTAR_LOG_PATH", os.path.join(BASE_DIR, "logs", "dstar.log"))
DATA_DIR = os.path.join(BASE_DIR, "data")
GRAPH_DIR = os.path.join(DATA_DIR, "graphs")

# Create directories
os.makedirs(os.path.dirname(LOG_PATH), exist_ok=True)

# Simulation defaults
DEFAULT_SEED = int(os.getenv("DSTAR_SEED", "0"))
DEFAULT_ALPHA = float(os.getenv("DSTAR_ALPHA", "1.0"))
DEFAULT_BETA = float(os.getenv("DSTAR_BETA", "1.0"))
DEFAULT_SCHEDULE = os.getenv("DSTAR_SCHEDULE", "random")

# Exact path/module computations are exponential; refuse above these node counts
LONGEST_PATH_NODE_CAP = max(1, int(os.getenv("DSTAR_LONGEST_PATH_CAP", "25")))
MODULE_NODE_CAP = max(1, int(os.getenv("DSTAR_MODULE_CAP", "12")))

# Random DAG generator
DEFAULT_EDGE_PROBABILITY = float(os.getenv("DSTAR_EDGE_PROB", "0.3"))

# Concurrent runner (real seconds, not virtual time)
CONCURRENT_JITTER_SECONDS = float(os.getenv("DSTAR_CONCURRENT_JITTER", "0.0005"))
CONCURRENT_TIMEOUT_SECONDS = float(os.getenv("DSTAR_CONCURRENT_TIMEOUT", "30"))

# At most 5 color messages per channel direction: 2 broadcasts, 2 replies to
# white messages and 1 reply that moves the sender off white.
PER_CHANNEL_MESSAGE_CAP = 10

# Bits per color message (white / green / red)
BITS_PER_MESSAGE = 2

# Configure logging
logging.basicConfig(
    filename=LOG_PATH,
    level=logging.INFO,
    format="%(asctime)s - %(filename)s:%(lineno)s - %(levelname)s - %(message)s",
)

logging.info("Configuration loaded (LOG_PATH=%s, DATA_DIR=%s)", LOG_PATH, DATA_DIR)
