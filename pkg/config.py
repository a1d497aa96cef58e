import os
import logging
from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)


class Config:
    # Parallel search
    WORKERS = int(os.getenv('TD_WORKERS', 1))

    # VNS shaking strength cap
    KMAX = int(os.getenv('TD_KMAX', 10))

    # Bitset rows are Python ints, the cap only guards against runaway inputs
    MAX_VERTICES = int(os.getenv('TD_MAX_VERTICES', 128))

    # mixing_steps = MIXING_FACTOR * n * r
    MIXING_FACTOR = int(os.getenv('TD_MIXING_FACTOR', 10))

    # Results store (sqlite)
    RESULTS_DB = os.getenv('TD_RESULTS_DB', 'results.db')

    # Timezone for run manifests
    TIMEZONE = os.getenv('TD_TIMEZONE', 'UTC')

    LOG_LEVEL = os.getenv('TD_LOG_LEVEL', 'INFO').upper()
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    # nauty's geng, used by `scan --geng`
    GENG_PATH = os.getenv('GENG_PATH', 'geng')

    @classmethod
    def validate(cls):
        """Validate all configuration values."""
        if cls.WORKERS < 1:
            raise ValueError("TD_WORKERS must be at least 1")

        if cls.KMAX < 1:
            raise ValueError("TD_KMAX must be at least 1")

        if cls.MAX_VERTICES < 1:
            raise ValueError("TD_MAX_VERTICES must be positive")

        if cls.MIXING_FACTOR < 0:
            raise ValueError("TD_MIXING_FACTOR cannot be negative")

        if not isinstance(logging.getLevelName(cls.LOG_LEVEL), int):
            raise ValueError(f"Unknown TD_LOG_LEVEL: {cls.LOG_LEVEL}")

        if cls.WORKERS > (os.cpu_count() or 1):
            logger.warning(f"⚠️  TD_WORKERS={cls.WORKERS} exceeds the {os.cpu_count()} available cores")

        return True
