import os
from dotenv import load_dotenv

load_dotenv()


def _int_env(name, default):
    value = os.environ.get(name)
    return int(value) if value not in (None, '') else default


class Config:
    """Base configuration"""
    # Logging
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO').upper()

    # Oracle limits
    ORACLE_MAX_POINTS = _int_env('ORACLE_MAX_POINTS', 7)
    ORACLE_MAX_STATES = _int_env('ORACLE_MAX_STATES', 10 ** 8)

    # Approximation
    DEFAULT_ROOT_POLICY = os.environ.get('DEFAULT_ROOT_POLICY', 'best')

    # Instance generation
    DEFAULT_LINE_SPREAD = os.environ.get('DEFAULT_LINE_SPREAD', 'uniform')
    GEOMETRIC_RATIO = float(os.environ.get('GEOMETRIC_RATIO', 1.5))
    CLUSTER_COUNT = _int_env('CLUSTER_COUNT', 3)
    CLUSTER_WIDTH = float(os.environ.get('CLUSTER_WIDTH', 0.02))

    # Batch runs
    BATCH_JOBS = _int_env('BATCH_JOBS', 1)

    # Output
    JSON_INDENT = _int_env('JSON_INDENT', 2)


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True
    TESTING = False


class ProductionConfig(Config):
    """Production configuration"""
    DEBUG = False
    TESTING = False

    # Production logging
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'WARNING').upper()

    # Compact output for scripted pipelines
    JSON_INDENT = _int_env('JSON_INDENT', None)


class TestingConfig(Config):
    """Testing configuration"""
    TESTING = True
    LOG_LEVEL = 'WARNING'

    # Small enough that runaway searches fail fast in tests
    ORACLE_MAX_STATES = 10 ** 7
    BATCH_JOBS = 2


config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}
