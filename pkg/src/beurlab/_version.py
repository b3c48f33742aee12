__title__ = "beurlab"
__version__ = "0.1.0"
